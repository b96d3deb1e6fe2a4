//! The identity catalog of the Hom-Lie algebroid calculus.
//!
//! Every law the calculus is supposed to satisfy — squared differential,
//! Leibniz rules, interior-product exchange laws, Lie-derivative
//! identities, Schouten properties — is checked here on basis elements
//! with at most one monomial-multiplied slot per law instance. All checks
//! are exact; a failing law reports the first counterexample found.
//!
//! The catalog doubles as a sign-error detector: flipping any single
//! [`super::SignSite`] in the calculus makes at least one identity fail.

use crate::exterior::{pair, MultiForm, MultiVector};
use crate::report::{Check, Report, Witness};
use crate::ring::Poly;

use super::calculus::Calculus;
use super::{monomial_samples, ring_name, section_samples, Sample};

impl<'a> Calculus<'a> {
    /// Runs the identity catalog at the given sampling degree.
    pub fn verify_identities(&self, max_degree: u32) -> Report {
        let start = std::time::Instant::now();
        let alg = self.algebroid();
        let ring = alg.ring();
        let rank = alg.rank();
        let sigma = alg.sigma();
        let phi = alg.phi();
        let dag = alg.phi_dagger();
        let dag_inv = alg.phi_dagger_inv();
        let phi_inv = alg.phi_inv();
        let mut report = Report::new(
            format!(
                "hom-lie algebroid calculus (rank {rank} over {})",
                ring_name(ring)
            ),
            max_degree,
        );

        // Sample sets.
        let monos = monomial_samples(ring, max_degree);
        let fns: Vec<Sample<Poly>> = monos
            .iter()
            .map(|m| Sample {
                label: m.to_string(),
                value: m.clone(),
                basis: false,
            })
            .collect();
        let sec = section_samples(alg, max_degree);
        let mv_of = |grade: usize| -> Vec<Sample<MultiVector>> {
            let mut out = Vec::new();
            if grade == 0 {
                out.push(Sample {
                    label: "1".into(),
                    value: MultiVector::scalar(ring, rank, ring.one()),
                    basis: true,
                });
                for m in &monos {
                    out.push(Sample {
                        label: m.to_string(),
                        value: MultiVector::scalar(ring, rank, m.clone()),
                        basis: false,
                    });
                }
                return out;
            }
            for t in crate::exterior::IndexTuple::all(rank, grade) {
                let label: Vec<String> =
                    t.indices().iter().map(|i| format!("e_{}", i + 1)).collect();
                let value = MultiVector::basis_tuple(ring, rank, t.indices());
                out.push(Sample {
                    label: label.join("∧"),
                    value: value.clone(),
                    basis: true,
                });
                for m in &monos {
                    out.push(Sample {
                        label: format!("({m})*{}", label.join("∧")),
                        value: value.scale(m),
                        basis: false,
                    });
                }
            }
            out
        };
        let form_of = |grade: usize| -> Vec<Sample<MultiForm>> {
            let mut out = Vec::new();
            if grade == 0 {
                out.push(Sample {
                    label: "1".into(),
                    value: MultiForm::scalar(ring, rank, ring.one()),
                    basis: true,
                });
                for m in &monos {
                    out.push(Sample {
                        label: m.to_string(),
                        value: MultiForm::scalar(ring, rank, m.clone()),
                        basis: false,
                    });
                }
                return out;
            }
            for t in crate::exterior::IndexTuple::all(rank, grade) {
                let label: Vec<String> =
                    t.indices().iter().map(|i| format!("e^{}", i + 1)).collect();
                let value = MultiForm::basis_tuple(ring, rank, t.indices());
                out.push(Sample {
                    label: label.join("∧"),
                    value: value.clone(),
                    basis: true,
                });
                for m in &monos {
                    out.push(Sample {
                        label: format!("({m})*{}", label.join("∧")),
                        value: value.scale(m),
                        basis: false,
                    });
                }
            }
            out
        };
        let mv1 = mv_of(1);
        let mv2 = mv_of(2);
        let form0 = form_of(0);
        let form1 = form_of(1);
        let form2 = form_of(2);

        // ---- differential --------------------------------------------

        // d.square_zero
        let mut witness = None;
        for xi in form0.iter().chain(&form1).chain(&form2) {
            let ddxi = self.differential(&self.differential(&xi.value));
            if !ddxi.is_zero() {
                witness = Some(Witness {
                    assignment: vec![format!("Ξ = {}", xi.label)],
                    lhs: ddxi.to_string(),
                    rhs: "0".into(),
                });
                break;
            }
        }
        report
            .checks
            .push(Check::from_witness("d.square_zero", "d(dΞ) = 0", witness));

        // d.dagger_commute
        let mut witness = None;
        for xi in form0.iter().chain(&form1).chain(&form2) {
            let lhs = self.differential(&dag.apply_form(&xi.value));
            let rhs = dag.apply_form(&self.differential(&xi.value));
            if lhs != rhs {
                witness = Some(Witness {
                    assignment: vec![format!("Ξ = {}", xi.label)],
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
                break;
            }
        }
        report.checks.push(Check::from_witness(
            "d.dagger_commute",
            "d(φ_A†Ξ) = φ_A†(dΞ)",
            witness,
        ));

        // d.wedge_leibniz, (k, l) ∈ {(0,1), (1,1)}
        let mut witness = None;
        'dwl: for (xis, k) in [(&form0, 0usize), (&form1, 1usize)] {
            for xi in xis {
                for th in &form1 {
                    if !xi.basis && !th.basis {
                        continue;
                    }
                    let lhs = self.differential(&xi.value.wedge(&th.value));
                    let mut rhs = self
                        .differential(&xi.value)
                        .wedge(&dag.apply_form(&th.value));
                    let mut t2 = dag.apply_form(&xi.value).wedge(&self.differential(&th.value));
                    if k % 2 == 1 {
                        t2 = t2.neg();
                    }
                    rhs = rhs.add(&t2);
                    if lhs != rhs {
                        witness = Some(Witness {
                            assignment: vec![
                                format!("Ξ = {}", xi.label),
                                format!("Θ = {}", th.label),
                            ],
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                        break 'dwl;
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "d.wedge_leibniz",
            "d(Ξ∧Θ) = dΞ∧φ_A†Θ + (−1)^k φ_A†Ξ∧dΘ",
            witness,
        ));

        // ---- interior products ---------------------------------------

        // interior.swap: i_{φ_A X}∘i_Y = i_{φ_A(Y∧X)}∘φ_A† = (−1)^{kl} i_{φ_A Y}∘i_X
        let mut witness = None;
        'isw: for x in &mv1 {
            for y in &mv1 {
                if !x.basis && !y.basis {
                    continue;
                }
                for xi in &form2 {
                    if !xi.basis && (!x.basis || !y.basis) {
                        continue;
                    }
                    let lhs =
                        self.interior_mv(&phi.apply_mv(&x.value), &self.interior_mv(&y.value, &xi.value));
                    let mid = self.interior_mv(
                        &phi.apply_mv(&y.value.wedge(&x.value)),
                        &dag.apply_form(&xi.value),
                    );
                    let rhs = self
                        .interior_mv(&phi.apply_mv(&y.value), &self.interior_mv(&x.value, &xi.value))
                        .neg(); // (−1)^{1·1}
                    if lhs != mid || lhs != rhs {
                        witness = Some(Witness {
                            assignment: vec![
                                format!("X = {}", x.label),
                                format!("Y = {}", y.label),
                                format!("Ξ = {}", xi.label),
                            ],
                            lhs: lhs.to_string(),
                            rhs: format!("{mid} and {rhs}"),
                        });
                        break 'isw;
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "interior.swap",
            "i_{φ_A X}∘i_Y = i_{φ_A(Y∧X)}∘φ_A† = (−1)^{kl} i_{φ_A Y}∘i_X",
            witness,
        ));

        // interior.dagger: φ_A†(i_XΞ) = i_{φ_A X}(φ_A†Ξ)
        let mut witness = None;
        'idg: for x in &mv1 {
            for xi in form1.iter().chain(&form2) {
                if !x.basis && !xi.basis {
                    continue;
                }
                let lhs = dag.apply_form(&self.interior_mv(&x.value, &xi.value));
                let rhs = self.interior_mv(&phi.apply_mv(&x.value), &dag.apply_form(&xi.value));
                if lhs != rhs {
                    witness = Some(Witness {
                        assignment: vec![format!("X = {}", x.label), format!("Ξ = {}", xi.label)],
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                    break 'idg;
                }
            }
        }
        report.checks.push(Check::from_witness(
            "interior.dagger",
            "φ_A†(i_XΞ) = i_{φ_A X}(φ_A†Ξ)",
            witness,
        ));

        // interior.dagger_inv: (φ_A†)⁻¹(i_XΞ) = i_{φ_A⁻¹X}((φ_A†)⁻¹Ξ)
        let mut witness = None;
        'idi: for x in &mv1 {
            for xi in form1.iter().chain(&form2) {
                if !x.basis && !xi.basis {
                    continue;
                }
                let lhs = dag_inv.apply_form(&self.interior_mv(&x.value, &xi.value));
                let rhs =
                    self.interior_mv(&phi_inv.apply_mv(&x.value), &dag_inv.apply_form(&xi.value));
                if lhs != rhs {
                    witness = Some(Witness {
                        assignment: vec![format!("X = {}", x.label), format!("Ξ = {}", xi.label)],
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                    break 'idi;
                }
            }
        }
        report.checks.push(Check::from_witness(
            "interior.dagger_inv",
            "(φ_A†)⁻¹(i_XΞ) = i_{φ_A⁻¹X}((φ_A†)⁻¹Ξ)",
            witness,
        ));

        // interior.wedge: i_x(Ξ∧Θ) = i_xΞ∧φ_A†Θ + (−1)^m φ_A†Ξ∧i_xΘ
        let mut witness = None;
        'iwe: for x in &sec {
            for xi in &form1 {
                for th in &form1 {
                    if [x.basis, xi.basis, th.basis].iter().filter(|b| !**b).count() > 1 {
                        continue;
                    }
                    let lhs = self.interior_mv(&x.value, &xi.value.wedge(&th.value));
                    let rhs = self
                        .interior_mv(&x.value, &xi.value)
                        .wedge(&dag.apply_form(&th.value))
                        .add(
                            &dag.apply_form(&xi.value)
                                .wedge(&self.interior_mv(&x.value, &th.value))
                                .neg(), // (−1)^m with m = 1
                        );
                    if lhs != rhs {
                        witness = Some(Witness {
                            assignment: vec![
                                format!("x = {}", x.label),
                                format!("Ξ = {}", xi.label),
                                format!("Θ = {}", th.label),
                            ],
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                        break 'iwe;
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "interior.wedge",
            "i_x(Ξ∧Θ) = i_xΞ∧φ_A†Θ + (−1)^m φ_A†Ξ∧i_xΘ",
            witness,
        ));

        // interior.schouten: i_{⟦X,Y⟧}∘φ_A† =
        //   (−1)^{(k−1)(l−1)}(L_{φ_A X}∘i_Y − (−1)^{(k−1)l} i_{φ_A Y}∘L_X)
        let mut witness = None;
        'isc: for (xs, k) in [(&mv1, 1usize), (&mv2, 2usize)] {
            for x in xs {
                for y in &mv1 {
                    if !x.basis && !y.basis {
                        continue;
                    }
                    let l = 1usize;
                    for xi in &form2 {
                        if !xi.basis && (!x.basis || !y.basis) {
                            continue;
                        }
                        let br = self.schouten(&x.value, &y.value);
                        if br.grade() > xi.value.grade() {
                            continue;
                        }
                        let lhs = self.interior_mv(&br, &dag.apply_form(&xi.value));
                        let t1 = self.lie_form(
                            &phi.apply_mv(&x.value),
                            &self.interior_mv(&y.value, &xi.value),
                        );
                        let mut t2 = self.interior_mv(
                            &phi.apply_mv(&y.value),
                            &self.lie_form(&x.value, &xi.value),
                        );
                        if ((k - 1) * l) % 2 == 1 {
                            t2 = t2.neg();
                        }
                        let mut rhs = t1.sub(&t2);
                        if ((k - 1) * (l - 1)) % 2 == 1 {
                            rhs = rhs.neg();
                        }
                        if lhs != rhs {
                            witness = Some(Witness {
                                assignment: vec![
                                    format!("X = {}", x.label),
                                    format!("Y = {}", y.label),
                                    format!("Ξ = {}", xi.label),
                                ],
                                lhs: lhs.to_string(),
                                rhs: rhs.to_string(),
                            });
                            break 'isc;
                        }
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "interior.schouten",
            "i_{⟦X,Y⟧}∘φ_A† = (−1)^{(k−1)(l−1)}(L_{φ_A X}∘i_Y − (−1)^{(k−1)l} i_{φ_A Y}∘L_X)",
            witness,
        ));

        // ---- schouten bracket ----------------------------------------

        // schouten.fn: ⟦x, f⟧ = a_A(φ_A x)(f)
        let mut witness = None;
        'sfn: for x in &sec {
            for f in &fns {
                if !x.basis {
                    continue;
                }
                let lhs = self.schouten(
                    &x.value,
                    &MultiVector::scalar(ring, rank, f.value.clone()),
                );
                let rhs = self.anchor_of(&phi.apply_mv(&x.value)).apply(&f.value);
                if lhs.as_scalar() != Some(rhs.clone()) {
                    witness = Some(Witness {
                        assignment: vec![format!("x = {}", x.label), format!("f = {}", f.label)],
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                    break 'sfn;
                }
            }
        }
        report.checks.push(Check::from_witness(
            "schouten.fn",
            "⟦x, f⟧ = a_A(φ_A x)(f)",
            witness,
        ));

        // schouten.grade1: ⟦x, y⟧ = [x, y]_A
        let mut witness = None;
        'sg1: for x in &sec {
            for y in &sec {
                if !x.basis && !y.basis {
                    continue;
                }
                let lhs = self.schouten(&x.value, &y.value);
                let rhs = self.bracket_sections(&x.value, &y.value);
                if lhs != rhs {
                    witness = Some(Witness {
                        assignment: vec![format!("x = {}", x.label), format!("y = {}", y.label)],
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                    break 'sg1;
                }
            }
        }
        report.checks.push(Check::from_witness(
            "schouten.grade1",
            "⟦x, y⟧ = [x, y]_A on sections",
            witness,
        ));

        // schouten.skew: ⟦X, Y⟧ = −(−1)^{(k−1)(l−1)}⟦Y, X⟧
        let mut witness = None;
        'ssk: for (xs, k) in [(&mv1, 1usize), (&mv2, 2usize)] {
            for (ys, l) in [(&mv1, 1usize), (&mv2, 2usize)] {
                for x in xs.iter() {
                    for y in ys.iter() {
                        if !x.basis && !y.basis {
                            continue;
                        }
                        let lhs = self.schouten(&x.value, &y.value);
                        let mut rhs = self.schouten(&y.value, &x.value).neg();
                        if ((k - 1) * (l - 1)) % 2 == 1 {
                            rhs = rhs.neg();
                        }
                        if lhs != rhs {
                            witness = Some(Witness {
                                assignment: vec![
                                    format!("X = {}", x.label),
                                    format!("Y = {}", y.label),
                                ],
                                lhs: lhs.to_string(),
                                rhs: rhs.to_string(),
                            });
                            break 'ssk;
                        }
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "schouten.skew",
            "⟦X, Y⟧ = −(−1)^{(k−1)(l−1)}⟦Y, X⟧",
            witness,
        ));

        // schouten.leibniz: ⟦X, Y∧Z⟧ = ⟦X,Y⟧∧φ_A(Z) + (−1)^{(k−1)l} φ_A(Y)∧⟦X,Z⟧
        // with (k, l, m) over {(1,1,1), (1,1,0), (2,1,0)}.
        let mut witness = None;
        let mv0 = mv_of(0);
        'sle: for (xs, ys, zs, k, l) in [
            (&mv1, &mv1, &mv1, 1usize, 1usize),
            (&mv1, &mv1, &mv0, 1, 1),
            (&mv2, &mv1, &mv0, 2, 1),
        ] {
            for x in xs {
                for y in ys {
                    for z in zs {
                        if [x.basis, y.basis, z.basis].iter().filter(|b| !**b).count() > 1 {
                            continue;
                        }
                        let lhs = self.schouten(&x.value, &y.value.wedge(&z.value));
                        let mut t2 = phi
                            .apply_mv(&y.value)
                            .wedge(&self.schouten(&x.value, &z.value));
                        if ((k - 1) * l) % 2 == 1 {
                            t2 = t2.neg();
                        }
                        let rhs = self
                            .schouten(&x.value, &y.value)
                            .wedge(&phi.apply_mv(&z.value))
                            .add(&t2);
                        if lhs != rhs {
                            witness = Some(Witness {
                                assignment: vec![
                                    format!("X = {}", x.label),
                                    format!("Y = {}", y.label),
                                    format!("Z = {}", z.label),
                                ],
                                lhs: lhs.to_string(),
                                rhs: rhs.to_string(),
                            });
                            break 'sle;
                        }
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "schouten.leibniz",
            "⟦X, Y∧Z⟧ = ⟦X,Y⟧∧φ_A(Z) + (−1)^{(k−1)l} φ_A(Y)∧⟦X,Z⟧",
            witness,
        ));

        // ---- lie derivative on multivectors --------------------------

        // lie_mv.wedge: L_x(X∧Y) = L_xX∧φ_A(Y) + φ_A(X)∧L_xY
        let mut witness = None;
        'lmw: for x in &sec {
            for xv in &mv1 {
                for yv in &mv1 {
                    if [x.basis, xv.basis, yv.basis].iter().filter(|b| !**b).count() > 1 {
                        continue;
                    }
                    let lhs = self.lie_mv(&x.value, &xv.value.wedge(&yv.value));
                    let rhs = self
                        .lie_mv(&x.value, &xv.value)
                        .wedge(&phi.apply_mv(&yv.value))
                        .add(&phi.apply_mv(&xv.value).wedge(&self.lie_mv(&x.value, &yv.value)));
                    if lhs != rhs {
                        witness = Some(Witness {
                            assignment: vec![
                                format!("x = {}", x.label),
                                format!("X = {}", xv.label),
                                format!("Y = {}", yv.label),
                            ],
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                        break 'lmw;
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "lie_mv.wedge",
            "L_x(X∧Y) = L_xX∧φ_A(Y) + φ_A(X)∧L_xY",
            witness,
        ));

        // lie_mv.bracket: L_{[x,y]}∘φ_A = L_{φ_A x}L_y − L_{φ_A y}L_x
        let mut witness = None;
        'lmb: for x in &sec {
            for y in &sec {
                for xv in mv1.iter().chain(&mv2) {
                    if [x.basis, y.basis, xv.basis].iter().filter(|b| !**b).count() > 1 {
                        continue;
                    }
                    let lhs = self.lie_mv(
                        &self.bracket_sections(&x.value, &y.value),
                        &phi.apply_mv(&xv.value),
                    );
                    let rhs = self
                        .lie_mv(&phi.apply_mv(&x.value), &self.lie_mv(&y.value, &xv.value))
                        .sub(&self.lie_mv(&phi.apply_mv(&y.value), &self.lie_mv(&x.value, &xv.value)));
                    if lhs != rhs {
                        witness = Some(Witness {
                            assignment: vec![
                                format!("x = {}", x.label),
                                format!("y = {}", y.label),
                                format!("X = {}", xv.label),
                            ],
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                        break 'lmb;
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "lie_mv.bracket",
            "L_{[x,y]_A}∘φ_A = L_{φ_A x}∘L_y − L_{φ_A y}∘L_x",
            witness,
        ));

        // lie_mv.fn_scale: L_x(fX) = σ(f)L_xX + a_A(φ_A x)(f)·φ_A(X)
        let mut witness = None;
        'lms: for x in &sec {
            if !x.basis {
                continue;
            }
            for f in &fns {
                for xv in mv1.iter().chain(&mv2) {
                    if !xv.basis {
                        continue;
                    }
                    let lhs = self.lie_mv(&x.value, &xv.value.scale(&f.value));
                    let rhs = self
                        .lie_mv(&x.value, &xv.value)
                        .scale(&sigma.apply(&f.value))
                        .add(
                            &phi.apply_mv(&xv.value).scale(
                                &self.anchor_of(&phi.apply_mv(&x.value)).apply(&f.value),
                            ),
                        );
                    if lhs != rhs {
                        witness = Some(Witness {
                            assignment: vec![
                                format!("x = {}", x.label),
                                format!("f = {}", f.label),
                                format!("X = {}", xv.label),
                            ],
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                        break 'lms;
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "lie_mv.fn_scale",
            "L_x(f·X) = σ(f)L_xX + a_A(φ_A x)(f)·φ_A(X)",
            witness,
        ));

        // lie_mv.fn_section: L_{f·x}X = σ(f)L_xX − φ_A(x)∧i_{(φ_A†)⁻¹(df)}X
        let mut witness = None;
        'lmf: for x in &sec {
            if !x.basis {
                continue;
            }
            for f in &fns {
                for xv in mv1.iter().chain(&mv2) {
                    if !xv.basis {
                        continue;
                    }
                    let lhs = self.lie_mv(&x.value.scale(&f.value), &xv.value);
                    let eta = dag_inv.apply_form(&self.d_fn(&f.value));
                    let rhs = self
                        .lie_mv(&x.value, &xv.value)
                        .scale(&sigma.apply(&f.value))
                        .sub(&phi.apply_mv(&x.value).wedge(&self.interior_form(&eta, &xv.value)));
                    if lhs != rhs {
                        witness = Some(Witness {
                            assignment: vec![
                                format!("x = {}", x.label),
                                format!("f = {}", f.label),
                                format!("X = {}", xv.label),
                            ],
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                        break 'lmf;
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "lie_mv.fn_section",
            "L_{f·x}X = σ(f)L_xX − φ_A(x)∧i_{(φ_A†)⁻¹(df)}X",
            witness,
        ));

        // ---- lie derivative on forms ---------------------------------

        // lie_form.fn_mv: L_{f·X}Ξ = σ(f)L_XΞ − (−1)^k df∧i_XΞ
        let mut witness = None;
        'lfm: for x in &mv1 {
            if !x.basis {
                continue;
            }
            for f in &fns {
                for xi in form1.iter().chain(&form2) {
                    if !xi.basis {
                        continue;
                    }
                    let lhs = self.lie_form(&x.value.scale(&f.value), &xi.value);
                    let rhs = self
                        .lie_form(&x.value, &xi.value)
                        .scale(&sigma.apply(&f.value))
                        .add(
                            &self
                                .d_fn(&f.value)
                                .wedge(&self.interior_mv(&x.value, &xi.value)), // −(−1)^k = +1 for k = 1
                        );
                    if lhs != rhs {
                        witness = Some(Witness {
                            assignment: vec![
                                format!("X = {}", x.label),
                                format!("f = {}", f.label),
                                format!("Ξ = {}", xi.label),
                            ],
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                        break 'lfm;
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "lie_form.fn_mv",
            "L_{f·X}Ξ = σ(f)L_XΞ − (−1)^k df∧i_XΞ",
            witness,
        ));

        // lie_form.fn_form: L_x(fΞ) = σ(f)L_xΞ + a_A(φ_A x)(f)·φ_A†(Ξ)
        let mut witness = None;
        'lff: for x in &sec {
            if !x.basis {
                continue;
            }
            for f in &fns {
                for xi in form0.iter().chain(&form1) {
                    if !xi.basis {
                        continue;
                    }
                    let lhs = self.lie_form(&x.value, &xi.value.scale(&f.value));
                    let rhs = self
                        .lie_form(&x.value, &xi.value)
                        .scale(&sigma.apply(&f.value))
                        .add(
                            &dag.apply_form(&xi.value).scale(
                                &self.anchor_of(&phi.apply_mv(&x.value)).apply(&f.value),
                            ),
                        );
                    if lhs != rhs {
                        witness = Some(Witness {
                            assignment: vec![
                                format!("x = {}", x.label),
                                format!("f = {}", f.label),
                                format!("Ξ = {}", xi.label),
                            ],
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                        break 'lff;
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "lie_form.fn_form",
            "L_x(f·Ξ) = σ(f)L_xΞ + a_A(φ_A x)(f)·φ_A†(Ξ)",
            witness,
        ));

        // lie_form.wedge: L_x(Ξ∧Θ) = L_xΞ∧φ_A†Θ + φ_A†Ξ∧L_xΘ,
        // (m, n) ∈ {(0,1), (1,1)}.
        let mut witness = None;
        'lfw: for x in &sec {
            for xi in form0.iter().chain(&form1) {
                for th in &form1 {
                    if [x.basis, xi.basis, th.basis].iter().filter(|b| !**b).count() > 1 {
                        continue;
                    }
                    let lhs = self.lie_form(&x.value, &xi.value.wedge(&th.value));
                    let rhs = self
                        .lie_form(&x.value, &xi.value)
                        .wedge(&dag.apply_form(&th.value))
                        .add(&dag.apply_form(&xi.value).wedge(&self.lie_form(&x.value, &th.value)));
                    if lhs != rhs {
                        witness = Some(Witness {
                            assignment: vec![
                                format!("x = {}", x.label),
                                format!("Ξ = {}", xi.label),
                                format!("Θ = {}", th.label),
                            ],
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                        break 'lfw;
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "lie_form.wedge",
            "L_x(Ξ∧Θ) = L_xΞ∧φ_A†Θ + φ_A†Ξ∧L_xΘ",
            witness,
        ));

        // lie_form.dagger: φ_A†(L_XΞ) = L_{φ_A X}(φ_A†Ξ)
        let mut witness = None;
        'lfd: for (xs, _k) in [(&mv1, 1usize), (&mv2, 2usize)] {
            for x in xs {
                for xi in form1.iter().chain(&form2) {
                    if !x.basis && !xi.basis {
                        continue;
                    }
                    if xi.value.grade() + 1 < x.value.grade() {
                        continue;
                    }
                    let lhs = dag.apply_form(&self.lie_form(&x.value, &xi.value));
                    let rhs = self.lie_form(&phi.apply_mv(&x.value), &dag.apply_form(&xi.value));
                    if lhs != rhs {
                        witness = Some(Witness {
                            assignment: vec![
                                format!("X = {}", x.label),
                                format!("Ξ = {}", xi.label),
                            ],
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                        break 'lfd;
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "lie_form.dagger",
            "φ_A†(L_XΞ) = L_{φ_A X}(φ_A†Ξ)",
            witness,
        ));

        // lie_form.schouten_rep: L_{⟦X,Y⟧}∘φ_A† =
        //   (−1)^{(k−1)(l−1)}(L_{φ_A X}L_Y − (−1)^{(k−1)(l−1)}L_{φ_A Y}L_X),
        // (k, l) ∈ {(1,1), (1,2)}.
        let mut witness = None;
        'lfs: for (xs, ys, k, l) in
            [(&mv1, &mv1, 1usize, 1usize), (&mv1, &mv2, 1, 2)]
        {
            for x in xs {
                for y in ys {
                    if !x.basis && !y.basis {
                        continue;
                    }
                    for xi in &form2 {
                        if !xi.basis && (!x.basis || !y.basis) {
                            continue;
                        }
                        let m = xi.value.grade();
                        if m + 1 < l || m - l + 2 < k || m + 1 < k {
                            continue;
                        }
                        let br = self.schouten(&x.value, &y.value);
                        if xi.value.grade() + 1 < br.grade() {
                            continue;
                        }
                        let lhs = self.lie_form(&br, &dag.apply_form(&xi.value));
                        let mut t2 = self.lie_form(
                            &phi.apply_mv(&y.value),
                            &self.lie_form(&x.value, &xi.value),
                        );
                        if ((k - 1) * (l - 1)) % 2 == 1 {
                            t2 = t2.neg();
                        }
                        let mut rhs = self
                            .lie_form(&phi.apply_mv(&x.value), &self.lie_form(&y.value, &xi.value))
                            .sub(&t2);
                        if ((k - 1) * (l - 1)) % 2 == 1 {
                            rhs = rhs.neg();
                        }
                        if lhs != rhs {
                            witness = Some(Witness {
                                assignment: vec![
                                    format!("X = {}", x.label),
                                    format!("Y = {}", y.label),
                                    format!("Ξ = {}", xi.label),
                                ],
                                lhs: lhs.to_string(),
                                rhs: rhs.to_string(),
                            });
                            break 'lfs;
                        }
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "lie_form.schouten_rep",
            "L_{⟦X,Y⟧}∘φ_A† = (−1)^{(k−1)(l−1)}(L_{φ_A X}L_Y − (−1)^{(k−1)(l−1)}L_{φ_A Y}L_X)",
            witness,
        ));

        // lie_form.dagger_inv: (φ_A†)⁻¹∘L_X = L_{φ_A⁻¹X}∘(φ_A†)⁻¹
        let mut witness = None;
        'lfi: for (xs, forms) in [(&mv1, &form1), (&mv2, &form2)] {
            for x in xs.iter() {
                for xi in forms.iter() {
                    if !x.basis && !xi.basis {
                        continue;
                    }
                    let lhs = dag_inv.apply_form(&self.lie_form(&x.value, &xi.value));
                    let rhs =
                        self.lie_form(&phi_inv.apply_mv(&x.value), &dag_inv.apply_form(&xi.value));
                    if lhs != rhs {
                        witness = Some(Witness {
                            assignment: vec![
                                format!("X = {}", x.label),
                                format!("Ξ = {}", xi.label),
                            ],
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                        break 'lfi;
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "lie_form.dagger_inv",
            "(φ_A†)⁻¹(L_XΞ) = L_{φ_A⁻¹X}((φ_A†)⁻¹Ξ)",
            witness,
        ));

        // lie_form.d_commute: d∘L_X = −(−1)^k L_{φ_A X}∘d,
        // (k, m) ∈ {(1,0), (1,1), (2,1)}.
        let mut witness = None;
        'lfc: for (xs, forms, k) in [
            (&mv1, &form0, 1usize),
            (&mv1, &form1, 1),
            (&mv2, &form1, 2),
        ] {
            for x in xs.iter() {
                for xi in forms.iter() {
                    if !x.basis && !xi.basis {
                        continue;
                    }
                    let lhs = self.differential(&self.lie_form(&x.value, &xi.value));
                    let mut rhs =
                        self.lie_form(&phi.apply_mv(&x.value), &self.differential(&xi.value));
                    if k % 2 == 0 {
                        rhs = rhs.neg();
                    }
                    if lhs != rhs {
                        witness = Some(Witness {
                            assignment: vec![
                                format!("X = {}", x.label),
                                format!("Ξ = {}", xi.label),
                            ],
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                        break 'lfc;
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "lie_form.d_commute",
            "d(L_XΞ) = −(−1)^k L_{φ_A X}(dΞ)",
            witness,
        ));

        // lie_form.pairing:
        //   ⟨L_xΞ, Y⟩ = a_A(φ_A x)⟨Ξ, φ_A⁻¹Y⟩ − ⟨φ_A†Ξ, L_x(φ_A⁻¹Y)⟩
        let mut witness = None;
        'lfp: for x in &sec {
            for (forms, mvs) in [(&form1, &mv1), (&form2, &mv2)] {
                for xi in forms.iter() {
                    for yv in mvs.iter() {
                        if [x.basis, xi.basis, yv.basis].iter().filter(|b| !**b).count() > 1 {
                            continue;
                        }
                        let lhs = pair(&self.lie_form(&x.value, &xi.value), &yv.value)
                            .expect("matching grades");
                        let aphi = self.anchor_of(&phi.apply_mv(&x.value));
                        let rhs = &aphi.apply(
                            &pair(&xi.value, &phi_inv.apply_mv(&yv.value)).expect("matching grades"),
                        ) - &pair(
                            &dag.apply_form(&xi.value),
                            &self.lie_mv(&x.value, &phi_inv.apply_mv(&yv.value)),
                        )
                        .expect("matching grades");
                        if lhs != rhs {
                            witness = Some(Witness {
                                assignment: vec![
                                    format!("x = {}", x.label),
                                    format!("Ξ = {}", xi.label),
                                    format!("Y = {}", yv.label),
                                ],
                                lhs: lhs.to_string(),
                                rhs: rhs.to_string(),
                            });
                            break 'lfp;
                        }
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "lie_form.pairing",
            "⟨L_xΞ, Y⟩ = a_A(φ_A x)⟨Ξ, φ_A⁻¹Y⟩ − ⟨φ_A†Ξ, L_x(φ_A⁻¹Y)⟩",
            witness,
        ));

        // ---- anchor as a morphism to the tangent calculus -------------

        // anchor.morphism: a_A(φ_A x) = Ad_σ(a_A(x)) and
        // a_A([x, y]_A) = [a_A(x), a_A(y)]_σ.
        let mut witness = None;
        'amo: for x in &sec {
            for y in &sec {
                if !x.basis && !y.basis {
                    continue;
                }
                let lhs1 = self.anchor_of(&phi.apply_mv(&x.value));
                let rhs1 = self.anchor_of(&x.value).conjugate();
                if lhs1 != rhs1 {
                    witness = Some(Witness {
                        assignment: vec![format!("x = {}", x.label)],
                        lhs: lhs1.to_string(),
                        rhs: rhs1.to_string(),
                    });
                    break 'amo;
                }
                let lhs2 = self.anchor_of(&self.bracket_sections(&x.value, &y.value));
                let rhs2 = self
                    .anchor_of(&x.value)
                    .bracket(&self.anchor_of(&y.value))
                    .expect("same automorphism");
                if lhs2 != rhs2 {
                    witness = Some(Witness {
                        assignment: vec![format!("x = {}", x.label), format!("y = {}", y.label)],
                        lhs: lhs2.to_string(),
                        rhs: rhs2.to_string(),
                    });
                    break 'amo;
                }
            }
        }
        report.checks.push(Check::from_witness(
            "anchor.morphism",
            "a_A(φ_A x) = Ad_σ(a_A(x)) and a_A([x,y]_A) = [a_A(x), a_A(y)]_σ",
            witness,
        ));

        report.elapsed_ms = start.elapsed().as_millis();
        report
    }
}

#[cfg(test)]
mod tests {
    use crate::algebroid::models::{action_algebroid, tangent_algebroid};
    use crate::algebroid::SignSite;
    use crate::homlie::HomLieAlgebra;
    use crate::ring::{PolyRing, Q, RingAuto, SigmaDerivation};

    fn qi(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn rank2_action() -> crate::algebroid::HomLieAlgebroid {
        let g = HomLieAlgebra::new(
            2,
            &[(0, 1, vec![qi(0), qi(1)])],
            vec![vec![qi(1), qi(0)], vec![qi(0), qi(2)]],
        )
        .unwrap();
        let ring = PolyRing::new(vec!["t"]).unwrap();
        let sigma = RingAuto::new(&ring, vec![ring.int(2) * ring.var(0)]).unwrap();
        let t = ring.var(0);
        let d = SigmaDerivation::basis(&sigma, 0);
        let rho = vec![d.scale_poly(&t), d.scale_poly(&(&t * &t))];
        action_algebroid(&g, &sigma, rho).unwrap()
    }

    #[test]
    fn catalog_passes_on_the_rank2_action_algebroid() {
        let alg = rank2_action();
        let report = alg.verify_identities(2);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn catalog_passes_on_the_two_variable_tangent_algebroid() {
        let ring = PolyRing::new(vec!["x", "y"]).unwrap();
        let sigma = RingAuto::new(
            &ring,
            vec![&(ring.int(2) * ring.var(0)) + &ring.var(1), ring.int(3) * ring.var(1)],
        )
        .unwrap();
        let alg = tangent_algebroid(&sigma);
        let report = alg.verify_identities(2);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn every_sign_flip_is_caught_by_the_catalog() {
        let alg = rank2_action();
        for site in SignSite::ALL {
            let report = alg.calculus_with_sign_flip(site).verify_identities(2);
            assert!(
                !report.passed(),
                "sign flip at {site} slipped through the catalog"
            );
        }
    }
}
