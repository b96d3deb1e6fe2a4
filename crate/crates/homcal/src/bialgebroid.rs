//! Hom-Lie bialgebroids: pairs of Hom-Lie algebroids in duality whose
//! differentials and brackets are compatible.
//!
//! A pair (A, A*) consists of a Hom-Lie algebroid A and a Hom-Lie
//! algebroid structure on its dual module carrying the adjoint twist φ_A†.
//! Writing d_* for the differential of the dual constituent (acting on
//! Γ(∧•A) through the canonical identification A** = A), the defining
//! compatibility is
//!
//! ```text
//! d_*[x, y]_A = ⟦d_*x, φ_A(y)⟧_A + ⟦φ_A(x), d_*y⟧_A.
//! ```
//!
//! Two further mixed identities follow and are checked alongside it: the
//! dual-side Lie derivative along an exact section satisfies
//! L_{df}(x) = [x, d_*f]_A, and brackets of exact sections are exact,
//! [d_*f, d_*g]_A = d_*(a_A(d_*f)(g)).
//!
//! Every bialgebroid induces a Hom-Poisson structure on the base with
//! {f, g} = ⟨df, d_*g⟩ (see [`induced_poisson`]); conversely every
//! Hom-Poisson structure yields the bialgebroid of its tangent and
//! cotangent algebroids (see [`from_poisson`]), and the two constructions
//! are mutually inverse on the bivector. Swapping the constituents gives
//! another bialgebroid whose induced bivector is the negation — the two
//! anchor composites a_A∘a_{A*}* and a_{A*}∘a_A* are opposite.

use std::sync::Arc;
use std::time::Instant;

use crate::algebroid::{monomial_samples, ring_name, section_samples, HomLieAlgebroid};
use crate::exterior::{pair, MultiVector};
use crate::poisson::{cotangent_algebroid, HomPoissonStructure};
use crate::report::{Check, Report, Witness};
use crate::ring::{Poly, PolyRing, RingAuto};
use crate::{Error, Result};

/// A pair of Hom-Lie algebroids in duality: `a` on the primal module and
/// `astar` on the dual module with the adjoint twist.
///
/// Construction enforces the structural frame (same ring, same rank, same
/// substitution, mutually adjoint twists); the compatibility equation is
/// the job of [`verify_bialgebroid`].
#[derive(Debug, Clone, PartialEq)]
pub struct HomLieBialgebroid {
    a: HomLieAlgebroid,
    astar: HomLieAlgebroid,
}

impl HomLieBialgebroid {
    /// Pairs two algebroids after validating the duality frame.
    pub fn new(a: HomLieAlgebroid, astar: HomLieAlgebroid) -> Result<Self> {
        if a.ring().vars() != astar.ring().vars() {
            return Err(Error::RingMismatch {
                expected: a.ring().vars().join(", "),
                got: astar.ring().vars().join(", "),
            });
        }
        if a.rank() != astar.rank() {
            return Err(Error::Dimension(format!(
                "a module and its dual have equal rank, got {} and {}",
                a.rank(),
                astar.rank()
            )));
        }
        if a.sigma() != astar.sigma() {
            return Err(Error::TwistMismatch(
                "the two constituents must share the base substitution".into(),
            ));
        }
        if astar.phi() != a.phi_dagger() {
            return Err(Error::TwistMismatch(
                "the dual constituent must carry the adjoint of the primal twist".into(),
            ));
        }
        Ok(HomLieBialgebroid { a, astar })
    }

    /// The primal constituent A.
    pub fn a(&self) -> &HomLieAlgebroid {
        &self.a
    }

    /// The dual constituent A*.
    pub fn astar(&self) -> &HomLieAlgebroid {
        &self.astar
    }

    /// The coefficient ring.
    pub fn ring(&self) -> &Arc<PolyRing> {
        self.a.ring()
    }

    /// The common module rank.
    pub fn rank(&self) -> usize {
        self.a.rank()
    }

    /// The base substitution σ.
    pub fn sigma(&self) -> &RingAuto {
        self.a.sigma()
    }

    /// The dual differential d_* on a multivector: the differential of the
    /// dual constituent, read on Γ(∧•A) through A** = A. Raises the grade
    /// by one.
    pub fn d_star(&self, x: &MultiVector) -> MultiVector {
        self.astar
            .calculus()
            .differential(&x.clone().into_form())
            .into_vector()
    }

    /// d_* of a function: the grade-1 section of A with components
    /// a_{A*}(e^i)(f).
    pub fn d_star_fn(&self, f: &Poly) -> MultiVector {
        self.astar.calculus().d_fn(f).into_vector()
    }

    /// The induced bracket on functions, {f, g} = ⟨df, d_*g⟩ — the exact
    /// pairing of the primal differential of f with the dual differential
    /// of g. It equals the bracket of [`induced_poisson`].
    pub fn induced_bracket(&self, f: &Poly, g: &Poly) -> Poly {
        pair(&self.a.calculus().d_fn(f), &self.d_star_fn(g))
            .expect("the differentials have dual shapes")
    }
}

/// Checks the bialgebroid laws on basis sections with monomial multipliers
/// of total degree ≤ `max_degree`.
///
/// Both constituents are verified first (their checks appear under the
/// prefixes `a.` and `astar.`); if either fails, the mixed checks are
/// skipped and the report carries the constituent failures. The mixed
/// checks are:
///
/// - `bialgebroid.compat` — d_*[x, y]_A = ⟦d_*x, φ_A(y)⟧_A + ⟦φ_A(x), d_*y⟧_A;
/// - `bialgebroid.lie_exchange` — L_{df}(x) = [x, d_*f]_A, with L the
///   dual-side Lie derivative;
/// - `bialgebroid.exact_bracket` — [d_*f, d_*g]_A = d_*(a_A(d_*f)(g)).
pub fn verify_bialgebroid(b: &HomLieBialgebroid, max_degree: u32) -> Report {
    let start = Instant::now();
    let mut report = Report::new(
        format!(
            "hom-lie bialgebroid (rank {} over {})",
            b.rank(),
            ring_name(b.ring())
        ),
        max_degree,
    );
    let rep_a = b.a.verify(max_degree);
    let rep_astar = b.astar.verify(max_degree);
    let constituents_pass = rep_a.passed() && rep_astar.passed();
    report.absorb("a", rep_a);
    report.absorb("astar", rep_astar);
    if !constituents_pass {
        report.elapsed_ms = start.elapsed().as_millis();
        return report;
    }

    let cal = b.a.calculus();
    let monos = monomial_samples(b.ring(), max_degree);
    let sections = section_samples(&b.a, max_degree);

    // bialgebroid.compat — the dual differential is a derivation of the
    // primal bracket into the Schouten algebra.
    let mut witness = None;
    'compat: for x in &sections {
        for y in &sections {
            if !x.basis && !y.basis {
                continue;
            }
            let lhs = b.d_star(&cal.bracket_sections(&x.value, &y.value));
            let rhs = cal
                .schouten(&b.d_star(&x.value), &b.a.phi().apply_mv(&y.value))
                .add(&cal.schouten(&b.a.phi().apply_mv(&x.value), &b.d_star(&y.value)));
            if lhs != rhs {
                witness = Some(Witness {
                    assignment: vec![format!("x = {}", x.label), format!("y = {}", y.label)],
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
                break 'compat;
            }
        }
    }
    report.checks.push(Check::from_witness(
        "bialgebroid.compat",
        "d_*[x, y]_A = ⟦d_*x, φ_A(y)⟧_A + ⟦φ_A(x), d_*y⟧_A",
        witness,
    ));

    // bialgebroid.lie_exchange — the dual-side Lie derivative along an
    // exact section is the primal bracket with the dual differential.
    let dual_cal = b.astar.calculus();
    let mut witness = None;
    'lie: for f in &monos {
        for x in &sections {
            if !x.basis {
                continue;
            }
            let df = cal.d_fn(f).into_vector();
            let lhs = dual_cal
                .lie_form(&df, &x.value.clone().into_form())
                .into_vector();
            let rhs = cal.bracket_sections(&x.value, &b.d_star_fn(f));
            if lhs != rhs {
                witness = Some(Witness {
                    assignment: vec![format!("f = {f}"), format!("x = {}", x.label)],
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
                break 'lie;
            }
        }
    }
    report.checks.push(Check::from_witness(
        "bialgebroid.lie_exchange",
        "L_{df}(x) = [x, d_*f]_A (L the dual-side Lie derivative)",
        witness,
    ));

    // bialgebroid.exact_bracket — brackets of exact sections are exact.
    let mut witness = None;
    'exact: for (i, f) in monos.iter().enumerate() {
        for g in monos.iter().skip(i) {
            let lhs = cal.bracket_sections(&b.d_star_fn(f), &b.d_star_fn(g));
            let rhs = b.d_star_fn(&cal.anchor_of(&b.d_star_fn(f)).apply(g));
            if lhs != rhs {
                witness = Some(Witness {
                    assignment: vec![format!("f = {f}"), format!("g = {g}")],
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
                break 'exact;
            }
        }
    }
    report.checks.push(Check::from_witness(
        "bialgebroid.exact_bracket",
        "[d_*f, d_*g]_A = d_*(a_A(d_*f)(g))",
        witness,
    ));

    report.elapsed_ms = start.elapsed().as_millis();
    report
}

/// The bialgebroid of a Hom-Poisson structure: its tangent algebroid
/// paired with its cotangent algebroid. Rejects invalid bivectors through
/// the cotangent construction.
pub fn from_poisson(p: &HomPoissonStructure) -> Result<HomLieBialgebroid> {
    let cot = cotangent_algebroid(p)?;
    HomLieBialgebroid::new(p.base().clone(), cot)
}

/// The Hom-Poisson structure induced on the base of a bialgebroid.
///
/// The bivector has coefficients π_{μν} = ⟨dx_μ, d_*x_ν⟩
/// = Σ_i a_A(e_i)(x_μ)·a_{A*}(e^i)(x_ν) — the pairing-transpose of the two
/// anchors — so its bracket is {f, g} = ⟨df, d_*g⟩ for all functions.
/// Rejects pairs whose coordinate bracket is not skew (such a pair cannot
/// satisfy the compatibility equation).
pub fn induced_poisson(b: &HomLieBialgebroid) -> Result<HomPoissonStructure> {
    let ring = b.ring().clone();
    let m = ring.nvars();
    let rank = b.rank();
    let mut p = vec![vec![ring.zero(); m]; m];
    for (mu, row) in p.iter_mut().enumerate() {
        for (nu, entry) in row.iter_mut().enumerate() {
            let mut acc = ring.zero();
            for i in 0..rank {
                acc = &acc + &(&b.a.anchor(i).coeffs()[mu] * &b.astar.anchor(i).coeffs()[nu]);
            }
            *entry = acc;
        }
    }
    for mu in 0..m {
        for nu in mu..m {
            if !(&p[mu][nu] + &p[nu][mu]).is_zero() {
                return Err(Error::Invalid(format!(
                    "the coordinate bracket of the pair is not skew at ({}, {}): \
                     {{x_{}, x_{}}} = {}, {{x_{}, x_{}}} = {}",
                    mu + 1,
                    nu + 1,
                    mu + 1,
                    nu + 1,
                    p[mu][nu],
                    nu + 1,
                    mu + 1,
                    p[nu][mu],
                )));
            }
        }
    }
    let mut pi = MultiVector::zero(&ring, m, 2);
    for mu in 0..m {
        for nu in (mu + 1)..m {
            if !p[mu][nu].is_zero() {
                pi = pi.add(&MultiVector::basis_tuple(&ring, m, &[mu, nu]).scale(&p[mu][nu]));
            }
        }
    }
    HomPoissonStructure::new(b.sigma(), pi)
}

/// The swapped pair (A*, A) — a bialgebroid again. Reuses the constructor
/// validation; the twist condition holds because the adjoint is an
/// involution.
pub fn dual_bialgebroid(b: &HomLieBialgebroid) -> Result<HomLieBialgebroid> {
    HomLieBialgebroid::new(b.astar.clone(), b.a.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::tangent_algebroid;
    use crate::poisson::{poisson_bracket, verify_purely_hom_poisson};

    fn two_var_scaling(lambda: i64) -> RingAuto {
        let ring = PolyRing::new(vec!["x", "y"]).unwrap();
        RingAuto::new(
            &ring,
            vec![ring.int(lambda) * ring.var(0), ring.int(lambda) * ring.var(1)],
        )
        .unwrap()
    }

    fn xy_structure(lambda: i64) -> HomPoissonStructure {
        let sigma = two_var_scaling(lambda);
        let ring = sigma.ring().clone();
        let xy = &ring.var(0) * &ring.var(1);
        let pi = MultiVector::basis_tuple(&ring, 2, &[0, 1]).scale(&xy);
        HomPoissonStructure::new(&sigma, pi).unwrap()
    }

    /// The dual module of an algebroid with the adjoint twist, zero anchor,
    /// and zero brackets.
    fn abelian_dual(alg: &HomLieAlgebroid) -> HomLieAlgebroid {
        let ring = alg.ring().clone();
        let n = alg.rank();
        HomLieAlgebroid::new(
            alg.sigma(),
            alg.phi_dagger().matrix().to_vec(),
            vec![vec![ring.zero(); ring.nvars()]; n],
            &[],
        )
        .unwrap()
    }

    #[test]
    fn tangent_with_abelian_dual_is_a_bialgebroid() {
        let ring = PolyRing::new(vec!["x", "y"]).unwrap();
        let sigma = RingAuto::new(
            &ring,
            vec![ring.int(2) * ring.var(0), ring.int(3) * ring.var(1)],
        )
        .unwrap();
        let tan = tangent_algebroid(&sigma);
        let dual = abelian_dual(&tan);
        let b = HomLieBialgebroid::new(tan, dual).unwrap();
        let report = verify_bialgebroid(&b, 2);
        assert!(report.passed(), "{}", report.render_text());
        // The induced structure is zero.
        let p = induced_poisson(&b).unwrap();
        assert!(p.bivector().is_zero());
        // The swapped pair is a bialgebroid too.
        let swapped = dual_bialgebroid(&b).unwrap();
        let report = verify_bialgebroid(&swapped, 2);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn poisson_pairs_are_bialgebroids() {
        for lambda in [1, 2] {
            let p = xy_structure(lambda);
            let b = from_poisson(&p).unwrap();
            let report = verify_bialgebroid(&b, 2);
            assert!(report.passed(), "λ = {lambda}:\n{}", report.render_text());
            let ids: Vec<&str> = report.checks.iter().map(|c| c.id.as_str()).collect();
            for id in [
                "bialgebroid.compat",
                "bialgebroid.lie_exchange",
                "bialgebroid.exact_bracket",
            ] {
                assert!(ids.contains(&id), "missing mixed check {id}");
            }
        }
    }

    #[test]
    fn induced_poisson_round_trips_the_bivector() {
        let sigma3 = two_var_scaling(3);
        let structures = vec![
            xy_structure(2),
            xy_structure(1),
            HomPoissonStructure::zero(&sigma3),
        ];
        for p in &structures {
            let b = from_poisson(p).unwrap();
            let q = induced_poisson(&b).unwrap();
            assert_eq!(q.bivector(), p.bivector());
            assert_eq!(q.sigma(), p.sigma());
            // The pairing bracket, the bialgebroid bracket, and the
            // bivector bracket all agree on sample functions.
            let ring = p.ring().clone();
            let samples = vec![
                ring.var(0),
                ring.var(1),
                &ring.var(0) * &ring.var(1),
                &ring.var(1) * &ring.var(1),
            ];
            for f in &samples {
                for g in &samples {
                    assert_eq!(b.induced_bracket(f, g), poisson_bracket(&q, f, g));
                }
            }
        }
    }

    #[test]
    fn opposite_anchor_composites_negate_the_bivector() {
        let p = xy_structure(2);
        let b = from_poisson(&p).unwrap();
        let swapped = dual_bialgebroid(&b).unwrap();
        let forward = induced_poisson(&b).unwrap();
        let backward = induced_poisson(&swapped).unwrap();
        assert!(!forward.bivector().is_zero());
        assert_eq!(backward.bivector(), &forward.bivector().neg());
        // Swapping twice restores the original pair.
        assert_eq!(dual_bialgebroid(&swapped).unwrap(), b);
    }

    #[test]
    fn dual_of_a_poisson_pair_is_a_bialgebroid() {
        let p = xy_structure(2);
        let swapped = dual_bialgebroid(&from_poisson(&p).unwrap()).unwrap();
        let report = verify_bialgebroid(&swapped, 2);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn induced_bracket_is_a_purely_hom_poisson_bracket() {
        let p = xy_structure(2);
        let b = from_poisson(&p).unwrap();
        let report = verify_purely_hom_poisson(b.sigma(), |f, g| b.induced_bracket(f, g), 2);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn compatibility_failure_is_witnessed() {
        // Constant-bracket algebroids over one variable with zero anchors:
        // A carries the nilpotent bracket [e₁, e₂] = e₃, the dual is
        // abelian — a passing pair. Giving the dual the same nilpotent
        // bracket keeps it a valid algebroid but breaks the compatibility
        // equation: d_*[e₁, e₂] = d_*e₃ ≠ 0 while both Schouten terms
        // vanish on basis sections.
        let ring = PolyRing::new(vec!["t"]).unwrap();
        let sigma = RingAuto::new(&ring, vec![ring.int(2) * ring.var(0)]).unwrap();
        let eye: Vec<Vec<Poly>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| if i == j { ring.one() } else { ring.zero() })
                    .collect()
            })
            .collect();
        let zero_anchor = vec![vec![ring.zero()]; 3];
        let nilpotent_row = (0, 1, vec![ring.zero(), ring.zero(), ring.one()]);
        let a = HomLieAlgebroid::new(
            &sigma,
            eye.clone(),
            zero_anchor.clone(),
            std::slice::from_ref(&nilpotent_row),
        )
        .unwrap();
        let quiet_dual =
            HomLieAlgebroid::new(&sigma, eye.clone(), zero_anchor.clone(), &[]).unwrap();
        let loud_dual = HomLieAlgebroid::new(
            &sigma,
            eye,
            zero_anchor,
            std::slice::from_ref(&nilpotent_row),
        )
        .unwrap();

        let passing = HomLieBialgebroid::new(a.clone(), quiet_dual).unwrap();
        let report = verify_bialgebroid(&passing, 2);
        assert!(report.passed(), "{}", report.render_text());

        let failing = HomLieBialgebroid::new(a, loud_dual).unwrap();
        let report = verify_bialgebroid(&failing, 2);
        assert!(!report.passed());
        assert_eq!(report.failures(), vec!["bialgebroid.compat"]);
        let check = report
            .checks
            .iter()
            .find(|c| c.id == "bialgebroid.compat")
            .unwrap();
        let witness = check.witness.as_ref().unwrap();
        assert_eq!(witness.assignment.len(), 2);
        assert!(witness.assignment[0].starts_with("x = "));
    }

    #[test]
    fn constituent_failure_aborts_before_the_mixed_checks() {
        // An identity-coefficient anchor on the dual side violates the
        // anchor-twist law against the adjoint twist, so the dual
        // constituent fails on its own and the mixed checks never run.
        let ring = PolyRing::new(vec!["x", "y"]).unwrap();
        let sigma = RingAuto::new(
            &ring,
            vec![ring.int(2) * ring.var(0), ring.int(3) * ring.var(1)],
        )
        .unwrap();
        let tan = tangent_algebroid(&sigma);
        let eye_anchor: Vec<Vec<Poly>> = (0..2)
            .map(|i| {
                (0..2)
                    .map(|j| if i == j { ring.one() } else { ring.zero() })
                    .collect()
            })
            .collect();
        let bad_dual = HomLieAlgebroid::new(
            &sigma,
            tan.phi_dagger().matrix().to_vec(),
            eye_anchor,
            &[],
        )
        .unwrap();
        let b = HomLieBialgebroid::new(tan, bad_dual).unwrap();
        let report = verify_bialgebroid(&b, 2);
        assert!(!report.passed());
        assert!(report.failures().iter().all(|id| id.starts_with("astar.")));
        assert!(report
            .checks
            .iter()
            .all(|c| !c.id.starts_with("bialgebroid.")));
    }

    #[test]
    fn frame_violations_are_rejected() {
        let sigma2 = two_var_scaling(2);
        let sigma3 = two_var_scaling(3);
        let tan2 = tangent_algebroid(&sigma2);
        let tan3 = tangent_algebroid(&sigma3);
        // An algebroid is not its own dual frame unless φ† = φ.
        assert!(matches!(
            HomLieBialgebroid::new(tan2.clone(), tan2.clone()),
            Err(Error::TwistMismatch(_))
        ));
        // Different substitutions.
        assert!(matches!(
            HomLieBialgebroid::new(tan2.clone(), abelian_dual(&tan3)),
            Err(Error::TwistMismatch(_))
        ));
        // Different rings.
        let ring1 = PolyRing::new(vec!["t"]).unwrap();
        let sigma1 = RingAuto::new(&ring1, vec![ring1.int(2) * ring1.var(0)]).unwrap();
        let tan1 = tangent_algebroid(&sigma1);
        assert!(matches!(
            HomLieBialgebroid::new(tan2, abelian_dual(&tan1)),
            Err(Error::RingMismatch { .. })
        ));
    }

    #[test]
    fn non_skew_pairs_cannot_induce_a_bivector() {
        // The pair of the tangent algebroid with a dual whose anchor is
        // π♯-like but not skew-compatible: a zero-bracket dual with anchor
        // sending e^0 to D_x produces {x, x} = 1 ≠ 0.
        let ring = PolyRing::new(vec!["x", "y"]).unwrap();
        let sigma = RingAuto::new(
            &ring,
            vec![ring.int(2) * ring.var(0), ring.int(2) * ring.var(1)],
        )
        .unwrap();
        let tan = tangent_algebroid(&sigma);
        // a(e^0) = D_x, a(e^1) = 0: valid as an algebroid (the anchor-twist
        // law holds because φ† = 2·id and Ad(D_x) = ½·2·D_x... it does not
        // need to hold for this test — only the constructor and the skew
        // gate run).
        let anchor = vec![
            vec![ring.one(), ring.zero()],
            vec![ring.zero(), ring.zero()],
        ];
        let dual =
            HomLieAlgebroid::new(&sigma, tan.phi_dagger().matrix().to_vec(), anchor, &[]).unwrap();
        let b = HomLieBialgebroid::new(tan, dual).unwrap();
        assert!(matches!(induced_poisson(&b), Err(Error::Invalid(_))));
    }
}
