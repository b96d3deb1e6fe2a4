//! The differential calculus of a Hom-Lie algebroid: section brackets with
//! Hom-Leibniz expansion, the cochain differential, the Schouten bracket on
//! multivectors, interior products, and Lie derivatives.
//!
//! All operations live on [`Calculus`], which borrows the algebroid and
//! optionally carries one deliberately flipped sign ([`SignSite`]). The
//! flip machinery exists to demonstrate that the identity catalog detects
//! single-sign implementation errors; a plain calculus never flips
//! anything.

use crate::exterior::{interior, interior_dual, MultiForm, MultiVector};
use crate::ring::{Poly, SigmaDerivation};

use super::HomLieAlgebroid;

/// A single sign in the calculus that can be deliberately flipped.
///
/// Each site is an independent place in the implementation where a sign
/// error could hide; for every one of them some identity in the catalog
/// fails when the sign is wrong.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignSite {
    /// The anchor terms (−1)^{i+1}·a_A(x_i)(…) in the differential.
    DAnchorTerm,
    /// The bracket terms (−1)^{i+j}·φ_A†Ξ([…],…) in the differential.
    DBracketTerm,
    /// The anchor term +a_A(φ_A x)(g)·φ_A(y) in expanding [x, g·y].
    BracketExpandRight,
    /// The anchor term −a_A(φ_A y)(f)·φ_A(x) in expanding [f·x, y].
    BracketExpandLeft,
    /// The (−1)^{i+j} coefficient of each pair term in the Schouten
    /// bracket.
    SchoutenPairTerm,
    /// The sign of the grade-0 branches ⟦X, f⟧ and ⟦f, Y⟧ of the Schouten
    /// bracket.
    SchoutenScalar,
    /// The overall sign of the interior product i_X on forms.
    InteriorOutput,
    /// The overall sign of the dual interior product i_η on multivectors.
    DualInteriorOutput,
    /// The −(−1)^k d∘i_{φ_A⁻¹X} term inside the form Lie derivative.
    FormLieDTerm,
    /// The overall sign of the Lie derivative on multivectors.
    MvLieOutput,
    /// The overall sign of the Lie derivative on forms.
    FormLieOutput,
}

impl SignSite {
    /// All flippable sites, for exhaustive mutation sweeps.
    pub const ALL: [SignSite; 11] = [
        SignSite::DAnchorTerm,
        SignSite::DBracketTerm,
        SignSite::BracketExpandRight,
        SignSite::BracketExpandLeft,
        SignSite::SchoutenPairTerm,
        SignSite::SchoutenScalar,
        SignSite::InteriorOutput,
        SignSite::DualInteriorOutput,
        SignSite::FormLieDTerm,
        SignSite::MvLieOutput,
        SignSite::FormLieOutput,
    ];
}

impl std::fmt::Display for SignSite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            SignSite::DAnchorTerm => "differential anchor term",
            SignSite::DBracketTerm => "differential bracket term",
            SignSite::BracketExpandRight => "bracket expansion right anchor term",
            SignSite::BracketExpandLeft => "bracket expansion left anchor term",
            SignSite::SchoutenPairTerm => "schouten pair term",
            SignSite::SchoutenScalar => "schouten scalar branch",
            SignSite::InteriorOutput => "interior product output",
            SignSite::DualInteriorOutput => "dual interior product output",
            SignSite::FormLieDTerm => "form lie derivative d-term",
            SignSite::MvLieOutput => "multivector lie derivative output",
            SignSite::FormLieOutput => "form lie derivative output",
        };
        f.write_str(name)
    }
}

/// The calculus operations of a Hom-Lie algebroid.
pub struct Calculus<'a> {
    alg: &'a HomLieAlgebroid,
    mutation: Option<SignSite>,
}

impl<'a> Calculus<'a> {
    pub(super) fn new(alg: &'a HomLieAlgebroid, mutation: Option<SignSite>) -> Self {
        Calculus { alg, mutation }
    }

    /// The underlying algebroid.
    pub fn algebroid(&self) -> &HomLieAlgebroid {
        self.alg
    }

    fn flipped(&self, site: SignSite) -> bool {
        self.mutation == Some(site)
    }

    /// The anchor of a section: a_A(Σ f_i·e_i) = Σ f_i·a_A(e_i).
    pub fn anchor_of(&self, x: &MultiVector) -> SigmaDerivation {
        assert_eq!(x.grade(), 1, "the anchor applies to sections");
        let mut acc = SigmaDerivation::zero(self.alg.sigma());
        for i in 0..self.alg.rank() {
            let f = x.component(&[i]);
            if !f.is_zero() {
                acc = acc
                    .add(&self.alg.anchor(i).scale_poly(&f))
                    .expect("anchor derivations share the base automorphism");
            }
        }
        acc
    }

    /// The bracket of two sections, expanded by the Hom-Leibniz rule:
    ///
    /// ```text
    /// [f·e_i, g·e_j] = σ(f)σ(g)[e_i,e_j] + σ(f)·a_A(φ_A e_i)(g)·φ_A(e_j)
    ///                                    − σ(g)·a_A(φ_A e_j)(f)·φ_A(e_i)
    /// ```
    pub fn bracket_sections(&self, x: &MultiVector, y: &MultiVector) -> MultiVector {
        assert_eq!(x.grade(), 1, "section bracket takes grade-1 arguments");
        assert_eq!(y.grade(), 1, "section bracket takes grade-1 arguments");
        let alg = self.alg;
        let sigma = alg.sigma();
        let mut acc = MultiVector::zero(alg.ring(), alg.rank(), 1);
        for i in 0..alg.rank() {
            let f = x.component(&[i]);
            if f.is_zero() {
                continue;
            }
            let sf = sigma.apply(&f);
            let aphi_i = self.anchor_of(&alg.phi().apply_mv(&alg.basis_section(i)));
            for j in 0..alg.rank() {
                let g = y.component(&[j]);
                if g.is_zero() {
                    continue;
                }
                let sg = sigma.apply(&g);
                // Structure term.
                acc = acc.add(&alg.bracket_basis(i, j).scale(&(&sf * &sg)));
                // Right anchor term.
                let mut right = alg
                    .phi()
                    .apply_mv(&alg.basis_section(j))
                    .scale(&(&sf * &aphi_i.apply(&g)));
                if self.flipped(SignSite::BracketExpandRight) {
                    right = right.neg();
                }
                acc = acc.add(&right);
                // Left anchor term.
                let aphi_j = self.anchor_of(&alg.phi().apply_mv(&alg.basis_section(j)));
                let mut left = alg
                    .phi()
                    .apply_mv(&alg.basis_section(i))
                    .scale(&(&sg * &aphi_j.apply(&f)))
                    .neg();
                if self.flipped(SignSite::BracketExpandLeft) {
                    left = left.neg();
                }
                acc = acc.add(&left);
            }
        }
        acc
    }

    /// The differential on forms:
    ///
    /// ```text
    /// (dΞ)(x₁,…,x_{k+1}) = Σ_i (−1)^{i+1} a_A(x_i) Ξ(φ_A⁻¹x₁,…,ω̂_i,…,φ_A⁻¹x_{k+1})
    ///   + Σ_{i<j} (−1)^{i+j} (φ_A†Ξ)([φ_A⁻¹x_i, φ_A⁻¹x_j]_A, x₁,…,x̂_i,…,x̂_j,…)
    /// ```
    ///
    /// computed componentwise on basis tuples.
    pub fn differential(&self, xi: &MultiForm) -> MultiForm {
        let alg = self.alg;
        let k = xi.grade();
        let rank = alg.rank();
        let dagger_xi = alg.phi_dagger().apply_form(xi);
        let mut out = MultiForm::zero(alg.ring(), rank, k + 1);
        for tuple in crate::exterior::IndexTuple::all(rank, k + 1) {
            let idx = tuple.indices();
            let mut comp = alg.ring().zero();
            // Anchor terms.
            for (a, &ia) in idx.iter().enumerate() {
                let mut rest = MultiVector::scalar(alg.ring(), rank, alg.ring().one());
                for (m, &im) in idx.iter().enumerate() {
                    if m != a {
                        rest = rest.wedge(&alg.phi_inv().column_mv(im));
                    }
                }
                let inner = crate::exterior::pair(xi, &rest)
                    .expect("pairing of compatible grades");
                let mut term = alg.anchor(ia).apply(&inner);
                if a % 2 == 1 {
                    term = -term;
                }
                if self.flipped(SignSite::DAnchorTerm) {
                    term = -term;
                }
                comp = &comp + &term;
            }
            // Bracket terms.
            for a in 0..idx.len() {
                for b in (a + 1)..idx.len() {
                    let br = self.bracket_sections(
                        &alg.phi_inv().column_mv(idx[a]),
                        &alg.phi_inv().column_mv(idx[b]),
                    );
                    let mut rest = br;
                    for (m, &im) in idx.iter().enumerate() {
                        if m != a && m != b {
                            rest = rest.wedge(&alg.basis_section(im));
                        }
                    }
                    let mut term = crate::exterior::pair(&dagger_xi, &rest)
                        .expect("pairing of compatible grades");
                    if (a + b) % 2 == 1 {
                        // (−1)^{(a+1)+(b+1)} = (−1)^{a+b} with 0-based a, b.
                        term = -term;
                    }
                    if self.flipped(SignSite::DBracketTerm) {
                        term = -term;
                    }
                    comp = &comp + &term;
                }
            }
            if !comp.is_zero() {
                out = out.add(
                    &MultiForm::basis_tuple(alg.ring(), rank, tuple.indices()).scale(&comp),
                );
            }
        }
        out
    }

    /// d applied to a function (a grade-0 form): (df)_i = a_A(e_i)(f).
    pub fn d_fn(&self, f: &Poly) -> MultiForm {
        self.differential(&MultiForm::scalar(self.alg.ring(), self.alg.rank(), f.clone()))
    }

    /// The Schouten bracket on multivectors:
    ///
    /// ```text
    /// ⟦x₁∧…∧x_p, y₁∧…∧y_q⟧ = Σ_{i,j} (−1)^{i+j} [x_i, y_j]_A ∧ φ_A(x₁∧…x̂_i…∧y₁∧…ŷ_j…)
    /// ⟦x, f⟧ = a_A(φ_A x)(f),   extended to higher grades by the graded
    /// Leibniz rule; ⟦f, g⟧ = 0.
    /// ```
    ///
    /// Component coefficients are attached to the first wedge factor; the
    /// result does not depend on that choice.
    pub fn schouten(&self, x: &MultiVector, y: &MultiVector) -> MultiVector {
        let alg = self.alg;
        let (p, q) = (x.grade(), y.grade());
        let out_grade = (p + q).saturating_sub(1);
        let mut acc = MultiVector::zero(alg.ring(), alg.rank(), out_grade);
        if p == 0 && q == 0 {
            return acc;
        }
        if q == 0 {
            // ⟦X, f⟧ = Σ_i (−1)^{p+i} a_A(φ_A x_i)(f)·φ_A(x₁∧…x̂_i…∧x_p).
            let f = y.as_scalar().expect("grade-0 argument is a scalar");
            for (t, coef) in x.components() {
                let scaled = alg.sigma().apply(coef);
                for (a, &ia) in t.indices().iter().enumerate() {
                    let aphi = self.anchor_of(&alg.phi().apply_mv(&alg.basis_section(ia)));
                    let rest: Vec<usize> = t
                        .indices()
                        .iter()
                        .enumerate()
                        .filter(|&(m, _)| m != a)
                        .map(|(_, &i)| i)
                        .collect();
                    let rest_mv = alg
                        .phi()
                        .apply_mv(&MultiVector::basis_tuple(alg.ring(), alg.rank(), &rest));
                    let mut term = rest_mv.scale(&(&scaled * &aphi.apply(&f)));
                    if (p + a + 1) % 2 == 1 {
                        // (−1)^{p+i} with i = a+1 (1-based).
                        term = term.neg();
                    }
                    if self.flipped(SignSite::SchoutenScalar) {
                        term = term.neg();
                    }
                    acc = acc.add(&term);
                }
            }
            return acc;
        }
        if p == 0 {
            // Graded skew: ⟦f, Y⟧ = −(−1)^{(0−1)(q−1)}⟦Y, f⟧.
            let flipped = self.schouten(y, x);
            return if (q - 1) % 2 == 0 {
                flipped.neg()
            } else {
                flipped
            };
        }
        // Both grades ≥ 1: expand over components, coefficients attached
        // to the first factor of each side.
        for (tx, fx) in x.components() {
            for (ty, fy) in y.components() {
                let xs: Vec<MultiVector> = tx
                    .indices()
                    .iter()
                    .enumerate()
                    .map(|(m, &i)| {
                        let b = alg.basis_section(i);
                        if m == 0 {
                            b.scale(fx)
                        } else {
                            b
                        }
                    })
                    .collect();
                let ys: Vec<MultiVector> = ty
                    .indices()
                    .iter()
                    .enumerate()
                    .map(|(m, &j)| {
                        let b = alg.basis_section(j);
                        if m == 0 {
                            b.scale(fy)
                        } else {
                            b
                        }
                    })
                    .collect();
                for a in 0..p {
                    for b in 0..q {
                        let br = self.bracket_sections(&xs[a], &ys[b]);
                        let mut rest =
                            MultiVector::scalar(alg.ring(), alg.rank(), alg.ring().one());
                        for (m, s) in xs.iter().enumerate() {
                            if m != a {
                                rest = rest.wedge(&alg.phi().apply_mv(s));
                            }
                        }
                        for (m, s) in ys.iter().enumerate() {
                            if m != b {
                                rest = rest.wedge(&alg.phi().apply_mv(s));
                            }
                        }
                        let mut term = br.wedge(&rest);
                        if (a + b) % 2 == 1 {
                            // (−1)^{(a+1)+(b+1)}.
                            term = term.neg();
                        }
                        if self.flipped(SignSite::SchoutenPairTerm) {
                            term = term.neg();
                        }
                        acc = acc.add(&term);
                    }
                }
            }
        }
        acc
    }

    /// Interior product of a grade-k multivector with a grade-m form
    /// (k ≤ m): (i_XΞ)(y₁,…,y_{m−k}) = (φ_A†Ξ)(φ_A X, y₁,…,y_{m−k}).
    pub fn interior_mv(&self, x: &MultiVector, xi: &MultiForm) -> MultiForm {
        let mut out =
            interior(self.alg.phi(), x, xi).expect("interior product of compatible grades");
        if self.flipped(SignSite::InteriorOutput) {
            out = out.neg();
        }
        out
    }

    /// Interior product of a grade-k form with a grade-m multivector
    /// (k ≤ m), the dual-sided contraction.
    pub fn interior_form(&self, eta: &MultiForm, x: &MultiVector) -> MultiVector {
        let mut out = interior_dual(self.alg.phi(), eta, x)
            .expect("interior product of compatible grades");
        if self.flipped(SignSite::DualInteriorOutput) {
            out = out.neg();
        }
        out
    }

    /// Lie derivative of a multivector along a section: L_x X = ⟦x, X⟧.
    pub fn lie_mv(&self, x: &MultiVector, big_x: &MultiVector) -> MultiVector {
        assert_eq!(x.grade(), 1, "multivector lie derivative is along a section");
        let mut out = self.schouten(x, big_x);
        if self.flipped(SignSite::MvLieOutput) {
            out = out.neg();
        }
        out
    }

    /// Lie derivative of a form along a grade-k multivector:
    ///
    /// ```text
    /// L_X Ξ = i_X d((φ_A†)⁻¹Ξ) − (−1)^k d(i_{φ_A⁻¹X}(φ_A†)⁻¹Ξ)
    /// ```
    ///
    /// mapping grade m to grade m − k + 1 (the second term drops out when
    /// m = k − 1).
    pub fn lie_form(&self, x: &MultiVector, xi: &MultiForm) -> MultiForm {
        let alg = self.alg;
        let k = x.grade();
        let m = xi.grade();
        assert!(k >= 1, "form lie derivative is along grade ≥ 1");
        assert!(m + 1 >= k, "form grade too small for this lie derivative");
        let xi_prime = alg.phi_dagger_inv().apply_form(xi);
        let first = self.interior_mv(x, &self.differential(&xi_prime));
        let mut out = first;
        if m >= k {
            let inner = self.interior_mv(&alg.phi_inv().apply_mv(x), &xi_prime);
            let mut second = self.differential(&inner);
            if k % 2 == 0 {
                // −(−1)^k.
                second = second.neg();
            }
            if self.flipped(SignSite::FormLieDTerm) {
                second = second.neg();
            }
            out = out.add(&second);
        }
        if self.flipped(SignSite::FormLieOutput) {
            out = out.neg();
        }
        out
    }
}
