//! Hom-Lie algebras over ℚ, their representations, duals, bialgebras, and
//! doubles.
//!
//! A (regular) Hom-Lie algebra is (g, [·,·], Φ) with Φ an invertible linear
//! map such that
//!
//! ```text
//! [x, y] = −[y, x]                                   (skew-symmetry)
//! [Φx, [y, z]] + [Φy, [z, x]] + [Φz, [x, y]] = 0     (Hom-Jacobi)
//! Φ[x, y] = [Φx, Φy]                                 (Φ is a morphism)
//! ```
//!
//! A representation of g on (V, β) is ρ: g → End(V) with
//!
//! ```text
//! ρ(Φx)∘β = β∘ρ(x),     ρ([x,y])∘β = ρ(Φx)ρ(y) − ρ(Φy)ρ(x),
//! ```
//!
//! whose dual lives on (V*, (β⁻¹)ᵀ) via ⟨ρ⋆(x)ξ, u⟩ = −⟨ξ, ρ(Φ⁻¹x)(β⁻²u)⟩.
//! The coadjoint action is the dual of the adjoint (V = g, β = Φ, ρ = ad).
//!
//! The bracket extends to ∧•g by
//!
//! ```text
//! ⟦x₁∧…∧x_m, y₁∧…∧y_n⟧ = Σ_{i,j} (−1)^{i+j} [x_i, y_j] ∧ Φ(x₁∧…x̂_i…∧y₁∧…ŷ_j…)
//! ```
//!
//! which is what the bialgebra compatibility condition is written in:
//! a Hom-Lie bialgebra pairs (g, Φ) with a bracket on g* twisted by
//! (Φ⁻¹)ᵀ such that the induced cobracket Δ satisfies
//! `Δ([x,y]) = ad_{Φ⁻¹x}Δ(y) − ad_{Φ⁻¹y}Δ(x)`. Its double is a quadratic
//! Hom-Lie algebra on g ⊕ g* with the canonical symmetric pairing.
//!
//! Everything here is finite-dimensional over ℚ; exterior values are
//! represented over the constants-only polynomial ring so they share the
//! canonical-form machinery of [`crate::exterior`].

use std::sync::Arc;

use num::{One, Zero};

use crate::exterior::MultiVector;
use crate::linalg;
use crate::report::{Check, Report, Witness};
use crate::ring::{PolyRing, Q};
use crate::{Error, Result};

/// A finite-dimensional Hom-Lie algebra (g, [·,·], Φ) over ℚ with
/// invertible twist Φ.
#[derive(Debug, Clone, PartialEq)]
pub struct HomLieAlgebra {
    dim: usize,
    ring0: Arc<PolyRing>,
    /// c[i][j][k]: [e_i, e_j] = Σ_k c[i][j][k]·e_k (full table, skew).
    c: Vec<Vec<Vec<Q>>>,
    /// phi[i][j]: Φ(e_j) = Σ_i phi[i][j]·e_i.
    phi: Vec<Vec<Q>>,
    phi_inv: Vec<Vec<Q>>,
}

impl HomLieAlgebra {
    /// Builds an algebra from bracket rows for index pairs `i < j`
    /// (0-based; missing pairs are zero brackets) and the twist matrix.
    ///
    /// Skew-symmetry is imposed by construction; invertibility of Φ is
    /// required here, the remaining laws are checked by [`Self::verify`].
    pub fn new(
        dim: usize,
        brackets: &[(usize, usize, Vec<Q>)],
        phi: Vec<Vec<Q>>,
    ) -> Result<Self> {
        if phi.len() != dim || phi.iter().any(|row| row.len() != dim) {
            return Err(Error::Dimension(format!(
                "twist matrix must be {dim}×{dim}"
            )));
        }
        let mut c = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        for (i, j, value) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(Error::Dimension(format!(
                    "bracket indices ({}, {}) out of range for dimension {dim}",
                    i + 1,
                    j + 1
                )));
            }
            if i >= j {
                return Err(Error::Invalid(format!(
                    "bracket rows must have i < j (got i = {}, j = {}); the rest follows by skew-symmetry",
                    i + 1,
                    j + 1
                )));
            }
            if value.len() != dim {
                return Err(Error::Dimension(format!(
                    "bracket value for ({}, {}) needs {dim} coefficients",
                    i + 1,
                    j + 1
                )));
            }
            for k in 0..dim {
                c[i][j][k] = value[k].clone();
                c[j][i][k] = -value[k].clone();
            }
        }
        let phi_inv = linalg::invert_rational(&phi).ok_or(Error::NotInvertible {
            det: "0 (twist matrix is singular)".into(),
        })?;
        Ok(HomLieAlgebra {
            dim,
            ring0: PolyRing::rationals(),
            c,
            phi,
            phi_inv,
        })
    }

    /// Dimension of g.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The constants-only coefficient ring shared by exterior values.
    pub fn scalar_ring(&self) -> &Arc<PolyRing> {
        &self.ring0
    }

    /// Structure constants `c[i][j][k]`.
    pub fn structure_constants(&self) -> &Vec<Vec<Vec<Q>>> {
        &self.c
    }

    /// The twist matrix Φ.
    pub fn phi_matrix(&self) -> &Vec<Vec<Q>> {
        &self.phi
    }

    /// The inverse twist matrix Φ⁻¹.
    pub fn phi_inv_matrix(&self) -> &Vec<Vec<Q>> {
        &self.phi_inv
    }

    /// Bracket of coefficient vectors.
    pub fn bracket_vec(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let factor = &x[i] * &y[j];
                for k in 0..self.dim {
                    if !self.c[i][j][k].is_zero() {
                        out[k] += &factor * &self.c[i][j][k];
                    }
                }
            }
        }
        out
    }

    /// Φ applied to a coefficient vector.
    pub fn phi_vec(&self, x: &[Q]) -> Vec<Q> {
        mat_apply(&self.phi, x)
    }

    /// Φ⁻¹ applied to a coefficient vector.
    pub fn phi_inv_vec(&self, x: &[Q]) -> Vec<Q> {
        mat_apply(&self.phi_inv, x)
    }

    /// The basis vector e_i as a multivector over the scalar ring.
    pub fn basis_mv(&self, i: usize) -> MultiVector {
        MultiVector::basis(&self.ring0, self.dim, i)
    }

    /// A coefficient vector as a grade-1 multivector.
    pub fn mv(&self, coeffs: &[Q]) -> MultiVector {
        MultiVector::from_coeffs(
            &self.ring0,
            coeffs.iter().map(|q| self.ring0.constant(q.clone())).collect(),
        )
        .expect("coefficient vector is a valid section")
    }

    /// Φ extended to ∧•g.
    pub fn phi_mv(&self, x: &MultiVector) -> MultiVector {
        let mut acc = MultiVector::zero(&self.ring0, self.dim, x.grade());
        for (t, p) in x.components() {
            let mut term = MultiVector::scalar(&self.ring0, self.dim, p.clone());
            for &i in t.indices() {
                let col: Vec<_> = (0..self.dim)
                    .map(|r| self.ring0.constant(self.phi[r][i].clone()))
                    .collect();
                term = term.wedge(&MultiVector::from_coeffs(&self.ring0, col).unwrap());
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// The extension of the bracket to ∧•g:
    /// `⟦x₁∧…∧x_m, y₁∧…∧y_n⟧ = Σ (−1)^{i+j}[x_i,y_j]∧Φ(rest)`.
    ///
    /// Grade-0 factors bracket to zero (constants are central over a
    /// point). `ad_x(Y) = ⟦x, Y⟧` for grade-1 `x`.
    pub fn extended_bracket(&self, x: &MultiVector, y: &MultiVector) -> MultiVector {
        let (m, n) = (x.grade(), y.grade());
        if m == 0 || n == 0 {
            let grade = (m + n).saturating_sub(1);
            return MultiVector::zero(&self.ring0, self.dim, grade);
        }
        let mut acc = MultiVector::zero(&self.ring0, self.dim, m + n - 1);
        for (tx, px) in x.components() {
            for (ty, py) in y.components() {
                let coeff = px * py;
                for (a, &ia) in tx.indices().iter().enumerate() {
                    for (b, &jb) in ty.indices().iter().enumerate() {
                        // 1-based positions give the sign (−1)^{(a+1)+(b+1)}.
                        let sign_neg = (a + b) % 2 != 0;
                        let mut ei = vec![Q::zero(); self.dim];
                        ei[ia] = Q::one();
                        let mut ej = vec![Q::zero(); self.dim];
                        ej[jb] = Q::one();
                        let bracket = self.mv(&self.bracket_vec(&ei, &ej));
                        let rest: Vec<usize> = tx
                            .indices()
                            .iter()
                            .enumerate()
                            .filter(|&(p, _)| p != a)
                            .map(|(_, &q)| q)
                            .chain(
                                ty.indices()
                                    .iter()
                                    .enumerate()
                                    .filter(|&(p, _)| p != b)
                                    .map(|(_, &q)| q),
                            )
                            .collect();
                        let rest_mv =
                            MultiVector::basis_tuple(&self.ring0, self.dim, &rest);
                        let mut term = bracket.wedge(&self.phi_mv(&rest_mv)).scale(&coeff);
                        if sign_neg {
                            term = term.neg();
                        }
                        acc = acc.add(&term);
                    }
                }
            }
        }
        acc
    }

    /// Checks skew-symmetry, Hom-Jacobi and the morphism property of Φ on
    /// all basis tuples.
    pub fn verify(&self) -> Report {
        let start = std::time::Instant::now();
        let mut report = Report::new(format!("hom-lie algebra (dim {})", self.dim), 0);
        let basis = |i: usize| -> Vec<Q> {
            let mut v = vec![Q::zero(); self.dim];
            v[i] = Q::one();
            v
        };

        // Skew-symmetry (including the diagonal).
        let mut witness = None;
        'skew: for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = self.bracket_vec(&basis(i), &basis(j));
                let rhs = vec_neg(&self.bracket_vec(&basis(j), &basis(i)));
                if lhs != rhs {
                    witness = Some(Witness {
                        assignment: vec![format!("x = e_{}", i + 1), format!("y = e_{}", j + 1)],
                        lhs: format_vec(&lhs),
                        rhs: format_vec(&rhs),
                    });
                    break 'skew;
                }
            }
        }
        report.checks.push(Check::from_witness(
            "homlie.skew",
            "[x, y] = −[y, x] on all basis pairs",
            witness,
        ));

        // Hom-Jacobi.
        let mut witness = None;
        'jac: for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let (x, y, z) = (basis(i), basis(j), basis(k));
                    let term = |a: &[Q], b: &[Q], c: &[Q]| {
                        self.bracket_vec(&self.phi_vec(a), &self.bracket_vec(b, c))
                    };
                    let total = vec_add(
                        &vec_add(&term(&x, &y, &z), &term(&y, &z, &x)),
                        &term(&z, &x, &y),
                    );
                    if !total.iter().all(Q::is_zero) {
                        witness = Some(Witness {
                            assignment: vec![
                                format!("x = e_{}", i + 1),
                                format!("y = e_{}", j + 1),
                                format!("z = e_{}", k + 1),
                            ],
                            lhs: format_vec(&total),
                            rhs: format_vec(&vec![Q::zero(); self.dim]),
                        });
                        break 'jac;
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "homlie.jacobi",
            "[Φx, [y, z]] + [Φy, [z, x]] + [Φz, [x, y]] = 0 on all basis triples",
            witness,
        ));

        // Φ is a bracket morphism.
        let mut witness = None;
        'mor: for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = self.phi_vec(&self.bracket_vec(&basis(i), &basis(j)));
                let rhs = self.bracket_vec(&self.phi_vec(&basis(i)), &self.phi_vec(&basis(j)));
                if lhs != rhs {
                    witness = Some(Witness {
                        assignment: vec![format!("x = e_{}", i + 1), format!("y = e_{}", j + 1)],
                        lhs: format_vec(&lhs),
                        rhs: format_vec(&rhs),
                    });
                    break 'mor;
                }
            }
        }
        report.checks.push(Check::from_witness(
            "homlie.morphism",
            "Φ[x, y] = [Φx, Φy] on all basis pairs",
            witness,
        ));

        report.elapsed_ms = start.elapsed().as_millis();
        report
    }
}

/// A representation (V, β, ρ) of a Hom-Lie algebra: matrices over ℚ with
/// invertible β.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    algebra_dim: usize,
    dim_v: usize,
    beta: Vec<Vec<Q>>,
    beta_inv: Vec<Vec<Q>>,
    /// rho[i] is the matrix of ρ(e_i) on V.
    rho: Vec<Vec<Vec<Q>>>,
}

impl Representation {
    /// Builds a representation candidate (laws are checked by
    /// [`HomLieAlgebra::verify_representation`]).
    pub fn new(algebra_dim: usize, beta: Vec<Vec<Q>>, rho: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        let dim_v = beta.len();
        if beta.iter().any(|row| row.len() != dim_v) {
            return Err(Error::Dimension("β must be square".into()));
        }
        if rho.len() != algebra_dim {
            return Err(Error::Dimension(format!(
                "need one ρ matrix per algebra basis element ({algebra_dim}), got {}",
                rho.len()
            )));
        }
        for m in &rho {
            if m.len() != dim_v || m.iter().any(|row| row.len() != dim_v) {
                return Err(Error::Dimension(format!("every ρ matrix must be {dim_v}×{dim_v}")));
            }
        }
        let beta_inv = linalg::invert_rational(&beta).ok_or(Error::NotInvertible {
            det: "0 (β is singular)".into(),
        })?;
        Ok(Representation {
            algebra_dim,
            dim_v,
            beta,
            beta_inv,
            rho,
        })
    }

    /// Dimension of V.
    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    /// The structure map β.
    pub fn beta(&self) -> &Vec<Vec<Q>> {
        &self.beta
    }

    /// The matrix of ρ(x) for a coefficient vector x.
    pub fn rho_vec(&self, x: &[Q]) -> Vec<Vec<Q>> {
        let mut m = vec![vec![Q::zero(); self.dim_v]; self.dim_v];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for r in 0..self.dim_v {
                for c in 0..self.dim_v {
                    m[r][c] += xi * &self.rho[i][r][c];
                }
            }
        }
        m
    }

    /// The matrix of ρ(e_i).
    pub fn rho_basis(&self, i: usize) -> &Vec<Vec<Q>> {
        &self.rho[i]
    }
}

impl HomLieAlgebra {
    /// Checks the two representation laws on all basis pairs.
    pub fn verify_representation(&self, rep: &Representation) -> Report {
        let start = std::time::Instant::now();
        let mut report = Report::new(
            format!(
                "representation (dim {}) of hom-lie algebra (dim {})",
                rep.dim_v, self.dim
            ),
            0,
        );
        let basis = |i: usize| -> Vec<Q> {
            let mut v = vec![Q::zero(); self.dim];
            v[i] = Q::one();
            v
        };

        let mut witness = None;
        'tw: for i in 0..self.dim {
            let lhs = linalg::mul_rational(&rep.rho_vec(&self.phi_vec(&basis(i))), &rep.beta);
            let rhs = linalg::mul_rational(&rep.beta, &rep.rho[i]);
            if lhs != rhs {
                witness = Some(Witness {
                    assignment: vec![format!("x = e_{}", i + 1)],
                    lhs: format_mat(&lhs),
                    rhs: format_mat(&rhs),
                });
                break 'tw;
            }
        }
        report.checks.push(Check::from_witness(
            "rep.twist",
            "ρ(Φx)∘β = β∘ρ(x) on all basis elements",
            witness,
        ));

        let mut witness = None;
        'br: for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = linalg::mul_rational(
                    &rep.rho_vec(&self.bracket_vec(&basis(i), &basis(j))),
                    &rep.beta,
                );
                let a = linalg::mul_rational(
                    &rep.rho_vec(&self.phi_vec(&basis(i))),
                    &rep.rho[j],
                );
                let b = linalg::mul_rational(
                    &rep.rho_vec(&self.phi_vec(&basis(j))),
                    &rep.rho[i],
                );
                let rhs = mat_sub(&a, &b);
                if lhs != rhs {
                    witness = Some(Witness {
                        assignment: vec![format!("x = e_{}", i + 1), format!("y = e_{}", j + 1)],
                        lhs: format_mat(&lhs),
                        rhs: format_mat(&rhs),
                    });
                    break 'br;
                }
            }
        }
        report.checks.push(Check::from_witness(
            "rep.bracket",
            "ρ([x,y])∘β = ρ(Φx)ρ(y) − ρ(Φy)ρ(x) on all basis pairs",
            witness,
        ));

        report.elapsed_ms = start.elapsed().as_millis();
        report
    }

    /// The dual representation on (V*, (β⁻¹)ᵀ):
    /// `⟨ρ⋆(x)ξ, u⟩ = −⟨ξ, ρ(Φ⁻¹x)(β⁻²u)⟩`, i.e. ρ⋆(x) = −(ρ(Φ⁻¹x)·β⁻²)ᵀ.
    pub fn dual_representation(&self, rep: &Representation) -> Representation {
        let beta_star = linalg::transpose_rational(&rep.beta_inv);
        let beta_inv2 = linalg::mul_rational(&rep.beta_inv, &rep.beta_inv);
        let basis = |i: usize| -> Vec<Q> {
            let mut v = vec![Q::zero(); self.dim];
            v[i] = Q::one();
            v
        };
        let rho_star: Vec<Vec<Vec<Q>>> = (0..self.dim)
            .map(|i| {
                let n = linalg::mul_rational(
                    &rep.rho_vec(&self.phi_inv_vec(&basis(i))),
                    &beta_inv2,
                );
                mat_neg(&linalg::transpose_rational(&n))
            })
            .collect();
        Representation::new(self.dim, beta_star, rho_star)
            .expect("dual data has matching dimensions")
    }

    /// The adjoint representation (V = g, β = Φ, ρ = ad).
    pub fn adjoint(&self) -> Representation {
        let rho: Vec<Vec<Vec<Q>>> = (0..self.dim)
            .map(|i| {
                let mut m = vec![vec![Q::zero(); self.dim]; self.dim];
                for j in 0..self.dim {
                    for k in 0..self.dim {
                        m[k][j] = self.c[i][j][k].clone();
                    }
                }
                m
            })
            .collect();
        Representation::new(self.dim, self.phi.clone(), rho)
            .expect("adjoint data has matching dimensions")
    }

    /// The coadjoint representation on g*: the dual of the adjoint,
    /// `⟨ad⋆_x ξ, u⟩ = −⟨ξ, [Φ⁻¹x, Φ⁻²u]⟩`.
    pub fn coadjoint(&self) -> Representation {
        self.dual_representation(&self.adjoint())
    }
}

/// A Hom-Lie bialgebra: (g, Φ) together with a Hom-Lie structure on g*
/// twisted by (Φ⁻¹)ᵀ, compatible through the induced cobracket.
#[derive(Debug, Clone, PartialEq)]
pub struct HomLieBialgebra {
    g: HomLieAlgebra,
    dual: HomLieAlgebra,
}

impl HomLieBialgebra {
    /// Builds a bialgebra candidate from g and the dual structure rows
    /// `[ε^i, ε^j]_{g*} = Σ_k d[k]·ε^k` for `i < j`; the dual twist is
    /// forced to (Φ⁻¹)ᵀ.
    pub fn new(g: HomLieAlgebra, dual_brackets: &[(usize, usize, Vec<Q>)]) -> Result<Self> {
        let psi = linalg::transpose_rational(&g.phi_inv);
        let dual = HomLieAlgebra::new(g.dim, dual_brackets, psi)?;
        Ok(HomLieBialgebra { g, dual })
    }

    /// The underlying algebra g.
    pub fn algebra(&self) -> &HomLieAlgebra {
        &self.g
    }

    /// The dual algebra (g*, [·,·]_{g*}, (Φ⁻¹)ᵀ).
    pub fn dual_algebra(&self) -> &HomLieAlgebra {
        &self.dual
    }

    /// The cobracket Δ(e_k) = Σ_{i<j} d[i][j][k]·e_i∧e_j dual to the g*
    /// bracket, as a grade-2 multivector over g's scalar ring.
    pub fn cobracket_basis(&self, k: usize) -> MultiVector {
        let ring0 = self.g.scalar_ring();
        let mut acc = MultiVector::zero(ring0, self.g.dim, 2);
        for i in 0..self.g.dim {
            for j in (i + 1)..self.g.dim {
                let d = &self.dual.c[i][j][k];
                if !d.is_zero() {
                    acc = acc.add(
                        &MultiVector::basis_tuple(ring0, self.g.dim, &[i, j])
                            .scale(&ring0.constant(d.clone())),
                    );
                }
            }
        }
        acc
    }

    /// Δ extended linearly to coefficient vectors.
    pub fn cobracket_vec(&self, x: &[Q]) -> MultiVector {
        let ring0 = self.g.scalar_ring();
        let mut acc = MultiVector::zero(ring0, self.g.dim, 2);
        for (k, coeff) in x.iter().enumerate() {
            if !coeff.is_zero() {
                acc = acc.add(&self.cobracket_basis(k).scale(&ring0.constant(coeff.clone())));
            }
        }
        acc
    }

    /// Verifies both algebras and the cobracket compatibility
    /// `Δ([x,y]) = ad_{Φ⁻¹x}Δ(y) − ad_{Φ⁻¹y}Δ(x)`.
    pub fn verify(&self) -> Report {
        let start = std::time::Instant::now();
        let mut report = Report::new(
            format!("hom-lie bialgebra (dim {})", self.g.dim),
            0,
        );
        report.absorb("primal", self.g.verify());
        report.absorb("dual", self.dual.verify());

        let dim = self.g.dim;
        let basis = |i: usize| -> Vec<Q> {
            let mut v = vec![Q::zero(); dim];
            v[i] = Q::one();
            v
        };
        let mut witness = None;
        'compat: for i in 0..dim {
            for j in 0..dim {
                let lhs = self.cobracket_vec(&self.g.bracket_vec(&basis(i), &basis(j)));
                let adx = self.g.extended_bracket(
                    &self.g.mv(&self.g.phi_inv_vec(&basis(i))),
                    &self.cobracket_basis(j),
                );
                let ady = self.g.extended_bracket(
                    &self.g.mv(&self.g.phi_inv_vec(&basis(j))),
                    &self.cobracket_basis(i),
                );
                let rhs = adx.sub(&ady);
                if lhs != rhs {
                    witness = Some(Witness {
                        assignment: vec![format!("x = e_{}", i + 1), format!("y = e_{}", j + 1)],
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                    break 'compat;
                }
            }
        }
        report.checks.push(Check::from_witness(
            "bialgebra.compat",
            "Δ([x,y]) = ad_{Φ⁻¹x}Δ(y) − ad_{Φ⁻¹y}Δ(x) on all basis pairs",
            witness,
        ));

        report.elapsed_ms = start.elapsed().as_millis();
        report
    }
}

/// A Hom-Lie algebra carrying an invariant symmetric pairing — the shape of
/// a bialgebra double.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHomLieAlgebra {
    /// The underlying algebra.
    pub algebra: HomLieAlgebra,
    /// The symmetric invariant pairing matrix.
    pub pairing: Vec<Vec<Q>>,
}

impl QuadraticHomLieAlgebra {
    /// Verifies the algebra laws plus the pairing laws: symmetry,
    /// non-degeneracy, twist-invariance `(Φu, Φv) = (u, v)`, and
    /// ad-invariance `([u, h₁], Φh₂) + (Φh₁, [u, h₂]) = 0`.
    pub fn verify(&self) -> Report {
        let start = std::time::Instant::now();
        let dim = self.algebra.dim;
        let mut report = Report::new(format!("quadratic hom-lie algebra (dim {dim})"), 0);
        report.absorb("algebra", self.algebra.verify());

        let symmetric = (0..dim)
            .all(|i| (0..dim).all(|j| self.pairing[i][j] == self.pairing[j][i]));
        report.checks.push(Check::from_witness(
            "pairing.symmetric",
            "(u, v) = (v, u)",
            if symmetric {
                None
            } else {
                Some(Witness {
                    assignment: vec!["pairing matrix".into()],
                    lhs: format_mat(&self.pairing),
                    rhs: "its transpose".into(),
                })
            },
        ));

        let invertible = linalg::invert_rational(&self.pairing).is_some();
        report.checks.push(Check::from_witness(
            "pairing.nondegenerate",
            "the pairing matrix is invertible",
            if invertible {
                None
            } else {
                Some(Witness {
                    assignment: vec!["pairing matrix".into()],
                    lhs: format_mat(&self.pairing),
                    rhs: "an invertible matrix".into(),
                })
            },
        ));

        let pair = |u: &[Q], v: &[Q]| -> Q {
            let mut acc = Q::zero();
            for i in 0..dim {
                for j in 0..dim {
                    acc += &u[i] * &self.pairing[i][j] * &v[j];
                }
            }
            acc
        };
        let basis = |i: usize| -> Vec<Q> {
            let mut v = vec![Q::zero(); dim];
            v[i] = Q::one();
            v
        };

        let mut witness = None;
        'tw: for i in 0..dim {
            for j in 0..dim {
                let lhs = pair(
                    &self.algebra.phi_vec(&basis(i)),
                    &self.algebra.phi_vec(&basis(j)),
                );
                let rhs = pair(&basis(i), &basis(j));
                if lhs != rhs {
                    witness = Some(Witness {
                        assignment: vec![format!("u = e_{}", i + 1), format!("v = e_{}", j + 1)],
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                    break 'tw;
                }
            }
        }
        report.checks.push(Check::from_witness(
            "pairing.twist_invariant",
            "(Φu, Φv) = (u, v) on all basis pairs",
            witness,
        ));

        let mut witness = None;
        'ad: for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let (u, h1, h2) = (basis(i), basis(j), basis(k));
                    let lhs = pair(
                        &self.algebra.bracket_vec(&u, &h1),
                        &self.algebra.phi_vec(&h2),
                    ) + pair(
                        &self.algebra.phi_vec(&h1),
                        &self.algebra.bracket_vec(&u, &h2),
                    );
                    if !lhs.is_zero() {
                        witness = Some(Witness {
                            assignment: vec![
                                format!("u = e_{}", i + 1),
                                format!("h1 = e_{}", j + 1),
                                format!("h2 = e_{}", k + 1),
                            ],
                            lhs: lhs.to_string(),
                            rhs: "0".into(),
                        });
                        break 'ad;
                    }
                }
            }
        }
        report.checks.push(Check::from_witness(
            "pairing.ad_invariant",
            "([u, h1], Φh2) + (Φh1, [u, h2]) = 0 on all basis triples",
            witness,
        ));

        report.elapsed_ms = start.elapsed().as_millis();
        report
    }
}

/// Builds the double g ⋈ g* of a Hom-Lie bialgebra: the quadratic Hom-Lie
/// algebra on g ⊕ g* with twist diag(Φ, (Φ⁻¹)ᵀ), canonical pairing
/// (x+ξ, y+η) = ξ(y) + η(x), and bracket
///
/// ```text
/// [x+ξ, y+η] = ([x,y]_g + ad⋆'_ξ y − ad⋆'_η x) + ([ξ,η]_{g*} + ad⋆_x η − ad⋆_y ξ)
/// ```
///
/// where ad⋆ is the coadjoint action of g on g* and ad⋆' the coadjoint
/// action of g* on g.
pub fn build_double(bi: &HomLieBialgebra) -> Result<QuadraticHomLieAlgebra> {
    let g = bi.algebra();
    let gs = bi.dual_algebra();
    let n = g.dim();
    let coad_g = g.coadjoint(); // ad⋆: g acting on g*
    let coad_gs = gs.coadjoint(); // ad⋆': g* acting on (g*)* = g

    // Assemble the bracket table on the 2n-dimensional double.
    let dim = 2 * n;
    let mut rows: Vec<(usize, usize, Vec<Q>)> = Vec::new();
    let mut push_bracket = |i: usize, j: usize, value: Vec<Q>| {
        if value.iter().any(|q| !q.is_zero()) {
            rows.push((i, j, value));
        }
    };
    let basis = |i: usize| -> Vec<Q> {
        let mut v = vec![Q::zero(); n];
        v[i] = Q::one();
        v
    };

    // [e_i, e_j] = [e_i, e_j]_g.
    for i in 0..n {
        for j in (i + 1)..n {
            let b = g.bracket_vec(&basis(i), &basis(j));
            let mut value = vec![Q::zero(); dim];
            value[..n].clone_from_slice(&b);
            push_bracket(i, j, value);
        }
    }
    // [ε^i, ε^j] = [ε^i, ε^j]_{g*}.
    for i in 0..n {
        for j in (i + 1)..n {
            let b = gs.bracket_vec(&basis(i), &basis(j));
            let mut value = vec![Q::zero(); dim];
            value[n..].clone_from_slice(&b);
            push_bracket(n + i, n + j, value);
        }
    }
    // [e_i, ε^k] = −ad⋆'_{ε^k}(e_i) + ad⋆_{e_i}(ε^k).
    for i in 0..n {
        for k in 0..n {
            let g_part = mat_apply_col(&coad_gs.rho_basis(k), i); // ad⋆'_{ε^k} e_i
            let gs_part = mat_apply_col(&coad_g.rho_basis(i), k); // ad⋆_{e_i} ε^k
            let mut value = vec![Q::zero(); dim];
            for r in 0..n {
                value[r] = -g_part[r].clone();
                value[n + r] = gs_part[r].clone();
            }
            push_bracket(i, n + k, value);
        }
    }

    // Twist diag(Φ, (Φ⁻¹)ᵀ).
    let mut phi = vec![vec![Q::zero(); dim]; dim];
    let psi = linalg::transpose_rational(g.phi_inv_matrix());
    for i in 0..n {
        for j in 0..n {
            phi[i][j] = g.phi_matrix()[i][j].clone();
            phi[n + i][n + j] = psi[i][j].clone();
        }
    }

    // Pairing (x+ξ, y+η) = ξ(y) + η(x).
    let mut pairing = vec![vec![Q::zero(); dim]; dim];
    for i in 0..n {
        pairing[i][n + i] = Q::one();
        pairing[n + i][i] = Q::one();
    }

    Ok(QuadraticHomLieAlgebra {
        algebra: HomLieAlgebra::new(dim, &rows, phi)?,
        pairing,
    })
}

// ---- small rational-vector helpers -------------------------------------

fn vec_add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vec_neg(a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| -x).collect()
}

fn mat_apply(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Column `j` of a matrix (the image of the j-th basis vector).
fn mat_apply_col(m: &[Vec<Q>], j: usize) -> Vec<Q> {
    m.iter().map(|row| row[j].clone()).collect()
}

fn mat_sub(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

fn mat_neg(a: &[Vec<Q>]) -> Vec<Vec<Q>> {
    a.iter().map(|row| row.iter().map(|x| -x).collect()).collect()
}

fn format_vec(v: &[Q]) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(i, q)| format!("({q})*e_{}", i + 1))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn format_mat(m: &[Vec<Q>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(Q::to_string).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}
