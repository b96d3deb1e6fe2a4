//! Semilinear module maps and twisted interior products.
//!
//! A semilinear map over a ring automorphism σ is an additive map φ of a
//! free module with `φ(f·u) = σ(f)·φ(u)`. It is stored as the matrix P with
//! `φ(e_j) = Σ_i P_ij·e_i` together with σ, and must be invertible — which
//! over ℚ[x₁…xₙ] forces det P to be a nonzero rational constant.
//!
//! Key constructions (all verified by the inverse/adjoint laws in the
//! tests):
//!
//! - inverse: `φ⁻¹ = (σ⁻¹(P⁻¹), σ⁻¹)`, the unique map with
//!   `φ⁻¹(f·u) = σ⁻¹(f)·φ⁻¹(u)` and `φ⁻¹∘φ = id`;
//! - adjoint (dagger): `φ† = ((P⁻¹)ᵀ, σ)` acting on forms, the unique
//!   σ-semilinear map with `(φ†Ξ)(X) = σ(Ξ(φ⁻¹X))`, equivalently
//!   `⟨φ†Ξ, φX⟩ = σ(⟨Ξ, X⟩)`;
//! - grade extension: `φ(u₁∧…∧u_k) = φ(u₁)∧…∧φ(u_k)`, and σ itself on
//!   grade 0.
//!
//! The twisted interior product of a `k`-vector into an `m`-form is
//!
//! ```text
//! (i_X Ξ)(y₁, …, y_{m−k}) = (φ†Ξ)(φ(X), y₁, …, y_{m−k}),
//! ```
//!
//! which satisfies `i_{f·X}Ξ = i_X(f·Ξ) = σ(f)·i_XΞ`; [`interior_dual`] is
//! the mirror contraction of a form into a multivector.

use std::fmt;
use std::sync::Arc;

use num::BigRational;

use super::{IndexTuple, MultiForm, MultiVector, pair};
use crate::linalg;
use crate::ring::{Poly, PolyRing, RingAuto};
use crate::{Error, Result};

/// An invertible σ-semilinear endomorphism of a free module, extended to
/// all exterior powers.
#[derive(Debug, Clone)]
pub struct SemilinearMap {
    ring: Arc<PolyRing>,
    dim: usize,
    matrix: Vec<Vec<Poly>>,
    /// P⁻¹ over the ring (before any twist is applied to entries).
    matrix_inv: Vec<Vec<Poly>>,
    twist: RingAuto,
}

impl PartialEq for SemilinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.ring.vars() == other.ring.vars()
            && self.dim == other.dim
            && self.matrix == other.matrix
            && self.twist == other.twist
    }
}

impl Eq for SemilinearMap {}

impl SemilinearMap {
    /// Builds the map `φ(e_j) = Σ_i matrix[i][j]·e_i` with twist σ.
    ///
    /// Fails unless the matrix is square over σ's ring with det a nonzero
    /// rational constant (the invertibility condition for module maps).
    pub fn new(twist: &RingAuto, matrix: Vec<Vec<Poly>>) -> Result<Self> {
        let ring = twist.ring();
        let dim = matrix.len();
        for row in &matrix {
            if row.len() != dim {
                return Err(Error::Dimension(format!(
                    "semilinear map matrix must be square, found row of length {} in a {dim}-row matrix",
                    row.len()
                )));
            }
            for p in row {
                if p.ring().vars() != ring.vars() {
                    return Err(Error::RingMismatch {
                        expected: ring.var_list(),
                        got: p.ring().var_list(),
                    });
                }
            }
        }
        if dim == 0 {
            return Err(Error::Dimension("semilinear map on rank-0 module".into()));
        }
        let (matrix_inv, _det) = linalg::invert_poly_unit_det(&matrix)?;
        Ok(SemilinearMap {
            ring: Arc::clone(ring),
            dim,
            matrix,
            matrix_inv,
            twist: twist.clone(),
        })
    }

    /// The identity map with the given twist (pure twist action).
    pub fn twist_only(twist: &RingAuto, dim: usize) -> Self {
        let ring = twist.ring();
        let matrix: Vec<Vec<Poly>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { ring.one() } else { ring.zero() })
                    .collect()
            })
            .collect();
        SemilinearMap {
            ring: Arc::clone(ring),
            dim,
            matrix: matrix.clone(),
            matrix_inv: matrix,
            twist: twist.clone(),
        }
    }

    /// Builds from rational matrix entries (constant bundle maps).
    pub fn from_rational(twist: &RingAuto, matrix: &[Vec<BigRational>]) -> Result<Self> {
        let ring = twist.ring();
        let polys: Vec<Vec<Poly>> = matrix
            .iter()
            .map(|row| row.iter().map(|q| ring.constant(q.clone())).collect())
            .collect();
        SemilinearMap::new(twist, polys)
    }

    /// The module rank.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The base ring.
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// The ring twist σ.
    pub fn twist(&self) -> &RingAuto {
        &self.twist
    }

    /// The matrix P (column `j` holds the image of `e_j`).
    pub fn matrix(&self) -> &[Vec<Poly>] {
        &self.matrix
    }

    /// Image of the grade-1 basis element `e_j` as a multivector.
    pub fn column_mv(&self, j: usize) -> MultiVector {
        MultiVector::from_coeffs(
            &self.ring,
            (0..self.dim).map(|i| self.matrix[i][j].clone()).collect(),
        )
        .expect("matrix column is a valid section")
    }

    fn column_form(&self, j: usize) -> MultiForm {
        MultiForm::from_coeffs(
            &self.ring,
            (0..self.dim).map(|i| self.matrix[i][j].clone()).collect(),
        )
        .expect("matrix column is a valid section")
    }

    /// Applies the grade extension of φ to a multivector
    /// (`σ` on grade 0, `φ(u₁)∧…∧φ(u_k)` on decomposables).
    pub fn apply_mv(&self, x: &MultiVector) -> MultiVector {
        self.check_operand(x.ring(), x.dim(), "semilinear application");
        let mut acc = MultiVector::zero(&self.ring, self.dim, x.grade());
        for (t, p) in x.components() {
            let mut term = MultiVector::scalar(&self.ring, self.dim, self.twist.apply(p));
            for &i in t.indices() {
                term = term.wedge(&self.column_mv(i));
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Applies the grade extension of φ to a multiform (the same matrix
    /// action on the dual-side basis `e^j`).
    pub fn apply_form(&self, xi: &MultiForm) -> MultiForm {
        self.check_operand(xi.ring(), xi.dim(), "semilinear application");
        let mut acc = MultiForm::zero(&self.ring, self.dim, xi.grade());
        for (t, p) in xi.components() {
            let mut term = MultiForm::scalar(&self.ring, self.dim, self.twist.apply(p));
            for &i in t.indices() {
                term = term.wedge(&self.column_form(i));
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// The inverse map `φ⁻¹ = (σ⁻¹(P⁻¹), σ⁻¹)`.
    pub fn inverse(&self) -> Self {
        let si = self.twist.inverse();
        let matrix: Vec<Vec<Poly>> = self
            .matrix_inv
            .iter()
            .map(|row| row.iter().map(|p| si.apply(p)).collect())
            .collect();
        let matrix_inv: Vec<Vec<Poly>> = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|p| si.apply(p)).collect())
            .collect();
        SemilinearMap {
            ring: Arc::clone(&self.ring),
            dim: self.dim,
            matrix,
            matrix_inv,
            twist: si,
        }
    }

    /// The adjoint `φ† = ((P⁻¹)ᵀ, σ)`, acting on forms by
    /// `(φ†Ξ)(X) = σ(Ξ(φ⁻¹X))`.
    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let matrix: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| self.matrix_inv[j][i].clone()).collect())
            .collect();
        let matrix_inv: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| self.matrix[j][i].clone()).collect())
            .collect();
        SemilinearMap {
            ring: Arc::clone(&self.ring),
            dim: n,
            matrix,
            matrix_inv,
            twist: self.twist.clone(),
        }
    }

    /// Composition `(self ∘ other)(u) = self(other(u))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.ring.vars() != other.ring.vars() || self.dim != other.dim {
            return Err(Error::Dimension(
                "composing semilinear maps over different modules".into(),
            ));
        }
        // (φψ)(e_j) = Σ_k (Σ_i P_ki·σ_φ(Q_ij))·e_k, twist σ_φ∘σ_ψ.
        let n = self.dim;
        let matrix: Vec<Vec<Poly>> = (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| {
                        let mut acc = self.ring.zero();
                        for i in 0..n {
                            acc = &acc
                                + &(&self.matrix[k][i] * &self.twist.apply(&other.matrix[i][j]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        SemilinearMap::new(&self.twist.compose(&other.twist), matrix)
    }

    /// True iff this is the identity map with identity twist.
    pub fn is_identity(&self) -> bool {
        self.twist.is_identity()
            && (0..self.dim).all(|i| {
                (0..self.dim).all(|j| {
                    if i == j {
                        self.matrix[i][j] == self.ring.one()
                    } else {
                        self.matrix[i][j].is_zero()
                    }
                })
            })
    }

    fn check_operand(&self, ring: &Arc<PolyRing>, dim: usize, op: &str) {
        assert_eq!(ring.vars(), self.ring.vars(), "ring mismatch in {op}");
        assert_eq!(dim, self.dim, "rank mismatch in {op}");
    }
}

impl fmt::Display for SemilinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(Poly::to_string).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}] with {}", rows.join(", "), self.twist)
    }
}

/// Twisted interior product of a `k`-vector into an `m`-form (`k ≤ m`,
/// `k ≥ 1`): `(i_XΞ)(y…) = (φ†Ξ)(φX, y…)`.
pub fn interior(map: &SemilinearMap, x: &MultiVector, xi: &MultiForm) -> Result<MultiForm> {
    let k = x.grade();
    let m = xi.grade();
    if k == 0 {
        return Err(Error::Grade(
            "interior product needs a contracting grade ≥ 1".into(),
        ));
    }
    if m < k {
        return Err(Error::Grade(format!(
            "cannot contract a grade-{k} vector into a grade-{m} form"
        )));
    }
    let phix = map.apply_mv(x);
    let dxi = map.dagger().apply_form(xi);
    let ring = map.ring();
    let mut comps = Vec::new();
    for t in IndexTuple::all(map.dim(), m - k) {
        let arg = phix.wedge(&MultiVector::from_components(
            ring,
            map.dim(),
            m - k,
            [(t.clone(), ring.one())],
        )?);
        let value = pair(&dxi, &arg)?;
        comps.push((t, value));
    }
    MultiForm::from_components(ring, map.dim(), m - k, comps)
}

/// Mirror contraction of a 1-form into a `k`-vector (`k ≥ 1`):
/// `(i_ηX)(ξ…) = (φX)(φ†η, ξ…)`.
pub fn interior_dual(map: &SemilinearMap, eta: &MultiForm, x: &MultiVector) -> Result<MultiVector> {
    let l = eta.grade();
    let k = x.grade();
    if l == 0 {
        return Err(Error::Grade(
            "interior product needs a contracting grade ≥ 1".into(),
        ));
    }
    if k < l {
        return Err(Error::Grade(format!(
            "cannot contract a grade-{l} form into a grade-{k} vector"
        )));
    }
    let phix = map.apply_mv(x);
    let deta = map.dagger().apply_form(eta);
    let ring = map.ring();
    let mut comps = Vec::new();
    for t in IndexTuple::all(map.dim(), k - l) {
        let arg = deta.wedge(&MultiForm::from_components(
            ring,
            map.dim(),
            k - l,
            [(t.clone(), ring.one())],
        )?);
        let value = pair(&arg, &phix)?;
        comps.push((t, value));
    }
    MultiVector::from_components(ring, map.dim(), k - l, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;

    /// P = [[1, t], [0, 1]] with σ: t ↦ 2t — the running shear example.
    fn shear() -> (Arc<PolyRing>, SemilinearMap) {
        let ring = PolyRing::new(["t"]).unwrap();
        let sigma = RingAuto::new(&ring, vec![ring.parse("2*t").unwrap()]).unwrap();
        let matrix = vec![
            vec![ring.one(), ring.var(0)],
            vec![ring.zero(), ring.one()],
        ];
        let map = SemilinearMap::new(&sigma, matrix).unwrap();
        (ring, map)
    }

    #[test]
    fn semilinearity_over_the_twist() {
        let (ring, map) = shear();
        let f = ring.parse("t^2 + 1").unwrap();
        let e2 = MultiVector::basis(&ring, 2, 1);
        let lhs = map.apply_mv(&e2.scale(&f));
        let rhs = map.apply_mv(&e2).scale(&map.twist().apply(&f));
        assert_eq!(lhs, rhs);
        // φ(f·e_2) = σ(f)·(t·e_1 + e_2).
        assert_eq!(lhs.component(&[0]), ring.parse("(4*t^2 + 1) * t").unwrap());
    }

    #[test]
    fn inverse_matrix_carries_untwisted_entries() {
        // For P = [[1, t], [0, 1]], σ: t ↦ 2t the inverse map has matrix
        // [[1, −t/2], [0, 1]] (σ⁻¹ applied to P⁻¹ = [[1, −t], [0, 1]]).
        let (ring, map) = shear();
        let inv = map.inverse();
        assert_eq!(inv.matrix()[0][1], ring.parse("-1/2*t").unwrap());
        assert_eq!(inv.twist(), &map.twist().inverse());
        for x in [
            MultiVector::basis(&ring, 2, 0).scale(&ring.parse("t^2").unwrap()),
            MultiVector::basis_tuple(&ring, 2, &[0, 1]).scale(&ring.parse("t + 1").unwrap()),
        ] {
            assert_eq!(inv.apply_mv(&map.apply_mv(&x)), x);
            assert_eq!(map.apply_mv(&inv.apply_mv(&x)), x);
        }
    }

    #[test]
    fn non_unit_determinant_is_rejected() {
        let ring = PolyRing::new(["t"]).unwrap();
        let sigma = RingAuto::identity(&ring);
        let bad = vec![
            vec![ring.var(0), ring.zero()],
            vec![ring.zero(), ring.one()],
        ];
        assert!(matches!(
            SemilinearMap::new(&sigma, bad),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn dagger_satisfies_its_defining_law() {
        // (φ†Ξ)(X) = σ(Ξ(φ⁻¹X)) and ⟨φ†Ξ, φX⟩ = σ⟨Ξ, X⟩.
        let (ring, map) = shear();
        let dag = map.dagger();
        let inv = map.inverse();
        let samples_x = [
            MultiVector::basis(&ring, 2, 0),
            MultiVector::basis(&ring, 2, 1).scale(&ring.parse("t").unwrap()),
            MultiVector::basis_tuple(&ring, 2, &[0, 1]),
        ];
        let samples_xi = [
            MultiForm::basis(&ring, 2, 0).scale(&ring.parse("t^2").unwrap()),
            MultiForm::basis(&ring, 2, 1),
            MultiForm::basis_tuple(&ring, 2, &[0, 1]).scale(&ring.parse("t + 3").unwrap()),
        ];
        for xi in &samples_xi {
            for x in &samples_x {
                if xi.grade() != x.grade() {
                    continue;
                }
                let lhs = pair(&dag.apply_form(xi), x).unwrap();
                let rhs = map.twist().apply(&pair(xi, &inv.apply_mv(x)).unwrap());
                assert_eq!(lhs, rhs, "adjoint law at xi = {xi}, x = {x}");
                let lhs2 = pair(&dag.apply_form(xi), &map.apply_mv(x)).unwrap();
                let rhs2 = map.twist().apply(&pair(xi, x).unwrap());
                assert_eq!(lhs2, rhs2, "pairing twist at xi = {xi}, x = {x}");
            }
        }
    }

    #[test]
    fn dagger_is_an_involution_through_inverse() {
        let (_, map) = shear();
        assert_eq!(map.dagger().dagger(), map);
        assert_eq!(map.dagger().inverse(), map.inverse().dagger());
        let id = map.compose(&map.inverse()).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn grade_two_extension_multiplies_by_determinant() {
        // On the top grade, φ acts by det(P)·σ: here det = 1.
        let (ring, map) = shear();
        let e12 = MultiVector::basis_tuple(&ring, 2, &[0, 1]);
        let f = ring.parse("t^3").unwrap();
        assert_eq!(
            map.apply_mv(&e12.scale(&f)),
            e12.scale(&map.twist().apply(&f))
        );
    }

    #[test]
    fn interior_contracts_with_twist() {
        // 1-into-1: i_x ξ = σ(⟨ξ, x⟩).
        let (ring, map) = shear();
        let x = MultiVector::from_coeffs(
            &ring,
            vec![ring.parse("t").unwrap(), ring.one()],
        )
        .unwrap();
        let xi = MultiForm::from_coeffs(
            &ring,
            vec![ring.one(), ring.parse("t^2").unwrap()],
        )
        .unwrap();
        let result = interior(&map, &x, &xi).unwrap();
        let expected = map
            .twist()
            .apply(&pair(&xi, &x).unwrap());
        assert_eq!(result.as_scalar().unwrap(), expected);
    }

    #[test]
    fn interior_is_twisted_bilinear_in_the_module_sense() {
        // i_{f·X}Ξ = i_X(f·Ξ) = σ(f)·i_XΞ.
        let (ring, map) = shear();
        let f = ring.parse("t + 1").unwrap();
        let x = MultiVector::basis(&ring, 2, 0);
        let xi = MultiForm::basis_tuple(&ring, 2, &[0, 1]).scale(&ring.parse("t").unwrap());
        let a = interior(&map, &x.scale(&f), &xi).unwrap();
        let b = interior(&map, &x, &xi.scale(&f)).unwrap();
        let c = interior(&map, &x, &xi).unwrap().scale(&map.twist().apply(&f));
        assert_eq!(a, b);
        assert_eq!(b, c);
    }

    #[test]
    fn interior_rejects_bad_grades() {
        let (ring, map) = shear();
        let x2 = MultiVector::basis_tuple(&ring, 2, &[0, 1]);
        let xi1 = MultiForm::basis(&ring, 2, 0);
        assert!(interior(&map, &x2, &xi1).is_err());
        let s = MultiVector::scalar(&ring, 2, ring.one());
        assert!(interior(&map, &s, &xi1).is_err());
    }

    #[test]
    fn dual_interior_mirrors_the_primal_one() {
        // With φ = id both contractions are the classical ones; check the
        // dual contraction against hand-expanded components.
        let ring = PolyRing::new(["t"]).unwrap();
        let id = RingAuto::identity(&ring);
        let map = SemilinearMap::twist_only(&id, 3);
        let eta = MultiForm::basis(&ring, 3, 0);
        let x = MultiVector::basis_tuple(&ring, 3, &[0, 1]);
        // i_{e^1}(e_1∧e_2) = e_2.
        assert_eq!(
            interior_dual(&map, &eta, &x).unwrap(),
            MultiVector::basis(&ring, 3, 1)
        );
        // i_{e^2}(e_1∧e_2) = −e_1.
        let eta2 = MultiForm::basis(&ring, 3, 1);
        assert_eq!(
            interior_dual(&map, &eta2, &x).unwrap(),
            MultiVector::basis(&ring, 3, 0).neg()
        );
    }
}
