//! Exterior powers of free modules over a polynomial ring.
//!
//! A rank-`dim` free module with basis `e_1, …, e_dim` has exterior powers
//! spanned by `e_I = e_{i_1}∧…∧e_{i_k}` over strictly increasing index
//! tuples `I`. Values here are grade-homogeneous with polynomial
//! coefficients, in canonical form: components are indexed by increasing
//! tuples, with signs normalized by shuffle parity, and zero coefficients
//! dropped — so equality of values is equality of data.
//!
//! [`MultiVector`] and [`MultiForm`] share this representation but are kept
//! as distinct types: multivectors are sections of ∧•A, multiforms are
//! sections of ∧•A*. The pairing of a `k`-form with a `k`-vector is the
//! coefficient pairing `⟨Ξ, X⟩ = Σ_I Ξ_I·X_I` determined by
//! `⟨e^I, e_J⟩ = δ_{IJ}`.
//!
//! [`SemilinearMap`] covers the twisted module maps `φ(f·u) = σ(f)·φ(u)`,
//! extended to all grades by `φ(u₁∧…∧u_k) = φ(u₁)∧…∧φ(u_k)` and to grade 0
//! by σ itself; it provides the inverse and the adjoint (dagger) map
//! `(φ†Ξ)(X) = σ(Ξ(φ⁻¹X))` on forms. The twisted interior products live in
//! [`interior`] and [`interior_dual`].

mod semilinear;

pub use semilinear::{interior, interior_dual, SemilinearMap};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::ring::{Poly, PolyRing};
use crate::{Error, Result};

/// A strictly increasing tuple of 0-based basis indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    /// The empty tuple (grade 0).
    pub fn empty() -> Self {
        IndexTuple(Vec::new())
    }

    /// Builds from already strictly increasing indices.
    pub fn from_sorted(indices: Vec<usize>) -> Result<Self> {
        if !indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!(
                "index tuple {indices:?} is not strictly increasing"
            )));
        }
        Ok(IndexTuple(indices))
    }

    /// Sorts arbitrary indices, returning the canonical tuple and the
    /// parity sign of the sort, or `None` if an index repeats (the wedge
    /// vanishes).
    pub fn normalize(mut indices: Vec<usize>) -> Option<(Self, i8)> {
        // Insertion sort, counting transpositions exactly.
        let mut sign = 1i8;
        for i in 1..indices.len() {
            let mut j = i;
            while j > 0 && indices[j - 1] > indices[j] {
                indices.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            None
        } else {
            Some((IndexTuple(indices), sign))
        }
    }

    /// The indices.
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Number of indices (the grade).
    pub fn grade(&self) -> usize {
        self.0.len()
    }

    /// All strictly increasing `grade`-tuples drawn from `0..dim`.
    pub fn all(dim: usize, grade: usize) -> Vec<IndexTuple> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(grade);
        fn rec(dim: usize, grade: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexTuple>) {
            if cur.len() == grade {
                out.push(IndexTuple(cur.clone()));
                return;
            }
            for i in from..dim {
                cur.push(i);
                rec(dim, grade, i + 1, cur, out);
                cur.pop();
            }
        }
        rec(dim, grade, 0, &mut current, &mut out);
        out
    }

    /// Merges two disjoint increasing tuples, returning the merged tuple
    /// and the shuffle sign, or `None` if they intersect.
    fn merge(&self, other: &IndexTuple) -> Option<(IndexTuple, i8)> {
        let mut combined: Vec<usize> = Vec::with_capacity(self.0.len() + other.0.len());
        combined.extend_from_slice(&self.0);
        combined.extend_from_slice(&other.0);
        IndexTuple::normalize(combined)
    }
}

/// Shared canonical representation of a grade-homogeneous exterior value.
#[derive(Debug, Clone)]
pub(crate) struct ExtElement {
    ring: Arc<PolyRing>,
    dim: usize,
    grade: usize,
    comps: BTreeMap<IndexTuple, Poly>,
}

impl PartialEq for ExtElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring.vars() == other.ring.vars()
            && self.dim == other.dim
            && self.grade == other.grade
            && self.comps == other.comps
    }
}

impl Eq for ExtElement {}

impl ExtElement {
    fn zero(ring: &Arc<PolyRing>, dim: usize, grade: usize) -> Self {
        ExtElement {
            ring: Arc::clone(ring),
            dim,
            grade,
            comps: BTreeMap::new(),
        }
    }

    fn from_components(
        ring: &Arc<PolyRing>,
        dim: usize,
        grade: usize,
        comps: impl IntoIterator<Item = (IndexTuple, Poly)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<IndexTuple, Poly> = BTreeMap::new();
        for (t, p) in comps {
            if t.grade() != grade {
                return Err(Error::Grade(format!(
                    "component tuple {:?} has grade {}, value has grade {grade}",
                    t.indices(),
                    t.grade()
                )));
            }
            if t.indices().iter().any(|&i| i >= dim) {
                return Err(Error::Dimension(format!(
                    "index tuple {:?} out of range for rank {dim}",
                    t.indices()
                )));
            }
            if p.ring().vars() != ring.vars() {
                return Err(Error::RingMismatch {
                    expected: ring.var_list(),
                    got: p.ring().var_list(),
                });
            }
            let entry = map.entry(t).or_insert_with(|| ring.zero());
            *entry = &*entry + &p;
        }
        map.retain(|_, p| !p.is_zero());
        Ok(ExtElement {
            ring: Arc::clone(ring),
            dim,
            grade,
            comps: map,
        })
    }

    fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    fn assert_compatible(&self, other: &Self, op: &str) {
        assert_eq!(
            self.ring.vars(),
            other.ring.vars(),
            "ring mismatch in {op}"
        );
        assert_eq!(self.dim, other.dim, "rank mismatch in {op}");
        assert_eq!(self.grade, other.grade, "grade mismatch in {op}");
    }

    fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other, "exterior addition");
        let mut comps = self.comps.clone();
        for (t, p) in &other.comps {
            let entry = comps.entry(t.clone()).or_insert_with(|| self.ring.zero());
            *entry = &*entry + p;
        }
        comps.retain(|_, p| !p.is_zero());
        ExtElement {
            ring: Arc::clone(&self.ring),
            dim: self.dim,
            grade: self.grade,
            comps,
        }
    }

    fn neg(&self) -> Self {
        ExtElement {
            ring: Arc::clone(&self.ring),
            dim: self.dim,
            grade: self.grade,
            comps: self.comps.iter().map(|(t, p)| (t.clone(), -p)).collect(),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn scale(&self, f: &Poly) -> Self {
        if f.is_zero() {
            return ExtElement::zero(&self.ring, self.dim, self.grade);
        }
        let comps = self
            .comps
            .iter()
            .map(|(t, p)| (t.clone(), f * p))
            .collect();
        ExtElement {
            ring: Arc::clone(&self.ring),
            dim: self.dim,
            grade: self.grade,
            comps,
        }
    }

    fn wedge(&self, other: &Self) -> Self {
        assert_eq!(
            self.ring.vars(),
            other.ring.vars(),
            "ring mismatch in wedge"
        );
        assert_eq!(self.dim, other.dim, "rank mismatch in wedge");
        let grade = self.grade + other.grade;
        let mut comps: BTreeMap<IndexTuple, Poly> = BTreeMap::new();
        for (ta, pa) in &self.comps {
            for (tb, pb) in &other.comps {
                if let Some((t, sign)) = ta.merge(tb) {
                    let mut p = pa * pb;
                    if sign < 0 {
                        p = -p;
                    }
                    let entry = comps.entry(t).or_insert_with(|| self.ring.zero());
                    *entry = &*entry + &p;
                }
            }
        }
        comps.retain(|_, p| !p.is_zero());
        ExtElement {
            ring: Arc::clone(&self.ring),
            dim: self.dim,
            grade,
            comps,
        }
    }

    fn component(&self, indices: &[usize]) -> Poly {
        match IndexTuple::normalize(indices.to_vec()) {
            None => self.ring.zero(),
            Some((t, sign)) => {
                let p = self
                    .comps
                    .get(&t)
                    .cloned()
                    .unwrap_or_else(|| self.ring.zero());
                if sign < 0 {
                    -p
                } else {
                    p
                }
            }
        }
    }

    fn display(&self, f: &mut fmt::Formatter<'_>, basis_symbol: &str) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(t, p)| {
                if t.grade() == 0 {
                    return format!("{p}");
                }
                let basis: Vec<String> = t
                    .indices()
                    .iter()
                    .map(|i| format!("{basis_symbol}{}", i + 1))
                    .collect();
                let basis = basis.join("∧");
                if p == &self.ring.one() {
                    basis
                } else {
                    format!("({p})*{basis}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

macro_rules! exterior_newtype {
    ($name:ident, $symbol:literal, $doc:literal) => {
        #[doc = $doc]
        #[derive(Debug, Clone, PartialEq, Eq)]
        pub struct $name(pub(crate) ExtElement);

        impl $name {
            /// The zero value of the given grade.
            pub fn zero(ring: &Arc<PolyRing>, dim: usize, grade: usize) -> Self {
                $name(ExtElement::zero(ring, dim, grade))
            }

            /// A grade-0 value (a ring element).
            pub fn scalar(ring: &Arc<PolyRing>, dim: usize, f: Poly) -> Self {
                let comps = if f.is_zero() {
                    Vec::new()
                } else {
                    vec![(IndexTuple::empty(), f)]
                };
                $name(
                    ExtElement::from_components(ring, dim, 0, comps)
                        .expect("scalar component is canonical"),
                )
            }

            /// The grade-1 basis element with 0-based index `i`.
            pub fn basis(ring: &Arc<PolyRing>, dim: usize, i: usize) -> Self {
                assert!(i < dim, "basis index {i} out of range for rank {dim}");
                let t = IndexTuple::from_sorted(vec![i]).unwrap();
                $name(
                    ExtElement::from_components(ring, dim, 1, [(t, ring.one())])
                        .expect("basis component is canonical"),
                )
            }

            /// The basis monomial `e_{i_1}∧…∧e_{i_k}` for arbitrary indices
            /// (normalized by shuffle sign; repeated indices give zero).
            pub fn basis_tuple(ring: &Arc<PolyRing>, dim: usize, indices: &[usize]) -> Self {
                assert!(
                    indices.iter().all(|&i| i < dim),
                    "basis index out of range for rank {dim}"
                );
                match IndexTuple::normalize(indices.to_vec()) {
                    None => $name(ExtElement::zero(ring, dim, indices.len())),
                    Some((t, sign)) => {
                        let one = if sign < 0 { -ring.one() } else { ring.one() };
                        $name(
                            ExtElement::from_components(ring, dim, indices.len(), [(t, one)])
                                .expect("normalized component is canonical"),
                        )
                    }
                }
            }

            /// A grade-1 value from one coefficient per basis element.
            pub fn from_coeffs(ring: &Arc<PolyRing>, coeffs: Vec<Poly>) -> Result<Self> {
                let dim = coeffs.len();
                let comps = coeffs
                    .into_iter()
                    .enumerate()
                    .map(|(i, p)| (IndexTuple::from_sorted(vec![i]).unwrap(), p));
                Ok($name(ExtElement::from_components(ring, dim, 1, comps)?))
            }

            /// Builds a value from (tuple, coefficient) components.
            pub fn from_components(
                ring: &Arc<PolyRing>,
                dim: usize,
                grade: usize,
                comps: impl IntoIterator<Item = (IndexTuple, Poly)>,
            ) -> Result<Self> {
                Ok($name(ExtElement::from_components(ring, dim, grade, comps)?))
            }

            /// The underlying ring.
            pub fn ring(&self) -> &Arc<PolyRing> {
                &self.0.ring
            }

            /// Rank of the underlying free module.
            pub fn dim(&self) -> usize {
                self.0.dim
            }

            /// Grade (exterior degree).
            pub fn grade(&self) -> usize {
                self.0.grade
            }

            /// True iff all components vanish.
            pub fn is_zero(&self) -> bool {
                self.0.is_zero()
            }

            /// Component at arbitrary indices (sign-normalized; zero if a
            /// repeated index or an absent tuple).
            pub fn component(&self, indices: &[usize]) -> Poly {
                self.0.component(indices)
            }

            /// Iterates canonical (tuple, coefficient) components.
            pub fn components(&self) -> impl Iterator<Item = (&IndexTuple, &Poly)> {
                self.0.comps.iter()
            }

            /// For grade-0 values, the underlying ring element.
            pub fn as_scalar(&self) -> Option<Poly> {
                if self.0.grade != 0 {
                    return None;
                }
                Some(self.0.component(&[]))
            }

            /// Sum (grades and ranks must agree).
            pub fn add(&self, other: &Self) -> Self {
                $name(self.0.add(&other.0))
            }

            /// Difference.
            pub fn sub(&self, other: &Self) -> Self {
                $name(self.0.sub(&other.0))
            }

            /// Negation.
            pub fn neg(&self) -> Self {
                $name(self.0.neg())
            }

            /// Multiplication by a ring element (untwisted module action).
            pub fn scale(&self, f: &Poly) -> Self {
                $name(self.0.scale(f))
            }

            /// Multiplication by an exact rational.
            pub fn scale_q(&self, q: &crate::ring::Q) -> Self {
                $name(self.0.scale(&Poly::constant(&self.0.ring, q.clone())))
            }

            /// Wedge product (grades add).
            pub fn wedge(&self, other: &Self) -> Self {
                $name(self.0.wedge(&other.0))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.display(f, $symbol)
            }
        }
    };
}

exterior_newtype!(
    MultiVector,
    "e_",
    "A grade-homogeneous section of ∧•A with polynomial coefficients."
);
exterior_newtype!(
    MultiForm,
    "e^",
    "A grade-homogeneous section of ∧•A* with polynomial coefficients."
);

impl MultiVector {
    /// Reinterprets this multivector as a multiform with the same
    /// components — the basis-level identification of a module with its
    /// double dual (used when a structure pairs a module against itself).
    pub fn into_form(self) -> MultiForm {
        MultiForm(self.0)
    }
}

impl MultiForm {
    /// Reinterprets this multiform as a multivector with the same
    /// components (inverse of [`MultiVector::into_form`]).
    pub fn into_vector(self) -> MultiVector {
        MultiVector(self.0)
    }
}

/// Pairing `⟨Ξ, X⟩ = Σ_I Ξ_I X_I` of a `k`-form with a `k`-vector.
pub fn pair(xi: &MultiForm, x: &MultiVector) -> Result<Poly> {
    if xi.ring().vars() != x.ring().vars() {
        return Err(Error::RingMismatch {
            expected: xi.ring().var_list(),
            got: x.ring().var_list(),
        });
    }
    if xi.dim() != x.dim() {
        return Err(Error::Dimension(format!(
            "pairing rank {} form with rank {} vector",
            xi.dim(),
            x.dim()
        )));
    }
    if xi.grade() != x.grade() {
        return Err(Error::Grade(format!(
            "pairing grade {} form with grade {} vector",
            xi.grade(),
            x.grade()
        )));
    }
    let mut acc = xi.ring().zero();
    for (t, p) in xi.components() {
        let q = x.component(t.indices());
        if !q.is_zero() {
            acc = &acc + &(p * &q);
        }
    }
    Ok(acc)
}
