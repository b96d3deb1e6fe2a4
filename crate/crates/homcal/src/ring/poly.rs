//! Polynomials with exact rational coefficients in canonical form.
//!
//! A [`Poly`] is a map from monomials to nonzero rational coefficients,
//! ordered graded-lexicographically. All arithmetic re-normalizes, so two
//! polynomials are mathematically equal iff their term maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigRational, One, Signed, Zero};

use super::PolyRing;

/// Exact rational scalar type used throughout the crate.
pub type Q = BigRational;

/// A monomial, stored as one exponent per ring variable.
///
/// Ordered graded-lexicographically: first by total degree, then
/// lexicographically on the exponent vector (so `x > y` in ℚ[x, y]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// The monomial 1 in an `nvars`-variable ring.
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    /// The single variable `x_mu`.
    pub fn var(nvars: usize, mu: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[mu] = 1;
        Monomial { exps }
    }

    /// Builds a monomial from an exponent vector.
    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// Exponent vector.
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Product of two monomials (exponents add).
    pub fn mul(&self, other: &Self) -> Self {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial over ℚ in the variables of its [`PolyRing`].
#[derive(Debug, Clone)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, Q>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring.vars() == other.ring.vars() && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    /// The zero polynomial.
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Poly {
            ring: Arc::clone(ring),
            terms: BTreeMap::new(),
        }
    }

    /// A constant polynomial.
    pub fn constant(ring: &Arc<PolyRing>, q: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Monomial::one(ring.nvars()), q);
        }
        Poly {
            ring: Arc::clone(ring),
            terms,
        }
    }

    /// The variable `x_mu`.
    pub fn var(ring: &Arc<PolyRing>, mu: usize) -> Self {
        assert!(
            mu < ring.nvars(),
            "variable index {mu} out of range for ring with {} variables",
            ring.nvars()
        );
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(ring.nvars(), mu), Q::one());
        Poly {
            ring: Arc::clone(ring),
            terms,
        }
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, combining
    /// duplicates and dropping zeros.
    pub fn from_terms(
        ring: &Arc<PolyRing>,
        terms: impl IntoIterator<Item = (Monomial, Q)>,
    ) -> Self {
        let mut map: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.exponents().len(), ring.nvars());
            let entry = map.entry(m).or_insert_with(Q::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        Poly {
            ring: Arc::clone(ring),
            terms: map,
        }
    }

    /// The ring this polynomial lives in.
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// True iff this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Iterates over (monomial, coefficient) pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    /// If the polynomial is constant, returns its value (zero included).
    pub fn as_constant(&self) -> Option<Q> {
        match self.degree() {
            None => Some(Q::zero()),
            Some(0) => Some(self.terms.values().next().unwrap().clone()),
            Some(_) => None,
        }
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, q: &Q) -> Self {
        if q.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    /// Raises to a nonnegative integer power.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::constant(&self.ring, Q::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative ∂/∂x_mu.
    pub fn partial(&self, mu: usize) -> Self {
        assert!(mu < self.ring.nvars(), "variable index out of range");
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponents()[mu];
            if e == 0 {
                return None;
            }
            let mut exps = m.exponents().to_vec();
            exps[mu] = e - 1;
            Some((
                Monomial::from_exponents(exps),
                c * Q::from_integer(e.into()),
            ))
        });
        Poly::from_terms(&self.ring, terms)
    }

    /// Substitutes `images[mu]` for each variable `x_mu`. The images must
    /// live in the same ring (substitution endomorphism).
    pub fn subst(&self, images: &[Poly]) -> Self {
        assert_eq!(
            images.len(),
            self.ring.nvars(),
            "need one image per variable"
        );
        let mut acc = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&self.ring, c.clone());
            for (mu, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = &term * &images[mu].pow(e);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    fn assert_same_ring(&self, other: &Self) {
        assert_eq!(
            self.ring.vars(),
            other.ring.vars(),
            "ring mismatch between polynomial operands"
        );
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_same_ring(rhs);
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            let entry = terms.entry(m.clone()).or_insert_with(Q::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Poly {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_same_ring(rhs);
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            let entry = terms.entry(m.clone()).or_insert_with(Q::zero);
            *entry -= c;
        }
        terms.retain(|_, c| !c.is_zero());
        Poly {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same_ring(rhs);
        let mut terms: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let entry = terms.entry(m).or_insert_with(Q::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Poly {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Leading (largest) term first.
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = render_monomial(&self.ring, m);
            let abs = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (&mono, abs.is_one()) {
                (None, _) => write!(f, "{abs}")?,
                (Some(m), true) => write!(f, "{m}")?,
                (Some(m), false) => write!(f, "{abs}*{m}")?,
            }
        }
        Ok(())
    }
}

/// Renders a monomial as `x*y^3`, or `None` for the monomial 1.
fn render_monomial(ring: &PolyRing, m: &Monomial) -> Option<String> {
    let factors: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|&(_, &e)| e > 0)
        .map(|(mu, &e)| {
            if e == 1 {
                ring.vars()[mu].clone()
            } else {
                format!("{}^{}", ring.vars()[mu], e)
            }
        })
        .collect();
    if factors.is_empty() {
        None
    } else {
        Some(factors.join("*"))
    }
}
