//! Multivariate polynomial rings ℚ[x₁, …, xₙ] with exact rational
//! coefficients, affine ring automorphisms, and (σ,σ)-derivations.
//!
//! The ring of "smooth functions" underlying every structure in this crate
//! is a polynomial ring over ℚ. Terms are kept in a canonical sorted form
//! (graded lexicographic), so equality of polynomials is equality of data —
//! the zero test that every verification reduces to is exact.

mod auto;
mod derivation;
mod parse;
mod poly;

pub use auto::RingAuto;
pub use derivation::SigmaDerivation;
pub use poly::{Monomial, Poly, Q};

use std::sync::Arc;

use num::{BigRational, One};

use crate::{Error, Result};

/// A polynomial ring ℚ[x₁, …, xₙ], identified by its ordered list of
/// variable names. Rings are shared behind [`Arc`]; two rings are
/// interchangeable exactly when their variable lists coincide.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    vars: Vec<String>,
}

impl PolyRing {
    /// Creates the ring with the given ordered variable names.
    ///
    /// Names must be nonempty identifiers (`[A-Za-z_][A-Za-z0-9_]*`) and
    /// pairwise distinct.
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for v in &vars {
            let mut chars = v.chars();
            let head_ok = chars
                .next()
                .map(|c| c.is_ascii_alphabetic() || c == '_')
                .unwrap_or(false);
            if !head_ok || !v.chars().skip(1).all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::BadVariable(v.clone()));
            }
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(PolyRing { vars }))
    }

    /// The constants-only ring ℚ (zero variables). Used for structures "over
    /// a point", letting Hom-Lie algebras reuse all module machinery.
    pub fn rationals() -> Arc<Self> {
        Arc::new(PolyRing { vars: Vec::new() })
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Ordered variable names.
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Index of a variable name, if present.
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Comma-separated variable list (for error messages).
    pub(crate) fn var_list(&self) -> String {
        self.vars.join(", ")
    }

    /// The zero polynomial.
    pub fn zero(self: &Arc<Self>) -> Poly {
        Poly::zero(self)
    }

    /// The constant polynomial 1.
    pub fn one(self: &Arc<Self>) -> Poly {
        Poly::constant(self, BigRational::one())
    }

    /// A constant polynomial.
    pub fn constant(self: &Arc<Self>, q: Q) -> Poly {
        Poly::constant(self, q)
    }

    /// A constant polynomial from an integer.
    pub fn int(self: &Arc<Self>, n: i64) -> Poly {
        Poly::constant(self, BigRational::from_integer(n.into()))
    }

    /// The variable `x_mu` as a polynomial.
    pub fn var(self: &Arc<Self>, mu: usize) -> Poly {
        Poly::var(self, mu)
    }

    /// Parses an expression in this ring's variables.
    ///
    /// Grammar: rational literals (`3`, `-7/2`), variable names, `+ - * ^`,
    /// parentheses; exponents are nonnegative integers; whitespace is
    /// ignored. There is no division operator — `/` only separates the
    /// numerator and denominator of a rational literal.
    pub fn parse(self: &Arc<Self>, src: &str) -> Result<Poly> {
        parse::parse_poly(self, src)
    }

    /// All monomials of total degree ≤ `max_degree` (including 1), in
    /// ascending graded-lexicographic order. This is the deterministic
    /// sample family used by every verification routine.
    pub fn monomials_up_to(self: &Arc<Self>, max_degree: u32) -> Vec<Poly> {
        let mut monos: Vec<Monomial> = Vec::new();
        let mut exps = vec![0u32; self.nvars()];
        collect_monomials(self.nvars(), max_degree, 0, &mut exps, &mut monos);
        monos.sort();
        monos
            .into_iter()
            .map(|m| Poly::from_terms(self, [(m, BigRational::one())]))
            .collect()
    }
}

fn collect_monomials(
    nvars: usize,
    budget: u32,
    from: usize,
    exps: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if from == nvars {
        out.push(Monomial::from_exponents(exps.clone()));
        return;
    }
    for e in 0..=budget {
        exps[from] = e;
        collect_monomials(nvars, budget - e, from + 1, exps, out);
    }
    exps[from] = 0;
}
