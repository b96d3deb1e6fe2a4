//! (σ,σ)-derivations of a polynomial ring.
//!
//! For an automorphism σ, a (σ,σ)-derivation is a linear map D with the
//! twisted Leibniz rule
//!
//! ```text
//! D(f·g) = D(f)·σ(g) + σ(f)·D(g).
//! ```
//!
//! Every such D decomposes as `D = Σ_μ h_μ · (σ∘∂_μ)` with `h_μ = D(x_μ)`,
//! so a derivation is stored as its coefficient vector in the `σ∘∂_μ`
//! basis. The space of (σ,σ)-derivations carries the twisted bracket
//!
//! ```text
//! [D₁, D₂]_σ = σ∘D₁∘σ⁻¹∘D₂∘σ⁻¹ − σ∘D₂∘σ⁻¹∘D₁∘σ⁻¹
//! ```
//!
//! and the conjugation `Ad_σ(D) = σ∘D∘σ⁻¹`, both of which preserve the
//! decomposed form; together they make the twisted vector fields a Hom-Lie
//! algebra with twist map `Ad_σ`.

use std::fmt;

use super::{Poly, RingAuto};
use crate::{Error, Result};

/// A (σ,σ)-derivation `Σ_μ h_μ·(σ∘∂_μ)`, stored by its coefficients `h_μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaDerivation {
    sigma: RingAuto,
    coeffs: Vec<Poly>,
}

impl SigmaDerivation {
    /// Builds a derivation from coefficients in the `σ∘∂_μ` basis.
    pub fn new(sigma: &RingAuto, coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.len() != sigma.ring().nvars() {
            return Err(Error::Dimension(format!(
                "derivation needs {} coefficients, got {}",
                sigma.ring().nvars(),
                coeffs.len()
            )));
        }
        for c in &coeffs {
            if c.ring().vars() != sigma.ring().vars() {
                return Err(Error::RingMismatch {
                    expected: sigma.ring().var_list(),
                    got: c.ring().var_list(),
                });
            }
        }
        Ok(SigmaDerivation {
            sigma: sigma.clone(),
            coeffs,
        })
    }

    /// The zero derivation.
    pub fn zero(sigma: &RingAuto) -> Self {
        let coeffs = vec![sigma.ring().zero(); sigma.ring().nvars()];
        SigmaDerivation {
            sigma: sigma.clone(),
            coeffs,
        }
    }

    /// The basis derivation `σ∘∂_μ`.
    pub fn basis(sigma: &RingAuto, mu: usize) -> Self {
        let ring = sigma.ring();
        let mut coeffs = vec![ring.zero(); ring.nvars()];
        coeffs[mu] = ring.one();
        SigmaDerivation {
            sigma: sigma.clone(),
            coeffs,
        }
    }

    /// The twist σ this derivation is taken with respect to.
    pub fn sigma(&self) -> &RingAuto {
        &self.sigma
    }

    /// Coefficients `h_μ` (so `h_μ = self.apply(x_μ)`).
    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// True iff all coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Applies the derivation: `D(f) = Σ_μ h_μ·σ(∂_μ f)`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let ring = self.sigma.ring();
        assert_eq!(
            f.ring().vars(),
            ring.vars(),
            "ring mismatch applying derivation"
        );
        let mut acc = ring.zero();
        for (mu, h) in self.coeffs.iter().enumerate() {
            if !h.is_zero() {
                acc = &acc + &(h * &self.sigma.apply(&f.partial(mu)));
            }
        }
        acc
    }

    /// Twisted commutator `[D₁,D₂]_σ = σD₁σ⁻¹D₂σ⁻¹ − σD₂σ⁻¹D₁σ⁻¹`.
    ///
    /// The result is again a (σ,σ)-derivation; its coefficients are read
    /// off by evaluating the operator on the ring variables.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_twist(other)?;
        let ring = self.sigma.ring();
        let si = self.sigma.inverse();
        let coeffs = (0..ring.nvars())
            .map(|nu| {
                let x = ring.var(nu);
                let first = self
                    .sigma
                    .apply(&self.apply(&si.apply(&other.apply(&si.apply(&x)))));
                let second = self
                    .sigma
                    .apply(&other.apply(&si.apply(&self.apply(&si.apply(&x)))));
                &first - &second
            })
            .collect();
        Ok(SigmaDerivation {
            sigma: self.sigma.clone(),
            coeffs,
        })
    }

    /// Conjugation `Ad_σ(D) = σ∘D∘σ⁻¹`, the twist map of the derivation
    /// Hom-Lie algebra. Satisfies `Ad_σ(f·D) = σ(f)·Ad_σ(D)`.
    pub fn conjugate(&self) -> Self {
        let ring = self.sigma.ring();
        let si = self.sigma.inverse();
        let coeffs = (0..ring.nvars())
            .map(|nu| self.sigma.apply(&self.apply(&si.apply(&ring.var(nu)))))
            .collect();
        SigmaDerivation {
            sigma: self.sigma.clone(),
            coeffs,
        }
    }

    /// Inverse conjugation `Ad_σ⁻¹(D) = σ⁻¹∘D∘σ`.
    pub fn conjugate_inverse(&self) -> Self {
        let ring = self.sigma.ring();
        let si = self.sigma.inverse();
        let coeffs = (0..ring.nvars())
            .map(|nu| si.apply(&self.apply(&self.sigma.apply(&ring.var(nu)))))
            .collect();
        SigmaDerivation {
            sigma: self.sigma.clone(),
            coeffs,
        }
    }

    /// Module action `f·D` (coefficients scale).
    pub fn scale_poly(&self, f: &Poly) -> Self {
        SigmaDerivation {
            sigma: self.sigma.clone(),
            coeffs: self.coeffs.iter().map(|h| f * h).collect(),
        }
    }

    /// Sum of derivations with the same twist.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_twist(other)?;
        Ok(SigmaDerivation {
            sigma: self.sigma.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Difference of derivations with the same twist.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_twist(other)?;
        Ok(SigmaDerivation {
            sigma: self.sigma.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn check_twist(&self, other: &Self) -> Result<()> {
        if self.sigma != other.sigma {
            return Err(Error::TwistMismatch(format!(
                "derivations over ({}) and ({})",
                self.sigma, other.sigma
            )));
        }
        Ok(())
    }
}

impl fmt::Display for SigmaDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.sigma.ring();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, h)| !h.is_zero())
            .map(|(mu, h)| format!("({h})*s.d_{}", ring.vars()[mu]))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
