//! Invertible affine ring automorphisms σ of ℚ[x₁, …, xₙ].
//!
//! An automorphism is determined by variable images
//! `σ(x_j) = c_j + Σ_i A_ji · x_i` with an invertible rational matrix A.
//! The inverse is precomputed at construction, so applying `σ⁻¹` is as
//! cheap as applying σ. These maps are the "pullbacks of diffeomorphisms"
//! that twist every structure in this crate.

use std::fmt;
use std::sync::Arc;

use num::{BigRational, Zero};

use super::{Poly, PolyRing};
use crate::linalg;
use crate::{Error, Result};

/// An invertible affine substitution automorphism of a polynomial ring.
#[derive(Debug, Clone)]
pub struct RingAuto {
    ring: Arc<PolyRing>,
    images: Vec<Poly>,
    inverse_images: Vec<Poly>,
}

impl PartialEq for RingAuto {
    fn eq(&self, other: &Self) -> bool {
        self.ring.vars() == other.ring.vars() && self.images == other.images
    }
}

impl Eq for RingAuto {}

impl RingAuto {
    /// Builds the automorphism with `σ(x_j) = images[j]`.
    ///
    /// Every image must be affine (total degree ≤ 1) and the linear part
    /// must be invertible over ℚ; the inverse substitution is computed here.
    pub fn new(ring: &Arc<PolyRing>, images: Vec<Poly>) -> Result<Self> {
        let n = ring.nvars();
        if images.len() != n {
            return Err(Error::Dimension(format!(
                "automorphism needs {n} variable images, got {}",
                images.len()
            )));
        }
        for (j, img) in images.iter().enumerate() {
            if img.ring().vars() != ring.vars() {
                return Err(Error::RingMismatch {
                    expected: ring.var_list(),
                    got: img.ring().var_list(),
                });
            }
            if let Some(d) = img.degree() {
                if d > 1 {
                    return Err(Error::NotAffine {
                        var: ring.vars()[j].clone(),
                        degree: d,
                    });
                }
            }
        }
        // σ(x_j) = c_j + Σ_i a[j][i]·x_i
        let mut a = vec![vec![BigRational::zero(); n]; n];
        let mut c = vec![BigRational::zero(); n];
        for (j, img) in images.iter().enumerate() {
            for (m, coeff) in img.terms() {
                match m.degree() {
                    0 => c[j] = coeff.clone(),
                    1 => {
                        let i = m.exponents().iter().position(|&e| e == 1).unwrap();
                        a[j][i] = coeff.clone();
                    }
                    _ => unreachable!("degree checked above"),
                }
            }
        }
        let b = linalg::invert_rational(&a).ok_or(Error::SingularSubstitution)?;
        // σ⁻¹(x_j) = d_j + Σ_i b[j][i]·x_i  with  d = −B·c
        let inverse_images = (0..n)
            .map(|j| {
                let mut img = Poly::zero(ring);
                let mut d_j = BigRational::zero();
                for i in 0..n {
                    d_j -= &b[j][i] * &c[i];
                    img = &img + &Poly::var(ring, i).scale(&b[j][i]);
                }
                &img + &Poly::constant(ring, d_j)
            })
            .collect();
        Ok(RingAuto {
            ring: Arc::clone(ring),
            images,
            inverse_images,
        })
    }

    /// The identity automorphism (the "classical", untwisted case).
    pub fn identity(ring: &Arc<PolyRing>) -> Self {
        let images: Vec<Poly> = (0..ring.nvars()).map(|mu| Poly::var(ring, mu)).collect();
        RingAuto {
            ring: Arc::clone(ring),
            images: images.clone(),
            inverse_images: images,
        }
    }

    /// The ring acted upon.
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// Variable images σ(x_j).
    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    /// Applies σ to a polynomial (substitutes every variable's image).
    pub fn apply(&self, f: &Poly) -> Poly {
        assert_eq!(
            f.ring().vars(),
            self.ring.vars(),
            "ring mismatch applying automorphism"
        );
        f.subst(&self.images)
    }

    /// The inverse automorphism σ⁻¹ (precomputed; no extra cost).
    pub fn inverse(&self) -> Self {
        RingAuto {
            ring: Arc::clone(&self.ring),
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    /// Composition `self ∘ other`: `(self ∘ other)(f) = self(other(f))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            self.ring.vars(),
            other.ring.vars(),
            "ring mismatch composing automorphisms"
        );
        // (self ∘ other)(x_j) = self(other(x_j)); affine maps stay affine.
        let images: Vec<Poly> = other.images.iter().map(|img| self.apply(img)).collect();
        let inverse_images: Vec<Poly> = self
            .inverse_images
            .iter()
            .map(|img| img.subst(&other.inverse_images))
            .collect();
        RingAuto {
            ring: Arc::clone(&self.ring),
            images,
            inverse_images,
        }
    }

    /// Integer power σ^k (negative k uses the inverse).
    pub fn pow(&self, k: i32) -> Self {
        let base = if k >= 0 { self.clone() } else { self.inverse() };
        let mut acc = RingAuto::identity(&self.ring);
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// True iff this is the identity substitution.
    pub fn is_identity(&self) -> bool {
        (0..self.ring.nvars()).all(|mu| self.images[mu] == Poly::var(&self.ring, mu))
    }
}

impl fmt::Display for RingAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ring.nvars() == 0 {
            return write!(f, "id");
        }
        let parts: Vec<String> = self
            .ring
            .vars()
            .iter()
            .zip(&self.images)
            .map(|(v, img)| format!("{v} -> {img}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}
