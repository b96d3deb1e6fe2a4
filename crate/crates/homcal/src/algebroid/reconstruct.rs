//! Reconstruction of a Hom-Lie algebroid from its differential.
//!
//! The cochain differential of a Hom-Lie algebroid is determined by finitely
//! much data: the base automorphism σ, the module twist φ_A, the 1-forms
//! d x_μ for every coordinate, and the 2-forms d e^k for every basis form.
//! Conversely this data pins the algebroid down exactly:
//!
//! * the anchor comes from `a_A(e_i)(x_μ) = (d x_μ)(e_i)`, and
//! * writing Θ_k = (φ_A†)⁻¹e^k, the bracket coefficients come from
//!   evaluating the differential of a 1-form at twisted basis sections:
//!
//!   ```text
//!   ⟨e^k, [e_i, e_j]_A⟩ = a_A(φ_A e_i)⟨Θ_k, e_j⟩ − a_A(φ_A e_j)⟨Θ_k, e_i⟩
//!                          − (dΘ_k)(φ_A e_i, φ_A e_j)
//!   ```
//!
//! where dΘ_k is computed from the data alone via
//! `d f = Σ_μ σ(∂f/∂x_μ)·d x_μ` and the module rule
//! `d(g·e^l) = d g ∧ φ_A†(e^l) + σ(g)·d e^l`.
//!
//! [`HomLieAlgebroid::differential_data`] extracts the data in the forward
//! direction; [`reconstruct_from_differential`] inverts it. The round trip
//! is exact.

use crate::exterior::{pair, MultiForm, SemilinearMap};
use crate::ring::{Poly, RingAuto, SigmaDerivation};
use crate::{Error, Result};

use super::HomLieAlgebroid;

/// The data determining the differential of a Hom-Lie algebroid.
#[derive(Debug, Clone)]
pub struct DifferentialData {
    /// The base automorphism σ.
    pub sigma: RingAuto,
    /// The module twist φ_A.
    pub phi: SemilinearMap,
    /// d x_μ for every ring variable, in order (grade-1 forms).
    pub d_coords: Vec<MultiForm>,
    /// d e^k for every basis form, in order (grade-2 forms).
    pub d_basis_forms: Vec<MultiForm>,
}

impl HomLieAlgebroid {
    /// Extracts the data of this algebroid's differential.
    pub fn differential_data(&self) -> DifferentialData {
        let cal = self.calculus();
        let d_coords = (0..self.ring().nvars())
            .map(|mu| cal.d_fn(&self.ring().var(mu)))
            .collect();
        let d_basis_forms = (0..self.rank())
            .map(|k| cal.differential(&self.basis_form(k)))
            .collect();
        DifferentialData {
            sigma: self.sigma().clone(),
            phi: self.phi().clone(),
            d_coords,
            d_basis_forms,
        }
    }
}

/// Rebuilds the Hom-Lie algebroid whose differential produced the data.
pub fn reconstruct_from_differential(data: &DifferentialData) -> Result<HomLieAlgebroid> {
    let sigma = &data.sigma;
    let ring = sigma.ring().clone();
    let n = ring.nvars();
    let phi = data.phi.clone();
    if phi.twist() != sigma {
        return Err(Error::TwistMismatch(
            "the module twist must be semilinear over the given base automorphism".into(),
        ));
    }
    let rank = phi.dim();
    if data.d_coords.len() != n {
        return Err(Error::Dimension(format!(
            "need one coordinate differential per ring variable ({n}), got {}",
            data.d_coords.len()
        )));
    }
    for (mu, df) in data.d_coords.iter().enumerate() {
        if df.grade() != 1 || df.dim() != rank {
            return Err(Error::Grade(format!(
                "d x_{} must be a grade-1 form of rank {rank}",
                mu + 1
            )));
        }
    }
    if data.d_basis_forms.len() != rank {
        return Err(Error::Dimension(format!(
            "need one differential per basis form ({rank}), got {}",
            data.d_basis_forms.len()
        )));
    }
    for (k, de) in data.d_basis_forms.iter().enumerate() {
        if de.grade() != 2 || de.dim() != rank {
            return Err(Error::Grade(format!(
                "d e^{} must be a grade-2 form of rank {rank}",
                k + 1
            )));
        }
    }

    // Anchor: a_A(e_i)(x_μ) = (d x_μ)(e_i).
    let anchor = (0..rank)
        .map(|i| {
            let coeffs: Vec<Poly> = (0..n).map(|mu| data.d_coords[mu].component(&[i])).collect();
            SigmaDerivation::new(sigma, coeffs)
        })
        .collect::<Result<Vec<_>>>()?;

    // d on functions, from the data alone: d f = Σ_μ σ(∂f/∂x_μ)·d x_μ.
    let d_of = |f: &Poly| -> MultiForm {
        let mut acc = MultiForm::zero(&ring, rank, 1);
        for mu in 0..n {
            let coef = sigma.apply(&f.partial(mu));
            if !coef.is_zero() {
                acc = acc.add(&data.d_coords[mu].scale(&coef));
            }
        }
        acc
    };

    // d on 1-forms, from the data alone:
    // d(Σ_l g_l·e^l) = Σ_l (d g_l ∧ φ_A†(e^l) + σ(g_l)·d e^l).
    let dagger = phi.dagger();
    let d_one_form = |theta: &MultiForm| -> MultiForm {
        let mut acc = MultiForm::zero(&ring, rank, 2);
        for l in 0..rank {
            let g = theta.component(&[l]);
            if g.is_zero() {
                continue;
            }
            let basis_l = MultiForm::basis(&ring, rank, l);
            acc = acc.add(&d_of(&g).wedge(&dagger.apply_form(&basis_l)));
            acc = acc.add(&data.d_basis_forms[l].scale(&sigma.apply(&g)));
        }
        acc
    };

    // a_A(φ_A e_i) as derivations, assembled from the recovered anchor.
    let aphi = (0..rank)
        .map(|i| {
            let col = phi.column_mv(i);
            let mut acc = SigmaDerivation::zero(sigma);
            for (r, a) in anchor.iter().enumerate() {
                let p = col.component(&[r]);
                if !p.is_zero() {
                    acc = acc
                        .add(&a.scale_poly(&p))
                        .expect("anchor derivations share the base automorphism");
                }
            }
            acc
        })
        .collect::<Vec<_>>();

    // Brackets: evaluate dΘ_k at twisted basis sections.
    let dagger_inv = dagger.inverse();
    let mut c = vec![vec![vec![ring.zero(); rank]; rank]; rank];
    for k in 0..rank {
        let theta = dagger_inv.apply_form(&MultiForm::basis(&ring, rank, k));
        let d_theta = d_one_form(&theta);
        for i in 0..rank {
            for j in (i + 1)..rank {
                let eval = pair(&d_theta, &phi.column_mv(i).wedge(&phi.column_mv(j)))?;
                let t1 = aphi[i].apply(&theta.component(&[j]));
                let t2 = aphi[j].apply(&theta.component(&[i]));
                let val = &(&t1 - &t2) - &eval;
                c[j][i][k] = -&val;
                c[i][j][k] = val;
            }
        }
    }
    HomLieAlgebroid::from_parts(phi, anchor, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::models::{action_algebroid, tangent_algebroid};
    use crate::homlie::HomLieAlgebra;
    use crate::ring::{PolyRing, Q};

    fn qi(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn tangent_round_trip_is_exact() {
        let ring = PolyRing::new(vec!["x", "y"]).unwrap();
        let sigma = RingAuto::new(
            &ring,
            vec![&(ring.int(2) * ring.var(0)) + &ring.var(1), ring.int(3) * ring.var(1)],
        )
        .unwrap();
        let alg = tangent_algebroid(&sigma);
        let back = reconstruct_from_differential(&alg.differential_data()).unwrap();
        assert_eq!(back, alg);
    }

    #[test]
    fn action_round_trip_is_exact() {
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
        let alg = action_algebroid(&g, &sigma, rho).unwrap();
        let back = reconstruct_from_differential(&alg.differential_data()).unwrap();
        assert_eq!(back, alg);
    }

    #[test]
    fn point_round_trip_is_exact() {
        let g = HomLieAlgebra::new(
            2,
            &[(0, 1, vec![qi(0), qi(1)])],
            vec![vec![qi(1), qi(0)], vec![qi(0), qi(3)]],
        )
        .unwrap();
        let alg = HomLieAlgebroid::at_point(&g);
        let back = reconstruct_from_differential(&alg.differential_data()).unwrap();
        assert_eq!(back, alg);
    }

    #[test]
    fn shape_errors_are_reported() {
        let ring = PolyRing::new(vec!["t"]).unwrap();
        let sigma = RingAuto::new(&ring, vec![ring.int(2) * ring.var(0)]).unwrap();
        let alg = tangent_algebroid(&sigma);
        let mut data = alg.differential_data();
        data.d_coords.clear();
        assert!(matches!(
            reconstruct_from_differential(&data),
            Err(Error::Dimension(_))
        ));
    }
}
