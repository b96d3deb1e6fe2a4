//! Model Hom-Lie algebroids: the tangent algebroid of an affine
//! substitution, action algebroids of Hom-Lie algebras, and twists of
//! classical Lie algebroids along a compatible bundle automorphism.

use num::Zero;

use crate::exterior::SemilinearMap;
use crate::homlie::HomLieAlgebra;
use crate::ring::{Poly, RingAuto, SigmaDerivation};
use crate::{Error, Result};

use super::HomLieAlgebroid;

/// The tangent Hom-Lie algebroid of an invertible affine substitution σ.
///
/// Sections are the (σ,σ)-derivations of the ring; the basis consists of
/// D_μ = σ∘∂_μ. The anchor is the identity, the twist is conjugation by σ
/// (whose matrix in this basis is the constant inverse of the linear part
/// of σ), and all basis brackets vanish because conjugated coordinate
/// derivations commute.
pub fn tangent_algebroid(sigma: &RingAuto) -> HomLieAlgebroid {
    let ring = sigma.ring().clone();
    let n = ring.nvars();
    assert!(n > 0, "the tangent algebroid needs at least one variable");

    // Linear part A of σ: σ(x_ν) = c_ν + Σ_ρ A[ν][ρ]·x_ρ; the matrix of
    // Ad_σ(D_μ) in the D-basis is A⁻¹, read off by applying each D_μ's
    // conjugate to the coordinates.
    let mut phi_matrix = vec![vec![ring.zero(); n]; n];
    for mu in 0..n {
        let conj = SigmaDerivation::basis(sigma, mu).conjugate();
        // Ad_σ(D_μ) = Σ_ν B[ν][μ]·D_ν where B[ν][μ] = Ad_σ(D_μ)(x_ν)
        // (constant for affine σ).
        for (nu, coeff) in conj.coeffs().iter().enumerate() {
            phi_matrix[nu][mu] = coeff.clone();
        }
    }
    let anchor = (0..n).map(|mu| SigmaDerivation::basis(sigma, mu)).collect();
    let phi = SemilinearMap::new(sigma, phi_matrix)
        .expect("the linear part of an invertible affine substitution is invertible");
    let c = vec![vec![vec![ring.zero(); n]; n]; n];
    HomLieAlgebroid::from_parts(phi, anchor, c)
        .expect("tangent data is well-formed by construction")
}

/// The action Hom-Lie algebroid of a Hom-Lie algebra acting on the ring.
///
/// `rho[i]` is the (σ,σ)-derivation the basis element e_i acts by. The
/// action laws are validated here:
///
/// ```text
/// ρ(Φx) = Ad_σ(ρ(x)),    ρ([x, y]) = [ρ(x), ρ(y)]_σ,
/// ```
///
/// where `[D₁, D₂]_σ = σ∘D₁∘σ⁻¹∘D₂∘σ⁻¹ − σ∘D₂∘σ⁻¹∘D₁∘σ⁻¹` is the
/// twisted commutator of derivations. The resulting algebroid has the
/// constant twist Φ, anchor ρ, and the constant brackets of the algebra.
pub fn action_algebroid(
    g: &HomLieAlgebra,
    sigma: &RingAuto,
    rho: Vec<SigmaDerivation>,
) -> Result<HomLieAlgebroid> {
    let ring = sigma.ring().clone();
    let dim = g.dim();
    if rho.len() != dim {
        return Err(Error::Dimension(format!(
            "need one derivation per algebra basis element ({dim}), got {}",
            rho.len()
        )));
    }
    for d in &rho {
        if d.sigma() != sigma {
            return Err(Error::TwistMismatch(
                "action derivations must carry the base automorphism".into(),
            ));
        }
    }
    let rho_of = |coeffs: &[crate::ring::Q]| -> SigmaDerivation {
        let mut acc = SigmaDerivation::zero(sigma);
        for (k, q) in coeffs.iter().enumerate() {
            if !q.is_zero() {
                acc = acc
                    .add(&rho[k].scale_poly(&ring.constant(q.clone())))
                    .expect("same automorphism");
            }
        }
        acc
    };
    // ρ intertwines the twists: ρ(Φ e_i) = Ad_σ(ρ(e_i)).
    for i in 0..dim {
        let phi_ei: Vec<_> = (0..dim).map(|r| g.phi_matrix()[r][i].clone()).collect();
        if rho_of(&phi_ei) != rho[i].conjugate() {
            return Err(Error::Invalid(format!(
                "not an action: the derivation for the twisted basis element {} is not the conjugate of its derivation",
                i + 1
            )));
        }
    }
    // ρ maps brackets to twisted commutators.
    for i in 0..dim {
        for j in 0..dim {
            let mut ei = vec![crate::ring::Q::zero(); dim];
            ei[i] = num::One::one();
            let mut ej = vec![crate::ring::Q::zero(); dim];
            ej[j] = num::One::one();
            let lhs = rho_of(&g.bracket_vec(&ei, &ej));
            let rhs = rho[i].bracket(&rho[j])?;
            if lhs != rhs {
                return Err(Error::Invalid(format!(
                    "not an action: the bracket [e_{}, e_{}] does not map to the twisted commutator of derivations",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let phi = SemilinearMap::from_rational(sigma, g.phi_matrix())?;
    let c = g
        .structure_constants()
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.iter().map(|q| ring.constant(q.clone())).collect())
                .collect()
        })
        .collect();
    HomLieAlgebroid::from_parts(phi, rho, c)
}

/// Twists a classical Lie algebroid (trivial σ and φ_A) along a bundle
/// map α and an affine substitution σ into a Hom-Lie algebroid.
///
/// Requirements validated here: α is invertible, a bracket morphism of the
/// classical algebroid, and intertwines the anchors with σ:
/// `a(α(x))∘σ = σ∘a(x)`.
///
/// On the twisted algebroid (basis u_i corresponding to e_i):
///
/// ```text
/// φ_A(u_i) = Σ_k σ(α_{ki})·u_k,   a(u_i) = σ∘a(e_i),
/// [u_i, u_j] = σ-image of [α(e_i), α(e_j)] in the classical algebroid,
/// ```
///
/// the σ-images appearing because a coefficient moves across the
/// correspondence as `(F·x)↦ σ(F)·x`.
pub fn twist_lie_algebroid(
    classical: &HomLieAlgebroid,
    alpha: Vec<Vec<Poly>>,
    sigma: &RingAuto,
) -> Result<HomLieAlgebroid> {
    let ring = classical.ring().clone();
    if sigma.ring().vars() != ring.vars() {
        return Err(Error::RingMismatch {
            expected: ring.vars().join(", "),
            got: sigma.ring().vars().join(", "),
        });
    }
    if !classical.sigma().is_identity() || !classical.phi().is_identity() {
        return Err(Error::Invalid(
            "twisting starts from a classical Lie algebroid (identity substitution and twist)"
                .into(),
        ));
    }
    let rank = classical.rank();
    let id = RingAuto::identity(&ring);
    // α as a module map of the classical algebroid (identity twist).
    let alpha_map = SemilinearMap::new(&id, alpha)?;
    let cal = classical.calculus();

    // α is a bracket morphism: α[e_i, e_j] = [α e_i, α e_j].
    for i in 0..rank {
        for j in (i + 1)..rank {
            let lhs = alpha_map.apply_mv(&classical.bracket_basis(i, j));
            let rhs = cal.bracket_sections(&alpha_map.column_mv(i), &alpha_map.column_mv(j));
            if lhs != rhs {
                return Err(Error::Invalid(format!(
                    "the bundle map is not a bracket morphism at [e_{}, e_{}]",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    // α intertwines anchor and substitution: a(α e_i)∘σ = σ∘a(e_i), checked
    // on ring generators (both sides are (σ,σ)-derivations).
    for i in 0..rank {
        let a_alpha = cal.anchor_of(&alpha_map.column_mv(i));
        for mu in 0..ring.nvars() {
            let xv = ring.var(mu);
            if a_alpha.apply(&sigma.apply(&xv)) != sigma.apply(&classical.anchor(i).apply(&xv)) {
                return Err(Error::Invalid(format!(
                    "the bundle map does not intertwine the anchor with the substitution at basis section {} on generator {}",
                    i + 1,
                    xv
                )));
            }
        }
    }

    // Assemble the twisted algebroid.
    let phi_matrix: Vec<Vec<Poly>> = alpha_map
        .matrix()
        .iter()
        .map(|row| row.iter().map(|p| sigma.apply(p)).collect())
        .collect();
    let phi = SemilinearMap::new(sigma, phi_matrix)?;
    let anchor: Vec<SigmaDerivation> = (0..rank)
        .map(|i| {
            let coeffs = classical
                .anchor(i)
                .coeffs()
                .iter()
                .map(|h| sigma.apply(h))
                .collect();
            SigmaDerivation::new(sigma, coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut c = vec![vec![vec![ring.zero(); rank]; rank]; rank];
    for i in 0..rank {
        for j in (i + 1)..rank {
            let br = cal.bracket_sections(&alpha_map.column_mv(i), &alpha_map.column_mv(j));
            for k in 0..rank {
                let v = sigma.apply(&br.component(&[k]));
                c[i][j][k] = v.clone();
                c[j][i][k] = -&v;
            }
        }
    }
    HomLieAlgebroid::from_parts(phi, anchor, c)
}
