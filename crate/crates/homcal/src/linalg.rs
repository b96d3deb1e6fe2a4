//! Small exact linear-algebra helpers shared across the crate.
//!
//! Matrices here are tiny (module ranks ≤ ~8), so clarity wins over
//! asymptotics: rational inverses use Gauss–Jordan elimination and
//! polynomial determinants use Laplace expansion.

use num::{BigRational, Zero};

use crate::ring::Poly;

/// Inverse of a square rational matrix, or `None` if singular.
pub(crate) fn invert_rational(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    // Augmented [m | I], reduced in place.
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::from_integer(1.into())
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &pivot;
            inv[col][j] /= &pivot;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in 0..n {
                    let t = &a[col][j] * &factor;
                    a[r][j] -= t;
                    let t = &inv[col][j] * &factor;
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// Determinant of a square polynomial matrix by Laplace expansion along the
/// first row.
pub(crate) fn det_poly(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let ring = m[0][0].ring();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = ring.zero();
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = (1..n)
            .map(|r| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| m[r][c].clone())
                    .collect()
            })
            .collect();
        let cofactor = entry * &det_poly(&minor);
        if j % 2 == 0 {
            det = &det + &cofactor;
        } else {
            det = &det - &cofactor;
        }
    }
    det
}

/// Inverse of a polynomial matrix whose determinant is a nonzero rational
/// constant (the only case in which the inverse again has polynomial
/// entries). Returns the inverse together with the determinant.
pub(crate) fn invert_poly_unit_det(
    m: &[Vec<Poly>],
) -> crate::Result<(Vec<Vec<Poly>>, BigRational)> {
    let n = m.len();
    let ring = m[0][0].ring();
    let det = det_poly(m);
    let det_q = match det.as_constant() {
        Some(q) if !q.is_zero() => q,
        _ => {
            return Err(crate::Error::NotInvertible {
                det: det.to_string(),
            })
        }
    };
    // adj(m)[i][j] = (−1)^{i+j} · det(minor of m with row j, column i removed)
    let mut inv = vec![vec![ring.zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<Poly>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| m[r][c].clone())
                        .collect()
                })
                .collect();
            let cof = if n == 1 {
                ring.one()
            } else {
                det_poly(&minor)
            };
            let signed = if (i + j) % 2 == 0 { cof } else { -cof };
            inv[i][j] = signed.scale(&det_q.recip());
        }
    }
    Ok((inv, det_q))
}

/// Matrix–matrix product of rational matrices.
pub(crate) fn mul_rational(
    a: &[Vec<BigRational>],
    b: &[Vec<BigRational>],
) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|l| &a[i][l] * &b[l][j]).sum())
                .collect()
        })
        .collect()
}

/// Transpose of a rational matrix.
pub(crate) fn transpose_rational(a: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}
