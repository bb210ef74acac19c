//! Dense complex matrix helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Deviation of `u·u†` from the identity, entrywise.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    max_abs_diff(&(u * u.adjoint()), &identity(u.nrows()))
}

/// Largest singular value.
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    if m.shape() == (2, 2) {
        return operator_norm_2x2([m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]]);
    }
    m.singular_values().max()
}

/// Closed form for 2×2: σ² = (‖M‖²_F ± √(‖M‖⁴_F − 4|det M|²))/2.
pub fn operator_norm_2x2(m: [Complex64; 4]) -> f64 {
    let fro2: f64 = m.iter().map(|z| z.norm_sqr()).sum();
    let det = (m[0] * m[3] - m[1] * m[2]).norm_sqr();
    let disc = (fro2 * fro2 - 4.0 * det).max(0.0).sqrt();
    ((fro2 + disc) / 2.0).sqrt()
}

/// Haar-random unitary via QR of a complex Ginibre matrix with the
/// diagonal phase fix.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let z = CMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) / std::f64::consts::SQRT_2
    });
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { ONE };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_by_two_norm_matches_svd() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let m = CMatrix::from_fn(2, 2, |_, _| {
                Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
            });
            let svd = m.singular_values().max();
            assert!((operator_norm(&m) - svd).abs() < 1e-12);
        }
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dim in 1..6 {
            assert!(unitarity_defect(&random_unitary(dim, &mut rng)) < 1e-12);
        }
    }
}
