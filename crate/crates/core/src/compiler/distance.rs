//! Phase-invariant operator-norm distance min_{|φ|=1} ‖U − φV‖.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{operator_norm, unitarity_defect, CMatrix};

const SWEEP_POINTS: usize = 256;
const GOLDEN_TOL: f64 = 1e-12;

fn check_dims(u: &CMatrix, v: &CMatrix) -> Result<()> {
    if u.shape() != v.shape() || u.nrows() != u.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "gate distance between {:?} and {:?}",
            u.shape(),
            v.shape()
        )));
    }
    Ok(())
}

/// Distance between two matrices. Unitary pairs use the spectral closed
/// form; everything else goes through [`gate_distance_numeric`].
pub fn gate_distance(u: &CMatrix, v: &CMatrix) -> Result<f64> {
    check_dims(u, v)?;
    if u == v {
        return Ok(0.0);
    }
    if unitarity_defect(u) < UNITARY_TOL && unitarity_defect(v) < UNITARY_TOL {
        return Ok(if u.nrows() == 2 {
            unitary_distance_2x2(u, v)
        } else {
            unitary_distance_spectral(&(v.adjoint() * u))
        });
    }
    gate_distance_numeric(u, v)
}

/// Unitarity defect below which the spectral route is used.
pub(crate) const UNITARY_TOL: f64 = 1e-12;

/// For unitary W: the eigenvalues lie on an arc of width w (2π minus the
/// largest gap between eigenphases); min_φ ‖W − φI‖ = 2·sin(w/4).
pub fn unitary_distance_spectral(w: &CMatrix) -> f64 {
    if w.nrows() == 2 {
        return unitary_distance_from_product([w[(0, 0)], w[(0, 1)], w[(1, 0)], w[(1, 1)]]);
    }
    let eig = w
        .clone()
        .schur()
        .eigenvalues()
        .expect("complex Schur form is triangular");
    let mut angles: Vec<f64> = eig.iter().map(|z| z.arg()).collect();
    angles.sort_by(f64::total_cmp);
    let wrap = angles[0] + 2.0 * PI - angles[angles.len() - 1];
    let gap = angles.windows(2).map(|p| p[1] - p[0]).fold(wrap, f64::max);
    2.0 * ((2.0 * PI - gap) / 4.0).sin()
}

/// Coarse sweep of the phase followed by golden-section refinement. Works
/// for any pair of equal-shape matrices.
pub fn gate_distance_numeric(u: &CMatrix, v: &CMatrix) -> Result<f64> {
    check_dims(u, v)?;
    let f = |theta: f64| operator_norm(&(u - v * Complex64::from_polar(1.0, theta)));
    let step = 2.0 * PI / SWEEP_POINTS as f64;
    let (k, _) = (0..SWEEP_POINTS)
        .map(|k| (k, f(k as f64 * step)))
        .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
    let center = k as f64 * step;
    Ok(golden_section(f, center - step, center + step))
}

fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > GOLDEN_TOL {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}

/// For 2×2 unitaries: with W = V†U having eigenvalue arc θ ∈ [0, π], the
/// optimal phase is the arc midpoint and the distance is 2·sin(θ/4).
///
/// cos(θ/2) = |tr W|/2 and sin(θ/2) = ‖W − (tr W/2)·I‖_F/√2, which stays
/// accurate near θ = 0.
pub fn unitary_distance_2x2(u: &CMatrix, v: &CMatrix) -> f64 {
    let w = v.adjoint() * u;
    let w = [w[(0, 0)], w[(0, 1)], w[(1, 0)], w[(1, 1)]];
    unitary_distance_from_product(w)
}

pub(crate) fn unitary_distance_from_product(w: [Complex64; 4]) -> f64 {
    let half_tr = (w[0] + w[3]) / 2.0;
    let traceless = ((w[0] - half_tr).norm_sqr()
        + w[1].norm_sqr()
        + w[2].norm_sqr()
        + (w[3] - half_tr).norm_sqr())
    .sqrt()
        / SQRT_2;
    let half_theta = traceless.atan2(half_tr.norm());
    2.0 * (half_theta / 2.0).sin()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, random_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pauli_x() -> CMatrix {
        CMatrix::from_row_slice(
            2,
            2,
            &[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        )
    }

    #[test]
    fn basic_values() {
        let i2 = identity(2);
        assert_eq!(gate_distance(&i2, &i2).unwrap(), 0.0);
        let x = pauli_x();
        assert!((gate_distance(&i2, &x).unwrap() - SQRT_2).abs() < 1e-12);
        assert!((gate_distance_numeric(&i2, &x).unwrap() - SQRT_2).abs() < 1e-10);
        assert!(gate_distance(&i2, &identity(3)).is_err());
    }

    #[test]
    fn sweep_identity_vs_x() {
        // max(|1−φ|, |1+φ|) over a fine grid of the circle
        let best = (0..100_000)
            .map(|k| {
                let phi = Complex64::from_polar(1.0, k as f64 * 2.0 * PI / 100_000.0);
                (Complex64::new(1.0, 0.0) - phi).norm().max((Complex64::new(1.0, 0.0) + phi).norm())
            })
            .fold(f64::INFINITY, f64::min);
        assert!((best - SQRT_2).abs() < 1e-8);
    }

    #[test]
    fn closed_form_matches_numeric() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let u = random_unitary(2, &mut rng);
            let v = random_unitary(2, &mut rng);
            let a = unitary_distance_2x2(&u, &v);
            let b = gate_distance_numeric(&u, &v).unwrap();
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
            assert!((a - unitary_distance_2x2(&v, &u)).abs() < 1e-12);
            let phased = &u * Complex64::from_polar(1.0, 1.234);
            assert!(unitary_distance_2x2(&u, &phased) < 1e-12);
        }
        for dim in [3, 4, 6] {
            let u = random_unitary(dim, &mut rng);
            let v = random_unitary(dim, &mut rng);
            let d = gate_distance(&u, &v).unwrap();
            let n = gate_distance_numeric(&u, &v).unwrap();
            assert!((d - n).abs() < 1e-10, "{dim}: {d} vs {n}");
            assert!((d - gate_distance(&v, &u).unwrap()).abs() < 1e-10);
            assert!(gate_distance(&u, &(&u * Complex64::from_polar(1.0, -2.0))).unwrap() < 1e-10);
        }
    }
}
