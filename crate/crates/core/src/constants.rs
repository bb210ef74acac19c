//! Numerical constants shared by every module.
//!
//! All phase conventions live here. The braid representation uses
//! [`kauffman_a`]; Jones evaluation at `t = e^{2πi/5}` uses [`jones_a`];
//! the closed-form probability formula uses [`formula_a`] together with
//! [`FORMULA_WRITHE_SIGN`] and [`formula_unknot_value`].

use std::f64::consts::PI;

use num_complex::Complex64;

/// Loop value δ = [2]₅ = 2cos(π/5) = (1+√5)/2.
pub fn delta() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// Quantum integer [n]₅ = sin(nπ/5)/sin(π/5).
pub fn q_integer(n: i32) -> f64 {
    (n as f64 * PI / 5.0).sin() / (PI / 5.0).sin()
}

/// Kauffman variable of the unitary braid representation, A = e^{3πi/5}.
///
/// Satisfies δ = −A² − A⁻² with δ > 0, so ρ(σ) = A·1 + A⁻¹·e is unitary.
pub fn kauffman_a() -> Complex64 {
    Complex64::from_polar(1.0, 3.0 * PI / 5.0)
}

/// Bracket variable for Jones evaluation: A = e^{−πi/10}, so that
/// t = A⁻⁴ = e^{2πi/5} and t^{1/2} = A⁻² = e^{πi/5}.
pub fn jones_a() -> Complex64 {
    Complex64::from_polar(1.0, -PI / 10.0)
}

/// The evaluation point t = e^{2πi/5}.
pub fn jones_t() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 5.0)
}

/// The phase a = e^{πi/10} appearing in the probability formula.
pub fn formula_a() -> Complex64 {
    Complex64::from_polar(1.0, PI / 10.0)
}

/// Crossing-sign convention of the probability formula relative to
/// [`crate::link::writhe`]: the formula counts crossings with the mirror
/// sign. Fixed by comparing against the simulated probability on random
/// braids (the identity braid has zero writhe and cannot decide it).
pub const FORMULA_WRITHE_SIGN: i64 = -1;

/// Normalization of V_L inside the probability formula: the value taken by
/// the unknot. The formula uses the unnormalized polynomial
/// V_unknot = −t^{1/2} − t^{−1/2} = −[2]₅; pinned by requiring the identity
/// braid to give probability 1.
pub fn formula_unknot_value() -> f64 {
    -delta()
}

/// Acceptance threshold for a "yes" answer.
pub const BQP_ACCEPT: f64 = 2.0 / 3.0;
/// Rejection threshold for a "no" answer.
pub const BQP_REJECT: f64 = 1.0 / 3.0;

/// Tolerance for algebraic identities.
pub const ALGEBRA_TOL: f64 = 1e-10;
/// Tolerance for oracle cross-checks.
pub const ORACLE_TOL: f64 = 1e-8;

/// Largest crossing count the 2^N state sum accepts.
pub const CROSSING_BUDGET: usize = 22;

/// Per-crossing phase μ relating the plat amplitude to the bracket.
/// Derived once against the state sum (see [`crate::calibration`]) and frozen.
pub fn bracket_crossing_phase() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Normalization κ(n) = δ^{n−1} between the plat amplitude on 2n strands
/// and the unknot-normalized bracket. Derived from the identity braid.
pub fn bracket_normalization(pairs: usize) -> f64 {
    delta().powi(pairs as i32 - 1)
}
