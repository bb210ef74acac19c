//! Re-derivation of the frozen phase conventions from independent routes.
//!
//! The constants in [`crate::constants`] were fixed once by these
//! procedures; the tests here re-run them and compare.

use num_complex::Complex64;
use rand::Rng;

use crate::constants::{delta, kauffman_a};
use crate::error::Result;
use crate::link::{kauffman_bracket, plat_closure, Orientation};
use crate::rep::plat_amplitude;
use crate::topo::{measurement_link, prob_via_jones_with, simulate, FormulaConventions};
use crate::word::BraidWord;

#[derive(Clone, Copy, Debug)]
pub struct BracketCalibration {
    /// κ for the given number of pairs.
    pub kappa: Complex64,
    /// μ, the per-letter phase.
    pub mu: Complex64,
}

/// κ from the identity braid, μ from a single generator, both by comparing
/// the plat amplitude with the state-sum bracket.
pub fn calibrate_bracket(pairs: usize) -> Result<BracketCalibration> {
    let a = kauffman_a();
    let id = BraidWord::identity(2 * pairs);
    let kappa = kauffman_bracket(&plat_closure(&id)?, a)? / plat_amplitude(&id)?;
    let one = BraidWord::new(2 * pairs, vec![1])?;
    let mu = kauffman_bracket(&plat_closure(&one)?, a)? / (kappa * plat_amplitude(&one)?);
    Ok(BracketCalibration { kappa, mu })
}

/// Candidate conventions, tried in order.
pub fn formula_candidates() -> Vec<FormulaConventions> {
    let d = delta();
    let mut out = Vec::new();
    for writhe_sign in [1, -1] {
        for unknot_value in [1.0, -d, d, -1.0] {
            out.push(FormulaConventions {
                writhe_sign,
                unknot_value,
            });
        }
    }
    out
}

/// Largest |prob_formula − prob_simulated| over `words`.
pub fn formula_error(words: &[BraidWord], conv: FormulaConventions) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for b in words {
        let sim = simulate(b)?.measure_pair(1)?.prob0;
        let link = measurement_link(b)?;
        let j = prob_via_jones_with(b, &Orientation::default_for(&link), conv)?;
        worst = worst.max((j.prob0 - sim).abs()).max(j.residual_imag.abs());
    }
    Ok(worst)
}

/// First candidate that reproduces the simulation on the identity braid and
/// on `samples` random words per register size.
pub fn derive_formula_conventions<R: Rng + ?Sized>(
    samples: usize,
    rng: &mut R,
) -> Result<Option<FormulaConventions>> {
    let mut words = Vec::new();
    for n in [4usize, 6] {
        words.push(BraidWord::identity(n));
        for _ in 0..samples {
            let len = rng.random_range(1..=6);
            words.push(BraidWord::random(n, len, rng));
        }
    }
    for conv in formula_candidates() {
        if formula_error(&words, conv)? < 1e-8 {
            return Ok(Some(conv));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{
        bracket_crossing_phase, bracket_normalization, formula_unknot_value, FORMULA_WRITHE_SIGN,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bracket_constants_rederive() {
        for pairs in 1..=4 {
            let c = calibrate_bracket(pairs).unwrap();
            assert!((c.kappa - bracket_normalization(pairs)).norm() < 1e-10, "{pairs}: {c:?}");
            assert!((c.mu - bracket_crossing_phase()).norm() < 1e-10, "{pairs}: {c:?}");
        }
    }

    #[test]
    fn formula_constants_rederive() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let conv = derive_formula_conventions(8, &mut rng).unwrap().unwrap();
        assert_eq!(conv.writhe_sign, FORMULA_WRITHE_SIGN);
        assert!((conv.unknot_value - formula_unknot_value()).abs() < 1e-15);
    }

    #[test]
    fn other_conventions_fail() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let words: Vec<_> = (0..20).map(|_| BraidWord::random(4, 5, &mut rng)).collect();
        for conv in formula_candidates() {
            let err = formula_error(&words, conv).unwrap();
            if conv == FormulaConventions::default() {
                assert!(err < 1e-8);
            } else {
                assert!(err > 1e-3, "{conv:?} also fits: {err}");
            }
        }
    }
}
