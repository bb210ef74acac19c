//! The anyonic computer: 2n type-1 anyons on a disk, grouped in batches of
//! four consecutive anyons, each batch holding one qubit in the fusion
//! channel (0 or 2) of its first pair.
//!
//! The state lives on `fusion_paths(2n, 0)`. Measuring pair i means the
//! projector e_{2i−1}/δ onto the vacuum channel of anyons 2i−1, 2i.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::anyon::Label;
use crate::constants::{delta, formula_a, formula_unknot_value, FORMULA_WRITHE_SIGN};
use crate::error::{Error, Result};
use crate::linalg::{CVector, ONE};
use crate::link::{
    count_components, count_minima, insert_measurement_loop, jones_at, plat_conjugate, writhe,
    LinkDiagram, LinkStats, Orientation,
};
use crate::rep::{cup_path, JonesRep};
use crate::word::BraidWord;

/// Qubit readout string over {0, 2}, one character per full batch.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ComputationalBasisIndex(String);

impl ComputationalBasisIndex {
    pub fn new(bits: &str) -> Result<Self> {
        if bits.chars().all(|c| c == '0' || c == '2') {
            Ok(ComputationalBasisIndex(bits.to_string()))
        } else {
            Err(Error::Parse(format!("computational strings use 0 and 2, got {bits:?}")))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The fusion path (0,1,x₁,1,0,1,x₂,1,0,…) for `anyons` anyons; a
    /// trailing pair outside any batch sits in the vacuum.
    pub fn path(&self, anyons: usize) -> Vec<u8> {
        let bits = self.0.as_bytes();
        (0..=anyons)
            .map(|j| match j % 4 {
                1 | 3 => 1,
                0 => 0,
                _ => bits.get(j / 4).map(|b| b - b'0').unwrap_or(0),
            })
            .collect()
    }
}

impl fmt::Display for ComputationalBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementResult {
    pub prob0: f64,
}

#[derive(Clone, Debug)]
pub struct AnyonRegister {
    rep: Arc<JonesRep>,
    state: CVector,
}

/// Prepares 2n type-1 anyons pulled pairwise from the vacuum: the single
/// path (0,1,0,1,…,0).
pub fn initialize(anyons: usize) -> Result<AnyonRegister> {
    if anyons % 2 != 0 {
        return Err(Error::OddStrands(anyons));
    }
    if anyons < 4 {
        return Err(Error::TooFewAnyons { min: 4, got: anyons });
    }
    let rep = Arc::new(JonesRep::new(anyons, Label::VACUUM));
    let mut state = CVector::zeros(rep.dim());
    let init = rep.basis().index_of(&cup_path(anyons)).expect("cup path is admissible");
    state[init] = ONE;
    Ok(AnyonRegister { rep, state })
}

impl AnyonRegister {
    pub fn anyons(&self) -> usize {
        self.rep.anyons()
    }

    pub fn pairs(&self) -> usize {
        self.anyons() / 2
    }

    /// Number of complete batches of four.
    pub fn qubits(&self) -> usize {
        self.anyons() / 4
    }

    pub fn state(&self) -> &CVector {
        &self.state
    }

    pub fn representation(&self) -> &JonesRep {
        &self.rep
    }

    /// New register with the state replaced (must match the basis size).
    pub fn with_state(&self, state: CVector) -> Result<AnyonRegister> {
        if state.len() != self.rep.dim() {
            return Err(Error::DimensionMismatch(format!(
                "state of length {} for a {}-dimensional register",
                state.len(),
                self.rep.dim()
            )));
        }
        Ok(AnyonRegister {
            rep: Arc::clone(&self.rep),
            state,
        })
    }

    pub fn execute_braid(&self, w: &BraidWord) -> Result<AnyonRegister> {
        if w.strands() != self.anyons() {
            return Err(Error::StrandMismatch {
                expected: self.anyons(),
                got: w.strands(),
            });
        }
        Ok(AnyonRegister {
            rep: Arc::clone(&self.rep),
            state: self.rep.apply_word(w, &self.state)?,
        })
    }

    /// ⟨ψ| e_{2i−1}/δ |ψ⟩ for 1-based pair `i`.
    pub fn measure_pair(&self, pair: usize) -> Result<MeasurementResult> {
        if pair == 0 || pair > self.pairs() {
            return Err(Error::InvalidPair {
                pair,
                pairs: self.pairs(),
            });
        }
        let e = self.rep.tl(2 * pair - 1)?;
        let projected = e * &self.state / Complex64::from(delta());
        Ok(MeasurementResult {
            prob0: self.state.dotc(&projected).re,
        })
    }

    fn computational_indices(&self) -> Vec<(ComputationalBasisIndex, usize)> {
        let q = self.qubits();
        (0..1usize << q)
            .map(|m| {
                let bits: String = (0..q)
                    .map(|b| if m >> (q - 1 - b) & 1 == 1 { '2' } else { '0' })
                    .collect();
                let idx = ComputationalBasisIndex(bits);
                let pos = self
                    .rep
                    .basis()
                    .index_of(&idx.path(self.anyons()))
                    .expect("computational paths are admissible");
                (idx, pos)
            })
            .collect()
    }

    /// Weight outside the computational summand.
    pub fn leakage(&self) -> f64 {
        let inside: f64 = self
            .computational_indices()
            .iter()
            .map(|(_, pos)| self.state[*pos].norm_sqr())
            .sum();
        (self.state.norm_squared() - inside).max(0.0)
    }

    /// Probability of each computational string (diagonal readout).
    pub fn readout_distribution(&self) -> BTreeMap<ComputationalBasisIndex, f64> {
        self.computational_indices()
            .into_iter()
            .map(|(idx, pos)| (idx, self.state[pos].norm_sqr()))
            .collect()
    }
}

/// Everything the closed-form route computes for one braid.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JonesProbability {
    pub prob0: f64,
    /// Imaginary part left over by the formula; zero up to roundoff.
    pub residual_imag: f64,
    pub stats: LinkStats,
    pub jones: Complex64,
}

/// The measured link L: plat closure of b, γ around pair 1, b⁻¹.
pub fn measurement_link(b: &BraidWord) -> Result<LinkDiagram> {
    insert_measurement_loop(&plat_conjugate(b)?, 1)
}

/// Conventions entering the closed-form probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormulaConventions {
    /// Multiplies the right-hand-rule writhe before it enters the formula.
    pub writhe_sign: i64,
    /// Value of V on the unknot.
    pub unknot_value: f64,
}

impl Default for FormulaConventions {
    fn default() -> Self {
        FormulaConventions {
            writhe_sign: FORMULA_WRITHE_SIGN,
            unknot_value: formula_unknot_value(),
        }
    }
}

/// prob(0) = 1/(1+[2]²)·(1 + (−1)^{c+w}(−a)^{3w} V_L / [2]^{m−2}).
pub fn jones_formula(stats: &LinkStats, jones: Complex64, conv: FormulaConventions) -> Complex64 {
    let d = delta();
    let w = conv.writhe_sign * stats.writhe;
    let sign = if (stats.components as i64 + w).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let v = jones * conv.unknot_value;
    let twist = (-formula_a()).powi(3 * w as i32);
    (1.0 + twist * v * sign / d.powi(stats.minima as i32 - 2)) / (1.0 + d * d)
}

pub fn prob_via_jones_with(
    b: &BraidWord,
    orientation: &Orientation,
    conv: FormulaConventions,
) -> Result<JonesProbability> {
    let link = measurement_link(b)?;
    let stats = LinkStats {
        components: count_components(&link),
        writhe: writhe(&link, orientation),
        minima: count_minima(&link),
    };
    let jones = jones_at(&link, orientation)?;
    let p = jones_formula(&stats, jones, conv);
    Ok(JonesProbability {
        prob0: p.re,
        residual_imag: p.im,
        stats,
        jones,
    })
}

/// prob(0) of pair 1 after braiding `b`, from c, w, m and V_L of
/// plat(b·γ·b⁻¹) alone.
pub fn prob_via_jones(b: &BraidWord) -> Result<JonesProbability> {
    let link = measurement_link(b)?;
    prob_via_jones_with(b, &Orientation::default_for(&link), FormulaConventions::default())
}

/// The four-step pipeline: initialize, braid, measure pair 1.
pub fn simulate(b: &BraidWord) -> Result<AnyonRegister> {
    initialize(b.strands())?.execute_braid(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::kauffman_bracket;

    fn word(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn initialize_checks_and_state() {
        assert!(matches!(initialize(5), Err(Error::OddStrands(5))));
        assert!(matches!(initialize(2), Err(Error::TooFewAnyons { .. })));
        let r = initialize(4).unwrap();
        assert_eq!(r.state().len(), 2);
        assert_eq!(r.state()[0], ONE);
        // both pair projectors fix the initial state
        for i in [1usize, 3] {
            let e = r.representation().tl(i).unwrap();
            let v = e * r.state() / Complex64::from(delta());
            assert!((v - r.state()).norm() < 1e-12);
        }
        for n in [4, 6, 8, 10] {
            let r = initialize(n).unwrap();
            assert!(r.leakage().abs() < 1e-15);
            for pair in 1..=r.pairs() {
                assert!((r.measure_pair(pair).unwrap().prob0 - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn braiding_and_measurement() {
        let r = initialize(4).unwrap();
        assert_eq!(r.execute_braid(&BraidWord::identity(4)).unwrap().state(), r.state());
        assert!(matches!(
            r.execute_braid(&BraidWord::identity(6)),
            Err(Error::StrandMismatch { .. })
        ));
        let twisted = r.execute_braid(&word(4, &[1])).unwrap();
        assert!((twisted.measure_pair(1).unwrap().prob0 - 1.0).abs() < 1e-12);
        // σ₂² on 4 anyons: ρ(σ₂)² = A² + (2 + A⁻²δ)e₂ and ⟨0|e₂|0⟩ = 1/δ,
        // ⟨2|e₂|0⟩ = 1/√δ, so the channel-2 amplitude is (2 + A⁻²δ)/√δ.
        let a = crate::constants::kauffman_a();
        let d = delta();
        let amp2 = (2.0 + a.powi(-2) * d) / d.sqrt();
        let expected = 1.0 - amp2.norm_sqr();
        let p = r.execute_braid(&word(4, &[2, 2])).unwrap().measure_pair(1).unwrap().prob0;
        assert!(p > 0.0 && p < 1.0);
        assert!((p - expected).abs() < 1e-12, "{p} vs {expected}");
        assert!(matches!(r.measure_pair(3), Err(Error::InvalidPair { .. })));
        assert!(matches!(r.measure_pair(0), Err(Error::InvalidPair { .. })));
    }

    #[test]
    fn leakage_and_readout() {
        let r = initialize(8).unwrap();
        let dist = r.readout_distribution();
        assert_eq!(dist.len(), 4);
        assert_eq!(dist[&ComputationalBasisIndex::new("00").unwrap()], 1.0);
        let intra = r.execute_braid(&word(8, &[1, 2, -3, 2, 5, 6, 6, -7])).unwrap();
        assert!(intra.leakage() < 1e-12);
        let total: f64 = intra.readout_distribution().values().sum();
        assert!((total - 1.0).abs() < 1e-10);
        let marginal: f64 = intra
            .readout_distribution()
            .iter()
            .filter(|(k, _)| k.as_str().starts_with('0'))
            .map(|(_, p)| p)
            .sum();
        assert!((marginal - intra.measure_pair(1).unwrap().prob0).abs() < 1e-10);
        let cross = r.execute_braid(&word(8, &[4])).unwrap();
        assert!(cross.leakage() > 1e-3);
        let total: f64 = cross.readout_distribution().values().sum();
        assert!((total + cross.leakage() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn computational_paths() {
        let idx = ComputationalBasisIndex::new("20").unwrap();
        assert_eq!(idx.path(8), vec![0, 1, 2, 1, 0, 1, 0, 1, 0]);
        assert_eq!(idx.path(10), vec![0, 1, 2, 1, 0, 1, 0, 1, 0, 1, 0]);
        assert!(ComputationalBasisIndex::new("01").is_err());
    }

    #[test]
    fn formula_prefactor() {
        let d = delta();
        assert!((1.0 / (1.0 + d * d) - 0.2763932).abs() < 1e-7);
        assert!((1.0 / (2.0 + d) - 1.0 / (1.0 + d * d)).abs() < 1e-15);
    }

    #[test]
    fn identity_braid_gives_one() {
        for n in [4, 6, 8] {
            let j = prob_via_jones(&BraidWord::identity(n)).unwrap();
            assert!((j.prob0 - 1.0).abs() < 1e-10, "{n}: {j:?}");
            assert_eq!(j.stats.minima, n / 2 + 1);
            assert_eq!(j.stats.components, n / 2 + 1);
        }
    }

    #[test]
    fn identity_loop_is_split() {
        // γ around the first cup contributes a free factor δ
        let plain = crate::link::plat_closure(&BraidWord::identity(4)).unwrap();
        let looped = insert_measurement_loop(&plain, 1).unwrap();
        let a = crate::constants::kauffman_a();
        let lhs = kauffman_bracket(&looped, a).unwrap();
        let rhs = kauffman_bracket(&plain, a).unwrap() * delta();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn formula_matches_simulation_on_small_words() {
        for letters in [vec![2], vec![2, 2], vec![2, -1, 2], vec![1, 2, 3, -2, 1], vec![-3, 2, 2, 1]] {
            let b = word(4, &letters);
            let sim = simulate(&b).unwrap().measure_pair(1).unwrap().prob0;
            let j = prob_via_jones(&b).unwrap();
            assert!((sim - j.prob0).abs() < 1e-8, "{letters:?}: {sim} vs {j:?}");
            assert!(j.residual_imag.abs() < 1e-8);
        }
    }
}
