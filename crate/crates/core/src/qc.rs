//! Reference qubit-circuit simulator.
//!
//! Qubit 0 (the "first qubit") is the most significant bit of the basis
//! index. Two-qubit gate matrices are written in the basis
//! |t₀t₁⟩ with t₀ = `targets[0]` as the high bit.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{unitarity_defect, CMatrix, CVector, ONE, ZERO};

/// Normalized state on `qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitState {
    qubits: usize,
    amplitudes: CVector,
}

impl QubitState {
    /// |0…0⟩.
    pub fn zero(qubits: usize) -> Self {
        Self::basis(qubits, 0)
    }

    pub fn basis(qubits: usize, index: usize) -> Self {
        let mut amplitudes = CVector::zeros(1 << qubits);
        amplitudes[index] = ONE;
        QubitState { qubits, amplitudes }
    }

    pub fn from_amplitudes(qubits: usize, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != 1 << qubits {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for {qubits} qubits",
                amplitudes.len()
            )));
        }
        if (amplitudes.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::DimensionMismatch("state is not normalized".into()));
        }
        Ok(QubitState { qubits, amplitudes })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// ⟨ψ|Π₁|ψ⟩ for the first qubit.
    pub fn prob_first_qubit_one(&self) -> f64 {
        let half = 1 << (self.qubits - 1);
        self.amplitudes.iter().skip(half).map(|z| z.norm_sqr()).sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub name: String,
    pub matrix: CMatrix,
    pub targets: Vec<usize>,
}

impl Gate {
    pub fn new(name: impl Into<String>, matrix: CMatrix, targets: Vec<usize>) -> Result<Self> {
        let arity = targets.len();
        if !(arity == 1 || arity == 2) || matrix.shape() != (1 << arity, 1 << arity) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix on {arity} targets",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if arity == 2 && targets[0] == targets[1] {
            return Err(Error::DimensionMismatch("repeated target".into()));
        }
        if unitarity_defect(&matrix) > 1e-12 {
            return Err(Error::DimensionMismatch("gate matrix is not unitary".into()));
        }
        Ok(Gate {
            name: name.into(),
            matrix,
            targets,
        })
    }

    /// A gate from [`gate_library`].
    pub fn named(name: &str, targets: Vec<usize>) -> Result<Self> {
        let matrix = gate_library()
            .remove(name)
            .ok_or_else(|| Error::Parse(format!("unknown gate {name:?}")))?;
        Gate::new(name, matrix, targets)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        if qubits == 0 {
            return Err(Error::DimensionMismatch("a circuit needs at least one qubit".into()));
        }
        for g in &gates {
            if let Some(&t) = g.targets.iter().find(|&&t| t >= qubits) {
                return Err(Error::DimensionMismatch(format!(
                    "gate {} targets qubit {t} of {qubits}",
                    g.name
                )));
            }
        }
        Ok(Circuit { qubits, gates })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }
}

fn apply_gate(state: &mut CVector, qubits: usize, gate: &Gate) {
    let bit = |q: usize| 1usize << (qubits - 1 - q);
    let m = &gate.matrix;
    match gate.targets[..] {
        [q] => {
            let mask = bit(q);
            for i in 0..state.len() {
                if i & mask == 0 {
                    let (x0, x1) = (state[i], state[i | mask]);
                    state[i] = m[(0, 0)] * x0 + m[(0, 1)] * x1;
                    state[i | mask] = m[(1, 0)] * x0 + m[(1, 1)] * x1;
                }
            }
        }
        [q0, q1] => {
            let (hi, lo) = (bit(q0), bit(q1));
            for i in 0..state.len() {
                if i & (hi | lo) == 0 {
                    let idx = [i, i | lo, i | hi, i | hi | lo];
                    let x = idx.map(|k| state[k]);
                    for (r, &k) in idx.iter().enumerate() {
                        state[k] = (0..4).map(|c| m[(r, c)] * x[c]).sum();
                    }
                }
            }
        }
        _ => unreachable!("gates have one or two targets"),
    }
}

/// W_Γ applied to `input`, gates in order.
pub fn run_circuit(c: &Circuit, input: &QubitState) -> Result<QubitState> {
    if input.qubits != c.qubits {
        return Err(Error::DimensionMismatch(format!(
            "circuit on {} qubits, state on {}",
            c.qubits, input.qubits
        )));
    }
    let mut amplitudes = input.amplitudes.clone();
    for g in &c.gates {
        apply_gate(&mut amplitudes, c.qubits, g);
    }
    Ok(QubitState {
        qubits: c.qubits,
        amplitudes,
    })
}

/// p(Γ) = ⟨0|W†Π₁W|0⟩.
pub fn prob_first_qubit_one(c: &Circuit) -> f64 {
    run_circuit(c, &QubitState::zero(c.qubits))
        .expect("dimensions agree by construction")
        .prob_first_qubit_one()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Phase gate diag(1, e^{2πi/5}), CNOT, Pauli X and Z, Hadamard.
pub fn gate_library() -> BTreeMap<&'static str, CMatrix> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut lib = BTreeMap::new();
    lib.insert(
        "phase",
        CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, Complex64::from_polar(1.0, 2.0 * PI / 5.0)]),
    );
    #[rustfmt::skip]
    let cnot = [
        1.0, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
        0.0, 0.0, 1.0, 0.0,
    ];
    lib.insert("cnot", CMatrix::from_row_slice(4, 4, &cnot.map(|x| c(x, 0.0))));
    lib.insert("x", CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]));
    lib.insert("z", CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]));
    lib.insert("h", CMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]));
    lib
}

/// One gate in the circuit JSON form: a library `name` or an explicit
/// `matrix` of [re, im] pairs (row-major), plus 0-based `targets`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GateJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<Complex64>>>,
    pub targets: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CircuitJson {
    pub qubits: usize,
    pub gates: Vec<GateJson>,
}

/// Row-major nested rows into a matrix.
pub fn matrix_from_rows(rows: &[Vec<Complex64>]) -> Result<CMatrix> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("matrix rows must be square".into()));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

pub fn matrix_to_rows(m: &CMatrix) -> Vec<Vec<Complex64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

impl CircuitJson {
    pub fn to_circuit(&self) -> Result<Circuit> {
        let gates = self
            .gates
            .iter()
            .map(|g| match (&g.name, &g.matrix) {
                (Some(name), None) => Gate::named(name, g.targets.clone()),
                (name, Some(rows)) => Gate::new(
                    name.clone().unwrap_or_else(|| "custom".into()),
                    matrix_from_rows(rows)?,
                    g.targets.clone(),
                ),
                (None, None) => Err(Error::Parse("gate needs a name or a matrix".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        Circuit::new(self.qubits, gates)
    }
}
