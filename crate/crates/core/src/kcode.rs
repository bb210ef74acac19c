//! The k-code condition: W ⊂ V^{⊗n} is a k-code when every operator acting
//! on at most k tensor factors compresses to a scalar on W.
//!
//! Factors are numbered from 1; factor 1 is the most significant digit of
//! a basis index. Operators on fewer than k factors are identity paddings
//! of k-factor ones, so only exact-k supports are scanned.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{max_abs_diff, CMatrix, CVector, ONE, ZERO};
use crate::qc::matrix_to_rows;

/// Largest total dimension d^n accepted.
pub const MAX_TOTAL_DIM: usize = 4096;
/// Default scalarity tolerance, relative to max(1, ‖M‖_F).
pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct Subspace {
    n: usize,
    d: usize,
    /// Columns are the orthonormal basis vectors.
    basis: CMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub n: usize,
    pub d: usize,
    pub basis: Vec<Vec<Complex64>>,
}

fn total_dim(n: usize, d: usize) -> Result<usize> {
    let dim = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(d).filter(|&x| x <= MAX_TOTAL_DIM));
    dim.ok_or(Error::ResourceLimit {
        dim: d.checked_pow(n as u32).unwrap_or(usize::MAX),
        limit: MAX_TOTAL_DIM,
    })
}

impl Subspace {
    pub fn new(n: usize, d: usize, vectors: Vec<CVector>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidSubspace(format!("local dimension {d} < 2")));
        }
        let dim = total_dim(n, d)?;
        if vectors.is_empty() {
            return Err(Error::InvalidSubspace("empty basis".into()));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::InvalidSubspace(format!(
                "vector of length {} in a space of dimension {dim}",
                v.len()
            )));
        }
        let basis = CMatrix::from_columns(&vectors);
        let gram = basis.adjoint() * &basis;
        let dev = max_abs_diff(&gram, &CMatrix::identity(vectors.len(), vectors.len()));
        if dev > 1e-10 {
            return Err(Error::InvalidSubspace(format!("basis is not orthonormal (Gram deviation {dev:.3e})")));
        }
        Ok(Subspace { n, d, basis })
    }

    /// Orthonormalizes `vectors` first (Gram-Schmidt via QR).
    pub fn spanned_by(n: usize, d: usize, vectors: Vec<CVector>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::InvalidSubspace("empty basis".into()));
        }
        let q = CMatrix::from_columns(&vectors).qr().q();
        let cols = (0..vectors.len()).map(|j| q.column(j).into_owned()).collect();
        Self::new(n, d, cols)
    }

    /// Span of computational basis states given as digit strings.
    pub fn from_basis_states(n: usize, d: usize, states: &[Vec<usize>]) -> Result<Self> {
        let dim = total_dim(n, d)?;
        let vectors = states
            .iter()
            .map(|digits| {
                if digits.len() != n || digits.iter().any(|&x| x >= d) {
                    return Err(Error::InvalidSubspace(format!("bad basis state {digits:?}")));
                }
                let idx = digits.iter().fold(0, |acc, &x| acc * d + x);
                let mut v = CVector::zeros(dim);
                v[idx] = ONE;
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, d, vectors)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    /// Same subspace, basis rotated by the unitary `u` (r×r).
    pub fn rotated(&self, u: &CMatrix) -> Result<Self> {
        let b = &self.basis * u;
        Self::new(self.n, self.d, (0..b.ncols()).map(|j| b.column(j).into_owned()).collect())
    }

    pub fn from_json(json: &SubspaceJson) -> Result<Self> {
        let vectors = json.basis.iter().map(|v| CVector::from_column_slice(v)).collect();
        Self::new(json.n, json.d, vectors)
    }

    pub fn to_json(&self) -> SubspaceJson {
        SubspaceJson {
            n: self.n,
            d: self.d,
            basis: (0..self.dim()).map(|j| self.basis.column(j).iter().copied().collect()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorBasis {
    /// |i⟩⟨j| on the support.
    #[default]
    MatrixUnits,
    /// Products X^a Z^b per factor (Pauli matrices for d = 2).
    Weyl,
}

#[derive(Clone, Debug)]
pub struct LocalOperatorSpec {
    /// Sorted 1-based factor indices.
    pub support: Vec<usize>,
    pub operator: CMatrix,
    pub label: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalOperatorJson {
    pub support: Vec<usize>,
    pub label: String,
    pub operator: Vec<Vec<Complex64>>,
}

impl LocalOperatorSpec {
    pub fn to_json(&self) -> LocalOperatorJson {
        LocalOperatorJson {
            support: self.support.clone(),
            label: self.label.clone(),
            operator: matrix_to_rows(&self.operator),
        }
    }
}

/// k-subsets of 1..=n in lexicographic order.
pub fn supports(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for f in start..=n {
            if n - f + 1 < k - cur.len() {
                break;
            }
            cur.push(f);
            rec(f + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(1, n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn digits(mut x: usize, d: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = x % d;
        x /= d;
    }
    out
}

fn weyl_factor(a: usize, b: usize, d: usize) -> (CMatrix, String) {
    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / d as f64);
    let mut m = CMatrix::zeros(d, d);
    for j in 0..d {
        m[((j + a) % d, j)] = omega.powu((b * j) as u32);
    }
    if d == 2 {
        let label = match (a, b) {
            (0, 0) => "I",
            (0, 1) => "Z",
            (1, 0) => "X",
            _ => {
                m *= Complex64::i();
                "Y"
            }
        };
        (m, label.to_string())
    } else {
        (m, format!("X{a}Z{b}"))
    }
}

/// Operator number `index` (0..d^{2k}) on a k-factor support.
fn local_operator(basis: OperatorBasis, d: usize, k: usize, index: usize) -> (CMatrix, String) {
    let dk = d.pow(k as u32);
    match basis {
        OperatorBasis::MatrixUnits => {
            let (i, j) = (index / dk, index % dk);
            let mut m = CMatrix::zeros(dk, dk);
            m[(i, j)] = ONE;
            let fmt = |x: usize| digits(x, d, k).iter().map(|v| v.to_string()).collect::<String>();
            (m, format!("|{}><{}|", fmt(i), fmt(j)))
        }
        OperatorBasis::Weyl => {
            let mut m = CMatrix::from_element(1, 1, ONE);
            let mut label = String::new();
            for p in digits(index, d * d, k) {
                let (f, l) = weyl_factor(p / d, p % d, d);
                m = m.kronecker(&f);
                label.push_str(&l);
            }
            (m, label)
        }
    }
}

/// Spanning set of the operators on exactly k factors (k = 0: the scalar 1).
pub fn local_operator_basis(
    n: usize,
    d: usize,
    k: usize,
    basis: OperatorBasis,
) -> impl Iterator<Item = LocalOperatorSpec> {
    let per_support = d.pow(2 * k as u32);
    supports(n, k).into_iter().flat_map(move |support| {
        (0..per_support).map(move |index| {
            let (operator, label) = local_operator(basis, d, k, index);
            LocalOperatorSpec {
                support: support.clone(),
                operator,
                label,
            }
        })
    })
}

/// Basis vectors reshaped against one support: `slices[i]` is the r×d^{n−k}
/// matrix of amplitudes with the support digits equal to i.
struct SupportSlices {
    slices: Vec<CMatrix>,
}

impl SupportSlices {
    fn new(w: &Subspace, support: &[usize]) -> Self {
        let (n, d) = (w.n, w.d);
        let k = support.len();
        let rest_len = n - k;
        let dk = d.pow(k as u32);
        let drest = d.pow(rest_len as u32);
        let mut slices = vec![CMatrix::zeros(w.dim(), drest); dk];
        let mut in_support = vec![None; n];
        for (pos, &f) in support.iter().enumerate() {
            in_support[f - 1] = Some(pos);
        }
        for x in 0..w.basis.nrows() {
            let ds = digits(x, d, n);
            let (mut i, mut y) = (0, 0);
            for (f, &digit) in ds.iter().enumerate() {
                if in_support[f].is_some() {
                    i = i * d + digit;
                } else {
                    y = y * d + digit;
                }
            }
            for r in 0..w.dim() {
                slices[i][(r, y)] = w.basis[(x, r)];
            }
        }
        SupportSlices { slices }
    }

    /// B†(O ⊗ I)B for O on the support.
    fn compress(&self, op: &CMatrix) -> CMatrix {
        let r = self.slices[0].nrows();
        let mut m = CMatrix::zeros(r, r);
        for i in 0..op.nrows() {
            for j in 0..op.ncols() {
                let c = op[(i, j)];
                if c != ZERO {
                    m += (self.slices[i].conjugate() * self.slices[j].transpose()) * c;
                }
            }
        }
        m
    }
}

/// ‖M − (tr M / r)·I‖_F.
pub fn scalar_deviation(m: &CMatrix) -> f64 {
    let r = m.nrows();
    let mean = m.trace() / r as f64;
    (m - CMatrix::identity(r, r) * mean).norm()
}

fn violates(m: &CMatrix, tol: f64) -> Option<f64> {
    let dev = scalar_deviation(m);
    (dev > tol * m.norm().max(1.0)).then_some(dev)
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub operator: LocalOperatorSpec,
    /// Scalarity deviation of its compression.
    pub deviation: f64,
}

#[derive(Clone, Debug)]
pub struct KCodeVerdict {
    pub k: usize,
    pub holds: bool,
    /// First violating operator in scan order.
    pub witness: Option<Witness>,
}

pub fn is_k_code(w: &Subspace, k: usize, tol: f64) -> Result<KCodeVerdict> {
    is_k_code_with(w, k, tol, OperatorBasis::MatrixUnits)
}

pub fn is_k_code_with(w: &Subspace, k: usize, tol: f64, basis: OperatorBasis) -> Result<KCodeVerdict> {
    if k > w.n {
        return Err(Error::InvalidSubspace(format!("k = {k} exceeds n = {}", w.n)));
    }
    let per_support = w.d.pow(2 * k as u32);
    let witness = supports(w.n, k).into_par_iter().find_map_first(|support| {
        let slices = SupportSlices::new(w, &support);
        (0..per_support).find_map(|index| {
            let (operator, label) = local_operator(basis, w.d, k, index);
            violates(&slices.compress(&operator), tol).map(|deviation| Witness {
                operator: LocalOperatorSpec {
                    support: support.clone(),
                    operator,
                    label,
                },
                deviation,
            })
        })
    });
    Ok(KCodeVerdict {
        k,
        holds: witness.is_none(),
        witness,
    })
}

/// Largest k for which W is a k-code (n if every k passes).
pub fn max_k(w: &Subspace, tol: f64) -> Result<usize> {
    for k in 1..=w.n {
        if !is_k_code(w, k, tol)?.holds {
            return Ok(k - 1);
        }
    }
    Ok(w.n)
}

fn pauli_string_matrix(s: &str) -> CMatrix {
    s.chars().fold(CMatrix::from_element(1, 1, ONE), |acc, c| {
        let (a, b) = match c {
            'I' => (0, 0),
            'Z' => (0, 1),
            'X' => (1, 0),
            'Y' => (1, 1),
            _ => panic!("not a Pauli letter: {c}"),
        };
        acc.kronecker(&weyl_factor(a, b, 2).0)
    })
}

/// Stabilizer generators of the five-qubit code.
pub const FIVE_QUBIT_STABILIZERS: [&str; 4] = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"];

/// The five-qubit distance-3 code: the joint +1 eigenspace of its
/// stabilizers, obtained by projecting |00000⟩ and |11111⟩.
pub fn five_qubit_code() -> Subspace {
    let dim = 32;
    let id = CMatrix::identity(dim, dim);
    let projector = FIVE_QUBIT_STABILIZERS
        .iter()
        .fold(id.clone(), |p, s| p * (&id + pauli_string_matrix(s)) * Complex64::new(0.5, 0.0));
    let vectors = [0usize, 31]
        .iter()
        .map(|&x| {
            let mut e = CVector::zeros(dim);
            e[x] = ONE;
            &projector * e
        })
        .collect();
    Subspace::spanned_by(5, 2, vectors).expect("code space is two-dimensional")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_enumeration() {
        assert_eq!(supports(3, 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(supports(3, 0), vec![Vec::<usize>::new()]);
        assert!(supports(2, 3).is_empty());
    }

    #[test]
    fn operator_counts() {
        assert_eq!(local_operator_basis(2, 2, 1, OperatorBasis::MatrixUnits).count(), 8);
        assert_eq!(local_operator_basis(3, 2, 2, OperatorBasis::MatrixUnits).count(), 48);
        let scalars: Vec<_> = local_operator_basis(3, 2, 0, OperatorBasis::MatrixUnits).collect();
        assert_eq!(scalars.len(), 1);
        assert!(scalars[0].support.is_empty());
        assert_eq!(scalars[0].operator, CMatrix::from_element(1, 1, ONE));
        assert_eq!(local_operator_basis(2, 3, 1, OperatorBasis::Weyl).count(), 18);
    }

    #[test]
    fn paulis() {
        let y = pauli_string_matrix("Y");
        assert!((y[(0, 1)] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((y[(1, 0)] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        for s in FIVE_QUBIT_STABILIZERS {
            let p = pauli_string_matrix(s);
            assert!(max_abs_diff(&(&p * &p), &CMatrix::identity(32, 32)) < 1e-14);
        }
    }

    #[test]
    fn validation() {
        let v = CVector::from_element(2, Complex64::new(1.0, 0.0));
        assert!(matches!(Subspace::new(1, 2, vec![v]), Err(Error::InvalidSubspace(_))));
        assert!(matches!(
            Subspace::from_basis_states(13, 2, &[vec![0; 13]]),
            Err(Error::ResourceLimit { dim: 8192, limit: 4096 })
        ));
        assert!(Subspace::from_basis_states(12, 2, &[vec![0; 12]]).is_ok());
    }

    #[test]
    fn ghz_pair_witness() {
        let w = Subspace::from_basis_states(3, 2, &[vec![0, 0, 0], vec![1, 1, 1]]).unwrap();
        let v = is_k_code_with(&w, 1, DEFAULT_TOL, OperatorBasis::Weyl).unwrap();
        assert!(!v.holds);
        let wit = v.witness.unwrap();
        assert_eq!(wit.operator.support, vec![1]);
        assert_eq!(wit.operator.label, "Z");
        assert!((wit.deviation - 2f64.sqrt()).abs() < 1e-12);
        let v = is_k_code(&w, 1, DEFAULT_TOL).unwrap();
        assert_eq!(v.witness.unwrap().operator.label, "|0><0|");
        assert_eq!(max_k(&w, DEFAULT_TOL).unwrap(), 0);
    }

    #[test]
    fn five_qubit() {
        let w = five_qubit_code();
        assert_eq!(w.dim(), 2);
        for s in FIVE_QUBIT_STABILIZERS {
            let p = pauli_string_matrix(s);
            assert!(max_abs_diff(&(&p * w.basis()), w.basis()) < 1e-12);
        }
        assert!(is_k_code(&w, 2, DEFAULT_TOL).unwrap().holds);
        let v = is_k_code_with(&w, 3, DEFAULT_TOL, OperatorBasis::Weyl).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness.unwrap().operator.support.len(), 3);
        assert_eq!(max_k(&w, DEFAULT_TOL).unwrap(), 2);
    }
}
