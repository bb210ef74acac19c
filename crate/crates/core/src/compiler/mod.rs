//! Braid words approximating gates on the computational summand of one
//! batch (2×2) or two adjacent batches (4×4).

mod distance;
mod search;
mod sk;

pub use distance::{
    gate_distance, gate_distance_numeric, unitary_distance_2x2, unitary_distance_spectral,
};
pub use search::{compile, compile_words, letter_rank};
pub use sk::{group_commutator, sk_refine, sk_refine_with, SK_BASE_THRESHOLD, SK_NET_DEPTH};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::anyon::Label;
use crate::error::{Error, Result};
use crate::linalg::{unitarity_defect, CMatrix};
use crate::qc::{matrix_from_rows, matrix_to_rows};
use crate::rep::JonesRep;
use crate::topo::ComputationalBasisIndex;
use crate::word::BraidWord;

/// Default bound on the weight a compiled two-batch word may leak.
pub const DEFAULT_LEAKAGE_TOL: f64 = 1e-2;

#[derive(Clone, Debug)]
pub struct GateTarget {
    matrix: CMatrix,
    scope: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GateTargetJson {
    pub matrix: Vec<Vec<Complex64>>,
    #[serde(default = "default_scope")]
    pub scope: Vec<usize>,
}

fn default_scope() -> Vec<usize> {
    vec![1]
}

impl GateTarget {
    /// `scope` lists 1-based batch indices: one batch, or two adjacent ones.
    pub fn new(matrix: CMatrix, scope: Vec<usize>) -> Result<Self> {
        check_scope(&scope)?;
        let dim = 1usize << scope.len();
        if matrix.shape() != (dim, dim) {
            return Err(Error::DimensionMismatch(format!(
                "a {}-batch target must be {dim}×{dim}, got {:?}",
                scope.len(),
                matrix.shape()
            )));
        }
        let defect = unitarity_defect(&matrix);
        if defect > 1e-12 {
            return Err(Error::InvalidTarget(format!("not unitary (defect {defect:.3e})")));
        }
        Ok(GateTarget { matrix, scope })
    }

    pub fn single(matrix: CMatrix) -> Result<Self> {
        Self::new(matrix, vec![1])
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn scope(&self) -> &[usize] {
        &self.scope
    }

    pub fn from_json(json: &GateTargetJson) -> Result<Self> {
        Self::new(matrix_from_rows(&json.matrix)?, json.scope.clone())
    }

    pub fn to_json(&self) -> GateTargetJson {
        GateTargetJson {
            matrix: matrix_to_rows(&self.matrix),
            scope: self.scope.clone(),
        }
    }
}

fn check_scope(scope: &[usize]) -> Result<()> {
    let ok = match scope {
        [b] => *b >= 1,
        [b, c] => *b >= 1 && *c == b + 1,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidTarget(format!(
            "scope must be one batch or two adjacent batches (1-based), got {scope:?}"
        )))
    }
}

/// Local model of a scope: 4·|scope| anyons in sector 0, with the
/// computational paths picked out.
pub(crate) struct ScopeModel {
    pub rep: JonesRep,
    /// Position of each computational string in the local path basis.
    pub computational: Vec<usize>,
    /// Global generator index of local generator 1.
    pub offset: usize,
    pub strands: usize,
}

impl ScopeModel {
    pub fn new(scope: &[usize]) -> Result<Self> {
        check_scope(scope)?;
        let anyons = 4 * scope.len();
        let rep = JonesRep::new(anyons, Label::VACUUM);
        let q = scope.len();
        let computational = (0..1usize << q)
            .map(|m| {
                let bits: String = (0..q)
                    .map(|b| if m >> (q - 1 - b) & 1 == 1 { '2' } else { '0' })
                    .collect();
                let path = ComputationalBasisIndex::new(&bits)?.path(anyons);
                Ok(rep.basis().index_of(&path).expect("computational path is admissible"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ScopeModel {
            rep,
            computational,
            offset: 4 * (scope[0] - 1),
            strands: 4 * scope[scope.len() - 1],
        })
    }

    pub fn generators(&self) -> usize {
        self.rep.anyons() - 1
    }

    pub fn allowed(&self) -> Vec<usize> {
        (1..=self.generators()).map(|g| g + self.offset).collect()
    }

    /// Local letters of a global word, or OutOfScope.
    pub fn localize(&self, w: &BraidWord) -> Result<Vec<i32>> {
        w.letters()
            .iter()
            .map(|&l| {
                let g = l.unsigned_abs() as usize;
                if g > self.offset && g <= self.offset + self.generators() {
                    Ok(l.signum() * (g - self.offset) as i32)
                } else {
                    Err(Error::OutOfScope {
                        letter: l,
                        allowed: self.allowed(),
                    })
                }
            })
            .collect()
    }

    pub fn globalize(&self, local: &[i32]) -> BraidWord {
        let letters = local
            .iter()
            .map(|&l| l.signum() * (l.unsigned_abs() as usize + self.offset) as i32)
            .collect();
        BraidWord::new(self.strands, letters).expect("scope letters fit the scope strands")
    }

    /// Computational block of a local matrix and 1 − σ_min² of that block.
    pub fn compress(&self, full: &CMatrix) -> (CMatrix, f64) {
        let k = self.computational.len();
        let block = CMatrix::from_fn(k, k, |i, j| full[(self.computational[i], self.computational[j])]);
        let leakage = if full.nrows() == k {
            0.0
        } else {
            let smin = block.singular_values().min();
            (1.0 - smin * smin).max(0.0)
        };
        (block, leakage)
    }

    pub fn local_image(&self, local: &[i32]) -> Result<CMatrix> {
        self.rep.word(&BraidWord::new(self.rep.anyons(), local.to_vec())?)
    }
}

/// Image of a word on the computational summand of `scope`.
#[derive(Clone, Debug)]
pub struct ScopeImage {
    pub matrix: CMatrix,
    /// Largest weight any computational input can lose.
    pub leakage_bound: f64,
}

pub fn scope_image(w: &BraidWord, scope: &[usize]) -> Result<ScopeImage> {
    let model = ScopeModel::new(scope)?;
    if w.strands() < model.strands {
        return Err(Error::StrandMismatch {
            expected: model.strands,
            got: w.strands(),
        });
    }
    let full = model.local_image(&model.localize(w)?)?;
    let (matrix, leakage_bound) = model.compress(&full);
    Ok(ScopeImage { matrix, leakage_bound })
}

/// 2×2 image of a word in the generators of one batch, basis {0, 2}.
pub fn batch_image(w: &BraidWord, batch: usize) -> Result<CMatrix> {
    Ok(scope_image(w, &[batch])?.matrix)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompilationResult {
    pub word: BraidWord,
    pub distance: f64,
    pub leakage_bound: f64,
    pub depth_searched: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompilationSidecar {
    pub distance: f64,
    pub leakage_bound: f64,
    pub depth_searched: usize,
}

impl CompilationResult {
    pub fn sidecar(&self) -> CompilationSidecar {
        CompilationSidecar {
            distance: self.distance,
            leakage_bound: self.leakage_bound,
            depth_searched: self.depth_searched,
        }
    }

    /// Recomputes image, distance and leakage from the word alone.
    pub fn recompute(&self, target: &GateTarget) -> Result<(f64, f64)> {
        let img = scope_image(&self.word, target.scope())?;
        Ok((gate_distance(&img.matrix, target.matrix())?, img.leakage_bound))
    }
}
