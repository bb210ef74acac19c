//! Labels of the level-3 SU(2) theory, their fusion rules and quantum
//! dimensions, and the fusion-path basis of the disk with n type-1 anyons.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::q_integer;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Level of the theory; labels run over 0..=LEVEL.
pub const LEVEL: u8 = 3;

/// Anyon charge, 0 (vacuum) through 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Label(u8);

impl Label {
    pub const VACUUM: Label = Label(0);
    pub const ONE: Label = Label(1);
    pub const TWO: Label = Label(2);
    pub const THREE: Label = Label(3);

    pub fn new(value: u8) -> Result<Self> {
        if value <= LEVEL {
            Ok(Label(value))
        } else {
            Err(Error::InvalidLabel(value))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = Label> {
        (0..=LEVEL).map(Label)
    }
}

impl TryFrom<u8> for Label {
    type Error = Error;
    fn try_from(value: u8) -> Result<Self> {
        Label::new(value)
    }
}

impl From<Label> for u8 {
    fn from(l: Label) -> u8 {
        l.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Admissible outcomes of fusing `a` with `b`, in increasing order:
/// |a−b| ≤ c ≤ min(a+b, 2k−a−b) with a+b+c even.
pub fn fuse(a: Label, b: Label) -> Vec<Label> {
    let (a, b) = (a.0 as i32, b.0 as i32);
    let hi = (a + b).min(2 * LEVEL as i32 - a - b);
    ((a - b).abs()..=hi)
        .step_by(2)
        .map(|c| Label(c as u8))
        .collect()
}

/// Quantum dimension [a+1]₅.
pub fn qdim(a: Label) -> f64 {
    q_integer(a.0 as i32 + 1)
}

/// A sequence of running fusion totals (p₀ = 0, p₁, …, pₙ), each step
/// fusing one more type-1 anyon.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FusionPath(Vec<u8>);

impl FusionPath {
    pub fn new(labels: Vec<u8>) -> Result<Self> {
        if labels.first() != Some(&0) {
            return Err(Error::Parse("fusion paths start at the vacuum".into()));
        }
        for w in labels.windows(2) {
            let next = Label::new(w[1])?;
            if !fuse(Label::new(w[0])?, Label::ONE).contains(&next) {
                return Err(Error::Parse(format!("inadmissible step {} -> {}", w[0], w[1])));
            }
        }
        Ok(FusionPath(labels))
    }

    pub fn labels(&self) -> &[u8] {
        &self.0
    }

    pub fn label(&self, position: usize) -> Label {
        Label(self.0[position])
    }

    /// Number of anyons n (the path has n+1 entries).
    pub fn anyons(&self) -> usize {
        self.0.len() - 1
    }

    pub fn end(&self) -> Label {
        Label(*self.0.last().expect("paths are nonempty"))
    }
}

impl fmt::Display for FusionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// All fusion paths for `n` type-1 anyons ending at `end`, in lexicographic
/// order of their label sequences.
pub fn fusion_paths(n: usize, end: Label) -> Vec<FusionPath> {
    fn extend(prefix: &mut Vec<u8>, n: usize, end: u8, out: &mut Vec<FusionPath>) {
        let pos = prefix.len() - 1;
        if pos == n {
            if *prefix.last().unwrap() == end {
                out.push(FusionPath(prefix.clone()));
            }
            return;
        }
        let remaining = n - pos;
        let cur = Label(*prefix.last().unwrap());
        for next in fuse(cur, Label::ONE) {
            // next must still reach `end` in the remaining steps
            if (next.0 as i64 - end as i64).unsigned_abs() as usize <= remaining - 1 {
                prefix.push(next.0);
                extend(prefix, n, end, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if (n + end.0 as usize) % 2 != 0 {
        return out;
    }
    extend(&mut vec![0], n, end.0, &mut out);
    out
}

/// Path count by powers of the adjacency matrix of the graph 0–1–2–3,
/// independent of the enumeration in [`fusion_paths`].
///
/// For 2m anyons in the vacuum sector this gives 1, 2, 5, 13, 34, …:
/// every other Fibonacci number, F(2m−1) with F(1) = F(2) = 1.
pub fn path_count_transfer(n: usize, end: Label) -> u64 {
    let size = LEVEL as usize + 1;
    let mut counts = vec![0u64; size];
    counts[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u64; size];
        for (a, &c) in counts.iter().enumerate() {
            if a > 0 {
                next[a - 1] += c;
            }
            if a + 1 < size {
                next[a + 1] += c;
            }
        }
        counts = next;
    }
    counts[end.0 as usize]
}

/// The modular S-matrix, S_ab = √(2/5)·sin((a+1)(b+1)π/5).
pub fn s_matrix() -> CMatrix {
    let size = LEVEL as usize + 1;
    let norm = (2.0 / (LEVEL as f64 + 2.0)).sqrt();
    CMatrix::from_fn(size, size, |a, b| {
        let angle = ((a + 1) * (b + 1)) as f64 * std::f64::consts::PI / (LEVEL as f64 + 2.0);
        Complex64::new(norm * angle.sin(), 0.0)
    })
}

/// Ordered fusion-path basis with a reverse index.
#[derive(Clone, Debug)]
pub struct PathBasis {
    anyons: usize,
    sector: Label,
    paths: Vec<FusionPath>,
    index: HashMap<Vec<u8>, usize>,
}

impl PathBasis {
    pub fn new(anyons: usize, sector: Label) -> Self {
        let paths = fusion_paths(anyons, sector);
        let index = paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p.0.clone(), i))
            .collect();
        PathBasis {
            anyons,
            sector,
            paths,
            index,
        }
    }

    pub fn anyons(&self) -> usize {
        self.anyons
    }

    pub fn sector(&self) -> Label {
        self.sector
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn paths(&self) -> &[FusionPath] {
        &self.paths
    }

    pub fn index_of(&self, labels: &[u8]) -> Option<usize> {
        self.index.get(labels).copied()
    }
}
