//! The unitary Jones representation on the fusion-path basis.
//!
//! Temperley-Lieb generators act by the path model
//!
//! ```text
//! e_i |p⟩ = δ(p_{i−1}, p_{i+1}) Σ_c √(d(p_i)·d(c)) / d(p_{i−1}) |p[i ↦ c]⟩
//! ```
//!
//! and braid generators by ρ(σ_i) = A·1 + A⁻¹·e_i with A = e^{3πi/5}.
//! Matrices act on column vectors; the first letter of a word acts first.

use num_complex::Complex64;

use crate::anyon::{fuse, qdim, Label, PathBasis};
use crate::constants::{bracket_crossing_phase, bracket_normalization, kauffman_a};
use crate::error::{Error, Result};
use crate::linalg::{identity, CMatrix, CVector, ZERO};
use crate::word::BraidWord;

/// A matrix over `fusion_paths(anyons, sector)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepMatrix {
    pub anyons: usize,
    pub sector: Label,
    pub matrix: CMatrix,
}

impl RepMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// Generator tables for one strand count and sector.
#[derive(Clone, Debug)]
pub struct JonesRep {
    basis: PathBasis,
    tl: Vec<CMatrix>,
    sigma: Vec<CMatrix>,
    sigma_inv: Vec<CMatrix>,
}

impl JonesRep {
    pub fn new(anyons: usize, sector: Label) -> Self {
        let basis = PathBasis::new(anyons, sector);
        let a = kauffman_a();
        let eye = identity(basis.dim());
        let tl: Vec<CMatrix> = (1..anyons).map(|i| path_model_generator(&basis, i)).collect();
        let sigma = tl.iter().map(|e| &eye * a + e * a.inv()).collect();
        let sigma_inv = tl.iter().map(|e| &eye * a.inv() + e * a).collect();
        JonesRep {
            basis,
            tl,
            sigma,
            sigma_inv,
        }
    }

    pub fn basis(&self) -> &PathBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn anyons(&self) -> usize {
        self.basis.anyons()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.anyons() {
            Err(Error::IndexOutOfRange {
                index: i,
                strands: self.anyons(),
            })
        } else {
            Ok(())
        }
    }

    /// Temperley-Lieb generator e_i, 1 ≤ i ≤ n−1.
    pub fn tl(&self, i: usize) -> Result<&CMatrix> {
        self.check_index(i)?;
        Ok(&self.tl[i - 1])
    }

    /// Image of a signed letter: σ_i for `i > 0`, σ_{|i|}⁻¹ for `i < 0`.
    pub fn letter(&self, letter: i32) -> Result<&CMatrix> {
        if letter == 0 {
            return Err(Error::ZeroGenerator);
        }
        let i = letter.unsigned_abs() as usize;
        self.check_index(i)?;
        Ok(if letter > 0 {
            &self.sigma[i - 1]
        } else {
            &self.sigma_inv[i - 1]
        })
    }

    /// ρ(w) = ρ(ℓ_k)···ρ(ℓ_1).
    pub fn word(&self, w: &BraidWord) -> Result<CMatrix> {
        self.check_strands(w)?;
        let mut m = identity(self.dim());
        for &l in w.letters() {
            m = self.letter(l)? * m;
        }
        Ok(m)
    }

    /// ρ(w)·v without forming the full product.
    pub fn apply_word(&self, w: &BraidWord, v: &CVector) -> Result<CVector> {
        self.check_strands(w)?;
        let mut out = v.clone();
        for &l in w.letters() {
            out = self.letter(l)? * out;
        }
        Ok(out)
    }

    fn check_strands(&self, w: &BraidWord) -> Result<()> {
        if w.strands() != self.anyons() {
            return Err(Error::StrandMismatch {
                expected: self.anyons(),
                got: w.strands(),
            });
        }
        Ok(())
    }
}

fn path_model_generator(basis: &PathBasis, i: usize) -> CMatrix {
    let dim = basis.dim();
    let mut e = CMatrix::from_element(dim, dim, ZERO);
    for (col, path) in basis.paths().iter().enumerate() {
        let labels = path.labels();
        if labels[i - 1] != labels[i + 1] {
            continue;
        }
        let left = Label::new(labels[i - 1]).expect("paths hold valid labels");
        let here = qdim(path.label(i));
        let mut target = labels.to_vec();
        for c in fuse(left, Label::ONE) {
            target[i] = c.value();
            let row = basis
                .index_of(&target)
                .expect("changing one interior label keeps the path admissible");
            e[(row, col)] += Complex64::new((here * qdim(c)).sqrt() / qdim(left), 0.0);
        }
    }
    e
}

pub fn tl_generator(i: usize, anyons: usize, sector: Label) -> Result<RepMatrix> {
    let rep = JonesRep::new(anyons, sector);
    Ok(RepMatrix {
        anyons,
        sector,
        matrix: rep.tl(i)?.clone(),
    })
}

/// ρ(σ_i^{±1}) for a signed letter.
pub fn braid_generator(letter: i32, anyons: usize, sector: Label) -> Result<RepMatrix> {
    let rep = JonesRep::new(anyons, sector);
    Ok(RepMatrix {
        anyons,
        sector,
        matrix: rep.letter(letter)?.clone(),
    })
}

pub fn represent_word(w: &BraidWord, sector: Label) -> Result<RepMatrix> {
    let rep = JonesRep::new(w.strands(), sector);
    Ok(RepMatrix {
        anyons: w.strands(),
        sector,
        matrix: rep.word(w)?,
    })
}

/// The path (0,1,0,1,…,0): every adjacent pair fused to the vacuum.
pub fn cup_path(anyons: usize) -> Vec<u8> {
    (0..=anyons).map(|j| (j % 2) as u8).collect()
}

/// ⟨cups| ρ(w) |cups⟩ in sector 0, with |cups⟩ the normalized path
/// (0,1,0,1,…,0).
pub fn plat_amplitude(w: &BraidWord) -> Result<Complex64> {
    if w.strands() % 2 != 0 {
        return Err(Error::OddStrands(w.strands()));
    }
    let rep = JonesRep::new(w.strands(), Label::VACUUM);
    let init = rep
        .basis()
        .index_of(&cup_path(w.strands()))
        .expect("the cup path is admissible");
    let mut v = CVector::zeros(rep.dim());
    v[init] = Complex64::new(1.0, 0.0);
    let out = rep.apply_word(w, &v)?;
    Ok(out[init])
}

/// κ(n)·plat_amplitude(w)·μ^{|w|}: the unknot-normalized Kauffman bracket
/// of the plat closure, computed through the representation.
pub fn plat_bracket(w: &BraidWord) -> Result<Complex64> {
    let amp = plat_amplitude(w)?;
    let pairs = w.strands() / 2;
    Ok(amp * bracket_normalization(pairs) * bracket_crossing_phase().powu(w.len() as u32))
}
