//! Braid words: the program text of the topological computer.
//!
//! Letter `i` is σ_i (right half twist of strands i, i+1) and `-i` is its
//! inverse. The first letter acts first.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        for &l in &letters {
            check_letter(l, strands)?;
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reversed word with every letter inverted.
    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &BraidWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch {
                expected: self.strands,
                got: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// Cancel adjacent σσ⁻¹ pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    /// Uniformly random letters from all 2(strands−1) generators.
    pub fn random<R: Rng + ?Sized>(strands: usize, len: usize, rng: &mut R) -> Self {
        assert!(strands >= 2, "random words need at least two strands");
        let g = (strands - 1) as i32;
        let letters = (0..len)
            .map(|_| {
                let i = rng.random_range(1..=g);
                if rng.random::<bool>() {
                    i
                } else {
                    -i
                }
            })
            .collect();
        BraidWord { strands, letters }
    }

    /// Two-line text form: `n=<strands>` then the letters.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        format!("n={}\n{}\n", self.strands, body.join(" "))
    }
}

fn check_letter(l: i32, strands: usize) -> Result<()> {
    if l == 0 {
        return Err(Error::ZeroGenerator);
    }
    let i = l.unsigned_abs() as usize;
    if strands < 2 || i > strands - 1 {
        return Err(Error::IndexOutOfRange { index: i, strands });
    }
    Ok(())
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}] on {} strands", body.join(" "), self.strands)
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Parses the two-line text form. Blank lines and `#` comments are
    /// ignored; a missing letter line means the empty word.
    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("malformed header: missing \"n=<strands>\" line".into()))?;
        let strands = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or_else(|| {
                Error::Parse(format!("malformed header: expected \"n=<strands>\", got {header:?}"))
            })?;
        let mut letters = Vec::new();
        for line in lines {
            for tok in line.split_whitespace() {
                let l: i32 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("malformed letter {tok:?}")))?;
                letters.push(l);
            }
        }
        BraidWord::new(strands, letters)
    }
}
