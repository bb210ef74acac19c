//! Exhaustive search over freely reduced words.
//!
//! Words are ordered shortest first, then lexicographically by letter rank
//! 1 < −1 < 2 < −2 < …. The search first finds the optimal distance d*,
//! then returns the first word in that order with distance ≤ d* + 1e-10.
//! Work is split by the first two letters; both passes merge with a
//! deterministic reduction, so the result does not depend on thread count.

use std::cmp::Ordering;

use rayon::prelude::*;

use super::distance::{
    gate_distance_numeric, unitary_distance_from_product, unitary_distance_spectral, UNITARY_TOL,
};
use super::{CompilationResult, GateTarget, ScopeModel};
use crate::error::{Error, Result};
use crate::linalg::{unitarity_defect, CMatrix};

const TIE_TOL: f64 = 1e-10;

/// Position of a letter in the search order.
pub fn letter_rank(letter: i32) -> u32 {
    2 * (letter.unsigned_abs() - 1) + u32::from(letter < 0)
}

fn word_cmp(a: &[i32], b: &[i32]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        a.iter()
            .map(|&l| letter_rank(l))
            .cmp(b.iter().map(|&l| letter_rank(l)))
    })
}

/// All freely reduced words of length ≤ `max_len` on `generators`
/// generators, in search order.
pub fn compile_words(generators: usize, max_len: usize) -> Vec<Vec<i32>> {
    let alphabet = alphabet(generators);
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &alphabet {
                if w.last() != Some(&-l) {
                    let mut v: Vec<i32> = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn alphabet(generators: usize) -> Vec<i32> {
    (1..=generators as i32).flat_map(|g| [g, -g]).collect()
}

struct Evaluator<'a> {
    model: &'a ScopeModel,
    target: &'a CMatrix,
    target_adj: CMatrix,
    leakage_tol: f64,
    /// Score infeasible words too (only needed for failure diagnostics).
    score_all: bool,
}

#[derive(Clone, Debug)]
struct Scored {
    word: Vec<i32>,
    distance: f64,
    leakage: f64,
}

impl Evaluator<'_> {
    fn score(&self, full: &CMatrix) -> (f64, f64) {
        let (block, leakage) = self.model.compress(full);
        if !self.score_all && !(leakage <= self.leakage_tol) {
            return (f64::INFINITY, leakage);
        }
        // the product with the adjoint only cancels up to rounding
        let distance = if block == *self.target {
            0.0
        } else if block.nrows() == 2 && full.nrows() == 2 {
            let w = &self.target_adj * &block;
            unitary_distance_from_product([w[(0, 0)], w[(0, 1)], w[(1, 0)], w[(1, 1)]])
        } else if unitarity_defect(&block) < UNITARY_TOL {
            unitary_distance_spectral(&(&self.target_adj * &block))
        } else {
            gate_distance_numeric(&block, self.target).expect("shapes agree")
        };
        (distance, leakage)
    }

    /// Visits every reduced extension of `prefix` up to `max_len` letters.
    fn walk(
        &self,
        prefix: &mut Vec<i32>,
        image: &CMatrix,
        max_len: usize,
        visit: &mut dyn FnMut(&[i32], f64, f64),
    ) {
        let (d, leak) = self.score(image);
        visit(prefix, d, leak);
        if prefix.len() == max_len {
            return;
        }
        for l in alphabet(self.model.generators()) {
            if prefix.last() == Some(&-l) {
                continue;
            }
            let next = self.model.rep.letter(l).expect("scope letter") * image;
            prefix.push(l);
            self.walk(prefix, &next, max_len, visit);
            prefix.pop();
        }
    }

    /// Scans one partition: the word `seed` and (if it has full seed length)
    /// all its extensions.
    fn scan(&self, seed: &[i32], extend: bool, max_len: usize, visit: &mut dyn FnMut(&[i32], f64, f64)) {
        let image = self.model.local_image(seed).expect("scope letters");
        let mut prefix = seed.to_vec();
        if extend {
            self.walk(&mut prefix, &image, max_len, visit);
        } else {
            let (d, leak) = self.score(&image);
            visit(&prefix, d, leak);
        }
    }
}

fn better(a: Option<Scored>, b: Option<Scored>) -> Option<Scored> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if word_cmp(&y.word, &x.word) == Ordering::Less { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Smaller distance, then earlier word.
fn closer(a: Option<Scored>, b: Option<Scored>) -> Option<Scored> {
    match (a, b) {
        (Some(x), Some(y)) => Some(
            if y.distance < x.distance
                || (y.distance == x.distance && word_cmp(&y.word, &x.word) == Ordering::Less)
            {
                y
            } else {
                x
            },
        ),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Best word of length ≤ `max_depth` in the scope generators.
pub fn compile(target: &GateTarget, max_depth: usize, leakage_tol: f64) -> Result<CompilationResult> {
    let model = ScopeModel::new(target.scope())?;
    let mut eval = Evaluator {
        model: &model,
        target: target.matrix(),
        target_adj: target.matrix().adjoint(),
        leakage_tol,
        score_all: false,
    };
    // partitions: words shorter than the seed length stand alone; words of
    // seed length are extended
    let seed_len = max_depth.min(2);
    let seeds: Vec<(Vec<i32>, bool)> = compile_words(model.generators(), seed_len)
        .into_iter()
        .map(|w| {
            let extend = w.len() == seed_len;
            (w, extend)
        })
        .collect();

    // pass 1: optimal feasible distance
    let best_feasible = seeds
        .par_iter()
        .map(|(seed, extend)| {
            let mut feasible = f64::INFINITY;
            eval.scan(seed, *extend, max_depth, &mut |_, d, leak| {
                if leak <= eval.leakage_tol {
                    feasible = feasible.min(d);
                }
            });
            feasible
        })
        .reduce(|| f64::INFINITY, f64::min);

    if !best_feasible.is_finite() {
        eval.score_all = true;
        let diag = seeds
            .par_iter()
            .map(|(seed, extend)| {
                let mut best: Option<Scored> = None;
                eval.scan(seed, *extend, max_depth, &mut |w, d, leak| {
                    let cand = Scored {
                        word: w.to_vec(),
                        distance: d,
                        leakage: leak,
                    };
                    best = closer(best.take(), Some(cand));
                });
                best
            })
            .reduce(|| None, closer)
            .expect("the empty word is always scanned");
        return Err(Error::LeakageUnsatisfied {
            depth: max_depth,
            tolerance: leakage_tol,
            best_word: model.globalize(&diag.word).letters().to_vec(),
            best_distance: diag.distance,
            best_leakage: diag.leakage,
        });
    }

    // pass 2: first word in search order within TIE_TOL of the optimum
    let threshold = best_feasible + TIE_TOL;
    let chosen = seeds
        .par_iter()
        .map(|(seed, extend)| {
            let mut first: Option<Scored> = None;
            eval.scan(seed, *extend, max_depth, &mut |w, d, leak| {
                if leak <= eval.leakage_tol && d <= threshold {
                    let cand = Scored {
                        word: w.to_vec(),
                        distance: d,
                        leakage: leak,
                    };
                    first = better(first.take(), Some(cand));
                }
            });
            first
        })
        .reduce(|| None, better)
        .expect("pass 1 found a feasible word");

    Ok(CompilationResult {
        word: model.globalize(&chosen.word),
        distance: chosen.distance,
        leakage_bound: chosen.leakage,
        depth_searched: max_depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiler::batch_image;
    use crate::linalg::identity;
    use crate::word::BraidWord;

    #[test]
    fn word_order() {
        let words = compile_words(2, 2);
        assert_eq!(words.len(), 1 + 4 + 12);
        assert_eq!(words[1], vec![1]);
        assert_eq!(words[2], vec![-1]);
        assert_eq!(words[5], vec![1, 1]);
        assert!(!words.contains(&vec![1, -1]));
        for pair in words.windows(2) {
            assert_eq!(word_cmp(&pair[0], &pair[1]), Ordering::Less);
        }
    }

    #[test]
    fn exact_targets() {
        let t = GateTarget::single(identity(2)).unwrap();
        let r = compile(&t, 4, 1e-2).unwrap();
        assert!(r.word.is_empty());
        assert_eq!(r.distance, 0.0);
        let img = batch_image(&BraidWord::new(4, vec![1]).unwrap(), 1).unwrap();
        let r = compile(&GateTarget::single(img).unwrap(), 3, 1e-2).unwrap();
        assert_eq!(r.word.letters(), &[1]);
        assert!(r.distance < 1e-12);
        let img = batch_image(&BraidWord::new(4, vec![-2]).unwrap(), 1).unwrap();
        let r = compile(&GateTarget::single(img).unwrap(), 0, 1e-2).unwrap();
        assert!(r.word.is_empty() && r.distance > 0.1);
    }

    #[test]
    fn negative_tolerance_fails_with_diagnostics() {
        let t = GateTarget::new(identity(4), vec![1, 2]).unwrap();
        match compile(&t, 1, -1.0) {
            Err(Error::LeakageUnsatisfied { best_word, best_distance, .. }) => {
                assert!(best_word.is_empty());
                assert!(best_distance < 1e-10);
            }
            other => panic!("{other:?}"),
        }
    }
}
