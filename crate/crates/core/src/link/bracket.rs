//! Kauffman bracket by explicit state sum, and the Jones polynomial at
//! t = e^{2πi/5}.
//!
//! Every crossing is smoothed two ways. For [`Over::Left`] the A-smoothing
//! is vertical (the strands pass straight up); for [`Over::Right`] it is
//! horizontal (a cap below, a cup above). The sum
//! Σ_s A^{#A − #B} δ^{loops − 1}, δ = −A² − A⁻², is accumulated as an
//! integer histogram over (#A, loops) so the result does not depend on how
//! states are split across threads.

use num_complex::Complex64;
use rayon::prelude::*;

use super::diagram::{Level, LinkDiagram, Over};
use super::invariants::{writhe, Orientation};
use crate::constants::{jones_a, CROSSING_BUDGET};
use crate::error::{Error, Result};

/// Number of (#A-smoothings, loops) states, indexed `[a][loops]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateHistogram {
    crossings: usize,
    counts: Vec<Vec<u64>>,
}

impl StateHistogram {
    pub fn crossings(&self) -> usize {
        self.crossings
    }

    pub fn count(&self, a_smoothings: usize, loops: usize) -> u64 {
        self.counts
            .get(a_smoothings)
            .and_then(|row| row.get(loops))
            .copied()
            .unwrap_or(0)
    }

    /// Unknot-normalized bracket at `a`.
    pub fn evaluate(&self, a: Complex64) -> Complex64 {
        let delta = -a * a - (a * a).inv();
        let n = self.crossings as i32;
        let mut total = Complex64::new(0.0, 0.0);
        for (alpha, row) in self.counts.iter().enumerate() {
            let weight = a.powi(2 * alpha as i32 - n);
            for (loops, &count) in row.iter().enumerate() {
                if count > 0 {
                    total += weight * delta.powi(loops as i32 - 1) * count as f64;
                }
            }
        }
        total
    }
}

/// States per work unit; fixed so that chunking is thread-count independent.
const CHUNK_BITS: u32 = 12;

/// Crossing-budget checked state histogram.
pub fn state_histogram(d: &LinkDiagram) -> Result<StateHistogram> {
    let crossings = d.crossing_count();
    if crossings > CROSSING_BUDGET {
        return Err(Error::CrossingBudget {
            crossings,
            budget: CROSSING_BUDGET,
        });
    }
    let program = Program::compile(d);
    let max_loops = d.cup_count() + crossings + 1;
    let total: u64 = 1 << crossings;
    let chunk: u64 = 1 << CHUNK_BITS.min(crossings as u32);
    let chunks = total / chunk;
    let merged = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut hist = vec![vec![0u64; max_loops + 1]; crossings + 1];
            let mut scratch = Scratch::default();
            for mask in c * chunk..(c + 1) * chunk {
                let (a, loops) = program.run(mask, &mut scratch);
                hist[a][loops] += 1;
            }
            hist
        })
        .reduce(
            || vec![vec![0u64; max_loops + 1]; crossings + 1],
            |mut x, y| {
                for (rx, ry) in x.iter_mut().zip(y) {
                    for (a, b) in rx.iter_mut().zip(ry) {
                        *a += b;
                    }
                }
                x
            },
        );
    Ok(StateHistogram {
        crossings,
        counts: merged,
    })
}

/// Unknot-normalized Kauffman bracket of `d` at `a`.
pub fn kauffman_bracket(d: &LinkDiagram, a: Complex64) -> Result<Complex64> {
    Ok(state_histogram(d)?.evaluate(a))
}

/// V_L(t) at t = e^{2πi/5} (with t^{1/2} = e^{πi/5}), as
/// (−A)^{−3w}·⟨L⟩ at A = e^{−πi/10}.
pub fn jones_at(d: &LinkDiagram, orientation: &Orientation) -> Result<Complex64> {
    let a = jones_a();
    let w = writhe(d, orientation);
    Ok((-a).powi(-3 * w as i32) * kauffman_bracket(d, a)?)
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Cup { at: usize },
    Cap { at: usize },
    /// Crossing number `bit`; `a_vertical` tells which smoothing the A
    /// weight belongs to.
    Cross { at: usize, bit: usize, a_vertical: bool },
}

struct Program {
    ops: Vec<Op>,
}

#[derive(Default)]
struct Scratch {
    parent: Vec<u32>,
    ends: Vec<u32>,
}

impl Scratch {
    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn new_node(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        id
    }

    /// Returns true when two distinct arcs were joined.
    fn union(&mut self, x: u32, y: u32) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            false
        } else {
            self.parent[rx as usize] = ry;
            true
        }
    }
}

impl Program {
    fn compile(d: &LinkDiagram) -> Self {
        let mut bit = 0;
        let ops = d
            .levels()
            .iter()
            .map(|l| match *l {
                Level::Cup { at } => Op::Cup { at },
                Level::Cap { at } => Op::Cap { at },
                Level::Cross { at, over } => {
                    bit += 1;
                    Op::Cross {
                        at,
                        bit: bit - 1,
                        a_vertical: over == Over::Left,
                    }
                }
            })
            .collect();
        Program { ops }
    }

    /// Smooths crossing `k` with its A-smoothing when bit `k` of `mask` is
    /// clear. Returns (#A-smoothings, loop count).
    fn run(&self, mask: u64, s: &mut Scratch) -> (usize, usize) {
        s.parent.clear();
        s.ends.clear();
        let mut merges = 0usize;
        let mut a_count = 0usize;
        for op in &self.ops {
            match *op {
                Op::Cup { at } => {
                    let x = s.new_node();
                    s.ends.insert(at, x);
                    s.ends.insert(at, x);
                }
                Op::Cap { at } => {
                    let (x, y) = (s.ends[at], s.ends[at + 1]);
                    merges += s.union(x, y) as usize;
                    s.ends.drain(at..at + 2);
                }
                Op::Cross { at, bit, a_vertical } => {
                    let use_a = mask >> bit & 1 == 0;
                    a_count += use_a as usize;
                    if use_a != a_vertical {
                        // horizontal smoothing: cap below, cup above
                        let (x, y) = (s.ends[at], s.ends[at + 1]);
                        merges += s.union(x, y) as usize;
                        let z = s.new_node();
                        s.ends[at] = z;
                        s.ends[at + 1] = z;
                    }
                }
            }
        }
        (a_count, s.parent.len() - merges)
    }
}
