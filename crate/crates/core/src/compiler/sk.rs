//! Dawson–Nielsen style recursive refinement for one-batch targets.
//!
//! Works projectively in SU(2): every image is divided by a square root of
//! its determinant. Level 0 is the nearest element of a net of short words;
//! level n corrects the level n−1 approximation U' by a balanced group
//! commutator approximating U·U'†.

use num_complex::Complex64;

use super::distance::unitary_distance_from_product;
use super::search::compile_words;
use super::{gate_distance, scope_image, CompilationResult, GateTarget, ScopeModel};
use crate::error::Result;
use crate::word::BraidWord;

/// Net word length.
pub const SK_NET_DEPTH: usize = 7;
/// Bases further than this from the target are returned unchanged; above
/// it the commutator step no longer contracts for a depth-7 net.
pub const SK_BASE_THRESHOLD: f64 = 0.3;

type Su2 = [Complex64; 4];

fn mul(a: &Su2, b: &Su2) -> Su2 {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

fn adj(a: &Su2) -> Su2 {
    [a[0].conj(), a[2].conj(), a[1].conj(), a[3].conj()]
}

fn to_su2(m: &crate::linalg::CMatrix) -> Su2 {
    let a = [m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]];
    let s = (a[0] * a[3] - a[1] * a[2]).sqrt();
    [a[0] / s, a[1] / s, a[2] / s, a[3] / s]
}

fn dist(a: &Su2, b: &Su2) -> f64 {
    unitary_distance_from_product(mul(&adj(b), a))
}

/// M = c₀·I − i(c·σ), returned as (c₀, c).
fn components(m: &Su2) -> (f64, [f64; 3]) {
    let c0 = (m[0] + m[3]).re / 2.0;
    let cx = -(m[1] + m[2]).im / 2.0;
    let cy = (m[2] - m[1]).re / 2.0;
    let cz = -(m[0] - m[3]).im / 2.0;
    (c0, [cx, cy, cz])
}

fn rotation(angle: f64, axis: [f64; 3]) -> Su2 {
    let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
    let i = Complex64::i();
    [
        Complex64::from(c) - i * s * axis[2],
        -i * s * axis[0] - s * axis[1],
        -i * s * axis[0] + s * axis[1],
        Complex64::from(c) + i * s * axis[2],
    ]
}

fn normalize(v: [f64; 3]) -> Option<[f64; 3]> {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    (n > 1e-14).then(|| [v[0] / n, v[1] / n, v[2] / n])
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Rotation angle in [0, π] and axis of ±m.
fn angle_axis(m: &Su2) -> (f64, [f64; 3]) {
    let (mut c0, mut c) = components(m);
    if c0 < 0.0 {
        c0 = -c0;
        c = [-c[0], -c[1], -c[2]];
    }
    let s = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
    let axis = normalize(c).unwrap_or([0.0, 0.0, 1.0]);
    (2.0 * s.atan2(c0), axis)
}

/// V, W with V·W·V†·W† = Δ (up to sign), each a rotation by the same angle φ
/// where sin(θ/2) = 2·sin²(φ/2)·√(1 − sin⁴(φ/2)).
pub fn group_commutator(delta: [Complex64; 4]) -> ([Complex64; 4], [Complex64; 4]) {
    let (theta, n) = angle_axis(&delta);
    let s2 = ((1.0 - (theta / 2.0).cos()) / 2.0).sqrt();
    let phi = 2.0 * s2.sqrt().asin();
    let v0 = rotation(phi, [1.0, 0.0, 0.0]);
    let w0 = rotation(phi, [0.0, 1.0, 0.0]);
    let comm = mul(&mul(&v0, &w0), &mul(&adj(&v0), &adj(&w0)));
    let (_, m) = angle_axis(&comm);
    let dot = (m[0] * n[0] + m[1] * n[1] + m[2] * n[2]).clamp(-1.0, 1.0);
    let axis = normalize(cross(m, n)).unwrap_or_else(|| {
        normalize(cross(m, [1.0, 0.0, 0.0])).unwrap_or([0.0, 1.0, 0.0])
    });
    let s = rotation(dot.acos(), axis);
    let conj = |x: &Su2| mul(&mul(&s, x), &adj(&s));
    (conj(&v0), conj(&w0))
}

struct Approx {
    /// Local letters; the matrix acts first-letter-first.
    word: Vec<i32>,
    matrix: Su2,
}

fn inverse(a: &Approx) -> Approx {
    Approx {
        word: a.word.iter().rev().map(|l| -l).collect(),
        matrix: adj(&a.matrix),
    }
}

/// Matrix product a·b, i.e. b's word then a's word.
fn compose(a: &Approx, b: &Approx) -> Approx {
    let mut word = b.word.clone();
    word.extend_from_slice(&a.word);
    Approx {
        word,
        matrix: mul(&a.matrix, &b.matrix),
    }
}

struct Net {
    entries: Vec<(Vec<i32>, Su2)>,
}

impl Net {
    fn build(model: &ScopeModel, depth: usize) -> Result<Net> {
        let entries = compile_words(model.generators(), depth)
            .into_iter()
            .map(|w| {
                let m = model.local_image(&w)?;
                let (block, _) = model.compress(&m);
                Ok((w, to_su2(&block)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Net { entries })
    }

    fn nearest(&self, u: &Su2) -> Approx {
        let (w, m) = self
            .entries
            .iter()
            .map(|(w, m)| (w, m, dist(m, u)))
            .fold(None::<(&Vec<i32>, &Su2, f64)>, |best, cur| match best {
                Some(b) if b.2 <= cur.2 => Some(b),
                _ => Some(cur),
            })
            .map(|(w, m, _)| (w.clone(), *m))
            .expect("net is nonempty");
        Approx { word: w, matrix: m }
    }
}

fn solovay_kitaev(net: &Net, u: &Su2, level: usize) -> Approx {
    if level == 0 {
        return net.nearest(u);
    }
    let prev = solovay_kitaev(net, u, level - 1);
    let delta = mul(u, &adj(&prev.matrix));
    let (v, w) = group_commutator(delta);
    let va = solovay_kitaev(net, &v, level - 1);
    let wa = solovay_kitaev(net, &w, level - 1);
    let comm = compose(&compose(&va, &wa), &compose(&inverse(&va), &inverse(&wa)));
    compose(&comm, &prev)
}

/// Refines `base` with `levels` recursion levels over the default net.
pub fn sk_refine(target: &GateTarget, base: &CompilationResult, levels: usize) -> Result<CompilationResult> {
    sk_refine_with(target, base, levels, SK_NET_DEPTH)
}

/// As [`sk_refine`] with an explicit net depth. Two-batch targets, bases
/// above [`SK_BASE_THRESHOLD`], and refinements that do not improve the
/// recomputed distance all return `base`.
pub fn sk_refine_with(
    target: &GateTarget,
    base: &CompilationResult,
    levels: usize,
    net_depth: usize,
) -> Result<CompilationResult> {
    if levels == 0 || target.scope().len() != 1 || base.distance > SK_BASE_THRESHOLD {
        return Ok(base.clone());
    }
    let model = ScopeModel::new(target.scope())?;
    let net = Net::build(&model, net_depth)?;
    let u = to_su2(target.matrix());
    let approx = solovay_kitaev(&net, &u, levels);
    let word = model.globalize(&BraidWord::new(model.rep.anyons(), approx.word)?.free_reduce().letters().to_vec());
    let word = BraidWord::new(base.word.strands().max(word.strands()), word.letters().to_vec())?;
    let img = scope_image(&word, target.scope())?;
    let distance = gate_distance(&img.matrix, target.matrix())?;
    if distance < base.distance {
        Ok(CompilationResult {
            word,
            distance,
            leakage_bound: img.leakage_bound,
            depth_searched: base.depth_searched,
        })
    } else {
        Ok(base.clone())
    }
}
