//! Component tracing, orientations, writhe and minima.

use serde::{Deserialize, Serialize};

use super::diagram::{Level, LinkDiagram, Over};

/// (level, port). Cups and caps use ports 0 (left) and 1 (right);
/// crossings use 0 = bottom-left, 1 = bottom-right, 2 = top-left,
/// 3 = top-right.
type Port = (usize, u8);

/// Port graph of a diagram: which port each port's outgoing segment reaches.
struct PortGraph {
    partner: Vec<[Port; 4]>,
}

impl PortGraph {
    fn build(d: &LinkDiagram) -> Self {
        let levels = d.levels();
        let mut partner = vec![[(usize::MAX, 0u8); 4]; levels.len()];
        let mut ends: Vec<Port> = Vec::new();
        let connect = |a: Port, b: Port, partner: &mut Vec<[Port; 4]>| {
            partner[a.0][a.1 as usize] = b;
            partner[b.0][b.1 as usize] = a;
        };
        for (k, level) in levels.iter().enumerate() {
            match *level {
                Level::Cup { at } => {
                    ends.insert(at, (k, 1));
                    ends.insert(at, (k, 0));
                }
                Level::Cap { at } => {
                    connect(ends[at], (k, 0), &mut partner);
                    connect(ends[at + 1], (k, 1), &mut partner);
                    ends.drain(at..at + 2);
                }
                Level::Cross { at, .. } => {
                    connect(ends[at], (k, 0), &mut partner);
                    connect(ends[at + 1], (k, 1), &mut partner);
                    ends[at] = (k, 2);
                    ends[at + 1] = (k, 3);
                }
            }
        }
        PortGraph { partner }
    }
}

/// The port on the far side of an event from `p`.
fn through(level: &Level, port: u8) -> u8 {
    match level {
        Level::Cup { .. } | Level::Cap { .. } => 1 - port,
        Level::Cross { .. } => match port {
            0 => 3,
            3 => 0,
            1 => 2,
            _ => 1,
        },
    }
}

/// One traversal of a component in its default direction.
#[derive(Clone, Debug)]
struct Component {
    /// Crossing passes: (level, entry port).
    passes: Vec<(usize, u8)>,
}

/// Components in order of their lowest cup; each traversed starting up the
/// left end of that cup.
fn trace(d: &LinkDiagram) -> Vec<Component> {
    let graph = PortGraph::build(d);
    let levels = d.levels();
    let mut seen = vec![false; levels.len()];
    let mut out = Vec::new();
    for (k, level) in levels.iter().enumerate() {
        if !matches!(level, Level::Cup { .. }) || seen[k] {
            continue;
        }
        let mut passes = Vec::new();
        // leave the cup upward from its left end
        let mut leaving: Port = (k, 0);
        seen[k] = true;
        loop {
            let enter = graph.partner[leaving.0][leaving.1 as usize];
            let lvl = &levels[enter.0];
            if enter.0 == k {
                break;
            }
            if let Level::Cross { .. } = lvl {
                passes.push(enter);
            } else {
                seen[enter.0] = true;
            }
            leaving = (enter.0, through(lvl, enter.1));
        }
        out.push(Component { passes });
    }
    out
}

/// Per-component direction choice: `reversed[c]` flips component `c`
/// (components indexed by their lowest cup) against its default, in which
/// the left end of its lowest cup goes up.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    pub reversed: Vec<bool>,
}

impl Orientation {
    pub fn default_for(d: &LinkDiagram) -> Self {
        Orientation {
            reversed: vec![false; count_components(d)],
        }
    }

    fn is_reversed(&self, c: usize) -> bool {
        self.reversed.get(c).copied().unwrap_or(false)
    }
}

pub fn count_components(d: &LinkDiagram) -> usize {
    trace(d).len()
}

/// Which component each crossing strand belongs to, for every crossing
/// level: ([component of strand 0–3, component of strand 1–2]).
pub fn crossing_components(d: &LinkDiagram) -> Vec<(usize, [usize; 2])> {
    let mut map = std::collections::BTreeMap::new();
    for (c, comp) in trace(d).iter().enumerate() {
        for &(level, port) in &comp.passes {
            let strand = if port == 0 || port == 3 { 0 } else { 1 };
            map.entry(level).or_insert([usize::MAX; 2])[strand] = c;
        }
    }
    map.into_iter().collect()
}

/// Sum of crossing signs by the right-hand rule: a crossing is positive
/// when, with both strands pointing up, the strand going bottom-left to
/// top-right passes over.
pub fn writhe(d: &LinkDiagram, orientation: &Orientation) -> i64 {
    let levels = d.levels();
    // direction of (strand 0–3, strand 1–2) at every crossing: +1 up
    let mut dirs = vec![[0i64; 2]; levels.len()];
    for (c, comp) in trace(d).iter().enumerate() {
        let flip = if orientation.is_reversed(c) { -1 } else { 1 };
        for &(level, port) in &comp.passes {
            let (strand, up) = match port {
                0 => (0, 1),
                3 => (0, -1),
                1 => (1, 1),
                _ => (1, -1),
            };
            dirs[level][strand] = up * flip;
        }
    }
    levels
        .iter()
        .zip(&dirs)
        .filter_map(|(l, dir)| match l {
            Level::Cross { over, .. } => {
                let parity = dir[0] * dir[1];
                Some(match over {
                    Over::Left => parity,
                    Over::Right => -parity,
                })
            }
            _ => None,
        })
        .sum()
}

/// Local minima of the height function: one per cup.
pub fn count_minima(d: &LinkDiagram) -> usize {
    d.cup_count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkStats {
    pub components: usize,
    pub writhe: i64,
    pub minima: usize,
}

pub fn link_stats(d: &LinkDiagram, orientation: &Orientation) -> LinkStats {
    LinkStats {
        components: count_components(d),
        writhe: writhe(d, orientation),
        minima: count_minima(d),
    }
}
