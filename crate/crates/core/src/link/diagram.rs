//! Link diagrams in Morse form: a bottom-to-top sequence of cups (local
//! minima), caps (local maxima) and crossings between adjacent strands.
//!
//! Positions are 0-based internally and 1-based in the JSON form. A
//! crossing at position `i` involves the strands at `i` and `i+1`;
//! [`Over::Left`] is σ_{i+1} (the strand entering bottom-left passes over)
//! and [`Over::Right`] is σ_{i+1}⁻¹.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::BraidWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Over {
    Left,
    Right,
}

impl Over {
    pub fn flipped(self) -> Over {
        match self {
            Over::Left => Over::Right,
            Over::Right => Over::Left,
        }
    }

    /// Braid letter for a crossing at 0-based position `at`.
    pub fn letter(self, at: usize) -> i32 {
        match self {
            Over::Left => at as i32 + 1,
            Over::Right => -(at as i32 + 1),
        }
    }

    fn from_letter(letter: i32) -> Over {
        if letter > 0 {
            Over::Left
        } else {
            Over::Right
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    /// Creates two new strands at positions `at`, `at+1`.
    Cup { at: usize },
    /// Joins the strands at `at`, `at+1`.
    Cap { at: usize },
    Cross { at: usize, over: Over },
}

/// Where a measurement loop γ was inserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopMarker {
    /// 1-based pair of strands encircled.
    pub pair: usize,
    /// Index of the loop's cup in the level list.
    pub level: usize,
}

/// Number of levels occupied by one measurement loop.
pub const LOOP_LEVELS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    levels: Vec<Level>,
    /// Level index at which measurement loops are inserted.
    slot: usize,
    loops: Vec<LoopMarker>,
}

impl LinkDiagram {
    /// Validates that every level fits the current strand count and the
    /// diagram closes up with no free ends.
    pub fn new(levels: Vec<Level>, slot: usize) -> Result<Self> {
        let d = LinkDiagram {
            levels,
            slot,
            loops: Vec::new(),
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.levels.is_empty() {
            return Err(Error::MalformedDiagram("empty diagram".into()));
        }
        if self.slot > self.levels.len() {
            return Err(Error::MalformedDiagram("slot past the last level".into()));
        }
        let mut width = 0usize;
        for (k, level) in self.levels.iter().enumerate() {
            match *level {
                Level::Cup { at } => {
                    if at > width {
                        return Err(malformed(k, "cup", at, width));
                    }
                    width += 2;
                }
                Level::Cap { at } => {
                    if at + 1 >= width {
                        return Err(malformed(k, "cap", at, width));
                    }
                    width -= 2;
                }
                Level::Cross { at, .. } => {
                    if at + 1 >= width {
                        return Err(malformed(k, "crossing", at, width));
                    }
                }
            }
        }
        if width != 0 {
            return Err(Error::MalformedDiagram(format!("{width} free ends at the top")));
        }
        Ok(())
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn slot(&self) -> usize {
        self.slot
    }

    pub fn loops(&self) -> &[LoopMarker] {
        &self.loops
    }

    pub fn crossing_count(&self) -> usize {
        self.levels
            .iter()
            .filter(|l| matches!(l, Level::Cross { .. }))
            .count()
    }

    pub fn cup_count(&self) -> usize {
        self.levels
            .iter()
            .filter(|l| matches!(l, Level::Cup { .. }))
            .count()
    }

    /// Strand count just below level `k` (k = len gives the top).
    pub fn width_before(&self, k: usize) -> usize {
        self.levels[..k].iter().fold(0, |w, l| match l {
            Level::Cup { .. } => w + 2,
            Level::Cap { .. } => w - 2,
            Level::Cross { .. } => w,
        })
    }

    /// Replaces `levels[range]` by `replacement` and re-validates. The slot
    /// and loop markers are shifted when they lie above the edit.
    pub(crate) fn splice(
        &self,
        range: std::ops::Range<usize>,
        replacement: Vec<Level>,
    ) -> Result<LinkDiagram> {
        let removed = range.len();
        let added = replacement.len();
        let start = range.start;
        let shift = |k: usize| {
            if k >= start + removed {
                k + added - removed
            } else {
                k
            }
        };
        let mut levels = self.levels.clone();
        levels.splice(range, replacement);
        let d = LinkDiagram {
            levels,
            slot: shift(self.slot),
            loops: self
                .loops
                .iter()
                .map(|m| LoopMarker {
                    pair: m.pair,
                    level: shift(m.level),
                })
                .collect(),
        };
        d.validate()?;
        Ok(d)
    }
}

fn malformed(k: usize, what: &str, at: usize, width: usize) -> Error {
    Error::MalformedDiagram(format!(
        "level {k}: {what} at position {} with {width} strands",
        at + 1
    ))
}

fn braid_levels(w: &BraidWord) -> impl Iterator<Item = Level> + '_ {
    w.letters().iter().map(|&l| Level::Cross {
        at: l.unsigned_abs() as usize - 1,
        over: Over::from_letter(l),
    })
}

fn plat_of(strands: usize, middle: impl Iterator<Item = Level>, slot_offset: usize) -> Result<LinkDiagram> {
    if strands % 2 != 0 {
        return Err(Error::OddStrands(strands));
    }
    if strands == 0 {
        return Err(Error::MalformedDiagram("plat closure of zero strands".into()));
    }
    let pairs = strands / 2;
    let mut levels: Vec<Level> = (0..pairs).map(|j| Level::Cup { at: 2 * j }).collect();
    levels.extend(middle);
    levels.extend((0..pairs).rev().map(|j| Level::Cap { at: 2 * j }));
    LinkDiagram::new(levels, pairs + slot_offset)
}

/// Cups joining strands (1,2),(3,4),… at the bottom, the braid, and caps
/// joining the same pairs at the top. Measurement loops go directly above
/// the cups.
pub fn plat_closure(b: &BraidWord) -> Result<LinkDiagram> {
    plat_of(b.strands(), braid_levels(b), 0)
}

/// plat(b · b⁻¹) with the measurement slot between b and b⁻¹; the first
/// letter of b sits just above the cups.
pub fn plat_conjugate(b: &BraidWord) -> Result<LinkDiagram> {
    let inv = b.inverse();
    plat_of(b.strands(), braid_levels(b).chain(braid_levels(&inv)).collect::<Vec<_>>().into_iter(), b.len())
}

/// Adds a small circle γ around the two strands of `pair` (1-based) at the
/// diagram's measurement slot. γ's lower arc passes over both strands and
/// its upper arc passes under both, giving four crossings and one extra
/// local minimum.
pub fn insert_measurement_loop(d: &LinkDiagram, pair: usize) -> Result<LinkDiagram> {
    let pairs = d.width_before(d.slot) / 2;
    if pair == 0 || pair > pairs {
        return Err(Error::InvalidPair { pair, pairs });
    }
    let p = 2 * (pair - 1);
    let gamma = vec![
        Level::Cup { at: p },
        Level::Cross { at: p + 1, over: Over::Left },
        Level::Cross { at: p + 2, over: Over::Left },
        Level::Cross { at: p, over: Over::Right },
        Level::Cross { at: p + 1, over: Over::Right },
        Level::Cap { at: p + 2 },
    ];
    debug_assert_eq!(gamma.len(), LOOP_LEVELS);
    let at = d.slot;
    let mut out = d.splice(at..at, gamma)?;
    out.slot = at + LOOP_LEVELS;
    out.loops.push(LoopMarker { pair, level: at });
    Ok(out)
}

/// Position and level of one diagram event in the JSON export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventJson {
    pub level: usize,
    /// 1-based left strand position.
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingJson {
    pub level: usize,
    /// 1-based left strand position.
    pub position: usize,
    /// Which bottom strand passes over.
    pub over: Over,
    /// Braid letter of the crossing (positive when the left strand is over).
    pub letter: i32,
    /// Smoothing weighted by A in the bracket: "vertical" or "horizontal".
    pub a_smoothing: String,
}

/// JSON form of a diagram: cups, caps and crossings with level indices
/// giving their bottom-to-top order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub levels: usize,
    pub cups: Vec<EventJson>,
    pub caps: Vec<EventJson>,
    pub crossings: Vec<CrossingJson>,
    #[serde(default)]
    pub measurement_loops: Vec<LoopMarker>,
    #[serde(default)]
    pub slot: usize,
}

fn a_smoothing(over: Over) -> &'static str {
    match over {
        Over::Left => "vertical",
        Over::Right => "horizontal",
    }
}

impl LinkDiagram {
    pub fn to_json(&self) -> DiagramJson {
        let mut out = DiagramJson {
            levels: self.levels.len(),
            cups: Vec::new(),
            caps: Vec::new(),
            crossings: Vec::new(),
            measurement_loops: self.loops.clone(),
            slot: self.slot,
        };
        for (level, l) in self.levels.iter().enumerate() {
            match *l {
                Level::Cup { at } => out.cups.push(EventJson { level, position: at + 1 }),
                Level::Cap { at } => out.caps.push(EventJson { level, position: at + 1 }),
                Level::Cross { at, over } => out.crossings.push(CrossingJson {
                    level,
                    position: at + 1,
                    over,
                    letter: over.letter(at),
                    a_smoothing: a_smoothing(over).to_string(),
                }),
            }
        }
        out
    }

    pub fn from_json(j: &DiagramJson) -> Result<Self> {
        let mut slots: Vec<Option<Level>> = vec![None; j.levels];
        let mut place = |level: usize, l: Level| -> Result<()> {
            match slots.get_mut(level) {
                Some(s @ None) => {
                    *s = Some(l);
                    Ok(())
                }
                Some(Some(_)) => Err(Error::MalformedDiagram(format!("level {level} used twice"))),
                None => Err(Error::MalformedDiagram(format!("level {level} out of range"))),
            }
        };
        let pos = |p: usize| {
            p.checked_sub(1)
                .ok_or_else(|| Error::MalformedDiagram("positions are 1-based".into()))
        };
        for e in &j.cups {
            place(e.level, Level::Cup { at: pos(e.position)? })?;
        }
        for e in &j.caps {
            place(e.level, Level::Cap { at: pos(e.position)? })?;
        }
        for c in &j.crossings {
            if c.a_smoothing != a_smoothing(c.over) || c.letter != c.over.letter(pos(c.position)?) {
                return Err(Error::MalformedDiagram(format!(
                    "crossing at level {} is inconsistent",
                    c.level
                )));
            }
            place(c.level, Level::Cross { at: pos(c.position)?, over: c.over })?;
        }
        let levels = slots
            .into_iter()
            .enumerate()
            .map(|(k, l)| l.ok_or_else(|| Error::MalformedDiagram(format!("level {k} missing"))))
            .collect::<Result<Vec<_>>>()?;
        let mut d = LinkDiagram::new(levels, j.slot)?;
        d.loops = j.measurement_loops.clone();
        Ok(d)
    }
}
