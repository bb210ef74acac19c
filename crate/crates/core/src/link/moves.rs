//! Programmatic Reidemeister moves on Morse diagrams.

use super::diagram::{Level, LinkDiagram, Over};
use crate::error::{Error, Result};

fn check_position(d: &LinkDiagram, level: usize, position: usize, span: usize) -> Result<()> {
    if level > d.levels().len() {
        return Err(Error::MalformedDiagram(format!("level {level} out of range")));
    }
    let width = d.width_before(level);
    if position + span > width {
        return Err(Error::MalformedDiagram(format!(
            "position {} needs {span} strands, {width} available at level {level}",
            position + 1
        )));
    }
    Ok(())
}

/// Adds a curl to the strand at 0-based `position` just below `level`.
/// With [`Over::Left`] the bracket gains a factor −A³, with
/// [`Over::Right`] a factor −A⁻³.
pub fn reidemeister_one(d: &LinkDiagram, level: usize, position: usize, over: Over) -> Result<LinkDiagram> {
    check_position(d, level, position, 1)?;
    let p = position;
    d.splice(
        level..level,
        vec![
            Level::Cup { at: p + 1 },
            Level::Cross { at: p, over },
            Level::Cap { at: p + 1 },
        ],
    )
}

/// Inserts a crossing and its inverse between the strands at `position`,
/// `position+1`.
pub fn reidemeister_two(d: &LinkDiagram, level: usize, position: usize, over: Over) -> Result<LinkDiagram> {
    check_position(d, level, position, 2)?;
    d.splice(
        level..level,
        vec![
            Level::Cross { at: position, over },
            Level::Cross { at: position, over: over.flipped() },
        ],
    )
}

fn triple(levels: &[Level], k: usize) -> Option<(usize, usize, Over)> {
    match levels.get(k..k + 3)? {
        [Level::Cross { at: a, over: o1 }, Level::Cross { at: b, over: o2 }, Level::Cross { at: c, over: o3 }]
            if a == c && a.abs_diff(*b) == 1 && o1 == o2 && o2 == o3 =>
        {
            Some((*a, *b, *o1))
        }
        _ => None,
    }
}

/// Levels where a σ_iσ_{i±1}σ_i triple of equal crossing type starts.
pub fn reidemeister_three_sites(d: &LinkDiagram) -> Vec<usize> {
    (0..d.levels().len())
        .filter(|&k| triple(d.levels(), k).is_some())
        .collect()
}

/// Rewrites σ_iσ_{i±1}σ_i at `level` into σ_{i±1}σ_iσ_{i±1}.
pub fn reidemeister_three(d: &LinkDiagram, level: usize) -> Result<LinkDiagram> {
    let (outer, inner, over) = triple(d.levels(), level).ok_or_else(|| {
        Error::MalformedDiagram(format!("no braid-relation triple at level {level}"))
    })?;
    d.splice(
        level..level + 3,
        vec![
            Level::Cross { at: inner, over },
            Level::Cross { at: outer, over },
            Level::Cross { at: inner, over },
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::kauffman_a;
    use crate::link::bracket::{jones_at, kauffman_bracket};
    use crate::link::diagram::plat_closure;
    use crate::link::invariants::{count_components, Orientation};
    use crate::word::BraidWord;

    fn plat(n: usize, letters: &[i32]) -> LinkDiagram {
        plat_closure(&BraidWord::new(n, letters.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn moves_preserve_the_bracket() {
        let a = kauffman_a();
        let d = plat(4, &[2, 1, 2, -3]);
        let base = kauffman_bracket(&d, a).unwrap();
        let r2 = reidemeister_two(&d, 3, 1, Over::Right).unwrap();
        assert_eq!(r2.crossing_count(), 6);
        assert!((kauffman_bracket(&r2, a).unwrap() - base).norm() < 1e-10);
        assert_eq!(reidemeister_three_sites(&d), vec![2]);
        let r3 = reidemeister_three(&d, 2).unwrap();
        assert!((kauffman_bracket(&r3, a).unwrap() - base).norm() < 1e-10);
        assert!(reidemeister_three(&d, 3).is_err());
    }

    #[test]
    fn curls_scale_the_bracket_and_keep_jones() {
        let a = kauffman_a();
        let d = plat(4, &[2, 2, -1]);
        let base = kauffman_bracket(&d, a).unwrap();
        let pos = reidemeister_one(&d, 3, 2, Over::Left).unwrap();
        let neg = reidemeister_one(&d, 3, 2, Over::Right).unwrap();
        assert!((kauffman_bracket(&pos, a).unwrap() - base * (-a.powi(3))).norm() < 1e-10);
        assert!((kauffman_bracket(&neg, a).unwrap() - base * (-a.powi(-3))).norm() < 1e-10);
        assert_eq!(count_components(&pos), count_components(&d));
        let v = jones_at(&d, &Orientation::default_for(&d)).unwrap();
        for curl in [pos, neg] {
            let w = jones_at(&curl, &Orientation::default_for(&curl)).unwrap();
            assert!((v - w).norm() < 1e-10);
        }
    }

    #[test]
    fn out_of_range_moves_rejected() {
        let d = plat(2, &[]);
        assert!(reidemeister_two(&d, 1, 1, Over::Left).is_err());
        assert!(reidemeister_one(&d, 0, 0, Over::Left).is_err());
        assert!(reidemeister_one(&d, 5, 0, Over::Left).is_err());
    }
}
