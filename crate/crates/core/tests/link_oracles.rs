use anyonic::constants::{delta, jones_t, kauffman_a};
use anyonic::link::{
    jones_at, kauffman_bracket, plat_closure, reidemeister_one, reidemeister_three,
    reidemeister_three_sites, reidemeister_two, LinkDiagram, Orientation, Over,
};
use anyonic::rep::plat_bracket;
use anyonic::BraidWord;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn plat_amplitude_matches_state_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = kauffman_a();
    for _ in 0..100 {
        let n = [4, 6][rng.random_range(0..2)];
        let len = rng.random_range(0..=12);
        let w = BraidWord::random(n, len, &mut rng);
        let via_rep = plat_bracket(&w).unwrap();
        let via_sum = kauffman_bracket(&plat_closure(&w).unwrap(), a).unwrap();
        assert!((via_rep - via_sum).norm() < 1e-8, "{w}: {via_rep} vs {via_sum}");
    }
}

/// Random word on `n` strands containing a σᵢσᵢ₊₁σᵢ triple.
fn word_with_triple(n: usize, rng: &mut ChaCha8Rng) -> BraidWord {
    let mut letters = BraidWord::random(n, rng.random_range(0..=5), rng).letters().to_vec();
    let i = rng.random_range(1..n as i32 - 1);
    let sign = if rng.random_bool(0.5) { 1 } else { -1 };
    let (x, y) = if rng.random_bool(0.5) { (i, i + 1) } else { (i + 1, i) };
    let at = rng.random_range(0..=letters.len());
    letters.splice(at..at, [sign * x, sign * y, sign * x]);
    BraidWord::new(n, letters).unwrap()
}

fn random_r2(d: &LinkDiagram, rng: &mut ChaCha8Rng) -> LinkDiagram {
    loop {
        let level = rng.random_range(0..=d.levels().len());
        let width = d.width_before(level);
        if width >= 2 {
            let pos = rng.random_range(0..width - 1);
            let over = if rng.random_bool(0.5) { Over::Left } else { Over::Right };
            return reidemeister_two(d, level, pos, over).unwrap();
        }
    }
}

#[test]
fn bracket_invariant_under_r2_and_r3() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let a = kauffman_a();
    for _ in 0..50 {
        let n = [4, 6][rng.random_range(0..2)];
        let d = plat_closure(&word_with_triple(n, &mut rng)).unwrap();
        let base = kauffman_bracket(&d, a).unwrap();
        let r2 = random_r2(&d, &mut rng);
        assert!((kauffman_bracket(&r2, a).unwrap() - base).norm() < 1e-10);
        let sites = reidemeister_three_sites(&d);
        assert!(!sites.is_empty());
        let r3 = reidemeister_three(&d, sites[rng.random_range(0..sites.len())]).unwrap();
        assert!((kauffman_bracket(&r3, a).unwrap() - base).norm() < 1e-10);
        // both moves stacked
        let both = random_r2(&r3, &mut rng);
        assert!((kauffman_bracket(&both, a).unwrap() - base).norm() < 1e-10);
    }
}

#[test]
fn r1_scales_bracket_and_keeps_jones() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = kauffman_a();
    for _ in 0..30 {
        let w = BraidWord::random(4, rng.random_range(0..=8), &mut rng);
        let d = plat_closure(&w).unwrap();
        let base = kauffman_bracket(&d, a).unwrap();
        let v = jones_at(&d, &Orientation::default_for(&d)).unwrap();
        let level = rng.random_range(0..=d.levels().len());
        let width = d.width_before(level);
        if width == 0 {
            continue;
        }
        let pos = rng.random_range(0..width);
        for (over, factor) in [(Over::Left, -a.powi(3)), (Over::Right, -a.powi(-3))] {
            let k = reidemeister_one(&d, level, pos, over).unwrap();
            assert!((kauffman_bracket(&k, a).unwrap() - base * factor).norm() < 1e-10);
            let vk = jones_at(&k, &Orientation::default_for(&k)).unwrap();
            assert!((vk - v).norm() < 1e-10);
        }
    }
}

#[test]
fn jones_magnitude_is_orientation_free() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let w = BraidWord::random(6, rng.random_range(0..=8), &mut rng);
        let d = plat_closure(&w).unwrap();
        let base = jones_at(&d, &Orientation::default_for(&d)).unwrap().norm();
        let c = anyonic::link::count_components(&d);
        for k in 0..c {
            let mut o = Orientation::default_for(&d);
            o.reversed[k] = true;
            assert!((jones_at(&d, &o).unwrap().norm() - base).abs() < 1e-10);
        }
    }
}

#[test]
fn jones_regressions() {
    let t = jones_t();
    let unknot = plat_closure(&BraidWord::identity(2)).unwrap();
    assert!((jones_at(&unknot, &Orientation::default_for(&unknot)).unwrap() - 1.0).norm() < 1e-10);
    let unlink = plat_closure(&BraidWord::identity(4)).unwrap();
    let v = jones_at(&unlink, &Orientation::default_for(&unlink)).unwrap();
    assert!((v + delta()).norm() < 1e-10);
    // left-handed trefoil as the plat closure of σ₂⁻³
    let tref = plat_closure(&BraidWord::new(4, vec![-2, -2, -2]).unwrap()).unwrap();
    let v = jones_at(&tref, &Orientation::default_for(&tref)).unwrap();
    let closed = -t.powi(-4) + t.powi(-3) + t.powi(-1);
    assert!((v - closed).norm() < 1e-10);
    let mirror = plat_closure(&BraidWord::new(4, vec![2, 2, 2]).unwrap()).unwrap();
    let v = jones_at(&mirror, &Orientation::default_for(&mirror)).unwrap();
    assert!((v - (t + t.powi(3) - t.powi(4))).norm() < 1e-10);
}
