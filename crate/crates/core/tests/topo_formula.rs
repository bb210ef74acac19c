use anyonic::linalg::{identity, operator_norm, random_unitary, CMatrix};
use anyonic::link::Orientation;
use anyonic::topo::{
    initialize, measurement_link, prob_via_jones, prob_via_jones_with, simulate, FormulaConventions,
};
use anyonic::BraidWord;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_braid(rng: &mut ChaCha8Rng) -> BraidWord {
    let n = [4, 6][rng.random_range(0..2)];
    // plat(b·γ·b⁻¹) has 2|b| + 4 crossings
    BraidWord::random(n, rng.random_range(1..=9), rng)
}

#[test]
fn simulation_matches_jones_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..50 {
        let b = random_braid(&mut rng);
        let sim = simulate(&b).unwrap().measure_pair(1).unwrap().prob0;
        let j = prob_via_jones(&b).unwrap();
        assert!((sim - j.prob0).abs() < 1e-8, "{b}: {sim} vs {}", j.prob0);
        assert!(j.residual_imag.abs() < 1e-8);
        assert!((-1e-12..=1.0 + 1e-12).contains(&sim));
    }
    for n in [4, 6, 8] {
        assert!((prob_via_jones(&BraidWord::identity(n)).unwrap().prob0 - 1.0).abs() < 1e-10);
    }
}

#[test]
fn formula_is_orientation_robust() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..15 {
        let b = random_braid(&mut rng);
        let link = measurement_link(&b).unwrap();
        let base = prob_via_jones(&b).unwrap().prob0;
        let c = anyonic::link::count_components(&link);
        for k in 0..c {
            let mut o = Orientation::default_for(&link);
            o.reversed[k] = true;
            let p = prob_via_jones_with(&b, &o, FormulaConventions::default()).unwrap().prob0;
            assert!((p - base).abs() < 1e-8, "{b} component {k}");
        }
    }
}

#[test]
fn stats_of_measured_link() {
    let link = measurement_link(&BraidWord::identity(4)).unwrap();
    assert_eq!(anyonic::link::count_minima(&link), 3);
    assert_eq!(anyonic::link::count_components(&link), 3);
}

#[test]
fn braid_then_inverse_restores_state() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..10 {
        let b = BraidWord::random(8, 10, &mut rng);
        let r = initialize(8).unwrap();
        let back = r.execute_braid(&b).unwrap().execute_braid(&b.inverse()).unwrap();
        assert!((back.state() - r.state()).norm() < 1e-10);
        assert!((r.execute_braid(&b).unwrap().state().norm() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn intra_batch_words_do_not_leak() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let r = initialize(12).unwrap();
    for _ in 0..10 {
        let letters: Vec<i32> = (0..12)
            .map(|_| {
                let batch = rng.random_range(0..3) as i32;
                let g = 4 * batch + rng.random_range(1..=3);
                if rng.random_bool(0.5) { g } else { -g }
            })
            .collect();
        let out = r.execute_braid(&BraidWord::new(12, letters).unwrap()).unwrap();
        assert!(out.leakage() < 1e-12);
        let total: f64 = out.readout_distribution().values().sum();
        assert!((total - 1.0).abs() < 1e-10);
    }
}

#[test]
fn cross_batch_leakage_regression() {
    let r = initialize(8).unwrap();
    let leak = r.execute_braid(&BraidWord::new(8, vec![4]).unwrap()).unwrap().leakage();
    assert!(leak > 1e-3);
    assert!((leak - LEAKAGE_SIGMA4).abs() < 1e-12, "{leak:.16}");
}

/// Leakage of σ₄ on eight anyons from the all-zero state. σ₄ = A + A⁻¹e₄
/// sends weight |A⁻¹·√d(2)/d(1)|² = 1/φ to the path with p₄ = 2.
const LEAKAGE_SIGMA4: f64 = 0.6180339887498950;

#[test]
fn perturbation_bound() {
    // |⟨ψ|X†ΠX|ψ⟩ − ⟨ψ|X'†ΠX'|ψ⟩| ≤ 2‖X − X'‖
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let r = initialize(6).unwrap();
    let rep = r.representation();
    for _ in 0..20 {
        let b = BraidWord::random(6, 8, &mut rng);
        let x = rep.word(&b).unwrap();
        let eps = 10f64.powf(-rng.random_range(1.0..4.0));
        let h = random_unitary(rep.dim(), &mut rng);
        let herm = (&h + h.adjoint()) * Complex64::new(eps / 4.0, 0.0);
        let i = Complex64::i();
        let id = identity(rep.dim());
        let cayley: CMatrix = (&id - &herm * i).try_inverse().unwrap() * (&id + &herm * i);
        let x2 = &x * cayley;
        let gap = operator_norm(&(&x - &x2));
        let p1 = r.with_state(&x * r.state()).unwrap().measure_pair(1).unwrap().prob0;
        let p2 = r.with_state(&x2 * r.state()).unwrap().measure_pair(1).unwrap().prob0;
        assert!((p1 - p2).abs() <= 2.0 * gap + 1e-14);
    }
}
