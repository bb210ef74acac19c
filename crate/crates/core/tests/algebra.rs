use anyonic::anyon::{fusion_paths, path_count_transfer, Label, PathBasis};
use anyonic::constants::delta;
use anyonic::linalg::{identity, max_abs_diff, unitarity_defect, CMatrix};
use anyonic::rep::JonesRep;
use num_complex::Complex64;

fn sectors(n: usize) -> Vec<Label> {
    Label::all().filter(|&s| PathBasis::new(n, s).dim() > 0).collect()
}

fn check_algebra(n: usize, sector: Label) -> f64 {
    let rep = JonesRep::new(n, sector);
    let d = Complex64::from(delta());
    let e = |i| rep.tl(i).unwrap().clone();
    let s = |l| rep.letter(l).unwrap().clone();
    let mut worst: f64 = 0.0;
    let mut note = |x: f64| worst = worst.max(x);
    for i in 1..n {
        note(max_abs_diff(&(&e(i) * &e(i)), &(e(i) * d)));
        note(max_abs_diff(&e(i), &e(i).adjoint()));
        note(unitarity_defect(&s(i as i32)));
        note(max_abs_diff(&(s(i as i32) * s(-(i as i32))), &identity(rep.dim())));
        for j in 1..n {
            if i.abs_diff(j) == 1 {
                note(max_abs_diff(&(e(i) * e(j) * e(i)), &e(i)));
                let (a, b) = (i as i32, j as i32);
                note(max_abs_diff(&(s(a) * s(b) * s(a)), &(s(b) * s(a) * s(b))));
            } else if i.abs_diff(j) >= 2 {
                note(max_abs_diff(&(e(i) * e(j)), &(e(j) * e(i))));
                let (a, b) = (i as i32, j as i32);
                note(max_abs_diff(&(s(a) * s(b)), &(s(b) * s(a))));
            }
        }
    }
    worst
}

#[test]
fn temperley_lieb_and_braid_relations_up_to_ten_strands() {
    for n in 2..=10 {
        for sector in sectors(n) {
            let dev = check_algebra(n, sector);
            assert!(dev <= 1e-10, "n={n} sector={sector:?}: {dev:e}");
        }
    }
}

#[test]
fn generator_spectrum() {
    let a = anyonic::constants::kauffman_a();
    for n in [3, 4, 6] {
        for sector in sectors(n) {
            let rep = JonesRep::new(n, sector);
            for i in 1..n as i32 {
                let s = rep.letter(i).unwrap();
                // (σ − A)(σ + A⁻³) = 0
                let dim = rep.dim();
                let p: CMatrix = (s - identity(dim) * a) * (s + identity(dim) * a.powi(-3));
                assert!(p.norm() < 1e-10);
            }
        }
    }
}

#[test]
fn dimension_routes_agree() {
    let expected = [1u64, 2, 5, 13, 34];
    for (m, want) in (1..=5).zip(expected) {
        assert_eq!(fusion_paths(2 * m, Label::VACUUM).len() as u64, want);
        assert_eq!(path_count_transfer(2 * m, Label::VACUUM), want);
    }
    for n in 0..=14 {
        for s in Label::all() {
            assert_eq!(fusion_paths(n, s).len() as u64, path_count_transfer(n, s), "n={n} s={s:?}");
        }
    }
}
