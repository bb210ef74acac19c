use anyonic::anyon::Label;
use anyonic::linalg::max_abs_diff;
use anyonic::link::{count_components, count_minima, plat_closure, writhe, Orientation};
use anyonic::rep::JonesRep;
use anyonic::topo::initialize;
use anyonic::BraidWord;
use proptest::prelude::*;

fn word(strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    let g = strands as i32 - 1;
    prop::collection::vec((1..=g, any::<bool>()), 0..=max_len).prop_map(move |v| {
        let letters = v.into_iter().map(|(l, neg)| if neg { -l } else { l }).collect();
        BraidWord::new(strands, letters).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_format_round_trips(w in word(6, 12)) {
        let back: BraidWord = w.to_text().parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn free_reduction_keeps_the_image(w in word(4, 10)) {
        let rep = JonesRep::new(4, Label::VACUUM);
        let a = rep.word(&w).unwrap();
        let b = rep.word(&w.free_reduce()).unwrap();
        prop_assert!(max_abs_diff(&a, &b) < 1e-10);
    }

    #[test]
    fn probabilities_are_probabilities(w in word(6, 10), pair in 1usize..=3) {
        let r = initialize(6).unwrap().execute_braid(&w).unwrap();
        let p = r.measure_pair(pair).unwrap().prob0;
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&p));
        let leak = r.leakage();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&leak));
    }

    #[test]
    fn plat_stats_are_consistent(w in word(6, 8)) {
        let d = plat_closure(&w).unwrap();
        let c = count_components(&d);
        prop_assert!(c >= 1 && count_minima(&d) >= c);
        prop_assert_eq!(count_minima(&d), 3);
        let v = w.inverse().then(&w).unwrap();
        let dv = plat_closure(&v).unwrap();
        prop_assert_eq!(writhe(&dv, &Orientation::default_for(&dv)), 0);
    }
}
