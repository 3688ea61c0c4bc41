#[path = "common/truncated.rs"]
mod truncated;

use std::sync::Arc;

use tatehh::barres::{bar_window, hochschild_cohomology};
use tatehh::bimod::Bimodule;
use tatehh::corpus;
use tatehh::tate::{syzygies, window_cohomology};
use truncated::Truncated;

fn library_dims(key: &str, top: usize) -> (Vec<usize>, Vec<usize>) {
    let e = corpus::get(key).unwrap();
    let a = Arc::new(e.algebra);
    let am = Bimodule::regular(&a);
    let bar = bar_window(&a, top + 1).unwrap();
    let classical = (0..=top).map(|n| hochschild_cohomology(&bar, &am, n).unwrap().dim()).collect();
    let t = syzygies(&a, &e.frobenius, top + 1).unwrap().window();
    let tate = (1..=top as i64).map(|n| window_cohomology(&t, &am, n).unwrap().group.dim()).collect();
    (classical, tate)
}

#[test]
fn hochschild_cohomology_of_dual_numbers_matches_oracle() {
    let oracle = Truncated { p: 5, m: 2 }.hochschild_dims(4);
    assert_eq!(oracle, [2, 1, 1, 1, 1]);
    let (classical, tate) = library_dims("dual5", 4);
    assert_eq!(classical, oracle);
    assert_eq!(tate, oracle[1..]);
}

#[test]
fn oracle_agrees_on_other_truncated_algebras() {
    for (key, p, m) in [("dual2", 2, 2), ("trunc3_f11", 11, 3)] {
        let oracle = Truncated { p, m }.hochschild_dims(3);
        let (classical, tate) = library_dims(key, 3);
        assert_eq!(classical, oracle, "{key}");
        assert_eq!(tate, oracle[1..], "{key}");
    }
}
