use std::sync::Arc;

use tatehh::barres::{bar_window, cup_bar};
use tatehh::bimod::Bimodule;
use tatehh::corpus;
use tatehh::products::{cup_via_diagonal, DiagonalWindow, Pairing};
use tatehh::tate::{complete_bar_window, window_cohomology};

fn setup(key: &str, w: usize, seed: Option<u64>) -> (Arc<tatehh::algebra::Algebra>, DiagonalWindow) {
    let e = corpus::get(key).unwrap();
    let a = Arc::new(e.algebra);
    let t = complete_bar_window(&a, &e.frobenius, w).unwrap();
    let dw = DiagonalWindow::build(t, e.frobenius, -(w as i64), w as i64, seed).unwrap();
    (a, dw)
}

#[test]
fn diagonal_is_a_chain_map() {
    for key in ["dual2", "dual5", "trunc3_f11"] {
        let (_, dw) = setup(key, 4, None);
        assert!(dw.verify().unwrap() > 0, "{key}");
        let (_, dw) = setup(key, 4, Some(11));
        dw.verify().unwrap();
    }
}

#[test]
fn diagonal_cup_matches_bar_cup_in_positive_degrees() {
    for key in ["dual2", "dual5"] {
        let (a, dw) = setup(key, 4, None);
        let t = &dw.frames.t;
        let am = Bimodule::regular(&a);
        let pairing = Pairing::tensor(&am, &am);
        let bar = bar_window(&a, 4).unwrap();
        for r in 0..=2i64 {
            for s in 0..=(2 - r) {
                let hr = window_cohomology(t, &am, r).unwrap();
                let hs = window_cohomology(t, &am, s).unwrap();
                let tgt = window_cohomology(t, &pairing.out, r + s).unwrap();
                for i in 0..hr.dim() {
                    let u = hr.group.representatives().column(i);
                    for j in 0..hs.dim() {
                        let v = hs.group.representatives().column(j);
                        let via = cup_via_diagonal(&dw, &pairing, &u, r, &v, s).unwrap();
                        let reference =
                            cup_bar(&bar, &u, r as usize, &v, s as usize, &am, &am, &pairing.proj).unwrap();
                        assert!(tgt.group.is_cycle(&via), "{key} ({r},{s})");
                        assert!(tgt.group.is_boundary(&(&via - &reference)), "{key} ({r},{s}) {i} {j}");
                    }
                }
            }
        }
    }
}

#[test]
fn product_classes_do_not_depend_on_the_seed() {
    for key in ["dual5", "trunc3_f11"] {
        let e = corpus::get(key).unwrap();
        let a = Arc::new(e.algebra);
        let t = complete_bar_window(&a, &e.frobenius, 6).unwrap();
        let first = DiagonalWindow::build(t.clone(), e.frobenius.clone(), -4, 4, Some(3)).unwrap();
        let second = DiagonalWindow::build(t.clone(), e.frobenius.clone(), -4, 4, Some(17)).unwrap();
        let am = Bimodule::regular(&a);
        let mult = Pairing::left_unit(&am);
        let mut nonzero = 0;
        for r in -2..=2i64 {
            for s in -2..=2i64 {
                let hr = window_cohomology(&t, &am, r).unwrap();
                let hs = window_cohomology(&t, &am, s).unwrap();
                let tgt = window_cohomology(&t, &am, r + s).unwrap();
                for i in 0..hr.dim() {
                    let u = hr.group.representatives().column(i);
                    for j in 0..hs.dim() {
                        let v = hs.group.representatives().column(j);
                        let x = tgt.group.class_of(&cup_via_diagonal(&first, &mult, &u, r, &v, s).unwrap());
                        let y = tgt.group.class_of(&cup_via_diagonal(&second, &mult, &u, r, &v, s).unwrap());
                        assert_eq!(x, y, "{key} ({r},{s})");
                        nonzero += usize::from(!x.is_zero());
                    }
                }
            }
        }
        assert!(nonzero > 0, "{key}");
    }
}
