use std::sync::Arc;

use tatehh::bimod::Bimodule;
use tatehh::corpus;
use tatehh::products::{cap_via_diagonal, comparison, push_forward, pull_back, verify_engine_agreement, DiagonalWindow, EsEngine, Pairing};
use tatehh::tate::{complete_bar_window, window_homology};

#[test]
fn stable_cup_agrees_with_diagonal_cup() {
    for key in ["dual2", "dual5"] {
        let e = corpus::get(key).unwrap();
        let rep = verify_engine_agreement(&Arc::new(e.algebra), &e.frobenius, 2, Some(5)).unwrap();
        assert!(rep.nonzero > 0 && rep.nonzero < rep.pairs, "{key} {rep:?}");
    }
}

#[test]
fn stable_cap_agrees_with_diagonal_cap() {
    for key in ["dual2", "dual5", "trunc3_f11"] {
        let e = corpus::get(key).unwrap();
        let a = Arc::new(e.algebra);
        let fr = e.frobenius;
        let bar = complete_bar_window(&a, &fr, 7).unwrap();
        let es = EsEngine::new(&a, &fr, 6).unwrap();
        let c = comparison(&bar, &es.t, &fr).unwrap();
        let dw = DiagonalWindow::build(bar.clone(), fr.clone(), -4, 4, None).unwrap();
        let am = Bimodule::regular(&a);
        let id = tatehh::exactla::Mat::identity(a.field(), a.dim());
        let n = am.twist(&id, fr.nu_inv());
        let unit = Pairing::left_unit(&n);
        let mut nonzero = 0;
        for r in -2..=2i64 {
            let hr = es.cohomology(&am, r).unwrap();
            for s in -2..=2i64 {
                let hs = window_homology(&bar, &n, s).unwrap();
                let tgt = es.homology(&n, s - r).unwrap();
                for x in 0..hr.dim() {
                    let u = hr.group.representatives().column(x);
                    let ub = pull_back(&c, &bar, &es.t, &am, r, &u).unwrap();
                    for y in 0..hs.dim() {
                        let z = hs.group.representatives().column(y);
                        let lhs = es.cap(&u, r, &push_forward(&c, &bar, &es.t, &n, s, &z).unwrap(), s, &n).unwrap();
                        let via = cap_via_diagonal(&dw, &unit, &ub, r, &z, s).unwrap();
                        let rhs = push_forward(&c, &bar, &es.t, &n, s - r, &via).unwrap();
                        assert!(tgt.group.is_cycle(&lhs) && tgt.group.is_cycle(&rhs));
                        assert!(tgt.group.is_boundary(&(&lhs - &rhs)), "{key} ({r},{s}) {x} {y}");
                        nonzero += usize::from(!tgt.group.is_boundary(&lhs));
                    }
                }
            }
        }
        assert!(nonzero > 0, "{key}");
    }
}
