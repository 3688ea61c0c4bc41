use std::sync::Arc;

use tatehh::bimod::Bimodule;
use tatehh::corpus;
use tatehh::products::{fundamental_class_bar, verify_dual_dimensions, Duality};
use tatehh::tate::{window_homology, FormulaEngine};

#[test]
fn cap_with_the_fundamental_class_is_an_isomorphism() {
    for e in corpus::all() {
        let a = Arc::new(e.algebra);
        let fr = e.frobenius;
        let du = Duality::new(&a, &fr, 4).unwrap();
        let fe = FormulaEngine::new(&a, &fr, 5).unwrap();
        let am = Bimodule::regular(&a);
        let ka = am.shift_sequences(&fr).unwrap().k.sub;
        for m in [&am, &ka] {
            for n in -3..=3 {
                let row = du.row(&fe, m, n).unwrap();
                assert!(row.is_iso(), "{} n={n} {row:?}", e.key);
            }
        }
    }
}

#[test]
fn fundamental_class_of_dual_numbers_over_f2_is_nonzero() {
    let e = corpus::get("dual2").unwrap();
    let a = Arc::new(e.algebra);
    let (bar, w) = fundamental_class_bar(&a, &e.frobenius).unwrap();
    let h = window_homology(&bar, &w.module, -1).unwrap();
    assert_eq!(h.dim(), 2);
    assert!(!h.group.is_boundary(&w.cycle));
}

#[test]
fn dual_dimensions_match() {
    for e in corpus::all() {
        let a = Arc::new(e.algebra);
        let fe = FormulaEngine::new(&a, &e.frobenius, 5).unwrap();
        verify_dual_dimensions(&fe, -3..=3).unwrap();
    }
}
