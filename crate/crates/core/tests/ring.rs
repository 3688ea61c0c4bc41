use std::sync::Arc;

use tatehh::corpus;
use tatehh::products::{EsEngine, RingTable};

fn table(key: &str) -> RingTable {
    let e = corpus::get(key).unwrap();
    let a = Arc::new(e.algebra);
    let es = EsEngine::new(&a, &e.frobenius, 7).unwrap();
    RingTable::compute(&es, 2).unwrap()
}

#[test]
fn ring_axioms_hold_on_the_corpus() {
    for e in corpus::all() {
        let t = table(e.key);
        let rep = t.verify().unwrap();
        eprintln!("{}: {:?} dims {:?}", e.key, rep, t.dims);
    }
}

#[test]
fn dual_numbers_over_f2_are_generated_in_degrees_plus_minus_one() {
    let t = table("dual2");
    assert!(t.generated_in_degrees_pm1());
    let one = tatehh::exactla::Mat::unit_vector(t.unit.field(), t.dim(1), 0);
    let m = tatehh::exactla::Mat::unit_vector(t.unit.field(), t.dim(-1), 0);
    assert!(!t.product(1, &one, -1, &m).unwrap().is_zero());
}
