use std::sync::Arc;

use tatehh::bimod::Bimodule;
use tatehh::corpus;
use tatehh::products::verify_compatibility;

#[test]
fn hochschild_squares_commute_on_dual_numbers() {
    let e = corpus::get("dual5").unwrap();
    let a = Arc::new(e.algebra);
    let am = Bimodule::regular(&a);
    let rep = verify_compatibility(&a, &e.frobenius, &am, &am, 2, None).unwrap();
    assert!(rep.cup > 0 && rep.cap_zero > 0 && rep.cap_positive > 0 && rep.cap_mixed > 0 && rep.omega > 0, "{rep:?}");
}

#[test]
fn cap_square_on_truncated_cubic() {
    let e = corpus::get("trunc3_f11").unwrap();
    let a = Arc::new(e.algebra);
    let am = Bimodule::regular(&a);
    let rep = verify_compatibility(&a, &e.frobenius, &am, &am, 2, None).unwrap();
    assert!(rep.cap_mixed > 0, "{rep:?}");
}
