//! Whole computations on corpus algebras, parallel against one thread.

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use tatehh::bimod::Bimodule;
use tatehh::corpus;
use tatehh::products::{DiagonalWindow, EsEngine, RingTable};
use tatehh::tate::{complete_bar_window, FormulaEngine};

fn sequential<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        f()
    }
}

fn bench(c: &mut Criterion) {
    let q = corpus::get("qext17").unwrap();
    let (qa, qfr) = (Arc::new(q.algebra), q.frobenius);
    let t = corpus::get("trunc3_f11").unwrap();
    let (ta, tfr) = (Arc::new(t.algebra), t.frobenius);

    let tate = || {
        let fe = FormulaEngine::new(&qa, &qfr, 4).unwrap();
        let am = Bimodule::regular(&qa);
        (-3..=3).map(|n| fe.cohomology(&am, n).unwrap().dim()).sum::<usize>()
    };
    let ring = || {
        let es = EsEngine::new(&ta, &tfr, 7).unwrap();
        RingTable::compute(&es, 2).unwrap().dims.len()
    };
    let diagonal = || {
        let w = complete_bar_window(&ta, &tfr, 6).unwrap();
        DiagonalWindow::build(w, tfr.clone(), -4, 4, Some(1)).unwrap().degrees().len()
    };

    let mut g = c.benchmark_group("products");
    g.sample_size(10);
    g.bench_function("tate_qext17/parallel", |b| b.iter(tate));
    g.bench_function("tate_qext17/sequential", |b| b.iter(|| sequential(tate)));
    g.bench_function("ring_trunc3/parallel", |b| b.iter(ring));
    g.bench_function("ring_trunc3/sequential", |b| b.iter(|| sequential(ring)));
    g.bench_function("diagonal_trunc3/parallel", |b| b.iter(diagonal));
    g.bench_function("diagonal_trunc3/sequential", |b| b.iter(|| sequential(diagonal)));
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
