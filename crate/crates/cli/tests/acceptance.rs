//! End-to-end acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS or FAIL line; exits nonzero if any fails.

#[path = "../../core/tests/common/truncated.rs"]
mod truncated;

use std::path::Path;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use tatehh::algebra::{Algebra, Frobenius};
use tatehh::barres::{bar_window, hochschild_cohomology};
use tatehh::bimod::Bimodule;
use tatehh::corpus;
use tatehh::exactla::Mat;
use tatehh::products::{verify_compatibility, verify_dual_dimensions, verify_engine_agreement, Duality, EsEngine, RingTable};
use tatehh::tate::{
    complete_bar_window, enveloping_radical, minimality_check, syzygies, verify_dimension_shift, verify_norm_sequence,
    verify_weak_projective_vanishing, window_cohomology, FormulaEngine, StableEngine,
};
use truncated::Truncated;

type Outcome = Result<String, String>;

/// Name, check and optional time limit.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn load(key: &str) -> (Arc<Algebra>, Frobenius) {
    let e = corpus::get(key).unwrap_or_else(|| panic!("corpus entry {key}"));
    (Arc::new(e.algebra), e.frobenius)
}

fn corpus_all() -> Vec<(&'static str, Arc<Algebra>, Frobenius)> {
    corpus::all().into_iter().map(|e| (e.key, Arc::new(e.algebra), e.frobenius)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn twist(a: &Arc<Algebra>, beta: &Mat) -> Bimodule {
    Bimodule::regular(a).twist(&Mat::identity(a.field(), a.dim()), beta)
}

fn field_vanishes() -> Outcome {
    let (a, fr) = load("f7");
    let am = Bimodule::regular(&a);
    let fe = FormulaEngine::new(&a, &fr, 5).map_err(|e| e.to_string())?;
    let se = StableEngine::new(&a, &fr, 4).map_err(|e| e.to_string())?;
    for n in -4..=4 {
        let dims = [
            fe.cohomology(&am, n).map_err(|e| e.to_string())?.dim(),
            fe.homology(&am, n).map_err(|e| e.to_string())?.dim(),
            se.cohomology(&am, n).map_err(|e| e.to_string())?.dim(),
            se.homology(&am, n).map_err(|e| e.to_string())?.1.dim(),
        ];
        ensure(dims == [0; 4], || format!("degree {n}: {dims:?}"))?;
    }
    Ok("formula and stable routes vanish for n in -4..=4".into())
}

fn routes_agree() -> Outcome {
    let mut count = 0;
    for (key, a, fr) in corpus_all() {
        let fe = FormulaEngine::new(&a, &fr, 4).map_err(|e| e.to_string())?;
        let se = StableEngine::new(&a, &fr, 3).map_err(|e| e.to_string())?;
        for m in [Bimodule::regular(&a), twist(&a, fr.nu())] {
            for n in -3..=3 {
                let f = (fe.cohomology(&m, n).map_err(|e| e.to_string())?.dim(), fe.homology(&m, n).map_err(|e| e.to_string())?.dim());
                let s = (se.cohomology(&m, n).map_err(|e| e.to_string())?.dim(), se.homology(&m, n).map_err(|e| e.to_string())?.1.dim());
                ensure(f == s, || format!("{key} degree {n}: formula {f:?}, stable {s:?}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} (algebra, module, degree) triples agree"))
}

fn norm_sequences() -> Outcome {
    for (key, a, fr) in corpus_all() {
        let fe = FormulaEngine::new(&a, &fr, 2).map_err(|e| e.to_string())?;
        let ns = verify_norm_sequence(&fe, &Bimodule::regular(&a)).map_err(|e| format!("{key}: {e}"))?;
        if key == "dual2" {
            ensure(ns.dims == [2, 2, 2, 2] && ns.norm_rank == 0, || format!("dual2: {ns:?}"))?;
        }
    }
    Ok("exact on the corpus; dual2 has dims (2, 2, 2, 2) and zero norm".into())
}

fn product_engines() -> Outcome {
    let mut out = Vec::new();
    for key in ["dual5", "dual2"] {
        let (a, fr) = load(key);
        let rep = verify_engine_agreement(&a, &fr, 2, None).map_err(|e| format!("{key}: {e}"))?;
        ensure(rep.nonzero > 0, || format!("{key}: every product vanished"))?;
        out.push(format!("{key} {}/{} nonzero", rep.nonzero, rep.pairs));
    }
    Ok(out.join(", "))
}

fn ring_axioms() -> Outcome {
    let mut checks = 0;
    for (key, a, fr) in corpus_all() {
        let es = EsEngine::new(&a, &fr, 7).map_err(|e| e.to_string())?;
        let rep = RingTable::compute(&es, 2).and_then(|t| t.verify()).map_err(|e| format!("{key}: {e}"))?;
        checks += rep.unit_checks + rep.associativity_checks + rep.commutativity_checks;
    }
    Ok(format!("{checks} axiom instances on the corpus"))
}

fn duality() -> Outcome {
    for (key, a, fr) in corpus_all() {
        let du = Duality::new(&a, &fr, 4).map_err(|e| e.to_string())?;
        let fe = FormulaEngine::new(&a, &fr, 5).map_err(|e| e.to_string())?;
        let am = Bimodule::regular(&a);
        let ka = am.shift_sequences(&fr).map_err(|e| e.to_string())?.k.sub;
        for (label, m) in [("A", &am), ("K(A)", &ka)] {
            for n in -3..=3 {
                let row = du.row(&fe, m, n).map_err(|e| e.to_string())?;
                ensure(row.is_iso(), || format!("{key}, {label}, degree {n}: {row:?}"))?;
            }
        }
    }
    Ok("full rank with matching dimensions for A and K(A), n in -3..=3".into())
}

fn dual_dimensions() -> Outcome {
    for (key, a, fr) in corpus_all() {
        let fe = FormulaEngine::new(&a, &fr, 5).map_err(|e| e.to_string())?;
        verify_dual_dimensions(&fe, -3..=3).map_err(|e| format!("{key}: {e}"))?;
    }
    // on qext17 the ν² twist must matter: ν² ≠ 1 and some group changes under it
    let (a, fr) = load("qext17");
    let nu2 = fr.nu().matmul(fr.nu());
    ensure(nu2 != Mat::identity(a.field(), a.dim()), || "qext17: ν² is the identity".into())?;
    let fe = FormulaEngine::new(&a, &fr, 5).map_err(|e| e.to_string())?;
    let (am, tw) = (Bimodule::regular(&a), twist(&a, &nu2));
    let mut moved = Vec::new();
    for n in -4..=2 {
        let plain = fe.cohomology(&am, n).map_err(|e| e.to_string())?.dim();
        let twisted = fe.cohomology(&tw, n).map_err(|e| e.to_string())?.dim();
        if plain != twisted {
            moved.push(n);
        }
    }
    ensure(!moved.is_empty(), || "qext17: twisting by ν² changes no Tate group".into())?;
    Ok(format!("corpus n in -3..=3; on qext17 the ν² twist changes degrees {moved:?}"))
}

fn projective_vanishing_and_shift() -> Outcome {
    for (key, a, fr) in corpus_all() {
        let fe = FormulaEngine::new(&a, &fr, 5).map_err(|e| e.to_string())?;
        verify_weak_projective_vanishing(&fe, &Bimodule::free(&a, 1), 3).map_err(|e| format!("{key}: {e}"))?;
        verify_dimension_shift(&fe, &Bimodule::regular(&a), 3).map_err(|e| format!("{key}: {e}"))?;
    }
    Ok("Ĥ(A, A⊗A) = 0 for |i| ≤ 3 and the K/C shift holds on the corpus".into())
}

fn minimality() -> Outcome {
    let (a, fr) = load("dual5");
    let t = complete_bar_window(&a, &fr, 4).map_err(|e| e.to_string())?;
    let rad = enveloping_radical(&a).map_err(|e| e.to_string())?;
    let bad: Vec<i64> = minimality_check(&t, &rad).into_iter().filter(|(_, m)| !m).map(|(n, _)| n).collect();
    ensure(bad.is_empty(), || format!("dual5 not minimal in degrees {bad:?}"))?;
    let (a, fr) = load("trunc3_f11");
    let t = complete_bar_window(&a, &fr, 4).map_err(|e| e.to_string())?;
    let rad = enveloping_radical(&a).map_err(|e| e.to_string())?;
    let minimal: Vec<i64> = minimality_check(&t, &rad).into_iter().filter(|&(n, m)| n >= 1 && m).map(|(n, _)| n).collect();
    ensure(minimal.is_empty(), || format!("trunc3_f11 minimal in degrees {minimal:?}"))?;
    Ok("dual5 minimal; trunc3_f11 non-minimal in every degree ≥ 1".into())
}

fn compatibility() -> Outcome {
    let (a, fr) = load("dual5");
    let am = Bimodule::regular(&a);
    let rep = verify_compatibility(&a, &fr, &am, &am, 2, None).map_err(|e| e.to_string())?;
    let counts = [rep.cup, rep.cap_zero, rep.cap_positive, rep.cap_mixed, rep.omega];
    ensure(counts.iter().all(|&c| c > 0), || format!("a square was never exercised: {rep:?}"))?;
    Ok(format!("{} instances up to (2, 2)", rep.total()))
}

fn hochschild_oracle() -> Outcome {
    let oracle = Truncated { p: 5, m: 2 }.hochschild_dims(4);
    let (a, fr) = load("dual5");
    let am = Bimodule::regular(&a);
    let bar = bar_window(&a, 5).map_err(|e| e.to_string())?;
    let classical: Vec<usize> = (0..=4)
        .map(|n| hochschild_cohomology(&bar, &am, n).map(|h| h.dim()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(classical == oracle, || format!("bar {classical:?}, oracle {oracle:?}"))?;
    let t = syzygies(&a, &fr, 5).map_err(|e| e.to_string())?.window();
    let tate: Vec<usize> = (1..=4)
        .map(|n| window_cohomology(&t, &am, n).map(|h| h.dim()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(tate == oracle[1..], || format!("Tate {tate:?}, oracle {oracle:?}"))?;
    Ok(format!("dims {oracle:?}"))
}

fn check_is_deterministic() -> Outcome {
    let cache = std::env::temp_dir().join(format!("tatehh-acceptance-{}", std::process::id()));
    let spec = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/dual5.toml");
    let run = |extra: &[&str]| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_tatehh"))
            .args(["check", spec.to_str().unwrap(), "--format", "json"])
            .args(extra)
            .env("CACHE_DIR", &cache)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
        Ok(out.stdout)
    };
    let runs = [run(&["--no-cache"])?, run(&["--no-cache"])?, run(&[])?, run(&[])?];
    let _ = std::fs::remove_dir_all(&cache);
    ensure(runs.iter().all(|r| *r == runs[0]), || "check JSON differs between runs".into())?;
    Ok(format!("{} bytes, identical cold and cached", runs[0].len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("field Tate groups vanish", field_vanishes, Some(Duration::from_secs(1))),
        ("formula and stable routes agree", routes_agree, Some(Duration::from_secs(60))),
        ("norm sequence", norm_sequences, None),
        ("stable cup equals diagonal cup", product_engines, Some(Duration::from_secs(120))),
        ("ring axioms", ring_axioms, None),
        ("cap with the fundamental class", duality, None),
        ("dual dimensions", dual_dimensions, None),
        ("projective vanishing and dimension shift", projective_vanishing_and_shift, None),
        ("minimality", minimality, None),
        ("compatibility squares", compatibility, None),
        ("Hochschild cohomology oracle", hochschild_oracle, None),
        ("deterministic check output", check_is_deterministic, None),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.into_iter().enumerate() {
        let t0 = Instant::now();
        let mut res = f();
        let took = t0.elapsed();
        if let (Ok(_), Some(l)) = (&res, limit) {
            if took > l {
                res = Err(format!("took {took:.2?}, limit {l:?}"));
            }
        }
        match res {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of 12 criteria failed");
        ExitCode::FAILURE
    }
}
