//! One function per subcommand; each returns a finished report.

use std::collections::BTreeMap;
use std::time::Instant;

use tatehh::barres::{bar_window, hochschild_cohomology, hochschild_homology};
use tatehh::bimod::Bimodule;
use tatehh::exactla::Mat;
use tatehh::products::{
    verify_compatibility, verify_dual_dimensions, verify_engine_agreement, Duality, EsEngine, RingTable,
};
use tatehh::tate::{
    complete_bar_window, enveloping_radical, minimality_check, verify_dimension_shift, verify_norm_sequence,
    verify_weak_projective_vanishing, FormulaEngine, StableEngine,
};
use tatehh::Error;

use crate::error::{CliError, Result};
use crate::report::{matrix, Report, Status, Table};
use crate::spec::{Engine, SpecFile};

/// Coefficient modules reachable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Module {
    /// A itself.
    A,
    /// `₁A_ν`.
    ANu,
    /// `₁A_{ν⁻¹}`.
    ANuInv,
    /// `₁A_{ν²}`.
    ANu2,
    /// `A ⊗ A`, free of rank one.
    AxA,
    /// `D(A) = Hom_k(A, k)`.
    DualA,
    /// The kernel `K(A)` of a free cover.
    K,
    /// The cokernel `C(A)` of an injective hull.
    C,
}

impl Module {
    pub const NAMES: [&'static str; 8] = ["A", "A_nu", "A_nu_inv", "A_nu2", "AxA", "DA", "K", "C"];

    pub fn parse(s: &str) -> Result<Module> {
        let all = [Module::A, Module::ANu, Module::ANuInv, Module::ANu2, Module::AxA, Module::DualA, Module::K, Module::C];
        Module::NAMES
            .iter()
            .position(|n| *n == s)
            .map(|i| all[i])
            .ok_or_else(|| CliError::Usage(format!("unknown module {s:?}; expected one of {}", Module::NAMES.join(", "))))
    }

    pub fn name(self) -> &'static str {
        match self {
            Module::A => "A",
            Module::ANu => "A_nu",
            Module::ANuInv => "A_nu_inv",
            Module::ANu2 => "A_nu2",
            Module::AxA => "AxA",
            Module::DualA => "DA",
            Module::K => "K",
            Module::C => "C",
        }
    }

    pub fn build(self, spec: &SpecFile) -> Result<Bimodule> {
        let a = &spec.algebra;
        let fr = &spec.frobenius;
        let am = Bimodule::regular(a);
        let id = Mat::identity(a.field(), a.dim());
        Ok(match self {
            Module::A => am,
            Module::ANu => am.twist(&id, fr.nu()),
            Module::ANuInv => am.twist(&id, fr.nu_inv()),
            Module::ANu2 => am.twist(&id, &fr.nu().matmul(fr.nu())),
            Module::AxA => Bimodule::free(a, 1),
            Module::DualA => am.k_dual(),
            Module::K => am.shift_sequences(fr)?.k.sub,
            Module::C => am.shift_sequences(fr)?.c.quot,
        })
    }
}

pub fn validate(spec: &SpecFile) -> Report {
    let a = &spec.algebra;
    let d = a.dim();
    let mut r = Report::new("validate", Some(spec));
    r.check("parse", Status::Pass, "well-formed spec file");
    r.check("associativity", Status::Pass, format!("{} basis triples", d * d * d));
    r.check("unit", Status::Pass, format!("{} is a two-sided unit", a.labels()[0]));
    r.check("frobenius_form", Status::Pass, "the Gram matrix of λ is invertible");
    r.data("basis", a.labels());
    r.data("is_commutative", a.is_commutative());
    r.data("is_symmetric", spec.frobenius.is_symmetric());
    match a.radical() {
        Ok(rad) => r.data("radical_dim", rad.basis.dim()),
        Err(e) => r.data("radical_dim", e.to_string()),
    }
    r
}

pub fn frobenius(spec: &SpecFile) -> Report {
    let fr = &spec.frobenius;
    let mut r = Report::new("frobenius", Some(spec));
    r.data("functional", matrix(&fr.lambda));
    r.data("gram", matrix(&fr.gram));
    r.data("dual_basis", matrix(&fr.dual));
    r.data("nakayama", matrix(fr.nu()));
    r.data("nakayama_order", fr.nakayama.order(NAKAYAMA_ORDER_BOUND));
    r.data("is_symmetric", fr.is_symmetric());
    r
}

/// Orders above this are reported as unknown.
pub const NAKAYAMA_ORDER_BOUND: usize = 1024;

pub fn hochschild(spec: &SpecFile, min: usize, max: usize, module: Module) -> Result<Report> {
    if min > max {
        return Err(CliError::Usage(format!("--min {min} exceeds --max {max}")));
    }
    let m = module.build(spec)?;
    let bar = bar_window(&spec.algebra, max + 1)?;
    let mut r = Report::new("hochschild", Some(spec));
    r.arg("min", min).arg("max", max).arg("module", module.name());
    let mut rows = Vec::new();
    let mut co_reps = BTreeMap::new();
    let mut ho_reps = BTreeMap::new();
    for n in min..=max {
        let co = hochschild_cohomology(&bar, &m, n)?;
        let ho = hochschild_homology(&bar, &m, n)?;
        rows.push(vec![n as i64, co.dim() as i64, ho.dim() as i64]);
        co_reps.insert(n, matrix(&co.representatives()));
        ho_reps.insert(n, matrix(&ho.representatives()));
    }
    r.tables.push(table("hochschild", &["degree", "cohomology", "homology"], rows));
    r.data("cohomology_representatives", co_reps);
    r.data("homology_representatives", ho_reps);
    Ok(r)
}

fn table(name: &str, columns: &[&str], rows: Vec<Vec<i64>>) -> Table {
    Table { name: name.to_string(), columns: columns.iter().map(|c| c.to_string()).collect(), rows }
}

/// Tate dimensions `(n, dim Ĥⁿ, dim Ĥₙ)` by one route.
fn tate_rows(spec: &SpecFile, m: &Bimodule, min: i64, max: i64, engine: Engine) -> Result<Vec<(i64, usize, usize)>> {
    let a = &spec.algebra;
    let fr = &spec.frobenius;
    let reach = min.unsigned_abs().max(max.unsigned_abs()) as usize;
    match engine {
        Engine::Formula => {
            let fe = FormulaEngine::new(a, fr, spec.options.window.max(reach + 1))?;
            (min..=max)
                .map(|n| Ok((n, fe.cohomology(m, n)?.dim(), fe.homology(m, n)?.dim())))
                .collect()
        }
        Engine::Stable => {
            let se = StableEngine::new(a, fr, reach)?;
            (min..=max)
                .map(|n| Ok((n, se.cohomology(m, n)?.dim(), se.homology(m, n)?.1.dim())))
                .collect()
        }
        Engine::Both => unreachable!("callers split the combined engine"),
    }
}

pub fn tate(spec: &SpecFile, min: i64, max: i64, engine: Engine, module: Module) -> Result<Report> {
    if min > max {
        return Err(CliError::Usage(format!("--min {min} exceeds --max {max}")));
    }
    let m = module.build(spec)?;
    let mut r = Report::new("tate", Some(spec));
    r.arg("min", min).arg("max", max).arg("engine", engine.as_str()).arg("module", module.name());
    let cols = ["degree", "cohomology", "homology"];
    match engine {
        Engine::Formula | Engine::Stable => {
            let rows = tate_rows(spec, &m, min, max, engine)?;
            r.tables.push(table("tate", &cols, rows.iter().map(|&(n, c, h)| vec![n, c as i64, h as i64]).collect()));
        }
        Engine::Both => {
            let f = tate_rows(spec, &m, min, max, Engine::Formula)?;
            let s = tate_rows(spec, &m, min, max, Engine::Stable)?;
            let rows = f
                .iter()
                .zip(&s)
                .map(|(&(n, fc, fh), &(_, sc, sh))| vec![n, fc as i64, sc as i64, fh as i64, sh as i64])
                .collect();
            r.tables.push(table(
                "tate",
                &["degree", "cohomology_formula", "cohomology_stable", "homology_formula", "homology_stable"],
                rows,
            ));
            let bad: Vec<i64> = f.iter().zip(&s).filter(|(x, y)| x != y).map(|(x, _)| x.0).collect();
            if bad.is_empty() {
                r.check("engines_agree", Status::Pass, format!("degrees {min}..={max}"));
            } else {
                r.check("engines_agree", Status::Fail, format!("dimensions differ in degrees {bad:?}"));
            }
        }
    }
    Ok(r)
}

pub fn ring(spec: &SpecFile, max_deg: usize, compare: bool, seed: Option<u64>) -> Result<Report> {
    let d = max_deg as i64;
    let es = EsEngine::new(&spec.algebra, &spec.frobenius, 3 * max_deg + 1)?;
    let rt = RingTable::compute(&es, d)?;
    let mut r = Report::new("ring", Some(spec));
    r.arg("max_deg", max_deg).arg("engine", if compare { "both" } else { "es" });
    let rows = (-3 * d..=3 * d).map(|n| vec![n, rt.dim(n) as i64]).collect();
    r.tables.push(table("ring", &["degree", "dim"], rows));
    let products: BTreeMap<String, Vec<Vec<String>>> =
        rt.table.iter().filter(|(_, m)| m.rows() > 0 && m.cols() > 0).map(|(&(i, j), m)| (format!("{i},{j}"), matrix(m))).collect();
    r.data("products", products);
    r.data("unit", matrix(&rt.unit));
    r.data("generated_in_degrees_pm1", rt.generated_in_degrees_pm1());
    push(&mut r, "ring_axioms", || {
        let rep = rt.verify()?;
        Ok(format!(
            "{} unit, {} associativity, {} commutativity checks",
            rep.unit_checks, rep.associativity_checks, rep.commutativity_checks
        ))
    })?;
    if compare {
        push(&mut r, "product_engines", || {
            let rep = verify_engine_agreement(&spec.algebra, &spec.frobenius, max_deg, seed)?;
            Ok(format!("{} pairs agree, {} nonzero", rep.pairs, rep.nonzero))
        })?;
    }
    Ok(r)
}

pub fn duality(spec: &SpecFile, range: usize) -> Result<Report> {
    let a = &spec.algebra;
    let fr = &spec.frobenius;
    let rng = range as i64;
    let du = Duality::new(a, fr, range + 1)?;
    let fe = FormulaEngine::new(a, fr, range + 2)?;
    let mut r = Report::new("duality", Some(spec));
    r.arg("range", range);
    r.data("omega", matrix(&du.omega.cycle.transpose()));
    for module in [Module::A, Module::K] {
        let m = module.build(spec)?;
        let mut rows = Vec::new();
        let mut bad = Vec::new();
        for n in -rng..=rng {
            let row = du.row(&fe, &m, n)?;
            if !row.is_iso() {
                bad.push(n);
            }
            rows.push(vec![n, row.source_dim as i64, row.target_dim as i64, row.rank as i64]);
        }
        r.tables.push(table(&format!("duality_{}", module.name()), &["degree", "source", "target", "rank"], rows));
        let status = if bad.is_empty() { Status::Pass } else { Status::Fail };
        let detail = if bad.is_empty() {
            format!("−⌢ω is an isomorphism for n in {}..={}", -rng, rng)
        } else {
            format!("not an isomorphism in degrees {bad:?}")
        };
        r.check(&format!("duality_{}", module.name()), status, detail);
    }
    push(&mut r, "dual_dimensions", || {
        let rows = verify_dual_dimensions(&fe, -rng..=rng)?;
        Ok(format!("{} degrees", rows.len()))
    })?;
    Ok(r)
}

/// Runs one property: verification failures fail the check, a missing radical
/// skips it, anything else aborts the command.
fn push(r: &mut Report, name: &str, f: impl FnOnce() -> tatehh::Result<String>) -> Result<()> {
    match f() {
        Ok(detail) => r.check(name, Status::Pass, detail),
        Err(e @ Error::Verification(_)) => r.check(name, Status::Fail, e.to_string()),
        Err(e @ Error::RadicalUnavailable { .. }) => r.check(name, Status::Skip, e.to_string()),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

/// The full property suite.
pub fn check(spec: &SpecFile, seed: Option<u64>, timings: bool) -> Result<Report> {
    let a = &spec.algebra;
    let fr = &spec.frobenius;
    let w = spec.options.window;
    let reach = (w as i64 - 1).min(3);
    let half = ((w - 2) / 2).max(1);
    let am = Bimodule::regular(a);
    let fe = FormulaEngine::new(a, fr, w)?;
    let mut r = Report::new("check", Some(spec));
    r.arg("window", w);
    if let Some(s) = seed {
        r.arg("seed", s);
    }
    let mut clock: BTreeMap<String, u64> = BTreeMap::new();
    let mut timed = |r: &mut Report, name: &str, f: &mut dyn FnMut() -> tatehh::Result<String>| -> Result<()> {
        let t0 = Instant::now();
        push(r, name, f)?;
        clock.insert(name.to_string(), t0.elapsed().as_millis() as u64);
        Ok(())
    };

    let rows = (-reach..=reach)
        .map(|n| Ok(vec![n, fe.cohomology(&am, n)?.dim() as i64, fe.homology(&am, n)?.dim() as i64]))
        .collect::<tatehh::Result<Vec<_>>>()?;
    r.tables.push(table("tate", &["degree", "cohomology", "homology"], rows));

    timed(&mut r, "engine_agreement", &mut || {
        let se = StableEngine::new(a, fr, reach as usize)?;
        let nu = am.twist(&Mat::identity(a.field(), a.dim()), fr.nu());
        for (label, m) in [("A", &am), ("A_nu", &nu)] {
            for n in -reach..=reach {
                let f = (fe.cohomology(m, n)?.dim(), fe.homology(m, n)?.dim());
                let s = (se.cohomology(m, n)?.dim(), se.homology(m, n)?.1.dim());
                if f != s {
                    return Err(Error::Verification(format!("{label}, degree {n}: formula {f:?}, stable {s:?}")));
                }
            }
        }
        Ok(format!("A and A_nu, degrees {}..={reach}", -reach))
    })?;
    timed(&mut r, "norm_sequence", &mut || {
        let ns = verify_norm_sequence(&fe, &am)?;
        Ok(format!("dims {:?}, rank of the norm {}", ns.dims, ns.norm_rank))
    })?;
    timed(&mut r, "weak_projective_vanishing", &mut || {
        verify_weak_projective_vanishing(&fe, &Bimodule::free(a, 1), reach)?;
        Ok(format!("A⊗A, degrees {}..={reach}", -reach))
    })?;
    timed(&mut r, "dimension_shift", &mut || {
        verify_dimension_shift(&fe, &am, w as i64 - 2)?;
        Ok(format!("K(A) and C(A), degrees {}..={}", 2 - w as i64, w - 2))
    })?;
    let mut minimal = Vec::new();
    timed(&mut r, "minimality", &mut || {
        let rad = enveloping_radical(a)?;
        let t = complete_bar_window(a, fr, w)?;
        minimal = minimality_check(&t, &rad);
        let bad: Vec<i64> = minimal.iter().filter(|(_, m)| !m).map(|(n, _)| *n).collect();
        Ok(if bad.is_empty() {
            "complete bar window is minimal in every degree".to_string()
        } else {
            format!("complete bar window is not minimal in degrees {bad:?}")
        })
    })?;
    timed(&mut r, "ring_axioms", &mut || {
        let es = EsEngine::new(a, fr, 7)?;
        let rep = RingTable::compute(&es, 2)?.verify()?;
        Ok(format!(
            "{} unit, {} associativity, {} commutativity checks",
            rep.unit_checks, rep.associativity_checks, rep.commutativity_checks
        ))
    })?;
    timed(&mut r, "product_engines", &mut || {
        let rep = verify_engine_agreement(a, fr, half, seed)?;
        Ok(format!("{} pairs with |i|, |j| ≤ {half} agree, {} nonzero", rep.pairs, rep.nonzero))
    })?;
    timed(&mut r, "duality", &mut || {
        let du = Duality::new(a, fr, 4)?;
        let fe5 = FormulaEngine::new(a, fr, 5)?;
        let k = am.shift_sequences(fr)?.k.sub;
        let mut count = 0;
        for (label, m) in [("A", &am), ("K(A)", &k)] {
            for n in -3..=3 {
                let row = du.row(&fe5, m, n)?;
                if !row.is_iso() {
                    return Err(Error::Verification(format!("−⌢ω is not an isomorphism for {label} in degree {n}: {row:?}")));
                }
                count += 1;
            }
        }
        verify_dual_dimensions(&fe5, -3..=3)?;
        Ok(format!("{count} duality maps invertible, dual dimensions agree"))
    })?;
    timed(&mut r, "hochschild_compatibility", &mut || {
        let rep = verify_compatibility(a, fr, &am, &am, half, seed)?;
        Ok(format!("squares checked up to degree {half}: {}", rep.total()))
    })?;

    r.data(
        "minimality",
        minimal.iter().map(|(n, m)| (n.to_string(), *m)).collect::<BTreeMap<String, bool>>(),
    );
    if timings {
        r.timings_ms = Some(clock);
    }
    Ok(r)
}
