//! Classical Hochschild products against Tate products on the complete bar
//! window, whose non-negative part is the normalized bar resolution.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, Frobenius};
use crate::barres::{bar_window, cap_bar, cup_bar};
use crate::bimod::Bimodule;
use crate::exactla::Mat;
use crate::products::diagonal::{cap_via_diagonal, cup_via_diagonal, DiagonalWindow};
use crate::products::duality::{fundamental_class_bar, nu_inv_twist};
use crate::products::es::{comparison, pull_back, EsEngine};
use crate::products::Pairing;
use crate::tate::{complete_bar_window, window_cohomology, window_homology};
use crate::{Error, Result};

/// Number of element pairs checked in each square.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CompatReport {
    /// `Hʳ ⊗ Hˢ → Ĥ^{r+s}` against the Tate cup.
    pub cup: usize,
    /// `r = s = 0`.
    pub cap_zero: usize,
    /// `r = 0 < s`.
    pub cap_positive: usize,
    /// `0 < r ≤ s`, compared in classical homology.
    pub cap_mixed: usize,
    /// `(α ⌣ β) ⌢ ω = α ⌢ (β ⌢ ω)` for `M = N = A`.
    pub omega: usize,
}

impl CompatReport {
    pub fn total(&self) -> usize {
        self.cup + self.cap_zero + self.cap_positive + self.cap_mixed + self.omega
    }
}

/// Checks the cup square for `0 ≤ r, s ≤ bound`, the three cap squares for
/// `0 ≤ r ≤ s ≤ bound`, and, when `M = N = A`, the identity relating cup and
/// cap through `ω` for `|r|, |s| ≤ bound`. Classical groups are taken on
/// cocycle and cycle bases, so every cocycle is checked, not just classes.
/// `seed` perturbs the diagonal as in [`DiagonalWindow::build`].
pub fn verify_compatibility(a: &Arc<Algebra>, fr: &Frobenius, m: &Bimodule, n: &Bimodule, bound: usize, seed: Option<u64>) -> Result<CompatReport> {
    let b = bound as i64;
    let t = complete_bar_window(a, fr, 2 * bound + 2)?;
    let bar = bar_window(a, 2 * bound)?;
    let dw = DiagonalWindow::build(t, fr.clone(), -2 * b - 1, 2 * b, seed)?;
    let t = &dw.frames.t;
    let pairing = Pairing::tensor(m, n);
    let out = &pairing.out;
    let cocycles = |mm: &Bimodule, r: i64| -> Result<Mat> { Ok(window_cohomology(t, mm, r)?.group.cycles.basis_columns()) };
    let cycles = |nn: &Bimodule, s: i64| -> Result<Mat> { Ok(window_homology(t, nn, s)?.group.cycles.basis_columns()) };
    let mut rep = CompatReport::default();

    for r in 0..=b {
        let zr = cocycles(m, r)?;
        for s in 0..=b {
            let zs = cocycles(n, s)?;
            let tgt = window_cohomology(t, out, r + s)?;
            for x in 0..zr.cols() {
                let u = zr.column(x);
                for y in 0..zs.cols() {
                    let v = zs.column(y);
                    let tate = cup_via_diagonal(&dw, &pairing, &u, r, &v, s)?;
                    let classical = cup_bar(&bar, &u, r as usize, &v, s as usize, m, n, &pairing.proj)?;
                    if !tgt.group.is_cycle(&classical) || !tgt.group.is_boundary(&(&tate - &classical)) {
                        return Err(Error::Verification(format!("cup square fails in degrees ({r}, {s})")));
                    }
                    rep.cup += 1;
                }
            }
        }
    }

    for r in 0..=b {
        let zr = cocycles(m, r)?;
        for s in r..=b {
            let zs = cycles(n, s)?;
            let tgt = window_homology(t, out, s - r)?;
            for x in 0..zr.cols() {
                let u = zr.column(x);
                for y in 0..zs.cols() {
                    let z = zs.column(y);
                    let tate = cap_via_diagonal(&dw, &pairing, &u, r, &z, s)?;
                    let classical = cap_bar(&bar, &u, r as usize, &z, s as usize, m, n, &pairing.proj)?;
                    // the boundaries at s − r are those of the bar complex in every case
                    if !tgt.group.is_boundary(&(&tate - &classical)) {
                        return Err(Error::Verification(format!("cap square fails in degrees ({r}, {s})")));
                    }
                    match (r, s) {
                        (0, 0) => rep.cap_zero += 1,
                        (0, _) => rep.cap_positive += 1,
                        _ => rep.cap_mixed += 1,
                    }
                }
            }
        }
    }

    let am = Bimodule::regular(a);
    if *m == am && *n == am {
        rep.omega = verify_omega_identity(&dw, fr, b)?;
    }
    Ok(rep)
}

/// `(α ⌣ β) ⌢ ω = α ⌢ (β ⌢ ω)` in `Ĥ_{−r−q−1}(A, ₁A_{ν⁻¹})` for basis classes
/// `α ∈ Ĥʳ(A, A)`, `β ∈ Ĥ^q(A, A)`, `|r|, |q| ≤ bound`.
fn verify_omega_identity(dw: &DiagonalWindow, fr: &Frobenius, bound: i64) -> Result<usize> {
    let t = &dw.frames.t;
    let a = t.alg.clone();
    let am = Bimodule::regular(&a);
    let (_, omega) = fundamental_class_bar(&a, fr)?;
    let twisted = nu_inv_twist(&am, fr);
    let mult = Pairing::left_unit(&am);
    let on_omega = Pairing::right_action(&am, fr.nu_inv());
    let on_twisted = Pairing::left_unit(&twisted);
    let mut count = 0;
    for r in -bound..=bound {
        let hr = window_cohomology(t, &am, r)?.group.representatives();
        for q in -bound..=bound {
            let hq = window_cohomology(t, &am, q)?.group.representatives();
            let tgt = window_homology(t, &twisted, -r - q - 1)?;
            for y in 0..hq.cols() {
                let beta = hq.column(y);
                let beta_omega = cap_via_diagonal(dw, &on_omega, &beta, q, &omega.cycle, -1)?;
                for x in 0..hr.cols() {
                    let alpha = hr.column(x);
                    let prod = cup_via_diagonal(dw, &mult, &alpha, r, &beta, q)?;
                    let left = cap_via_diagonal(dw, &on_omega, &prod, r + q, &omega.cycle, -1)?;
                    let right = cap_via_diagonal(dw, &on_twisted, &alpha, r, &beta_omega, -q - 1)?;
                    if !tgt.group.is_cycle(&left) || !tgt.group.is_boundary(&(&left - &right)) {
                        return Err(Error::Verification(format!("(α ⌣ β) ⌢ ω ≠ α ⌢ (β ⌢ ω) in degrees ({r}, {q})")));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Outcome of comparing the stable and diagonal cup products.
#[derive(Clone, Debug, Default, Serialize)]
pub struct EngineAgreement {
    pub pairs: usize,
    /// Pairs whose product class is nonzero.
    pub nonzero: usize,
}

/// `f ∪ g` from chain lifts on the minimal window against the diagonal cup of the
/// pulled-back cocycles on the complete bar window, for basis classes with
/// `|i|, |j| ≤ bound`, compared as classes on the bar window.
pub fn verify_engine_agreement(a: &Arc<Algebra>, fr: &Frobenius, bound: usize, seed: Option<u64>) -> Result<EngineAgreement> {
    let b = bound as i64;
    let bar = complete_bar_window(a, fr, 2 * bound + 3)?;
    let es = EsEngine::new(a, fr, 2 * bound + 2)?;
    let am = Bimodule::regular(a);
    if es.syz.ranks.iter().all(|&r| r == 0) {
        // Separable case: the minimal window is zero and there is nothing to
        // compare to, but the bar side must vanish too.
        for n in -2 * b..=2 * b {
            if window_cohomology(&bar, &am, n)?.dim() != 0 {
                return Err(Error::Verification(format!("minimal window is zero but the bar window has classes in degree {n}")));
            }
        }
        return Ok(EngineAgreement::default());
    }
    let c = comparison(&bar, &es.t, fr)?;
    let dw = DiagonalWindow::build(bar.clone(), fr.clone(), -2 * b, 2 * b, seed)?;
    let mult = Pairing::left_unit(&am);
    let mut rep = EngineAgreement::default();
    for i in -b..=b {
        let hi = es.cohomology(&am, i)?;
        let fi = hi.group.representatives();
        for j in -b..=b {
            let hj = es.cohomology(&am, j)?;
            let gj = hj.group.representatives();
            let tgt = window_cohomology(&bar, &am, i + j)?;
            for y in 0..hj.dim() {
                let g = gj.column(y);
                let lift = es.lift(&g, j)?;
                let gb = pull_back(&c, &bar, &es.t, &am, j, &g)?;
                for x in 0..hi.dim() {
                    let f = fi.column(x);
                    let stable = pull_back(&c, &bar, &es.t, &am, i + j, &es.cup_lifted(&am, &f, i, &lift)?)?;
                    let fb = pull_back(&c, &bar, &es.t, &am, i, &f)?;
                    let diagonal = cup_via_diagonal(&dw, &mult, &fb, i, &gb, j)?;
                    if !tgt.group.is_cycle(&stable) || !tgt.group.is_boundary(&(&stable - &diagonal)) {
                        return Err(Error::Verification(format!("product engines disagree in degrees ({i}, {j})")));
                    }
                    rep.pairs += 1;
                    rep.nonzero += usize::from(!tgt.group.is_boundary(&stable));
                }
            }
        }
    }
    Ok(rep)
}
