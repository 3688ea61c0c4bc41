//! The fundamental class `ω ∈ Ĥ₋₁(A, ₁A_{ν⁻¹})` and the duality `− ⌢ ω`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, Frobenius};
use crate::bimod::Bimodule;
use crate::complex::FreeWindow;
use crate::exactla::Mat;
use crate::products::diagonal::{cap_via_diagonal, DiagonalWindow};
use crate::products::es::{comparison, push_forward};
use crate::products::Pairing;
use crate::tate::{complete_bar_window, syzygies, window_cohomology, window_homology, FormulaEngine};
use crate::{Error, Result};

/// `ω` as a cycle of `T ⊗_{Aᵉ} ₁A_{ν⁻¹}` in degree −1 on a given window.
#[derive(Clone, Debug)]
pub struct FundamentalClass {
    /// `₁A_{ν⁻¹}`.
    pub module: Bimodule,
    pub cycle: Mat,
}

/// `₁M_{ν⁻¹}`.
pub fn nu_inv_twist(m: &Bimodule, fr: &Frobenius) -> Bimodule {
    m.twist(&Mat::identity(m.field(), m.alg_dim()), fr.nu_inv())
}

/// On the complete bar window `T₋₁` has one generator, dual to the generator
/// of `T₀`; under `Hom(T, A) ≅ T ⊗_{Aᵉ} ₁A_{ν⁻¹}[−1]` the cocycle `ε` goes to
/// that generator tensored with `1`.
pub fn fundamental_class_bar(a: &Arc<Algebra>, fr: &Frobenius) -> Result<(FreeWindow, FundamentalClass)> {
    let bar = complete_bar_window(a, fr, 2)?;
    let module = nu_inv_twist(&Bimodule::regular(a), fr);
    let cycle = Mat::unit_vector(a.field(), module.dim(), 0);
    if !bar.tensor_diff(&module, -1).matmul(&cycle).is_zero() {
        return Err(Error::Verification("ω is not a cycle".into()));
    }
    Ok((bar, FundamentalClass { module, cycle }))
}

/// `ω` transported to another complete window by the comparison map.
pub fn fundamental_class_on(t: &FreeWindow, fr: &Frobenius) -> Result<FundamentalClass> {
    let (bar, w) = fundamental_class_bar(&t.alg, fr)?;
    if t.rank(-1) == 0 {
        return Ok(FundamentalClass { module: w.module, cycle: Mat::zeros(t.alg.field(), 0, 1) });
    }
    let c = comparison(&bar, t, fr)?;
    let cycle = push_forward(&c, &bar, t, &w.module, -1, &w.cycle)?;
    Ok(FundamentalClass { module: w.module, cycle })
}

/// The duality maps on the minimal complete window.
#[derive(Clone, Debug)]
pub struct Duality {
    pub dw: DiagonalWindow,
    pub omega: FundamentalClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityRow {
    pub degree: i64,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    /// `dim Ĥⁿ(A, M)` and `dim Ĥ₋ₙ₋₁(A, ₁M_{ν⁻¹})` from the formula route.
    pub formula_dims: (usize, usize),
}

impl DualityRow {
    pub fn is_iso(&self) -> bool {
        self.source_dim == self.target_dim && self.rank == self.source_dim && self.formula_dims == (self.source_dim, self.target_dim)
    }
}

impl Duality {
    /// Supports `|n| ≤ depth − 1`.
    pub fn new(a: &Arc<Algebra>, fr: &Frobenius, depth: usize) -> Result<Duality> {
        let t = syzygies(a, fr, depth)?.window();
        let omega = fundamental_class_on(&t, fr)?;
        let dw = DiagonalWindow::build(t, fr.clone(), -1, 0, None)?;
        Ok(Duality { dw, omega })
    }

    /// Matrix of `− ⌢ ω: Ĥⁿ(A, M) → Ĥ₋ₙ₋₁(A, ₁M_{ν⁻¹})` on the window bases.
    pub fn map(&self, m: &Bimodule, n: i64) -> Result<Mat> {
        let t = &self.dw.frames.t;
        let fr = &self.dw.frames.fr;
        let src = window_cohomology(t, m, n)?;
        let tgt = window_homology(t, &nu_inv_twist(m, fr), -n - 1)?;
        let pairing = Pairing::right_action(m, fr.nu_inv());
        let reps = src.group.representatives();
        let mut out = Mat::zeros(m.field(), tgt.dim(), src.dim());
        for x in 0..src.dim() {
            let z = cap_via_diagonal(&self.dw, &pairing, &reps.column(x), n, &self.omega.cycle, -1)?;
            if !tgt.group.is_cycle(&z) {
                return Err(Error::Verification(format!("u ⌢ ω is not a cycle in degree {}", -n - 1)));
            }
            out.set_block(0, x, &tgt.group.class_of(&z));
        }
        Ok(out)
    }

    pub fn row(&self, fe: &FormulaEngine, m: &Bimodule, n: i64) -> Result<DualityRow> {
        let map = self.map(m, n)?;
        let fr = &self.dw.frames.fr;
        let formula_dims = (fe.cohomology(m, n)?.dim(), fe.homology(&nu_inv_twist(m, fr), -n - 1)?.dim());
        Ok(DualityRow { degree: n, source_dim: map.cols(), target_dim: map.rows(), rank: map.rank(), formula_dims })
    }
}

/// `dim Ĥᵢ(A, A) = dim Ĥ₋ᵢ₋₁(A, A)` and `dim Ĥⁱ(A, A) = dim Ĥ⁻ⁱ⁻¹(A, ₁A_{ν²})` per degree.
#[derive(Clone, Debug, Serialize)]
pub struct DualDims {
    pub degree: i64,
    pub homology: (usize, usize),
    pub cohomology: (usize, usize),
}

pub fn verify_dual_dimensions(fe: &FormulaEngine, range: std::ops::RangeInclusive<i64>) -> Result<Vec<DualDims>> {
    let a = fe.bar.alg().clone();
    let am = Bimodule::regular(&a);
    let nu = fe.fr.nu();
    let nu2 = am.twist(&Mat::identity(a.field(), a.dim()), &nu.matmul(nu));
    let mut rows = Vec::new();
    for i in range {
        let row = DualDims {
            degree: i,
            homology: (fe.homology(&am, i)?.dim(), fe.homology(&am, -i - 1)?.dim()),
            cohomology: (fe.cohomology(&am, i)?.dim(), fe.cohomology(&nu2, -i - 1)?.dim()),
        };
        if row.homology.0 != row.homology.1 || row.cohomology.0 != row.cohomology.1 {
            return Err(Error::Verification(format!("dual dimensions differ in degree {i}")));
        }
        rows.push(row);
    }
    Ok(rows)
}
