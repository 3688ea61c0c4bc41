//! Finite windows of chain complexes: vector-space level, bimodule level and
//! the free-module level that every resolution in this crate lives at.
//!
//! Sign conventions: the Hom complex has `δⁿ(f) = (−1)^{n+1} f∘d_{n+1}` and the
//! shift `Σⁱ` multiplies every differential by `(−1)^i`.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::bimod::{check_linear, neg_one_pow, Bimodule, HomSpace};
use crate::exactla::{quotient, Field, Mat, Quotient, Subspace};
use crate::{par, Error, Result};

/// Homology at one degree.
#[derive(Clone, Debug)]
pub struct Homology {
    pub cycles: Subspace,
    pub boundaries: Subspace,
    pub quotient: Quotient,
}

impl Homology {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Class coordinates of the cycle columns of `z`.
    pub fn class_of(&self, z: &Mat) -> Mat {
        self.quotient.project(z)
    }

    /// Representative cycles of the basis classes, as columns.
    pub fn representatives(&self) -> Mat {
        self.quotient.rep_columns()
    }

    pub fn is_cycle(&self, z: &Mat) -> bool {
        self.cycles.contains(z)
    }

    pub fn is_boundary(&self, z: &Mat) -> bool {
        self.boundaries.contains(z)
    }
}

fn homology_of(field: Field, n: usize, d_out: Option<&Mat>, d_in: Option<&Mat>) -> Homology {
    let cycles = match d_out {
        Some(d) => d.kernel(),
        None => Subspace::full(field, n),
    };
    let boundaries = match d_in {
        Some(d) => d.image(),
        None => Subspace::zero(field, n),
    };
    let q = quotient(&cycles, &boundaries).expect("d² = 0 forces boundaries inside cycles");
    Homology {
        cycles,
        boundaries,
        quotient: q,
    }
}

/// Chain complex of vector spaces on degrees `lo..=hi`; `d_n: C_n → C_{n−1}`.
#[derive(Clone, Debug)]
pub struct ChainWindow {
    pub field: Field,
    pub lo: i64,
    pub hi: i64,
    pub dims: Vec<usize>,
    /// `diffs[n − lo − 1]` is `d_n` for `lo < n ≤ hi`.
    pub diffs: Vec<Mat>,
}

impl ChainWindow {
    pub fn dim_at(&self, n: i64) -> usize {
        self.dims[(n - self.lo) as usize]
    }

    pub fn d(&self, n: i64) -> &Mat {
        assert!(n > self.lo && n <= self.hi, "no differential d_{n} in [{}, {}]", self.lo, self.hi);
        &self.diffs[(n - self.lo - 1) as usize]
    }

    /// `H_n`; needs both adjacent differentials unless the complex is known to stop there.
    pub fn homology_at(&self, n: i64) -> Result<Homology> {
        if n <= self.lo || n >= self.hi {
            return Err(Error::Window(format!(
                "homology at {n} needs lo < n < hi, window is [{}, {}]",
                self.lo, self.hi
            )));
        }
        Ok(homology_of(self.field, self.dim_at(n), Some(self.d(n)), Some(self.d(n + 1))))
    }

    pub fn check_d_squared(&self) -> Result<()> {
        for n in self.lo + 2..=self.hi {
            if !self.d(n - 1).matmul(self.d(n)).is_zero() {
                return Err(Error::Verification(format!("d² ≠ 0 at degree {n}")));
            }
        }
        Ok(())
    }
}

/// Cochain complex on degrees `lo..=hi`; `δⁿ: Cⁿ → Cⁿ⁺¹`.
#[derive(Clone, Debug)]
pub struct CochainWindow {
    pub field: Field,
    pub lo: i64,
    pub hi: i64,
    pub dims: Vec<usize>,
    /// `deltas[n − lo]` is `δⁿ` for `lo ≤ n < hi`.
    pub deltas: Vec<Mat>,
}

impl CochainWindow {
    pub fn dim_at(&self, n: i64) -> usize {
        self.dims[(n - self.lo) as usize]
    }

    pub fn delta(&self, n: i64) -> &Mat {
        assert!(n >= self.lo && n < self.hi, "no δ^{n} in [{}, {}]", self.lo, self.hi);
        &self.deltas[(n - self.lo) as usize]
    }

    pub fn cohomology_at(&self, n: i64) -> Result<Homology> {
        if n <= self.lo || n >= self.hi {
            return Err(Error::Window(format!(
                "cohomology at {n} needs lo < n < hi, window is [{}, {}]",
                self.lo, self.hi
            )));
        }
        Ok(homology_of(self.field, self.dim_at(n), Some(self.delta(n)), Some(self.delta(n - 1))))
    }

    /// Cohomology at the bottom degree, where nothing maps in.
    pub fn cohomology_at_bottom(&self) -> Homology {
        homology_of(self.field, self.dim_at(self.lo), Some(self.delta(self.lo)), None)
    }

    pub fn check_d_squared(&self) -> Result<()> {
        for n in self.lo..self.hi - 1 {
            if !self.delta(n + 1).matmul(self.delta(n)).is_zero() {
                return Err(Error::Verification(format!("δ² ≠ 0 at degree {n}")));
            }
        }
        Ok(())
    }
}

/// Window of a complex of bimodules with optional augmentation `(ε: C₀ → A, η: A → C₋₁)`.
#[derive(Clone, Debug)]
pub struct ComplexWindow {
    pub lo: i64,
    pub hi: i64,
    pub comps: Vec<Bimodule>,
    /// `diffs[n − lo − 1] = d_n`.
    pub diffs: Vec<Mat>,
    pub aug: Option<(Mat, Option<Mat>)>,
}

impl ComplexWindow {
    pub fn comp(&self, n: i64) -> &Bimodule {
        &self.comps[(n - self.lo) as usize]
    }

    pub fn d(&self, n: i64) -> &Mat {
        &self.diffs[(n - self.lo - 1) as usize]
    }

    pub fn verify(&self) -> Result<()> {
        for n in self.lo + 1..=self.hi {
            check_linear(self.comp(n), self.comp(n - 1), self.d(n))?;
            if n > self.lo + 1 && !self.d(n - 1).matmul(self.d(n)).is_zero() {
                return Err(Error::Verification(format!("d² ≠ 0 at degree {n}")));
            }
        }
        Ok(())
    }

    pub fn underlying(&self) -> ChainWindow {
        ChainWindow {
            field: self.comps[0].field(),
            lo: self.lo,
            hi: self.hi,
            dims: self.comps.iter().map(|c| c.dim()).collect(),
            diffs: self.diffs.clone(),
        }
    }

    pub fn homology_at(&self, n: i64) -> Result<Homology> {
        self.underlying().homology_at(n)
    }

    /// `Hom_{Aᵉ}(C, M)` through presentations of each component.
    pub fn hom_complex(&self, m: &Bimodule) -> CochainWindow {
        let f = m.field();
        // cohomological degree n pairs with C_n
        let homs: Vec<HomSpace> = par::map_slice(&self.comps, |c| c.hom_ae(m));
        let mut deltas = Vec::new();
        for n in self.lo..self.hi {
            let src = &homs[(n - self.lo) as usize];
            let tgt = &homs[(n - self.lo + 1) as usize];
            let d = self.d(n + 1);
            let sign = neg_one_pow(f, n + 1);
            let mut delta = Mat::zeros(f, tgt.dim(), src.dim());
            for t in 0..src.dim() {
                let full = src.to_matrix(&src.basis.column(t)).matmul(d).scale(&sign);
                let x = tgt.from_matrix(&full);
                let y = tgt.basis.solve(&x).expect("composite is a module map");
                delta.set_block(0, t, &y);
            }
            deltas.push(delta);
        }
        CochainWindow {
            field: f,
            lo: self.lo,
            hi: self.hi,
            dims: homs.iter().map(|h| h.dim()).collect(),
            deltas,
        }
    }

    /// `C ⊗_{Aᵉ} M` degreewise.
    pub fn tensor_over_ae(&self, m: &Bimodule) -> ChainWindow {
        let f = m.field();
        let qs: Vec<Quotient> = par::map_slice(&self.comps, |c| c.tensor_over_ae(m));
        let id = Mat::identity(f, m.dim());
        let mut diffs = Vec::new();
        for n in self.lo + 1..=self.hi {
            let src = &qs[(n - self.lo) as usize];
            let tgt = &qs[(n - self.lo - 1) as usize];
            let big = self.d(n).kron(&id);
            diffs.push(tgt.project(&big.matmul(&src.rep_columns())));
        }
        ChainWindow {
            field: f,
            lo: self.lo,
            hi: self.hi,
            dims: qs.iter().map(|q| q.dim()).collect(),
            diffs,
        }
    }

    /// `Σⁱ C`: `(ΣⁱC)_n = C_{n−i}`, differentials times `(−1)^i`.
    pub fn shift(&self, i: i64) -> ComplexWindow {
        let f = self.comps[0].field();
        let s = neg_one_pow(f, i);
        ComplexWindow {
            lo: self.lo + i,
            hi: self.hi + i,
            comps: self.comps.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&s)).collect(),
            aug: None,
        }
    }

    /// Degrees `≥ n`.
    pub fn truncate_geq(&self, n: i64) -> ComplexWindow {
        let n = n.max(self.lo);
        let skip = (n - self.lo) as usize;
        ComplexWindow {
            lo: n,
            hi: self.hi,
            comps: self.comps[skip..].to_vec(),
            diffs: self.diffs[skip..].to_vec(),
            aug: if n == 0 { self.aug.clone().map(|(e, _)| (e, None)) } else { None },
        }
    }

    /// Degrees `< n`.
    pub fn truncate_lt(&self, n: i64) -> ComplexWindow {
        let n = n.min(self.hi + 1);
        let keep = (n - self.lo) as usize;
        ComplexWindow {
            lo: self.lo,
            hi: n - 1,
            comps: self.comps[..keep].to_vec(),
            diffs: self.diffs[..keep.saturating_sub(1)].to_vec(),
            aug: None,
        }
    }
}

/// Degreewise `⊕_i C_{n−i} ⊗_A C′_i` over an output window, with
/// `d = d⊗1 + (−1)^{n−i} 1⊗d`. Pairs outside either input window are an error.
pub fn complete_tensor_window(c: &ComplexWindow, c2: &ComplexWindow, lo: i64, hi: i64, pairs: &dyn Fn(i64) -> Vec<i64>) -> Result<ChainWindow> {
    let f = c.comps[0].field();
    // tensor pieces cached by (a, b)
    let mut cache: std::collections::BTreeMap<(i64, i64), (Bimodule, Mat, Mat)> = Default::default();
    let mut piece = |a: i64, b: i64| -> Result<(usize, Mat, Mat)> {
        if a < c.lo || a > c.hi || b < c2.lo || b > c2.hi {
            return Err(Error::Window(format!("pair ({a}, {b}) lies outside the input windows")));
        }
        let e = cache.entry((a, b)).or_insert_with(|| {
            let (m, proj) = c.comp(a).tensor_over_a(c2.comp(b));
            let reps = section_of(&proj);
            (m, proj, reps)
        });
        Ok((e.0.dim(), e.1.clone(), e.2.clone()))
    };
    let mut dims = Vec::new();
    let mut layout: Vec<Vec<(i64, usize)>> = Vec::new();
    for n in lo..=hi {
        let mut off = 0;
        let mut lay = Vec::new();
        for i in pairs(n) {
            let (dim, _, _) = piece(n - i, i)?;
            lay.push((i, off));
            off += dim;
        }
        dims.push(off);
        layout.push(lay);
    }
    let mut diffs = Vec::new();
    for n in lo + 1..=hi {
        let src = &layout[(n - lo) as usize];
        let tgt = &layout[(n - lo - 1) as usize];
        let mut d = Mat::zeros(f, dims[(n - lo - 1) as usize], dims[(n - lo) as usize]);
        for &(i, so) in src {
            let a = n - i;
            let (sd, _, reps) = piece(a, i)?;
            // d ⊗ 1 lands in (a−1, i)
            if let Some(&(_, to)) = tgt.iter().find(|(j, _)| *j == i) {
                if a > c.lo {
                    let (_, proj, _) = piece(a - 1, i)?;
                    let id = Mat::identity(f, c2.comp(i).dim());
                    let blk = proj.matmul(&c.d(a).kron(&id)).matmul(&reps);
                    d.set_block(to, so, &(&d.submatrix(to, blk.rows(), so, sd) + &blk));
                }
            }
            // (−1)^a 1 ⊗ d lands in (a, i−1)
            if let Some(&(_, to)) = tgt.iter().find(|(j, _)| *j == i - 1) {
                if i > c2.lo {
                    let (_, proj, _) = piece(a, i - 1)?;
                    let id = Mat::identity(f, c.comp(a).dim());
                    let blk = proj.matmul(&id.kron(c2.d(i))).matmul(&reps).scale(&neg_one_pow(f, a));
                    d.set_block(to, so, &(&d.submatrix(to, blk.rows(), so, sd) + &blk));
                }
            }
        }
        diffs.push(d);
    }
    Ok(ChainWindow { field: f, lo, hi, dims, diffs })
}

// Any right inverse of a surjective projection gives coset representatives.
fn section_of(proj: &Mat) -> Mat {
    proj.solve(&Mat::identity(proj.field(), proj.rows())).expect("projection is surjective")
}

/// A window of free Aᵉ-modules `T_n = (Aᵉ)^{r_n}` in free coordinates
/// `(g, i, j) ↦ uᵢ γ_g uⱼ`, with optional augmentation.
#[derive(Clone, Debug)]
pub struct FreeWindow {
    pub alg: Arc<Algebra>,
    pub lo: i64,
    pub hi: i64,
    pub ranks: Vec<usize>,
    /// `diffs[n − lo − 1] = d_n`, a `(r_{n−1}d²) × (r_n d²)` matrix.
    pub diffs: Vec<Mat>,
    /// `ε: T₀ → A` (`d × r₀d²`) when degree 0 is in the window.
    pub eps: Option<Mat>,
    /// `η: A → T₋₁` (`r₋₁d² × d`) when degree −1 is in the window.
    pub eta: Option<Mat>,
}

/// Extends generator images `y` (columns) of an Aᵉ-linear map `(Aᵉ)^r → M` to the full matrix.
pub fn extend_from_generators(m: &Bimodule, y: &Mat) -> Mat {
    let d = m.alg_dim();
    let r = y.cols();
    let acts = m.ae_all();
    let mut out = Mat::zeros(m.field(), m.dim(), r * d * d);
    let blocks: Vec<Mat> = par::map_range(d * d, |t| acts[t].matmul(y));
    for (t, b) in blocks.iter().enumerate() {
        for g in 0..r {
            out.set_block(0, g * d * d + t, &b.column(g));
        }
    }
    out
}

impl FreeWindow {
    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn d2(&self) -> usize {
        self.alg.dim() * self.alg.dim()
    }

    pub fn rank(&self, n: i64) -> usize {
        self.ranks[(n - self.lo) as usize]
    }

    pub fn dim_at(&self, n: i64) -> usize {
        self.rank(n) * self.d2()
    }

    pub fn d(&self, n: i64) -> &Mat {
        assert!(n > self.lo && n <= self.hi, "no d_{n} in [{}, {}]", self.lo, self.hi);
        &self.diffs[(n - self.lo - 1) as usize]
    }

    pub fn module(&self, n: i64) -> Bimodule {
        Bimodule::free(&self.alg, self.rank(n))
    }

    /// Column of the free basis vector `uᵢ γ_g uⱼ`.
    pub fn index(&self, g: usize, i: usize, j: usize) -> usize {
        let d = self.alg.dim();
        (g * d + i) * d + j
    }

    /// Full bimodule window.
    pub fn to_complex(&self) -> ComplexWindow {
        ComplexWindow {
            lo: self.lo,
            hi: self.hi,
            comps: (self.lo..=self.hi).map(|n| self.module(n)).collect(),
            diffs: self.diffs.clone(),
            aug: self.eps.clone().map(|e| (e, self.eta.clone())),
        }
    }

    pub fn underlying(&self) -> ChainWindow {
        ChainWindow {
            field: self.field(),
            lo: self.lo,
            hi: self.hi,
            dims: (self.lo..=self.hi).map(|n| self.dim_at(n)).collect(),
            diffs: self.diffs.clone(),
        }
    }

    /// Checks d² = 0, Aᵉ-linearity, and the augmentation identities.
    pub fn verify(&self) -> Result<()> {
        self.to_complex().verify()?;
        let a = Bimodule::regular(&self.alg);
        if let (Some(eps), true) = (&self.eps, self.lo <= 0 && self.hi >= 0) {
            check_linear(&self.module(0), &a, eps)?;
            if self.hi >= 1 && !eps.matmul(self.d(1)).is_zero() {
                return Err(Error::Verification("ε∘d₁ ≠ 0".into()));
            }
            if let Some(eta) = &self.eta {
                check_linear(&a, &self.module(-1), eta)?;
                if self.lo < 0 && self.d(0) != &eta.matmul(eps) {
                    return Err(Error::Verification("d₀ ≠ η∘ε".into()));
                }
                if self.lo < -1 && !self.d(-1).matmul(eta).is_zero() {
                    return Err(Error::Verification("d₋₁∘η ≠ 0".into()));
                }
            }
        }
        Ok(())
    }

    /// Generator-image form of the differential: `(r_{n−1}d²) × r_n`.
    pub fn d_gens(&self, n: i64) -> Mat {
        let d2 = self.d2();
        let r = self.rank(n);
        let cols: Vec<usize> = (0..r).map(|g| g * d2).collect();
        self.d(n).select_cols(&cols)
    }

    /// `Hom_{Aᵉ}(T, M) ≅ ⊕ M^{r_n}` with `δⁿ(f) = (−1)^{n+1} f∘d_{n+1}`.
    pub fn hom_complex(&self, m: &Bimodule) -> CochainWindow {
        let f = m.field();
        let deltas = par::map_range((self.hi - self.lo) as usize, |t| {
            let n = self.lo + t as i64;
            self.pullback_matrix(m, n + 1).scale(&neg_one_pow(f, n + 1))
        });
        CochainWindow {
            field: f,
            lo: self.lo,
            hi: self.hi,
            dims: (self.lo..=self.hi).map(|n| self.rank(n) * m.dim()).collect(),
            deltas,
        }
    }

    /// Matrix of `f ↦ f∘d_n` from `M^{r_{n−1}}` to `M^{r_n}` (no sign).
    pub fn pullback_matrix(&self, m: &Bimodule, n: i64) -> Mat {
        let d = self.alg.dim();
        let acts = m.ae_all();
        let md = m.dim();
        let dg = self.d_gens(n);
        let (rs, rt) = (self.rank(n - 1), self.rank(n));
        let mut out = Mat::zeros(m.field(), rt * md, rs * md);
        for h in 0..rt {
            for g in 0..rs {
                let mut blk = Mat::zeros(m.field(), md, md);
                for t in 0..d * d {
                    let c = dg.get(g * d * d + t, h);
                    if !c.is_zero() {
                        blk.add_scaled(&c, &acts[t]);
                    }
                }
                out.set_block(h * md, g * md, &blk);
            }
        }
        out
    }

    /// `T ⊗_{Aᵉ} M ≅ ⊕ M^{r_n}` via `γ_g ⊗ m`; `uᵢγ_g uⱼ ⊗ m = γ_g ⊗ uⱼ m uᵢ`.
    pub fn tensor_complex(&self, m: &Bimodule) -> ChainWindow {
        let diffs = par::map_range((self.hi - self.lo) as usize, |t| {
            let n = self.lo + 1 + t as i64;
            self.tensor_diff(m, n)
        });
        ChainWindow {
            field: m.field(),
            lo: self.lo,
            hi: self.hi,
            dims: (self.lo..=self.hi).map(|n| self.rank(n) * m.dim()).collect(),
            diffs,
        }
    }

    /// `d_n ⊗ id` on `M^{r_n} → M^{r_{n−1}}`.
    pub fn tensor_diff(&self, m: &Bimodule, n: i64) -> Mat {
        tensor_induced(&self.d_gens(n), self.rank(n - 1), m)
    }

    /// Full matrix of the Aᵉ-linear map `T_n → M` with generator images `y` (stacked column).
    pub fn cochain_matrix(&self, m: &Bimodule, n: i64, y: &Mat) -> Mat {
        let r = self.rank(n);
        let md = m.dim();
        let cols = Mat::from_fn(m.field(), md, r, |i, g| y.get(g * md + i, 0));
        extend_from_generators(m, &cols)
    }

    /// Chain map extension by projectivity: from `f_start` at degree `start`,
    /// solve `d′ f_{n+1} = f_n d` degree by degree up to `top`.
    /// `target_d(n)` is `d′_n` and `target(n)` the target module at `n`.
    pub fn lift_chain_map(
        &self,
        start: i64,
        f_start: Mat,
        top: i64,
        target: &dyn Fn(i64) -> Bimodule,
        target_d: &dyn Fn(i64) -> Mat,
    ) -> Result<Vec<Mat>> {
        let mut maps = vec![f_start];
        for n in start..top {
            let fd = maps.last().unwrap().matmul(self.d(n + 1));
            let dg: Vec<usize> = (0..self.rank(n + 1)).map(|g| g * self.d2()).collect();
            let rhs = fd.select_cols(&dg);
            let y = target_d(n + 1)
                .solve(&rhs)
                .ok_or_else(|| Error::NoSolution(format!("lifting to degree {}", n + 1)))?;
            maps.push(extend_from_generators(&target(n + 1), &y));
        }
        Ok(maps)
    }
}

/// `f ⊗ id: (Aᵉ)^r ⊗_{Aᵉ} M → (Aᵉ)^{r′} ⊗_{Aᵉ} M` for an Aᵉ-linear `f` given by
/// generator images `gens` (`r′d² × r`), as a map `M^r → M^{r′}`.
pub fn tensor_induced(gens: &Mat, r_tgt: usize, m: &Bimodule) -> Mat {
    let d = m.alg_dim();
    let acts = m.ae_all();
    let md = m.dim();
    let rs = gens.cols();
    let mut out = Mat::zeros(m.field(), r_tgt * md, rs * md);
    for h in 0..rs {
        for g in 0..r_tgt {
            let mut blk = Mat::zeros(m.field(), md, md);
            for i in 0..d {
                for j in 0..d {
                    let c = gens.get((g * d + i) * d + j, h);
                    if !c.is_zero() {
                        blk.add_scaled(&c, &acts[j * d + i]);
                    }
                }
            }
            out.set_block(g * md, h * md, &blk);
        }
    }
    out
}

/// Homotopy extension `h` with `d′h + hd = f − g` degree by degree, for a free
/// source, starting from `h_start: T_start → C′_{start+1}`.
pub fn extend_homotopy(
    src: &FreeWindow,
    diff: &[Mat],
    start: i64,
    h_start: Mat,
    top: i64,
    target: &dyn Fn(i64) -> Bimodule,
    target_d: &dyn Fn(i64) -> Mat,
) -> Result<Vec<Mat>> {
    // diff[k] is (f − g) at degree start + 1 + k
    let mut hs = vec![h_start];
    for n in start + 1..=top {
        let k = (n - start - 1) as usize;
        let rest = &diff[k] - &hs.last().unwrap().matmul(src.d(n));
        let gens: Vec<usize> = (0..src.rank(n)).map(|g| g * src.d2()).collect();
        let y = target_d(n + 1)
            .solve(&rest.select_cols(&gens))
            .ok_or_else(|| Error::NoSolution(format!("homotopy at degree {n}")))?;
        hs.push(extend_from_generators(&target(n + 1), &y));
    }
    Ok(hs)
}

/// Checks that `maps[n − lo]` commute with the differentials of two windows.
pub fn check_chain_map(src: &dyn Fn(i64) -> Mat, tgt: &dyn Fn(i64) -> Mat, maps: &[Mat], lo: i64) -> Result<()> {
    for k in 1..maps.len() {
        let n = lo + k as i64;
        if tgt(n).matmul(&maps[k]) != maps[k - 1].matmul(&src(n)) {
            return Err(Error::Verification(format!("chain map fails at degree {n}")));
        }
    }
    Ok(())
}
