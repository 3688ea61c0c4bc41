//! The normalized bar resolution, classical Hochschild (co)homology, and the
//! cup and cap products defined by the front/back-face diagonal.
//!
//! `Ā` is spanned by basis elements `1..d`; products landing in `Ā` drop the
//! unit coordinate. A generator of `Bar_n` is a tuple of `n` indices from
//! `1..d`, numbered in base `d − 1` with the first entry most significant.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::bimod::{neg_one_pow, Bimodule};
use crate::complex::{CochainWindow, FreeWindow, Homology};
use crate::exactla::{Mat, Subspace};
use crate::{par, Error, Result};

/// `Bar_0 .. Bar_N` with augmentation.
#[derive(Clone, Debug)]
pub struct BarWindow {
    pub window: FreeWindow,
    pub top: usize,
}

/// Tuple bookkeeping for `Ā^{⊗n}`.
#[derive(Clone, Copy, Debug)]
pub struct Tuples {
    /// `dim Ā`
    pub base: usize,
}

impl Tuples {
    pub fn count(&self, n: usize) -> usize {
        self.base.pow(n as u32)
    }

    /// Basis indices (each in `1..d`) of tuple number `t` of length `n`.
    pub fn decode(&self, n: usize, mut t: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for k in (0..n).rev() {
            out[k] = t % self.base + 1;
            t /= self.base;
        }
        out
    }

    pub fn encode(&self, a: &[usize]) -> usize {
        a.iter().fold(0, |acc, &x| acc * self.base + (x - 1))
    }

    /// Splits tuple `t` of length `n` into its first `q` entries and the rest.
    pub fn split(&self, n: usize, t: usize, q: usize) -> (usize, usize) {
        let m = self.count(n - q);
        (t / m, t % m)
    }

    pub fn join(&self, front: usize, back: usize, back_len: usize) -> usize {
        front * self.count(back_len) + back
    }
}

/// Full matrix of the Aᵉ-linear map out of a free module whose generator
/// images in `(Aᵉ)^{r}` are the columns of `y`.
pub fn free_extend(a: &Algebra, r: usize, y: &Mat) -> Mat {
    let d = a.dim();
    let f = a.field();
    let d2 = d * d;
    let cols: Vec<Mat> = par::map_range(y.cols(), |g| {
        let yg = y.column(g);
        let mut blk = Mat::zeros(f, r * d2, d2);
        for h in 0..r {
            for p in 0..d {
                for q in 0..d {
                    let c = yg.get((h * d + p) * d + q, 0);
                    if c.is_zero() {
                        continue;
                    }
                    // uᵢ (u_p γ_h u_q) uⱼ
                    for i in 0..d {
                        for s in 0..d {
                            let a1 = a.c(i, p, s);
                            if a1.is_zero() {
                                continue;
                            }
                            let a1c = &a1 * &c;
                            for j in 0..d {
                                for t in 0..d {
                                    let a2 = a.c(q, j, t);
                                    if !a2.is_zero() {
                                        blk.add_at((h * d + s) * d + t, i * d + j, &(&a1c * &a2));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        blk
    });
    let refs: Vec<&Mat> = cols.iter().collect();
    Mat::hstack(f, r * d2, &refs)
}

impl BarWindow {
    pub fn alg(&self) -> &Arc<Algebra> {
        &self.window.alg
    }

    pub fn tuples(&self) -> Tuples {
        Tuples { base: self.alg().dim() - 1 }
    }

    pub fn d(&self, n: usize) -> &Mat {
        self.window.d(n as i64)
    }

    pub fn eps(&self) -> &Mat {
        self.window.eps.as_ref().unwrap()
    }

    /// The right-linear contracting homotopy `s(a₀⊗ā⊗a) = 1⊗ā₀⊗ā⊗a` from
    /// `Bar_n` to `Bar_{n+1}`; for `n = −1` it is `A → Bar₀, a ↦ 1⊗a`.
    pub fn extra_degeneracy(&self, n: i64) -> Mat {
        let a = self.alg();
        let d = a.dim();
        let f = a.field();
        let tu = self.tuples();
        if n < 0 {
            let mut s = Mat::zeros(f, d * d, d);
            for j in 0..d {
                s.set(j, j, &f.one());
            }
            return s;
        }
        let n = n as usize;
        let r = tu.count(n);
        let mut s = Mat::zeros(f, tu.count(n + 1) * d * d, r * d * d);
        for g in 0..r {
            for i in 1..d {
                let t = tu.join(i - 1, g, n);
                for j in 0..d {
                    s.set((t * d) * d + j, (g * d + i) * d + j, &f.one());
                }
            }
        }
        s
    }

    pub fn verify_homotopy(&self) -> Result<()> {
        let top = self.top as i64;
        let f = self.alg().field();
        let d = self.alg().dim();
        // degree 0: d₁s₀ + s₋₁ε = id
        for n in 0..top {
            let s = self.extra_degeneracy(n);
            let mut lhs = self.window.d(n + 1).matmul(&s);
            if n == 0 {
                lhs = &lhs + &self.extra_degeneracy(-1).matmul(self.eps());
            } else {
                lhs = &lhs + &self.extra_degeneracy(n - 1).matmul(self.window.d(n));
            }
            if lhs != Mat::identity(f, self.window.dim_at(n)) {
                return Err(Error::Verification(format!("extra degeneracy fails at degree {n}")));
            }
        }
        if self.eps().matmul(&self.extra_degeneracy(-1)) != Mat::identity(f, d) {
            return Err(Error::Verification("ε s₋₁ ≠ id".into()));
        }
        Ok(())
    }
}

/// Generator images of `d_n` on `Bar_n`, as columns in `Bar_{n−1}`.
fn bar_d_gens(a: &Algebra, n: usize) -> Mat {
    let d = a.dim();
    let f = a.field();
    let tu = Tuples { base: d - 1 };
    let r_src = tu.count(n);
    let r_tgt = tu.count(n - 1);
    let mut y = Mat::zeros(f, r_tgt * d * d, r_src);
    for t in 0..r_src {
        let ab = tu.decode(n, t);
        // a₁ γ(a₂..aₙ)
        let rest = tu.encode(&ab[1..]);
        y.add_at((rest * d + ab[0]) * d, t, &f.one());
        for k in 1..n {
            let sign = neg_one_pow(f, k as i64);
            for s in 1..d {
                let c = a.c(ab[k - 1], ab[k], s);
                if c.is_zero() {
                    continue;
                }
                let mut merged: Vec<usize> = ab[..k - 1].to_vec();
                merged.push(s);
                merged.extend_from_slice(&ab[k + 1..]);
                let g = tu.encode(&merged);
                y.add_at(g * d * d, t, &(&sign * &c));
            }
        }
        let g = tu.encode(&ab[..n - 1]);
        y.add_at(g * d * d + ab[n - 1], t, &neg_one_pow(f, n as i64));
    }
    y
}

/// Bar window up to degree `top`; requires basis element 0 to be the unit.
pub fn bar_window(a: &Arc<Algebra>, top: usize) -> Result<BarWindow> {
    let d = a.dim();
    let f = a.field();
    if a.unit() != Mat::unit_vector(f, d, 0) {
        return Err(Error::Precondition("basis element 0 must be the unit".into()));
    }
    if top < 1 {
        return Err(Error::Window("bar window needs top degree ≥ 1".into()));
    }
    let tu = Tuples { base: d - 1 };
    let diffs: Vec<Mat> = (1..=top).map(|n| free_extend(a, tu.count(n - 1), &bar_d_gens(a, n))).collect();
    let mut eps = Mat::zeros(f, d, d * d);
    for i in 0..d {
        for j in 0..d {
            eps.set_block(0, i * d + j, &a.product_basis(i, j));
        }
    }
    let window = FreeWindow {
        alg: a.clone(),
        lo: 0,
        hi: top as i64,
        ranks: (0..=top).map(|n| tu.count(n)).collect(),
        diffs,
        eps: Some(eps),
        eta: None,
    };
    Ok(BarWindow { window, top })
}

/// Checks exactness of the augmented bar window below the top degree.
pub fn verify_resolution(b: &BarWindow) -> Result<()> {
    let a = b.alg();
    let w = &b.window;
    w.verify()?;
    if b.eps().rank() != a.dim() {
        return Err(Error::Verification("ε is not surjective".into()));
    }
    let mut prev_rank = b.eps().rank();
    for n in 0..b.top {
        let dn1 = w.d(n as i64 + 1).rank();
        if dn1 + prev_rank != w.dim_at(n as i64) {
            return Err(Error::Verification(format!("bar window not exact at degree {n}")));
        }
        prev_rank = dn1;
    }
    Ok(())
}

/// `Hⁿ(A, M)` from the bar window; needs `n < top`.
pub fn hochschild_cohomology(b: &BarWindow, m: &Bimodule, n: usize) -> Result<Homology> {
    if n >= b.top {
        return Err(Error::Window(format!("degree {n} needs a bar window above {}", b.top)));
    }
    let c = b.window.hom_complex(m);
    Ok(cohomology_of(&c, n as i64))
}

pub(crate) fn cohomology_of(c: &CochainWindow, n: i64) -> Homology {
    if n == c.lo {
        c.cohomology_at_bottom()
    } else {
        c.cohomology_at(n).expect("interior degree")
    }
}

/// `Hₙ(A, M)`; needs `n < top`.
pub fn hochschild_homology(b: &BarWindow, m: &Bimodule, n: usize) -> Result<Homology> {
    if n >= b.top {
        return Err(Error::Window(format!("degree {n} needs a bar window above {}", b.top)));
    }
    let n = n as i64;
    let dim = b.window.rank(n) * m.dim();
    let d_out = if n > 0 { Some(b.window.tensor_diff(m, n)) } else { None };
    let d_in = b.window.tensor_diff(m, n + 1);
    let cycles = match d_out {
        Some(d) => d.kernel(),
        None => Subspace::full(m.field(), dim),
    };
    let boundaries = d_in.image();
    let quotient = crate::exactla::quotient(&cycles, &boundaries)?;
    Ok(Homology { cycles, boundaries, quotient })
}

/// `Δ` on `Bar_n` as generator images: for each `p`, a matrix whose column `t`
/// lists the pairs `(front, back)` with coefficient 1, i.e. the front face of
/// length `n − p` and back face of length `p`.
pub fn bar_diagonal(b: &BarWindow, n: usize, p: usize) -> Vec<(usize, usize, usize)> {
    let tu = b.tuples();
    (0..tu.count(n))
        .map(|t| {
            let (fr, bk) = tu.split(n, t, n - p);
            (t, fr, bk)
        })
        .collect()
}

/// Cup product of cochains `u ∈ M^{r_m}` and `v ∈ N^{r_n}` (generator images),
/// landing in `(M ⊗_A N)^{r_{m+n}}` through the projection `proj` of `tensor_over_a`.
pub fn cup_bar(b: &BarWindow, u: &Mat, m_deg: usize, v: &Mat, n_deg: usize, m: &Bimodule, n: &Bimodule, proj: &Mat) -> Result<Mat> {
    if m_deg + n_deg > b.top {
        return Err(Error::Window(format!("cup of degrees {m_deg}+{n_deg} exceeds the bar window")));
    }
    let tu = b.tuples();
    let f = m.field();
    let (md, nd) = (m.dim(), n.dim());
    let td = proj.rows();
    let total = m_deg + n_deg;
    let sign = neg_one_pow(f, (m_deg * n_deg) as i64);
    let mut out = Mat::zeros(f, tu.count(total) * td, 1);
    for (t, fr, bk) in bar_diagonal(b, total, n_deg) {
        let uf = u.submatrix(fr * md, md, 0, 1);
        let vb = v.submatrix(bk * nd, nd, 0, 1);
        let x = proj.matmul(&uf.kron(&vb)).scale(&sign);
        out.set_block(t * td, 0, &x);
    }
    Ok(out)
}

/// Cap product of a cochain `u ∈ M^{r_m}` with a chain `w ∈ N^{r_p}` (`γ_t ⊗ n_t`),
/// landing in `(M ⊗_A N)^{r_{p−m}}`.
pub fn cap_bar(b: &BarWindow, u: &Mat, m_deg: usize, w: &Mat, p_deg: usize, m: &Bimodule, n: &Bimodule, proj: &Mat) -> Result<Mat> {
    if p_deg < m_deg {
        return Err(Error::Precondition(format!("cap needs p ≥ m, got p = {p_deg}, m = {m_deg}")));
    }
    let tu = b.tuples();
    let f = m.field();
    let (md, nd) = (m.dim(), n.dim());
    let td = proj.rows();
    let q = p_deg - m_deg;
    let sign = neg_one_pow(f, (m_deg * q) as i64);
    let mut out = Mat::zeros(f, tu.count(q) * td, 1);
    for (t, fr, bk) in bar_diagonal(b, p_deg, m_deg) {
        let ub = u.submatrix(bk * md, md, 0, 1);
        let nt = w.submatrix(t * nd, nd, 0, 1);
        if nt.is_zero() {
            continue;
        }
        let x = proj.matmul(&ub.kron(&nt)).scale(&sign);
        let cur = out.submatrix(fr * td, td, 0, 1);
        out.set_block(fr * td, 0, &(&cur + &x));
    }
    Ok(out)
}

/// `(A ⊗ N)^{r_k} ≅ Bar_k ⊗_A N` with coordinates `(g, p, n) ↦ u_p γ_g ⊗ n`.
pub fn bar_tensor_module(b: &BarWindow, n: &Bimodule, k: usize) -> Bimodule {
    let a = b.alg();
    let r = b.window.rank(k as i64);
    let f = a.field();
    let idr = Mat::identity(f, r);
    let idn = Mat::identity(f, n.dim());
    let ida = Mat::identity(f, a.dim());
    let left = (0..a.dim()).map(|i| idr.kron(&a.left(i).kron(&idn))).collect();
    let right = (0..a.dim()).map(|i| idr.kron(&ida.kron(n.right(i)))).collect();
    Bimodule::new(a, r * a.dim() * n.dim(), left, right).expect("tensor of bimodules")
}

/// `d_k ⊗ id` on `Bar_k ⊗_A N → Bar_{k−1} ⊗_A N`.
pub fn bar_tensor_diff(b: &BarWindow, n: &Bimodule, k: usize) -> Mat {
    let a = b.alg();
    let d = a.dim();
    let f = a.field();
    let nd = n.dim();
    let dg = b.window.d_gens(k as i64);
    let (rs, rt) = (b.window.rank(k as i64), b.window.rank(k as i64 - 1));
    let mut out = Mat::zeros(f, rt * d * nd, rs * d * nd);
    for g in 0..rs {
        for h in 0..rt {
            for i in 0..d {
                for j in 0..d {
                    let c = dg.get((h * d + i) * d + j, g);
                    if c.is_zero() {
                        continue;
                    }
                    // u_p γ_g ⊗ x ↦ c · (u_p uᵢ) γ_h ⊗ uⱼ x
                    let lj = n.left(j).scale(&c);
                    for p in 0..d {
                        for s in 0..d {
                            let e = a.c(p, i, s);
                            if e.is_zero() {
                                continue;
                            }
                            let blk = lj.scale(&e);
                            let (r0, c0) = ((h * d + s) * nd, (g * d + p) * nd);
                            let cur = out.submatrix(r0, nd, c0, nd);
                            out.set_block(r0, c0, &(&cur + &blk));
                        }
                    }
                }
            }
        }
    }
    out
}

/// The composition product `(u ⊗ id)∘V` against the bar cup product, for all
/// basis classes with `r + s ≤ bound`. Returns the number of pairs compared.
pub fn verify_composition_product(b: &BarWindow, m: &Bimodule, n: &Bimodule, bound: usize) -> Result<usize> {
    let a = b.alg();
    let f = a.field();
    let d = a.dim();
    if bound + 1 > b.top {
        return Err(Error::Window("composition check needs top > bound".into()));
    }
    let (mn, proj) = m.tensor_over_a(n);
    let target_coh = b.window.hom_complex(&mn);
    let nd = n.dim();
    let mut pairs = 0;
    for s in 0..=bound {
        let hn = hochschild_cohomology(b, n, s)?;
        for r in 0..=bound - s {
            let hm = hochschild_cohomology(b, m, r)?;
            let hrs = cohomology_of(&target_coh, (r + s) as i64);
            for vi in 0..hn.dim() {
                let v = hn.representatives().column(vi);
                // lift v: Bar_s → N through ε ⊗ id : Bar_0 ⊗_A N → N
                let eps_n = {
                    let mut e = Mat::zeros(f, nd, d * nd);
                    for p in 0..d {
                        e.set_block(0, p * nd, n.left(p));
                    }
                    e
                };
                let src = b.window.module(s as i64);
                let vfull = b.window.cochain_matrix(n, s as i64, &v);
                let y0 = eps_n
                    .solve(&vfull.select_cols(&gens_of(&b.window, s as i64)))
                    .ok_or_else(|| Error::NoSolution("lifting through ε ⊗ id".into()))?;
                let mut lift = crate::complex::extend_from_generators(&bar_tensor_module(b, n, 0), &y0);
                let _ = &src;
                for k in 1..=r {
                    let rhs = lift.matmul(b.window.d((s + k) as i64));
                    let rhs = rhs.select_cols(&gens_of(&b.window, (s + k) as i64));
                    let y = bar_tensor_diff(b, n, k)
                        .solve(&rhs)
                        .ok_or_else(|| Error::NoSolution(format!("lifting to degree {k}")))?;
                    lift = crate::complex::extend_from_generators(&bar_tensor_module(b, n, k), &y);
                }
                for ui in 0..hm.dim() {
                    let u = hm.representatives().column(ui);
                    // (u ⊗ id)(u_p γ_g ⊗ x) = u_p u(γ_g) ⊗_A x
                    let md = m.dim();
                    let rr = b.window.rank(r as i64);
                    let mut uid = Mat::zeros(f, proj.rows(), rr * d * nd);
                    for g in 0..rr {
                        let ug = u.submatrix(g * md, md, 0, 1);
                        for p in 0..d {
                            let up = m.left(p).matmul(&ug);
                            for x in 0..nd {
                                let e = Mat::unit_vector(f, nd, x);
                                uid.set_block(0, (g * d + p) * nd + x, &proj.matmul(&up.kron(&e)));
                            }
                        }
                    }
                    let comp = uid.matmul(&lift).scale(&neg_one_pow(f, (r * s) as i64));
                    let comp_gens = comp.select_cols(&gens_of(&b.window, (r + s) as i64));
                    let comp_vec = stack_columns(&comp_gens);
                    let cup = cup_bar(b, &u, r, &v, s, m, n, &proj)?;
                    let diff = &comp_vec - &cup;
                    if !hrs.is_boundary(&diff) {
                        return Err(Error::Verification(format!(
                            "composition product differs from cup in degrees ({r}, {s})"
                        )));
                    }
                    pairs += 1;
                }
            }
        }
    }
    Ok(pairs)
}

/// Generator columns `g·d²` of a free window component.
pub(crate) fn gens_of(w: &FreeWindow, n: i64) -> Vec<usize> {
    (0..w.rank(n)).map(|g| g * w.d2()).collect()
}

/// Stacks the columns of `m` into one column.
pub(crate) fn stack_columns(m: &Mat) -> Mat {
    let cols: Vec<Mat> = (0..m.cols()).map(|c| m.column(c)).collect();
    let refs: Vec<&Mat> = cols.iter().collect();
    Mat::vstack(m.field(), 1, &refs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn bar(key: &str, top: usize) -> BarWindow {
        let a = Arc::new(corpus::get(key).unwrap().algebra);
        bar_window(&a, top).unwrap()
    }

    #[test]
    fn dimensions() {
        let b = bar("dual5", 4);
        for n in 0..=4 {
            assert_eq!(b.window.dim_at(n), 4);
        }
        let b = bar("trunc3_f11", 3);
        for n in 0..=3 {
            assert_eq!(b.window.dim_at(n), 9 << n);
        }
    }

    #[test]
    fn d1_formula() {
        let b = bar("dual5", 2);
        let f = b.alg().field();
        // d₁(1⊗x̄⊗1) = x⊗1 − 1⊗x
        let col = b.d(1).column(0);
        let mut want = Mat::zeros(f, 4, 1);
        want.set(2, 0, &f.one());
        want.set(1, 0, &-f.one());
        assert_eq!(col, want);
    }

    #[test]
    fn resolution_and_homotopy() {
        for e in corpus::all() {
            let a = Arc::new(e.algebra);
            let top = if a.dim() > 3 { 3 } else { 4 };
            let b = bar_window(&a, top).unwrap();
            verify_resolution(&b).unwrap();
            b.verify_homotopy().unwrap();
        }
    }

    #[test]
    fn low_degree_groups() {
        let b = bar("dual5", 5);
        let a = b.alg().clone();
        let reg = Bimodule::regular(&a);
        assert_eq!(hochschild_cohomology(&b, &reg, 0).unwrap().dim(), 2);
        assert_eq!(hochschild_homology(&b, &reg, 0).unwrap().dim(), 2);
        let k = bar("k", 3);
        let kr = Bimodule::regular(k.alg());
        assert_eq!(hochschild_cohomology(&k, &kr, 0).unwrap().dim(), 1);
        assert_eq!(hochschild_homology(&k, &kr, 0).unwrap().dim(), 1);
        assert_eq!(hochschild_homology(&k, &kr, 1).unwrap().dim(), 0);
        assert_eq!(hochschild_homology(&k, &kr, 2).unwrap().dim(), 0);
    }

    #[test]
    fn composition_product_matches_cup() {
        for key in ["dual5", "trunc3_f11", "qext17"] {
            let b = bar(key, 3);
            let reg = Bimodule::regular(b.alg());
            assert!(verify_composition_product(&b, &reg, &reg, 2).unwrap() > 0);
        }
    }
}
