//! The diagonal `Δ̂: T → T ⊗̂_A T` on a finite window of a complete resolution.
//!
//! Pair spaces `T_a ⊗_A T_b` use two coordinate orders:
//! NF1 `(g, p, q, h, e)` for `u_p γ_g u_q ⊗ γ_h u_e`, which reads the pair as
//! `T_a ⊗_k V_b` with `V_b` the left basis `γ_h u_e` of `T_b`, and NF2
//! `(g, p, h, q, e)`, which reads it as `W_a ⊗_k T_b`. Components of `Δ̂` are
//! stored as generator images only.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Frobenius};
use crate::bimod::neg_one_pow;
use crate::complex::FreeWindow;
use crate::exactla::{Field, Mat, Scalar};
use crate::freemod::{extend_free, extend_into_free, kron_apply, lift_free, pivot_columns, DenseFree, FreeModule, Side};
use crate::products::Pairing;
use crate::{Error, Result};

/// A free window together with its Frobenius form and the three one-sided
/// views of every component.
#[derive(Clone, Debug)]
pub struct Frames {
    pub t: FreeWindow,
    pub fr: Frobenius,
    both: Vec<DenseFree>,
    left: Vec<DenseFree>,
    right: Vec<DenseFree>,
}

impl Frames {
    pub fn new(t: FreeWindow, fr: Frobenius) -> Frames {
        let a = t.alg.clone();
        let views = |side| t.ranks.iter().map(|&r| DenseFree::envelope(&a, &fr, r, side)).collect();
        let (both, left, right) = (views(Side::Both), views(Side::Left), views(Side::Right));
        Frames { t, fr, both, left, right }
    }

    pub fn alg(&self) -> &Algebra {
        &self.t.alg
    }

    fn k(&self, n: i64) -> usize {
        (n - self.t.lo) as usize
    }

    pub fn view(&self, n: i64, side: Side) -> &DenseFree {
        match side {
            Side::Both => &self.both[self.k(n)],
            Side::Left => &self.left[self.k(n)],
            Side::Right => &self.right[self.k(n)],
        }
    }
}

/// A contracting homotopy `h_n: T_n → T_{n+1}` (`lo ≤ n < hi`) that is linear
/// for one side, with `d h + h d = 1` on the interior of the window.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub lo: i64,
    pub maps: Vec<Mat>,
}

impl Homotopy {
    pub fn at(&self, n: i64) -> &Mat {
        &self.maps[(n - self.lo) as usize]
    }
}

/// Builds a one-sided contraction from `σ: A → T₀` and `ρ: T₋₁ → A` with
/// `εσ = 1`, `ρη = 1`, setting `h₋₁ = σρ` and solving outward.
pub fn contraction(fm: &Frames, side: Side) -> Result<Homotopy> {
    let t = &fm.t;
    let a = fm.alg();
    let f = a.field();
    let (eps, eta) = match (&t.eps, &t.eta) {
        (Some(e), Some(h)) if t.lo <= -1 && t.hi >= 0 => (e, h),
        _ => return Err(Error::Window("contraction needs ε, η and degrees −1 ..= 0".into())),
    };
    let alg = DenseFree::algebra(a, &fm.fr, side);
    let y0 = eps
        .solve(&a.unit())
        .ok_or_else(|| Error::NoSolution("ε is not onto the unit".into()))?;
    let t0 = fm.view(0, side);
    let sigma = extend_free(&alg, &|s, x| t0.acts()[s].matmul(x), &y0);
    let tm = fm.view(-1, side);
    let rho = extend_into_free(&alg, &|s, z| tm.acts()[s].transpose().matmul(z), eta, &Mat::identity(f, a.dim()))
        .ok_or_else(|| Error::NoSolution("no one-sided retraction of η".into()))?;
    let mut up = vec![sigma.matmul(&rho)];
    for n in 0..t.hi {
        let rest = &Mat::identity(f, t.dim_at(n)) - &up.last().unwrap().matmul(t.d(n));
        let nxt = fm.view(n + 1, side);
        let h = lift_free(fm.view(n, side), &|s, x| nxt.acts()[s].matmul(x), t.d(n + 1), &rest)
            .ok_or_else(|| Error::NoSolution(format!("homotopy at degree {n}")))?;
        up.push(h);
    }
    // down: h_{m−1} d_m = 1 − d_{m+1} h_m, fixed on a basis of im d_m
    let mut down: Vec<Mat> = Vec::new();
    for m in (t.lo + 1..=-1).rev() {
        let hm = down.last().unwrap_or(&up[0]);
        let rest = &Mat::identity(f, t.dim_at(m)) - &t.d(m + 1).matmul(hm);
        let piv = pivot_columns(t.d(m));
        let iota = t.d(m).select_cols(&piv);
        let src = fm.view(m - 1, side);
        let h = extend_into_free(fm.view(m, side), &|s, z| src.acts()[s].transpose().matmul(z), &iota, &rest.select_cols(&piv))
            .ok_or_else(|| Error::NoSolution(format!("homotopy at degree {}", m - 1)))?;
        down.push(h);
    }
    let mut maps: Vec<Mat> = down.into_iter().rev().collect();
    maps.extend(up);
    let h = Homotopy { lo: t.lo, maps };
    for n in t.lo + 1..t.hi {
        let s = &t.d(n + 1).matmul(h.at(n)) + &h.at(n - 1).matmul(t.d(n));
        if s != Mat::identity(f, t.dim_at(n)) {
            return Err(Error::Verification(format!("contraction fails at degree {n}")));
        }
    }
    Ok(h)
}

/// `T_a ⊗_A T_b` in NF1 coordinates.
#[derive(Clone, Copy)]
pub struct PairSpace<'a> {
    fm: &'a Frames,
    a: i64,
    b: i64,
    /// `dim T_a`
    ta: usize,
    /// `r_b · d`
    m: usize,
}

impl<'a> PairSpace<'a> {
    pub fn new(fm: &'a Frames, a: i64, b: i64) -> PairSpace<'a> {
        let d = fm.alg().dim();
        PairSpace { fm, a, b, ta: fm.t.dim_at(a), m: fm.t.rank(b) * d }
    }

    fn d(&self) -> usize {
        self.fm.alg().dim()
    }

    pub fn dim(&self) -> usize {
        self.ta * self.m
    }

    pub fn left(&self, k: usize, x: &Mat) -> Mat {
        kron_apply(Some(&self.fm.view(self.a, Side::Left).acts()[k]), self.ta, None, self.m, x)
    }

    pub fn right(&self, l: usize, x: &Mat) -> Mat {
        let f = self.fm.alg().field();
        let r = Mat::identity(f, self.fm.t.rank(self.b)).kron(self.fm.alg().right(l));
        kron_apply(None, self.ta, Some(&r), self.m, x)
    }

    /// `u_p ⊗ u_e` from `Aᵉ`, `t = p·d + e`.
    pub fn act(&self, t: usize, x: &Mat) -> Mat {
        let d = self.d();
        self.left(t / d, &self.right(t % d, x))
    }

    /// `d_a ⊗ 1` into `T_{a−1} ⊗_A T_b`.
    pub fn d_first(&self, x: &Mat) -> Mat {
        kron_apply(Some(self.fm.t.d(self.a)), self.ta, None, self.m, x)
    }

    /// `(−1)^a 1 ⊗ d_b` into `T_a ⊗_A T_{b−1}`, given the blocks of [`second_blocks`].
    pub fn d_second(&self, blocks: &[Mat], x: &Mat) -> Mat {
        let f = x.field();
        let tgt = PairSpace::new(self.fm, self.a, self.b - 1);
        let mut out = Mat::zeros(f, tgt.dim(), x.cols());
        for (i, mi) in blocks.iter().enumerate() {
            if mi.is_zero() {
                continue;
            }
            let ri = &self.fm.view(self.a, Side::Right).acts()[i];
            out = &out + &kron_apply(Some(ri), self.ta, Some(mi), self.m, x);
        }
        out.scale(&neg_one_pow(f, self.a))
    }

    /// Permutation with `nf2[k] = ` NF1 index of the k-th NF2 coordinate.
    pub fn nf2(&self) -> Vec<usize> {
        let d = self.d();
        let ra = self.fm.t.rank(self.a);
        let rb = self.fm.t.rank(self.b);
        let mut out = Vec::with_capacity(self.dim());
        for g in 0..ra {
            for p in 0..d {
                for h in 0..rb {
                    for q in 0..d {
                        for e in 0..d {
                            out.push(((g * d + p) * d + q) * self.m + h * d + e);
                        }
                    }
                }
            }
        }
        out
    }
}

impl FreeModule for PairSpace<'_> {
    fn field(&self) -> Field {
        self.fm.alg().field()
    }
    fn dim(&self) -> usize {
        PairSpace::dim(self)
    }
    fn ngens(&self) -> usize {
        self.fm.t.rank(self.a) * self.m
    }
    fn order(&self) -> usize {
        self.d() * self.d()
    }
    // generator (g, q, h) is γ_g u_q ⊗ γ_h
    fn index(&self, gen: usize, t: usize) -> usize {
        let d = self.d();
        let rb = self.fm.t.rank(self.b);
        let (gq, h) = (gen / rb, gen % rb);
        let (g, q) = (gq / d, gq % d);
        let (p, e) = (t / d, t % d);
        ((g * d + p) * d + q) * self.m + h * d + e
    }
    fn act(&self, t: usize, x: &Mat) -> Mat {
        PairSpace::act(self, t, x)
    }
    fn form(&self, t: usize) -> Scalar {
        let d = self.d();
        let lam = &self.fm.fr.lambda;
        &lam.get(0, t / d) * &lam.get(0, t % d)
    }
}

/// `M_i` with `1 ⊗ d_b = Σ_i R_i ⊗ M_i` on NF1 coordinates:
/// `M_i[(h′, s), (h, e)] = Σ_j d_b(γ_h)[(h′, i, j)] c_{je}^s`.
pub fn second_blocks(t: &FreeWindow, b: i64) -> Vec<Mat> {
    let a = &t.alg;
    let d = a.dim();
    let f = a.field();
    let dg = t.d_gens(b);
    let (rs, rt) = (t.rank(b), t.rank(b - 1));
    (0..d)
        .map(|i| {
            let mut mi = Mat::zeros(f, rt * d, rs * d);
            for h in 0..rs {
                for hp in 0..rt {
                    for j in 0..d {
                        let c = dg.get((hp * d + i) * d + j, h);
                        if c.is_zero() {
                            continue;
                        }
                        for e in 0..d {
                            for s in 0..d {
                                let k = a.c(j, e, s);
                                if !k.is_zero() {
                                    mi.add_at(hp * d + s, h * d + e, &(&c * &k));
                                }
                            }
                        }
                    }
                }
            }
            mi
        })
        .collect()
}

/// The bimodule map with generator images `y` (columns, in `target`) applied
/// to elements `x` of `(Aᵉ)^r` in free coordinates.
fn apply_gens(target: &PairSpace, y: &Mat, x: &Mat) -> Mat {
    let f = y.field();
    let d = target.d();
    let r = y.cols();
    let mut out = Mat::zeros(f, target.dim(), x.cols());
    for i in 0..d {
        for j in 0..d {
            let cij = Mat::from_fn(f, r, x.cols(), |h, c| x.get((h * d + i) * d + j, c));
            if cij.is_zero() {
                continue;
            }
            out = &out + &target.act(i * d + j, y).matmul(&cij);
        }
    }
    out
}

/// Components `Δ̂^{(n)}_p: T_n → T_{n−p} ⊗_A T_p` as generator images.
#[derive(Clone, Debug)]
pub struct DiagonalWindow {
    pub frames: Frames,
    comps: BTreeMap<(i64, i64), Mat>,
    blocks: BTreeMap<i64, Vec<Mat>>,
}

impl DiagonalWindow {
    /// Builds `Δ̂^{(n)}` for `nlo ≤ n ≤ nhi` on every component the window supports.
    /// `seed` perturbs `τ₀` inside `ker(ε ⊗ ε)`.
    pub fn build(t: FreeWindow, fr: Frobenius, nlo: i64, nhi: i64, seed: Option<u64>) -> Result<DiagonalWindow> {
        let fm = Frames::new(t, fr);
        let t = &fm.t;
        let a = fm.alg();
        let f = a.field();
        let d = a.dim();
        let blocks: BTreeMap<i64, Vec<Mat>> = (t.lo + 1..=t.hi).map(|b| (b, second_blocks(t, b))).collect();
        if t.ranks.iter().all(|&r| r == 0) {
            // the zero window: every component is the empty map
            let comps = (nlo.max(t.lo)..=nhi.min(t.hi))
                .flat_map(|n| (t.lo..=t.hi).filter(move |&p| n - p >= t.lo && n - p <= t.hi).map(move |p| (n, p)))
                .map(|k| (k, Mat::zeros(f, 0, 0)))
                .collect();
            return Ok(DiagonalWindow { frames: fm, comps, blocks });
        }
        let hl = contraction(&fm, Side::Left)?;
        let hr = contraction(&fm, Side::Right)?;
        let (lo, hi) = (t.lo, t.hi);
        let r0 = t.rank(0);

        // τ₀ with (ε ⊗ ε) τ₀ = ε on generators
        let eps = t.eps.as_ref().unwrap();
        let p00 = PairSpace::new(&fm, 0, 0);
        let eps_h: Vec<Mat> = (0..r0).map(|h| eps.column(h * d * d)).collect();
        let mut ee = Mat::zeros(f, d, p00.dim());
        for g in 0..r0 {
            for p in 0..d {
                for q in 0..d {
                    let w = eps.column(t.index(g, p, q));
                    if w.is_zero() {
                        continue;
                    }
                    for (h, eh) in eps_h.iter().enumerate() {
                        for e in 0..d {
                            let z = a.right(e).matmul(eh);
                            ee.set_block(0, ((g * d + p) * d + q) * p00.m + h * d + e, &a.mul(&w, &z));
                        }
                    }
                }
            }
        }
        let want = Mat::from_fn(f, d, r0, |i, g| eps.get(i, g * d * d));
        let mut tau0 = ee
            .solve(&want)
            .ok_or_else(|| Error::NoSolution("τ₀ through ε ⊗ ε".into()))?;
        if let Some(s) = seed {
            let ker = ee.kernel_basis();
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let bound = match f {
                Field::Prime(p) => p as i64,
                Field::Rationals => 7,
            };
            let vals: Vec<i64> = (0..ker.cols() * r0).map(|_| rng.random_range(0..bound) - bound / 2).collect();
            let coef = Mat::from_fn(f, ker.cols(), r0, |i, j| f.from_i64(vals[i * r0 + j]));
            tau0 = &tau0 + &ker.matmul(&coef);
        }

        let mut comps = BTreeMap::new();
        // τ_i ∈ T_i ⊗ T_{−i}
        let kmax = hi.min(-lo);
        let mut taus = BTreeMap::new();
        taus.insert(0, tau0);
        for i in 1..=kmax {
            let prev = PairSpace::new(&fm, i - 1, 1 - i);
            let x = prev.d_second(&blocks[&(1 - i)], &taus[&(i - 1)]);
            let ps = PairSpace::new(&fm, i, -i);
            let y = kron_apply(Some(hl.at(i - 1)), t.dim_at(i - 1), None, ps.m, &x).scale(&-f.one());
            taus.insert(i, y);
        }
        for i in (-kmax..0).rev() {
            let prev = PairSpace::new(&fm, i + 1, -i - 1);
            let x = prev.d_first(&taus[&(i + 1)]);
            let ps = PairSpace::new(&fm, i, -i);
            let rows = ps.nf2();
            let prows = PairSpace::new(&fm, i, -i - 1).nf2();
            let y = second_homotopy(&ps, hr.at(-i - 1), &x.select_rows(&prows), &rows).scale(&-neg_one_pow(f, i));
            taus.insert(i, y);
        }
        for (i, y) in taus {
            comps.insert((0, -i), y);
        }

        // upward: Δ̂^{(n)}_p = H(Δ̂^{(n−1)}_{p−1} d_n)
        for n in 1..=nhi.min(hi) {
            let prev: Vec<i64> = comps.keys().filter(|k| k.0 == n - 1).map(|k| k.1).collect();
            for q in prev {
                let p = q + 1;
                if p > hi || n - p < lo {
                    continue;
                }
                let src = PairSpace::new(&fm, n - p, q);
                let x = apply_gens(&src, &comps[&(n - 1, q)], &t.d_gens(n));
                let ps = PairSpace::new(&fm, n - p, p);
                let rows = src.nf2();
                let y = second_homotopy(&ps, hl.at(q), &x.select_rows(&rows), &ps.nf2())
                    .scale(&neg_one_pow(f, n - p));
                comps.insert((n, p), y);
            }
        }

        // downward: Δ̂^{(n−1)}_b d_n = d′Δ̂^{(n)}_b + d″Δ̂^{(n)}_{b+1}
        for n in (nlo.max(lo + 1) + 1..=0).rev() {
            let piv = pivot_columns(t.d(n));
            let iota = t.d(n).select_cols(&piv);
            let src = fm.view(n - 1, Side::Both);
            let have: Vec<i64> = comps.keys().filter(|k| k.0 == n).map(|k| k.1).collect();
            for &b in &have {
                if !have.contains(&(b + 1)) || n - 1 - b < lo {
                    continue;
                }
                let phi = total_d(&fm, &blocks, n, b, &comps[&(n, b)], &comps[&(n, b + 1)]);
                let tgt = PairSpace::new(&fm, n - 1 - b, b);
                let full = extend_free(fm.view(n, Side::Both), &|s, x| tgt.act(s, x), &phi);
                let xmap = extend_into_free(&tgt, &|s, z| src.acts()[s].transpose().matmul(z), &iota, &full.select_cols(&piv))
                    .ok_or_else(|| Error::NoSolution(format!("diagonal at degree {}, component {b}", n - 1)))?;
                let gens: Vec<usize> = (0..t.rank(n - 1)).map(|g| g * d * d).collect();
                comps.insert((n - 1, b), xmap.select_cols(&gens));
            }
        }
        comps.retain(|k, _| k.0 >= nlo && k.0 <= nhi);
        let dw = DiagonalWindow { frames: fm, comps, blocks };
        Ok(dw)
    }

    pub fn component(&self, n: i64, p: i64) -> Option<&Mat> {
        self.comps.get(&(n, p))
    }

    pub fn degrees(&self) -> Vec<(i64, i64)> {
        self.comps.keys().cloned().collect()
    }

    /// Checks the chain-map identity on every pair of adjacent stored components
    /// and the counit `(ε ⊗ ε)Δ̂ = ε`. Returns the number of identities checked.
    pub fn verify(&self) -> Result<usize> {
        let fm = &self.frames;
        let t = &fm.t;
        let mut count = 0;
        for (&(n, p), y) in &self.comps {
            let (Some(lower), Some(next)) = (self.comps.get(&(n - 1, p)), self.comps.get(&(n, p + 1))) else {
                continue;
            };
            let lhs = total_d(fm, &self.blocks, n, p, y, next);
            let rhs = apply_gens(&PairSpace::new(fm, n - 1 - p, p), lower, &t.d_gens(n));
            if lhs != rhs {
                return Err(Error::Verification(format!("diagonal is not a chain map at ({n}, {p})")));
            }
            count += 1;
        }
        Ok(count)
    }

    fn window_check(&self, n: i64, p: i64) -> Result<&Mat> {
        self.component(n, p)
            .ok_or_else(|| Error::Window(format!("diagonal component ({n}, {p}) is outside the window")))
    }
}

/// `d′y + d″z` for `y ∈ P(n−p, p)` and `z ∈ P(n−p−1, p+1)`.
fn total_d(fm: &Frames, blocks: &BTreeMap<i64, Vec<Mat>>, n: i64, p: i64, y: &Mat, z: &Mat) -> Mat {
    let first = PairSpace::new(fm, n - p, p).d_first(y);
    let second = PairSpace::new(fm, n - p - 1, p + 1).d_second(&blocks[&(p + 1)], z);
    &first + &second
}

/// `1 ⊗ h` on NF2 coordinates `x` (rows already in NF2 order of the source),
/// returned in NF1 order of `ps` whose NF2 permutation is `rows`.
fn second_homotopy(ps: &PairSpace, h: &Mat, x: &Mat, rows: &[usize]) -> Mat {
    let ra_d = ps.fm.t.rank(ps.a) * ps.d();
    let y = kron_apply(None, ra_d, Some(h), h.cols(), x);
    let mut out = Mat::zeros(x.field(), y.rows(), y.cols());
    for (k, &r) in rows.iter().enumerate() {
        for c in 0..y.cols() {
            let v = y.get(k, c);
            if !v.is_zero() {
                out.set(r, c, &v);
            }
        }
    }
    out
}

/// `u ⌣ v = (−1)^{rs} μ(u ⊗ v)Δ̂` for cochains given by generator images.
pub fn cup_via_diagonal(dw: &DiagonalWindow, pairing: &Pairing, u: &Mat, r: i64, v: &Mat, s: i64) -> Result<Mat> {
    let fm = &dw.frames;
    let t = &fm.t;
    let f = t.field();
    let d = t.alg.dim();
    let y = dw.window_check(r + s, s)?;
    let (m, n) = (&pairing.m, &pairing.n);
    let ufull = t.cochain_matrix(m, r, u);
    let rs = t.rank(s);
    let nd = n.dim();
    let mut w = Mat::zeros(f, nd, rs * d);
    for h in 0..rs {
        let vh = v.submatrix(h * nd, nd, 0, 1);
        for e in 0..d {
            w.set_block(0, h * d + e, &n.right(e).matmul(&vh));
        }
    }
    let img = pairing.proj.matmul(&kron_apply(Some(&ufull), t.dim_at(r), Some(&w), rs * d, y));
    let stacked = crate::barres::stack_columns(&img);
    Ok(stacked.scale(&neg_one_pow(f, r * s)))
}

/// `u ⌢ z = (−1)^{r(s−r)} ((1 ⊗ u)Δ̂ ⊗ 1)(z)` for a cochain `u` of degree `r`
/// and a chain `z ∈ N^{r_s}` of degree `s`, landing in the pairing target.
pub fn cap_via_diagonal(dw: &DiagonalWindow, pairing: &Pairing, u: &Mat, r: i64, z: &Mat, s: i64) -> Result<Mat> {
    let fm = &dw.frames;
    let t = &fm.t;
    let f = t.field();
    let d = t.alg.dim();
    let y = dw.window_check(s, r)?;
    let (m, n) = (&pairing.m, &pairing.n);
    let (md, nd) = (m.dim(), n.dim());
    let q = s - r;
    let (rq, rr) = (t.rank(q), t.rank(r));
    let od = pairing.out.dim();
    let mut out = Mat::zeros(f, rq * od, 1);
    let sign = neg_one_pow(f, r * (s - r));
    let mlen = rr * d;
    for col in 0..t.rank(s) {
        let nt = z.submatrix(col * nd, nd, 0, 1);
        if nt.is_zero() {
            continue;
        }
        for g in 0..rq {
            let mut acc = Mat::zeros(f, od, 1);
            for p in 0..d {
                let np = n.right(p).matmul(&nt);
                if np.is_zero() {
                    continue;
                }
                for qq in 0..d {
                    for h in 0..rr {
                        let uh = u.submatrix(h * md, md, 0, 1);
                        for e in 0..d {
                            let c = y.get(((g * d + p) * d + qq) * mlen + h * d + e, col);
                            if c.is_zero() {
                                continue;
                            }
                            let mv = m.left(qq).matmul(&m.right(e).matmul(&uh));
                            acc.add_scaled(&c, &pairing.proj.matmul(&mv.kron(&np)));
                        }
                    }
                }
            }
            let cur = out.submatrix(g * od, od, 0, 1);
            out.set_block(g * od, 0, &(&cur + &acc.scale(&sign)));
        }
    }
    Ok(out)
}
