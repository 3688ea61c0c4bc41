//! Products in the stable category: a class `g: ΩʲA → A` is lifted to chain
//! maps `G_l: T_{l+j} → T_l` of the minimal complete resolution, and
//! `f ∪ g = (−1)^{ij} f ∘ G_i`. The restriction of `G_i` to syzygies is the map
//! `ΩⁱΩʲA → ΩⁱA` used in the stable category.

use std::sync::Arc;

use crate::algebra::{Algebra, Frobenius};
use crate::bimod::{neg_one_pow, Bimodule};
use crate::complex::{tensor_induced, FreeWindow};
use crate::exactla::Mat;
use crate::freemod::{extend_into_free, lift_free, pivot_columns, DenseFree, Side};
use crate::tate::{syzygies, window_cohomology, window_homology, SyzygyChain, TateGroup};
use crate::{Error, Result};

/// Chain maps `G_l: S_{l+j} → T_l` for `lo ≤ l ≤ hi` lifting an augmented cocycle.
#[derive(Clone, Debug)]
pub struct ChainLift {
    pub shift: i64,
    pub lo: i64,
    pub maps: Vec<Mat>,
}

impl ChainLift {
    pub fn hi(&self) -> i64 {
        self.lo + self.maps.len() as i64 - 1
    }

    pub fn at(&self, l: i64) -> Result<&Mat> {
        if l < self.lo || l > self.hi() {
            return Err(Error::Window(format!("lift component {l} outside [{}, {}]", self.lo, self.hi())));
        }
        Ok(&self.maps[(l - self.lo) as usize])
    }

    /// Generator images of `G_l`.
    pub fn gens(&self, l: i64, src: &FreeWindow) -> Result<Mat> {
        let g = self.at(l)?;
        let cols: Vec<usize> = (0..src.rank(l + self.shift)).map(|k| k * src.d2()).collect();
        Ok(g.select_cols(&cols))
    }
}

/// Lifts `c: S_j → A` (full matrix) with `εc = 0`-style cocycle condition to a
/// chain map `S[j] → T` with `ε_T G_0 = c` and `G_{−1} d^S_j = η_T c`.
pub fn lift_augmented(src: &FreeWindow, tgt: &FreeWindow, fr: &Frobenius, j: i64, c: &Mat) -> Result<ChainLift> {
    let a = &tgt.alg;
    let (eps, eta) = match (&tgt.eps, &tgt.eta) {
        (Some(e), Some(h)) => (e, h),
        _ => return Err(Error::Precondition("target window carries no augmentation".into())),
    };
    let view = |w: &FreeWindow, n: i64| DenseFree::envelope(a, fr, w.rank(n), Side::Both);
    let top = tgt.hi.min(src.hi - j);
    let bottom = tgt.lo.max(src.lo - j);
    if bottom > -1 || top < 0 {
        return Err(Error::Window(format!("windows too small to lift a class of degree {j}")));
    }
    let mut up: Vec<Mat> = Vec::new();
    let t0 = view(tgt, 0);
    let g0 = lift_free(&view(src, j), &|s, x| t0.acts()[s].matmul(x), eps, c)
        .ok_or_else(|| Error::NoSolution("lifting through ε".into()))?;
    up.push(g0);
    for l in 0..top {
        let rhs = up.last().unwrap().matmul(src.d(l + j + 1));
        let tn = view(tgt, l + 1);
        let g = lift_free(&view(src, l + j + 1), &|s, x| tn.acts()[s].matmul(x), tgt.d(l + 1), &rhs)
            .ok_or_else(|| Error::NoSolution(format!("chain lift at degree {}", l + 1)))?;
        up.push(g);
    }
    let mut down: Vec<Mat> = Vec::new();
    for l in (bottom + 1..=0).rev() {
        // G_{l−1} d^S_{l+j} = d^T_l G_l, and η c at l = 0
        let ds = src.d(l + j);
        let piv = pivot_columns(ds);
        let iota = ds.select_cols(&piv);
        let rhs = if l == 0 {
            eta.matmul(c)
        } else {
            tgt.d(l).matmul(down.last().unwrap())
        };
        let sv = view(src, l + j - 1);
        let g = extend_into_free(&view(tgt, l - 1), &|s, z| sv.acts()[s].transpose().matmul(z), &iota, &rhs.select_cols(&piv))
            .ok_or_else(|| Error::NoSolution(format!("chain extension at degree {}", l - 1)))?;
        down.push(g);
    }
    let mut maps: Vec<Mat> = down.into_iter().rev().collect();
    maps.extend(up);
    Ok(ChainLift { shift: j, lo: bottom, maps })
}

/// A Tate class in degree `i`: a cocycle on the minimal window, with its
/// stable representative `ΩⁱA → M`.
#[derive(Clone, Debug)]
pub struct StableClass {
    pub degree: i64,
    /// Generator images of the cocycle `T_i → M`.
    pub cocycle: Mat,
    /// `Ωⁱ A → M` in the coordinates of the syzygy.
    pub rep: Mat,
}

/// The stable product engine on the minimal complete resolution.
#[derive(Clone, Debug)]
pub struct EsEngine {
    pub alg: Arc<Algebra>,
    pub fr: Frobenius,
    pub syz: SyzygyChain,
    pub t: FreeWindow,
}

impl EsEngine {
    /// Syzygies in degrees `−depth ..= depth`; the window is `[−depth − 1, depth]`.
    pub fn new(a: &Arc<Algebra>, fr: &Frobenius, depth: usize) -> Result<EsEngine> {
        let syz = syzygies(a, fr, depth)?;
        let t = syz.window();
        Ok(EsEngine { alg: a.clone(), fr: fr.clone(), syz, t })
    }

    pub fn regular(&self) -> Bimodule {
        Bimodule::regular(&self.alg)
    }

    pub fn cohomology(&self, m: &Bimodule, n: i64) -> Result<TateGroup> {
        window_cohomology(&self.t, m, n)
    }

    pub fn homology(&self, m: &Bimodule, n: i64) -> Result<TateGroup> {
        window_homology(&self.t, m, n)
    }

    pub fn lift(&self, g: &Mat, j: i64) -> Result<ChainLift> {
        let c = self.t.cochain_matrix(&self.regular(), j, g);
        lift_augmented(&self.t, &self.t, &self.fr, j, &c)
    }

    /// `f ∪ g` for cocycles `f` of degree `i` (coefficients in `M`) and `g` of degree `j` (in `A`).
    pub fn cup(&self, m: &Bimodule, f: &Mat, i: i64, g: &Mat, j: i64) -> Result<Mat> {
        self.cup_lifted(m, f, i, &self.lift(g, j)?)
    }

    /// `f ∪ g` with `g` already lifted.
    pub fn cup_lifted(&self, m: &Bimodule, f: &Mat, i: i64, lift: &ChainLift) -> Result<Mat> {
        let j = lift.shift;
        let gi = lift.gens(i, &self.t)?;
        let ff = self.t.cochain_matrix(m, i, f);
        let img = ff.matmul(&gi);
        let md = m.dim();
        let sign = neg_one_pow(m.field(), i * j);
        Ok(Mat::from_fn(m.field(), img.cols() * md, 1, |k, _| &img.get(k % md, k / md) * &sign))
    }

    /// `u ∩ z` for a cocycle `u` of degree `r` in `A` and a cycle `z ∈ N^{r_s}` of degree `s`.
    pub fn cap(&self, u: &Mat, r: i64, z: &Mat, s: i64, n: &Bimodule) -> Result<Mat> {
        let lift = self.lift(u, r)?;
        let gens = lift.gens(s - r, &self.t)?;
        let img = tensor_induced(&gens, self.t.rank(s - r), n).matmul(z);
        Ok(img.scale(&neg_one_pow(n.field(), r * (s - r))))
    }

    /// The cocycle together with its restriction to `ΩⁱA` (the image of `d_i`).
    pub fn stable_class(&self, m: &Bimodule, f: &Mat, i: i64) -> Result<StableClass> {
        let full = self.t.cochain_matrix(m, i, f);
        let pi = self.syz.pi(i);
        let section = pi
            .solve(&Mat::identity(m.field(), pi.rows()))
            .ok_or_else(|| Error::NoSolution("section of the syzygy cover".into()))?;
        Ok(StableClass { degree: i, cocycle: f.clone(), rep: full.matmul(&section) })
    }
}

/// The comparison `C: S → T` over the identity of `A`, as a chain lift of `ε_S`.
pub fn comparison(src: &FreeWindow, tgt: &FreeWindow, fr: &Frobenius) -> Result<ChainLift> {
    let eps = src
        .eps
        .as_ref()
        .ok_or_else(|| Error::Precondition("source window carries no augmentation".into()))?;
    lift_augmented(src, tgt, fr, 0, eps)
}

/// `f ∘ C_n` as generator images, for a cocycle `f` on `T_n`.
pub fn pull_back(c: &ChainLift, src: &FreeWindow, tgt: &FreeWindow, m: &Bimodule, n: i64, f: &Mat) -> Result<Mat> {
    let full = tgt.cochain_matrix(m, n, f).matmul(&c.gens(n, src)?);
    let md = m.dim();
    Ok(Mat::from_fn(m.field(), full.cols() * md, 1, |k, _| full.get(k % md, k / md)))
}

/// `(C_n ⊗ 1)(z)` for a chain `z ∈ N^{r_n}` on the source.
pub fn push_forward(c: &ChainLift, src: &FreeWindow, tgt: &FreeWindow, n_mod: &Bimodule, n: i64, z: &Mat) -> Result<Mat> {
    Ok(tensor_induced(&c.gens(n, src)?, tgt.rank(n), n_mod).matmul(z))
}
