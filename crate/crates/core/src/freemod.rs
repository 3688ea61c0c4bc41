//! Free modules over `A`, `Aᵒᵖ` or `Aᵉ` inside arbitrary coordinates, and the
//! two basic linear problems on them: lifting out of a free module and
//! extending into one.
//!
//! Extension into a free module `F` is dualized: `D(F)` is free on the
//! functionals `λ_G` (λ on the copy of the algebra at generator `G`), so a map
//! `X: S → F` with `Xι = Y` is the transpose of a lift `D(F) → D(S)` through
//! `ιᵀ`, which only needs one small solve per generator.

use crate::algebra::{Algebra, Frobenius};
use crate::exactla::{Field, Mat, Scalar};

/// A free module over a Frobenius algebra `B` with basis `b_0 = 1, b_1, …`.
pub trait FreeModule {
    fn field(&self) -> Field;
    fn dim(&self) -> usize;
    fn ngens(&self) -> usize;
    /// `dim B`.
    fn order(&self) -> usize;
    /// Coordinate of `b_t · g_G`.
    fn index(&self, g: usize, t: usize) -> usize;
    /// `b_t · x`, column by column.
    fn act(&self, t: usize, x: &Mat) -> Mat;
    /// The Frobenius form of `B` on `b_t`.
    fn form(&self, t: usize) -> Scalar;
}

/// Which algebra acts on a free Aᵉ-module `(Aᵉ)^r` in coordinates `(g, i, j) ↦ uᵢγ_g uⱼ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Aᵉ, with `b_{i·d+j} = uᵢ ⊗ uⱼ`; generators `γ_g`.
    Both,
    /// A on the left; generators `γ_g uⱼ`.
    Left,
    /// A on the right; generators `uᵢγ_g`.
    Right,
}

/// `(Aᵉ)^r` or `A` with dense action matrices.
#[derive(Clone, Debug)]
pub struct DenseFree {
    dim: usize,
    ngens: usize,
    index: Vec<usize>,
    acts: Vec<Mat>,
    form: Vec<Scalar>,
}

impl DenseFree {
    /// `(Aᵉ)^r` viewed over the chosen side.
    pub fn envelope(a: &Algebra, fr: &Frobenius, r: usize, side: Side) -> DenseFree {
        let d = a.dim();
        let f = a.field();
        let idr = Mat::identity(f, r);
        let idd = Mat::identity(f, d);
        let lam = |i: usize| fr.lambda.get(0, i);
        match side {
            Side::Both => DenseFree {
                dim: r * d * d,
                ngens: r,
                index: (0..r).flat_map(|g| (0..d * d).map(move |t| g * d * d + t)).collect(),
                acts: (0..d * d)
                    .map(|t| idr.kron(&a.left(t / d).kron(a.right(t % d))))
                    .collect(),
                form: (0..d * d).map(|t| &lam(t / d) * &lam(t % d)).collect(),
            },
            Side::Left => DenseFree {
                dim: r * d * d,
                ngens: r * d,
                index: (0..r * d)
                    .flat_map(|gj| (0..d).map(move |t| ((gj / d) * d + t) * d + gj % d))
                    .collect(),
                acts: (0..d).map(|t| idr.kron(&a.left(t).kron(&idd))).collect(),
                form: (0..d).map(lam).collect(),
            },
            Side::Right => DenseFree {
                dim: r * d * d,
                ngens: r * d,
                index: (0..r * d).flat_map(|gi| (0..d).map(move |t| gi * d + t)).collect(),
                acts: (0..d).map(|t| idr.kron(&idd.kron(a.right(t)))).collect(),
                form: (0..d).map(lam).collect(),
            },
        }
    }

    /// The algebra itself as a free module of rank one over the chosen side.
    pub fn algebra(a: &Algebra, fr: &Frobenius, side: Side) -> DenseFree {
        let d = a.dim();
        let acts = match side {
            Side::Left => (0..d).map(|t| a.left(t).clone()).collect(),
            Side::Right => (0..d).map(|t| a.right(t).clone()).collect(),
            Side::Both => panic!("A is not free over Aᵉ"),
        };
        DenseFree {
            dim: d,
            ngens: 1,
            index: (0..d).collect(),
            acts,
            form: (0..d).map(|t| fr.lambda.get(0, t)).collect(),
        }
    }

    pub fn acts(&self) -> &[Mat] {
        &self.acts
    }
}

impl FreeModule for DenseFree {
    fn field(&self) -> Field {
        self.acts[0].field()
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn ngens(&self) -> usize {
        self.ngens
    }
    fn order(&self) -> usize {
        self.acts.len()
    }
    fn index(&self, g: usize, t: usize) -> usize {
        self.index[g * self.acts.len() + t]
    }
    fn act(&self, t: usize, x: &Mat) -> Mat {
        self.acts[t].matmul(x)
    }
    fn form(&self, t: usize) -> Scalar {
        self.form[t].clone()
    }
}

/// The linear map out of `src` with generator images `y` (columns), where
/// `tgt_act(t, ·)` is the action of `b_t` on the target.
pub fn extend_free(src: &dyn FreeModule, tgt_act: &dyn Fn(usize, &Mat) -> Mat, y: &Mat) -> Mat {
    let mut out = Mat::zeros(src.field(), y.rows(), src.dim());
    for t in 0..src.order() {
        let b = tgt_act(t, y);
        for g in 0..src.ngens() {
            out.set_block(0, src.index(g, t), &b.column(g));
        }
    }
    out
}

/// A B-linear `X` out of `src` with `d·X = r`, where `r` is B-linear with image in `im d`.
pub fn lift_free(src: &dyn FreeModule, tgt_act: &dyn Fn(usize, &Mat) -> Mat, d: &Mat, r: &Mat) -> Option<Mat> {
    let gens: Vec<usize> = (0..src.ngens()).map(|g| src.index(g, 0)).collect();
    let y = d.solve(&r.select_cols(&gens))?;
    Some(extend_free(src, tgt_act, &y))
}

/// A B-linear `X: S → F` with `X·ι = y`, where the columns of `ι` are a basis
/// of a B-submodule of `S` and `y` is B-linear on it. `src_act_t(t, ·)` is the
/// transpose of the action of `b_t` on `S`.
pub fn extend_into_free(tgt: &dyn FreeModule, src_act_t: &dyn Fn(usize, &Mat) -> Mat, iota: &Mat, y: &Mat) -> Option<Mat> {
    let f = tgt.field();
    let nb = tgt.order();
    let ng = tgt.ngens();
    if ng == 0 {
        return Some(Mat::zeros(f, 0, iota.rows()));
    }
    // Ξ[t][s] = (λ_0 · b_s)(b_t g_0)
    let mut e0 = Mat::zeros(f, tgt.dim(), nb);
    for t in 0..nb {
        e0.set(tgt.index(0, t), t, &f.one());
    }
    let mut xi = Mat::zeros(f, nb, nb);
    for s in 0..nb {
        let col = tgt.act(s, &e0);
        for t in 0..nb {
            let mut acc = f.zero();
            for u in 0..nb {
                acc = &acc + &(&tgt.form(u) * &col.get(tgt.index(0, u), t));
            }
            xi.set(t, s, &acc);
        }
    }
    let xi_inv = xi.inverse()?;
    // right sides yᵀλ_G
    let mut rhs = Mat::zeros(f, y.cols(), ng);
    for g in 0..ng {
        let mut lam_g = Mat::zeros(f, 1, tgt.dim());
        for t in 0..nb {
            lam_g.set(0, tgt.index(g, t), &tgt.form(t));
        }
        rhs.set_block(0, g, &lam_g.matmul(y).transpose());
    }
    let z = iota.transpose().solve(&rhs)?;
    let acted: Vec<Mat> = (0..nb).map(|s| src_act_t(s, &z)).collect();
    let mut xt = Mat::zeros(f, iota.rows(), tgt.dim());
    for t in 0..nb {
        let mut blk = Mat::zeros(f, iota.rows(), ng);
        for (s, w) in acted.iter().enumerate() {
            let c = xi_inv.get(s, t);
            if !c.is_zero() {
                blk.add_scaled(&c, w);
            }
        }
        for g in 0..ng {
            xt.set_block(0, tgt.index(g, t), &blk.column(g));
        }
    }
    Some(xt.transpose())
}

/// `(a ⊗ b)·x` without forming the Kronecker product; `None` stands for an identity of the given size.
pub fn kron_apply(a: Option<&Mat>, an: usize, b: Option<&Mat>, bn: usize, x: &Mat) -> Mat {
    let f = x.field();
    let c = x.cols();
    assert_eq!(x.rows(), an * bn, "kron_apply shape");
    let (ar, br) = (a.map_or(an, |m| m.rows()), b.map_or(bn, |m| m.rows()));
    let y = match b {
        None => x.clone(),
        Some(b) => {
            let mut y = Mat::zeros(f, an * br, c);
            for i in 0..an {
                let blk = x.submatrix(i * bn, bn, 0, c);
                if !blk.is_zero() {
                    y.set_block(i * br, 0, &b.matmul(&blk));
                }
            }
            y
        }
    };
    match a {
        None => y,
        Some(a) => a.matmul(&y.reshape(an, br * c)).reshape(ar * br, c),
    }
}

/// Column indices of `m` forming a basis of its column space.
pub fn pivot_columns(m: &Mat) -> Vec<usize> {
    m.rref().1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn kron_apply_matches_kron() {
        let f = Field::Prime(7);
        let a = Mat::from_i64(f, 2, 3, &[1, 2, 0, 3, 0, 5]);
        let b = Mat::from_i64(f, 3, 2, &[1, 1, 0, 2, 4, 6]);
        let x = Mat::from_fn(f, 6, 2, |i, j| f.from_i64((i * 3 + j + 1) as i64));
        assert_eq!(kron_apply(Some(&a), 3, Some(&b), 2, &x), a.kron(&b).matmul(&x));
        let i3 = Mat::identity(f, 3);
        assert_eq!(kron_apply(None, 3, Some(&b), 2, &x), i3.kron(&b).matmul(&x));
        let i2 = Mat::identity(f, 2);
        assert_eq!(kron_apply(Some(&a), 3, None, 2, &x), a.kron(&i2).matmul(&x));
    }

    #[test]
    fn extension_into_free_bimodule() {
        // the sub-bimodule of Aᵉ generated by x⊗1 − 1⊗x extends the identity to an endomorphism
        let e = corpus::get("dual5").unwrap();
        let (a, fr) = (e.algebra, e.frobenius);
        let free = DenseFree::envelope(&a, &fr, 1, Side::Both);
        let mut v = Mat::zeros(a.field(), 4, 1);
        v.set(2, 0, &a.field().one());
        v.set(1, 0, &-a.field().one());
        let sub: Vec<Mat> = free.acts().iter().map(|m| m.matmul(&v)).collect();
        let refs: Vec<&Mat> = sub.iter().collect();
        let span = Mat::hstack(a.field(), 4, &refs);
        let iota = span.select_cols(&pivot_columns(&span));
        let acts_t: Vec<Mat> = free.acts().iter().map(|m| m.transpose()).collect();
        let x = extend_into_free(&free, &|t, z| acts_t[t].matmul(z), &iota, &iota).unwrap();
        assert_eq!(x.matmul(&iota), iota);
        for m in free.acts() {
            assert_eq!(x.matmul(m), m.matmul(&x));
        }
    }
}
