//! A-bimodules stored as left and right action matrices.
//!
//! A bimodule is the same thing as a left Aᵉ-module: `uᵢ⊗uⱼᵒ` acts by
//! `LᵢRⱼ`, indexed `i·d + j` as in [`Algebra::enveloping`].

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, Frobenius};
use crate::exactla::{quotient, Field, Mat, Scalar, Subspace};
use crate::{par, Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct Bimodule {
    #[serde(skip)]
    alg: Arc<Algebra>,
    field: Field,
    dim: usize,
    left: Vec<Mat>,
    right: Vec<Mat>,
}

impl PartialEq for Bimodule {
    fn eq(&self, o: &Bimodule) -> bool {
        (Arc::ptr_eq(&self.alg, &o.alg) || self.alg == o.alg)
            && self.dim == o.dim
            && self.left == o.left
            && self.right == o.right
    }
}

impl Eq for Bimodule {}

impl Bimodule {
    /// Validating constructor.
    pub fn new(a: &Arc<Algebra>, dim: usize, left: Vec<Mat>, right: Vec<Mat>) -> Result<Bimodule> {
        let d = a.dim();
        if left.len() != d || right.len() != d {
            return Err(Error::InvalidBimodule(format!("need {d} left and {d} right matrices")));
        }
        if left.iter().chain(&right).any(|m| m.shape() != (dim, dim)) {
            return Err(Error::InvalidBimodule(format!("action matrices must be {dim}x{dim}")));
        }
        let m = Bimodule::raw(a, dim, left, right);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn raw(a: &Arc<Algebra>, dim: usize, left: Vec<Mat>, right: Vec<Mat>) -> Bimodule {
        Bimodule { alg: a.clone(), field: a.field(), dim, left, right }
    }

    // same algebra, new actions
    fn with(&self, dim: usize, left: Vec<Mat>, right: Vec<Mat>) -> Bimodule {
        Bimodule::raw(&self.alg, dim, left, right)
    }

    pub fn alg(&self) -> &Arc<Algebra> {
        &self.alg
    }

    /// Checks unit, associativity of both actions and their commutation.
    pub fn validate(&self) -> Result<()> {
        let a = &*self.alg;
        let d = a.dim();
        let id = Mat::identity(self.field, self.dim);
        if self.left[0] != id || self.right[0] != id {
            return Err(Error::InvalidBimodule("unit does not act as the identity".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let uij = a.product_basis(i, j);
                if self.left[i].matmul(&self.left[j]) != self.left_by(&uij) {
                    return Err(Error::InvalidBimodule(format!("left action fails on ({i},{j})")));
                }
                if self.right[j].matmul(&self.right[i]) != self.right_by(&uij) {
                    return Err(Error::InvalidBimodule(format!("right action fails on ({i},{j})")));
                }
                if self.left[i].matmul(&self.right[j]) != self.right[j].matmul(&self.left[i]) {
                    return Err(Error::InvalidBimodule(format!("actions do not commute on ({i},{j})")));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the acting algebra.
    pub fn alg_dim(&self) -> usize {
        self.left.len()
    }

    pub fn left(&self, i: usize) -> &Mat {
        &self.left[i]
    }

    pub fn right(&self, i: usize) -> &Mat {
        &self.right[i]
    }

    pub fn left_by(&self, a: &Mat) -> Mat {
        combine(&self.left, a, self.field, self.dim)
    }

    pub fn right_by(&self, a: &Mat) -> Mat {
        combine(&self.right, a, self.field, self.dim)
    }

    /// Action of `uᵢ⊗uⱼᵒ`, i.e. `m ↦ uᵢ m uⱼ`.
    pub fn ae(&self, i: usize, j: usize) -> Mat {
        self.left[i].matmul(&self.right[j])
    }

    /// All `d²` Aᵉ-action matrices in index order `i·d + j`.
    pub fn ae_all(&self) -> Vec<Mat> {
        let d = self.alg_dim();
        par::map_range(d * d, |t| self.ae(t / d, t % d))
    }

    /// Action of an element of Aᵉ given in coordinates.
    pub fn ae_by(&self, x: &Mat) -> Mat {
        let d = self.alg_dim();
        let mut out = Mat::zeros(self.field, self.dim, self.dim);
        for t in 0..d * d {
            let c = x.get(t, 0);
            if !c.is_zero() {
                out.add_scaled(&c, &self.ae(t / d, t % d));
            }
        }
        out
    }

    pub fn zero(a: &Arc<Algebra>) -> Bimodule {
        let z = Mat::zeros(a.field(), 0, 0);
        Bimodule::raw(a, 0, vec![z.clone(); a.dim()], vec![z; a.dim()])
    }

    /// A as a bimodule over itself.
    pub fn regular(a: &Arc<Algebra>) -> Bimodule {
        let d = a.dim();
        Bimodule::raw(
            a,
            d,
            (0..d).map(|i| a.left(i).clone()).collect(),
            (0..d).map(|i| a.right(i).clone()).collect(),
        )
    }

    /// The free module (Aᵉ)^r with basis `(g, i, j) ↦ uᵢ⊗uⱼ` in copy g, index `(g·d + i)·d + j`.
    pub fn free(a: &Arc<Algebra>, r: usize) -> Bimodule {
        let d = a.dim();
        let f = a.field();
        let ir = Mat::identity(f, r);
        let id = Mat::identity(f, d);
        let left = (0..d).map(|i| ir.kron(&a.left(i).kron(&id))).collect();
        let right = (0..d).map(|i| ir.kron(&id.kron(a.right(i)))).collect();
        Bimodule::raw(a, r * d * d, left, right)
    }

    /// `A ⊗ M` with A acting on the left factor and M's right action on the right.
    pub fn a_tensor(m: &Bimodule) -> Bimodule {
        let a = &*m.alg;
        let f = a.field();
        let id_m = Mat::identity(f, m.dim);
        let id_a = Mat::identity(f, a.dim());
        let d = a.dim();
        m.with(
            d * m.dim,
            (0..d).map(|i| a.left(i).kron(&id_m)).collect(),
            (0..d).map(|i| id_a.kron(m.right(i))).collect(),
        )
    }

    /// `M ⊗ A` with M's left action and A acting on the right factor.
    pub fn tensor_a(m: &Bimodule) -> Bimodule {
        let a = &*m.alg;
        let f = a.field();
        let id_m = Mat::identity(f, m.dim);
        let id_a = Mat::identity(f, a.dim());
        let d = a.dim();
        m.with(
            m.dim * d,
            (0..d).map(|i| m.left(i).kron(&id_a)).collect(),
            (0..d).map(|i| id_m.kron(a.right(i))).collect(),
        )
    }

    /// `Hom_k(A_A, M_A)` with `(a·f·b)(x) = f(x a) b`; f is stored as the blocks f(u_x).
    pub fn hom_right(m: &Bimodule) -> Bimodule {
        let a = &*m.alg;
        let f = a.field();
        let d = a.dim();
        let id_m = Mat::identity(f, m.dim);
        let id_a = Mat::identity(f, d);
        m.with(
            d * m.dim,
            (0..d).map(|i| a.right(i).transpose().kron(&id_m)).collect(),
            (0..d).map(|i| id_a.kron(m.right(i))).collect(),
        )
    }

    /// `Hom_k(_AA, _AM)` with `(a·f·b)(x) = a f(b x)`.
    pub fn hom_left(m: &Bimodule) -> Bimodule {
        let a = &*m.alg;
        let f = a.field();
        let d = a.dim();
        let id_m = Mat::identity(f, m.dim);
        let id_a = Mat::identity(f, d);
        m.with(
            d * m.dim,
            (0..d).map(|i| id_a.kron(m.left(i))).collect(),
            (0..d).map(|i| a.left(i).transpose().kron(&id_m)).collect(),
        )
    }

    /// `a * m * b := α(a) m β(b)` on the same space.
    pub fn twist(&self, alpha: &Mat, beta: &Mat) -> Bimodule {
        let d = self.alg_dim();
        self.with(
            self.dim,
            (0..d).map(|i| self.left_by(&alpha.column(i))).collect(),
            (0..d).map(|i| self.right_by(&beta.column(i))).collect(),
        )
    }

    /// `D(M) = Hom_k(M, k)` with `(a f)(x) = f(x a)` and `(f a)(x) = f(a x)`.
    pub fn k_dual(&self) -> Bimodule {
        self.with(
            self.dim,
            self.right.iter().map(|m| m.transpose()).collect(),
            self.left.iter().map(|m| m.transpose()).collect(),
        )
    }

    pub fn direct_sum(&self, o: &Bimodule) -> Bimodule {
        let f = self.field;
        let d = self.alg_dim();
        self.with(
            self.dim + o.dim,
            (0..d).map(|i| Mat::block_diag(f, &[&self.left[i], &o.left[i]])).collect(),
            (0..d).map(|i| Mat::block_diag(f, &[&self.right[i], &o.right[i]])).collect(),
        )
    }

    /// Sub-bimodule spanned by `sub` (which must be stable), in the rref basis of `sub`.
    /// Returns the module and its inclusion (columns = basis vectors).
    pub fn submodule(&self, sub: &Subspace) -> Result<(Bimodule, Mat)> {
        let incl = sub.basis_columns();
        let restrict = |m: &Mat| -> Result<Mat> {
            let img = m.matmul(&incl);
            if !sub.contains(&img) {
                return Err(Error::InvalidBimodule("subspace is not a sub-bimodule".into()));
            }
            Ok(sub.coordinates(&img))
        };
        let left = self.left.iter().map(restrict).collect::<Result<Vec<_>>>()?;
        let right = self.right.iter().map(restrict).collect::<Result<Vec<_>>>()?;
        Ok((self.with(sub.dim(), left, right), incl))
    }

    /// `M / sub` on canonical coset representatives. Returns the module and the projection.
    pub fn quotient_module(&self, sub: &Subspace) -> Result<(Bimodule, Mat)> {
        let q = quotient(&Subspace::full(self.field, self.dim), sub)?;
        let reps = q.rep_columns();
        let act = |m: &Mat| -> Mat { q.project(&m.matmul(&reps)) };
        let left = self.left.iter().map(act).collect();
        let right = self.right.iter().map(act).collect();
        Ok((self.with(q.dim(), left, right), q.proj))
    }

    /// Smallest sub-bimodule containing the columns of `v`.
    pub fn generated(&self, v: &Mat) -> Subspace {
        let acts = self.ae_all();
        let parts: Vec<Mat> = acts.iter().map(|e| e.matmul(v)).collect();
        let refs: Vec<&Mat> = parts.iter().collect();
        Subspace::from_columns(&Mat::hstack(self.field, self.dim, &refs))
    }

    /// `rad(Aᵉ)·M`, given a basis of rad(Aᵉ) in Aᵉ coordinates.
    pub fn radical_part(&self, rad_ae: &Subspace) -> Subspace {
        let basis = rad_ae.basis_columns();
        let parts: Vec<Mat> = par::map_range(basis.cols(), |t| self.ae_by(&basis.column(t)));
        let refs: Vec<&Mat> = parts.iter().collect();
        Subspace::from_columns(&Mat::hstack(self.field, self.dim, &refs))
    }

    /// Aᵉ-generators as columns. With the radical of Aᵉ the set is minimal
    /// (it lifts a basis of the top); otherwise it is chosen greedily.
    pub fn generators(&self, rad_ae: Option<&Subspace>) -> Mat {
        let n = self.dim;
        let mut chosen: Vec<usize> = Vec::new();
        match rad_ae {
            Some(rad) => {
                let mut span = self.radical_part(rad);
                for t in 0..n {
                    let e = Mat::unit_vector(self.field, n, t);
                    if !span.contains(&e) {
                        chosen.push(t);
                        span = span.sum(&Subspace::from_columns(&e)).unwrap();
                    }
                }
            }
            None => {
                let mut span = Subspace::zero(self.field, n);
                for t in 0..n {
                    let e = Mat::unit_vector(self.field, n, t);
                    if !span.contains(&e) {
                        chosen.push(t);
                        span = span.sum(&self.generated(&e)).unwrap();
                    }
                }
            }
        }
        let mut g = Mat::zeros(self.field, n, chosen.len());
        for (c, &t) in chosen.iter().enumerate() {
            g.set(t, c, &self.field.one());
        }
        g
    }

    /// Presentation of M: free cover by the given generators and its relations.
    pub fn presentation(&self, gens: Mat, rad_ae: Option<&Subspace>) -> Presentation {
        let d = self.alg_dim();
        let s = gens.cols();
        let acts = self.ae_all();
        let mut cover = Mat::zeros(self.field, self.dim, s * d * d);
        for g in 0..s {
            let col = gens.column(g);
            for (t, e) in acts.iter().enumerate() {
                cover.set_block(0, g * d * d + t, &e.matmul(&col));
            }
        }
        let section = cover
            .solve(&Mat::identity(self.field, self.dim))
            .expect("generators must generate");
        let ker = cover.kernel();
        let fm = Bimodule::free(&self.alg, s);
        let (kmod, incl) = fm.submodule(&ker).expect("kernel of a module map is a submodule");
        let rel = incl.matmul(&kmod.generators(rad_ae));
        Presentation {
            gens,
            cover,
            section,
            relations: rel,
            d,
        }
    }

    /// Basis of Hom_{Aᵉ}(self, n).
    pub fn hom_ae(&self, n: &Bimodule) -> HomSpace {
        HomSpace::new(self.presentation(self.generators(None), None), n)
    }

    /// `M ⊗_A N`: the quotient of `M ⊗_k N` by `m·a ⊗ n − m ⊗ a·n`.
    /// Returns the module and the projection from `M ⊗_k N` (index `i·dim N + j`).
    pub fn tensor_over_a(&self, n: &Bimodule) -> (Bimodule, Mat) {
        let f = self.field;
        let d = self.alg_dim();
        let big = self.dim * n.dim;
        let id_m = Mat::identity(f, self.dim);
        let id_n = Mat::identity(f, n.dim);
        let parts: Vec<Mat> = (0..d)
            .map(|a| &self.right[a].kron(&id_n) - &id_m.kron(&n.left[a]))
            .collect();
        let refs: Vec<&Mat> = parts.iter().collect();
        let rel = Subspace::from_columns(&Mat::hstack(f, big, &refs));
        let outer = self.with(
            big,
            (0..d).map(|a| self.left[a].kron(&id_n)).collect(),
            (0..d).map(|a| id_m.kron(&n.right[a])).collect(),
        );
        outer.quotient_module(&rel).expect("relations form a sub-bimodule")
    }

    /// `M ⊗_{Aᵉ} N` using the right Aᵉ-structure `m(a⊗bᵒ) = b m a` on M.
    /// Returns the dimension-reduced space as a quotient of `M ⊗_k N`.
    pub fn tensor_over_ae(&self, n: &Bimodule) -> crate::exactla::Quotient {
        let f = self.field;
        let d = self.alg_dim();
        let big = self.dim * n.dim;
        // (b m a) ⊗ x − m ⊗ (a x b), generated by a = uᵢ, b = 1 and a = 1, b = uⱼ
        let id_m = Mat::identity(f, self.dim);
        let id_n = Mat::identity(f, n.dim);
        let mut parts = Vec::new();
        for i in 0..d {
            parts.push(&self.right[i].kron(&id_n) - &id_m.kron(&n.left[i]));
            parts.push(&self.left[i].kron(&id_n) - &id_m.kron(&n.right[i]));
        }
        let refs: Vec<&Mat> = parts.iter().collect();
        let rel = Subspace::from_columns(&Mat::hstack(f, big, &refs));
        quotient(&Subspace::full(f, big), &rel).unwrap()
    }

    /// M^A = {m : am = ma}.
    pub fn centralizer(&self) -> Subspace {
        self.twisted_centralizer(&Mat::identity(self.field, self.alg_dim()))
    }

    /// {m : a m = m α(a) for all a}, i.e. the invariants of ₁M_α.
    pub fn twisted_centralizer(&self, alpha: &Mat) -> Subspace {
        let d = self.alg_dim();
        let n = self.dim;
        let mut rows = Mat::zeros(self.field, d * n, n);
        for i in 0..d {
            rows.set_block(i * n, 0, &(&self.left[i] - &self.right_by(&alpha.column(i))));
        }
        rows.kernel()
    }

    /// Commutator span [A, M] = span{am − ma}.
    pub fn commutators(&self) -> Subspace {
        self.twisted_commutators(&Mat::identity(self.field, self.alg_dim()))
    }

    /// span{m α(a) − a m}; with α = ν⁻¹ this is the space I_A(M).
    pub fn twisted_commutators(&self, alpha: &Mat) -> Subspace {
        let d = self.alg_dim();
        let parts: Vec<Mat> = (0..d)
            .map(|i| &self.right_by(&alpha.column(i)) - &self.left[i])
            .collect();
        let refs: Vec<&Mat> = parts.iter().collect();
        Subspace::from_columns(&Mat::hstack(self.field, self.dim, &refs))
    }

    /// Norm `m ↦ Σ uᵢ m vᵢ` as a matrix.
    pub fn norm(&self, fr: &Frobenius) -> Mat {
        let mut out = Mat::zeros(self.field, self.dim, self.dim);
        for i in 0..self.alg_dim() {
            out = &out + &self.left[i].matmul(&self.right_by(&fr.v(i)));
        }
        out
    }

    /// `m ↦ Σ uᵢ m ν(vᵢ)`.
    pub fn norm_prime(&self, fr: &Frobenius) -> Mat {
        let mut out = Mat::zeros(self.field, self.dim, self.dim);
        for i in 0..self.alg_dim() {
            let nv = fr.nu().matmul(&fr.v(i));
            out = &out + &self.left[i].matmul(&self.right_by(&nv));
        }
        out
    }

    pub fn invariant_spaces(&self, fr: &Frobenius) -> Result<InvariantSpaces> {
        let n = self.norm(fr);
        let inv = InvariantSpaces {
            m_a: self.centralizer(),
            n_image: n.image(),
            n_kernel: n.kernel(),
            i_space: self.twisted_commutators(fr.nu_inv()),
        };
        if !inv.m_a.contains_subspace(&inv.n_image) {
            return Err(Error::Verification("norm image is not inside M^A".into()));
        }
        if !inv.n_kernel.contains_subspace(&inv.i_space) {
            return Err(Error::Verification("I_A(M) is not inside the norm kernel".into()));
        }
        Ok(inv)
    }

    /// Looks for g, right- or left-A-linear, with Σ uᵢ g vᵢ = id.
    pub fn is_weakly_projective(&self, fr: &Frobenius) -> bool {
        let n = self.dim;
        if n == 0 {
            return true;
        }
        let f = self.field;
        let d = self.alg_dim();
        let vs: Vec<Mat> = (0..d).map(|i| fr.v(i)).collect();
        let id_n = Mat::identity(f, n);
        let target = vec_rows(&id_n);
        // row-major vec(X g Y) = (X ⊗ Yᵀ) vec(g)
        let try_side = |right_linear: bool| -> bool {
            let mut sum = Mat::zeros(f, n * n, n * n);
            for i in 0..d {
                let term = if right_linear {
                    // (uᵢ g vᵢ)(m) = uᵢ g(vᵢ m)
                    self.left[i].kron(&self.left_by(&vs[i]).transpose())
                } else {
                    // (uᵢ g vᵢ)(m) = g(m uᵢ) vᵢ
                    self.right_by(&vs[i]).kron(&self.right[i].transpose())
                };
                sum = &sum + &term;
            }
            let mut blocks = vec![sum];
            let rhs_len = n * n;
            for a in 0..d {
                let act = if right_linear { &self.right[a] } else { &self.left[a] };
                // g·act − act·g = 0
                blocks.push(&id_n.kron(&act.transpose()) - &act.kron(&id_n));
            }
            let refs: Vec<&Mat> = blocks.iter().collect();
            let sys = Mat::vstack(f, n * n, &refs);
            let mut rhs = Mat::zeros(f, sys.rows(), 1);
            rhs.set_block(0, 0, &target);
            let _ = rhs_len;
            sys.solve(&rhs).is_some()
        };
        try_side(true) || try_side(false)
    }

    /// The four one-sided split sequences with weakly projective middles.
    pub fn shift_sequences(&self, fr: &Frobenius) -> Result<ShiftSequences> {
        let a = &*self.alg;
        let f = self.field;
        let d = a.dim();
        let n = self.dim;
        // A ⊗ M → M, a⊗m ↦ am
        let mut mult_left = Mat::zeros(f, n, d * n);
        let mut mult_right = Mat::zeros(f, n, n * d);
        for x in 0..d {
            mult_left.set_block(0, x * n, &self.left[x]);
            for r in 0..n {
                // m_r ⊗ u_x ↦ m_r u_x
                let col = self.right[x].column(r);
                mult_right.set_block(0, r * d + x, &col);
            }
        }
        let amid = Bimodule::a_tensor(self);
        let k = ShortExact::from_surjection(amid, mult_left, self)?;
        let mmid = Bimodule::tensor_a(self);
        let kp = ShortExact::from_surjection(mmid, mult_right, self)?;
        // M → Hom(A_A, M_A), m ↦ (x ↦ x m)
        let emb_r = Mat::vstack(f, n, &self.left.iter().collect::<Vec<_>>());
        let emb_l = Mat::vstack(f, n, &self.right.iter().collect::<Vec<_>>());
        let c = ShortExact::from_injection(self, emb_r, Bimodule::hom_right(self))?;
        let cp = ShortExact::from_injection(self, emb_l, Bimodule::hom_left(self))?;
        for (name, s) in [("A⊗M", &k), ("M⊗A", &kp), ("Hom(A_A,M_A)", &c), ("Hom(_AA,_AM)", &cp)] {
            if !s.middle.is_weakly_projective(fr) {
                return Err(Error::Verification(format!("{name} is not weakly projective")));
            }
        }
        Ok(ShiftSequences { k, k_prime: kp, c, c_prime: cp })
    }
}

fn vec_rows(m: &Mat) -> Mat {
    let (r, c) = m.shape();
    Mat::from_fn(m.field(), r * c, 1, |t, _| m.get(t / c, t % c))
}

fn combine(ms: &[Mat], a: &Mat, f: Field, n: usize) -> Mat {
    let mut out = Mat::zeros(f, n, n);
    for (t, m) in ms.iter().enumerate() {
        let c = a.get(t, 0);
        if !c.is_zero() {
            out.add_scaled(&c, m);
        }
    }
    out
}

/// Free cover `(Aᵉ)^s → M` and relation generators.
#[derive(Clone, Debug)]
pub struct Presentation {
    /// Generators of M as columns.
    pub gens: Mat,
    /// `dim M × s d²`; column `(g,i,j)` is `uᵢ gen_g uⱼ`.
    pub cover: Mat,
    /// Right inverse of `cover`.
    pub section: Mat,
    /// Columns in `k^{s d²}` generating the kernel of `cover` as an Aᵉ-module.
    pub relations: Mat,
    d: usize,
}

impl Presentation {
    pub fn rank(&self) -> usize {
        self.gens.cols()
    }
}

/// Hom_{Aᵉ}(M, N) in generator coordinates: a map is the tuple of images of
/// the generators of M, stacked into a column of length `s · dim N`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub pres: Presentation,
    pub target: Bimodule,
    /// Columns form a basis of the solution space.
    pub basis: Mat,
}

impl HomSpace {
    pub fn new(pres: Presentation, n: &Bimodule) -> HomSpace {
        let s = pres.rank();
        let nd = n.dim();
        let d = pres.d;
        let f = n.field();
        let acts = n.ae_all();
        let nrel = pres.relations.cols();
        let rows: Vec<Mat> = par::map_range(nrel, |r| {
            let rho = pres.relations.column(r);
            let mut blk = Mat::zeros(f, nd, s * nd);
            for g in 0..s {
                let mut m = Mat::zeros(f, nd, nd);
                for t in 0..d * d {
                    let c = rho.get(g * d * d + t, 0);
                    if !c.is_zero() {
                        m.add_scaled(&c, &acts[t]);
                    }
                }
                blk.set_block(0, g * nd, &m);
            }
            blk
        });
        let refs: Vec<&Mat> = rows.iter().collect();
        let sys = Mat::vstack(f, s * nd, &refs);
        let basis = sys.kernel_basis();
        HomSpace {
            pres,
            target: n.clone(),
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Full matrix of the map with generator images `x` (a column).
    pub fn to_matrix(&self, x: &Mat) -> Mat {
        let phi = self.free_map(x);
        phi.matmul(&self.pres.section)
    }

    /// The induced map on the free cover: column (g,i,j) is `uᵢ x_g uⱼ`.
    pub fn free_map(&self, x: &Mat) -> Mat {
        let n = &self.target;
        let nd = n.dim();
        let d = self.pres.d;
        let s = self.pres.rank();
        let mut phi = Mat::zeros(n.field(), nd, s * d * d);
        for g in 0..s {
            let xg = x.submatrix(g * nd, nd, 0, 1);
            for i in 0..d {
                let lx = n.left(i).matmul(&xg);
                for j in 0..d {
                    phi.set_block(0, g * d * d + i * d + j, &n.right(j).matmul(&lx));
                }
            }
        }
        phi
    }

    /// Generator coordinates of a full matrix (assumed Aᵉ-linear).
    pub fn from_matrix(&self, m: &Mat) -> Mat {
        let refs: Vec<Mat> = (0..self.pres.rank()).map(|g| m.matmul(&self.pres.gens.column(g))).collect();
        let r: Vec<&Mat> = refs.iter().collect();
        Mat::vstack(m.field(), 1, &r)
    }

    /// Coordinates in `basis` of a full matrix (assumed Aᵉ-linear).
    pub fn coordinates(&self, m: &Mat) -> Mat {
        self.basis.solve(&self.from_matrix(m)).expect("map is not in the Hom space")
    }

    pub fn matrices(&self) -> Vec<Mat> {
        (0..self.dim()).map(|t| self.to_matrix(&self.basis.column(t))).collect()
    }
}

/// The subspaces entering the norm exact sequence.
#[derive(Clone, Debug)]
pub struct InvariantSpaces {
    pub m_a: Subspace,
    pub n_image: Subspace,
    pub n_kernel: Subspace,
    pub i_space: Subspace,
}

/// `0 → sub → middle → quot → 0` with explicit maps.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub sub: Bimodule,
    pub middle: Bimodule,
    pub quot: Bimodule,
    pub incl: Mat,
    pub proj: Mat,
}

impl ShortExact {
    fn from_surjection(middle: Bimodule, proj: Mat, target: &Bimodule) -> Result<ShortExact> {
        check_linear(&middle, target, &proj)?;
        if proj.rank() != target.dim() {
            return Err(Error::Verification("map is not surjective".into()));
        }
        let (sub, incl) = middle.submodule(&proj.kernel())?;
        Ok(ShortExact { sub, middle, quot: target.clone(), incl, proj })
    }

    fn from_injection(source: &Bimodule, incl: Mat, middle: Bimodule) -> Result<ShortExact> {
        check_linear(source, &middle, &incl)?;
        if incl.rank() != source.dim() {
            return Err(Error::Verification("map is not injective".into()));
        }
        let (quot, proj) = middle.quotient_module(&incl.image())?;
        Ok(ShortExact { sub: source.clone(), middle, quot, incl, proj })
    }
}

/// Sequences defining K(M), K′(M), C(M), C′(M).
#[derive(Clone, Debug)]
pub struct ShiftSequences {
    pub k: ShortExact,
    pub k_prime: ShortExact,
    pub c: ShortExact,
    pub c_prime: ShortExact,
}

/// Checks that `m` intertwines both actions.
pub fn check_linear(src: &Bimodule, tgt: &Bimodule, m: &Mat) -> Result<()> {
    if m.shape() != (tgt.dim(), src.dim()) {
        return Err(Error::NotLinear(format!(
            "shape {:?} vs {}x{}",
            m.shape(),
            tgt.dim(),
            src.dim()
        )));
    }
    for i in 0..src.alg_dim() {
        if m.matmul(src.left(i)) != tgt.left(i).matmul(m) {
            return Err(Error::NotLinear(format!("left action of basis element {i}")));
        }
        if m.matmul(src.right(i)) != tgt.right(i).matmul(m) {
            return Err(Error::NotLinear(format!("right action of basis element {i}")));
        }
    }
    Ok(())
}

/// `(−1)^e` as a scalar.
pub fn neg_one_pow(f: Field, e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        f.one()
    } else {
        -f.one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn setup(key: &str) -> (Arc<Algebra>, Frobenius) {
        let e = corpus::get(key).unwrap();
        (Arc::new(e.algebra), e.frobenius)
    }

    #[test]
    fn constructors_validate() {
        let (a, _) = setup("dual5");
        let r = Bimodule::regular(&a);
        r.validate().unwrap();
        Bimodule::free(&a, 2).validate().unwrap();
        let (k, _) = setup("k");
        Bimodule::regular(&k).validate().unwrap();
        let z = Mat::zeros(a.field(), 1, 1);
        let err = Bimodule::new(&a, 1, vec![z.clone(), z.clone()], vec![z.clone(), z]).unwrap_err();
        assert!(matches!(err, Error::InvalidBimodule(_)));
    }

    #[test]
    fn twists_compose() {
        let (a, fr) = setup("qext17");
        let m = Bimodule::regular(&a);
        let id = Mat::identity(a.field(), a.dim());
        assert_eq!(m.twist(&id, &id), m);
        let t = m.twist(fr.nu(), fr.nu_inv());
        t.validate().unwrap();
        assert_eq!(t.twist(fr.nu_inv(), fr.nu()), m);
        let (b, fb) = setup("dual5");
        let rb = Bimodule::regular(&b);
        assert_eq!(rb.twist(&Mat::identity(b.field(), 2), fb.nu()), rb);
    }

    #[test]
    fn tensor_over_a_unit_laws() {
        for key in ["dual5", "qext17", "trunc3_f11"] {
            let (a, _) = setup(key);
            let r = Bimodule::regular(&a);
            let m = Bimodule::a_tensor(&r);
            let (t, proj) = r.tensor_over_a(&m);
            assert_eq!(t.dim(), m.dim());
            t.validate().unwrap();
            assert_eq!(proj.rank(), m.dim());
            let (t2, _) = m.tensor_over_a(&r);
            assert_eq!(t2.dim(), m.dim());
        }
    }

    #[test]
    fn hom_dimensions() {
        for key in ["dual5", "qext17", "k", "trunc3_f11"] {
            let (a, _) = setup(key);
            let r = Bimodule::regular(&a);
            let h = r.hom_ae(&r);
            assert_eq!(h.dim(), a.center().dim(), "{key}");
            for m in h.matrices() {
                check_linear(&r, &r, &m).unwrap();
            }
            assert_eq!(r.hom_ae(&Bimodule::zero(&a)).dim(), 0);
        }
        let (a, _) = setup("dual5");
        assert_eq!(Bimodule::regular(&a).hom_ae(&Bimodule::regular(&a)).dim(), 2);
    }

    #[test]
    fn hom_twist_functoriality() {
        let (a, fr) = setup("qext17");
        let m = Bimodule::regular(&a);
        let n = Bimodule::a_tensor(&m);
        let base = m.hom_ae(&n).dim();
        let tw = m.twist(fr.nu(), fr.nu_inv()).hom_ae(&n.twist(fr.nu(), fr.nu_inv())).dim();
        assert_eq!(base, tw);
    }

    #[test]
    fn dual_of_regular_is_nakayama_twist() {
        for key in ["dual5", "qext17", "group_c2_f5"] {
            let (a, fr) = setup(key);
            let r = Bimodule::regular(&a);
            assert_eq!(r.k_dual().k_dual(), r);
            let tw = r.twist(&Mat::identity(a.field(), a.dim()), fr.nu());
            // x ↦ λ(− x) has matrix gram
            check_linear(&tw, &r.k_dual(), &fr.gram).unwrap();
            assert_eq!(fr.gram.rank(), a.dim());
        }
    }

    #[test]
    fn invariant_space_examples() {
        let (a, fr) = setup("dual2");
        let inv = Bimodule::regular(&a).invariant_spaces(&fr).unwrap();
        assert_eq!(inv.n_image.dim(), 0);
        assert_eq!(inv.m_a.dim() - inv.n_image.dim(), 2);
        assert_eq!(inv.n_kernel.dim() - inv.i_space.dim(), 2);

        let (a, fr) = setup("dual5");
        let r = Bimodule::regular(&a);
        let inv = r.invariant_spaces(&fr).unwrap();
        assert_eq!(inv.n_image, Subspace::from_columns(&a.basis_vector(1)));
        assert_eq!(inv.m_a.dim() - inv.n_image.dim(), 1);
        // N(a) = 2ax
        let two_x = Mat::from_i64(a.field(), 2, 1, &[0, 2]);
        assert_eq!(r.norm(&fr).matmul(&a.unit()), two_x);

        let (k, fk) = setup("k");
        let inv = Bimodule::regular(&k).invariant_spaces(&fk).unwrap();
        assert_eq!(inv.m_a.dim(), 1);
        assert_eq!(inv.n_image.dim(), 1);
    }

    #[test]
    fn weak_projectivity() {
        let (a, fr) = setup("dual5");
        let r = Bimodule::regular(&a);
        assert!(Bimodule::a_tensor(&r).is_weakly_projective(&fr));
        assert!(Bimodule::free(&a, 1).is_weakly_projective(&fr));
        let (b, fb) = setup("dual2");
        assert!(!Bimodule::regular(&b).is_weakly_projective(&fb));
        let (k, fk) = setup("k");
        assert!(Bimodule::regular(&k).is_weakly_projective(&fk));
    }

    #[test]
    fn shift_sequence_dimensions() {
        for key in ["dual5", "qext17"] {
            let (a, fr) = setup(key);
            let r = Bimodule::regular(&a);
            let s = r.shift_sequences(&fr).unwrap();
            let d = a.dim();
            assert_eq!(s.k.sub.dim(), d * d - d);
            assert_eq!(s.k_prime.sub.dim(), d * d - d);
            assert_eq!(s.c.quot.dim(), d * d - d);
            assert_eq!(s.c_prime.quot.dim(), d * d - d);
            for seq in [&s.k, &s.k_prime, &s.c, &s.c_prime] {
                seq.sub.validate().unwrap();
                seq.quot.validate().unwrap();
                check_linear(&seq.sub, &seq.middle, &seq.incl).unwrap();
                check_linear(&seq.middle, &seq.quot, &seq.proj).unwrap();
                assert!(seq.proj.matmul(&seq.incl).is_zero());
            }
        }
    }

    #[test]
    fn presentation_is_exact() {
        let (a, _) = setup("trunc3_f11");
        let ae = a.enveloping();
        let rad = ae.radical().unwrap();
        let r = Bimodule::regular(&a);
        let g = r.generators(Some(&rad.basis));
        assert_eq!(g.cols(), 1);
        let p = r.presentation(g, Some(&rad.basis));
        assert_eq!(p.cover.rank(), a.dim());
        assert!(p.cover.matmul(&p.relations).is_zero());
        assert_eq!(p.cover.matmul(&p.section), Mat::identity(a.field(), a.dim()));
    }
}
