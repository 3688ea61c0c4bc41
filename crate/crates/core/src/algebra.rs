//! Finite-dimensional algebras as structure constants, with Frobenius data.

use serde::Serialize;

use crate::exactla::{Field, Mat, Scalar, Subspace};
use crate::{Error, Result};

/// A unital associative algebra with basis `u_0 = 1, u_1, …, u_{d−1}`.
///
/// `mult` is `d × d²`; column `i·d + j` holds the coordinates of `uᵢuⱼ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    labels: Vec<String>,
    mult: Mat,
    left: Vec<Mat>,
    right: Vec<Mat>,
}

impl Algebra {
    /// Validating constructor. `table[i][j]` is the coordinate vector of `uᵢuⱼ`.
    pub fn new(name: &str, field: Field, labels: Vec<String>, table: &[Vec<Vec<Scalar>>]) -> Result<Algebra> {
        let d = labels.len();
        if d == 0 {
            return Err(Error::Parse("empty basis".into()));
        }
        if table.len() != d || table.iter().any(|r| r.len() != d || r.iter().any(|c| c.len() != d)) {
            return Err(Error::Parse(format!("table must be {d}x{d}x{d}")));
        }
        let mut mult = Mat::zeros(field, d, d * d);
        for i in 0..d {
            for j in 0..d {
                for (k, s) in table[i][j].iter().enumerate() {
                    if s.field() != field {
                        return Err(Error::Parse("table entry from another field".into()));
                    }
                    mult.set(k, i * d + j, s);
                }
            }
        }
        let a = Algebra::from_mult(name, labels, mult);
        a.validate()?;
        Ok(a)
    }

    /// Unchecked constructor from the `d × d²` multiplication matrix.
    pub fn from_mult(name: &str, labels: Vec<String>, mult: Mat) -> Algebra {
        let d = labels.len();
        assert_eq!(mult.shape(), (d, d * d));
        let f = mult.field();
        let mut left = vec![Mat::zeros(f, d, d); d];
        let mut right = vec![Mat::zeros(f, d, d); d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let c = mult.get(k, i * d + j);
                    if !c.is_zero() {
                        left[i].set(k, j, &c);
                        right[j].set(k, i, &c);
                    }
                }
            }
        }
        Algebra {
            name: name.to_string(),
            labels,
            mult,
            left,
            right,
        }
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        let id = Mat::identity(self.field(), d);
        for j in 0..d {
            if self.left[0].column(j) != id.column(j) || self.right[0].column(j) != id.column(j) {
                return Err(Error::UnitViolation(j));
            }
        }
        // L_i L_j must equal L_{uᵢuⱼ}; a bad column k exhibits the triple (i, j, k)
        for i in 0..d {
            for j in 0..d {
                let lhs = self.left[i].matmul(&self.left[j]);
                let rhs = self.left_by(&self.product_basis(i, j));
                if lhs != rhs {
                    let k = (0..d).find(|&k| lhs.column(k) != rhs.column(k)).unwrap();
                    return Err(Error::NonAssociative(i, j, k));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.mult.field()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The `d × d²` multiplication matrix.
    pub fn mult(&self) -> &Mat {
        &self.mult
    }

    /// Structure constant: coefficient of `u_k` in `uᵢuⱼ`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.mult.get(k, i * self.dim() + j)
    }

    /// Left multiplication by `uᵢ`.
    pub fn left(&self, i: usize) -> &Mat {
        &self.left[i]
    }

    /// Right multiplication by `uᵢ`.
    pub fn right(&self, i: usize) -> &Mat {
        &self.right[i]
    }

    pub fn unit(&self) -> Mat {
        Mat::unit_vector(self.field(), self.dim(), 0)
    }

    pub fn basis_vector(&self, i: usize) -> Mat {
        Mat::unit_vector(self.field(), self.dim(), i)
    }

    /// Coordinates of `uᵢuⱼ` as a column.
    pub fn product_basis(&self, i: usize, j: usize) -> Mat {
        self.mult.column(i * self.dim() + j)
    }

    /// `a·b` for coordinate columns.
    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        self.left_by(a).matmul(b)
    }

    /// Left multiplication by an arbitrary element.
    pub fn left_by(&self, a: &Mat) -> Mat {
        combine(&self.left, a, self.field(), self.dim())
    }

    /// Right multiplication by an arbitrary element.
    pub fn right_by(&self, a: &Mat) -> Mat {
        combine(&self.right, a, self.field(), self.dim())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|i| self.left[i] == self.right[i])
    }

    /// Z(A) as a subspace of A.
    pub fn center(&self) -> Subspace {
        let d = self.dim();
        let mut rows = Mat::zeros(self.field(), d * d, d);
        for i in 0..d {
            // x is central iff (Lᵢ − Rᵢ)x = 0 for every i
            let block = &self.left[i] - &self.right[i];
            rows.set_block(i * d, 0, &block);
        }
        rows.kernel()
    }

    pub fn opposite(&self) -> Algebra {
        let d = self.dim();
        let mut mult = Mat::zeros(self.field(), d, d * d);
        for i in 0..d {
            for j in 0..d {
                mult.set_block(0, i * d + j, &self.product_basis(j, i));
            }
        }
        Algebra::from_mult(&format!("{}^op", self.name), self.labels.clone(), mult)
    }

    /// `A ⊗ B` with basis index `i·dim B + j`.
    pub fn tensor(&self, b: &Algebra) -> Algebra {
        let (da, db) = (self.dim(), b.dim());
        let n = da * db;
        let f = self.field();
        let mut mult = Mat::zeros(f, n, n * n);
        for i in 0..da {
            for j in 0..db {
                for k in 0..da {
                    for l in 0..db {
                        let col = self.product_basis(i, k).kron(&b.product_basis(j, l));
                        mult.set_block(0, (i * db + j) * n + k * db + l, &col);
                    }
                }
            }
        }
        let labels = self
            .labels
            .iter()
            .flat_map(|x| b.labels.iter().map(move |y| format!("{x}⊗{y}")))
            .collect();
        Algebra::from_mult(&format!("{}⊗{}", self.name, b.name), labels, mult)
    }

    /// `Aᵉ = A ⊗ Aᵒ`; basis `uᵢ⊗uⱼᵒ` sits at index `i·d + j`.
    pub fn enveloping(&self) -> Algebra {
        let mut e = self.tensor(&self.opposite());
        e.name = format!("{}^e", self.name);
        e
    }

    /// Jacobson radical.
    ///
    /// Uses the trace form when the characteristic is 0 or exceeds the
    /// dimension. In small characteristic a commutative algebra still works
    /// through the kernel of a Frobenius power; otherwise this errors.
    pub fn radical(&self) -> Result<RadicalData> {
        let d = self.dim();
        let f = self.field();
        let ch = f.characteristic();
        let basis = if ch == 0 || ch > d as u64 {
            let traces: Vec<Scalar> = (0..d).map(|k| trace(&self.left[k])).collect();
            // T[j][t] = tr(L_{u_t u_j})
            let t = Mat::from_fn(f, d, d, |j, tt| {
                let mut s = f.zero();
                for (k, tr) in traces.iter().enumerate() {
                    let c = self.c(tt, j, k);
                    if !c.is_zero() {
                        s = &s + &(&c * tr);
                    }
                }
                s
            });
            t.kernel()
        } else if self.is_commutative() {
            let mut q: u64 = ch;
            while q < d as u64 {
                q *= ch;
            }
            // x ↦ x^q is additive and 𝔽_p-linear here
            let mut fr = Mat::zeros(f, d, d);
            for t in 0..d {
                fr.set_block(0, t, &self.power(&self.basis_vector(t), q));
            }
            fr.kernel()
        } else {
            return Err(Error::RadicalUnavailable { p: ch, dim: d });
        };
        let index = self.nilpotency_index(&basis)?;
        Ok(RadicalData {
            basis,
            nilpotency_index: index,
        })
    }

    pub fn power(&self, x: &Mat, mut e: u64) -> Mat {
        let mut acc = self.unit();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Span of all products `xy` with x ∈ v, y ∈ w.
    pub fn product_space(&self, v: &Subspace, w: &Subspace) -> Subspace {
        let vb = v.basis_columns();
        let wb = w.basis_columns();
        let mut cols = Vec::new();
        for i in 0..vb.cols() {
            let l = self.left_by(&vb.column(i));
            cols.push(l.matmul(&wb));
        }
        let refs: Vec<&Mat> = cols.iter().collect();
        Subspace::from_columns(&Mat::hstack(self.field(), self.dim(), &refs))
    }

    fn nilpotency_index(&self, rad: &Subspace) -> Result<usize> {
        let full = Subspace::full(self.field(), self.dim());
        if !rad.contains_subspace(&self.product_space(&full, rad)) || !rad.contains_subspace(&self.product_space(rad, &full)) {
            return Err(Error::Verification("radical is not a two-sided ideal".into()));
        }
        let mut pow = rad.clone();
        let mut k = 1;
        while pow.dim() > 0 {
            pow = self.product_space(&pow, rad);
            k += 1;
            if k > self.dim() + 1 {
                return Err(Error::Verification("radical is not nilpotent".into()));
            }
        }
        Ok(k)
    }
}

fn combine(ms: &[Mat], a: &Mat, f: Field, d: usize) -> Mat {
    let mut out = Mat::zeros(f, d, d);
    for (t, m) in ms.iter().enumerate() {
        let c = a.get(t, 0);
        if !c.is_zero() {
            out.add_scaled(&c, m);
        }
    }
    out
}

pub(crate) fn trace(m: &Mat) -> Scalar {
    let mut s = m.field().zero();
    for i in 0..m.rows() {
        s = &s + &m.get(i, i);
    }
    s
}

/// Jacobson radical with its nilpotency index (smallest k with rad^k = 0).
#[derive(Clone, Debug)]
pub struct RadicalData {
    pub basis: Subspace,
    pub nilpotency_index: usize,
}

/// Algebra automorphism; column i is α(uᵢ).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Automorphism {
    pub matrix: Mat,
}

impl Automorphism {
    pub fn new(a: &Algebra, matrix: Mat) -> Result<Automorphism> {
        let d = a.dim();
        if matrix.shape() != (d, d) || matrix.rank() != d {
            return Err(Error::Precondition("automorphism matrix must be invertible".into()));
        }
        if matrix.column(0) != a.unit() {
            return Err(Error::Precondition("automorphism must fix 1".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = matrix.matmul(&a.product_basis(i, j));
                let rhs = a.mul(&matrix.column(i), &matrix.column(j));
                if lhs != rhs {
                    return Err(Error::Precondition(format!("not multiplicative on ({i},{j})")));
                }
            }
        }
        Ok(Automorphism { matrix })
    }

    pub fn identity(a: &Algebra) -> Automorphism {
        Automorphism {
            matrix: Mat::identity(a.field(), a.dim()),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            matrix: self.matrix.inverse().expect("automorphism is invertible"),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            matrix: self.matrix.matmul(&other.matrix),
        }
    }

    pub fn apply(&self, x: &Mat) -> Mat {
        self.matrix.matmul(x)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Mat::identity(self.matrix.field(), self.matrix.rows())
    }

    /// Smallest n ≤ bound with αⁿ = id.
    pub fn order(&self, bound: usize) -> Option<usize> {
        let mut p = self.clone();
        for n in 1..=bound {
            if p.is_identity() {
                return Some(n);
            }
            p = p.compose(self);
        }
        None
    }
}

/// Frobenius structure from a functional λ: ⟨a,b⟩ = λ(ab).
#[derive(Clone, Debug, Serialize)]
pub struct Frobenius {
    /// λ as a `1 × d` row.
    pub lambda: Mat,
    /// `gram[i][j] = λ(uᵢuⱼ)`.
    pub gram: Mat,
    /// Rows are the dual basis vᵢ, with λ(vᵢuⱼ) = δᵢⱼ.
    pub dual: Mat,
    /// ⟨a,b⟩ = ⟨b,ν(a)⟩.
    pub nakayama: Automorphism,
    pub nakayama_inv: Automorphism,
}

impl Frobenius {
    pub fn new(a: &Algebra, lambda: &[Scalar]) -> Result<Frobenius> {
        let d = a.dim();
        let f = a.field();
        if lambda.len() != d {
            return Err(Error::Parse(format!("functional needs {d} entries")));
        }
        let lam = Mat::from_fn(f, 1, d, |_, j| lambda[j].clone());
        let flat = lam.matmul(a.mult());
        let gram = Mat::from_fn(f, d, d, |i, j| flat.get(0, i * d + j));
        let dual = gram.inverse().ok_or(Error::DegenerateForm)?;
        let nu = dual.matmul(&gram.transpose());
        let nakayama = Automorphism::new(a, nu)
            .map_err(|e| Error::Verification(format!("Nakayama map is not an automorphism: {e}")))?;
        let nakayama_inv = nakayama.inverse();
        let fr = Frobenius {
            lambda: lam,
            gram,
            dual,
            nakayama,
            nakayama_inv,
        };
        fr.verify(a)?;
        Ok(fr)
    }

    fn verify(&self, a: &Algebra) -> Result<()> {
        let d = a.dim();
        let nu = &self.nakayama.matrix;
        for i in 0..d {
            for j in 0..d {
                let lhs = self.form(a, &a.basis_vector(i), &a.basis_vector(j));
                let rhs = self.form(a, &a.basis_vector(j), &nu.column(i));
                if lhs != rhs {
                    return Err(Error::Verification(format!("Nakayama identity fails on ({i},{j})")));
                }
                let dij = self.form(a, &self.v(i), &a.basis_vector(j));
                let want = if i == j { a.field().one() } else { a.field().zero() };
                if dij != want {
                    return Err(Error::Verification(format!("dual basis fails on ({i},{j})")));
                }
            }
        }
        Ok(())
    }

    /// ⟨a,b⟩ = λ(ab).
    pub fn form(&self, alg: &Algebra, a: &Mat, b: &Mat) -> Scalar {
        self.lambda.matmul(&alg.mul(a, b)).get(0, 0)
    }

    /// The dual basis vector vᵢ as a column.
    pub fn v(&self, i: usize) -> Mat {
        self.dual.row(i).transpose()
    }

    pub fn nu(&self) -> &Mat {
        &self.nakayama.matrix
    }

    pub fn nu_inv(&self) -> &Mat {
        &self.nakayama_inv.matrix
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram == self.gram.transpose()
    }
}
