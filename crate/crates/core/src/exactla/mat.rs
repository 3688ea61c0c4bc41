use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::kern::{Data, Fp, Kern, Qk};
use super::scalar::{Field, Scalar};
use super::subspace::Subspace;
use crate::par;

/// Dense matrix in row-major order over a [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    pub(crate) data: Data,
}

// Runs a generic helper with the kernel matching the matrix's field.
macro_rules! with_k {
    ($m:expr, $f:ident ( $($arg:expr),* )) => {
        match &$m.data {
            Data::P { p, .. } => $f(Fp(*p), $($arg),*),
            Data::Q(_) => $f(Qk, $($arg),*),
        }
    };
}

fn zeros_k<K: Kern>(k: K, n: usize) -> Data {
    k.wrap(vec![k.zero(); n])
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        let data = match field {
            Field::Prime(p) => zeros_k(Fp(p), rows * cols),
            Field::Rationals => zeros_k(Qk, rows * cols),
        };
        Mat { rows, cols, data }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, &field.one());
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Mat {
        let mut m = Mat::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                if !s.is_zero() {
                    m.set(i, j, &s);
                }
            }
        }
        m
    }

    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Mat {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Mat::from_fn(field, rows, cols, |i, j| field.from_i64(entries[i * cols + j]))
    }

    /// Column vector from scalars.
    pub fn column_vector(field: Field, v: &[Scalar]) -> Mat {
        Mat::from_fn(field, v.len(), 1, |i, _| v[i].clone())
    }

    /// The `i`-th standard basis column of length `n`.
    pub fn unit_vector(field: Field, n: usize, i: usize) -> Mat {
        let mut m = Mat::zeros(field, n, 1);
        m.set(i, 0, &field.one());
        m
    }

    pub fn field(&self) -> Field {
        match &self.data {
            Data::P { p, .. } => Field::Prime(*p),
            Data::Q(_) => Field::Rationals,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {:?}", self.shape());
        fn g<K: Kern>(k: K, m: &Mat, idx: usize) -> Scalar {
            k.to_scalar(&K::view(&m.data)[idx])
        }
        with_k!(self, g(self, i * self.cols + j))
    }

    pub fn set(&mut self, i: usize, j: usize, s: &Scalar) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {:?}", self.shape());
        fn st<K: Kern>(k: K, m: &mut Mat, idx: usize, s: &Scalar) {
            let e = k.from_scalar(s);
            K::view_mut(&mut m.data)[idx] = e;
        }
        let idx = i * self.cols + j;
        match &self.data {
            Data::P { p, .. } => st(Fp(*p), self, idx, s),
            Data::Q(_) => st(Qk, self, idx, s),
        }
    }

    /// Adds `s` to entry `(i, j)`.
    pub fn add_at(&mut self, i: usize, j: usize, s: &Scalar) {
        let cur = self.get(i, j);
        self.set(i, j, &(&cur + s));
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Data::P { v, .. } => v.iter().all(|&x| x == 0),
            Data::Q(v) => v.iter().all(num::Zero::is_zero),
        }
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        match &self.data {
            Data::P { v, .. } => v.iter().filter(|&&x| x != 0).count(),
            Data::Q(v) => v.iter().filter(|x| !num::Zero::is_zero(*x)).count(),
        }
    }

    pub fn transpose(&self) -> Mat {
        fn t<K: Kern>(k: K, m: &Mat) -> Mat {
            let v = K::view(&m.data);
            let mut out = Vec::with_capacity(v.len());
            for j in 0..m.cols {
                for i in 0..m.rows {
                    out.push(v[i * m.cols + j].clone());
                }
            }
            Mat { rows: m.cols, cols: m.rows, data: k.wrap(out) }
        }
        with_k!(self, t(self))
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        fn sc<K: Kern>(k: K, m: &Mat, s: &Scalar) -> Mat {
            let s = k.from_scalar(s);
            let v = K::view(&m.data).iter().map(|x| k.mul(x, &s)).collect();
            Mat { rows: m.rows, cols: m.cols, data: k.wrap(v) }
        }
        with_k!(self, sc(self, s))
    }

    /// `self += s · other`, in place.
    pub fn add_scaled(&mut self, s: &Scalar, other: &Mat) {
        assert_eq!(self.shape(), other.shape(), "add_scaled shape");
        fn ax<K: Kern>(k: K, m: &mut Mat, s: &Scalar, o: &Mat) {
            let s = k.from_scalar(s);
            let x = K::view(&o.data);
            k.axpy(K::view_mut(&mut m.data), &s, x);
        }
        match &self.data {
            Data::P { p, .. } => ax(Fp(*p), self, s, other),
            Data::Q(_) => ax(Qk, self, s, other),
        }
    }

    fn zip(&self, o: &Mat, neg: bool) -> Mat {
        assert_eq!(self.shape(), o.shape(), "elementwise shape");
        let mut out = self.clone();
        let s = if neg { -self.field().one() } else { self.field().one() };
        out.add_scaled(&s, o);
        out
    }

    pub fn kron(&self, o: &Mat) -> Mat {
        let f = self.field();
        let mut out = Mat::zeros(f, self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                out.set_block(i * o.rows, j * o.cols, &o.scale(&a));
            }
        }
        out
    }

    pub fn submatrix(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Mat {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "submatrix bounds");
        fn sm<K: Kern>(k: K, m: &Mat, r0: usize, nr: usize, c0: usize, nc: usize) -> Mat {
            let v = K::view(&m.data);
            let mut out = Vec::with_capacity(nr * nc);
            for i in r0..r0 + nr {
                out.extend_from_slice(&v[i * m.cols + c0..i * m.cols + c0 + nc]);
            }
            Mat { rows: nr, cols: nc, data: k.wrap(out) }
        }
        with_k!(self, sm(self, r0, nr, c0, nc))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "set_block bounds");
        fn sb<K: Kern>(_k: K, m: &mut Mat, r0: usize, c0: usize, b: &Mat) {
            let cols = m.cols;
            let src = K::view(&b.data);
            let dst = K::view_mut(&mut m.data);
            for i in 0..b.rows {
                dst[(r0 + i) * cols + c0..(r0 + i) * cols + c0 + b.cols]
                    .clone_from_slice(&src[i * b.cols..(i + 1) * b.cols]);
            }
        }
        match &self.data {
            Data::P { p, .. } => sb(Fp(*p), self, r0, c0, b),
            Data::Q(_) => sb(Qk, self, r0, c0, b),
        }
    }

    /// Same entries in row-major order, new shape.
    pub fn reshape(&self, rows: usize, cols: usize) -> Mat {
        assert_eq!(rows * cols, self.rows * self.cols, "reshape size");
        Mat { rows, cols, data: self.data.clone() }
    }

    pub fn column(&self, j: usize) -> Mat {
        self.submatrix(0, self.rows, j, 1)
    }

    pub fn row(&self, i: usize) -> Mat {
        self.submatrix(i, 1, 0, self.cols)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        fn sr<K: Kern>(k: K, m: &Mat, idx: &[usize]) -> Mat {
            let v = K::view(&m.data);
            let mut out = Vec::with_capacity(idx.len() * m.cols);
            for &i in idx {
                out.extend_from_slice(&v[i * m.cols..(i + 1) * m.cols]);
            }
            Mat { rows: idx.len(), cols: m.cols, data: k.wrap(out) }
        }
        with_k!(self, sr(self, idx))
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        self.transpose().select_rows(idx).transpose()
    }

    /// Horizontal concatenation; all parts share a row count.
    pub fn hstack(field: Field, rows: usize, parts: &[&Mat]) -> Mat {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut c = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row count");
            out.set_block(0, c, p);
            c += p.cols;
        }
        out
    }

    /// Vertical concatenation; all parts share a column count.
    pub fn vstack(field: Field, cols: usize, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut r = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column count");
            out.set_block(r, 0, p);
            r += p.rows;
        }
        out
    }

    pub fn block_diag(field: Field, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            out.set_block(r, c, p);
            r += p.rows;
            c += p.cols;
        }
        out
    }

    pub fn matmul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "matmul shapes {:?} x {:?}", self.shape(), o.shape());
        fn mm<K: Kern>(k: K, a: &Mat, b: &Mat) -> Mat {
            let av = K::view(&a.data);
            let bv = K::view(&b.data);
            let (n, m, p) = (a.rows, a.cols, b.cols);
            let mut out = vec![k.zero(); n * p];
            let row = |i: usize, dst: &mut [K::E]| {
                for t in 0..m {
                    let x = &av[i * m + t];
                    if !k.is_zero(x) {
                        k.axpy(dst, x, &bv[t * p..(t + 1) * p]);
                    }
                }
            };
            if par::worth_it(n * m * p) && n > 1 {
                par::for_each_chunk_mut(&mut out, p, |i, dst| row(i, dst));
            } else {
                for (i, dst) in out.chunks_mut(p.max(1)).enumerate().take(n) {
                    row(i, dst);
                }
            }
            Mat { rows: n, cols: p, data: k.wrap(out) }
        }
        with_k!(self, mm(self, o))
    }

    /// Reduced row-echelon form with pivot columns. Pivot choice is the first
    /// nonzero entry at or below the current row.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place(self.cols);
        (m, piv)
    }

    /// Row-reduces in place, choosing pivots only among the first `limit` columns.
    pub(crate) fn rref_in_place(&mut self, limit: usize) -> Vec<usize> {
        fn go<K: Kern>(k: K, m: &mut Mat, limit: usize) -> Vec<usize> {
            let (rows, cols) = (m.rows, m.cols);
            let v = K::view_mut(&mut m.data);
            let mut pivots = Vec::new();
            let mut r = 0;
            for c in 0..limit {
                if r == rows {
                    break;
                }
                let Some(pr) = (r..rows).find(|&i| !k.is_zero(&v[i * cols + c])) else {
                    continue;
                };
                if pr != r {
                    for j in c..cols {
                        v.swap(pr * cols + j, r * cols + j);
                    }
                }
                let inv = k.inv(&v[r * cols + c]);
                for j in c..cols {
                    v[r * cols + j] = k.mul(&v[r * cols + j], &inv);
                }
                let prow: Vec<K::E> = v[r * cols + c..(r + 1) * cols].to_vec();
                let elim = |i: usize, row: &mut [K::E]| {
                    if i == r || k.is_zero(&row[c]) {
                        return;
                    }
                    let f = k.neg(&row[c]);
                    k.axpy(&mut row[c..], &f, &prow);
                };
                if par::worth_it(rows * (cols - c)) {
                    par::for_each_chunk_mut(v, cols, elim);
                } else {
                    for (i, row) in v.chunks_mut(cols).enumerate() {
                        elim(i, row);
                    }
                }
                pivots.push(c);
                r += 1;
            }
            pivots
        }
        match &self.data {
            Data::P { p, .. } => go(Fp(*p), self, limit),
            Data::Q(_) => go(Qk, self, limit),
        }
    }

    pub fn rank(&self) -> usize {
        // eliminate along the shorter side
        if self.rows > self.cols {
            self.transpose().rref().1.len()
        } else {
            self.rref().1.len()
        }
    }

    /// Basis of `{x : self·x = 0}` as the columns of a matrix, one per free column.
    pub fn kernel_basis(&self) -> Mat {
        let f = self.field();
        let (r, piv) = self.rref();
        let n = self.cols;
        let mut is_piv = vec![None; n];
        for (row, &c) in piv.iter().enumerate() {
            is_piv[c] = Some(row);
        }
        let free: Vec<usize> = (0..n).filter(|&c| is_piv[c].is_none()).collect();
        let mut out = Mat::zeros(f, n, free.len());
        for (j, &fc) in free.iter().enumerate() {
            out.set(fc, j, &f.one());
            for (row, &pc) in piv.iter().enumerate() {
                let e = r.get(row, fc);
                if !e.is_zero() {
                    out.set(pc, j, &-e);
                }
            }
        }
        out
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::from_columns(&self.kernel_basis())
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::from_columns(self)
    }

    /// Solves `self · X = B` for every column of `B` at once; `None` if any
    /// column is inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        let f = self.field();
        let n = self.cols;
        let mut aug = Mat::hstack(f, self.rows, &[self, b]);
        let piv = aug.rref_in_place(n);
        // inconsistent iff a zero row of the left block has nonzero right side
        for row in piv.len()..self.rows {
            for j in 0..b.cols {
                if !aug.get(row, n + j).is_zero() {
                    return None;
                }
            }
        }
        let mut x = Mat::zeros(f, n, b.cols);
        for (row, &c) in piv.iter().enumerate() {
            x.set_block(c, 0, &aug.submatrix(row, 1, n, b.cols));
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Mat::identity(self.field(), self.rows))?;
        if self.rank() == self.rows {
            Some(x)
        } else {
            None
        }
    }

    /// Entries as display strings in row-major order.
    pub fn entry_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field())?;
        for r in self.entry_strings() {
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

impl<'a> Mul<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn mul(self, o: &'a Mat) -> Mat {
        self.matmul(o)
    }
}

impl<'a> Add<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn add(self, o: &'a Mat) -> Mat {
        self.zip(o, false)
    }
}

impl<'a> Sub<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn sub(self, o: &'a Mat) -> Mat {
        self.zip(o, true)
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale(&-self.field().one())
    }
}

#[derive(Serialize, Deserialize)]
struct MatRepr {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatRepr {
            field: self.field(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entry_strings().into_iter().flatten().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Mat, D::Error> {
        use serde::de::Error as _;
        let r = MatRepr::deserialize(d)?;
        if r.entries.len() != r.rows * r.cols {
            return Err(D::Error::custom("entry count does not match shape"));
        }
        let mut m = Mat::zeros(r.field, r.rows, r.cols);
        for (idx, e) in r.entries.iter().enumerate() {
            let s = r.field.parse_scalar(e).map_err(D::Error::custom)?;
            m.set(idx / r.cols, idx % r.cols, &s);
        }
        Ok(m)
    }
}
