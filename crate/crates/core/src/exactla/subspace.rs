use super::mat::Mat;
use super::scalar::Field;
use crate::error::{Error, Result};

/// A subspace of `field^ambient`, stored by an rref basis (one vector per row).
///
/// Keeping the basis reduced makes equality, membership and coset
/// representatives canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Mat::zeros(field, 0, ambient),
            pivots: vec![],
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Mat::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row span of `m`.
    pub fn from_rows(m: &Mat) -> Subspace {
        let (r, piv) = m.rref();
        let basis = r.submatrix(0, piv.len(), 0, m.cols());
        Subspace {
            ambient: m.cols(),
            basis,
            pivots: piv,
        }
    }

    /// Column span of `m`.
    pub fn from_columns(m: &Mat) -> Subspace {
        Subspace::from_rows(&m.transpose())
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Basis vectors as rows, in reduced echelon form.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    /// Basis vectors as columns.
    pub fn basis_columns(&self) -> Mat {
        self.basis.transpose()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces each column of `v` modulo the subspace. The result is the
    /// canonical coset representative: zero at every pivot coordinate.
    pub fn reduce(&self, v: &Mat) -> Mat {
        assert_eq!(v.rows(), self.ambient, "reduce: ambient mismatch");
        if self.dim() == 0 {
            return v.clone();
        }
        // v − Bᵀ·(v restricted to pivot rows)
        let coeffs = v.select_rows(&self.pivots);
        v - &self.basis.transpose().matmul(&coeffs)
    }

    /// True if every column of `v` lies in the subspace.
    pub fn contains(&self, v: &Mat) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, w: &Subspace) -> bool {
        w.ambient == self.ambient && self.contains(&w.basis_columns())
    }

    /// Coordinates of the columns of `v` (assumed inside) with respect to the rref basis.
    pub fn coordinates(&self, v: &Mat) -> Mat {
        v.select_rows(&self.pivots)
    }

    pub fn sum(&self, w: &Subspace) -> Result<Subspace> {
        self.check(w)?;
        Ok(Subspace::from_rows(&Mat::vstack(
            self.field(),
            self.ambient,
            &[&self.basis, &w.basis],
        )))
    }

    pub fn intersect(&self, w: &Subspace) -> Result<Subspace> {
        self.check(w)?;
        // x = aᵀV lies in w iff reduce_w(Vᵀ a) = 0
        let r = w.reduce(&self.basis_columns());
        let a = r.kernel_basis();
        Ok(Subspace::from_columns(&self.basis_columns().matmul(&a)))
    }

    pub fn equals(&self, w: &Subspace) -> bool {
        self == w
    }

    fn check(&self, w: &Subspace) -> Result<()> {
        if self.ambient != w.ambient {
            return Err(Error::Dimension(format!(
                "ambient {} vs {}",
                self.ambient, w.ambient
            )));
        }
        Ok(())
    }
}

/// `v / w` with canonical coset representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// Representatives as rows; together with `w` they span `v`.
    pub reps: Mat,
    /// `q × ambient` matrix: for x ∈ v, `x − repsᵀ·(proj·x) ∈ w`.
    pub proj: Mat,
    pub sub: Subspace,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.reps.rows()
    }

    /// Coordinates in the quotient of the columns of `x` (each must lie in `v`).
    pub fn project(&self, x: &Mat) -> Mat {
        self.proj.matmul(x)
    }

    /// Representatives as columns.
    pub fn rep_columns(&self) -> Mat {
        self.reps.transpose()
    }
}

/// Quotient `v / w`; `w` must lie inside `v`.
pub fn quotient(v: &Subspace, w: &Subspace) -> Result<Quotient> {
    v.check(w)?;
    if !v.contains_subspace(w) {
        return Err(Error::NotSubspace);
    }
    let f = v.field();
    let n = v.ambient;
    let reduced = w.reduce(&v.basis_columns());
    let comp = Subspace::from_columns(&reduced);
    // proj row j = e_{cⱼ} − Σ_r w_r[cⱼ] e_{piv_r}, where cⱼ are the complement pivots
    let mut proj = Mat::zeros(f, comp.dim(), n);
    for (j, &c) in comp.pivots.iter().enumerate() {
        proj.set(j, c, &f.one());
        for (r, &pc) in w.pivots.iter().enumerate() {
            let e = w.basis.get(r, c);
            if !e.is_zero() {
                proj.set(j, pc, &-e);
            }
        }
    }
    Ok(Quotient {
        reps: comp.basis.clone(),
        proj,
        sub: w.clone(),
    })
}
