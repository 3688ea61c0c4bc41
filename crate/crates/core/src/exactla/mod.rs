//! Exact dense linear algebra over ℚ and 𝔽_p.

mod kern;
mod mat;
mod scalar;
mod subspace;

pub use mat::Mat;
pub use scalar::{Field, Scalar};
pub use subspace::{quotient, Quotient, Subspace};


/// Reduced row-echelon form and pivot columns.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    m.rref()
}

pub fn kernel(m: &Mat) -> Subspace {
    m.kernel()
}

pub fn image(m: &Mat) -> Subspace {
    m.image()
}

/// First solution (free variables zero) of `m·x = b`, if any.
pub fn solve(m: &Mat, b: &Mat) -> Option<Mat> {
    m.solve(b)
}

pub fn intersect(v: &Subspace, w: &Subspace) -> crate::Result<Subspace> {
    v.intersect(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        let f = Field::Prime(5);
        let id = Mat::identity(f, 3);
        assert_eq!(rref(&id), (id.clone(), vec![0, 1, 2]));
        let z = Mat::zeros(f, 2, 4);
        assert_eq!(rref(&z), (z.clone(), vec![]));
        let m = Mat::from_i64(f, 2, 2, &[2, 4, 1, 2]);
        let (r, p) = rref(&m);
        assert_eq!(r, Mat::from_i64(f, 2, 2, &[1, 2, 0, 0]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        let q = Field::Rationals;
        assert_eq!(kernel(&Mat::identity(q, 3)).dim(), 0);
        assert_eq!(kernel(&Mat::zeros(q, 2, 3)).dim(), 3);
        let k = kernel(&Mat::from_i64(q, 1, 2, &[1, 1]));
        assert_eq!(k, Subspace::from_rows(&Mat::from_i64(q, 1, 2, &[1, -1])));
    }

    #[test]
    fn quotient_and_intersect() {
        let q = Field::Rationals;
        let full = Subspace::full(q, 3);
        let z = Subspace::zero(q, 3);
        let a = quotient(&full, &z).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.proj, Mat::identity(q, 3));
        assert_eq!(quotient(&full, &full).unwrap().dim(), 0);
        assert!(matches!(quotient(&z, &full), Err(crate::Error::NotSubspace)));

        let v = Subspace::full(q, 2);
        let w = Subspace::from_rows(&Mat::from_i64(q, 1, 2, &[1, 1]));
        assert_eq!(intersect(&v, &w).unwrap(), w);
    }

    #[test]
    fn solve_consistency() {
        let f = Field::Prime(7);
        let m = Mat::from_i64(f, 2, 3, &[1, 2, 3, 2, 4, 6]);
        let b = Mat::from_i64(f, 2, 1, &[1, 2]);
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.matmul(&x), b);
        assert!(solve(&m, &Mat::from_i64(f, 2, 1, &[1, 0])).is_none());
        let inv = Mat::from_i64(f, 2, 2, &[1, 2, 3, 4]).inverse().unwrap();
        assert_eq!(inv.matmul(&Mat::from_i64(f, 2, 2, &[1, 2, 3, 4])), Mat::identity(f, 2));
    }
}
