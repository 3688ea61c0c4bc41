//! Element-level arithmetic kernels. `Mat` stores either `u32` residues or
//! `BigRational`s; every matrix routine is written once against [`Kern`].

use num::rational::BigRational;
use num::Zero;

use super::scalar::{inv_mod, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Data {
    P { p: u32, v: Vec<u32> },
    Q(Vec<BigRational>),
}

pub(crate) trait Kern: Copy + Send + Sync {
    type E: Clone + PartialEq + Send + Sync;
    fn zero(self) -> Self::E;
    fn is_zero(self, a: &Self::E) -> bool;
    fn mul(self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(self, a: &Self::E) -> Self::E;
    fn inv(self, a: &Self::E) -> Self::E;
    /// y += a·x
    fn axpy(self, y: &mut [Self::E], a: &Self::E, x: &[Self::E]);
    fn view(d: &Data) -> &[Self::E];
    fn view_mut(d: &mut Data) -> &mut Vec<Self::E>;
    fn wrap(self, v: Vec<Self::E>) -> Data;
    fn to_scalar(self, a: &Self::E) -> Scalar;
    fn from_scalar(self, s: &Scalar) -> Self::E;
}

#[derive(Clone, Copy)]
pub(crate) struct Fp(pub u32);

impl Kern for Fp {
    type E = u32;
    #[inline]
    fn zero(self) -> u32 {
        0
    }
    #[inline]
    fn is_zero(self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn mul(self, a: &u32, b: &u32) -> u32 {
        (*a as u64 * *b as u64 % self.0 as u64) as u32
    }
    #[inline]
    fn neg(self, a: &u32) -> u32 {
        (self.0 - *a) % self.0
    }
    fn inv(self, a: &u32) -> u32 {
        inv_mod(*a as u64, self.0 as u64) as u32
    }
    #[inline]
    fn axpy(self, y: &mut [u32], a: &u32, x: &[u32]) {
        if *a == 0 {
            return;
        }
        let p = self.0 as u64;
        let a = *a as u64;
        for (yi, xi) in y.iter_mut().zip(x) {
            if *xi != 0 {
                *yi = ((*yi as u64 + a * *xi as u64) % p) as u32;
            }
        }
    }
    fn view(d: &Data) -> &[u32] {
        match d {
            Data::P { v, .. } => v,
            Data::Q(_) => panic!("mixed fields"),
        }
    }
    fn view_mut(d: &mut Data) -> &mut Vec<u32> {
        match d {
            Data::P { v, .. } => v,
            Data::Q(_) => panic!("mixed fields"),
        }
    }
    fn wrap(self, v: Vec<u32>) -> Data {
        Data::P { p: self.0, v }
    }
    fn to_scalar(self, a: &u32) -> Scalar {
        Scalar::Fp { v: *a, p: self.0 }
    }
    fn from_scalar(self, s: &Scalar) -> u32 {
        match s {
            Scalar::Fp { v, p } if *p == self.0 => *v,
            _ => panic!("scalar from a different field"),
        }
    }
}

#[derive(Clone, Copy)]
pub(crate) struct Qk;

impl Kern for Qk {
    type E = BigRational;
    fn zero(self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn mul(self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn axpy(self, y: &mut [BigRational], a: &BigRational, x: &[BigRational]) {
        if a.is_zero() {
            return;
        }
        for (yi, xi) in y.iter_mut().zip(x) {
            if !xi.is_zero() {
                *yi += a * xi;
            }
        }
    }
    fn view(d: &Data) -> &[BigRational] {
        match d {
            Data::Q(v) => v,
            Data::P { .. } => panic!("mixed fields"),
        }
    }
    fn view_mut(d: &mut Data) -> &mut Vec<BigRational> {
        match d {
            Data::Q(v) => v,
            Data::P { .. } => panic!("mixed fields"),
        }
    }
    fn wrap(self, v: Vec<BigRational>) -> Data {
        Data::Q(v)
    }
    fn to_scalar(self, a: &BigRational) -> Scalar {
        Scalar::Q(a.clone())
    }
    fn from_scalar(self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Q(r) => r.clone(),
            _ => panic!("scalar from a different field"),
        }
    }
}
