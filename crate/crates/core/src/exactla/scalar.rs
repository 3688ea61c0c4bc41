use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ground field: the rationals or a prime field 𝔽_p with p < 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u32),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    /// Parses `"Q"` or `"F<p>"`.
    pub fn parse(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        let digits = s
            .strip_prefix('F')
            .ok_or_else(|| Error::Parse(format!("field must be \"Q\" or \"F<p>\", got {s:?}")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime in field {s:?}")))?;
        Field::prime(p)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p as u64,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(n.into())),
            Field::Prime(p) => Scalar::Fp {
                v: n.rem_euclid(p as i64) as u32,
                p,
            },
        }
    }

    /// Reduces a rational into the field; fails when the denominator vanishes mod p.
    pub fn from_rational(self, r: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Q(r.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let n = (r.numer() % &pb + &pb) % &pb;
                let d = (r.denom() % &pb + &pb) % &pb;
                if d.is_zero() {
                    return Err(Error::Parse(format!("{r} has no image in F{p}")));
                }
                let n = n.to_u64().unwrap();
                let d = d.to_u64().unwrap();
                Ok(Scalar::Fp {
                    v: (n * inv_mod(d, p as u64) % p as u64) as u32,
                    p,
                })
            }
        }
    }

    /// Parses an integer or `a/b` literal.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let bad = || Error::Parse(format!("bad scalar literal {s:?}"));
        let s = s.trim();
        let r = match s.split_once('/') {
            Some((a, b)) => {
                let a: BigInt = a.trim().parse().map_err(|_| bad())?;
                let b: BigInt = b.trim().parse().map_err(|_| bad())?;
                if b.is_zero() {
                    return Err(bad());
                }
                BigRational::new(a, b)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        self.from_rational(&r)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a is nonzero mod p
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// A single field element. Prime-field elements carry their modulus so the
/// arithmetic operators need no context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { v: u32, p: u32 },
    Q(BigRational),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Fp { p, .. } => Field::Prime(*p),
            Scalar::Q(_) => Field::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 0,
            Scalar::Q(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 1,
            Scalar::Q(r) => r.is_one(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Fp { v, p } => Scalar::Fp {
                v: inv_mod(*v as u64, *p as u64) as u32,
                p: *p,
            },
            Scalar::Q(r) => Scalar::Q(r.recip()),
        })
    }

    /// Integer representative in `[0, p)`, or the rational itself.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Fp { v, .. } => BigRational::from_integer((*v).into()),
            Scalar::Q(r) => r.clone(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { v, .. } => write!(f, "{v}"),
            Scalar::Q(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Q(r) => {
                let sign = if r.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}/{}", r.numer().abs(), r.denom())
            }
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $fp:expr, $q:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: &'a Scalar) -> Scalar {
                match (self, o) {
                    (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                        assert_eq!(p, q, "scalars from different fields");
                        let f: fn(u64, u64, u64) -> u64 = $fp;
                        Scalar::Fp {
                            v: f(*a as u64, *b as u64, *p as u64) as u32,
                            p: *p,
                        }
                    }
                    (Scalar::Q(a), Scalar::Q(b)) => {
                        let f: fn(&BigRational, &BigRational) -> BigRational = $q;
                        Scalar::Q(f(a, b))
                    }
                    _ => panic!("scalars from different fields"),
                }
            }
        }
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
    };
}

binop!(Add, add, |a, b, p| (a + b) % p, |a, b| a + b);
binop!(Sub, sub, |a, b, p| (a + p - b) % p, |a, b| a - b);
binop!(Mul, mul, |a, b, p| a * b % p, |a, b| a * b);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp { v, p } => Scalar::Fp {
                v: ((p - v) % p),
                p,
            },
            Scalar::Q(r) => Scalar::Q(-r),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fields() {
        assert_eq!(Field::parse("Q").unwrap(), Field::Rationals);
        assert_eq!(Field::parse("F17").unwrap(), Field::Prime(17));
        assert!(matches!(Field::parse("F15"), Err(Error::NotPrime(15))));
        assert!(Field::parse("R").is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let f = Field::Prime(5);
        let a = f.from_i64(3);
        let b = f.from_i64(4);
        assert_eq!(&a + &b, f.from_i64(2));
        assert_eq!(&a - &b, f.from_i64(4));
        assert_eq!(&a * &b, f.from_i64(2));
        assert_eq!(a.inv().unwrap(), f.from_i64(2));
        assert_eq!(-f.from_i64(1), f.from_i64(4));
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(3));
        assert!(f.parse_scalar("1/5").is_err());
    }

    #[test]
    fn rational_display() {
        let q = Field::Rationals;
        assert_eq!(q.parse_scalar("-2/4").unwrap().to_string(), "-1/2");
        assert_eq!(q.from_i64(7).to_string(), "7");
    }
}
