//! Builders for the standard example algebras, each with its usual functional.
//!
//! The command-line tool ships the same algebras as spec files; these
//! builders exist so tests and benches do not depend on the file format.

use crate::algebra::{Algebra, Frobenius};
use crate::exactla::{Field, Scalar};

fn table_from(field: Field, d: usize, prod: impl Fn(usize, usize) -> Vec<(usize, i64)>) -> Vec<Vec<Vec<Scalar>>> {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let mut v = vec![field.zero(); d];
                    for (k, c) in prod(i, j) {
                        v[k] = &v[k] + &field.from_i64(c);
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// The ground field as a one-dimensional algebra.
pub fn field(f: Field) -> Algebra {
    Algebra::new(&format!("{f}"), f, vec!["1".into()], &table_from(f, 1, |_, _| vec![(0, 1)])).unwrap()
}

/// 𝔽_p[x]/(xⁿ) with basis 1, x, …, xⁿ⁻¹.
pub fn truncated(p: u64, n: usize) -> Algebra {
    let f = Field::prime(p).unwrap();
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    let table = table_from(f, n, |i, j| if i + j < n { vec![(i + j, 1)] } else { vec![] });
    Algebra::new(&format!("F{p}[x]/(x^{n})"), f, labels, &table).unwrap()
}

/// 𝔽_p⟨x,y⟩/(x², y², xy + q·yx) with basis 1, x, y, xy.
pub fn quantum_exterior(p: u64, q: i64) -> Algebra {
    let f = Field::prime(p).unwrap();
    // yx = −q⁻¹·xy
    let qinv = f.from_i64(q).inv().unwrap();
    let yx = match -qinv {
        Scalar::Fp { v, .. } => v as i64,
        Scalar::Q(_) => unreachable!(),
    };
    let table = table_from(f, 4, |i, j| match (i, j) {
        (0, j) => vec![(j, 1)],
        (i, 0) => vec![(i, 1)],
        (1, 2) => vec![(3, 1)],
        (2, 1) => vec![(3, yx)],
        _ => vec![],
    });
    let labels = ["1", "x", "y", "xy"].iter().map(|s| s.to_string()).collect();
    Algebra::new(&format!("F{p}<x,y>/(x^2,y^2,xy+{q}yx)"), f, labels, &table).unwrap()
}

/// Group algebra 𝔽_p C₂ with basis 1, g.
pub fn group_c2(p: u64) -> Algebra {
    let f = Field::prime(p).unwrap();
    let table = table_from(f, 2, |i, j| vec![((i + j) % 2, 1)]);
    Algebra::new(&format!("F{p}C2"), f, vec!["1".into(), "g".into()], &table).unwrap()
}

/// λ dual to the top basis element (the socle for the local examples).
pub fn top_functional(a: &Algebra) -> Frobenius {
    let f = a.field();
    let d = a.dim();
    let lam: Vec<Scalar> = (0..d).map(|i| if i == d - 1 { f.one() } else { f.zero() }).collect();
    Frobenius::new(a, &lam).unwrap()
}

/// λ = coefficient of the unit (the group-algebra and field case).
pub fn unit_functional(a: &Algebra) -> Frobenius {
    let f = a.field();
    let lam: Vec<Scalar> = (0..a.dim()).map(|i| if i == 0 { f.one() } else { f.zero() }).collect();
    Frobenius::new(a, &lam).unwrap()
}

pub fn quantum_exterior_frobenius(a: &Algebra) -> Frobenius {
    top_functional(a)
}

/// One corpus algebra with its Frobenius structure.
#[derive(Clone, Debug)]
pub struct Entry {
    pub key: &'static str,
    pub algebra: Algebra,
    pub frobenius: Frobenius,
}

/// Every bundled example, small to large.
pub fn all() -> Vec<Entry> {
    let mk = |key, algebra: Algebra, fr: fn(&Algebra) -> Frobenius| {
        let frobenius = fr(&algebra);
        Entry { key, algebra, frobenius }
    };
    vec![
        mk("k", field(Field::Rationals), unit_functional),
        mk("f7", field(Field::Prime(7)), unit_functional),
        mk("dual2", truncated(2, 2), top_functional),
        mk("dual5", truncated(5, 2), top_functional),
        mk("group_c2_f5", group_c2(5), unit_functional),
        mk("trunc3_f11", truncated(11, 3), top_functional),
        mk("qext17", quantum_exterior(17, 3), top_functional),
    ]
}

/// Looks up a corpus entry by key.
pub fn get(key: &str) -> Option<Entry> {
    all().into_iter().find(|e| e.key == key)
}
