use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use tatehh::bimod::neg_one_pow;
use tatehh::corpus;
use tatehh::exactla::{Field, Mat, Subspace};
use tatehh::products::{EsEngine, RingTable};

fn mat(f: Field, rows: usize, cols: usize, entries: &[i64]) -> Mat {
    Mat::from_fn(f, rows, cols, |i, j| f.from_i64(entries[i * cols + j]))
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::Prime(2)), Just(Field::Prime(7)), Just(Field::Prime(11))]
}

/// A field with a matrix of the given shape range; small entries keep ℚ cheap.
fn field_and_mat(max: usize) -> impl Strategy<Value = (Field, Mat)> {
    (fields(), 1..=max, 1..=max).prop_flat_map(|(f, r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |e| (f, mat(f, r, c, &e)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity((_, m) in field_and_mat(6)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        prop_assert!(m.matmul(&m.kernel_basis()).is_zero());
    }

    #[test]
    fn rref_is_idempotent((_, m) in field_and_mat(6)) {
        let (r, piv) = m.rref();
        let (r2, piv2) = r.rref();
        prop_assert_eq!(r, r2);
        prop_assert_eq!(piv, piv2);
    }

    #[test]
    fn solve_recovers_consistent_systems(((f, m), seed) in (field_and_mat(5), prop::collection::vec(-3i64..=3, 5))) {
        let x = mat(f, m.cols(), 1, &seed[..m.cols()]);
        let b = m.matmul(&x);
        let y = m.solve(&b).expect("consistent system");
        prop_assert_eq!(m.matmul(&y), b);
    }

    #[test]
    fn inverse_when_full_rank((f, n, e) in (fields(), 1usize..=5).prop_flat_map(|(f, n)| (Just(f), Just(n), prop::collection::vec(-3i64..=3, n * n)))) {
        let m = mat(f, n, n, &e);
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.rank(), n);
                prop_assert_eq!(m.matmul(&inv), Mat::identity(f, n));
            }
            None => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn kron_mixed_product((f, e) in (fields(), prop::collection::vec(-3i64..=3, 16))) {
        let (a, b) = (mat(f, 2, 2, &e[0..4]), mat(f, 2, 2, &e[4..8]));
        let (c, d) = (mat(f, 2, 2, &e[8..12]), mat(f, 2, 2, &e[12..16]));
        prop_assert_eq!(a.kron(&b).matmul(&c.kron(&d)), a.matmul(&c).kron(&b.matmul(&d)));
    }

    #[test]
    fn subspace_dimension_formula((f, e) in (fields(), prop::collection::vec(-2i64..=2, 30))) {
        let v = Subspace::from_columns(&mat(f, 5, 3, &e[0..15]));
        let w = Subspace::from_columns(&mat(f, 5, 3, &e[15..30]));
        let sum = v.sum(&w).unwrap();
        let cap = v.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), v.dim() + w.dim());
        prop_assert!(sum.contains_subspace(&v) && v.contains_subspace(&cap) && w.contains_subspace(&cap));
    }
}

struct Ring {
    es: EsEngine,
    table: RingTable,
}

fn ring(key: &'static str) -> &'static Ring {
    static CACHE: OnceLock<Vec<(&'static str, Ring)>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        ["dual2", "trunc3_f11"]
            .into_iter()
            .map(|k| {
                let e = corpus::get(k).unwrap();
                let es = EsEngine::new(&Arc::new(e.algebra), &e.frobenius, 7).unwrap();
                let table = RingTable::compute(&es, 2).unwrap();
                (k, Ring { es, table })
            })
            .collect()
    });
    &all.iter().find(|(k, _)| *k == key).unwrap().1
}

fn combination(f: Field, dim: usize, coeffs: &[i64]) -> Mat {
    Mat::from_fn(f, dim, 1, |i, _| f.from_i64(coeffs[i % coeffs.len()]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Random classes, not only basis classes: the stable cup of the combined
    /// representatives is the bilinear extension of the table, and it is
    /// graded commutative.
    #[test]
    fn cup_is_bilinear_and_graded_commutative(
        key in prop_oneof![Just("dual2"), Just("trunc3_f11")],
        i in -2i64..=2,
        j in -2i64..=2,
        cx in prop::collection::vec(-5i64..=5, 1..4),
        cy in prop::collection::vec(-5i64..=5, 1..4),
    ) {
        let r = ring(key);
        let am = r.es.regular();
        let f = am.field();
        let (hi, hj, hij) = (r.es.cohomology(&am, i).unwrap(), r.es.cohomology(&am, j).unwrap(), r.es.cohomology(&am, i + j).unwrap());
        let (x, y) = (combination(f, hi.dim(), &cx), combination(f, hj.dim(), &cy));
        let ux = hi.group.representatives().matmul(&x);
        let uy = hj.group.representatives().matmul(&y);
        let direct = hij.group.class_of(&r.es.cup(&am, &ux, i, &uy, j).unwrap());
        prop_assert_eq!(&direct, &r.table.product(i, &x, j, &y).unwrap());
        let swapped = r.table.product(j, &y, i, &x).unwrap().scale(&neg_one_pow(f, i * j));
        prop_assert_eq!(direct, swapped);
    }
}
