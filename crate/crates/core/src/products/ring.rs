//! Structure constants of `Ĥ•(A, A)` on the window bases, with the unit,
//! associativity and graded-commutativity checks.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bimod::neg_one_pow;
use crate::exactla::Mat;
use crate::products::es::EsEngine;
use crate::tate::TateGroup;
use crate::{par, Error, Result};

/// Products of basis classes: `table[(i, j)]` has one column per pair
/// `(x, y)` (index `x·dim Ĥʲ + y`) holding the coordinates of `bₓ ∪ b_y` in `Ĥ^{i+j}`.
#[derive(Clone, Debug)]
pub struct RingTable {
    /// Basic degree bound `D`: the table covers `|i| ≤ 2D, |j| ≤ D` and `|i| ≤ D, |j| ≤ 2D`.
    pub bound: i64,
    pub dims: BTreeMap<i64, usize>,
    pub table: BTreeMap<(i64, i64), Mat>,
    /// Coordinates of the unit in `Ĥ⁰`.
    pub unit: Mat,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RingReport {
    pub unit_checks: usize,
    pub associativity_checks: usize,
    pub commutativity_checks: usize,
}

impl RingTable {
    /// Needs an engine of depth at least `3D + 1`.
    pub fn compute(es: &EsEngine, bound: i64) -> Result<RingTable> {
        let am = es.regular();
        let f = am.field();
        let mut groups: BTreeMap<i64, TateGroup> = BTreeMap::new();
        for n in -3 * bound..=3 * bound {
            groups.insert(n, es.cohomology(&am, n)?);
        }
        let dims = groups.iter().map(|(&n, g)| (n, g.dim())).collect();
        let pairs: Vec<(i64, i64)> = (-2 * bound..=2 * bound)
            .flat_map(|i| (-2 * bound..=2 * bound).map(move |j| (i, j)))
            .filter(|&(i, j)| (i.abs() <= bound && j.abs() <= 2 * bound) || (i.abs() <= 2 * bound && j.abs() <= bound))
            .collect();
        let results: Vec<Result<((i64, i64), Mat)>> = par::map_slice(&pairs, |&(i, j)| {
            let (gi, gj, gt) = (&groups[&i], &groups[&j], &groups[&(i + j)]);
            let mut out = Mat::zeros(f, gt.dim(), gi.dim() * gj.dim());
            let (ri, rj) = (gi.group.representatives(), gj.group.representatives());
            for y in 0..gj.dim() {
                let lift = es.lift(&rj.column(y), j)?;
                for x in 0..gi.dim() {
                    let prod = es.cup_lifted(&am, &ri.column(x), i, &lift)?;
                    if !gt.group.is_cycle(&prod) {
                        return Err(Error::Verification(format!("product in degrees ({i}, {j}) is not a cocycle")));
                    }
                    out.set_block(0, x * gj.dim() + y, &gt.group.class_of(&prod));
                }
            }
            Ok(((i, j), out))
        });
        let table = results.into_iter().collect::<Result<BTreeMap<_, _>>>()?;
        let eps = es.t.eps.as_ref().ok_or_else(|| Error::Precondition("window has no augmentation".into()))?;
        let d2 = es.t.d2();
        let one = Mat::from_fn(f, es.t.rank(0) * am.dim(), 1, |k, _| eps.get(k % am.dim(), (k / am.dim()) * d2));
        let unit = groups[&0].group.class_of(&one);
        Ok(RingTable { bound, dims, table, unit })
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    /// `x ∪ y` for coordinate vectors `x ∈ Ĥⁱ`, `y ∈ Ĥʲ`.
    pub fn product(&self, i: i64, x: &Mat, j: i64, y: &Mat) -> Result<Mat> {
        let t = self
            .table
            .get(&(i, j))
            .ok_or_else(|| Error::Window(format!("products of degrees ({i}, {j}) are not tabulated")))?;
        Ok(t.matmul(&x.kron(y)))
    }

    pub fn verify(&self) -> Result<RingReport> {
        let f = self.unit.field();
        let b = self.bound;
        let basis = |n: i64, k: usize| Mat::unit_vector(f, self.dim(n), k);
        let mut rep = RingReport::default();
        for j in -2 * b..=2 * b {
            for y in 0..self.dim(j) {
                let e = basis(j, y);
                if self.product(0, &self.unit, j, &e)? != e || self.product(j, &e, 0, &self.unit)? != e {
                    return Err(Error::Verification(format!("unit law fails on basis class {y} of degree {j}")));
                }
                rep.unit_checks += 1;
            }
        }
        for i in -b..=b {
            for j in -b..=b {
                let sign = neg_one_pow(f, i * j);
                for x in 0..self.dim(i) {
                    for y in 0..self.dim(j) {
                        let (ex, ey) = (basis(i, x), basis(j, y));
                        if self.product(i, &ex, j, &ey)? != self.product(j, &ey, i, &ex)?.scale(&sign) {
                            return Err(Error::Verification(format!("graded commutativity fails in degrees ({i}, {j})")));
                        }
                        rep.commutativity_checks += 1;
                        for k in -b..=b {
                            for z in 0..self.dim(k) {
                                let ez = basis(k, z);
                                let left = self.product(i + j, &self.product(i, &ex, j, &ey)?, k, &ez)?;
                                let right = self.product(i, &ex, j + k, &self.product(j, &ey, k, &ez)?)?;
                                if left != right {
                                    return Err(Error::Verification(format!("associativity fails in degrees ({i}, {j}, {k})")));
                                }
                                rep.associativity_checks += 1;
                            }
                        }
                    }
                }
            }
        }
        Ok(rep)
    }

    /// Whether `Ĥⁿ` is spanned by `Ĥ¹ ∪ Ĥⁿ⁻¹` (n ≥ 2) or `Ĥ⁻¹ ∪ Ĥⁿ⁺¹` (n ≤ −2), for `2 ≤ |n| ≤ 2D`,
    /// and `Ĥ⁰` by the unit and `Ĥ¹ ∪ Ĥ⁻¹`.
    pub fn generated_in_degrees_pm1(&self) -> bool {
        let b = self.bound;
        let spans = |n: i64, i: i64| -> bool {
            let j = n - i;
            match self.table.get(&(i, j)) {
                Some(t) => {
                    let extra = if n == 0 { Some(&self.unit) } else { None };
                    let all = match extra {
                        Some(u) => Mat::hstack(t.field(), t.rows(), &[t, u]),
                        None => t.clone(),
                    };
                    all.rank() == self.dim(n)
                }
                None => false,
            }
        };
        (2..=2 * b).all(|n| spans(n, 1)) && (-2 * b..=-2).all(|n| spans(n, -1)) && spans(0, 1)
    }
}
