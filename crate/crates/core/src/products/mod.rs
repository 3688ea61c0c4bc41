//! Cup and cap products on Tate-Hochschild (co)homology, computed two ways:
//! through an explicit diagonal on a complete window, and through chain lifts
//! on the minimal complete resolution.

pub mod compat;
pub mod diagonal;
pub mod duality;
pub mod es;
pub mod ring;

use crate::bimod::Bimodule;
use crate::exactla::Mat;

pub use compat::{verify_compatibility, verify_engine_agreement, CompatReport, EngineAgreement};
pub use diagonal::{cap_via_diagonal, cup_via_diagonal, DiagonalWindow, Frames};
pub use duality::{fundamental_class_bar, fundamental_class_on, verify_dual_dimensions, Duality, DualityRow, FundamentalClass};
pub use ring::{RingReport, RingTable};
pub use es::{comparison, lift_augmented, pull_back, push_forward, ChainLift, EsEngine, StableClass};

/// A bilinear pairing `M × N → out` given by a projection from `M ⊗_k N`
/// (index `x·dim N + y`).
#[derive(Clone, Debug)]
pub struct Pairing {
    pub m: Bimodule,
    pub n: Bimodule,
    pub out: Bimodule,
    pub proj: Mat,
}

impl Pairing {
    /// `M ⊗_A N` itself.
    pub fn tensor(m: &Bimodule, n: &Bimodule) -> Pairing {
        let (out, proj) = m.tensor_over_a(n);
        Pairing { m: m.clone(), n: n.clone(), out, proj }
    }

    /// Multiplication `A ⊗_A N → N`.
    pub fn left_unit(n: &Bimodule) -> Pairing {
        let a = Bimodule::regular(n.alg());
        let d = a.dim();
        let nd = n.dim();
        let mut proj = Mat::zeros(n.field(), nd, d * nd);
        for p in 0..d {
            proj.set_block(0, p * nd, n.left(p));
        }
        Pairing { m: a, n: n.clone(), out: n.clone(), proj }
    }

    /// Right action `M ⊗_A ₁A_β → ₁M_β`, `m ⊗ a ↦ m·a`.
    pub fn right_action(m: &Bimodule, beta: &Mat) -> Pairing {
        let a = m.alg().clone();
        let d = a.dim();
        let id = Mat::identity(a.field(), d);
        let n = Bimodule::regular(&a).twist(&id, beta);
        let out = m.twist(&id, beta);
        let md = m.dim();
        let mut proj = Mat::zeros(m.field(), md, md * d);
        for x in 0..md {
            for k in 0..d {
                proj.set_block(0, x * d + k, &m.right(k).column(x));
            }
        }
        Pairing { m: m.clone(), n, out, proj }
    }
}
