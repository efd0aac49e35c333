//! Brute-force verifiers: morphism and extension computations over the truncated
//! ring, an independent weight scan, and Brauer-character decomposition of
//! reduced principal series of GL₂(k).

mod brauer;
mod cyclo;
mod linalg;
mod modules;
mod scan;

pub use brauer::{brute_jh, det_weight, BrauerTable, ClassKind, ClassRep, Constituents};
pub use cyclo::{cyclotomic_poly, CyclotomicRing};
pub use linalg::{ModPrime, SparseEchelon, SparseVec};
pub use modules::{
    brute_ext_dim, brute_hom_space, brute_models_of_type, module_set, HomSpace, Presentation, UpsilonReport,
};
pub use scan::brute_weight_scan;

/// Size caps for the oracles; exceeding them is an error, never a truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_ep: i64,
    pub max_q: i64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_ep: 50, max_q: 25 }
    }
}
