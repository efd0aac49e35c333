//! Serre weights: the explicit set, genericity data, the partition by type index
//! and the predicted shapes.

mod explicit;
mod serre;

pub use explicit::*;
pub use serre::{enumerate_wss, legal_params, SerreWeight, WeightJson, WeightParam, WeightParamJson};
pub(crate) use serre::all_n;
