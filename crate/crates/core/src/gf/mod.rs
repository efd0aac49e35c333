//! Finite fields F_{p^m}, the ring k ⊗ k_E in idempotent coordinates, and the
//! truncated polynomial ring (k ⊗ k_E)[u]/u^{ep} with φ and the tame Galois action.

mod field;
mod poly;
mod tensor;

pub use field::{Field, Fq};
pub use tensor::{TensorElt, TruncPoly};

pub(crate) use field::{is_prime, prime_factors};
