//! Exact computations with rank-one Breuil modules carrying tame descent data,
//! their extensions, and the Serre weight sets attached to reducible mod p
//! representations, together with brute-force oracles for all closed forms.

pub mod error;
pub mod breuil;
pub mod chars;
pub mod gf;
pub mod oracle;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
