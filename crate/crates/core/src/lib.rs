//! Exact cyclotomic matrices, permanents, derangement sums, and checks of
//! the determinant/permanent identities for `1 / (1 - zeta^(j-k))` matrices.

pub mod error;
pub mod exact;

pub use error::{Error, Result};
pub mod combinatorics;
pub mod matrices;
pub mod spectral;
pub mod identities;
