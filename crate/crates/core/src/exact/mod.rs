//! Exact scalars: rationals and the cyclotomic field Q(zeta_n).

pub mod closed_forms;
pub mod cyclotomic;
pub(crate) mod poly;
pub mod rational;

pub use closed_forms::{closed_forms, ClosedForms};
pub use cyclotomic::{cyc_context, cyc_to_complex, zeta_pow, CycElem, CyclotomicContext};
pub use poly::cyclotomic_polynomial;
pub use rational::Rational;
