//! Floating-point Hermitian spectra and the checks built on them.

pub mod cp;
pub mod eei;
pub mod herm;
pub mod liu;
pub mod roots;

pub use cp::{
    charpoly_lagrange, charpoly_lagrange_exact, cp_herm, cp_minor_charpoly_exact, cp_minor_charpoly_numeric,
    cp_spectrum_closed_form, lagrange_check, lagrange_interpolate, lagrange_nodes, minor_det_closed_form, CpSpectrum,
    LagrangeCheck, NodeValues,
};
pub use eei::{eei_all, eei_residual, EeiCheck, EEI_GAP_THRESHOLD};
pub use herm::{herm_eigen, HermMatrix, SpectralDecomposition};
pub use liu::{liu_det_closed_form, liu_spectrum_check, LiuCheck};
pub use roots::{durand_kerner, RealPoly};
