use std::time::Instant;

use super::{join, IdentityId, VerificationReport, Verdict};
use crate::error::Result;
use crate::spectral::{
    cp_herm, cp_spectrum_closed_form, eei_all, herm_eigen, lagrange_check, liu_spectrum_check, HermMatrix,
};

/// Spectrum deviation allowed in the Liu check.
pub const LIU_TOL: f64 = 1e-7;
/// Relative coefficient deviation allowed between the interpolated and the
/// numerically rebuilt characteristic polynomial.
pub const LAGRANGE_TOL: f64 = 1e-6;

fn float(x: f64) -> String {
    format!("{x:e}")
}

/// Embedded CP matrix: computed eigenvalues against `2i - n - 1`, and the
/// closed-form eigenvectors' residuals, both within `tol`.
pub fn verify_thm2_1(n: u32, tol: f64) -> Result<VerificationReport> {
    let start = Instant::now();
    let m = cp_herm(n)?;
    let closed = cp_spectrum_closed_form(n)?;
    let computed = herm_eigen(&m)?;
    let deviation = computed
        .eigenvalues
        .iter()
        .zip(&closed.eigenvalues)
        .map(|(a, &b)| (a - b as f64).abs())
        .fold(0.0, f64::max);
    let residual = closed
        .eigenvalues
        .iter()
        .zip(&closed.eigenvectors)
        .map(|(&l, v)| {
            m.apply(v)
                .iter()
                .zip(v)
                .map(|(av, x)| (av - x * l as f64).norm())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    let rounded: Vec<String> = computed.eigenvalues.iter().map(|&x| float(x)).collect();
    Ok(VerificationReport::new(IdentityId::Thm2_1, n)
        .sides(join(&rounded), join(&closed.eigenvalues))
        .param("max_deviation", float(deviation))
        .param("eigenvector_residual", float(residual))
        .param("tol", float(tol))
        .verdict(Verdict::from_bool(deviation <= tol && residual <= tol))
        .timed(start))
}

/// Every `(i, j)` instance of the eigenvector-eigenvalue identity on `m`.
/// Passes when each conclusive instance has residual at most `tol`; if any
/// eigenvalue is degenerate and nothing failed, the report is inconclusive.
pub fn verify_eei_matrix(n: u32, m: &HermMatrix, tol: f64) -> Result<VerificationReport> {
    let start = Instant::now();
    let checks = eei_all(m)?;
    let conclusive: Vec<_> = checks.iter().filter(|c| c.conclusive()).collect();
    let degenerate = checks.len() - conclusive.len();
    let worst = conclusive.iter().map(|c| c.residual).fold(0.0, f64::max);
    let verdict = if worst > tol || worst.is_nan() {
        Verdict::Fail
    } else if degenerate > 0 {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    let mut report = VerificationReport::new(IdentityId::Eei, n)
        .sides(float(worst), float(tol))
        .param("dim", m.dim())
        .param("pairs", checks.len())
        .param("degenerate_pairs", degenerate)
        .param("max_residual", float(worst))
        .verdict(verdict);
    if degenerate > 0 {
        report = report.note("eigenvalue gap below 1e-8 for some i");
    }
    Ok(report.timed(start))
}

/// `det(M_n B_1) = (-1)^((n-1)/2) ((n-1)/2)!^2` exactly, and the spectrum of
/// `M_n B_1` within `LIU_TOL` of `+-1, ..., +-(n-1)/2`.
pub fn verify_eq2_3_liu(n: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    let c = liu_spectrum_check(n)?;
    let roots: Vec<String> = c.eigenvalues.iter().map(|z| float(z.re)).collect();
    let max_imag = c.eigenvalues.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    Ok(VerificationReport::new(IdentityId::Eq2_3Liu, n)
        .sides(c.det.to_exact_string(), &c.det_expected)
        .param("eigenvalues_re", join(&roots))
        .param("max_imag", float(max_imag))
        .param("expected_eigenvalues", join(&c.expected))
        .param("max_deviation", float(c.max_deviation))
        .param("tol", float(LIU_TOL))
        .verdict(Verdict::from_bool(c.det_matches() && c.max_deviation <= LIU_TOL))
        .timed(start))
}

/// Interpolates the CP minor's characteristic polynomial from the node
/// values `(2^(n-1)/n) prod_{k != i}(k - i)` and compares it with the exact
/// characteristic polynomial and with the one rebuilt from the numerical
/// minor spectrum. The `1/(2n)` normalisation is evaluated too and the
/// factor between the two is recorded.
pub fn verify_eq2_4(n: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    let c = lagrange_check(n)?;
    let ok = c.derived_matches_exact && c.max_relative_deviation <= LAGRANGE_TOL;
    let note = format!(
        "node values 1/(2n) prod(k-i) interpolate f / {}; they {} the characteristic polynomial",
        c.printed_factor,
        if c.printed_matches_exact { "match" } else { "do not match" }
    );
    Ok(VerificationReport::new(IdentityId::Eq2_4, n)
        .sides(join(&c.derived), join(&c.exact_charpoly))
        .param("printed_normalisation", join(&c.printed))
        .param("printed_factor", &c.printed_factor)
        .param("max_relative_deviation", float(c.max_relative_deviation))
        .param("tol", float(LAGRANGE_TOL))
        .verdict(Verdict::from_bool(ok))
        .note(&note)
        .timed(start))
}
