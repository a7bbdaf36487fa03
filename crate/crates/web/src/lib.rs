//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Every export takes plain numbers and returns a JSON string, with an
//! `error` field when the input is out of range.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use cyclosum::exact::{closed_forms, cyc_context};
use cyclosum::matrices::{build_sun_matrix, delete_rows_cols, det_exact, permanent_ryser};
use cyclosum::spectral::{
    cp_herm, cp_spectrum_closed_form, eei_all, herm_eigen, lagrange_check, liu_spectrum_check,
};
use cyclosum::Result;

/// Largest n offered on the page; permanents stay well under a second.
pub const MAX_N: u32 = 13;

fn respond(result: Result<Value>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn check_n(n: u32, min: u32) -> Result<()> {
    if n < min || n > MAX_N {
        return Err(cyclosum::Error::InvalidArgument(format!(
            "n must be between {min} and {MAX_N}, got {n}"
        )));
    }
    Ok(())
}

fn sun_values(n: u32) -> Result<Value> {
    check_n(n, 2)?;
    let ctx = cyc_context(n)?;
    let sun = build_sun_matrix(&ctx, false);
    let forms = closed_forms(n)?;
    if n % 2 == 0 {
        let per = permanent_ryser(&sun, 16)?;
        let rhs = forms.rhs_even()?;
        Ok(json!({
            "n": n,
            "matrix": format!("{n} x {n} Sun matrix"),
            "permanent": per.to_exact_string(),
            "permanent_closed_form": rhs.to_string(),
            "permanent_matches": per == ctx.from_rational(rhs),
            "determinant": det_exact(&sun).to_exact_string(),
        }))
    } else {
        let minor = delete_rows_cols(&sun, &[n as usize])?;
        let per = permanent_ryser(&minor, 16)?;
        let det = det_exact(&minor);
        let (rp, rd) = (forms.rhs_perm()?, forms.rhs_det()?);
        Ok(json!({
            "n": n,
            "matrix": format!("Sun matrix with row and column {n} deleted"),
            "permanent": per.to_exact_string(),
            "permanent_closed_form": rp.to_string(),
            "permanent_matches": per == ctx.from_rational(rp),
            "determinant": det.to_exact_string(),
            "determinant_closed_form": rd.to_string(),
            "determinant_matches": det == ctx.from_rational(rd),
        }))
    }
}

/// Exact permanent and determinant of the Sun matrix (even `n`) or its
/// minor (odd `n`) next to their closed forms.
#[wasm_bindgen]
pub fn sun_identities(n: u32) -> String {
    respond(sun_values(n))
}

fn cp_values(n: u32) -> Result<Value> {
    check_n(n, 2)?;
    let m = cp_herm(n)?;
    let computed = herm_eigen(&m)?.eigenvalues;
    let closed = cp_spectrum_closed_form(n)?.eigenvalues;
    let deviation = computed
        .iter()
        .zip(&closed)
        .map(|(a, &b)| (a - b as f64).abs())
        .fold(0.0, f64::max);
    let eei = eei_all(&m)?;
    let worst = eei.iter().map(|c| c.residual).fold(0.0, f64::max);
    let lagrange = lagrange_check(n)?;
    Ok(json!({
        "n": n,
        "eigenvalues": computed,
        "closed_form": closed,
        "max_deviation": deviation,
        "eei_pairs": eei.len(),
        "eei_max_residual": worst,
        "minor_charpoly": lagrange.exact_charpoly.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "interpolation_matches": lagrange.derived_matches_exact,
        "printed_normalisation_factor": lagrange.printed_factor.to_string(),
    }))
}

/// Numerical spectrum of the CP matrix against `2i - n - 1`, the
/// eigenvector-eigenvalue identity over all `(i, j)`, and the interpolated
/// characteristic polynomial of the minor.
#[wasm_bindgen]
pub fn cp_spectrum(n: u32) -> String {
    respond(cp_values(n))
}

fn liu_values(n: u32) -> Result<Value> {
    check_n(n, 3)?;
    let c = liu_spectrum_check(n)?;
    Ok(json!({
        "n": n,
        "eigenvalues": c.eigenvalues.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        "expected": c.expected,
        "max_deviation": c.max_deviation,
        "determinant": c.det.to_exact_string(),
        "determinant_closed_form": c.det_expected.to_string(),
        "determinant_matches": c.det_matches(),
    }))
}

/// Roots of the exact characteristic polynomial of `M_n diag(1 - zeta^i)`
/// for odd `n`, with its determinant.
#[wasm_bindgen]
pub fn liu_spectrum(n: u32) -> String {
    respond(liu_values(n))
}
