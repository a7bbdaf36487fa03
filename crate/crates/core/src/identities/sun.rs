use std::time::Instant;

use super::{IdentityId, VerificationReport, Verdict};
use crate::error::{Error, Result};
use crate::exact::rational::{double_factorial, factorial, pow2};
use crate::exact::{closed_forms, cyc_context, CycElem, Rational};
use crate::matrices::{build_sun_matrix, delete_rows_cols, det_exact, permanent_ryser, Caps};
use crate::spectral::minor_det_closed_form;

fn signed(v: &CycElem, negate: bool) -> CycElem {
    if negate {
        v.neg()
    } else {
        v.clone()
    }
}

/// Permanent of the n x n Sun matrix against `((n-1)!!)^2 / 2^n`, n even.
/// Also checks `per = (-1)^(n/2) det`, the form in which the permanent is
/// reduced to a determinant.
pub fn verify_eq1_1(n: u32, caps: &Caps) -> Result<VerificationReport> {
    let start = Instant::now();
    let forms = closed_forms(n)?;
    let rhs = forms.rhs_even()?.clone();
    let ctx = cyc_context(n)?;
    let sun = build_sun_matrix(&ctx, false);
    let per = permanent_ryser(&sun, caps.permanent_dim)?;
    let det = det_exact(&sun);
    let relation = per == signed(&det, (n / 2) % 2 == 1);
    let exact = per == ctx.from_rational(&rhs);
    let mut report = VerificationReport::new(IdentityId::Eq1_1, n)
        .sides(per.to_exact_string(), &rhs)
        .param("det", det.to_exact_string())
        .verdict(Verdict::from_bool(exact && relation));
    if !relation {
        report = report.note("per != (-1)^(n/2) det");
    }
    Ok(report.timed(start))
}

/// Permanent of the Sun matrix with one index deleted against
/// `((n-1)/2)!^2 / n`, n odd. Both the last and the first index are deleted
/// and must give the same value, and the even-dimensional minor must
/// satisfy `per = (-1)^((n-1)/2) det`.
pub fn verify_eq1_2(n: u32, caps: &Caps) -> Result<VerificationReport> {
    let start = Instant::now();
    let forms = closed_forms(n)?;
    let rhs = forms.rhs_perm()?.clone();
    let ctx = cyc_context(n)?;
    let sun = build_sun_matrix(&ctx, false);
    let last = delete_rows_cols(&sun, &[n as usize])?;
    let first = delete_rows_cols(&sun, &[1])?;
    if last.dim() > caps.permanent_dim {
        return Err(Error::CapExceeded {
            what: "permanent",
            dim: last.dim(),
            cap: caps.permanent_dim,
        });
    }
    let per_last = permanent_ryser(&last, caps.permanent_dim)?;
    let per_first = permanent_ryser(&first, caps.permanent_dim)?;
    let det_first = det_exact(&first);
    let relation = per_first == signed(&det_first, ((n - 1) / 2) % 2 == 1);
    let target = ctx.from_rational(&rhs);
    let mut report = VerificationReport::new(IdentityId::Eq1_2, n)
        .sides(per_last.to_exact_string(), &rhs)
        .param("deleted", n)
        .param("per_deleted_1", per_first.to_exact_string())
        .param("det_deleted_1", det_first.to_exact_string())
        .verdict(Verdict::from_bool(per_last == target && per_first == target && relation))
        .note("per/det relation uses D(n-1) with products to n-1");
    if per_first != per_last {
        report = report.note("deleting index 1 and index n disagree");
    }
    if !relation {
        report = report.note("per != (-1)^((n-1)/2) det for the minor");
    }
    Ok(report.timed(start))
}

/// Determinant of the Sun minor against `(-1)^((n-1)/2) ((n-1)/2)!^2 / n`,
/// n odd, together with the route through the CP minor:
/// `det = 2^(1-n) (-1)^((n-1)/2) ((n-1)!!)^2 / n` and
/// `(n-1)!! = 2^((n-1)/2) ((n-1)/2)!`.
pub fn verify_eq1_3(n: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    let forms = closed_forms(n)?;
    let rhs = forms.rhs_det()?.clone();
    let ctx = cyc_context(n)?;
    let sun = build_sun_matrix(&ctx, false);
    let det_last = det_exact(&delete_rows_cols(&sun, &[n as usize])?);
    let det_first = det_exact(&delete_rows_cols(&sun, &[1])?);
    let via_cp = minor_det_closed_form(n)? / Rational::from_integer(pow2(n - 1));
    let h = (n - 1) / 2;
    let simplification = double_factorial(i64::from(n) - 1) == pow2(h) * factorial(u64::from(h));
    let target = ctx.from_rational(&rhs);
    let ok = det_last == target && det_first == target && via_cp == rhs && simplification;
    let mut report = VerificationReport::new(IdentityId::Eq1_3, n)
        .sides(det_last.to_exact_string(), &rhs)
        .param("deleted", n)
        .param("det_deleted_1", det_first.to_exact_string())
        .param("cp_minor_route", &via_cp)
        .verdict(Verdict::from_bool(ok));
    if !simplification {
        report = report.note("double factorial simplification fails");
    }
    if via_cp != rhs {
        report = report.note("2^(1-n) |M_n| disagrees with the closed form");
    }
    Ok(report.timed(start))
}
