use std::time::Instant;

use rand::seq::index::sample;
use rand::Rng;

use super::{join, IdentityId, VerificationReport, Verdict};
use crate::error::{Error, Result};
use crate::exact::cyc_context;
use crate::matrices::{
    build_sun_matrix, delete_rows_cols, derangement_sums_enumerated, derangement_sums_from_per_det, Caps,
    DerangementSums,
};

// Up to this size the sign classes are enumerated directly and compared
// with the permanent/determinant route.
const DIRECT_ENUMERATION_DIM: usize = 8;
// Transposed sub-matrices are checked as well up to this size.
const TRANSPOSE_CHECK_DIM: usize = 8;

/// Sorted random deletion set of size `k` drawn from `1..=n`.
pub fn random_deletion_set<R: Rng>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    let mut s: Vec<usize> = sample(rng, n, k).into_iter().map(|i| i + 1).collect();
    s.sort_unstable();
    s
}

fn vanishes(sums: &DerangementSums, len: usize) -> bool {
    if len % 2 == 1 {
        sums.even_class.is_zero() && sums.odd_class.is_zero()
    } else {
        sums.class(vanishing_sign(len)).is_zero()
    }
}

/// `(-1)^(len/2 + 1)`.
fn vanishing_sign(len: usize) -> i8 {
    if (len / 2 + 1) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign-class derangement sums of the sub-matrix of
/// `A = ((1 - delta_ij)(1 - 1/(1 - zeta^(i-j))))` left after deleting the
/// 1-based indices in `deleted`. For odd size both classes vanish; for even
/// size `l` the class of sign `(-1)^(l/2+1)` does. One deleted index is
/// accepted as well.
pub fn verify_thm3_1(n: u32, deleted: &[usize], caps: &Caps) -> Result<VerificationReport> {
    let start = Instant::now();
    let ctx = cyc_context(n)?;
    let a = build_sun_matrix(&ctx, true);
    let b = delete_rows_cols(&a, deleted)?;
    let len = b.dim();
    if len > caps.enumeration_dim {
        return Err(Error::CapExceeded {
            what: "derangement sums",
            dim: len,
            cap: caps.enumeration_dim,
        });
    }
    let sums = derangement_sums_from_per_det(&b, caps.permanent_dim)?;
    let mut agree = true;
    let mut notes = Vec::new();
    if len <= DIRECT_ENUMERATION_DIM {
        if derangement_sums_enumerated(&b, caps.enumeration_dim)? != sums {
            agree = false;
            notes.push("enumeration and per/det routes disagree");
        }
        if len <= TRANSPOSE_CHECK_DIM && !vanishes(&derangement_sums_enumerated(&b.transpose(), caps.enumeration_dim)?, len) {
            agree = false;
            notes.push("transposed sub-matrix does not satisfy the conclusion");
        }
    }
    let mut set: Vec<usize> = deleted.to_vec();
    set.sort_unstable();
    set.dedup();
    let (id, lhs, rhs) = if len % 2 == 1 {
        (
            IdentityId::Thm3_1Odd,
            format!("even={} odd={}", sums.even_class.to_exact_string(), sums.odd_class.to_exact_string()),
            "even=0 odd=0".to_string(),
        )
    } else {
        (
            IdentityId::Thm3_1Even,
            sums.class(vanishing_sign(len)).to_exact_string(),
            "0".to_string(),
        )
    };
    let mut report = VerificationReport::new(id, n)
        .sides(lhs, rhs)
        .param("deleted", join(&set))
        .param("k", set.len())
        .param("size", len)
        .verdict(Verdict::from_bool(agree && vanishes(&sums, len)));
    if len % 2 == 0 {
        report = report
            .param("vanishing_sign", format!("{:+}", vanishing_sign(len)))
            .param("surviving_class", sums.class(-vanishing_sign(len)).to_exact_string());
    }
    if set.len() == 1 {
        report = report.note("k = 1 lies outside the stated hypothesis");
    }
    for note in notes {
        report = report.note(note);
    }
    Ok(report.timed(start))
}
