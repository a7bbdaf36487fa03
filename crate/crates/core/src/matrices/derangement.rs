use super::{det_exact, permanent_ryser, Caps, ExactMatrix};
use crate::combinatorics::derangements;
use crate::error::{Error, Result};
use crate::exact::rational::rational;
use crate::exact::CycElem;

/// Sums of `prod_j m[j, tau(j)]` over the derangements `tau`, split by sign.
///
/// `signed = even_class - odd_class` and `total = even_class + odd_class`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerangementSums {
    pub total: CycElem,
    pub even_class: CycElem,
    pub odd_class: CycElem,
    pub signed: CycElem,
}

impl DerangementSums {
    /// The class whose sign equals `sign` (+1 or -1).
    pub fn class(&self, sign: i8) -> &CycElem {
        if sign > 0 {
            &self.even_class
        } else {
            &self.odd_class
        }
    }
}

/// Direct enumeration of all derangements.
pub fn derangement_sums_enumerated(m: &ExactMatrix, cap: usize) -> Result<DerangementSums> {
    let d = m.dim();
    if d > cap {
        return Err(Error::CapExceeded {
            what: "derangement enumeration",
            dim: d,
            cap,
        });
    }
    let ctx = m.context();
    let mut even = ctx.zero();
    let mut odd = ctx.zero();
    for tau in derangements(d) {
        let mut term = ctx.one();
        for (r, &c) in tau.mapping.iter().enumerate() {
            term = &term * m.get(r, c - 1);
            if term.is_zero() {
                break;
            }
        }
        if term.is_zero() {
            continue;
        }
        if tau.sign > 0 {
            even = &even + &term;
        } else {
            odd = &odd + &term;
        }
    }
    Ok(DerangementSums {
        total: &even + &odd,
        signed: &even - &odd,
        even_class: even,
        odd_class: odd,
    })
}

/// For a zero-diagonal matrix every non-derangement term of the permanent
/// and determinant vanishes, so `total = per`, `signed = det` and the sign
/// classes are `(per +- det) / 2`.
pub fn derangement_sums_from_per_det(m: &ExactMatrix, permanent_cap: usize) -> Result<DerangementSums> {
    if !m.is_zero_diagonal() {
        return Err(Error::InvalidArgument(
            "permanent/determinant route needs a zero diagonal".into(),
        ));
    }
    let per = permanent_ryser(m, permanent_cap)?;
    let det = det_exact(m);
    let half = rational(1, 2);
    Ok(DerangementSums {
        even_class: (&per + &det).scale(&half),
        odd_class: (&per - &det).scale(&half),
        total: per,
        signed: det,
    })
}

/// Uses the permanent/determinant route for zero-diagonal matrices and
/// enumeration otherwise.
pub fn derangement_sums(m: &ExactMatrix, caps: &Caps) -> Result<DerangementSums> {
    if m.is_zero_diagonal() && m.dim() > 0 {
        derangement_sums_from_per_det(m, caps.permanent_dim)
    } else {
        derangement_sums_enumerated(m, caps.enumeration_dim)
    }
}
