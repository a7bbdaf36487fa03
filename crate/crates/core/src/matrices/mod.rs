//! Dense square matrices over Q(zeta_n), the structured builders used by
//! the identity checks, and exact det / permanent kernels.

mod charpoly;
mod derangement;
mod det;
mod io;
mod permanent;

use std::collections::BTreeSet;
use std::fmt;

pub use charpoly::charpoly_exact;
pub use derangement::{
    derangement_sums, derangement_sums_enumerated, derangement_sums_from_per_det, DerangementSums,
};
pub use det::{det_exact, det_leibniz};
pub use io::MatrixFile;
pub use permanent::{permanent_naive, permanent_ryser, NAIVE_PERMANENT_CAP};

use crate::error::{Error, Result};
use crate::exact::{CycElem, CyclotomicContext};

/// Dimension caps for the exponential-time kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub permanent_dim: usize,
    pub enumeration_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            permanent_dim: 16,
            enumeration_dim: 11,
        }
    }
}

/// Where a matrix came from; carried for reporting only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Sun,
    Cp,
    Minor,
    Scaled,
    Custom,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Sun => "sun",
            Provenance::Cp => "cp",
            Provenance::Minor => "minor",
            Provenance::Scaled => "scaled",
            Provenance::Custom => "custom",
        })
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    ctx: CyclotomicContext,
    dim: usize,
    entries: Vec<CycElem>,
    provenance: Provenance,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix({}, {}x{}, {})", self.ctx.n(), self.dim, self.dim, self.provenance)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| self.get(r, c).to_exact_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ExactMatrix {
    pub fn from_rows(ctx: &CyclotomicContext, rows: Vec<Vec<CycElem>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a {dim}x{dim} matrix",
                    row.len()
                )));
            }
            for e in row {
                if e.context() != ctx {
                    return Err(Error::ContextMismatch {
                        left: ctx.n(),
                        right: e.context().n(),
                    });
                }
                entries.push(e);
            }
        }
        Ok(ExactMatrix {
            ctx: ctx.clone(),
            dim,
            entries,
            provenance: Provenance::Custom,
        })
    }

    pub(crate) fn from_fn(
        ctx: &CyclotomicContext,
        dim: usize,
        provenance: Provenance,
        mut f: impl FnMut(usize, usize) -> CycElem,
    ) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        ExactMatrix {
            ctx: ctx.clone(),
            dim,
            entries,
            provenance,
        }
    }

    pub fn identity(ctx: &CyclotomicContext, dim: usize) -> Self {
        Self::from_fn(ctx, dim, Provenance::Custom, |r, c| {
            if r == c {
                ctx.one()
            } else {
                ctx.zero()
            }
        })
    }

    pub fn diagonal(ctx: &CyclotomicContext, diag: &[CycElem]) -> Self {
        Self::from_fn(ctx, diag.len(), Provenance::Custom, |r, c| {
            if r == c {
                diag[r].clone()
            } else {
                ctx.zero()
            }
        })
    }

    pub fn context(&self) -> &CyclotomicContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// 0-based access.
    pub fn get(&self, row: usize, col: usize) -> &CycElem {
        &self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[CycElem]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.dim, self.provenance, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, factor: &CycElem) -> Self {
        Self::from_fn(&self.ctx, self.dim, self.provenance, |r, c| self.get(r, c) * factor)
    }

    pub fn is_zero_diagonal(&self) -> bool {
        (0..self.dim).all(|i| self.get(i, i).is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| r == c || self.get(r, c).is_zero()))
    }
}

fn sun_entry_table(ctx: &CyclotomicContext) -> Vec<CycElem> {
    // 1 / (1 - zeta^d) for d in 0..n; index 0 is unused
    let n = ctx.n() as i64;
    (0..n)
        .map(|d| {
            if d == 0 {
                ctx.zero()
            } else {
                (&ctx.one() - &ctx.zeta_pow(d))
                    .try_inv()
                    .expect("zeta^d != 1 for 0 < d < n")
            }
        })
        .collect()
}

/// The n x n matrix with zero diagonal and entry `(j, k) = 1 / (1 - zeta^(j-k))`.
///
/// With `transpose` set, entry `(j, k)` is `1 / (1 - zeta^(k-j))`, which is
/// `1 - 1/(1 - zeta^(j-k))`.
pub fn build_sun_matrix(ctx: &CyclotomicContext, transpose: bool) -> ExactMatrix {
    let table = sun_entry_table(ctx);
    let n = ctx.n() as i64;
    ExactMatrix::from_fn(ctx, ctx.n() as usize, Provenance::Sun, |r, c| {
        let diff = if transpose { c as i64 - r as i64 } else { r as i64 - c as i64 };
        table[diff.rem_euclid(n) as usize].clone()
    })
}

/// Entries `(1 - delta_jk)(1 + i cot((j-k) pi / n))`, i.e. twice the Sun matrix.
pub fn build_cp_matrix(ctx: &CyclotomicContext) -> ExactMatrix {
    let two = ctx.from_integer(2);
    build_sun_matrix(ctx, false).scale(&two).with_provenance(Provenance::Cp)
}

/// Principal sub-matrix after deleting the given 1-based rows and columns.
pub fn delete_rows_cols(m: &ExactMatrix, deleted: &[usize]) -> Result<ExactMatrix> {
    let set: BTreeSet<usize> = deleted.iter().copied().collect();
    if let Some(&bad) = set.iter().find(|&&i| i == 0 || i > m.dim) {
        return Err(Error::InvalidArgument(format!(
            "index {bad} outside 1..={}",
            m.dim
        )));
    }
    if set.len() >= m.dim && m.dim > 0 {
        return Err(Error::InvalidArgument(
            "cannot delete every row and column".into(),
        ));
    }
    if set.is_empty() {
        return Ok(m.clone());
    }
    let keep: Vec<usize> = (0..m.dim).filter(|i| !set.contains(&(i + 1))).collect();
    Ok(ExactMatrix::from_fn(&m.ctx, keep.len(), Provenance::Minor, |r, c| {
        m.get(keep[r], keep[c]).clone()
    }))
}

/// `diag(1 - zeta^(i s))` for `i = 1..n-1`; `n` odd, `0 < |s| <= (n-1)/2`.
pub fn build_bs_diagonal(ctx: &CyclotomicContext, s: i64) -> Result<ExactMatrix> {
    let n = ctx.n() as i64;
    if n % 2 == 0 {
        return Err(Error::Parity(format!("diagonal scaling needs odd n, got {n}")));
    }
    let half = (n - 1) / 2;
    if s == 0 || s.abs() > half {
        return Err(Error::InvalidArgument(format!(
            "s must be a nonzero integer in [-{half}, {half}], got {s}"
        )));
    }
    let diag: Vec<CycElem> = (1..n).map(|i| &ctx.one() - &ctx.zeta_pow(i * s)).collect();
    Ok(ExactMatrix::diagonal(ctx, &diag))
}

pub fn matmul(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    if a.ctx != b.ctx {
        return Err(Error::ContextMismatch {
            left: a.ctx.n(),
            right: b.ctx.n(),
        });
    }
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            a.dim, a.dim, b.dim, b.dim
        )));
    }
    let provenance = if b.is_diagonal() {
        Provenance::Scaled
    } else {
        Provenance::Custom
    };
    let d = a.dim;
    let ctx = a.ctx.clone();
    Ok(ExactMatrix::from_fn(&ctx, d, provenance, |r, c| {
        let mut acc = ctx.zero();
        for k in 0..d {
            let (x, y) = (a.get(r, k), b.get(k, c));
            if !x.is_zero() && !y.is_zero() {
                acc = &acc + &(x * y);
            }
        }
        acc
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::cyc_context;
    use crate::exact::rational::rational;

    #[test]
    fn sun_two_by_two() {
        let ctx = cyc_context(2).unwrap();
        let m = build_sun_matrix(&ctx, false);
        let half = ctx.from_rational(&rational(1, 2));
        assert_eq!(m.get(0, 1), &half);
        assert_eq!(m.get(1, 0), &half);
        assert!(m.is_zero_diagonal());
    }

    #[test]
    fn sun_skew_sum_is_one() {
        for n in 2..=20 {
            let ctx = cyc_context(n).unwrap();
            let m = build_sun_matrix(&ctx, false);
            for j in 0..n as usize {
                for k in 0..n as usize {
                    if j != k {
                        assert!((m.get(j, k) + m.get(k, j)).is_one(), "n={n} ({j},{k})");
                    }
                }
            }
        }
    }

    #[test]
    fn transposed_form_matches_one_minus() {
        let ctx = cyc_context(7).unwrap();
        let m = build_sun_matrix(&ctx, false);
        let t = build_sun_matrix(&ctx, true);
        assert_eq!(t, m.transpose());
        for j in 0..7 {
            for k in 0..7 {
                if j != k {
                    assert_eq!(*t.get(j, k), &ctx.one() - m.get(j, k));
                }
            }
        }
    }

    #[test]
    fn sun_entry_embeds_as_cotangent() {
        let ctx = cyc_context(3).unwrap();
        let m = build_sun_matrix(&ctx, false);
        // (j, k) = (1, 2) in 1-based indexing: difference -1
        let z = m.get(0, 1).to_complex();
        let cot = 1.0 / (-std::f64::consts::PI / 3.0).tan();
        assert!((z.re - 0.5).abs() < 1e-12 && (z.im - 0.5 * cot).abs() < 1e-12);
    }

    #[test]
    fn cp_is_twice_sun_and_hermitian() {
        for n in 2..=9 {
            let ctx = cyc_context(n).unwrap();
            let sun = build_sun_matrix(&ctx, false);
            let cp = build_cp_matrix(&ctx);
            let two = ctx.from_integer(2);
            for j in 0..n as usize {
                for k in 0..n as usize {
                    assert_eq!(*cp.get(j, k), sun.get(j, k) * &two);
                    assert_eq!(*cp.get(k, j), cp.get(j, k).conj());
                }
            }
        }
        let ctx = cyc_context(4).unwrap();
        let z = build_cp_matrix(&ctx).get(0, 1).to_complex();
        assert!((z.re - 1.0).abs() < 1e-12 && (z.im + 1.0).abs() < 1e-12);
    }

    #[test]
    fn deletion() {
        let ctx = cyc_context(3).unwrap();
        let m = build_sun_matrix(&ctx, false);
        let minor = delete_rows_cols(&m, &[3]).unwrap();
        assert_eq!(minor.dim(), 2);
        assert_eq!(minor.provenance(), Provenance::Minor);
        let a = (&ctx.one() - &ctx.zeta_pow(-1)).try_inv().unwrap();
        let b = (&ctx.one() - &ctx.zeta_pow(1)).try_inv().unwrap();
        assert_eq!(minor.get(0, 1), &a);
        assert_eq!(minor.get(1, 0), &b);
        assert!(minor.get(0, 0).is_zero());
        assert_eq!(delete_rows_cols(&m, &[]).unwrap(), m);
        assert!(delete_rows_cols(&m, &[0]).is_err());
        assert!(delete_rows_cols(&m, &[4]).is_err());
        assert!(delete_rows_cols(&m, &[1, 2, 3]).is_err());

        let ctx7 = cyc_context(7).unwrap();
        let m7 = build_sun_matrix(&ctx7, false);
        let sub = delete_rows_cols(&m7, &[2, 5]).unwrap();
        let keep = [1usize, 3, 4, 6, 7];
        for (r, &i) in keep.iter().enumerate() {
            for (c, &j) in keep.iter().enumerate() {
                assert_eq!(sub.get(r, c), m7.get(i - 1, j - 1));
            }
        }
    }

    #[test]
    fn bs_diagonal() {
        let ctx = cyc_context(3).unwrap();
        let b = build_bs_diagonal(&ctx, 1).unwrap();
        assert_eq!(*b.get(0, 0), &ctx.one() - &ctx.zeta_pow(1));
        assert_eq!(*b.get(1, 1), &ctx.one() - &ctx.zeta_pow(2));
        assert!(b.get(0, 1).is_zero());
        assert!(build_bs_diagonal(&ctx, 0).is_err());
        assert!(build_bs_diagonal(&ctx, 2).is_err());
        assert!(build_bs_diagonal(&cyc_context(4).unwrap(), 1).is_err());

        let ctx5 = cyc_context(5).unwrap();
        let plus = build_bs_diagonal(&ctx5, 1).unwrap();
        let minus = build_bs_diagonal(&ctx5, -1).unwrap();
        assert_eq!(det_exact(&plus), ctx5.from_integer(5));
        for i in 0..4 {
            let (p, m) = (plus.get(i, i).to_complex(), minus.get(i, i).to_complex());
            assert!((p.conj() - m).norm() < 1e-12);
        }
    }

    #[test]
    fn matmul_basics() {
        let ctx = cyc_context(5).unwrap();
        let m = build_sun_matrix(&ctx, false);
        assert_eq!(matmul(&m, &ExactMatrix::identity(&ctx, 5)).unwrap(), m.clone().with_provenance(Provenance::Scaled));
        let d1 = ExactMatrix::diagonal(&ctx, &[ctx.zeta_pow(1), ctx.from_integer(3)]);
        let d2 = ExactMatrix::diagonal(&ctx, &[ctx.zeta_pow(2), ctx.from_integer(-1)]);
        let p = matmul(&d1, &d2).unwrap();
        assert_eq!(p.get(0, 0), &ctx.zeta_pow(3));
        assert_eq!(p.get(1, 1), &ctx.from_integer(-3));
        assert!(p.is_diagonal());
        assert!(matmul(&m, &d1).is_err());
        let other = ExactMatrix::identity(&cyc_context(7).unwrap(), 5);
        assert!(matmul(&m, &other).is_err());
    }

    #[test]
    fn liu_product_det_at_three() {
        let ctx = cyc_context(3).unwrap();
        let minor = delete_rows_cols(&build_sun_matrix(&ctx, false), &[3]).unwrap();
        let p = matmul(&minor, &build_bs_diagonal(&ctx, 1).unwrap()).unwrap();
        assert_eq!(det_exact(&p), ctx.from_integer(-1));
    }

    #[test]
    fn from_rows_validates() {
        let ctx = cyc_context(3).unwrap();
        assert!(ExactMatrix::from_rows(&ctx, vec![vec![ctx.one(), ctx.one()]]).is_err());
        let other = cyc_context(4).unwrap().one();
        assert!(ExactMatrix::from_rows(&ctx, vec![vec![other]]).is_err());
    }
}
