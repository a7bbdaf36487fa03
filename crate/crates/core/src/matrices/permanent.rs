use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::ExactMatrix;
use crate::combinatorics::permutations;
use crate::error::{Error, Result};
use crate::exact::{CycElem, CyclotomicContext};

pub const NAIVE_PERMANENT_CAP: usize = 9;

// Matrices at or above this dimension get their subset loop split into
// contiguous Gray-code ranges.
const SPLIT_FROM_DIM: usize = 8;
const CHUNKS: u64 = 256;

fn gray(k: u64) -> u64 {
    k ^ (k >> 1)
}

struct IntegerMatrix<'a> {
    ctx: &'a CyclotomicContext,
    dim: usize,
    // column-major numerators over the common denominator
    cols: Vec<Vec<Vec<BigInt>>>,
    den: BigInt,
}

impl<'a> IntegerMatrix<'a> {
    fn new(m: &'a ExactMatrix) -> Self {
        let d = m.dim();
        let den = (0..d)
            .flat_map(|r| (0..d).map(move |c| (r, c)))
            .fold(BigInt::one(), |acc, (r, c)| acc.lcm(m.get(r, c).denominator()));
        let cols = (0..d)
            .map(|c| {
                (0..d)
                    .map(|r| {
                        let e = m.get(r, c);
                        let f = &den / e.denominator();
                        e.numerators().iter().map(|x| x * &f).collect()
                    })
                    .collect()
            })
            .collect();
        IntegerMatrix {
            ctx: m.context(),
            dim: d,
            cols,
            den,
        }
    }

    fn add_col(&self, sums: &mut [Vec<BigInt>], col: usize, subtract: bool) {
        for (sum, entry) in sums.iter_mut().zip(&self.cols[col]) {
            for (s, e) in sum.iter_mut().zip(entry) {
                if e.is_zero() {
                    continue;
                }
                if subtract {
                    *s -= e;
                } else {
                    *s += e;
                }
            }
        }
    }

    fn row_product(&self, sums: &[Vec<BigInt>]) -> Option<Vec<BigInt>> {
        if sums.iter().any(|s| s.iter().all(Zero::is_zero)) {
            return None;
        }
        let mut acc = sums[0].clone();
        for s in &sums[1..] {
            acc = self.ctx.mul_numerators(&acc, s);
        }
        Some(acc)
    }

    /// Sum of `(-1)^|S| prod_i rowsum_i(S)` over the subsets visited at Gray
    /// steps `k` in `start..end` (`start >= 1`).
    fn partial_sum(&self, start: u64, end: u64) -> Vec<BigInt> {
        let deg = self.ctx.basis_degree();
        let mut acc = vec![BigInt::zero(); deg];
        let mut sums = vec![vec![BigInt::zero(); deg]; self.dim];
        let g0 = gray(start - 1);
        for c in 0..self.dim {
            if g0 >> c & 1 == 1 {
                self.add_col(&mut sums, c, false);
            }
        }
        for k in start..end {
            let bit = k.trailing_zeros() as usize;
            let g = gray(k);
            self.add_col(&mut sums, bit, g >> bit & 1 == 0);
            if let Some(prod) = self.row_product(&sums) {
                let odd = g.count_ones() % 2 == 1;
                for (a, p) in acc.iter_mut().zip(prod) {
                    if odd {
                        *a -= p;
                    } else {
                        *a += p;
                    }
                }
            }
        }
        acc
    }

    fn finish(&self, mut total: Vec<BigInt>) -> CycElem {
        if self.dim % 2 == 1 {
            for t in total.iter_mut() {
                *t = -std::mem::take(t);
            }
        }
        let den = num_traits::pow(self.den.clone(), self.dim);
        CycElem::from_parts(self.ctx, total, den)
    }
}

fn add_into(mut a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

fn chunk_bounds(total: u64, chunks: u64) -> Vec<(u64, u64)> {
    // Gray steps run over 1..total
    let steps = total - 1;
    let chunks = chunks.clamp(1, steps.max(1));
    let size = steps.div_ceil(chunks);
    (0..chunks)
        .map(|i| (1 + i * size, (1 + (i + 1) * size).min(total)))
        .filter(|(s, e)| s < e)
        .collect()
}

/// Ryser over explicit contiguous Gray-code ranges, evaluated sequentially.
#[cfg(test)]
fn ryser_chunked(m: &ExactMatrix, chunks: u64) -> CycElem {
    let im = IntegerMatrix::new(m);
    if im.dim == 0 {
        return m.context().one();
    }
    let deg = m.context().basis_degree();
    let total = chunk_bounds(1 << im.dim, chunks)
        .into_iter()
        .map(|(s, e)| im.partial_sum(s, e))
        .fold(vec![BigInt::zero(); deg], add_into);
    im.finish(total)
}

/// Permanent by Ryser's inclusion-exclusion formula
/// `per(M) = (-1)^d sum_S (-1)^|S| prod_i sum_{j in S} m_ij`,
/// visiting subsets in Gray-code order so each step adds or removes a
/// single column from the running row sums.
///
/// Entries are first brought to a common denominator `D`, so the loop runs
/// in Z[zeta] and the result is divided by `D^d` once at the end.
pub fn permanent_ryser(m: &ExactMatrix, cap: usize) -> Result<CycElem> {
    let d = m.dim();
    if d > cap {
        return Err(Error::CapExceeded {
            what: "permanent",
            dim: d,
            cap,
        });
    }
    if d == 0 {
        return Ok(m.context().one());
    }
    let im = IntegerMatrix::new(m);
    let deg = m.context().basis_degree();
    let bounds = chunk_bounds(1 << d, if d >= SPLIT_FROM_DIM { CHUNKS } else { 1 });
    #[cfg(feature = "parallel")]
    let total = bounds
        .into_par_iter()
        .map(|(s, e)| im.partial_sum(s, e))
        .reduce(|| vec![BigInt::zero(); deg], add_into);
    #[cfg(not(feature = "parallel"))]
    let total = bounds
        .into_iter()
        .map(|(s, e)| im.partial_sum(s, e))
        .fold(vec![BigInt::zero(); deg], add_into);
    Ok(im.finish(total))
}

/// Permanent as the sum over all permutations; oracle for `permanent_ryser`.
pub fn permanent_naive(m: &ExactMatrix) -> Result<CycElem> {
    let d = m.dim();
    if d > NAIVE_PERMANENT_CAP {
        return Err(Error::CapExceeded {
            what: "naive permanent",
            dim: d,
            cap: NAIVE_PERMANENT_CAP,
        });
    }
    let ctx = m.context();
    let mut acc = ctx.zero();
    for p in permutations(d) {
        let mut term = ctx.one();
        for (r, &c) in p.mapping.iter().enumerate() {
            term = &term * m.get(r, c - 1);
            if term.is_zero() {
                break;
            }
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::cyc_context;
    use crate::exact::rational::rational;
    use crate::matrices::{build_sun_matrix, Caps};

    fn int_matrix(ctx: &CyclotomicContext, rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            ctx,
            rows.iter()
                .map(|r| r.iter().map(|&v| ctx.from_integer(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn small_permanents() {
        let ctx = cyc_context(2).unwrap();
        let cap = Caps::default().permanent_dim;
        assert!(permanent_ryser(&ExactMatrix::identity(&ctx, 3), cap).unwrap().is_one());
        let m = int_matrix(&ctx, &[&[1, 2], &[3, 4]]);
        assert_eq!(permanent_ryser(&m, cap).unwrap(), ctx.from_integer(10));
        assert_eq!(permanent_naive(&m).unwrap(), ctx.from_integer(10));
        let sun = build_sun_matrix(&ctx, false);
        assert_eq!(permanent_ryser(&sun, cap).unwrap(), ctx.from_rational(&rational(1, 4)));
    }

    #[test]
    fn all_ones_and_diagonal() {
        let ctx = cyc_context(3).unwrap();
        let ones = int_matrix(&ctx, &[&[1; 4], &[1; 4], &[1; 4], &[1; 4]]);
        assert_eq!(permanent_naive(&ones).unwrap(), ctx.from_integer(24));
        assert_eq!(permanent_ryser(&ones, 16).unwrap(), ctx.from_integer(24));
        let (a, b) = (ctx.zeta_pow(1), ctx.from_rational(&rational(-2, 7)));
        let diag = ExactMatrix::diagonal(&ctx, &[a.clone(), b.clone()]);
        assert_eq!(permanent_naive(&diag).unwrap(), &a * &b);
        assert_eq!(permanent_ryser(&diag, 16).unwrap(), &a * &b);
    }

    #[test]
    fn ryser_matches_naive_on_sun() {
        for n in 2..=7 {
            let ctx = cyc_context(n).unwrap();
            let m = build_sun_matrix(&ctx, false);
            assert_eq!(permanent_ryser(&m, 16).unwrap(), permanent_naive(&m).unwrap(), "n={n}");
        }
    }

    #[test]
    fn chunking_does_not_change_the_result() {
        let ctx = cyc_context(9).unwrap();
        let m = build_sun_matrix(&ctx, false);
        let whole = ryser_chunked(&m, 1);
        for chunks in [2, 3, 7, 64, 1000] {
            assert_eq!(ryser_chunked(&m, chunks), whole);
        }
        assert_eq!(permanent_ryser(&m, 16).unwrap(), whole);
    }

    #[test]
    fn caps_are_enforced() {
        let ctx = cyc_context(2).unwrap();
        let big = ExactMatrix::identity(&ctx, 17);
        assert!(matches!(
            permanent_ryser(&big, 16),
            Err(Error::CapExceeded { dim: 17, cap: 16, .. })
        ));
        assert!(permanent_naive(&ExactMatrix::identity(&ctx, 10)).is_err());
    }
}
