use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::Instant;

use rand::Rng;

use super::{join, IdentityId, VerificationReport, Verdict};
use crate::combinatorics::{derangements, full_cycles, partitions_min2, BlockParity};
use crate::error::{Error, Result};
use crate::exact::rational::rational;
use crate::exact::{CycElem, CyclotomicContext, Rational};

/// `len` pairwise distinct rationals with numerators in [-99, 99] and
/// denominators in [1, 20].
pub fn random_distinct_rationals<R: Rng>(len: usize, rng: &mut R) -> Vec<Rational> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(len);
    while out.len() < len {
        let r = rational(rng.random_range(-99..=99), rng.random_range(1..=20));
        if seen.insert(r.clone()) {
            out.push(r);
        }
    }
    out
}

/// `w[j][k] = 1 / (x_k - x_j)`, 0-based.
fn inverse_differences(xs: &[CycElem]) -> Result<(CyclotomicContext, Vec<Vec<CycElem>>)> {
    let ctx = xs
        .first()
        .ok_or_else(|| Error::InvalidArgument("no points given".into()))?
        .context()
        .clone();
    let mut w = vec![vec![ctx.zero(); xs.len()]; xs.len()];
    for (j, xj) in xs.iter().enumerate() {
        for (k, xk) in xs.iter().enumerate() {
            if j == k {
                continue;
            }
            w[j][k] = xk.try_sub(xj)?.try_inv().map_err(|_| {
                Error::InvalidArgument(format!("points {} and {} coincide", j + 1, k + 1))
            })?;
        }
    }
    Ok((ctx, w))
}

/// `prod_j w[j][tau(j)]` for a 1-based mapping on `support` (0-based indices).
fn cycle_term(ctx: &CyclotomicContext, w: &[Vec<CycElem>], support: &[usize], mapping: &[usize]) -> CycElem {
    mapping
        .iter()
        .enumerate()
        .fold(ctx.one(), |acc, (j, &t)| &acc * &w[support[j]][support[t - 1]])
}

/// Rotation class of the cycle `(1 a_2 ... a_l)`: the sequence `a_2 ... a_l`
/// rotated to start at its minimum.
fn rotation_class(mapping: &[usize]) -> Vec<usize> {
    let mut seq = Vec::with_capacity(mapping.len() - 1);
    let mut cur = mapping[0];
    while cur != 1 {
        seq.push(cur);
        cur = mapping[cur - 1];
    }
    let pos = seq.iter().enumerate().min_by_key(|&(_, v)| v).map_or(0, |(i, _)| i);
    seq.rotate_left(pos);
    seq
}

/// Sum over all full cycles `tau` of `prod_j 1 / (x_tau(j) - x_j)`, checked
/// to vanish. Cycles `(1 a_2 ... a_l)` whose tails are rotations of each
/// other form classes of size `l - 1`; each class sum is checked as well.
///
/// With two points the sum is `-1/(x_1 - x_2)^2`, so `l = 2` is reported as
/// skipped with the computed value.
pub fn verify_lemma3_2(xs: &[CycElem]) -> Result<VerificationReport> {
    let start = Instant::now();
    let len = xs.len();
    if len < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 points, got {len}")));
    }
    let (ctx, w) = inverse_differences(xs)?;
    let support: Vec<usize> = (0..len).collect();
    let mut total = ctx.zero();
    let mut classes: BTreeMap<Vec<usize>, CycElem> = BTreeMap::new();
    for tau in full_cycles(len)? {
        let term = cycle_term(&ctx, &w, &support, &tau.mapping);
        total = &total + &term;
        let slot = classes.entry(rotation_class(&tau.mapping)).or_insert_with(|| ctx.zero());
        *slot = &*slot + &term;
    }
    let points: Vec<String> = xs.iter().map(CycElem::to_exact_string).collect();
    let nonzero_classes = classes.values().filter(|v| !v.is_zero()).count();
    let report = VerificationReport::new(IdentityId::Lemma3_2, len as u32)
        .sides(total.to_exact_string(), "0")
        .param("xs", join(&points))
        .param("classes", classes.len())
        .param("nonzero_classes", nonzero_classes);
    let report = if len == 2 {
        report
            .verdict(Verdict::Skipped)
            .note("the cycle sum only vanishes for more than two points")
    } else {
        report.verdict(Verdict::from_bool(total.is_zero() && nonzero_classes == 0))
    };
    Ok(report.timed(start))
}

/// For odd `l`: the even-sign derangement sum of `prod_j 1/(x_tau(j) - x_j)`,
/// by enumeration, against the sum over partitions into an odd number of
/// blocks of size at least two of `prod_i f(X_i)`, where `f` is the
/// full-cycle sum on a block. Both must agree and vanish.
pub fn verify_eq3_1(xs: &[CycElem]) -> Result<VerificationReport> {
    let start = Instant::now();
    let len = xs.len();
    if len < 3 || len % 2 == 0 {
        return Err(Error::Parity(format!("needs odd length >= 3, got {len}")));
    }
    let (ctx, w) = inverse_differences(xs)?;
    let all: Vec<usize> = (0..len).collect();
    let mut lhs = ctx.zero();
    for tau in derangements(len).filter(|t| t.sign > 0) {
        lhs = &lhs + &cycle_term(&ctx, &w, &all, &tau.mapping);
    }

    let mut block_sums: HashMap<Vec<usize>, CycElem> = HashMap::new();
    let mut rhs = ctx.zero();
    let mut partitions = 0usize;
    for p in partitions_min2(len, Some(BlockParity::Odd)) {
        partitions += 1;
        let mut prod = ctx.one();
        for block in &p.blocks {
            let f = block_sums.entry(block.clone()).or_insert_with(|| {
                let support: Vec<usize> = block.iter().map(|b| b - 1).collect();
                full_cycles(block.len())
                    .expect("blocks have at least two elements")
                    .fold(ctx.zero(), |acc, tau| &acc + &cycle_term(&ctx, &w, &support, &tau.mapping))
            });
            prod = &prod * &*f;
            if prod.is_zero() {
                break;
            }
        }
        rhs = &rhs + &prod;
    }
    let points: Vec<String> = xs.iter().map(CycElem::to_exact_string).collect();
    Ok(VerificationReport::new(IdentityId::Eq3_1, len as u32)
        .sides(lhs.to_exact_string(), rhs.to_exact_string())
        .param("xs", join(&points))
        .param("partitions", partitions)
        .verdict(Verdict::from_bool(lhs == rhs && lhs.is_zero()))
        .timed(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::cyc_context;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn points(vals: &[i64]) -> Vec<CycElem> {
        let ctx = cyc_context(2).unwrap();
        vals.iter().map(|&v| ctx.from_integer(v)).collect()
    }

    #[test]
    fn three_points_cancel() {
        let r = verify_lemma3_2(&points(&[0, 1, 2])).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.lhs, "0");
    }

    #[test]
    fn two_points_do_not_cancel() {
        let r = verify_lemma3_2(&points(&[0, 1])).unwrap();
        assert_eq!(r.verdict, Verdict::Skipped);
        assert_eq!(r.lhs, "-1");
    }

    #[test]
    fn duplicates_rejected() {
        assert!(verify_lemma3_2(&points(&[0, 1, 1])).is_err());
        assert!(verify_eq3_1(&points(&[0, 1, 1])).is_err());
        assert!(verify_eq3_1(&points(&[0, 1, 2, 3])).is_err());
    }

    #[test]
    fn class_partials_vanish_for_random_points() {
        let ctx = cyc_context(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for len in 3..=7 {
            let xs: Vec<CycElem> = random_distinct_rationals(len, &mut rng).iter().map(|r| ctx.from_rational(r)).collect();
            let r = verify_lemma3_2(&xs).unwrap();
            assert_eq!(r.verdict, Verdict::Pass);
            let factorial: usize = (1..len - 1).product();
            assert_eq!(r.parameters["classes"], factorial.to_string());
        }
    }

    #[test]
    fn affine_images_still_cancel() {
        let ctx = cyc_context(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for len in 3..=6 {
            let base = random_distinct_rationals(len, &mut rng);
            let (a, b) = (rational(-7, 3), rational(5, 2));
            let xs: Vec<CycElem> = base.iter().map(|x| ctx.from_rational(&(&a * x + &b))).collect();
            assert_eq!(verify_lemma3_2(&xs).unwrap().verdict, Verdict::Pass);
        }
    }

    #[test]
    fn cyclotomic_points() {
        let ctx = cyc_context(7).unwrap();
        let xs: Vec<CycElem> = (0..5).map(|k| ctx.zeta_pow(k)).collect();
        assert_eq!(verify_lemma3_2(&xs).unwrap().verdict, Verdict::Pass);
        assert_eq!(verify_eq3_1(&xs).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn decomposition_small_odd() {
        let r = verify_eq3_1(&points(&[0, 1, 2])).unwrap();
        assert_eq!((r.verdict, r.lhs.as_str(), r.rhs.as_str()), (Verdict::Pass, "0", "0"));
        let ctx = cyc_context(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for len in [5, 7] {
            let xs: Vec<CycElem> = random_distinct_rationals(len, &mut rng).iter().map(|r| ctx.from_rational(r)).collect();
            assert_eq!(verify_eq3_1(&xs).unwrap().verdict, Verdict::Pass);
        }
    }
}
