//! Dense univariate polynomial helpers (coefficients low to high).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Rational;

fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Exact quotient of `num` by the monic integer polynomial `den`.
/// Panics if the division leaves a remainder.
fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (dd..num.len()).rev() {
        let c = std::mem::take(&mut rem[k]);
        if c.is_zero() {
            continue;
        }
        for (i, d) in den[..dd].iter().enumerate() {
            rem[k - dd + i] -= &c * d;
        }
        quot[k - dd] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

fn cyclotomic_memo(n: u32, memo: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n % d == 0) {
        let phi_d = cyclotomic_memo(d, memo);
        p = div_exact_monic(&p, &phi_d);
    }
    memo.insert(n, p.clone());
    p
}

/// The n-th cyclotomic polynomial, from `x^n - 1 = prod_{d | n} Phi_d(x)`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    cyclotomic_memo(n, &mut HashMap::new())
}

fn rat_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let lead_inv = b[db].recip();
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = &rem[k] * &lead_inv;
        for (i, bi) in b.iter().enumerate() {
            let t = &c * bi;
            rem[k - db + i] -= t;
        }
        quot[k - db] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn rat_sub_mul(a: &[Rational], q: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let len = a.len().max(q.len() + b.len().saturating_sub(1));
    let mut out = vec![Rational::zero(); len];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, qi) in q.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] -= qi * bj;
        }
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo `m` over Q by the extended Euclidean algorithm.
/// Returns `None` when `gcd(a, m)` is not a unit.
pub fn inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<Rational> = vec![];
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = rat_divmod(&r0, &r1);
        let s2 = rat_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let g_inv = r0[0].recip();
    let (_, mut inv) = rat_divmod(&s0, m);
    for c in inv.iter_mut() {
        *c *= &g_inv;
    }
    Some(inv)
}
