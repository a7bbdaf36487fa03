//! Exact arithmetic in the cyclotomic field Q(zeta_n), represented as
//! Q[x] / (Phi_n(x)) with basis 1, zeta, ..., zeta^(phi(n) - 1).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{cyclotomic_polynomial, inverse_mod};
use super::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

struct ContextInner {
    n: u32,
    degree: usize,
    /// Phi_n, monic, low to high; length `degree + 1`.
    modulus: Vec<BigInt>,
    /// zeta^k reduced modulo Phi_n for k in 0..n.
    zeta_powers: Vec<Vec<BigInt>>,
}

/// Shared handle describing Q(zeta_n). Cheap to clone.
#[derive(Clone)]
pub struct CyclotomicContext(Arc<ContextInner>);

impl CyclotomicContext {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "cyclotomic order must be at least 2, got {n}"
            )));
        }
        let modulus = cyclotomic_polynomial(n);
        let degree = modulus.len() - 1;
        let mut zeta_powers = Vec::with_capacity(n as usize);
        for k in 0..n as usize {
            let mut v = vec![BigInt::zero(); degree.max(k + 1)];
            v[k] = BigInt::one();
            reduce_with(&modulus, degree, &mut v);
            zeta_powers.push(v);
        }
        Ok(CyclotomicContext(Arc::new(ContextInner {
            n,
            degree,
            modulus,
            zeta_powers,
        })))
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    /// phi(n), the dimension of the coefficient vectors.
    pub fn basis_degree(&self) -> usize {
        self.0.degree
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.0.modulus
    }

    pub fn zero(&self) -> CycElem {
        CycElem {
            ctx: self.clone(),
            num: vec![BigInt::zero(); self.0.degree],
            den: BigInt::one(),
        }
    }

    pub fn one(&self) -> CycElem {
        self.from_integer(1)
    }

    pub fn from_integer(&self, v: i64) -> CycElem {
        let mut e = self.zero();
        e.num[0] = BigInt::from(v);
        e
    }

    pub fn from_rational(&self, r: &Rational) -> CycElem {
        let mut num = vec![BigInt::zero(); self.0.degree];
        num[0] = r.numer().clone();
        CycElem::from_parts(self, num, r.denom().clone())
    }

    /// zeta^k for any integer k (reduced mod n first).
    pub fn zeta_pow(&self, k: i64) -> CycElem {
        let k = k.rem_euclid(self.0.n as i64) as usize;
        CycElem {
            ctx: self.clone(),
            num: self.0.zeta_powers[k].clone(),
            den: BigInt::one(),
        }
    }

    pub(crate) fn zeta_pow_numerators(&self, k: i64) -> &[BigInt] {
        &self.0.zeta_powers[k.rem_euclid(self.0.n as i64) as usize]
    }

    pub fn from_coeffs(&self, coeffs: &[Rational]) -> Result<CycElem> {
        if coeffs.len() != self.0.degree {
            return Err(Error::InvalidArgument(format!(
                "Q(zeta_{}) needs {} coefficients, got {}",
                self.0.n,
                self.0.degree,
                coeffs.len()
            )));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(CycElem::from_parts(self, num, den))
    }

    /// Parses `n:[c0,c1,...]`, requiring the order to match this context.
    pub fn parse(&self, s: &str) -> Result<CycElem> {
        let (n, coeffs) = split_serialized(s)?;
        if n != self.0.n {
            return Err(Error::ContextMismatch {
                left: self.0.n,
                right: n,
            });
        }
        self.from_coeffs(&coeffs)
    }

    /// Multiplies two reduced integer numerator vectors modulo Phi_n.
    pub(crate) fn mul_numerators(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = self.0.degree;
        let mut out = vec![BigInt::zero(); 2 * d - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    out[i + j] += ai * bj;
                }
            }
        }
        reduce_with(&self.0.modulus, d, &mut out);
        out
    }
}

impl PartialEq for CyclotomicContext {
    fn eq(&self, other: &Self) -> bool {
        self.0.n == other.0.n
    }
}

impl Eq for CyclotomicContext {}

impl fmt::Debug for CyclotomicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.0.n)
    }
}

pub fn cyc_context(n: u32) -> Result<CyclotomicContext> {
    CyclotomicContext::new(n)
}

/// Reduces `v` (any length) modulo the monic `modulus` of degree `d`,
/// leaving exactly `d` coefficients.
fn reduce_with(modulus: &[BigInt], d: usize, v: &mut Vec<BigInt>) {
    for k in (d..v.len()).rev() {
        let c = std::mem::take(&mut v[k]);
        if c.is_zero() {
            continue;
        }
        for (i, m) in modulus[..d].iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            if m.is_one() {
                v[k - d + i] -= &c;
            } else if (-m).is_one() {
                v[k - d + i] += &c;
            } else {
                v[k - d + i] -= &c * m;
            }
        }
    }
    v.resize(d, BigInt::zero());
}

fn split_serialized(s: &str) -> Result<(u32, Vec<Rational>)> {
    let bad = || Error::Parse(format!("expected `n:[c0,c1,...]`, got {s:?}"));
    let (n, rest) = s.trim().split_once(':').ok_or_else(bad)?;
    let n: u32 = n.trim().parse().map_err(|_| bad())?;
    let body = rest
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(bad)?;
    let coeffs = if body.trim().is_empty() {
        vec![]
    } else {
        body.split(',').map(parse_rational).collect::<Result<_>>()?
    };
    Ok((n, coeffs))
}

/// An element of Q(zeta_n): `(num_0 + num_1 zeta + ...) / den` with
/// `den > 0` and `gcd(num_0, ..., num_{d-1}, den) = 1`, so equal field
/// elements have identical representations.
#[derive(Clone)]
pub struct CycElem {
    ctx: CyclotomicContext,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycElem {
    pub(crate) fn from_parts(ctx: &CyclotomicContext, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len(), ctx.basis_degree());
        debug_assert!(!den.is_zero());
        if num.iter().all(Zero::is_zero) {
            return ctx.zero();
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                if !c.is_zero() {
                    g = g.gcd(c);
                }
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c /= &g;
                }
                den /= &g;
            }
        }
        CycElem {
            ctx: ctx.clone(),
            num,
            den,
        }
    }

    pub fn context(&self) -> &CyclotomicContext {
        &self.ctx
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check(&self, other: &CycElem) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch {
                left: self.ctx.n(),
                right: other.ctx.n(),
            });
        }
        Ok(())
    }

    fn combine(&self, other: &CycElem, negate: bool) -> CycElem {
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let l = a * &other.den;
                    let r = b * &self.den;
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect();
            (num, &self.den * &other.den)
        };
        CycElem::from_parts(&self.ctx, num, den)
    }

    pub fn try_add(&self, other: &CycElem) -> Result<CycElem> {
        self.check(other)?;
        Ok(self.combine(other, false))
    }

    pub fn try_sub(&self, other: &CycElem) -> Result<CycElem> {
        self.check(other)?;
        Ok(self.combine(other, true))
    }

    pub fn try_mul(&self, other: &CycElem) -> Result<CycElem> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.ctx.zero());
        }
        let num = self.ctx.mul_numerators(&self.num, &other.num);
        Ok(CycElem::from_parts(&self.ctx, num, &self.den * &other.den))
    }

    pub fn neg(&self) -> CycElem {
        CycElem {
            ctx: self.ctx.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, r: &Rational) -> CycElem {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        CycElem::from_parts(&self.ctx, num, &self.den * r.denom())
    }

    /// Inverse via the field norm: `a^{-1} = prod_{sigma != 1} sigma(a) / N(a)`,
    /// where sigma runs over the automorphisms zeta -> zeta^k, gcd(k, n) = 1.
    /// The product stays in Z[zeta], so no rational coefficient growth occurs.
    pub fn try_inv(&self) -> Result<CycElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.ctx.from_rational(&r.recip()));
        }
        let n = self.ctx.n() as i64;
        let mut adj: Vec<BigInt> = self.ctx.one().num;
        for k in (2..n).filter(|&k| num_integer::gcd(k, n) == 1) {
            let conj = self.galois_numerators(k);
            adj = self.ctx.mul_numerators(&adj, &conj);
        }
        let norm = self.ctx.mul_numerators(&self.num, &adj);
        debug_assert!(norm[1..].iter().all(Zero::is_zero), "norm lies in Q");
        let num = adj.into_iter().map(|c| c * &self.den).collect();
        Ok(CycElem::from_parts(&self.ctx, num, norm[0].clone()))
    }

    /// Inverse by the extended Euclidean algorithm over Q[x]; slower than
    /// [`CycElem::try_inv`] but independent of it.
    pub fn try_inv_euclid(&self) -> Result<CycElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a: Vec<Rational> = self
            .num
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let m: Vec<Rational> = self
            .ctx
            .modulus()
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // Phi_n is irreducible, so any nonzero residue is a unit.
        let mut inv = inverse_mod(&a, &m).expect("nonzero residue modulo an irreducible polynomial");
        inv.resize(self.ctx.basis_degree(), Rational::zero());
        let scaled: Vec<Rational> = inv
            .into_iter()
            .map(|c| c * Rational::from_integer(self.den.clone()))
            .collect();
        self.ctx.from_coeffs(&scaled)
    }

    pub fn try_div(&self, other: &CycElem) -> Result<CycElem> {
        self.check(other)?;
        self.try_mul(&other.try_inv()?)
    }

    pub fn pow(&self, mut e: u32) -> CycElem {
        let mut base = self.clone();
        let mut acc = self.ctx.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn galois_numerators(&self, k: i64) -> Vec<BigInt> {
        let mut num = vec![BigInt::zero(); self.ctx.basis_degree()];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, z) in num.iter_mut().zip(self.ctx.zeta_pow_numerators(k * i as i64)) {
                if !z.is_zero() {
                    *slot += c * z;
                }
            }
        }
        num
    }

    /// Applies the field automorphism zeta -> zeta^k (gcd(k, n) = 1).
    pub fn galois(&self, k: i64) -> Result<CycElem> {
        let n = self.ctx.n() as i64;
        if num_integer::gcd(k.rem_euclid(n), n) != 1 {
            return Err(Error::InvalidArgument(format!(
                "zeta -> zeta^{k} is not an automorphism of Q(zeta_{n})"
            )));
        }
        Ok(CycElem::from_parts(&self.ctx, self.galois_numerators(k), self.den.clone()))
    }

    /// Complex conjugation, i.e. zeta -> zeta^{-1}.
    pub fn conj(&self) -> CycElem {
        self.galois(-1).expect("-1 is a unit mod n")
    }

    /// Evaluates at zeta = exp(2 pi i / n) in double precision.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.ctx.n() as f64;
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = match (c.to_f64(), den.is_finite()) {
                (Some(cf), true) if cf.is_finite() => cf / den,
                _ => Rational::new(c.clone(), self.den.clone())
                    .to_f64()
                    .unwrap_or(f64::NAN),
            };
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n;
            acc += Complex64::from_polar(coeff, theta);
        }
        acc
    }

    /// Human-oriented form: a plain rational when the value is in Q,
    /// otherwise the serialized `n:[...]` form.
    pub fn to_exact_string(&self) -> String {
        match self.as_rational() {
            Some(r) => r.to_string(),
            None => self.to_string(),
        }
    }
}

pub fn cyc_to_complex(a: &CycElem) -> Complex64 {
    a.to_complex()
}

pub fn zeta_pow(ctx: &CyclotomicContext, k: i64) -> CycElem {
    ctx.zeta_pow(k)
}

impl PartialEq for CycElem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycElem {}

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[", self.ctx.n())?;
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for CycElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, _) = split_serialized(s)?;
        CyclotomicContext::new(n)?.parse(s)
    }
}

// Operator forms panic on a context mismatch; use the `try_*` methods
// when the operands may come from different fields.
macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&CycElem> for &CycElem {
            type Output = CycElem;
            fn $method(self, rhs: &CycElem) -> CycElem {
                self.$inner(rhs).expect("cyclotomic context mismatch")
            }
        }
        impl $tr<CycElem> for CycElem {
            type Output = CycElem;
            fn $method(self, rhs: CycElem) -> CycElem {
                (&self).$inner(&rhs).expect("cyclotomic context mismatch")
            }
        }
        impl $tr<&CycElem> for CycElem {
            type Output = CycElem;
            fn $method(self, rhs: &CycElem) -> CycElem {
                (&self).$inner(rhs).expect("cyclotomic context mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        CycElem::neg(self)
    }
}

impl Neg for CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        CycElem::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rational, rational_int};

    fn ctx(n: u32) -> CyclotomicContext {
        cyc_context(n).unwrap()
    }

    #[test]
    fn context_construction() {
        assert!(cyc_context(1).is_err());
        assert!(cyc_context(0).is_err());
        let c2 = ctx(2);
        assert_eq!(c2.basis_degree(), 1);
        assert_eq!(c2.zeta_pow(1), c2.from_integer(-1));
        assert_eq!(ctx(3).basis_degree(), 2);
    }

    #[test]
    fn zeta_powers() {
        let c4 = ctx(4);
        assert_eq!(c4.zeta_pow(2), c4.from_integer(-1));
        let c3 = ctx(3);
        assert!(c3.zeta_pow(3).is_one());
        assert!(c3.zeta_pow(0).is_one());
        let c5 = ctx(5);
        assert_eq!(c5.zeta_pow(-1), c5.zeta_pow(4));
        for k in -12..12 {
            assert!((&c5.zeta_pow(k) * &c5.zeta_pow(-k)).is_one());
        }
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let c = ctx(3);
        assert_eq!(&c.zeta_pow(1) + &c.zeta_pow(2), c.from_integer(-1));
        let a = c.zeta_pow(1).scale(&rational(3, 7));
        assert_eq!(&a + &c.zero(), a);
    }

    #[test]
    fn phi8_at_one_is_two() {
        // expand prod_{gcd(i,8)=1} (x - zeta^i) as a polynomial over Q(zeta_8),
        // then evaluate at x = 1; the independent value is Phi_8(1) = 1 + 1 = 2.
        let c = ctx(8);
        let mut poly = vec![c.one()];
        for i in [1, 3, 5, 7] {
            let root = c.zeta_pow(i);
            let mut next = vec![c.zero(); poly.len() + 1];
            for (k, coef) in poly.iter().enumerate() {
                next[k + 1] = &next[k + 1] + coef;
                next[k] = &next[k] - &(coef * &root);
            }
            poly = next;
        }
        let phi8: Vec<i64> = vec![1, 0, 0, 0, 1];
        for (k, coef) in poly.iter().enumerate() {
            assert_eq!(*coef, c.from_integer(phi8[k]));
        }
        let at_one = poly.iter().fold(c.zero(), |acc, coef| &acc + coef);
        assert_eq!(at_one, c.from_integer(2));

        let direct = [1, 3, 5, 7]
            .iter()
            .fold(c.one(), |acc, &i| &acc * &(&c.one() - &c.zeta_pow(i)));
        assert_eq!(direct, c.from_integer(2));
    }

    #[test]
    fn inverses() {
        let c2 = ctx(2);
        assert_eq!(
            c2.from_integer(2).try_inv().unwrap(),
            c2.from_rational(&rational(1, 2))
        );
        let c3 = ctx(3);
        let a = &c3.one() - &c3.zeta_pow(1);
        let inv = a.try_inv().unwrap();
        assert!((&a * &inv).is_one());
        let b = (&c3.one() - &c3.zeta_pow(2)).try_inv().unwrap();
        assert!((&inv + &b).is_one());
        assert_eq!(c3.zero().try_inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn norm_inverse_agrees_with_euclid() {
        for n in [3u32, 5, 8, 12, 15, 25] {
            let c = ctx(n);
            let a = &(&c.zeta_pow(1).scale(&rational(3, 4)) + &c.zeta_pow(2))
                - &c.from_rational(&rational(-7, 5));
            let b = (&c.one() - &c.zeta_pow(n as i64 - 1)).pow(3);
            for x in [a, b] {
                let inv = x.try_inv().unwrap();
                assert_eq!(inv, x.try_inv_euclid().unwrap(), "n = {n}");
                assert!((&inv * &x).is_one());
            }
        }
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = ctx(3).one();
        let b = ctx(5).one();
        assert!(matches!(
            a.try_add(&b),
            Err(Error::ContextMismatch { left: 3, right: 5 })
        ));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn complex_embedding() {
        let z = ctx(4).zeta_pow(1).to_complex();
        assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let c3 = ctx(3);
        let s = &(&c3.one() + &c3.zeta_pow(1)) + &c3.zeta_pow(2);
        assert!(s.to_complex().norm() < 1e-15);
        let c5 = ctx(5);
        let v = (&c5.one() - &c5.zeta_pow(1)).try_inv().unwrap().to_complex();
        let cot = 1.0 / (std::f64::consts::PI / 5.0).tan();
        assert!((v - Complex64::new(0.5, 0.5 * cot)).norm() < 1e-12);
    }

    #[test]
    fn conjugation_matches_embedding() {
        let c = ctx(7);
        let a = &c.zeta_pow(2).scale(&rational(-5, 3)) + &c.from_integer(4);
        assert!((a.conj().to_complex() - a.to_complex().conj()).norm() < 1e-12);
        assert!(a.galois(7).is_err());
    }

    #[test]
    fn text_round_trip() {
        let c = ctx(5);
        let a = &c.zeta_pow(3).scale(&rational(-2, 9)) + &c.from_rational(&rational(1, 4));
        let s = a.to_string();
        assert_eq!(s.parse::<CycElem>().unwrap(), a);
        assert_eq!(c.parse(&s).unwrap(), a);
        assert!(ctx(7).parse(&s).is_err());
        assert!("5:[1,2]".parse::<CycElem>().is_err());
        assert!("5[1,2,3,4]".parse::<CycElem>().is_err());
        assert_eq!(c.from_rational(&rational(1, 4)).to_exact_string(), "1/4");
        assert_eq!(
            "2:[-3/6]".parse::<CycElem>().unwrap().as_rational(),
            Some(rational(-1, 2))
        );
        assert_eq!(c.from_integer(1).to_string(), "5:[1,0,0,0]");
        let _ = rational_int(0);
    }

    #[test]
    fn minimal_polynomial_consistency() {
        for n in 2..=20u32 {
            let c = ctx(n);
            assert!((&c.zeta_pow(n as i64) - &c.one()).is_zero());
            for k in 1..n as i64 {
                assert!(!(&c.zeta_pow(k) - &c.one()).is_zero(), "n={n} k={k}");
            }
        }
    }
}
