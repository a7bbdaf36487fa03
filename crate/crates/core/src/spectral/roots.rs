use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::rational::rational_to_f64;
use crate::exact::Rational;

const MONIC_TOL: f64 = 1e-9;
const MAX_ITERATIONS: usize = 5000;

/// Monic real polynomial, coefficients from the constant term upward.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPoly {
    coeffs: Vec<f64>,
}

impl RealPoly {
    /// Fails unless the leading coefficient is 1 to within `1e-9`.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        match coeffs.last() {
            Some(&lead) if (lead - 1.0).abs() <= MONIC_TOL => {
                let mut coeffs = coeffs;
                *coeffs.last_mut().unwrap() = 1.0;
                Ok(RealPoly { coeffs })
            }
            Some(&lead) => Err(Error::InvalidArgument(format!(
                "polynomial is not monic (leading coefficient {lead})"
            ))),
            None => Err(Error::InvalidArgument("empty polynomial".into())),
        }
    }

    pub fn from_rationals(coeffs: &[Rational]) -> Result<Self> {
        Self::new(coeffs.iter().map(rational_to_f64).collect())
    }

    pub fn from_roots(roots: &[f64]) -> Self {
        let mut c = vec![1.0];
        for &r in roots {
            let mut next = vec![0.0; c.len() + 1];
            for (k, &a) in c.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= r * a;
            }
            c = next;
        }
        RealPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// All complex roots, sorted by real then imaginary part.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let c: Vec<Complex64> = self.coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        durand_kerner(&c)
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Simultaneous Weierstrass (Durand-Kerner) iteration for all roots of a
/// monic complex polynomial, followed by a few Newton steps per root.
/// Roots come back sorted by real then imaginary part.
pub fn durand_kerner(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg];
    if (lead - 1.0).norm() > MONIC_TOL {
        return Err(Error::InvalidArgument("polynomial is not monic".into()));
    }
    let radius = 1.0 + coeffs[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    // starts on a circle, rotated off the real axis so conjugate pairs split
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4;
            Complex64::from_polar(radius * 0.5, angle)
        })
        .collect();
    let mut done = false;
    for _ in 0..MAX_ITERATIONS {
        let mut shift: f64 = 0.0;
        for i in 0..deg {
            let (p, _) = horner(coeffs, z[i]);
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-300, 0.0);
            }
            let step = p / denom;
            z[i] -= step;
            shift = shift.max(step.norm() / (1.0 + z[i].norm()));
        }
        if shift < 1e-13 {
            done = true;
            break;
        }
    }
    if !done {
        return Err(Error::NoConvergence("Durand-Kerner root iteration"));
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(coeffs, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            *zi -= p / dp;
        }
    }
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monic_check() {
        assert!(RealPoly::new(vec![1.0, 2.0]).is_err());
        assert!(RealPoly::new(vec![1.0, 1.0 + 1e-12]).is_ok());
        assert!(RealPoly::new(vec![]).is_err());
    }

    #[test]
    fn recovers_integer_roots() {
        let want: Vec<f64> = (-6..=6).filter(|&k| k != 0).map(f64::from).collect();
        let p = RealPoly::from_roots(&want);
        let got = p.roots().unwrap();
        for (g, w) in got.iter().zip(&want) {
            assert!((g.re - w).abs() < 1e-8 && g.im.abs() < 1e-8, "{g} vs {w}");
        }
    }

    #[test]
    fn complex_roots_of_unity() {
        // x^4 - 1
        let c = [-1.0, 0.0, 0.0, 0.0, 1.0].map(|x| Complex64::new(x, 0.0));
        let got = durand_kerner(&c).unwrap();
        for r in &got {
            assert!((r.powu(4) - 1.0).norm() < 1e-12);
        }
        assert!((got[0] + 1.0).norm() < 1e-12 && (got[3] - 1.0).norm() < 1e-12);
    }

    #[test]
    fn eval_horner() {
        let p = RealPoly::from_roots(&[1.0, 2.0]);
        assert_eq!(p.coeffs(), &[2.0, -3.0, 1.0]);
        assert_eq!(p.eval(3.0), 2.0);
        assert_eq!(p.degree(), 2);
    }
}
