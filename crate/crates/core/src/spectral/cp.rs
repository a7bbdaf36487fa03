use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::herm::{herm_eigen, HermMatrix};
use super::roots::RealPoly;
use crate::error::{Error, Result};
use crate::exact::rational::{double_factorial, pow2, rational_int, rational_to_f64};
use crate::exact::{cyc_context, Rational};
use crate::matrices::{build_cp_matrix, charpoly_exact, delete_rows_cols};

/// Integer spectrum `lambda_i = 2i - n - 1` and unit eigenvectors
/// `v_i[j] = exp(-2 pi i * i j / n) / sqrt(n)` of the n x n CP matrix, both
/// indexed from `i = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CpSpectrum {
    pub eigenvalues: Vec<i64>,
    pub eigenvectors: Vec<Vec<Complex64>>,
}

pub fn cp_spectrum_closed_form(n: u32) -> Result<CpSpectrum> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    let nf = f64::from(n);
    let norm = nf.sqrt().recip();
    let eigenvalues = (1..=i64::from(n)).map(|i| 2 * i - i64::from(n) - 1).collect();
    let eigenvectors = (1..=u64::from(n))
        .map(|i| {
            (1..=u64::from(n))
                .map(|j| {
                    // reduce i*j mod n before scaling so large n keeps full precision
                    let k = (i * j) % u64::from(n);
                    Complex64::from_polar(norm, -2.0 * std::f64::consts::PI * k as f64 / nf)
                })
                .collect()
        })
        .collect();
    Ok(CpSpectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Embedded n x n CP matrix.
pub fn cp_herm(n: u32) -> Result<HermMatrix> {
    HermMatrix::from_exact(&build_cp_matrix(&cyc_context(n)?))
}

/// `(-1)^((n-1)/2) ((n-1)!!)^2 / n`, the determinant of the CP matrix with
/// its last row and column removed.
pub fn minor_det_closed_form(n: u32) -> Result<Rational> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Parity(format!("needs odd n >= 3, got {n}")));
    }
    let df = double_factorial(i64::from(n) - 1);
    let mut v = Rational::new(&df * &df, BigInt::from(n));
    if (n - 1) / 2 % 2 == 1 {
        v = -v;
    }
    Ok(v)
}

/// Which values to place at the interpolation nodes `x_i = n + 1 - 2i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeValues {
    /// `|v_{i,n}|^2 prod_{k != i} (lambda_i - lambda_k) = (2^(n-1)/n) prod_{k != i} (k - i)`.
    Derived,
    /// `(1/(2n)) prod_{k != i} (k - i)`, as usually printed.
    Printed,
}

/// Nodes and values for the interpolation of the characteristic polynomial
/// of the CP minor with its last index deleted.
pub fn lagrange_nodes(n: u32, which: NodeValues) -> Result<Vec<(Rational, Rational)>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    let n = i64::from(n);
    let prefactor = match which {
        NodeValues::Derived => Rational::new(pow2((n - 1) as u32), BigInt::from(n)),
        NodeValues::Printed => Rational::new(BigInt::one(), BigInt::from(2 * n)),
    };
    Ok((1..=n)
        .map(|i| {
            let prod: BigInt = (1..=n).filter(|&k| k != i).map(|k| BigInt::from(k - i)).product();
            (rational_int(n + 1 - 2 * i), &prefactor * Rational::from_integer(prod))
        })
        .collect())
}

/// Exact Lagrange interpolation; coefficients low to high.
pub fn lagrange_interpolate(points: &[(Rational, Rational)]) -> Vec<Rational> {
    let m = points.len();
    let mut out = vec![Rational::zero(); m];
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (k, (xk, _)) in points.iter().enumerate() {
            if k == i {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (t, b) in basis.iter().enumerate() {
                next[t + 1] += b;
                next[t] -= b * xk;
            }
            basis = next;
            denom *= xi - xk;
        }
        let w = yi / denom;
        for (o, b) in out.iter_mut().zip(basis) {
            *o += &w * b;
        }
    }
    out
}

pub fn charpoly_lagrange_exact(n: u32, which: NodeValues) -> Result<Vec<Rational>> {
    Ok(lagrange_interpolate(&lagrange_nodes(n, which)?))
}

/// Characteristic polynomial of the CP minor, interpolated from the derived
/// node values.
pub fn charpoly_lagrange(n: u32) -> Result<RealPoly> {
    RealPoly::from_rationals(&charpoly_lagrange_exact(n, NodeValues::Derived)?)
}

/// Exact characteristic polynomial of the CP minor with index `n` deleted.
pub fn cp_minor_charpoly_exact(n: u32) -> Result<Vec<Rational>> {
    let ctx = cyc_context(n)?;
    let minor = delete_rows_cols(&build_cp_matrix(&ctx), &[n as usize])?;
    charpoly_exact(&minor)
        .iter()
        .map(|c| {
            c.as_rational().ok_or_else(|| {
                Error::InvalidArgument(format!("non-rational characteristic coefficient {c}"))
            })
        })
        .collect()
}

/// Characteristic polynomial of the embedded CP minor, rebuilt from its
/// numerically computed eigenvalues.
pub fn cp_minor_charpoly_numeric(n: u32) -> Result<RealPoly> {
    let minor = cp_herm(n)?.minor(n as usize)?;
    Ok(RealPoly::from_roots(&herm_eigen(&minor)?.eigenvalues))
}

/// Outcome of interpolating the CP minor's characteristic polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangeCheck {
    pub n: u32,
    pub derived: Vec<Rational>,
    pub printed: Vec<Rational>,
    pub exact_charpoly: Vec<Rational>,
    /// `max_k |derived_k - numeric_k| / max(1, |numeric_k|)`.
    pub max_relative_deviation: f64,
    pub derived_matches_exact: bool,
    pub printed_matches_exact: bool,
    /// `derived / printed`, the same for every coefficient.
    pub printed_factor: Rational,
}

pub fn lagrange_check(n: u32) -> Result<LagrangeCheck> {
    let derived = charpoly_lagrange_exact(n, NodeValues::Derived)?;
    let printed = charpoly_lagrange_exact(n, NodeValues::Printed)?;
    let exact_charpoly = cp_minor_charpoly_exact(n)?;
    let numeric = cp_minor_charpoly_numeric(n)?;
    let max_relative_deviation = derived
        .iter()
        .zip(numeric.coeffs())
        .map(|(d, &c)| (rational_to_f64(d) - c).abs() / c.abs().max(1.0))
        .fold(0.0, f64::max);
    let lead = derived.len() - 1;
    let printed_factor = &derived[lead] / &printed[lead];
    debug_assert!(derived
        .iter()
        .zip(&printed)
        .all(|(d, p)| p.is_zero() && d.is_zero() || (d / p) == printed_factor));
    Ok(LagrangeCheck {
        n,
        derived_matches_exact: derived == exact_charpoly,
        printed_matches_exact: printed == exact_charpoly,
        derived,
        printed,
        exact_charpoly,
        max_relative_deviation,
        printed_factor: printed_factor.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rational;

    #[test]
    fn closed_form_spectrum() {
        let s = cp_spectrum_closed_form(4).unwrap();
        assert_eq!(s.eigenvalues, vec![-3, -1, 1, 3]);
        let s = cp_spectrum_closed_form(7).unwrap();
        assert_eq!(s.eigenvalues[3], 0);
        for v in &s.eigenvectors {
            for z in v {
                assert!((z.norm_sqr() - 1.0 / 7.0).abs() < 1e-15);
            }
        }
        assert!(cp_spectrum_closed_form(1).is_err());
    }

    #[test]
    fn closed_form_eigenpairs_of_embedded_matrix() {
        for n in 2..=15 {
            let m = cp_herm(n).unwrap();
            let s = cp_spectrum_closed_form(n).unwrap();
            for (l, v) in s.eigenvalues.iter().zip(&s.eigenvectors) {
                let r = m
                    .apply(v)
                    .iter()
                    .zip(v)
                    .map(|(a, x)| (a - x * *l as f64).norm())
                    .fold(0.0, f64::max);
                assert!(r < 1e-8, "n={n} residual {r}");
            }
            let e = herm_eigen(&m).unwrap();
            for (got, want) in e.eigenvalues.iter().zip(&s.eigenvalues) {
                assert!((got - *want as f64).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn minor_determinant_values() {
        assert_eq!(minor_det_closed_form(3).unwrap(), rational(-4, 3));
        assert_eq!(minor_det_closed_form(5).unwrap(), rational(64, 5));
        assert!(minor_det_closed_form(4).is_err());
        for n in [3u32, 5, 7, 9] {
            let e = herm_eigen(&cp_herm(n).unwrap().minor(n as usize).unwrap()).unwrap();
            let prod: f64 = e.eigenvalues.iter().product();
            let want = rational_to_f64(&minor_det_closed_form(n).unwrap());
            assert!((prod - want).abs() <= 1e-6 * want.abs());
        }
    }

    #[test]
    fn interpolation_small_cases() {
        // f(x) = x^2 - 4/3
        assert_eq!(
            charpoly_lagrange_exact(3, NodeValues::Derived).unwrap(),
            vec![rational(-4, 3), rational(0, 1), rational(1, 1)]
        );
        let f = charpoly_lagrange(3).unwrap();
        assert!((f.eval(2.0) - 8.0 / 3.0).abs() < 1e-12);
        assert_eq!(charpoly_lagrange_exact(2, NodeValues::Derived).unwrap(), vec![rational(0, 1), rational(1, 1)]);
        let pts = [(rational(0, 1), rational(1, 1)), (rational(1, 1), rational(3, 1)), (rational(2, 1), rational(7, 1))];
        // x^2 + x + 1
        assert_eq!(lagrange_interpolate(&pts), vec![rational(1, 1); 3]);
    }

    #[test]
    fn derived_values_reproduce_charpoly() {
        for n in [3u32, 5, 7, 9] {
            let c = lagrange_check(n).unwrap();
            assert!(c.derived_matches_exact, "n={n}");
            assert!(!c.printed_matches_exact);
            assert_eq!(c.printed_factor, Rational::from_integer(pow2(n)));
            assert!(c.max_relative_deviation < 1e-6);
        }
        let c = lagrange_check(6).unwrap();
        assert!(c.derived_matches_exact);
    }
}
