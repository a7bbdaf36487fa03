use num_complex::Complex64;

use super::roots::durand_kerner;
use crate::error::{Error, Result};
use crate::exact::rational::factorial;
use crate::exact::{cyc_context, CycElem, Rational};
use crate::matrices::{build_bs_diagonal, build_sun_matrix, charpoly_exact, delete_rows_cols, det_exact, matmul};

/// Spectrum and determinant of `M_n B_1`, where `M_n` is the Sun matrix with
/// index `n` deleted and `B_1 = diag(1 - zeta^i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiuCheck {
    pub n: u32,
    /// Roots of the exact characteristic polynomial, sorted by real part.
    pub eigenvalues: Vec<Complex64>,
    /// `-h, ..., -1, 1, ..., h` with `h = (n-1)/2`.
    pub expected: Vec<i64>,
    pub max_deviation: f64,
    pub det: CycElem,
    /// `(-1)^h (h!)^2`.
    pub det_expected: Rational,
}

impl LiuCheck {
    pub fn det_matches(&self) -> bool {
        self.det.as_rational().as_ref() == Some(&self.det_expected)
    }
}

pub fn liu_det_closed_form(n: u32) -> Result<Rational> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Parity(format!("needs odd n >= 3, got {n}")));
    }
    let h = u64::from((n - 1) / 2);
    let f = factorial(h);
    let v = Rational::from_integer(&f * &f);
    Ok(if h % 2 == 1 { -v } else { v })
}

pub fn liu_spectrum_check(n: u32) -> Result<LiuCheck> {
    let det_expected = liu_det_closed_form(n)?;
    let ctx = cyc_context(n)?;
    let minor = delete_rows_cols(&build_sun_matrix(&ctx, false), &[n as usize])?;
    let product = matmul(&minor, &build_bs_diagonal(&ctx, 1)?)?;
    let det = det_exact(&product);
    let coeffs: Vec<Complex64> = charpoly_exact(&product).iter().map(CycElem::to_complex).collect();
    let eigenvalues = durand_kerner(&coeffs)?;
    let h = i64::from((n - 1) / 2);
    let expected: Vec<i64> = (-h..=h).filter(|&k| k != 0).collect();
    let max_deviation = eigenvalues
        .iter()
        .zip(&expected)
        .map(|(z, &k)| (z - Complex64::new(k as f64, 0.0)).norm())
        .fold(0.0, f64::max);
    Ok(LiuCheck {
        n,
        eigenvalues,
        expected,
        max_deviation,
        det,
        det_expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rational_int;

    #[test]
    fn small_cases() {
        let c = liu_spectrum_check(3).unwrap();
        assert_eq!(c.expected, vec![-1, 1]);
        assert_eq!(c.det_expected, rational_int(-1));
        assert!(c.det_matches() && c.max_deviation < 1e-7);
        let c = liu_spectrum_check(5).unwrap();
        assert_eq!(c.det_expected, rational_int(4));
        assert!(c.det_matches() && c.max_deviation < 1e-7);
        assert!(liu_spectrum_check(6).is_err());
    }

    #[test]
    fn up_to_thirteen() {
        for n in (7..=13).step_by(2) {
            let c = liu_spectrum_check(n).unwrap();
            assert!(c.det_matches(), "n={n}");
            assert!(c.max_deviation < 1e-7, "n={n} deviation {}", c.max_deviation);
        }
    }
}
