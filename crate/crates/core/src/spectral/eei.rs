use super::herm::{herm_eigen, HermMatrix, SpectralDecomposition};
use crate::error::{Error, Result};

/// Eigenvalues closer than this to a neighbour make `|v_{i,j}|^2`
/// basis-dependent, and the check is reported as inconclusive.
pub const EEI_GAP_THRESHOLD: f64 = 1e-8;

/// One instance of `|v_{i,j}|^2 prod_{k != i}(l_i - l_k) = prod_k (l_i - mu_k)`
/// where `mu` is the spectrum of the minor with index `j` deleted.
#[derive(Debug, Clone, PartialEq)]
pub struct EeiCheck {
    pub i: usize,
    pub j: usize,
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs - rhs| / (1 + |lhs|)`.
    pub residual: f64,
    /// Distance from `lambda_i` to the nearest other eigenvalue.
    pub gap: f64,
}

impl EeiCheck {
    pub fn conclusive(&self) -> bool {
        self.gap > EEI_GAP_THRESHOLD
    }
}

fn gap(values: &[f64], i: usize) -> f64 {
    values
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .map(|(_, l)| (l - values[i]).abs())
        .fold(f64::INFINITY, f64::min)
}

fn check(full: &SpectralDecomposition, minor_values: &[f64], i: usize, j: usize) -> EeiCheck {
    let li = full.eigenvalues[i - 1];
    let vij = full.component(i, j).norm_sqr();
    let lhs = vij
        * full
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i - 1)
            .map(|(_, lk)| li - lk)
            .product::<f64>();
    let rhs = minor_values.iter().map(|mu| li - mu).product::<f64>();
    EeiCheck {
        i,
        j,
        lhs,
        rhs,
        residual: (lhs - rhs).abs() / (1.0 + lhs.abs()),
        gap: gap(&full.eigenvalues, i - 1),
    }
}

fn minor_spectrum(m: &HermMatrix, j: usize) -> Result<Vec<f64>> {
    if m.dim() == 1 {
        return Ok(Vec::new());
    }
    Ok(herm_eigen(&m.minor(j)?)?.eigenvalues)
}

/// Single `(i, j)` instance, 1-based; both spectra are computed here.
pub fn eei_residual(m: &HermMatrix, i: usize, j: usize) -> Result<EeiCheck> {
    let d = m.dim();
    if i == 0 || i > d || j == 0 || j > d {
        return Err(Error::InvalidArgument(format!(
            "indices ({i}, {j}) outside 1..={d}"
        )));
    }
    let full = herm_eigen(m)?;
    Ok(check(&full, &minor_spectrum(m, j)?, i, j))
}

/// Every `(i, j)` pair, ordered by `j` then `i`, with one decomposition of
/// `m` and one of each minor.
pub fn eei_all(m: &HermMatrix) -> Result<Vec<EeiCheck>> {
    let full = herm_eigen(m)?;
    let d = m.dim();
    let mut out = Vec::with_capacity(d * d);
    for j in 1..=d {
        let mu = minor_spectrum(m, j)?;
        out.extend((1..=d).map(|i| check(&full, &mu, i, j)));
    }
    Ok(out)
}
