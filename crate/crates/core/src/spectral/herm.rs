use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::matrices::ExactMatrix;

const HERMITIAN_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Dense complex Hermitian matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermMatrix {
    /// Accepts a row-major matrix that is Hermitian to within `1e-12`
    /// (relative to its largest entry) and symmetrizes it exactly.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        let scale = entries.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let mut sym = entries.clone();
        for r in 0..dim {
            for c in r..dim {
                let (a, b) = (entries[r * dim + c], entries[c * dim + r]);
                if (a - b.conj()).norm() > HERMITIAN_TOL * scale {
                    return Err(Error::InvalidArgument(format!(
                        "matrix is not Hermitian at ({}, {})",
                        r + 1,
                        c + 1
                    )));
                }
                let avg = (a + b.conj()) * 0.5;
                sym[r * dim + c] = avg;
                sym[c * dim + r] = avg.conj();
            }
        }
        Ok(HermMatrix { dim, entries: sym })
    }

    pub fn from_exact(m: &ExactMatrix) -> Result<Self> {
        let d = m.dim();
        let entries = (0..d)
            .flat_map(|r| (0..d).map(move |c| (r, c)))
            .map(|(r, c)| m.get(r, c).to_complex())
            .collect();
        Self::new(d, entries)
    }

    /// Entries with real and imaginary parts uniform in [-1, 1]; real diagonal.
    pub fn random<R: Rng>(dim: usize, rng: &mut R) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            entries[r * dim + r] = Complex64::new(rng.random_range(-1.0..1.0), 0.0);
            for c in r + 1..dim {
                let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                entries[r * dim + c] = z;
                entries[c * dim + r] = z.conj();
            }
        }
        HermMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// 0-based access.
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.dim + c]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Principal minor with the 1-based row and column `j` removed.
    pub fn minor(&self, j: usize) -> Result<Self> {
        if j == 0 || j > self.dim {
            return Err(Error::InvalidArgument(format!(
                "index {j} outside 1..={}",
                self.dim
            )));
        }
        let keep: Vec<usize> = (0..self.dim).filter(|&i| i != j - 1).collect();
        let entries = keep
            .iter()
            .flat_map(|&r| keep.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .collect();
        Ok(HermMatrix {
            dim: self.dim - 1,
            entries,
        })
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }
}

/// Eigenvalues in ascending order; `eigenvectors[i]` pairs with
/// `eigenvalues[i]` and has unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<Complex64>>,
}

impl SpectralDecomposition {
    /// `v_{i,j}`, 1-based: component `j` of eigenvector `i`.
    pub fn component(&self, i: usize, j: usize) -> Complex64 {
        self.eigenvectors[i - 1][j - 1]
    }

    /// `max |V^H V - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, u) in self.eigenvectors.iter().enumerate() {
            for (b, v) in self.eigenvectors.iter().enumerate() {
                let dot: Complex64 = u.iter().zip(v).map(|(x, y)| x.conj() * y).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }

    /// `max_i |A v_i - lambda_i v_i|_max`.
    pub fn residual(&self, m: &HermMatrix) -> f64 {
        self.eigenvalues
            .iter()
            .zip(&self.eigenvectors)
            .map(|(&l, v)| {
                m.apply(v)
                    .iter()
                    .zip(v)
                    .map(|(av, x)| (av - x * l).norm())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }
}

/// Cyclic Jacobi on a real symmetric row-major `n x n` matrix. Returns the
/// eigenvalues and the eigenvectors as rows of the returned vector.
fn jacobi_symmetric(mut a: Vec<f64>, n: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let fro = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut converged = fro == 0.0;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let off = (0..n)
            .flat_map(|p| (0..n).map(move |q| (p, q)))
            .filter(|(p, q)| p != q)
            .map(|(p, q)| a[p * n + q] * a[p * n + q])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * fro {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (a[p * n + p], a[q * n + q]);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence("Jacobi eigenvalue iteration"));
    }
    let values = (0..n).map(|i| a[i * n + i]).collect();
    let vectors = (0..n).map(|c| (0..n).map(|r| v[r * n + c]).collect()).collect();
    Ok((values, vectors))
}

fn dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(x, y)| x.conj() * y).sum()
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// `H = R + iI` is embedded as the real symmetric `[[R, -I], [I, R]]`, whose
/// spectrum is that of `H` with every eigenvalue doubled. Each real
/// eigenvector `(a, b)` gives the complex eigenvector `a + ib`; the two
/// copies of an eigenvalue yield complex-parallel vectors, so a
/// largest-residual complex Gram-Schmidt pass keeps exactly one from each pair.
pub fn herm_eigen(m: &HermMatrix) -> Result<SpectralDecomposition> {
    let d = m.dim();
    if d == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    let n = 2 * d;
    let mut real = vec![0.0; n * n];
    for r in 0..d {
        for c in 0..d {
            let z = m.get(r, c);
            real[r * n + c] = z.re;
            real[(r + d) * n + c + d] = z.re;
            real[r * n + c + d] = -z.im;
            real[(r + d) * n + c] = z.im;
        }
    }
    let (_, vectors) = jacobi_symmetric(real, n)?;
    let candidates: Vec<Vec<Complex64>> = vectors
        .iter()
        .map(|v| (0..d).map(|k| Complex64::new(v[k], v[k + d])).collect())
        .collect();

    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    let mut taken = vec![false; n];
    for _ in 0..d {
        let mut best: Option<(usize, f64, Vec<Complex64>)> = None;
        for (idx, cand) in candidates.iter().enumerate() {
            if taken[idx] {
                continue;
            }
            let mut w = cand.clone();
            for b in &basis {
                let proj = dot(b, &w);
                for (wk, bk) in w.iter_mut().zip(b) {
                    *wk -= proj * bk;
                }
            }
            let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|(_, bn, _)| norm > *bn) {
                best = Some((idx, norm, w));
            }
        }
        let (idx, norm, mut w) = best.expect("a remaining candidate");
        if norm < 1e-6 {
            return Err(Error::NoConvergence("complex eigenvector extraction"));
        }
        for z in w.iter_mut() {
            *z /= norm;
        }
        taken[idx] = true;
        basis.push(w);
    }

    let mut pairs: Vec<(f64, Vec<Complex64>)> = basis
        .into_iter()
        .map(|v| {
            let l = dot(&v, &m.apply(&v)).re;
            (l, v)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (eigenvalues, eigenvectors) = pairs.into_iter().unzip();
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}
