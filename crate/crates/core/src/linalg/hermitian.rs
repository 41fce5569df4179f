//! Complex Hermitian matrices on top of the real eigensolver.
//!
//! A Hermitian `H = X + iY` is diagonalized through the real symmetric
//! embedding `[[X, −Y], [Y, X]]`, whose spectrum is that of `H` with every
//! eigenvalue doubled. Each doubled pair is folded back into one complex
//! eigenvector by complex Gram–Schmidt inside the eigenvalue cluster.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{symmetric_eigendecomposition, RealMatrix};
use crate::error::{GptError, Result};

/// Eigenvalues closer than this are treated as one degenerate cluster.
pub const CLUSTER_GAP: f64 = 1e-8;

pub type CVector = Vec<Complex64>;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_real_diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// `|ψ⟩⟨φ|`
    pub fn outer(psi: &[Complex64], phi: &[Complex64]) -> Self {
        let dim = psi.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = psi[i] * phi[j].conj();
            }
        }
        m
    }

    pub fn projector(psi: &[Complex64]) -> Self {
        Self::outer(psi, psi)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dagger(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] = self[(j, i)].conj();
            }
        }
        m
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        let n = self.dim;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                for j in 0..n {
                    m[(i, j)] += a * other[(k, j)];
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &[Complex64]) -> CVector {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        CMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scaled(&self, s: f64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn scaled_complex(&self, z: Complex64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x * z).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.dagger()) <= tol
    }

    /// Real symmetric embedding `[[X, −Y], [Y, X]]`.
    pub fn real_embedding(&self) -> RealMatrix {
        let d = self.dim;
        let mut m = RealMatrix::zeros(2 * d, 2 * d);
        for i in 0..d {
            for j in 0..d {
                let z = self[(i, j)];
                m[(i, j)] = z.re;
                m[(i + d, j + d)] = z.re;
                m[(i, j + d)] = -z.im;
                m[(i + d, j)] = z.im;
            }
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

pub fn cdot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn cnorm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Complex Gram–Schmidt; residuals at or below `tol` are dropped.
pub fn complex_gram_schmidt(vectors: &[CVector], tol: f64) -> Vec<CVector> {
    let mut basis: Vec<CVector> = Vec::new();
    for v in vectors {
        let mut r = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = cdot(b, &r);
                for (ri, bi) in r.iter_mut().zip(b) {
                    *ri -= c * bi;
                }
            }
        }
        let n = cnorm(&r);
        if n > tol {
            basis.push(r.into_iter().map(|z| z / n).collect());
        }
    }
    basis
}

/// Hermitian ↔ real coordinates with the trace pairing as the dot product:
/// diagonal entries first, then `√2·Re` and `√2·Im` of each upper-triangular
/// entry in row order.
pub fn hermitian_to_coords(h: &CMatrix) -> Vec<f64> {
    let d = h.dim();
    let mut c = Vec::with_capacity(d * d);
    for i in 0..d {
        c.push(h[(i, i)].re);
    }
    let s = std::f64::consts::SQRT_2;
    for i in 0..d {
        for j in (i + 1)..d {
            c.push(s * h[(i, j)].re);
            c.push(s * h[(i, j)].im);
        }
    }
    c
}

pub fn coords_to_hermitian(coords: &[f64], d: usize) -> Result<CMatrix> {
    if coords.len() != d * d {
        return Err(GptError::DimensionMismatch {
            expected: d * d,
            got: coords.len(),
        });
    }
    let mut h = CMatrix::zeros(d);
    for i in 0..d {
        h[(i, i)] = Complex64::new(coords[i], 0.0);
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut k = d;
    for i in 0..d {
        for j in (i + 1)..d {
            let z = Complex64::new(s * coords[k], s * coords[k + 1]);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
            k += 2;
        }
    }
    Ok(h)
}

/// Spectrum of a Hermitian matrix, eigenvalues descending.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<CVector>,
}

impl HermitianSpectrum {
    /// Consecutive index ranges whose eigenvalues differ by less than `gap`.
    pub fn clusters(&self, gap: f64) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for k in 1..=self.eigenvalues.len() {
            if k == self.eigenvalues.len()
                || (self.eigenvalues[k - 1] - self.eigenvalues[k]).abs() >= gap
            {
                out.push(start..k);
                start = k;
            }
        }
        out
    }
}

pub fn hermitian_eigen(h: &CMatrix, tol: f64) -> Result<HermitianSpectrum> {
    let d = h.dim();
    if !h.is_hermitian(tol.max(1e-12) * 10.0) {
        return Err(GptError::NotSymmetric {
            asymmetry: h.max_abs_diff(&h.dagger()),
        });
    }
    // converge to rounding level: eigenvector error grows like off-diagonal / gap
    let real = symmetric_eigendecomposition(&h.real_embedding(), 1e-15)?;
    let mut eigenvalues = Vec::with_capacity(d);
    let mut eigenvectors: Vec<CVector> = Vec::with_capacity(d);

    let mut start = 0;
    let n = 2 * d;
    while start < n {
        let mut end = start + 1;
        while end < n && (real.eigenvalues[end - 1] - real.eigenvalues[end]).abs() < CLUSTER_GAP {
            end += 1;
        }
        let want = (end - start).div_ceil(2);
        let candidates: Vec<CVector> = (start..end)
            .map(|k| {
                let col = real.eigenvector(k);
                (0..d).map(|i| Complex64::new(col[i], col[i + d])).collect()
            })
            .collect();
        let basis = complex_gram_schmidt(&candidates, 0.5);
        for psi in basis.into_iter().take(want) {
            let hv = h.apply(&psi);
            eigenvalues.push(cdot(&psi, &hv).re);
            eigenvectors.push(psi);
        }
        start = end;
    }

    if eigenvectors.len() != d {
        return Err(GptError::InvalidInput(format!(
            "eigenvector pairing recovered {} of {} vectors",
            eigenvectors.len(),
            d
        )));
    }
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eigenvalues[j].total_cmp(&eigenvalues[i]));
    Ok(HermitianSpectrum {
        eigenvalues: order.iter().map(|&i| eigenvalues[i]).collect(),
        eigenvectors: order.iter().map(|&i| eigenvectors[i].clone()).collect(),
    })
}

pub fn random_unit_vector<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CVector {
    loop {
        let v: CVector = (0..d)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let n = cnorm(&v);
        if n > 1e-6 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

/// Orthonormal basis from Gram–Schmidt on Gaussian vectors (columns of a
/// Haar-like unitary).
pub fn random_orthonormal_basis<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<CVector> {
    loop {
        let raw: Vec<CVector> = (0..d).map(|_| random_unit_vector(d, rng)).collect();
        let basis = complex_gram_schmidt(&raw, 1e-6);
        if basis.len() == d {
            return basis;
        }
    }
}
