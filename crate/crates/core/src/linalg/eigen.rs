use serde::{Deserialize, Serialize};

use super::RealMatrix;
use crate::error::{GptError, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order with matching orthonormal eigenvectors
/// stored as the columns of `eigenvectors`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: RealMatrix,
}

impl SpectralData {
    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        self.eigenvectors.column(k)
    }

    /// `V Λ Vᵀ`
    pub fn reconstruct(&self) -> RealMatrix {
        let n = self.eigenvalues.len();
        let mut m = RealMatrix::zeros(n, n);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            let v = self.eigenvector(k);
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] += lambda * v[i] * v[j];
                }
            }
        }
        m
    }
}

/// Cyclic Jacobi eigensolver for real symmetric matrices.
///
/// Sweeps plane rotations until the off-diagonal Frobenius norm drops below
/// `tol · max(1, ‖M‖_F)`.
pub fn symmetric_eigendecomposition(m: &RealMatrix, tol: f64) -> Result<SpectralData> {
    if !m.is_square() {
        return Err(GptError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let asym = m.max_asymmetry();
    if asym > tol.max(1e-12) * m.max_abs().max(1.0) {
        return Err(GptError::NotSymmetric { asymmetry: asym });
    }
    let n = m.rows();
    // symmetrize so tiny input asymmetry does not bias the rotations
    let mut a = m.add(&m.transpose())?.scaled(0.5);
    let mut v = RealMatrix::identity(n);
    let threshold = tol * a.frobenius_norm().max(1.0) * 0.1;

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() < f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]));
    let eigenvalues = order.iter().map(|&i| a[(i, i)]).collect();
    let mut eigenvectors = RealMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        for r in 0..n {
            eigenvectors[(r, k)] = v[(r, i)];
        }
    }
    Ok(SpectralData {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &RealMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut RealMatrix, v: &mut RealMatrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dot, DEFAULT_TOL};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_symmetric(n: usize, seed: u64) -> RealMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = RealMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let x: f64 = rng.random_range(-1.0..1.0);
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
        }
        m
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    fn det(mut m: RealMatrix) -> f64 {
        let n = m.rows();
        let mut d = 1.0;
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&i, &j| m[(i, col)].abs().total_cmp(&m[(j, col)].abs()))
                .unwrap();
            if m[(piv, col)] == 0.0 {
                return 0.0;
            }
            if piv != col {
                for k in 0..n {
                    let t = m[(col, k)];
                    m[(col, k)] = m[(piv, k)];
                    m[(piv, k)] = t;
                }
                d = -d;
            }
            d *= m[(col, col)];
            for r in (col + 1)..n {
                let f = m[(r, col)] / m[(col, col)];
                for k in col..n {
                    m[(r, k)] -= f * m[(col, k)];
                }
            }
        }
        d
    }

    /// Roots of det(M − λI) found by grid scan plus bisection.
    fn char_poly_roots(m: &RealMatrix) -> Vec<f64> {
        let n = m.rows();
        let bound = (0..n)
            .map(|i| (0..n).map(|j| m[(i, j)].abs()).sum::<f64>())
            .fold(0.0, f64::max)
            + 1.0;
        let f = |l: f64| det(m.sub(&RealMatrix::identity(n).scaled(l)).unwrap());
        let steps = 20_000;
        let mut roots = Vec::new();
        let mut prev_x = -bound;
        let mut prev_f = f(prev_x);
        for k in 1..=steps {
            let x = -bound + 2.0 * bound * k as f64 / steps as f64;
            let fx = f(x);
            if prev_f == 0.0 {
                roots.push(prev_x);
            } else if prev_f * fx < 0.0 {
                let (mut lo, mut hi, mut flo) = (prev_x, x, prev_f);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    let fm = f(mid);
                    if fm * flo <= 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                        flo = fm;
                    }
                }
                roots.push(0.5 * (lo + hi));
            }
            prev_x = x;
            prev_f = fx;
        }
        roots.sort_by(|a, b| b.total_cmp(a));
        roots
    }

    #[test]
    fn identity_eigenvalues() {
        let s = symmetric_eigendecomposition(&RealMatrix::identity(3), DEFAULT_TOL).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_sorted_descending() {
        let s = symmetric_eigendecomposition(&RealMatrix::diag(&[1.0, 3.0]), DEFAULT_TOL).unwrap();
        assert_eq!(s.eigenvalues, vec![3.0, 1.0]);
        assert_eq!(s.eigenvector(0), vec![0.0, 1.0]);
        assert_eq!(s.eigenvector(1), vec![1.0, 0.0]);
    }

    #[test]
    fn random_4x4_matches_characteristic_polynomial() {
        let m = random_symmetric(4, 42);
        let s = symmetric_eigendecomposition(&m, DEFAULT_TOL).unwrap();
        let roots = char_poly_roots(&m);
        assert_eq!(roots.len(), 4);
        for (l, r) in s.eigenvalues.iter().zip(&roots) {
            assert!((l - r).abs() < 1e-8, "{l} vs {r}");
        }
    }

    #[test]
    fn reconstruction_and_orthonormality_up_to_dim_16() {
        for n in 1..=16 {
            let m = random_symmetric(n, 100 + n as u64);
            let s = symmetric_eigendecomposition(&m, DEFAULT_TOL).unwrap();
            let err = s.reconstruct().sub(&m).unwrap().max_abs();
            assert!(err <= 10.0 * DEFAULT_TOL, "n={n} err={err:e}");
            for i in 0..n {
                for j in 0..n {
                    let d = dot(&s.eigenvector(i), &s.eigenvector(j));
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((d - want).abs() < 1e-10);
                }
            }
            assert!(s.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn rejects_non_square_and_asymmetric() {
        assert!(matches!(
            symmetric_eigendecomposition(&RealMatrix::zeros(2, 3), DEFAULT_TOL),
            Err(GptError::NotSquare { .. })
        ));
        let m = RealMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            symmetric_eigendecomposition(&m, DEFAULT_TOL),
            Err(GptError::NotSymmetric { .. })
        ));
    }
}
