use serde::{Deserialize, Serialize};

use crate::error::{GptError, Result};
use crate::linalg::RealMatrix;

/// Square matrix with nonnegative entries and unit row and column sums.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoublyStochasticMatrix {
    matrix: RealMatrix,
}

impl DoublyStochasticMatrix {
    pub const ENTRY_TOL: f64 = 1e-12;
    pub const SUM_TOL: f64 = 1e-9;

    pub fn new(matrix: RealMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, Self::SUM_TOL)
    }

    pub fn with_tolerance(matrix: RealMatrix, tol: f64) -> Result<Self> {
        check_doubly_stochastic(&matrix, tol)?;
        Ok(DoublyStochasticMatrix { matrix })
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// `R · p`
    pub fn apply(&self, p: &[f64]) -> Result<Vec<f64>> {
        self.matrix.apply(p)
    }
}

pub fn check_doubly_stochastic(m: &RealMatrix, tol: f64) -> Result<()> {
    if !m.is_square() {
        return Err(GptError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let entry_tol = DoublyStochasticMatrix::ENTRY_TOL.max(tol.min(1e-9));
    if let Some(x) = m.entries().iter().find(|&&x| x < -entry_tol) {
        return Err(GptError::NotDoublyStochastic(format!("negative entry {x}")));
    }
    for i in 0..n {
        let row: f64 = m.row(i).iter().sum();
        let col: f64 = m.column(i).iter().sum();
        if (row - 1.0).abs() > tol || (col - 1.0).abs() > tol {
            return Err(GptError::NotDoublyStochastic(format!(
                "line {i}: row sum {row}, column sum {col}"
            )));
        }
    }
    Ok(())
}

/// Does `p` majorize `q`? Vectors are zero-padded to equal length.
pub fn majorizes(p: &[f64], q: &[f64]) -> Result<bool> {
    const TOL: f64 = 1e-12;
    if let Some(x) = p.iter().chain(q).find(|&&x| x < -TOL || !x.is_finite()) {
        return Err(GptError::InvalidProbability(format!("entry {x}")));
    }
    let n = p.len().max(q.len());
    let sorted = |v: &[f64]| {
        let mut s = v.to_vec();
        s.resize(n, 0.0);
        s.sort_by(|a, b| b.total_cmp(a));
        s
    };
    let (ps, qs) = (sorted(p), sorted(q));
    let (mut sp, mut sq) = (0.0, 0.0);
    for k in 0..n {
        sp += ps[k];
        sq += qs[k];
        if sp < sq - TOL * (k + 1) as f64 {
            return Ok(false);
        }
    }
    Ok((sp - sq).abs() <= TOL * n as f64 + 1e-12)
}

/// One Birkhoff term: `perm[i]` is the column matched to row `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BirkhoffTerm {
    pub weight: f64,
    pub permutation: Vec<usize>,
}

impl BirkhoffTerm {
    pub fn matrix(&self) -> RealMatrix {
        let n = self.permutation.len();
        let mut m = RealMatrix::zeros(n, n);
        for (i, &j) in self.permutation.iter().enumerate() {
            m[(i, j)] = 1.0;
        }
        m
    }
}

/// Convex decomposition into permutation matrices by repeated perfect
/// matching on the positive entries.
pub fn birkhoff_decomposition(m: &DoublyStochasticMatrix, tol: f64) -> Result<Vec<BirkhoffTerm>> {
    let n = m.size();
    let mut rest = m.matrix().clone();
    let mut terms = Vec::new();
    let max_terms = (n.saturating_sub(1)).pow(2) + 1;
    let mut remaining = 1.0;
    while remaining > tol && terms.len() < max_terms {
        let perm = perfect_matching(&rest, tol).ok_or_else(|| {
            GptError::NotDoublyStochastic("no perfect matching on the positive entries".into())
        })?;
        let weight = perm
            .iter()
            .enumerate()
            .map(|(i, &j)| rest[(i, j)])
            .fold(f64::INFINITY, f64::min);
        for (i, &j) in perm.iter().enumerate() {
            rest[(i, j)] -= weight;
            if rest[(i, j)] <= tol {
                rest[(i, j)] = 0.0;
            }
        }
        remaining -= weight;
        terms.push(BirkhoffTerm {
            weight,
            permutation: perm,
        });
    }
    Ok(terms)
}

pub fn birkhoff_reconstruct(terms: &[BirkhoffTerm], n: usize) -> RealMatrix {
    let mut m = RealMatrix::zeros(n, n);
    for t in terms {
        for (i, &j) in t.permutation.iter().enumerate() {
            m[(i, j)] += t.weight;
        }
    }
    m
}

/// Kuhn's augmenting-path matching on entries above `tol`.
fn perfect_matching(m: &RealMatrix, tol: f64) -> Option<Vec<usize>> {
    let n = m.rows();
    let mut match_col: Vec<Option<usize>> = vec![None; n];
    for row in 0..n {
        let mut seen = vec![false; n];
        if !augment(m, tol, row, &mut seen, &mut match_col) {
            return None;
        }
    }
    let mut perm = vec![0; n];
    for (col, r) in match_col.iter().enumerate() {
        perm[r.expect("every column matched")] = col;
    }
    Some(perm)
}

fn augment(
    m: &RealMatrix,
    tol: f64,
    row: usize,
    seen: &mut [bool],
    match_col: &mut [Option<usize>],
) -> bool {
    for col in 0..m.cols() {
        if m[(row, col)] > tol && !seen[col] {
            seen[col] = true;
            if match_col[col].is_none_or(|r| augment(m, tol, r, seen, match_col)) {
                match_col[col] = Some(row);
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Doubly stochastic by construction: random mixture of permutations.
    fn random_doubly_stochastic(n: usize, rng: &mut ChaCha8Rng) -> RealMatrix {
        let k = rng.random_range(1..=n * n);
        let w = crate::state_space::sampling::random_probability_vector(k, rng);
        let mut m = RealMatrix::zeros(n, n);
        for wi in w {
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.random_range(0..=i));
            }
            for (i, &j) in perm.iter().enumerate() {
                m[(i, j)] += wi;
            }
        }
        m
    }

    #[test]
    fn majorization_examples() {
        assert!(majorizes(&[1.0, 0.0], &[0.5, 0.5]).unwrap());
        assert!(!majorizes(&[0.5, 0.5], &[1.0, 0.0]).unwrap());
        let p = [0.5, 0.3, 0.2];
        assert!(majorizes(&p, &p).unwrap());
        assert!(majorizes(&p, &[0.4, 0.4, 0.2]).unwrap());
        assert!(majorizes(&[1.0], &[0.5, 0.5]).unwrap());
        assert!(majorizes(&[0.5, -0.5], &[0.5]).is_err());
    }

    #[test]
    fn birkhoff_identity_and_half() {
        let id = DoublyStochasticMatrix::new(RealMatrix::identity(3)).unwrap();
        let t = birkhoff_decomposition(&id, 1e-12).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].weight, 1.0);
        assert_eq!(t[0].permutation, vec![0, 1, 2]);

        let half = DoublyStochasticMatrix::new(
            RealMatrix::from_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap(),
        )
        .unwrap();
        let mut t = birkhoff_decomposition(&half, 1e-12).unwrap();
        t.sort_by(|a, b| a.permutation.cmp(&b.permutation));
        assert_eq!(t.len(), 2);
        assert_eq!((t[0].weight, t[0].permutation.clone()), (0.5, vec![0, 1]));
        assert_eq!((t[1].weight, t[1].permutation.clone()), (0.5, vec![1, 0]));
    }

    #[test]
    fn birkhoff_random_4x4_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random_doubly_stochastic(4, &mut rng);
        let ds = DoublyStochasticMatrix::new(m.clone()).unwrap();
        let t = birkhoff_decomposition(&ds, 1e-12).unwrap();
        assert!(t.len() <= 10);
        let w: f64 = t.iter().map(|x| x.weight).sum();
        assert!((w - 1.0).abs() < 1e-10);
        assert!(t.iter().all(|x| x.weight >= 0.0));
        assert!(birkhoff_reconstruct(&t, 4).sub(&m).unwrap().max_abs() < 1e-8);
    }

    #[test]
    fn rejects_non_doubly_stochastic() {
        let m = RealMatrix::from_rows(&[vec![0.7, 0.3], vec![0.7, 0.3]]).unwrap();
        assert!(matches!(
            DoublyStochasticMatrix::new(m),
            Err(GptError::NotDoublyStochastic(_))
        ));
        assert!(DoublyStochasticMatrix::new(RealMatrix::zeros(2, 3)).is_err());
    }
}
