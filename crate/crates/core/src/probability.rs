//! Functionals of plain probability vectors.

use crate::error::{GptError, Result};

/// Base of the logarithm an entropy value is reported in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    E,
    #[serde(rename = "2")]
    Two,
}

impl LogBase {
    pub fn ln_factor(self) -> f64 {
        match self {
            LogBase::E => 1.0,
            LogBase::Two => std::f64::consts::LN_2,
        }
    }

    pub fn log(self, x: f64) -> f64 {
        x.ln() / self.ln_factor()
    }
}

/// Entries ≥ −tol and sum 1 within tol.
pub fn check_probability_vector(p: &[f64], tol: f64) -> Result<()> {
    if p.is_empty() {
        return Err(GptError::InvalidProbability("empty vector".into()));
    }
    if let Some(x) = p.iter().find(|x| !x.is_finite() || **x < -tol) {
        return Err(GptError::InvalidProbability(format!("entry {x}")));
    }
    let s: f64 = p.iter().sum();
    if (s - 1.0).abs() > tol {
        return Err(GptError::InvalidProbability(format!("sum {s}")));
    }
    Ok(())
}

/// `−Σ p log p` with `0 log 0 = 0`.
pub fn shannon(p: &[f64], base: LogBase) -> f64 {
    let h: f64 = p
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.ln())
        .fold(0.0, |a, b| a + b);
    h / base.ln_factor()
}

/// Rényi entropy of order `alpha ∈ [0, ∞]`; order 1 is Shannon.
pub fn renyi(p: &[f64], alpha: f64, base: LogBase) -> f64 {
    const SUPPORT: f64 = 1e-12;
    let h = if alpha == 0.0 {
        (p.iter().filter(|&&x| x > SUPPORT).count() as f64).ln()
    } else if alpha == 1.0 {
        return shannon(p, base);
    } else if alpha.is_infinite() {
        -p.iter().cloned().fold(0.0, f64::max).ln()
    } else {
        let s: f64 = p.iter().filter(|&&x| x > 0.0).map(|&x| x.powf(alpha)).sum();
        s.ln() / (1.0 - alpha)
    };
    (h / base.ln_factor()).max(0.0)
}

/// `Σ p²`
pub fn collision_sum(p: &[f64]) -> f64 {
    p.iter().map(|x| x * x).sum()
}

/// Copy sorted descending with exact zeros removed below `tol`.
pub fn sorted_support(p: &[f64], tol: f64) -> Vec<f64> {
    let mut v: Vec<f64> = p.iter().cloned().filter(|&x| x > tol).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shannon_values() {
        assert_eq!(shannon(&[1.0, 0.0], LogBase::E), 0.0);
        assert!((shannon(&[0.5, 0.5], LogBase::Two) - 1.0).abs() < 1e-15);
        // ¾ ln(4/3) + ¼ ln 4
        let want = 0.75 * (4.0f64 / 3.0).ln() + 0.25 * 4.0f64.ln();
        assert!((shannon(&[0.75, 0.25], LogBase::E) - want).abs() < 1e-15);
        assert!((want - 0.562335).abs() < 1e-6);
    }

    #[test]
    fn renyi_special_orders() {
        let p = [0.75, 0.25];
        assert!((renyi(&p, 0.0, LogBase::Two) - 1.0).abs() < 1e-15);
        assert!((renyi(&p, f64::INFINITY, LogBase::Two) + 0.75f64.log2()).abs() < 1e-15);
        assert!((renyi(&p, 2.0, LogBase::Two) + 0.625f64.log2()).abs() < 1e-15);
        for a in [0.0, 0.5, 1.0, 2.0, 5.0, f64::INFINITY] {
            assert!((renyi(&[0.25; 4], a, LogBase::Two) - 2.0).abs() < 1e-12);
            assert_eq!(renyi(&[1.0, 0.0], a, LogBase::Two), 0.0);
        }
    }

    #[test]
    fn probability_validation() {
        assert!(check_probability_vector(&[0.5, 0.5], 1e-12).is_ok());
        assert!(check_probability_vector(&[0.6, 0.5], 1e-12).is_err());
        assert!(check_probability_vector(&[1.5, -0.5], 1e-12).is_err());
        assert!(check_probability_vector(&[], 1e-12).is_err());
    }
}
