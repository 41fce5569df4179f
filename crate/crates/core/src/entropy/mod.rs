//! Spectral entropy and its relatives.

pub mod search;

use serde::{Deserialize, Serialize};

pub use search::{
    decomposition_entropy_search, measurement_entropy_search, random_fine_grained_measurement,
    random_pure_decomposition, PureDecomposition,
};

use crate::decomposition::{classical_decomposition, ClassicalDecomposition, Frame};
use crate::error::{GptError, Result};
use crate::linalg::axpy;
use crate::measurement::Measurement;
use crate::probability::{check_probability_vector, renyi, shannon, LogBase};
use crate::state_space::{StateSpaceModel, StateVector};

/// Weights closer than this belong to the same spectral cluster.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Weights at or below this count as outside the support.
pub const SUPPORT_TOL: f64 = 1e-12;
/// Overlap with the kernel of `v` beyond which `S(w‖v)` is infinite.
pub const KERNEL_OVERLAP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntropyMethod {
    Spectral,
    MeasurementSearch,
    DecompositionSearch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Classical(ClassicalDecomposition),
    Measurement(Measurement),
    Decomposition(PureDecomposition),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub value: f64,
    pub base: LogBase,
    pub method: EntropyMethod,
    /// Rényi order; `None` for the thermodynamic entropy.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Best value among the random samples alone (searches only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search_minimum: Option<f64>,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

fn require_well_defined(model: &StateSpaceModel) -> Result<()> {
    match model {
        StateSpaceModel::Egg(_) => Err(GptError::EntropyNotWellDefined(format!(
            "{} admits classical decompositions with different weights",
            model.name()
        ))),
        _ => Ok(()),
    }
}

/// `−Σ pⱼ log pⱼ` over the weights of the model's classical decomposition.
pub fn spectral_entropy(
    model: &StateSpaceModel,
    w: &StateVector,
    base: LogBase,
) -> Result<EntropyReport> {
    require_well_defined(model)?;
    let dec = classical_decomposition(model, w)?;
    Ok(EntropyReport {
        value: shannon(&dec.weights, base),
        base,
        method: EntropyMethod::Spectral,
        alpha: None,
        search_minimum: None,
        samples: 0,
        witness: Some(Witness::Classical(dec)),
    })
}

/// Thermodynamic entropy in nats.
pub fn entropy(model: &StateSpaceModel, w: &StateVector) -> Result<f64> {
    spectral_entropy(model, w, LogBase::E).map(|r| r.value)
}

/// Rényi entropy of order `alpha` of the spectral weights, in bits.
pub fn renyi_entropy(model: &StateSpaceModel, w: &StateVector, alpha: f64) -> Result<EntropyReport> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(GptError::InvalidInput(format!("Rényi order {alpha} < 0")));
    }
    require_well_defined(model)?;
    let dec = classical_decomposition(model, w)?;
    Ok(EntropyReport {
        value: renyi(&dec.weights, alpha, LogBase::Two),
        base: LogBase::Two,
        method: EntropyMethod::Spectral,
        alpha: Some(alpha),
        search_minimum: None,
        samples: 0,
        witness: Some(Witness::Classical(dec)),
    })
}

/// `log w = Σₓ ln(pₓ) u_Fₓ` over the spectral clusters with `pₓ > 0`;
/// zero-weight clusters form the kernel face.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogState {
    pub vector: Vec<f64>,
    pub kernel: Option<Frame>,
    /// Representer of the kernel's projective unit (zero if no kernel).
    pub kernel_unit: Vec<f64>,
}

pub fn log_state(model: &StateSpaceModel, w: &StateVector) -> Result<LogState> {
    if !model.has_self_dual_inner_product() {
        return Err(GptError::NoSelfDualInnerProduct(model.name()));
    }
    let dec = classical_decomposition(model, w)?;
    let dim = model.vector_dim();
    let mut vector = vec![0.0; dim];
    let mut kernel_unit = vec![0.0; dim];
    let mut kernel = Vec::new();
    for (p, s) in dec.weights.iter().zip(&dec.frame.states) {
        let v = model.vector(s);
        if *p > SUPPORT_TOL {
            axpy(&mut vector, p.ln(), &v);
        } else {
            axpy(&mut kernel_unit, 1.0, &v);
            kernel.push(s.clone());
        }
    }
    Ok(LogState {
        vector,
        kernel: (!kernel.is_empty()).then(|| Frame::new(kernel)),
        kernel_unit,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelativeEntropy {
    Finite(f64),
    Infinite,
}

impl RelativeEntropy {
    pub fn finite(self) -> Option<f64> {
        match self {
            RelativeEntropy::Finite(x) => Some(x),
            RelativeEntropy::Infinite => None,
        }
    }
}

/// `S(w‖v) = −S(w) − ⟨w, ln v⟩`, infinite when `w` overlaps the kernel of
/// `v`.
pub fn relative_entropy(
    model: &StateSpaceModel,
    w: &StateVector,
    v: &StateVector,
) -> Result<RelativeEntropy> {
    let log_v = log_state(model, v)?;
    let wv = model.vector(w);
    if model.inner_product_vectors(&wv, &log_v.kernel_unit)? > KERNEL_OVERLAP_TOL {
        return Ok(RelativeEntropy::Infinite);
    }
    let s = entropy(model, w)?;
    Ok(RelativeEntropy::Finite(
        -s - model.inner_product_vectors(&wv, &log_v.vector)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureRelation {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// Do the states have mutually orthogonal supports?
pub fn pairwise_distinguishable(model: &StateSpaceModel, states: &[StateVector]) -> Result<bool> {
    for i in 0..states.len() {
        for j in (i + 1)..states.len() {
            if model.inner_product(&states[i], &states[j])?.abs() > 1e-9 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `S(Σ λⱼwⱼ)` against `Σ λⱼ S(wⱼ) + H(λ)` for perfectly distinguishable
/// components.
pub fn orthogonal_mixture_relation(
    model: &StateSpaceModel,
    weights: &[f64],
    components: &[StateVector],
) -> Result<MixtureRelation> {
    check_probability_vector(weights, 1e-9)?;
    if weights.len() != components.len() {
        return Err(GptError::DimensionMismatch {
            expected: components.len(),
            got: weights.len(),
        });
    }
    if !pairwise_distinguishable(model, components)? {
        return Err(GptError::NotDistinguishable(
            "components overlap under the self-dualizing inner product".into(),
        ));
    }
    let terms: Vec<(f64, &StateVector)> = weights.iter().cloned().zip(components).collect();
    let lhs = entropy(model, &model.mix(&terms))?;
    let mut rhs = shannon(weights, LogBase::E);
    for (l, c) in weights.iter().zip(components) {
        rhs += l * entropy(model, c)?;
    }
    Ok(MixtureRelation {
        lhs,
        rhs,
        pass: (lhs - rhs).abs() <= 1e-8,
    })
}

/// Entropy the Petz argument assigns to the gbit center when it is split
/// into the edge states `a·w₁ + (1−a)·w₂` and `a·w₃ + (1−a)·w₄`.
pub fn gbit_entropy_inconsistency(a: f64) -> f64 {
    shannon(&[a, 1.0 - a], LogBase::E) + std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian::CMatrix;
    use crate::linalg::max_abs_diff;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::LN_2;

    fn q(diag: &[f64]) -> (StateSpaceModel, StateVector) {
        let m = StateSpaceModel::quantum(diag.len()).unwrap();
        let s = m.quantum_state(&CMatrix::from_real_diag(diag)).unwrap();
        (m, s)
    }

    #[test]
    fn spectral_examples() {
        let (m, s) = q(&[0.75, 0.25]);
        let h = -0.75 * 0.75f64.ln() - 0.25 * 0.25f64.ln();
        assert!((entropy(&m, &s).unwrap() - h).abs() < 1e-12);
        assert!((h - 0.562335).abs() < 1e-6);
        assert!((entropy(&m, &m.maximally_mixed()).unwrap() - LN_2).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for model in [m.clone(), StateSpaceModel::ball(3).unwrap(), StateSpaceModel::classical(3).unwrap()] {
            let w = model.random_pure_state_with(&mut rng);
            assert!(entropy(&model, &w).unwrap().abs() < 1e-9);
        }
    }

    #[test]
    fn egg_entropy_is_not_well_defined() {
        let egg = StateSpaceModel::egg(1.0, 2.0).unwrap();
        let err = spectral_entropy(&egg, &egg.maximally_mixed(), LogBase::E).unwrap_err();
        assert!(err.to_string().contains("entropy not well-defined"));
        let g = StateSpaceModel::gbit();
        assert!(matches!(
            entropy(&g, &g.maximally_mixed()),
            Err(GptError::NoClassicalDecomposition(_))
        ));
    }

    #[test]
    fn renyi_examples() {
        let c4 = StateSpaceModel::classical(4).unwrap();
        for a in [0.0, 0.5, 1.0, 2.0, 5.0, f64::INFINITY] {
            assert!((renyi_entropy(&c4, &c4.maximally_mixed(), a).unwrap().value - 2.0).abs() < 1e-12);
        }
        let (m, s) = q(&[0.75, 0.25]);
        assert!((renyi_entropy(&m, &s, 0.0).unwrap().value - 1.0).abs() < 1e-12);
        assert!((renyi_entropy(&m, &s, f64::INFINITY).unwrap().value - 0.415037).abs() < 1e-6);
        let mut last = f64::INFINITY;
        for a in [0.0, 0.5, 1.0, 2.0, 5.0, f64::INFINITY] {
            let h = renyi_entropy(&m, &s, a).unwrap().value;
            assert!(h <= last + 1e-12);
            last = h;
        }
    }

    #[test]
    fn relative_entropy_examples() {
        let (m, w) = q(&[0.75, 0.25]);
        let v = m.maximally_mixed();
        assert!(relative_entropy(&m, &w, &w).unwrap().finite().unwrap().abs() < 1e-12);
        let kl = 0.75 * 1.5f64.ln() + 0.25 * 0.5f64.ln();
        let got = relative_entropy(&m, &w, &v).unwrap().finite().unwrap();
        assert!((got - kl).abs() < 1e-12);
        assert!((kl - 0.130812).abs() < 1e-6);
        let z0 = m.basis_state(0).unwrap();
        let z1 = m.basis_state(1).unwrap();
        assert_eq!(relative_entropy(&m, &z0, &z1).unwrap(), RelativeEntropy::Infinite);
        assert!(relative_entropy(&StateSpaceModel::gbit(), &z0, &z1).is_err());
    }

    #[test]
    fn log_state_examples() {
        let (m, s) = q(&[0.5, 0.5]);
        let l = log_state(&m, &s).unwrap();
        assert!(max_abs_diff(&l.vector, &[0.5f64.ln(), 0.5f64.ln(), 0.0, 0.0]) < 1e-12);
        let (m, s) = q(&[0.75, 0.25]);
        let l = log_state(&m, &s).unwrap();
        assert!(max_abs_diff(&l.vector, &[0.75f64.ln(), 0.25f64.ln(), 0.0, 0.0]) < 1e-12);
        assert!((m.inner_product_vectors(&s.coords, &l.vector).unwrap() + entropy(&m, &s).unwrap()).abs() < 1e-9);
        let (m, s) = q(&[0.5, 0.5, 0.0]);
        let l = log_state(&m, &s).unwrap();
        let k = l.kernel.unwrap();
        assert_eq!(k.size(), 1);
        assert!(max_abs_diff(&k.states[0].coords, &m.basis_state(2).unwrap().coords) < 1e-12);
    }

    #[test]
    fn mixture_relation_examples() {
        let m = StateSpaceModel::quantum(4).unwrap();
        let a = m.quantum_state(&CMatrix::from_real_diag(&[0.5, 0.5, 0.0, 0.0])).unwrap();
        let b = m.quantum_state(&CMatrix::from_real_diag(&[0.0, 0.0, 1.0, 0.0])).unwrap();
        let r = orthogonal_mixture_relation(&m, &[0.5, 0.5], &[a.clone(), b.clone()]).unwrap();
        assert!(r.pass);
        assert!((r.lhs - 1.5 * LN_2).abs() < 1e-12 && (r.rhs - 1.5 * LN_2).abs() < 1e-12);
        let r = orthogonal_mixture_relation(&m, &[1.0], std::slice::from_ref(&a)).unwrap();
        assert!((r.lhs - entropy(&m, &a).unwrap()).abs() < 1e-12 && r.pass);
        let mixed = m.maximally_mixed();
        assert!(matches!(
            orthogonal_mixture_relation(&m, &[0.5, 0.5], &[a, mixed]),
            Err(GptError::NotDistinguishable(_))
        ));

        let c6 = StateSpaceModel::classical(6).unwrap();
        let p = StateVector::new(vec![0.2, 0.3, 0.5, 0.0, 0.0, 0.0]);
        let r2 = StateVector::new(vec![0.0, 0.0, 0.0, 0.6, 0.4, 0.0]);
        let r = orthogonal_mixture_relation(&c6, &[1.0 / 3.0, 2.0 / 3.0], &[p, r2]).unwrap();
        assert!((r.lhs - r.rhs).abs() < 1e-10);
    }

    #[test]
    fn gbit_inconsistency_values() {
        assert!((gbit_entropy_inconsistency(0.0) - LN_2).abs() < 1e-12);
        assert!((gbit_entropy_inconsistency(1.0) - LN_2).abs() < 1e-12);
        assert!((gbit_entropy_inconsistency(0.5) - 2.0 * LN_2).abs() < 1e-12);
        let h = -0.25 * 0.25f64.ln() - 0.75 * 0.75f64.ln();
        assert!((gbit_entropy_inconsistency(0.25) - (LN_2 + h)).abs() < 1e-12);
        assert!((gbit_entropy_inconsistency(0.25) - 1.2554823).abs() < 1e-7);
    }
}
