//! Entropy balance of projective measurements, mixing, and the SWAP-type
//! replacement that lowers entropy.

use serde::{Deserialize, Serialize};

use crate::decomposition::classical_decomposition;
use crate::decomposition::majorization::majorizes;
use crate::entropy::entropy;
use crate::error::{GptError, Result};
use crate::measurement::projective::{apply_projective, ProjectiveMeasurement};
use crate::probability::check_probability_vector;
use crate::state_space::{StateSpaceModel, StateVector};

/// Slack below zero still counted as "entropy did not decrease".
pub const SECOND_LAW_TOL: f64 = 1e-9;
const VALID_PM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SecondLawReport {
    pub s_before: f64,
    pub s_after: f64,
    pub delta: f64,
    pub passed: bool,
    pub context: String,
}

impl SecondLawReport {
    pub fn new(s_before: f64, s_after: f64, context: impl Into<String>) -> Self {
        let delta = s_after - s_before;
        SecondLawReport {
            s_before,
            s_after,
            delta,
            passed: delta >= -SECOND_LAW_TOL,
            context: context.into(),
        }
    }

    pub fn scaled(&self, factor: f64, context: impl Into<String>) -> Self {
        SecondLawReport::new(factor * self.s_before, factor * self.s_after, context)
    }
}

/// `S(w)` against `S(Σⱼ Pⱼ w)`.
pub fn second_law_projective(
    model: &StateSpaceModel,
    w: &StateVector,
    pm: &ProjectiveMeasurement,
) -> Result<SecondLawReport> {
    if !pm.is_valid(model, VALID_PM_TOL) {
        return Err(GptError::InvalidInput("invalid projective measurement".into()));
    }
    let (after, _) = apply_projective(model, pm, w)?;
    let kind = if pm.is_degenerate() { "degenerate" } else { "non-degenerate" };
    Ok(SecondLawReport::new(
        entropy(model, w)?,
        entropy(model, &after)?,
        format!("{kind} projective measurement on {}", model.name()),
    ))
}

/// Do the spectral weights of `w` majorize the outcome distribution of `pm`?
pub fn outcome_majorized(
    model: &StateSpaceModel,
    w: &StateVector,
    pm: &ProjectiveMeasurement,
) -> Result<bool> {
    let p = classical_decomposition(model, w)?.weights;
    let (_, mut q) = apply_projective(model, pm, w)?;
    q.resize(p.len().max(q.len()), 0.0);
    let mut p = p;
    p.resize(q.len(), 0.0);
    majorizes(&p, &q)
}

/// `Σ λⱼ S(wⱼ)` against `S(Σ λⱼ wⱼ)`.
pub fn mixing_concavity_check(
    model: &StateSpaceModel,
    states: &[StateVector],
    weights: &[f64],
) -> Result<SecondLawReport> {
    check_probability_vector(weights, 1e-9)?;
    if weights.len() != states.len() {
        return Err(GptError::DimensionMismatch {
            expected: states.len(),
            got: weights.len(),
        });
    }
    let mut before = 0.0;
    for (l, s) in weights.iter().zip(states) {
        before += l * entropy(model, s)?;
    }
    let terms: Vec<(f64, &StateVector)> = weights.iter().cloned().zip(states).collect();
    let after = entropy(model, &model.mix(&terms))?;
    Ok(SecondLawReport::new(
        before,
        after,
        format!("mixing {} components on {}", states.len(), model.name()),
    ))
}

/// Replace the state by the fixed pure state `|1⟩⟨1|`, as a SWAP with an
/// ancilla prepared in that state does.
pub fn swap_replacement(model: &StateSpaceModel, w: &StateVector) -> Result<SecondLawReport> {
    let after = model.basis_state(0)?;
    Ok(SecondLawReport::new(
        entropy(model, w)?,
        entropy(model, &after)?,
        format!("SWAP with a pure ancilla on {} (expected to lower entropy)", model.name()),
    ))
}

/// Maximally mixed `quantum(d)` swapped out for `|1⟩⟨1|`: `ln d → 0`.
pub fn swap_entropy_decrease_demo(d: usize) -> Result<SecondLawReport> {
    if d < 2 {
        return Err(GptError::InvalidInput(format!("dimension {d} < 2")));
    }
    let model = StateSpaceModel::quantum(d)?;
    swap_replacement(&model, &model.maximally_mixed())
}
