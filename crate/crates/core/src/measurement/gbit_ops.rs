//! Operations on the gbit that tell the side `w₁w₄` from the side `w₂w₃`.

use serde::{Deserialize, Serialize};

use crate::error::{GptError, Result};
use crate::linalg::RealMatrix;
use crate::state_space::{StateSpaceModel, StateVector, CONE_TOL};

/// Effect that is 1 on the edge `w₁w₄` and 0 on `w₂w₃`.
pub const SIDE_EFFECT_14: [f64; 3] = [0.0, 1.0, 0.0];
/// Its complement, 1 on `w₂w₃`.
pub const SIDE_EFFECT_23: [f64; 3] = [0.0, -1.0, 1.0];

/// `T₁ = v ⊗ e₁₄` and `T₂ = v′ ⊗ e₂₃`: measure the side, then prepare `v`
/// or `v′`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbitSideOperation {
    pub t1: RealMatrix,
    pub t2: RealMatrix,
    pub repeatable: bool,
}

pub fn gbit_side_operation(v: &StateVector, v_prime: &StateVector) -> Result<GbitSideOperation> {
    let g = StateSpaceModel::gbit();
    for s in [v, v_prime] {
        if !g.contains_state(s, CONE_TOL)? {
            return Err(GptError::OutsideStateSpace(format!(
                "{:?} is not a gbit state",
                s.coords
            )));
        }
    }
    // repeatable iff v sits on w₁w₄ (b = 1) and v′ on w₂w₃ (b = 0)
    let repeatable = (v.coords[1] - 1.0).abs() <= CONE_TOL && v_prime.coords[1].abs() <= CONE_TOL;
    Ok(GbitSideOperation {
        t1: RealMatrix::outer(&v.coords, &SIDE_EFFECT_14),
        t2: RealMatrix::outer(&v_prime.coords, &SIDE_EFFECT_23),
        repeatable,
    })
}

/// `T₁T₂ = T₂T₁ = 0` within 1e-12.
pub fn gbit_repeatability_check(t1: &RealMatrix, t2: &RealMatrix) -> bool {
    let a = t1.matmul(t2).expect("3x3");
    let b = t2.matmul(t1).expect("3x3");
    a.max_abs() <= 1e-12 && b.max_abs() <= 1e-12
}
