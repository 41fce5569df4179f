//! Classical decompositions in the egg by the parallel-tangent construction.
//!
//! For a circle point `p₁(α)` the ellipse point `a_α = p₂(β(α))` has a
//! tangent parallel to the one at `p₁`, so the two are perfectly
//! distinguishable. A state `w` is decomposed by finding the `α` whose chord
//! `l_α` passes through `w`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use super::{ClassicalDecomposition, Frame};
use crate::error::{GptError, Result};
use crate::linalg::bisection_root;
use crate::probability::{shannon, LogBase};
use crate::state_space::{EggShape, StateVector};

pub const SCAN_SAMPLES: usize = 720;
pub const ROOT_TOL: f64 = 1e-12;

/// `β(α) = arccot(−(R/r)·cot α)` on the branch in `(−π/2, π/2)`, extended
/// continuously to `β(0) = 0` and `β(±π/2) = ∓π/2`.
pub fn egg_beta(alpha: f64, r: f64, big_r: f64) -> f64 {
    if alpha == 0.0 {
        0.0
    } else if alpha >= FRAC_PI_2 {
        -FRAC_PI_2
    } else if alpha <= -FRAC_PI_2 {
        FRAC_PI_2
    } else {
        // arccot(x) = atan(1/x) on this branch
        (1.0 / (-(big_r / r) / alpha.tan())).atan()
    }
}

/// Ellipse partner `a_α` of the circle point at `α`.
pub fn egg_partner(alpha: f64, shape: &EggShape) -> [f64; 2] {
    shape.ellipse_point(egg_beta(alpha, shape.r, shape.big_r))
}

/// Boundary point whose tangent is parallel to the one at boundary point `p`.
pub fn egg_antipode(p: [f64; 2], shape: &EggShape) -> [f64; 2] {
    if p[0] >= 0.0 {
        egg_partner(p[1].atan2(p[0]).clamp(-FRAC_PI_2, FRAC_PI_2), shape)
    } else {
        // invert tan β = −(r/R)·tan α on the ellipse side
        let beta = (p[1] / shape.r).atan2(-p[0] / shape.big_r);
        let alpha = if beta.abs() >= FRAC_PI_2 {
            -beta.signum() * FRAC_PI_2
        } else {
            (-(shape.big_r / shape.r) * beta.tan()).atan()
        };
        shape.circle_point(alpha)
    }
}

/// Normal `n_α` of the chord `l_α` through `p₁(α)` and `a_α`.
pub fn egg_chord_normal(alpha: f64, shape: &EggShape) -> [f64; 2] {
    let beta = egg_beta(alpha, shape.r, shape.big_r);
    let (r, big_r) = (shape.r, shape.big_r);
    [
        -r * alpha.sin() + r * beta.sin(),
        r * alpha.cos() + big_r * beta.cos(),
    ]
}

/// `g_w(α) = (w − a_α)·n_α`; zero exactly when `w ∈ l_α`.
pub fn egg_g(w: [f64; 2], alpha: f64, r: f64, big_r: f64) -> f64 {
    let shape = EggShape { r, big_r };
    let a = egg_partner(alpha, &shape);
    let n = egg_chord_normal(alpha, &shape);
    (w[0] - a[0]) * n[0] + (w[1] - a[1]) * n[1]
}

/// Decomposition of `w` together with the chord parameter that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EggDecomposition {
    pub alpha: f64,
    pub p: f64,
    pub residual: f64,
    pub decomposition: ClassicalDecomposition,
}

pub fn egg_decompose(w: [f64; 2], shape: &EggShape, tol: f64) -> Result<EggDecomposition> {
    if !shape.contains(w, 1e-9) {
        return Err(GptError::OutsideStateSpace(format!(
            "({}, {}) is outside egg(r={}, R={})",
            w[0], w[1], shape.r, shape.big_r
        )));
    }
    let g = |a: f64| egg_g(w, a, shape.r, shape.big_r);
    let alpha = if g(FRAC_PI_2).abs() <= ROOT_TOL {
        FRAC_PI_2
    } else {
        find_root(&g)?
    };
    let p1 = shape.circle_point(alpha);
    let p2 = egg_partner(alpha, shape);
    let t = [p1[0] - p2[0], p1[1] - p2[1]];
    let p = (((w[0] - p2[0]) * t[0] + (w[1] - p2[1]) * t[1]) / (t[0] * t[0] + t[1] * t[1]))
        .clamp(0.0, 1.0);
    let rec = [p * p1[0] + (1.0 - p) * p2[0], p * p1[1] + (1.0 - p) * p2[1]];
    let residual = ((rec[0] - w[0]).powi(2) + (rec[1] - w[1]).powi(2)).sqrt();
    if residual > tol {
        return Err(GptError::NoClassicalDecomposition(format!(
            "egg chord residual {residual:e} exceeds {tol:e}"
        )));
    }
    Ok(EggDecomposition {
        alpha,
        p,
        residual,
        decomposition: ClassicalDecomposition {
            weights: vec![p, 1.0 - p],
            frame: Frame::new(vec![
                StateVector::new(p1.to_vec()),
                StateVector::new(p2.to_vec()),
            ]),
        },
    })
}

fn find_root(g: &impl Fn(f64) -> f64) -> Result<f64> {
    let at = |k: usize| -FRAC_PI_2 + PI * k as f64 / SCAN_SAMPLES as f64;
    let mut prev = g(at(0));
    if prev == 0.0 {
        return Ok(at(0));
    }
    for k in 1..=SCAN_SAMPLES {
        let x = at(k);
        let cur = g(x);
        if cur == 0.0 {
            return Ok(x);
        }
        if (cur < 0.0) != (prev < 0.0) {
            return bisection_root(g, at(k - 1), x, ROOT_TOL);
        }
        prev = cur;
    }
    Err(GptError::NoClassicalDecomposition(
        "no sign change of g over the scan".into(),
    ))
}

/// The origin decomposed two ways: along the vertical chord with weights
/// `(½, ½)` and along the horizontal one with weights `(r, R)/(r+R)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EggWitness {
    pub vertical: ClassicalDecomposition,
    pub horizontal: ClassicalDecomposition,
    pub entropy_vertical: f64,
    pub entropy_horizontal: f64,
}

pub fn egg_nonuniqueness_witness(shape: &EggShape) -> EggWitness {
    let (r, big_r) = (shape.r, shape.big_r);
    let vertical = ClassicalDecomposition {
        weights: vec![0.5, 0.5],
        frame: Frame::new(vec![
            StateVector::new(vec![0.0, r]),
            StateVector::new(vec![0.0, -r]),
        ]),
    };
    let horizontal = ClassicalDecomposition {
        weights: vec![r / (r + big_r), big_r / (r + big_r)],
        frame: Frame::new(vec![
            StateVector::new(vec![-big_r, 0.0]),
            StateVector::new(vec![r, 0.0]),
        ]),
    };
    EggWitness {
        entropy_vertical: shannon(&vertical.weights, LogBase::E),
        entropy_horizontal: shannon(&horizontal.weights, LogBase::E),
        vertical,
        horizontal,
    }
}

/// One row of an interior grid sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EggGridRow {
    pub x: f64,
    pub y: f64,
    pub alpha: f64,
    pub p: f64,
    pub residual: f64,
}

/// Points `ρ·b(θ)` for `ρ = (i+½)/n`, `θ = −π + 2π(j+½)/n`, where `b(θ)` is
/// the boundary point in direction `θ`.
pub fn egg_interior_grid(shape: &EggShape, n: usize) -> Vec<[f64; 2]> {
    let mut pts = Vec::with_capacity(n * n);
    for i in 0..n {
        let rho = (i as f64 + 0.5) / n as f64;
        for j in 0..n {
            let theta = -PI + 2.0 * PI * (j as f64 + 0.5) / n as f64;
            let b = shape.boundary_in_direction(theta);
            pts.push([rho * b[0], rho * b[1]]);
        }
    }
    pts
}

pub fn egg_grid_sweep(shape: &EggShape, n: usize, tol: f64) -> Result<Vec<EggGridRow>> {
    egg_interior_grid(shape, n)
        .par_iter()
        .map(|&w| {
            egg_decompose(w, shape, tol).map(|d| EggGridRow {
                x: w[0],
                y: w[1],
                alpha: d.alpha,
                p: d.p,
                residual: d.residual,
            })
        })
        .collect()
}
