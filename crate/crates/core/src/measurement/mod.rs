//! Effects, measurements and the operations built from frames and faces.

pub mod gbit_ops;
pub mod observable;
pub mod projective;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use gbit_ops::{gbit_repeatability_check, gbit_side_operation, GbitSideOperation};
pub use observable::{
    observable_apply_function, observable_eigendata_roundtrip, observable_from_spectral_data,
    observable_from_vector, observable_shift, Observable,
};
pub use projective::{
    apply_projective, pfister_discrimination, projective_measurement_from_faces,
    projective_measurement_from_frame, ProjectiveMeasurement,
};

use crate::decomposition::{egg::egg_antipode, is_frame, Frame};
use crate::error::{GptError, Result};
use crate::linalg::{dot, max_abs_diff, sub};
use crate::state_space::{gbit, StateSpaceModel, StateVector};

/// Linear functional on the homogeneous ambient vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Effect {
    pub label: String,
    pub coords: Vec<f64>,
}

impl Effect {
    pub fn new(label: impl Into<String>, coords: Vec<f64>) -> Self {
        Effect {
            label: label.into(),
            coords,
        }
    }

    pub fn evaluate(&self, model: &StateSpaceModel, w: &StateVector) -> f64 {
        dot(&self.coords, &model.vector(w))
    }

    /// `0 ≤ e(v) ≤ u_A(v)` on `samples` random cone elements.
    pub fn is_effect_on_samples<R: Rng + ?Sized>(
        &self,
        model: &StateSpaceModel,
        samples: usize,
        rng: &mut R,
    ) -> bool {
        (0..samples).all(|_| {
            let v = model.random_cone_element_with(rng);
            let (e, u) = (self.evaluate(model, &v), model.order_unit_value(&v));
            e >= -1e-9 && e <= u + 1e-9
        })
    }
}

/// Effects summing to the order unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub effects: Vec<Effect>,
}

impl Measurement {
    pub fn new(effects: Vec<Effect>) -> Self {
        Measurement { effects }
    }

    pub fn sum(&self) -> Vec<f64> {
        sum_coords(&self.effects, self.effects.first().map_or(0, |e| e.coords.len()))
    }

    /// Do the effects add up to `u_A` within `tol`?
    pub fn is_normalized(&self, model: &StateSpaceModel, tol: f64) -> bool {
        !self.effects.is_empty()
            && self.effects.iter().all(|e| e.coords.len() == model.vector_dim())
            && max_abs_diff(&self.sum(), &model.order_unit().functional) <= tol
    }

    pub fn probabilities(&self, model: &StateSpaceModel, w: &StateVector) -> Vec<f64> {
        self.effects.iter().map(|e| e.evaluate(model, w)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("measurements always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| GptError::InvalidInput(e.to_string()))
    }
}

fn sum_coords(effects: &[Effect], dim: usize) -> Vec<f64> {
    let mut s = vec![0.0; dim];
    for e in effects {
        crate::linalg::axpy(&mut s, 1.0, &e.coords);
    }
    s
}

/// Effect that is 1 on `a` and 0 on the egg boundary point with parallel
/// tangent `b`, read off the supporting line at `a`.
pub fn egg_tangent_effect(a: [f64; 2], b: [f64; 2], shape: &crate::state_space::EggShape) -> Vec<f64> {
    let n = shape.outward_normal(a);
    let scale = n[0] * (a[0] - b[0]) + n[1] * (a[1] - b[1]);
    vec![
        -(n[0] * b[0] + n[1] * b[1]) / scale,
        n[0] / scale,
        n[1] / scale,
    ]
}

/// Measurement with `e_k(w_j) = δ_kj`; a remainder effect `u_A − Σ e_k` is
/// appended when the frame is not maximal.
pub fn distinguishing_measurement(model: &StateSpaceModel, frame: &Frame) -> Result<Measurement> {
    if frame.size() == 0 || !is_frame(model, &frame.states, 1e-9) {
        return Err(GptError::InvalidFrame(format!(
            "not a frame of {}",
            model.name()
        )));
    }
    let u = model.order_unit().functional;
    let mut effects: Vec<Effect> = match model {
        StateSpaceModel::Gbit {} => {
            let idx: Vec<usize> = frame
                .states
                .iter()
                .map(|w| gbit::corner_index(w, 1e-9).expect("frame states are corners"))
                .collect();
            if idx.len() == 2 {
                let e = gbit::separating_effect(idx[0], idx[1]).expect("adjacent corners");
                vec![
                    Effect::new("e1", e.to_vec()),
                    Effect::new("e2", sub(&u, &e)),
                ]
            } else {
                vec![Effect::new("e1", gbit::edge_effect(idx[0]).to_vec())]
            }
        }
        StateSpaceModel::Egg(shape) => {
            let pts: Vec<[f64; 2]> = frame
                .states
                .iter()
                .map(|w| [w.coords[0], w.coords[1]])
                .collect();
            let partner = if pts.len() == 2 {
                pts[1]
            } else {
                egg_antipode(pts[0], shape)
            };
            let e = egg_tangent_effect(pts[0], partner, shape);
            if pts.len() == 2 {
                vec![
                    Effect::new("e1", e.clone()),
                    Effect::new("e2", sub(&u, &e)),
                ]
            } else {
                vec![Effect::new("e1", e)]
            }
        }
        _ => frame
            .states
            .iter()
            .enumerate()
            .map(|(k, w)| Ok(Effect::new(format!("e{}", k + 1), model.riesz_functional(w)?)))
            .collect::<Result<_>>()?,
    };
    let sum = sum_coords(&effects, u.len());
    if effects.len() < model.max_frame_size() || max_abs_diff(&sum, &u) > 1e-9 {
        effects.push(Effect::new("remainder", sub(&u, &sum)));
    } else {
        // the last effect absorbs rounding so the sum is exact
        let n = effects.len();
        effects[n - 1].coords = sub(&u, &sum_coords(&effects[..n - 1], u.len()));
    }
    Ok(Measurement::new(effects))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{egg_nonuniqueness_witness, standard_frame};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assert_distinguishes(model: &StateSpaceModel, frame: &Frame, m: &Measurement) {
        for (k, e) in m.effects.iter().enumerate().take(frame.size()) {
            for (j, w) in frame.states.iter().enumerate() {
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((e.evaluate(model, w) - want).abs() < 1e-10, "{}", model.name());
            }
        }
        assert!(m.is_normalized(model, 1e-12));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for e in &m.effects {
            assert!(e.is_effect_on_samples(model, 200, &mut rng), "{}", model.name());
        }
    }

    #[test]
    fn quantum_z_frame() {
        let q2 = StateSpaceModel::quantum(2).unwrap();
        let f = standard_frame(&q2).unwrap();
        let m = distinguishing_measurement(&q2, &f).unwrap();
        assert_eq!(m.effects.len(), 2);
        assert_eq!(m.effects[0].coords, vec![1.0, 0.0, 0.0, 0.0]);
        assert_distinguishes(&q2, &f, &m);
    }

    #[test]
    fn partial_frame_gets_remainder() {
        let q3 = StateSpaceModel::quantum(3).unwrap();
        let f = Frame::new(standard_frame(&q3).unwrap().states[..2].to_vec());
        let m = distinguishing_measurement(&q3, &f).unwrap();
        assert_eq!(m.effects.len(), 3);
        for w in &f.states {
            assert_eq!(m.effects[2].evaluate(&q3, w), 0.0);
        }
        assert_distinguishes(&q3, &f, &m);
    }

    #[test]
    fn ball_gbit_egg_frames() {
        let b2 = StateSpaceModel::ball(2).unwrap();
        let f = Frame::new(vec![
            StateVector::new(vec![1.0, 0.6, 0.8]),
            StateVector::new(vec![1.0, -0.6, -0.8]),
        ]);
        assert_distinguishes(&b2, &f, &distinguishing_measurement(&b2, &f).unwrap());

        let g = StateSpaceModel::gbit();
        for (i, j) in [(0, 1), (1, 2), (2, 3), (3, 0), (1, 0)] {
            let f = Frame::new(vec![gbit::corner(i), gbit::corner(j)]);
            assert_distinguishes(&g, &f, &distinguishing_measurement(&g, &f).unwrap());
        }
        let diag = Frame::new(vec![gbit::corner(0), gbit::corner(2)]);
        assert!(distinguishing_measurement(&g, &diag).is_err());

        let egg = StateSpaceModel::egg(1.0, 2.0).unwrap();
        let w = egg_nonuniqueness_witness(&egg.egg_shape().unwrap());
        for f in [&w.vertical.frame, &w.horizontal.frame] {
            assert_distinguishes(&egg, f, &distinguishing_measurement(&egg, f).unwrap());
        }
        let shape = egg.egg_shape().unwrap();
        let p = shape.boundary_in_direction(0.8f64.atan2(-1.2));
        let single = Frame::new(vec![StateVector::new(p.to_vec())]);
        assert_distinguishes(&egg, &single, &distinguishing_measurement(&egg, &single).unwrap());
    }

    #[test]
    fn measurement_json_roundtrip() {
        let q2 = StateSpaceModel::quantum(2).unwrap();
        let m = distinguishing_measurement(&q2, &standard_frame(&q2).unwrap()).unwrap();
        assert_eq!(Measurement::from_json(&m.to_json()).unwrap(), m);
        assert!(m.to_json().starts_with(r#"{"effects":[{"label":"e1","coords":"#));
    }
}
