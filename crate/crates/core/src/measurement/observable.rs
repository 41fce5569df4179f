use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::projective::check_faces_orthogonal;
use crate::decomposition::{quantum_frame, Frame};
use crate::error::{GptError, Result};
use crate::linalg::hermitian::{self, CLUSTER_GAP};
use crate::linalg::{max_abs_diff, DEFAULT_TOL};
use crate::state_space::{StateSpaceModel, StateVector};

const VALUE_TOL: f64 = 1e-12;

/// `A = Σₓ aₓ u_Fₓ` with distinct eigenvalues `aₓ` and eigenfaces `Fₓ`
/// given by generating frames.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observable {
    pub eigenvalues: Vec<f64>,
    pub eigenface_units: Vec<Vec<f64>>,
    pub eigenface_ranks: Vec<usize>,
    pub faces: Vec<Frame>,
}

impl Observable {
    /// The ambient vector `Σ aₓ u_Fₓ`.
    pub fn vector(&self) -> Vec<f64> {
        let n = self.eigenface_units.first().map_or(0, Vec::len);
        let mut v = vec![0.0; n];
        for (a, u) in self.eigenvalues.iter().zip(&self.eigenface_units) {
            crate::linalg::axpy(&mut v, *a, u);
        }
        v
    }

    /// Assemble from parts, merging eigenvalues that coincide.
    fn merged(model: &StateSpaceModel, values: Vec<f64>, faces: Vec<Frame>) -> Observable {
        let mut out_values: Vec<f64> = Vec::new();
        let mut out_faces: Vec<Frame> = Vec::new();
        for (a, f) in values.into_iter().zip(faces) {
            match out_values.iter().position(|b| (a - b).abs() <= VALUE_TOL) {
                Some(k) => out_faces[k].states.extend(f.states),
                None => {
                    out_values.push(a);
                    out_faces.push(f);
                }
            }
        }
        Observable {
            eigenface_units: out_faces.iter().map(|f| f.sum(model)).collect(),
            eigenface_ranks: out_faces.iter().map(Frame::size).collect(),
            eigenvalues: out_values,
            faces: out_faces,
        }
    }

    /// Pairs `(aₓ, u_Fₓ)` sorted by eigenvalue.
    fn sorted_pairs(&self) -> Vec<(f64, &Vec<f64>)> {
        let mut p: Vec<(f64, &Vec<f64>)> = self
            .eigenvalues
            .iter()
            .cloned()
            .zip(&self.eigenface_units)
            .collect();
        p.sort_by(|a, b| a.0.total_cmp(&b.0));
        p
    }
}

pub fn observable_from_spectral_data(
    model: &StateSpaceModel,
    values: &[f64],
    faces: &[Frame],
) -> Result<Observable> {
    if values.len() != faces.len() {
        return Err(GptError::DimensionMismatch {
            expected: faces.len(),
            got: values.len(),
        });
    }
    for (i, a) in values.iter().enumerate() {
        if values[..i].iter().any(|b| (a - b).abs() <= VALUE_TOL) {
            return Err(GptError::RepeatedValue(*a));
        }
    }
    let union = check_faces_orthogonal(model, faces)?;
    if union.len() != model.max_frame_size() {
        return Err(GptError::InvalidFrame(
            "eigenfaces must together span a maximal frame".into(),
        ));
    }
    Ok(Observable::merged(model, values.to_vec(), faces.to_vec()))
}

/// `f(A)`: `f` applied to every eigenvalue, merging values that collide.
pub fn observable_apply_function(
    model: &StateSpaceModel,
    obs: &Observable,
    f: impl Fn(f64) -> f64,
) -> Observable {
    Observable::merged(
        model,
        obs.eigenvalues.iter().map(|&a| f(a)).collect(),
        obs.faces.clone(),
    )
}

/// `A + L·u_F` where `F` is the eigenface of the smallest eigenvalue.
pub fn observable_shift(model: &StateSpaceModel, obs: &Observable, shift: f64) -> Observable {
    let k = (0..obs.eigenvalues.len())
        .min_by(|&i, &j| obs.eigenvalues[i].total_cmp(&obs.eigenvalues[j]))
        .expect("observable has eigenvalues");
    let mut values = obs.eigenvalues.clone();
    values[k] += shift;
    Observable::merged(model, values, obs.faces.clone())
}

/// Spectral data of an ambient vector of a self-dual model. Degenerate
/// eigenfaces get a random generating frame drawn from `rng`.
pub fn observable_from_vector<R: Rng + ?Sized>(
    model: &StateSpaceModel,
    v: &[f64],
    rng: &mut R,
) -> Result<Observable> {
    if !model.has_self_dual_inner_product() {
        return Err(GptError::NoSelfDualInnerProduct(model.name()));
    }
    if v.len() != model.vector_dim() {
        return Err(GptError::DimensionMismatch {
            expected: model.vector_dim(),
            got: v.len(),
        });
    }
    let (values, faces) = match model {
        StateSpaceModel::Classical { n } => {
            let mut values = Vec::new();
            let mut faces = Vec::new();
            for (j, &x) in v.iter().enumerate().take(*n) {
                values.push(x);
                faces.push(Frame::new(vec![model.basis_state(j)?]));
            }
            (values, faces)
        }
        StateSpaceModel::Quantum { d } => {
            let h = hermitian::coords_to_hermitian(v, *d)?;
            let eig = hermitian::hermitian_eigen(&h, DEFAULT_TOL)?;
            let mut values = Vec::new();
            let mut faces = Vec::new();
            for cluster in eig.clusters(CLUSTER_GAP) {
                let k = cluster.len();
                let mean = eig.eigenvalues[cluster.clone()].iter().sum::<f64>() / k as f64;
                let u = hermitian::random_orthonormal_basis(k, rng);
                let rotated: Vec<Vec<Complex64>> = u
                    .iter()
                    .map(|col| {
                        let mut out = vec![Complex64::new(0.0, 0.0); *d];
                        for (c, idx) in col.iter().zip(cluster.clone()) {
                            for (o, e) in out.iter_mut().zip(&eig.eigenvectors[idx]) {
                                *o += c * e;
                            }
                        }
                        out
                    })
                    .collect();
                values.push(mean);
                faces.push(quantum_frame(model, &rotated)?);
            }
            (values, faces)
        }
        StateSpaceModel::Ball { d } => {
            let r = &v[1..];
            let len = crate::linalg::norm(r);
            let axis: Vec<f64> = if len > 1e-12 {
                r.iter().map(|x| x / len).collect()
            } else {
                crate::state_space::sampling::random_unit_real(*d, rng)
            };
            let pure = |sign: f64| {
                StateVector::new(
                    std::iter::once(1.0)
                        .chain(axis.iter().map(|x| sign * x))
                        .collect(),
                )
            };
            (
                vec![(v[0] + len) / 2.0, (v[0] - len) / 2.0],
                vec![Frame::new(vec![pure(1.0)]), Frame::new(vec![pure(-1.0)])],
            )
        }
        _ => unreachable!("self-dual models only"),
    };
    Ok(Observable::merged(model, values, faces))
}

/// Rebuild `A` from its eigendata, re-extract spectral data through an
/// independently rotated decomposition, and compare.
pub fn observable_eigendata_roundtrip<R: Rng + ?Sized>(
    model: &StateSpaceModel,
    obs: &Observable,
    rng: &mut R,
) -> Result<bool> {
    let again = observable_from_vector(model, &obs.vector(), rng)?;
    let (a, b) = (obs.sorted_pairs(), again.sorted_pairs());
    Ok(a.len() == b.len()
        && a.iter().zip(&b).all(|((x, u), (y, w))| {
            (x - y).abs() <= 1e-9 && max_abs_diff(u, w) <= 1e-9
        }))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::standard_frame;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn singletons(f: &Frame) -> Vec<Frame> {
        f.states.iter().map(|w| Frame::new(vec![w.clone()])).collect()
    }

    #[test]
    fn pauli_z_and_square() {
        let q2 = StateSpaceModel::quantum(2).unwrap();
        let z = standard_frame(&q2).unwrap();
        let obs = observable_from_spectral_data(&q2, &[1.0, -1.0], &singletons(&z)).unwrap();
        assert_eq!(obs.vector(), vec![1.0, -1.0, 0.0, 0.0]);
        let sq = observable_apply_function(&q2, &obs, |x| x * x);
        assert_eq!(sq.eigenvalues, vec![1.0]);
        assert_eq!(sq.eigenface_ranks, vec![2]);
        assert_eq!(sq.eigenface_units[0], q2.order_unit_vector().unwrap());
    }

    #[test]
    fn premerged_degenerate_values() {
        let q3 = StateSpaceModel::quantum(3).unwrap();
        let s = standard_frame(&q3).unwrap().states;
        let faces = [Frame::new(s[..2].to_vec()), Frame::new(vec![s[2].clone()])];
        let obs = observable_from_spectral_data(&q3, &[1.0, 3.0], &faces).unwrap();
        assert_eq!(obs.eigenface_ranks, vec![2, 1]);
        assert!(matches!(
            observable_from_spectral_data(&q3, &[1.0, 1.0, 3.0], &singletons(&standard_frame(&q3).unwrap())),
            Err(GptError::RepeatedValue(_))
        ));
    }

    #[test]
    fn roundtrip_through_rotated_degenerate_basis() {
        let q3 = StateSpaceModel::quantum(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let basis = hermitian::random_orthonormal_basis(3, &mut rng);
        let f = quantum_frame(&q3, &basis).unwrap();
        let faces = [Frame::new(f.states[..2].to_vec()), Frame::new(vec![f.states[2].clone()])];
        let obs = observable_from_spectral_data(&q3, &[0.5, -2.0], &faces).unwrap();
        assert!(observable_eigendata_roundtrip(&q3, &obs, &mut rng).unwrap());
        // a second, differently rotated generating frame of the same face
        let again = observable_from_vector(&q3, &obs.vector(), &mut rng).unwrap();
        let k = again.eigenvalues.iter().position(|&a| (a - 0.5).abs() < 1e-9).unwrap();
        assert!(again.faces[k].states[0] != f.states[0]);
        assert!(max_abs_diff(&again.eigenface_units[k], &obs.eigenface_units[0]) < 1e-9);

        let shifted = observable_shift(&q3, &obs, 100.0);
        assert!(shifted.eigenvalues.contains(&98.0));
        assert!(observable_eigendata_roundtrip(&q3, &shifted, &mut rng).unwrap());
        let merged = observable_shift(&q3, &obs, 2.5);
        assert_eq!(merged.eigenvalues, vec![0.5]);
        assert!(observable_eigendata_roundtrip(&q3, &merged, &mut rng).unwrap());
    }

    #[test]
    fn non_degenerate_roundtrips() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let q3 = StateSpaceModel::quantum(3).unwrap();
        let obs = observable_from_spectral_data(
            &q3,
            &[1.0, 2.0, 3.0],
            &singletons(&standard_frame(&q3).unwrap()),
        )
        .unwrap();
        assert!(observable_eigendata_roundtrip(&q3, &obs, &mut rng).unwrap());
        let c3 = StateSpaceModel::classical(3).unwrap();
        let obs = observable_from_spectral_data(
            &c3,
            &[1.0, 2.0, 3.0],
            &singletons(&standard_frame(&c3).unwrap()),
        )
        .unwrap();
        assert!(observable_eigendata_roundtrip(&c3, &obs, &mut rng).unwrap());
        let b2 = StateSpaceModel::ball(2).unwrap();
        let pair = Frame::new(vec![
            StateVector::new(vec![1.0, 0.6, 0.8]),
            StateVector::new(vec![1.0, -0.6, -0.8]),
        ]);
        let obs = observable_from_spectral_data(&b2, &[4.0, -1.0], &singletons(&pair)).unwrap();
        assert!(observable_eigendata_roundtrip(&b2, &obs, &mut rng).unwrap());
    }
}
