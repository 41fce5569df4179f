use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Effect, Measurement};
use crate::decomposition::{is_frame, perfectly_distinguishable, Frame};
use crate::error::{GptError, Result};
use crate::linalg::hermitian::{self, CMatrix};
use crate::linalg::{dot, gram_schmidt, max_abs_diff, projector_onto_span, RealMatrix, DEFAULT_TOL};
use crate::state_space::{StateSpaceModel, StateVector, CONE_TOL};

const FRAME_TOL: f64 = 1e-9;

/// Mutually orthogonal projectors on the ambient space, one per face.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectiveMeasurement {
    pub projectors: Vec<RealMatrix>,
    pub face_ranks: Vec<usize>,
}

impl ProjectiveMeasurement {
    /// Projective units `u_A ∘ Pⱼ` as functionals.
    pub fn units(&self, model: &StateSpaceModel) -> Vec<Vec<f64>> {
        let u = model.order_unit().functional;
        self.projectors
            .iter()
            .map(|p| p.apply_transpose(&u).expect("projector matches model dimension"))
            .collect()
    }

    pub fn effects(&self, model: &StateSpaceModel) -> Measurement {
        Measurement::new(
            self.units(model)
                .into_iter()
                .enumerate()
                .map(|(j, c)| Effect::new(format!("P{}", j + 1), c))
                .collect(),
        )
    }

    /// Worst deviation from `Pⱼ = Pⱼᵀ`, `Pⱼ² = Pⱼ` and `PⱼP_k = 0` (j ≠ k).
    pub fn orthogonality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (j, p) in self.projectors.iter().enumerate() {
            worst = worst.max(p.max_asymmetry());
            for (k, q) in self.projectors.iter().enumerate() {
                let pq = p.matmul(q).expect("square projectors");
                let target = if j == k { p.clone() } else { RealMatrix::zeros(p.rows(), p.cols()) };
                worst = worst.max(pq.sub(&target).expect("same shape").max_abs());
            }
        }
        worst
    }

    pub fn is_valid(&self, model: &StateSpaceModel, tol: f64) -> bool {
        let dim = model.vector_dim();
        if self.projectors.is_empty()
            || self.projectors.iter().any(|p| p.rows() != dim || p.cols() != dim)
        {
            return false;
        }
        let mut total = vec![0.0; dim];
        for u in self.units(model) {
            crate::linalg::axpy(&mut total, 1.0, &u);
        }
        self.orthogonality_residual() <= tol
            && max_abs_diff(&total, &model.order_unit().functional) <= tol
    }

    pub fn is_degenerate(&self) -> bool {
        self.face_ranks.iter().any(|&r| r > 1)
    }
}

/// Unit vector `ψ` of a rank-1 quantum state `|ψ⟩⟨ψ|`.
pub fn quantum_pure_vector(model: &StateSpaceModel, w: &StateVector) -> Result<Vec<Complex64>> {
    let eig = hermitian::hermitian_eigen(&model.quantum_matrix(w)?, DEFAULT_TOL)?;
    Ok(eig.eigenvectors[0].clone())
}

/// Real coordinates of an orthonormal Hermitian basis of the operators
/// supported on `span{φ}`.
fn hermitian_basis_on(phis: &[Vec<Complex64>]) -> Vec<Vec<f64>> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let i = Complex64::new(0.0, 1.0);
    let mut out = Vec::new();
    for a in 0..phis.len() {
        out.push(hermitian::hermitian_to_coords(&CMatrix::projector(&phis[a])));
        for b in (a + 1)..phis.len() {
            let ab = CMatrix::outer(&phis[a], &phis[b]);
            let ba = CMatrix::outer(&phis[b], &phis[a]);
            out.push(hermitian::hermitian_to_coords(&ab.add(&ba).scaled(s)));
            let im = ab.add(&ba.scaled(-1.0)).scaled_complex(i * s);
            out.push(hermitian::hermitian_to_coords(&im));
        }
    }
    out
}

/// Orthogonal projector onto the linear span of the face generated by
/// `face`.
pub fn face_projector(model: &StateSpaceModel, face: &Frame) -> Result<RealMatrix> {
    if !model.has_self_dual_inner_product() {
        return Err(GptError::NoSelfDualInnerProduct(model.name()));
    }
    let dim = model.vector_dim();
    if face.size() == model.max_frame_size() {
        return Ok(RealMatrix::identity(dim));
    }
    match model {
        StateSpaceModel::Quantum { .. } => {
            let phis: Vec<Vec<Complex64>> = face
                .states
                .iter()
                .map(|w| quantum_pure_vector(model, w))
                .collect::<Result<_>>()?;
            let phis = hermitian::complex_gram_schmidt(&phis, 1e-6);
            Ok(projector_onto_span(&hermitian_basis_on(&phis), DEFAULT_TOL))
        }
        _ => {
            let vs: Vec<Vec<f64>> = face.states.iter().map(|w| model.vector(w)).collect();
            Ok(projector_onto_span(&vs, DEFAULT_TOL))
        }
    }
}

/// States extending the frame `union` to a maximal frame, chosen by
/// Gram–Schmidt against the canonical basis.
fn completion(model: &StateSpaceModel, union: &[StateVector]) -> Result<Vec<StateVector>> {
    match model {
        StateSpaceModel::Quantum { d } => {
            let mut vecs: Vec<Vec<Complex64>> = union
                .iter()
                .map(|w| quantum_pure_vector(model, w))
                .collect::<Result<_>>()?;
            let have = vecs.len();
            for k in 0..*d {
                let mut e = vec![Complex64::new(0.0, 0.0); *d];
                e[k] = Complex64::new(1.0, 0.0);
                vecs.push(e);
            }
            let basis = hermitian::complex_gram_schmidt(&vecs, 1e-6);
            basis[have..]
                .iter()
                .map(|psi| model.quantum_pure(psi))
                .collect()
        }
        StateSpaceModel::Ball { .. } => match union {
            [] => {
                let n = model.vector_dim();
                let mut plus = vec![0.0; n];
                plus[0] = 1.0;
                plus[1] = 1.0;
                let mut minus = plus.clone();
                minus[1] = -1.0;
                Ok(vec![StateVector::new(plus), StateVector::new(minus)])
            }
            [w] => {
                let mut anti = w.coords.clone();
                anti[1..].iter_mut().for_each(|x| *x = -*x);
                Ok(vec![StateVector::new(anti)])
            }
            _ => Ok(vec![]),
        },
        _ => {
            let n = model.vector_dim();
            let mut vecs: Vec<Vec<f64>> = union.iter().map(|w| model.vector(w)).collect();
            let have = vecs.len();
            for k in 0..n {
                let mut e = vec![0.0; n];
                e[k] = 1.0;
                vecs.push(e);
            }
            let basis = gram_schmidt(&vecs, 1e-9);
            Ok(basis[have..]
                .iter()
                .map(|v| StateVector::new(v.clone()))
                .collect())
        }
    }
}

pub(crate) fn check_faces_orthogonal(model: &StateSpaceModel, faces: &[Frame]) -> Result<Vec<StateVector>> {
    for (j, f) in faces.iter().enumerate() {
        if f.size() == 0 || !is_frame(model, &f.states, FRAME_TOL) {
            return Err(GptError::InvalidFrame(format!("face {} is not a frame", j + 1)));
        }
    }
    for j in 0..faces.len() {
        for k in (j + 1)..faces.len() {
            for a in &faces[j].states {
                for b in &faces[k].states {
                    if !perfectly_distinguishable(model, a, b, FRAME_TOL) {
                        return Err(GptError::NonOrthogonalFaces(format!(
                            "faces {} and {}",
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
    }
    let union: Vec<StateVector> = faces.iter().flat_map(|f| f.states.clone()).collect();
    if !is_frame(model, &union, FRAME_TOL) {
        return Err(GptError::InvalidFrame("union of faces is not a frame".into()));
    }
    Ok(union)
}

/// Rank-1 projectors onto the states of a maximal frame.
pub fn projective_measurement_from_frame(
    model: &StateSpaceModel,
    frame: &Frame,
) -> Result<ProjectiveMeasurement> {
    if !model.has_self_dual_inner_product() {
        return Err(GptError::NoSelfDualInnerProduct(model.name()));
    }
    if frame.size() != model.max_frame_size() || !is_frame(model, &frame.states, FRAME_TOL) {
        return Err(GptError::InvalidFrame(format!(
            "expected a maximal frame of size {}",
            model.max_frame_size()
        )));
    }
    let faces: Vec<Frame> = frame
        .states
        .iter()
        .map(|w| Frame::new(vec![w.clone()]))
        .collect();
    projective_measurement_from_faces(model, &faces, false)
}

/// One projector per face; with `complete`, the faces are padded to a
/// maximal frame and the padding becomes one more face.
pub fn projective_measurement_from_faces(
    model: &StateSpaceModel,
    faces: &[Frame],
    complete: bool,
) -> Result<ProjectiveMeasurement> {
    if !model.has_self_dual_inner_product() {
        return Err(GptError::NoSelfDualInnerProduct(model.name()));
    }
    let union = check_faces_orthogonal(model, faces)?;
    let mut faces = faces.to_vec();
    if union.len() < model.max_frame_size() {
        if !complete {
            return Err(GptError::InvalidFrame(
                "faces do not cover a maximal frame; request completion".into(),
            ));
        }
        faces.push(Frame::new(completion(model, &union)?));
    }
    let projectors = faces
        .iter()
        .map(|f| face_projector(model, f))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProjectiveMeasurement {
        projectors,
        face_ranks: faces.iter().map(Frame::size).collect(),
    })
}

/// Post-measurement ensemble `Σ Pⱼ w` and outcome probabilities.
pub fn apply_projective(
    model: &StateSpaceModel,
    pm: &ProjectiveMeasurement,
    w: &StateVector,
) -> Result<(StateVector, Vec<f64>)> {
    model.check(w)?;
    let v = model.vector(w);
    let mut out = vec![0.0; v.len()];
    for p in &pm.projectors {
        crate::linalg::axpy(&mut out, 1.0, &p.apply(&v)?);
    }
    let probs = pm.units(model).iter().map(|u| dot(u, &v)).collect();
    Ok((model.state_from_vector(&out), probs))
}

/// Projective units of three mutually orthogonal faces, which perfectly
/// discriminate states drawn from them.
pub fn pfister_discrimination(
    model: &StateSpaceModel,
    b1: &Frame,
    b3: &Frame,
    b4: &Frame,
) -> Result<Vec<Effect>> {
    if !model.has_self_dual_inner_product() {
        return Err(GptError::NoSelfDualInnerProduct(model.name()));
    }
    let faces = [b1.clone(), b3.clone(), b4.clone()];
    check_faces_orthogonal(model, &faces)?;
    let labels = ["u1", "u3", "u4"];
    let effects: Vec<Effect> = faces
        .iter()
        .zip(labels)
        .map(|(f, l)| {
            let sum = model.state_from_vector(&f.sum(model));
            Ok(Effect::new(l, model.riesz_functional(&sum)?))
        })
        .collect::<Result<_>>()?;
    // Σ uⱼ ≤ u_A: the representer of the gap must lie in the cone
    let mut gap = model.order_unit_vector().expect("self-dual model");
    for f in &faces {
        crate::linalg::axpy(&mut gap, -1.0, &f.sum(model));
    }
    if !model.contains_cone(&model.state_from_vector(&gap), CONE_TOL)? {
        return Err(GptError::NonOrthogonalFaces("Σ uⱼ exceeds u_A".into()));
    }
    Ok(effects)
}
