//! Frames and classical decompositions.

pub mod egg;
pub mod majorization;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

pub use egg::{
    egg_antipode, egg_beta, egg_decompose, egg_g, egg_grid_sweep, egg_nonuniqueness_witness, EggDecomposition,
    EggGridRow, EggWitness,
};
pub use majorization::{
    birkhoff_decomposition, birkhoff_reconstruct, majorizes, BirkhoffTerm,
    DoublyStochasticMatrix,
};

use crate::error::{GptError, Result};
use crate::linalg::hermitian::{self, CLUSTER_GAP};
use crate::linalg::{max_abs_diff, RealMatrix, DEFAULT_TOL};
use crate::state_space::{gbit, StateSpaceModel, StateVector, CONE_TOL};

/// Reconstruction tolerance for classical decompositions.
pub const RECONSTRUCTION_TOL: f64 = 1e-9;

/// Mutually perfectly distinguishable pure states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub states: Vec<StateVector>,
}

impl Frame {
    pub fn new(states: Vec<StateVector>) -> Self {
        Frame { states }
    }

    pub fn size(&self) -> usize {
        self.states.len()
    }

    /// Sum of the frame's ambient vectors.
    pub fn sum(&self, model: &StateSpaceModel) -> Vec<f64> {
        let mut s = vec![0.0; model.vector_dim()];
        for w in &self.states {
            crate::linalg::axpy(&mut s, 1.0, &model.vector(w));
        }
        s
    }
}

/// `w = Σ pⱼ wⱼ` over a frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalDecomposition {
    pub weights: Vec<f64>,
    pub frame: Frame,
}

impl ClassicalDecomposition {
    pub fn reconstruct(&self, model: &StateSpaceModel) -> StateVector {
        let terms: Vec<(f64, &StateVector)> =
            self.weights.iter().cloned().zip(&self.frame.states).collect();
        model.mix(&terms)
    }

    /// Max-norm distance between `w` and the reconstruction.
    pub fn residual(&self, model: &StateSpaceModel, w: &StateVector) -> f64 {
        max_abs_diff(&model.vector(&self.reconstruct(model)), &model.vector(w))
    }

    /// Weights sorted descending with zeros dropped.
    pub fn spectrum(&self) -> Vec<f64> {
        crate::probability::sorted_support(&self.weights, 1e-12)
    }
}

/// The model's canonical classical decomposition of a normalized state.
pub fn classical_decomposition(
    model: &StateSpaceModel,
    w: &StateVector,
) -> Result<ClassicalDecomposition> {
    model.check(w)?;
    if !model.contains_state(w, CONE_TOL)? {
        return Err(GptError::OutsideStateSpace(format!(
            "not a normalized state of {}",
            model.name()
        )));
    }
    match model {
        StateSpaceModel::Classical { n } => Ok(ClassicalDecomposition {
            weights: w.coords.clone(),
            frame: Frame::new((0..*n).map(|j| model.basis_state(j)).collect::<Result<_>>()?),
        }),
        StateSpaceModel::Quantum { .. } => {
            let eig = hermitian::hermitian_eigen(&model.quantum_matrix(w)?, DEFAULT_TOL)?;
            quantum_decomposition_from_vectors(model, w, &eig.eigenvectors)
        }
        StateSpaceModel::Ball { d } => {
            let r = &w.coords[1..];
            let len = crate::linalg::norm(r);
            let axis: Vec<f64> = if len > 1e-12 {
                r.iter().map(|x| x / len).collect()
            } else {
                let mut e = vec![0.0; *d];
                e[0] = 1.0;
                e
            };
            let len = len.min(1.0);
            let plus: Vec<f64> = std::iter::once(1.0).chain(axis.iter().cloned()).collect();
            let minus: Vec<f64> = std::iter::once(1.0).chain(axis.iter().map(|x| -x)).collect();
            Ok(ClassicalDecomposition {
                weights: vec![(1.0 + len) / 2.0, (1.0 - len) / 2.0],
                frame: Frame::new(vec![StateVector::new(plus), StateVector::new(minus)]),
            })
        }
        StateSpaceModel::Gbit {} => match gbit::edge_decomposition(w, CONE_TOL) {
            Some((i, j, t)) => Ok(ClassicalDecomposition {
                weights: vec![t, 1.0 - t],
                frame: Frame::new(vec![gbit::corner(i), gbit::corner(j)]),
            }),
            None => Err(GptError::NoClassicalDecomposition(format!(
                "gbit state {:?} is not on an edge of the square",
                w.coords
            ))),
        },
        StateSpaceModel::Egg(shape) => {
            let p = [w.coords[0], w.coords[1]];
            Ok(egg_decompose(p, shape, RECONSTRUCTION_TOL)?.decomposition)
        }
    }
}

/// Quantum decomposition over the orthonormal basis `vectors`, with weights
/// `⟨φ|ρ|φ⟩` read off the state. Fails if the basis does not diagonalize it.
pub fn quantum_decomposition_from_vectors(
    model: &StateSpaceModel,
    w: &StateVector,
    vectors: &[Vec<Complex64>],
) -> Result<ClassicalDecomposition> {
    let rho = model.quantum_matrix(w)?;
    let mut weights = Vec::with_capacity(vectors.len());
    let mut states = Vec::with_capacity(vectors.len());
    for phi in vectors {
        let p = hermitian::cdot(phi, &rho.apply(phi)).re;
        weights.push(if p.abs() < 1e-15 { 0.0 } else { p });
        states.push(model.quantum_pure(phi)?);
    }
    let dec = ClassicalDecomposition {
        weights,
        frame: Frame::new(states),
    };
    let res = dec.residual(model, w);
    if res > RECONSTRUCTION_TOL {
        return Err(GptError::NoClassicalDecomposition(format!(
            "basis does not diagonalize the state (residual {res:e})"
        )));
    }
    Ok(dec)
}

/// Eigenbasis of a quantum state with every degenerate eigenspace rotated
/// by an independent random unitary.
pub fn rotated_eigenbasis<R: Rng + ?Sized>(
    model: &StateSpaceModel,
    w: &StateVector,
    rng: &mut R,
) -> Result<Vec<Vec<Complex64>>> {
    let eig = hermitian::hermitian_eigen(&model.quantum_matrix(w)?, DEFAULT_TOL)?;
    let d = eig.eigenvectors.len();
    let mut out = Vec::with_capacity(d);
    for cluster in eig.clusters(CLUSTER_GAP) {
        let k = cluster.len();
        let u = hermitian::random_orthonormal_basis(k, rng);
        for col in &u {
            let mut v = vec![Complex64::new(0.0, 0.0); d];
            for (c, idx) in col.iter().zip(cluster.clone()) {
                for (vi, ei) in v.iter_mut().zip(&eig.eigenvectors[idx]) {
                    *vi += c * ei;
                }
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// Quantum classical decomposition in a randomly rotated eigenbasis.
pub fn rotated_quantum_decomposition<R: Rng + ?Sized>(
    model: &StateSpaceModel,
    w: &StateVector,
    rng: &mut R,
) -> Result<ClassicalDecomposition> {
    let basis = rotated_eigenbasis(model, w, rng)?;
    quantum_decomposition_from_vectors(model, w, &basis)
}

/// Can `a` and `b` be told apart with certainty by a single effect?
pub fn perfectly_distinguishable(
    model: &StateSpaceModel,
    a: &StateVector,
    b: &StateVector,
    tol: f64,
) -> bool {
    match model {
        StateSpaceModel::Gbit {} => {
            match (gbit::corner_index(a, tol), gbit::corner_index(b, tol)) {
                (Some(i), Some(j)) => gbit::adjacent(i, j),
                _ => false,
            }
        }
        StateSpaceModel::Egg(shape) => {
            let (pa, pb) = ([a.coords[0], a.coords[1]], [b.coords[0], b.coords[1]]);
            if !(shape.on_boundary(pa, tol) && shape.on_boundary(pb, tol)) {
                return false;
            }
            let (na, nb) = (shape.outward_normal(pa), shape.outward_normal(pb));
            (na[0] + nb[0]).abs() <= tol.max(1e-9) && (na[1] + nb[1]).abs() <= tol.max(1e-9)
        }
        _ => model
            .inner_product(a, b)
            .map(|ip| ip.abs() <= tol)
            .unwrap_or(false),
    }
}

/// Pure, normalized and pairwise perfectly distinguishable.
pub fn is_frame(model: &StateSpaceModel, states: &[StateVector], tol: f64) -> bool {
    if states.len() > model.max_frame_size() {
        return false;
    }
    if !states.iter().all(|w| model.is_pure(w, tol)) {
        return false;
    }
    for i in 0..states.len() {
        for j in (i + 1)..states.len() {
            if !perfectly_distinguishable(model, &states[i], &states[j], tol) {
                return false;
            }
        }
    }
    true
}

/// Does the frame add up to the order-unit vector? Always false where the
/// model has no self-dualizing inner product to represent `u_A`.
pub fn frame_sums_to_order_unit(model: &StateSpaceModel, frame: &Frame) -> bool {
    match model.order_unit_vector() {
        Some(u) => max_abs_diff(&frame.sum(model), &u) <= 1e-9,
        None => false,
    }
}

fn require_maximal(model: &StateSpaceModel, frame: &Frame) -> Result<()> {
    if frame.size() != model.max_frame_size() || !is_frame(model, &frame.states, 1e-9) {
        return Err(GptError::InvalidFrame(format!(
            "expected a maximal frame of size {} in {}",
            model.max_frame_size(),
            model.name()
        )));
    }
    Ok(())
}

/// `Rᵢⱼ = ⟨aᵢ, bⱼ⟩` for two maximal frames.
pub fn frame_overlap_matrix(
    model: &StateSpaceModel,
    a: &Frame,
    b: &Frame,
) -> Result<DoublyStochasticMatrix> {
    if !model.has_self_dual_inner_product() {
        return Err(GptError::NoSelfDualInnerProduct(model.name()));
    }
    require_maximal(model, a)?;
    require_maximal(model, b)?;
    let n = a.size();
    let mut m = RealMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = model.inner_product(&a.states[i], &b.states[j])?;
        }
    }
    DoublyStochasticMatrix::new(m)
}

/// Frame of rank-1 projectors onto an orthonormal basis.
pub fn quantum_frame(model: &StateSpaceModel, basis: &[Vec<Complex64>]) -> Result<Frame> {
    Ok(Frame::new(
        basis
            .iter()
            .map(|psi| model.quantum_pure(psi))
            .collect::<Result<_>>()?,
    ))
}

/// Computational-basis frame of a classical or quantum model.
pub fn standard_frame(model: &StateSpaceModel) -> Result<Frame> {
    Ok(Frame::new(
        (0..model.max_frame_size())
            .map(|j| model.basis_state(j))
            .collect::<Result<_>>()?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian::CMatrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn classical_weights_are_components() {
        let m = StateSpaceModel::classical(3).unwrap();
        let w = StateVector::new(vec![0.5, 0.3, 0.2]);
        let d = classical_decomposition(&m, &w).unwrap();
        assert_eq!(d.weights, vec![0.5, 0.3, 0.2]);
        assert!(is_frame(&m, &d.frame.states, 1e-12));
        assert_eq!(d.residual(&m, &w), 0.0);
    }

    #[test]
    fn quantum_diagonal_state() {
        let m = StateSpaceModel::quantum(2).unwrap();
        let w = m.quantum_state(&CMatrix::from_real_diag(&[0.75, 0.25])).unwrap();
        let d = classical_decomposition(&m, &w).unwrap();
        // closed-form 2×2 eigenvalues: (t ± √(t² − 4 det))/2 with t = 1, det = 3/16
        let disc = (1.0f64 - 4.0 * 0.1875).sqrt();
        assert!((d.weights[0] - (1.0 + disc) / 2.0).abs() < 1e-12);
        assert!((d.weights[1] - (1.0 - disc) / 2.0).abs() < 1e-12);
        assert!(d.residual(&m, &w) < 1e-12);
        assert!(max_abs_diff(&d.frame.states[0].coords, &m.basis_state(0).unwrap().coords) < 1e-12);
    }

    #[test]
    fn ball_decomposition() {
        let m = StateSpaceModel::ball(2).unwrap();
        let w = StateVector::new(vec![1.0, 0.5, 0.0]);
        let d = classical_decomposition(&m, &w).unwrap();
        // solve (1, 0.5, 0) = p(1, 1, 0) + (1 − p)(1, −1, 0): p = 0.75
        assert_eq!(d.weights, vec![0.75, 0.25]);
        assert_eq!(d.frame.states[0].coords, vec![1.0, 1.0, 0.0]);
        assert_eq!(d.frame.states[1].coords, vec![1.0, -1.0, 0.0]);
        let center = classical_decomposition(&m, &m.maximally_mixed()).unwrap();
        assert_eq!(center.frame.states[0].coords, vec![1.0, 1.0, 0.0]);
    }

    #[test]
    fn gbit_edges_only() {
        let g = StateSpaceModel::gbit();
        let edge = StateVector::new(vec![1.0, 0.3, 1.0]);
        let d = classical_decomposition(&g, &edge).unwrap();
        assert!(d.residual(&g, &edge) < 1e-15);
        assert!(matches!(
            classical_decomposition(&g, &g.maximally_mixed()),
            Err(GptError::NoClassicalDecomposition(_))
        ));
    }

    #[test]
    fn frame_checks() {
        let q3 = StateSpaceModel::quantum(3).unwrap();
        let std3 = standard_frame(&q3).unwrap();
        assert!(is_frame(&q3, &std3.states, 1e-12));
        assert!(frame_sums_to_order_unit(&q3, &std3));
        let sub = Frame::new(std3.states[..2].to_vec());
        assert!(!frame_sums_to_order_unit(&q3, &sub));

        let q2 = StateSpaceModel::quantum(2).unwrap();
        let plus = q2.quantum_pure(&[c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]).unwrap();
        assert!(!is_frame(&q2, &[q2.basis_state(0).unwrap(), plus], 1e-9));
        assert!(frame_sums_to_order_unit(&q2, &standard_frame(&q2).unwrap()));

        let b2 = StateSpaceModel::ball(2).unwrap();
        let pair = [
            StateVector::new(vec![1.0, 0.6, 0.8]),
            StateVector::new(vec![1.0, -0.6, -0.8]),
        ];
        assert!(is_frame(&b2, &pair, 1e-12));
        let b3 = StateSpaceModel::ball(3).unwrap();
        let pair3 = Frame::new(vec![
            StateVector::new(vec![1.0, 0.0, 0.6, 0.8]),
            StateVector::new(vec![1.0, 0.0, -0.6, -0.8]),
        ]);
        assert!(frame_sums_to_order_unit(&b3, &pair3));
    }

    #[test]
    fn gbit_and_egg_frames() {
        let g = StateSpaceModel::gbit();
        assert!(is_frame(&g, &[gbit::corner(0), gbit::corner(1)], 1e-12));
        assert!(!frame_sums_to_order_unit(&g, &Frame::new(vec![gbit::corner(0), gbit::corner(1)])));
        let egg = StateSpaceModel::egg(1.0, 2.0).unwrap();
        let w = egg_nonuniqueness_witness(&egg.egg_shape().unwrap());
        assert!(is_frame(&egg, &w.vertical.frame.states, 1e-12));
        assert!(is_frame(&egg, &w.horizontal.frame.states, 1e-12));
        let skew = [StateVector::new(vec![0.0, 1.0]), StateVector::new(vec![1.0, 0.0])];
        assert!(!is_frame(&egg, &skew, 1e-9));
    }

    #[test]
    fn overlap_matrices() {
        let q2 = StateSpaceModel::quantum(2).unwrap();
        let z = standard_frame(&q2).unwrap();
        let id = frame_overlap_matrix(&q2, &z, &z).unwrap();
        assert!(id.matrix().approx_eq(&RealMatrix::identity(2), 1e-15));
        let s = FRAC_1_SQRT_2;
        let x = quantum_frame(&q2, &[vec![c(s), c(s)], vec![c(s), c(-s)]]).unwrap();
        let zx = frame_overlap_matrix(&q2, &z, &x).unwrap();
        assert!(zx.matrix().entries().iter().all(|e| (e - 0.5).abs() < 1e-12));

        let q3 = StateSpaceModel::quantum(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = quantum_frame(&q3, &hermitian::random_orthonormal_basis(3, &mut rng)).unwrap();
        let b = quantum_frame(&q3, &hermitian::random_orthonormal_basis(3, &mut rng)).unwrap();
        assert!(frame_overlap_matrix(&q3, &a, &b).is_ok());
        assert!(matches!(
            frame_overlap_matrix(&q3, &Frame::new(a.states[..2].to_vec()), &b),
            Err(GptError::InvalidFrame(_))
        ));
    }

    #[test]
    fn rotated_decompositions_agree_on_degenerate_state() {
        let q4 = StateSpaceModel::quantum(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let basis = hermitian::random_orthonormal_basis(4, &mut rng);
        let rho = crate::state_space::sampling::mixture(&[0.4, 0.4, 0.2, 0.0], &basis);
        let w = q4.quantum_state(&rho).unwrap();
        let d1 = rotated_quantum_decomposition(&q4, &w, &mut rng).unwrap();
        let d2 = rotated_quantum_decomposition(&q4, &w, &mut rng).unwrap();
        assert!(d1.residual(&q4, &w) < 1e-9 && d2.residual(&q4, &w) < 1e-9);
        assert!(max_abs_diff(&d1.spectrum(), &d2.spectrum()) < 1e-9);
        // q = R·p for the overlap matrix between the two frames
        let r = frame_overlap_matrix(&q4, &d1.frame, &d2.frame).unwrap();
        let q = r.matrix().apply_transpose(&d1.weights).unwrap();
        assert!(max_abs_diff(&q, &d2.weights) < 1e-9);
    }
}
