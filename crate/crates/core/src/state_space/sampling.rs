use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use std::f64::consts::{FRAC_PI_2, PI};

use super::{gbit, StateSpaceModel, StateVector};
use crate::linalg::hermitian::{self, CMatrix};

/// Uniform point of the probability simplex of size `n`.
pub fn random_probability_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let e: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}

pub fn random_unit_real<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(rng)).collect();
        let n = crate::linalg::norm(&v);
        if n > 1e-12 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

impl StateSpaceModel {
    pub fn random_pure_state(&self, seed: u64) -> StateVector {
        self.random_pure_state_with(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn random_pure_state_with<R: Rng + ?Sized>(&self, rng: &mut R) -> StateVector {
        match self {
            StateSpaceModel::Classical { n } => {
                let mut c = vec![0.0; *n];
                c[rng.random_range(0..*n)] = 1.0;
                StateVector::new(c)
            }
            StateSpaceModel::Quantum { d } => {
                let psi = hermitian::random_unit_vector(*d, rng);
                StateVector::new(hermitian::hermitian_to_coords(&CMatrix::projector(&psi)))
            }
            StateSpaceModel::Ball { d } => {
                let mut c = vec![1.0];
                c.extend(random_unit_real(*d, rng));
                StateVector::new(c)
            }
            StateSpaceModel::Gbit {} => gbit::corner(rng.random_range(0..4)),
            StateSpaceModel::Egg(e) => {
                let angle = rng.random_range(-FRAC_PI_2..=FRAC_PI_2);
                let p = if rng.random_bool(0.5) {
                    e.circle_point(angle)
                } else {
                    e.ellipse_point(angle)
                };
                StateVector::new(p.to_vec())
            }
        }
    }

    /// Normalized state with full-dimensional support in the state space.
    pub fn random_state_with<R: Rng + ?Sized>(&self, rng: &mut R) -> StateVector {
        match self {
            StateSpaceModel::Classical { n } => {
                StateVector::new(random_probability_vector(*n, rng))
            }
            StateSpaceModel::Quantum { d } => {
                let p = random_probability_vector(*d, rng);
                let basis = hermitian::random_orthonormal_basis(*d, rng);
                StateVector::new(hermitian::hermitian_to_coords(&mixture(&p, &basis)))
            }
            StateSpaceModel::Ball { d } => {
                let radius = rng.random::<f64>().powf(1.0 / *d as f64);
                let mut c = vec![1.0];
                c.extend(random_unit_real(*d, rng).into_iter().map(|x| radius * x));
                StateVector::new(c)
            }
            StateSpaceModel::Gbit {} => {
                StateVector::new(vec![rng.random::<f64>(), rng.random::<f64>(), 1.0])
            }
            StateSpaceModel::Egg(e) => {
                let rho = rng.random::<f64>().sqrt();
                let b = e.boundary_in_direction(rng.random_range(-PI..PI));
                StateVector::new(vec![rho * b[0], rho * b[1]])
            }
        }
    }

    /// Random nonzero cone element with norm scale in `(0, 3)`.
    pub fn random_cone_element_with<R: Rng + ?Sized>(&self, rng: &mut R) -> StateVector {
        let s = 3.0 * rng.random::<f64>() + 1e-6;
        let v = self.random_state_with(rng);
        match self {
            StateSpaceModel::Egg(_) => StateVector::scaled_point(v.coords, s),
            _ => StateVector::new(v.coords.iter().map(|x| s * x).collect()),
        }
    }
}

/// `Σ pₖ |ψₖ⟩⟨ψₖ|`
pub fn mixture(weights: &[f64], vectors: &[Vec<num_complex::Complex64>]) -> CMatrix {
    let d = vectors.first().map_or(0, |v| v.len());
    let mut m = CMatrix::zeros(d);
    for (p, psi) in weights.iter().zip(vectors) {
        m = m.add(&CMatrix::projector(psi).scaled(*p));
    }
    m
}
