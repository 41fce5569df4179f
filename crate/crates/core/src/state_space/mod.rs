//! Concrete state-space models.
//!
//! Every model lives in an ambient real vector space `A` with a closed
//! generating cone `A₊` and a strictly positive order unit `u_A`. States are
//! plain coordinate vectors; the model supplies the interpretation. The egg
//! is the one exception: its states are stored as points `(x, y)` of the
//! normalization plane plus an explicit `scale`, and [`StateSpaceModel::vector`]
//! lifts them to homogeneous coordinates `(s, s·x, s·y)` for linear algebra.

pub mod egg;
pub mod gbit;
pub mod sampling;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use egg::EggShape;

use crate::error::{GptError, Result};
use crate::linalg::hermitian::{self, CMatrix};
use crate::linalg::{dot, norm, RealMatrix};

/// Cone-membership tolerance; boundary points count as members.
pub const CONE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "lowercase")]
pub enum StateSpaceModel {
    Classical { n: usize },
    Quantum { d: usize },
    Ball { d: usize },
    Gbit {},
    Egg(EggShape),
}

fn one() -> f64 {
    1.0
}

fn is_one(x: &f64) -> bool {
    *x == 1.0
}

/// An element of the ambient space of some model. `scale` is only used by
/// the egg, whose `coords` hold the point on the normalization plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    pub coords: Vec<f64>,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub scale: f64,
}

impl StateVector {
    pub fn new(coords: Vec<f64>) -> Self {
        StateVector { coords, scale: 1.0 }
    }

    pub fn scaled_point(coords: Vec<f64>, scale: f64) -> Self {
        StateVector { coords, scale }
    }
}

/// The order unit as a functional under the plain coordinate pairing of the
/// homogeneous vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderUnit {
    pub functional: Vec<f64>,
}

impl OrderUnit {
    pub fn evaluate(&self, vector: &[f64]) -> f64 {
        dot(&self.functional, vector)
    }
}

/// JSON form of a state: `{"model": {...}, "coords": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDocument {
    pub model: StateSpaceModel,
    pub coords: Vec<f64>,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub scale: f64,
}

impl StateDocument {
    pub fn new(model: &StateSpaceModel, state: &StateVector) -> Self {
        StateDocument {
            model: model.clone(),
            coords: state.coords.clone(),
            scale: state.scale,
        }
    }

    pub fn state(&self) -> StateVector {
        StateVector {
            coords: self.coords.clone(),
            scale: self.scale,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: StateDocument =
            serde_json::from_str(text).map_err(|e| GptError::InvalidInput(e.to_string()))?;
        doc.model.validate()?;
        doc.model.check(&doc.state())?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state documents always serialize")
    }
}

/// Linear map into a space where every normalized state has all
/// coordinates in `[0, 1]`, together with the transported order unit.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityEmbedding {
    pub map: RealMatrix,
    pub order_unit: Vec<f64>,
    pub description: String,
}

impl ProbabilityEmbedding {
    pub fn embed(&self, vector: &[f64]) -> Result<Vec<f64>> {
        self.map.apply(vector)
    }
}

impl StateSpaceModel {
    pub fn classical(n: usize) -> Result<Self> {
        let m = StateSpaceModel::Classical { n };
        m.validate()?;
        Ok(m)
    }

    pub fn quantum(d: usize) -> Result<Self> {
        let m = StateSpaceModel::Quantum { d };
        m.validate()?;
        Ok(m)
    }

    pub fn ball(d: usize) -> Result<Self> {
        let m = StateSpaceModel::Ball { d };
        m.validate()?;
        Ok(m)
    }

    pub fn gbit() -> Self {
        StateSpaceModel::Gbit {}
    }

    pub fn egg(r: f64, big_r: f64) -> Result<Self> {
        Ok(StateSpaceModel::Egg(EggShape::new(r, big_r)?))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            StateSpaceModel::Classical { n } if *n == 0 => {
                Err(GptError::InvalidInput("classical(n) needs n ≥ 1".into()))
            }
            StateSpaceModel::Quantum { d } | StateSpaceModel::Ball { d } if *d == 0 => {
                Err(GptError::InvalidInput("dimension must be ≥ 1".into()))
            }
            StateSpaceModel::Egg(e) => EggShape::new(e.r, e.big_r).map(|_| ()),
            _ => Ok(()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: StateSpaceModel =
            serde_json::from_str(text).map_err(|e| GptError::InvalidInput(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn name(&self) -> String {
        match self {
            StateSpaceModel::Classical { n } => format!("classical({n})"),
            StateSpaceModel::Quantum { d } => format!("quantum({d})"),
            StateSpaceModel::Ball { d } => format!("ball({d})"),
            StateSpaceModel::Gbit {} => "gbit".into(),
            StateSpaceModel::Egg(e) => format!("egg(r={}, R={})", e.r, e.big_r),
        }
    }

    /// Length of `StateVector::coords`.
    pub fn ambient_dim(&self) -> usize {
        match self {
            StateSpaceModel::Classical { n } => *n,
            StateSpaceModel::Quantum { d } => d * d,
            StateSpaceModel::Ball { d } => d + 1,
            StateSpaceModel::Gbit {} => 3,
            StateSpaceModel::Egg(_) => 2,
        }
    }

    /// Length of the homogeneous vector returned by [`Self::vector`].
    pub fn vector_dim(&self) -> usize {
        match self {
            StateSpaceModel::Egg(_) => 3,
            other => other.ambient_dim(),
        }
    }

    pub fn max_frame_size(&self) -> usize {
        match self {
            StateSpaceModel::Classical { n } => *n,
            StateSpaceModel::Quantum { d } => *d,
            StateSpaceModel::Ball { .. } | StateSpaceModel::Gbit {} | StateSpaceModel::Egg(_) => 2,
        }
    }

    pub fn has_self_dual_inner_product(&self) -> bool {
        matches!(
            self,
            StateSpaceModel::Classical { .. }
                | StateSpaceModel::Quantum { .. }
                | StateSpaceModel::Ball { .. }
        )
    }

    pub fn egg_shape(&self) -> Option<EggShape> {
        match self {
            StateSpaceModel::Egg(e) => Some(*e),
            _ => None,
        }
    }

    pub fn check(&self, v: &StateVector) -> Result<()> {
        if v.coords.len() != self.ambient_dim() {
            return Err(GptError::DimensionMismatch {
                expected: self.ambient_dim(),
                got: v.coords.len(),
            });
        }
        if v.coords.iter().any(|x| !x.is_finite()) || !v.scale.is_finite() {
            return Err(GptError::InvalidInput("state coordinates must be finite".into()));
        }
        Ok(())
    }

    /// Homogeneous ambient vector of a state.
    pub fn vector(&self, v: &StateVector) -> Vec<f64> {
        match self {
            StateSpaceModel::Egg(_) => {
                vec![v.scale, v.scale * v.coords[0], v.scale * v.coords[1]]
            }
            _ => v.coords.clone(),
        }
    }

    /// Inverse of [`Self::vector`].
    pub fn state_from_vector(&self, vector: &[f64]) -> StateVector {
        match self {
            StateSpaceModel::Egg(_) => {
                let s = vector[0];
                if s.abs() < 1e-300 {
                    StateVector::scaled_point(vec![0.0, 0.0], 0.0)
                } else {
                    StateVector::scaled_point(vec![vector[1] / s, vector[2] / s], s)
                }
            }
            _ => StateVector::new(vector.to_vec()),
        }
    }

    /// `Σ wⱼ vⱼ` computed in the ambient space.
    pub fn mix(&self, terms: &[(f64, &StateVector)]) -> StateVector {
        let mut acc = vec![0.0; self.vector_dim()];
        for (w, s) in terms {
            crate::linalg::axpy(&mut acc, *w, &self.vector(s));
        }
        self.state_from_vector(&acc)
    }

    pub fn order_unit(&self) -> OrderUnit {
        let mut f = vec![0.0; self.vector_dim()];
        match self {
            StateSpaceModel::Classical { .. } => f.iter_mut().for_each(|x| *x = 1.0),
            StateSpaceModel::Quantum { d } => f[..*d].iter_mut().for_each(|x| *x = 1.0),
            StateSpaceModel::Ball { .. } | StateSpaceModel::Egg(_) => f[0] = 1.0,
            StateSpaceModel::Gbit {} => f[2] = 1.0,
        }
        OrderUnit { functional: f }
    }

    pub fn order_unit_value(&self, v: &StateVector) -> f64 {
        self.order_unit().evaluate(&self.vector(v))
    }

    pub fn is_normalized(&self, v: &StateVector, tol: f64) -> bool {
        (self.order_unit_value(v) - 1.0).abs() <= tol
    }

    /// Representer of `u_A` under the self-dualizing inner product, i.e. the
    /// sum of any maximal frame.
    pub fn order_unit_vector(&self) -> Option<Vec<f64>> {
        match self {
            StateSpaceModel::Classical { n } => Some(vec![1.0; *n]),
            StateSpaceModel::Quantum { d } => {
                Some(hermitian::hermitian_to_coords(&CMatrix::identity(*d)))
            }
            StateSpaceModel::Ball { d } => {
                let mut v = vec![0.0; d + 1];
                v[0] = 2.0;
                Some(v)
            }
            _ => None,
        }
    }

    pub fn contains_cone(&self, v: &StateVector, tol: f64) -> Result<bool> {
        self.check(v)?;
        let c = &v.coords;
        Ok(match self {
            StateSpaceModel::Classical { .. } => c.iter().all(|&x| x >= -tol),
            StateSpaceModel::Quantum { d } => {
                let h = hermitian::coords_to_hermitian(c, *d)?;
                let eig = hermitian::hermitian_eigen(&h, crate::linalg::DEFAULT_TOL)?;
                eig.eigenvalues.last().is_none_or(|&m| m >= -tol)
            }
            StateSpaceModel::Ball { .. } => c[0] >= norm(&c[1..]) - tol,
            StateSpaceModel::Gbit {} => {
                let (a, b, n) = (c[0], c[1], c[2]);
                n >= -tol && a >= -tol && b >= -tol && a <= n + tol && b <= n + tol
            }
            StateSpaceModel::Egg(e) => {
                if v.scale < -tol {
                    false
                } else if v.scale.abs() <= tol {
                    true
                } else {
                    e.contains([c[0], c[1]], tol / v.scale.max(tol))
                }
            }
        })
    }

    /// Is `v` a normalized state?
    pub fn contains_state(&self, v: &StateVector, tol: f64) -> Result<bool> {
        Ok(self.contains_cone(v, tol)? && self.is_normalized(v, tol))
    }

    /// Functional `f` with `⟨v, w⟩ = f · vector(w)`.
    pub fn riesz_functional(&self, v: &StateVector) -> Result<Vec<f64>> {
        self.require_self_dual()?;
        let vec = self.vector(v);
        Ok(match self {
            StateSpaceModel::Ball { .. } => vec.iter().map(|x| 0.5 * x).collect(),
            _ => vec,
        })
    }

    /// The self-dualizing inner product on raw ambient vectors.
    pub fn inner_product_vectors(&self, a: &[f64], b: &[f64]) -> Result<f64> {
        self.require_self_dual()?;
        let ip = dot(a, b);
        Ok(match self {
            StateSpaceModel::Ball { .. } => 0.5 * ip,
            _ => ip,
        })
    }

    pub fn inner_product(&self, v: &StateVector, w: &StateVector) -> Result<f64> {
        self.check(v)?;
        self.check(w)?;
        self.inner_product_vectors(&self.vector(v), &self.vector(w))
    }

    fn require_self_dual(&self) -> Result<()> {
        if self.has_self_dual_inner_product() {
            Ok(())
        } else {
            Err(GptError::NoSelfDualInnerProduct(self.name()))
        }
    }

    pub fn is_pure(&self, v: &StateVector, tol: f64) -> bool {
        if self.check(v).is_err() || !self.is_normalized(v, tol) {
            return false;
        }
        match self {
            StateSpaceModel::Gbit {} => gbit::corner_index(v, tol).is_some(),
            StateSpaceModel::Egg(e) => e.on_boundary([v.coords[0], v.coords[1]], tol),
            _ => {
                self.contains_cone(v, tol.max(CONE_TOL)).unwrap_or(false)
                    && self
                        .inner_product(v, v)
                        .map(|n| (n - 1.0).abs() <= tol)
                        .unwrap_or(false)
            }
        }
    }

    pub fn probability_embedding(&self) -> ProbabilityEmbedding {
        let dim = self.vector_dim();
        match self {
            StateSpaceModel::Classical { .. } => ProbabilityEmbedding {
                map: RealMatrix::identity(dim),
                order_unit: self.order_unit().functional,
                description: "identity: coordinates are already probabilities".into(),
            },
            StateSpaceModel::Gbit {} => ProbabilityEmbedding {
                map: RealMatrix::identity(dim),
                order_unit: self.order_unit().functional,
                description: "identity: (p(x|E1), p(x|E2), normalization)".into(),
            },
            StateSpaceModel::Ball { d } => {
                let mut m = RealMatrix::zeros(dim, dim);
                m[(0, 0)] = 1.0;
                for i in 1..=*d {
                    m[(i, 0)] = 0.5;
                    m[(i, i)] = 0.5;
                }
                ProbabilityEmbedding {
                    map: m,
                    order_unit: self.order_unit().functional,
                    description: "(v0, r) -> (v0, (v0 + r_i)/2)".into(),
                }
            }
            StateSpaceModel::Quantum { d } => quantum_probability_embedding(*d),
            StateSpaceModel::Egg(e) => {
                let mut m = RealMatrix::zeros(3, 3);
                m[(0, 0)] = 1.0;
                m[(1, 0)] = e.big_r / (e.r + e.big_r);
                m[(1, 1)] = 1.0 / (e.r + e.big_r);
                m[(2, 0)] = 0.5;
                m[(2, 2)] = 0.5 / e.r;
                ProbabilityEmbedding {
                    map: m,
                    order_unit: self.order_unit().functional,
                    description: "(s, sx, sy) -> (s, s(x+R)/(r+R), s(y+r)/2r)".into(),
                }
            }
        }
    }

    /// Quantum state from a Hermitian matrix (no positivity check).
    pub fn quantum_state(&self, h: &CMatrix) -> Result<StateVector> {
        match self {
            StateSpaceModel::Quantum { d } if *d == h.dim() => {
                Ok(StateVector::new(hermitian::hermitian_to_coords(h)))
            }
            _ => Err(GptError::InvalidInput(format!(
                "{} does not hold {}x{} density matrices",
                self.name(),
                h.dim(),
                h.dim()
            ))),
        }
    }

    pub fn quantum_matrix(&self, v: &StateVector) -> Result<CMatrix> {
        match self {
            StateSpaceModel::Quantum { d } => hermitian::coords_to_hermitian(&v.coords, *d),
            _ => Err(GptError::InvalidInput(format!(
                "{} is not a quantum model",
                self.name()
            ))),
        }
    }

    pub fn quantum_pure(&self, psi: &[Complex64]) -> Result<StateVector> {
        self.quantum_state(&CMatrix::projector(psi))
    }

    /// Computational-basis state `e_j` (classical), `|j⟩⟨j|` (quantum).
    pub fn basis_state(&self, j: usize) -> Result<StateVector> {
        match self {
            StateSpaceModel::Classical { n } if j < *n => {
                let mut c = vec![0.0; *n];
                c[j] = 1.0;
                Ok(StateVector::new(c))
            }
            StateSpaceModel::Quantum { d } if j < *d => {
                let mut diag = vec![0.0; *d];
                diag[j] = 1.0;
                self.quantum_state(&CMatrix::from_real_diag(&diag))
            }
            _ => Err(GptError::InvalidInput(format!(
                "no basis state {j} in {}",
                self.name()
            ))),
        }
    }

    /// Maximally mixed state (uniform over a maximal frame).
    pub fn maximally_mixed(&self) -> StateVector {
        match self {
            StateSpaceModel::Classical { n } => StateVector::new(vec![1.0 / *n as f64; *n]),
            StateSpaceModel::Quantum { d } => StateVector::new(hermitian::hermitian_to_coords(
                &CMatrix::identity(*d).scaled(1.0 / *d as f64),
            )),
            StateSpaceModel::Ball { d } => {
                let mut c = vec![0.0; d + 1];
                c[0] = 1.0;
                StateVector::new(c)
            }
            StateSpaceModel::Gbit {} => StateVector::new(vec![0.5, 0.5, 1.0]),
            StateSpaceModel::Egg(_) => StateVector::new(vec![0.0, 0.0]),
        }
    }
}

fn quantum_probability_embedding(d: usize) -> ProbabilityEmbedding {
    // rows: ρ_ii, then for each i<j the overlaps with (e_i+e_j)/√2 and (e_i+i e_j)/√2
    let dim = d * d;
    let mut m = RealMatrix::zeros(dim, dim);
    for i in 0..d {
        m[(i, i)] = 1.0;
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut k = d;
    for i in 0..d {
        for j in (i + 1)..d {
            // ⟨ψ|ρ|ψ⟩ = (ρ_ii + ρ_jj)/2 + Re ρ_ij, and Re ρ_ij = coord_k / √2
            m[(k, i)] = 0.5;
            m[(k, j)] = 0.5;
            m[(k, k)] = s;
            // (ρ_ii + ρ_jj)/2 − Im ρ_ij
            m[(k + 1, i)] = 0.5;
            m[(k + 1, j)] = 0.5;
            m[(k + 1, k + 1)] = -s;
            k += 2;
        }
    }
    let mut order_unit = vec![0.0; dim];
    order_unit[..d].iter_mut().for_each(|x| *x = 1.0);
    ProbabilityEmbedding {
        map: m,
        order_unit,
        description: "diagonal entries plus overlaps with (e_i+e_j)/√2 and (e_i+i·e_j)/√2".into(),
    }
}
