//! Randomized searches for the measurement and decomposition entropies.
//!
//! Each candidate is built deterministically from a vector of Gaussian
//! "genes", so the random phase can run in parallel with one RNG stream per
//! sample while the reduction (smallest value, then smallest index) stays
//! independent of thread count. A short sequential phase then perturbs the
//! best genes.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{EntropyMethod, EntropyReport, Witness, SUPPORT_TOL};
use crate::decomposition::{classical_decomposition, egg::egg_antipode};
use crate::error::{GptError, Result};
use crate::linalg::hermitian::{self, CMatrix};
use crate::linalg::{dot, norm, DEFAULT_TOL};
use crate::measurement::{distinguishing_measurement, egg_tangent_effect, Effect, Measurement};
use crate::probability::{renyi, LogBase};
use crate::state_space::{gbit, EggShape, StateSpaceModel, StateVector, CONE_TOL};

/// Share of the budget spent on local refinement of the best sample.
const REFINE_SHARE: usize = 5;
/// Largest number of frames mixed into one fine-grained measurement.
const MAX_MIXED_FRAMES: usize = 3;

/// Convex decomposition into pure states (not necessarily distinguishable).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PureDecomposition {
    pub weights: Vec<f64>,
    pub states: Vec<StateVector>,
}

impl PureDecomposition {
    pub fn reconstruct(&self, model: &StateSpaceModel) -> StateVector {
        let terms: Vec<(f64, &StateVector)> =
            self.weights.iter().cloned().zip(&self.states).collect();
        model.mix(&terms)
    }

    pub fn residual(&self, model: &StateSpaceModel, w: &StateVector) -> f64 {
        crate::linalg::max_abs_diff(&model.vector(&self.reconstruct(model)), &model.vector(w))
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussians<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

/// Map a gene to `[0, 1]` with both endpoints reachable.
fn unit_interval(g: f64) -> f64 {
    (0.5 * (1.0 + g.tanh()) * 1.2 - 0.1).clamp(0.0, 1.0)
}

fn complex_vectors(genes: &[f64], count: usize, len: usize) -> Vec<Vec<Complex64>> {
    (0..count)
        .map(|k| {
            (0..len)
                .map(|i| {
                    let o = 2 * (k * len + i);
                    Complex64::new(genes[o], genes[o + 1])
                })
                .collect()
        })
        .collect()
}

struct Best {
    value: f64,
    size: usize,
    genes: Vec<f64>,
}

fn run_search<G, E>(budget: usize, seed: u64, sizes: &[usize], genes_for: G, eval: E) -> Option<Best>
where
    G: Fn(usize) -> usize + Sync,
    E: Fn(usize, &[f64]) -> Option<f64> + Sync,
{
    if sizes.is_empty() || budget == 0 {
        return None;
    }
    let refine = budget / REFINE_SHARE;
    let random = budget - refine;
    let best = (0..random)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            let size = sizes[i % sizes.len()];
            let genes = gaussians(&mut rng, genes_for(size));
            eval(size, &genes)
                .filter(|v| v.is_finite())
                .map(|v| (v, i, size, genes))
        })
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))?;
    let mut best = Best {
        value: best.0,
        size: best.2,
        genes: best.3,
    };
    let mut rng = stream_rng(seed, u64::MAX);
    let mut sigma = 0.3;
    for _ in 0..refine {
        let trial: Vec<f64> = best
            .genes
            .iter()
            .map(|g| g + sigma * rng.sample::<f64, _>(StandardNormal))
            .collect();
        if let Some(v) = eval(best.size, &trial).filter(|v| v.is_finite()) {
            if v < best.value {
                best.value = v;
                best.genes = trial;
                continue;
            }
        }
        sigma = (sigma * 0.99).max(1e-4);
    }
    Some(best)
}

/// Random fine-grained measurements: mixtures `Σₖ λₖ Mₖ` of up to three
/// measurements whose effects are multiples of pure states.
struct MeasurementSpace<'a> {
    model: &'a StateSpaceModel,
    frame_genes: usize,
}

impl<'a> MeasurementSpace<'a> {
    fn new(model: &'a StateSpaceModel) -> Self {
        let frame_genes = match model {
            StateSpaceModel::Quantum { d } => 2 * d * d,
            StateSpaceModel::Ball { d } => *d,
            StateSpaceModel::Classical { .. } => 0,
            StateSpaceModel::Gbit {} | StateSpaceModel::Egg(_) => 1,
        };
        MeasurementSpace { model, frame_genes }
    }

    fn sizes(&self) -> Vec<usize> {
        (1..=MAX_MIXED_FRAMES).collect()
    }

    fn genes_for(&self, mixed: usize) -> usize {
        mixed * (1 + self.frame_genes)
    }

    /// Effects of one component measurement.
    fn component(&self, genes: &[f64]) -> Option<Vec<Vec<f64>>> {
        let u = self.model.order_unit().functional;
        match self.model {
            StateSpaceModel::Quantum { d } => {
                let raw = complex_vectors(genes, *d, *d);
                let basis = hermitian::complex_gram_schmidt(&raw, 1e-9);
                (basis.len() == *d).then(|| {
                    basis
                        .iter()
                        .map(|psi| hermitian::hermitian_to_coords(&CMatrix::projector(psi)))
                        .collect()
                })
            }
            StateSpaceModel::Ball { d } => {
                let n = norm(genes);
                (n > 1e-12).then(|| {
                    [1.0, -1.0]
                        .iter()
                        .map(|s| {
                            std::iter::once(0.5)
                                .chain(genes[..*d].iter().map(|x| 0.5 * s * x / n))
                                .collect()
                        })
                        .collect()
                })
            }
            StateSpaceModel::Classical { n } => Some(
                (0..*n)
                    .map(|j| {
                        let mut e = vec![0.0; *n];
                        e[j] = 1.0;
                        e
                    })
                    .collect(),
            ),
            StateSpaceModel::Gbit {} => {
                let side = if genes[0] < 0.0 { 0 } else { 1 };
                let e = gbit::edge_effect(side).to_vec();
                let rest = crate::linalg::sub(&u, &e);
                Some(vec![e, rest])
            }
            StateSpaceModel::Egg(shape) => {
                let p = shape.boundary_in_direction(PI * genes[0].tanh());
                let e = egg_tangent_effect(p, egg_antipode(p, shape), shape);
                let rest = crate::linalg::sub(&u, &e);
                Some(vec![e, rest])
            }
        }
    }

    fn build(&self, mixed: usize, genes: &[f64]) -> Option<Measurement> {
        let (weights, rest) = genes.split_at(mixed);
        let sq: Vec<f64> = weights.iter().map(|g| g * g + 1e-12).collect();
        let total: f64 = sq.iter().sum();
        let mut effects = Vec::new();
        for (k, chunk) in rest.chunks(self.frame_genes.max(1)).take(mixed).enumerate() {
            let lambda = sq[k] / total;
            let chunk = if self.frame_genes == 0 { &[][..] } else { chunk };
            for (j, e) in self.component(chunk)?.into_iter().enumerate() {
                effects.push(Effect::new(
                    format!("m{}e{}", k + 1, j + 1),
                    e.iter().map(|x| lambda * x).collect(),
                ));
            }
        }
        Some(Measurement::new(effects))
    }
}

/// A random fine-grained measurement of the kind the measurement search
/// explores.
pub fn random_fine_grained_measurement<R: Rng + ?Sized>(
    model: &StateSpaceModel,
    rng: &mut R,
) -> Measurement {
    let space = MeasurementSpace::new(model);
    loop {
        let mixed = rng.random_range(1..=MAX_MIXED_FRAMES);
        if let Some(m) = space.build(mixed, &gaussians(rng, space.genes_for(mixed))) {
            return m;
        }
    }
}

fn outcome_entropy(m: &Measurement, v: &[f64], alpha: f64) -> f64 {
    let p: Vec<f64> = m.effects.iter().map(|e| dot(&e.coords, v).max(0.0)).collect();
    renyi(&p, alpha, LogBase::Two)
}

/// Smallest outcome Rényi entropy (bits) found over `budget` random
/// fine-grained measurements, together with the eigenframe measurement
/// when the state has a classical decomposition.
pub fn measurement_entropy_search(
    model: &StateSpaceModel,
    w: &StateVector,
    alpha: f64,
    budget: usize,
    seed: u64,
) -> Result<EntropyReport> {
    check_search_input(model, w, alpha)?;
    let v = model.vector(w);
    let space = MeasurementSpace::new(model);
    let best = run_search(
        budget,
        seed,
        &space.sizes(),
        |s| space.genes_for(s),
        |s, g| space.build(s, g).map(|m| outcome_entropy(&m, &v, alpha)),
    );
    let searched = best.map(|b| {
        let m = space.build(b.size, &b.genes).expect("best genes rebuild");
        (b.value, m)
    });
    let eigen = classical_decomposition(model, w)
        .ok()
        .and_then(|d| distinguishing_measurement(model, &d.frame).ok())
        .map(|m| (outcome_entropy(&m, &v, alpha), m));
    let search_minimum = searched.as_ref().map(|s| s.0);
    let (value, witness) = match (searched, eigen) {
        (Some(s), Some(e)) => {
            if s.0 < e.0 {
                s
            } else {
                e
            }
        }
        (Some(s), None) => s,
        (None, Some(e)) => e,
        (None, None) => {
            return Err(GptError::InvalidInput("empty measurement search".into()));
        }
    };
    Ok(EntropyReport {
        value,
        base: LogBase::Two,
        method: EntropyMethod::MeasurementSearch,
        alpha: Some(alpha),
        search_minimum,
        samples: budget,
        witness: Some(Witness::Measurement(witness)),
    })
}

fn check_search_input(model: &StateSpaceModel, w: &StateVector, alpha: f64) -> Result<()> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(GptError::InvalidInput(format!("Rényi order {alpha} < 0")));
    }
    if !model.contains_state(w, CONE_TOL)? {
        return Err(GptError::OutsideStateSpace(format!(
            "not a normalized state of {}",
            model.name()
        )));
    }
    Ok(())
}

/// Geometry shared by the ball and the egg: points of the normalization
/// plane, boundary rays and exits.
enum Body {
    Ball,
    Egg(EggShape),
}

impl Body {
    fn boundary(&self, dir: &[f64]) -> Vec<f64> {
        match self {
            Body::Ball => dir.to_vec(),
            Body::Egg(s) => s.boundary_in_direction(dir[1].atan2(dir[0])).to_vec(),
        }
    }

    fn exit(&self, p: &[f64], d: &[f64]) -> f64 {
        match self {
            Body::Ball => {
                let (a, b, c) = (dot(d, d), 2.0 * dot(p, d), dot(p, p) - 1.0);
                let disc = (b * b - 4.0 * a * c).max(0.0);
                ((-b + disc.sqrt()) / (2.0 * a)).max(0.0)
            }
            Body::Egg(s) => s.ray_exit([p[0], p[1]], [d[0], d[1]]),
        }
    }
}

enum DecompositionKind {
    Quantum {
        values: Vec<f64>,
        vectors: Vec<Vec<Complex64>>,
    },
    Classical {
        p: Vec<f64>,
        support: Vec<usize>,
    },
    Geometric {
        body: Body,
        point: Vec<f64>,
    },
    Gbit {
        a: f64,
        b: f64,
    },
}

/// Random decompositions of a fixed state into pure states.
struct DecompositionSpace<'a> {
    model: &'a StateSpaceModel,
    kind: DecompositionKind,
    sizes: Vec<usize>,
}

impl<'a> DecompositionSpace<'a> {
    fn new(model: &'a StateSpaceModel, w: &StateVector) -> Result<Self> {
        let top = model.max_frame_size() + 2;
        let (kind, sizes) = match model {
            StateSpaceModel::Quantum { .. } => {
                let eig = hermitian::hermitian_eigen(&model.quantum_matrix(w)?, DEFAULT_TOL)?;
                let (values, vectors): (Vec<f64>, Vec<Vec<Complex64>>) = eig
                    .eigenvalues
                    .iter()
                    .cloned()
                    .zip(eig.eigenvectors)
                    .filter(|(l, _)| *l > 1e-12)
                    .unzip();
                let r = values.len().max(1);
                (DecompositionKind::Quantum { values, vectors }, (r..=top).collect())
            }
            StateSpaceModel::Classical { .. } => {
                let support: Vec<usize> = (0..w.coords.len())
                    .filter(|&j| w.coords[j] > 1e-12)
                    .collect();
                let s = support.len().max(1);
                (
                    DecompositionKind::Classical {
                        p: w.coords.clone(),
                        support,
                    },
                    (s..=top).collect(),
                )
            }
            StateSpaceModel::Ball { .. } => (
                DecompositionKind::Geometric {
                    body: Body::Ball,
                    point: w.coords[1..].to_vec(),
                },
                (2..=top).collect(),
            ),
            StateSpaceModel::Egg(s) => (
                DecompositionKind::Geometric {
                    body: Body::Egg(*s),
                    point: w.coords.clone(),
                },
                (2..=top).collect(),
            ),
            StateSpaceModel::Gbit {} => (
                DecompositionKind::Gbit {
                    a: w.coords[0],
                    b: w.coords[1],
                },
                vec![4],
            ),
        };
        Ok(DecompositionSpace { model, kind, sizes })
    }

    fn genes_for(&self, size: usize) -> usize {
        match &self.kind {
            DecompositionKind::Quantum { values, .. } => 2 * size * values.len(),
            DecompositionKind::Classical { .. } => size,
            DecompositionKind::Geometric { point, .. } => (size - 1) * point.len(),
            DecompositionKind::Gbit { .. } => 1,
        }
    }

    fn build(&self, size: usize, genes: &[f64]) -> Option<PureDecomposition> {
        match &self.kind {
            DecompositionKind::Quantum { values, vectors } => {
                // Hughston–Jozsa–Wootters: φₖ = Σⱼ Vₖⱼ √λⱼ eⱼ with V an isometry
                let r = values.len();
                let cols = hermitian::complex_gram_schmidt(&complex_vectors(genes, r, size), 1e-9);
                if cols.len() != r {
                    return None;
                }
                let d = vectors[0].len();
                let mut weights = Vec::with_capacity(size);
                let mut states = Vec::with_capacity(size);
                for k in 0..size {
                    let mut phi = vec![Complex64::new(0.0, 0.0); d];
                    for ((col, lam), vec) in cols.iter().zip(values).zip(vectors).take(r) {
                        let c = col[k] * lam.sqrt();
                        for (p, e) in phi.iter_mut().zip(vec) {
                            *p += c * e;
                        }
                    }
                    let n = hermitian::cnorm(&phi);
                    if n < 1e-150 {
                        continue;
                    }
                    let psi: Vec<Complex64> = phi.iter().map(|z| z / n).collect();
                    weights.push(n * n);
                    states.push(self.model.quantum_pure(&psi).ok()?);
                }
                Some(PureDecomposition { weights, states })
            }
            DecompositionKind::Classical { p, support } => {
                let s = support.len();
                let mut totals = vec![0.0; s];
                let sq: Vec<f64> = genes.iter().map(|g| g * g + 1e-12).collect();
                for (k, g) in sq.iter().enumerate() {
                    totals[k % s] += g;
                }
                let mut weights = Vec::with_capacity(size);
                let mut states = Vec::with_capacity(size);
                for (k, g) in sq.iter().enumerate() {
                    let j = support[k % s];
                    weights.push(p[j] * g / totals[k % s]);
                    states.push(self.model.basis_state(j).ok()?);
                }
                Some(PureDecomposition { weights, states })
            }
            DecompositionKind::Geometric { body, point } => {
                let pieces = chord_recursion(body, point, size, genes)?;
                let (weights, states) = pieces
                    .into_iter()
                    .map(|(wt, p)| {
                        let coords = match body {
                            Body::Ball => std::iter::once(1.0).chain(p).collect(),
                            Body::Egg(_) => p,
                        };
                        (wt, StateVector::new(coords))
                    })
                    .unzip();
                Some(PureDecomposition { weights, states })
            }
            DecompositionKind::Gbit { a, b } => {
                let lo = (a + b - 1.0).max(0.0);
                let hi = a.min(*b);
                let t = lo + (hi - lo) * unit_interval(genes[0]);
                Some(PureDecomposition {
                    weights: vec![t, a - t, 1.0 - a - b + t, b - t]
                        .into_iter()
                        .map(|x| x.max(0.0))
                        .collect(),
                    states: (0..4).map(gbit::corner).collect(),
                })
            }
        }
    }
}

/// Split `w` into `size` boundary points: peel off boundary points along
/// rays from random interior points, then finish with a random chord.
fn chord_recursion(
    body: &Body,
    w: &[f64],
    size: usize,
    genes: &[f64],
) -> Option<Vec<(f64, Vec<f64>)>> {
    let dim = w.len();
    let mut out = Vec::with_capacity(size);
    let mut cur = w.to_vec();
    let mut mass = 1.0;
    let chunks: Vec<&[f64]> = genes.chunks(dim).collect();
    for z in &chunks[..size - 2] {
        let n = norm(z);
        if n < 1e-12 {
            return None;
        }
        let dir: Vec<f64> = z.iter().map(|x| x / n).collect();
        let rho = 1.0 - (-n).exp();
        let x: Vec<f64> = body.boundary(&dir).iter().map(|b| rho * b).collect();
        let u = crate::linalg::sub(&cur, &x);
        let len = norm(&u);
        if len < 1e-12 {
            continue;
        }
        let uhat: Vec<f64> = u.iter().map(|c| c / len).collect();
        let t = body.exit(&cur, &uhat);
        let y: Vec<f64> = cur.iter().zip(&uhat).map(|(c, d)| c + t * d).collect();
        // cur = μ·x + (1 − μ)·y
        let mu = t / (t + len);
        out.push(((1.0 - mu) * mass, y));
        mass *= mu;
        cur = x;
    }
    let z = chunks[size - 2];
    let n = norm(z);
    if n < 1e-12 {
        return None;
    }
    let d: Vec<f64> = z.iter().map(|x| x / n).collect();
    let neg: Vec<f64> = d.iter().map(|x| -x).collect();
    let (tp, tm) = (body.exit(&cur, &d), body.exit(&cur, &neg));
    if tp + tm < 1e-14 {
        out.push((mass, cur));
    } else {
        let a: Vec<f64> = cur.iter().zip(&d).map(|(c, x)| c + tp * x).collect();
        let b: Vec<f64> = cur.iter().zip(&d).map(|(c, x)| c - tm * x).collect();
        out.push((mass * tm / (tp + tm), a));
        out.push((mass * tp / (tp + tm), b));
    }
    Some(out)
}

/// One random decomposition of `w` into `size` pure states (the smallest
/// admissible size is used if `size` is too small).
pub fn random_pure_decomposition<R: Rng + ?Sized>(
    model: &StateSpaceModel,
    w: &StateVector,
    size: usize,
    rng: &mut R,
) -> Result<PureDecomposition> {
    let space = DecompositionSpace::new(model, w)?;
    let size = size.clamp(space.sizes[0], *space.sizes.last().expect("nonempty sizes"));
    for _ in 0..100 {
        if let Some(d) = space.build(size, &gaussians(rng, space.genes_for(size))) {
            return Ok(d);
        }
    }
    Err(GptError::InvalidInput("could not sample a decomposition".into()))
}

/// Smallest Rényi entropy (bits) of the weights found over `budget` random
/// pure decompositions, together with the classical decomposition when one
/// exists.
pub fn decomposition_entropy_search(
    model: &StateSpaceModel,
    w: &StateVector,
    alpha: f64,
    budget: usize,
    seed: u64,
) -> Result<EntropyReport> {
    check_search_input(model, w, alpha)?;
    let space = DecompositionSpace::new(model, w)?;
    let best = run_search(
        budget,
        seed,
        &space.sizes,
        |s| space.genes_for(s),
        |s, g| space.build(s, g).map(|d| renyi(&d.weights, alpha, LogBase::Two)),
    );
    let searched = best.map(|b| {
        let d = space.build(b.size, &b.genes).expect("best genes rebuild");
        (b.value, d)
    });
    let classical = classical_decomposition(model, w).ok().map(|c| {
        let (weights, states) = c
            .weights
            .into_iter()
            .zip(c.frame.states)
            .filter(|(q, _)| *q > SUPPORT_TOL)
            .unzip();
        let d = PureDecomposition { weights, states };
        (renyi(&d.weights, alpha, LogBase::Two), d)
    });
    let search_minimum = searched.as_ref().map(|s| s.0);
    let (value, witness) = match (searched, classical) {
        (Some(s), Some(c)) => {
            if s.0 < c.0 {
                s
            } else {
                c
            }
        }
        (Some(s), None) => s,
        (None, Some(c)) => c,
        (None, None) => {
            return Err(GptError::InvalidInput("empty decomposition search".into()));
        }
    };
    Ok(EntropyReport {
        value,
        base: LogBase::Two,
        method: EntropyMethod::DecompositionSearch,
        alpha: Some(alpha),
        search_minimum,
        samples: budget,
        witness: Some(Witness::Decomposition(witness)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian::CMatrix;
    use crate::probability::collision_sum;

    fn qubit_diag() -> (StateSpaceModel, StateVector) {
        let m = StateSpaceModel::quantum(2).unwrap();
        let w = m.quantum_state(&CMatrix::from_real_diag(&[0.75, 0.25])).unwrap();
        (m, w)
    }

    fn gbit_center() -> (StateSpaceModel, StateVector) {
        (StateSpaceModel::gbit(), StateVector::new(vec![0.5, 0.5, 1.0]))
    }

    #[test]
    fn measurement_search_qubit() {
        let (m, w) = qubit_diag();
        let r = measurement_entropy_search(&m, &w, 1.0, 2000, 7).unwrap();
        assert!((r.value - 0.811278).abs() < 1e-6);
        assert!(r.search_minimum.unwrap() >= r.value - 1e-6);
        let Some(Witness::Measurement(wm)) = r.witness else { panic!() };
        assert!(wm.is_normalized(&m, 1e-9));
    }

    #[test]
    fn measurement_search_pure_and_gbit() {
        let m = StateSpaceModel::ball(3).unwrap();
        let w = StateVector::new(vec![1.0, 0.0, 0.6, 0.8]);
        let r = measurement_entropy_search(&m, &w, 1.0, 500, 1).unwrap();
        assert!(r.value.abs() < 1e-9);

        let (g, c) = gbit_center();
        let r = measurement_entropy_search(&g, &c, 1.0, 10_000, 3).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn decomposition_search_examples() {
        let (m, w) = qubit_diag();
        let r = decomposition_entropy_search(&m, &w, 2.0, 2000, 5).unwrap();
        let h2 = -(0.625f64).log2();
        assert!((r.value - h2).abs() < 1e-9);
        assert!(r.search_minimum.unwrap() >= h2 - 1e-9);

        let p = m.quantum_pure(&[Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]).unwrap();
        let r = decomposition_entropy_search(&m, &p, 1.0, 200, 5).unwrap();
        assert!(r.value.abs() < 1e-9);
        let Some(Witness::Decomposition(d)) = r.witness else { panic!() };
        assert_eq!(d.weights.len(), 1);

        let (g, c) = gbit_center();
        let r = decomposition_entropy_search(&g, &c, 0.0, 10_000, 9).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_decompositions_reconstruct_and_respect_collision_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let models = [
            StateSpaceModel::classical(4).unwrap(),
            StateSpaceModel::quantum(3).unwrap(),
            StateSpaceModel::ball(3).unwrap(),
        ];
        for m in &models {
            for _ in 0..100 {
                let w = m.random_state_with(&mut rng);
                let p = classical_decomposition(m, &w).unwrap().weights;
                let size = rng.random_range(1..=m.max_frame_size() + 2);
                let d = random_pure_decomposition(m, &w, size, &mut rng).unwrap();
                assert!(d.residual(m, &w) < 1e-9, "{}", m.name());
                assert!(d.states.iter().all(|s| m.is_pure(s, 1e-9)));
                assert!(collision_sum(&d.weights) <= collision_sum(&p) + 1e-9);
            }
        }
        let egg = StateSpaceModel::egg(1.0, 2.0).unwrap();
        let w = StateVector::new(vec![-0.4, 0.3]);
        for size in 2..=4 {
            let d = random_pure_decomposition(&egg, &w, size, &mut rng).unwrap();
            assert!(d.residual(&egg, &w) < 1e-9);
            assert!(d.states.iter().all(|s| egg.is_pure(s, 1e-9)));
        }
    }

    #[test]
    fn random_measurements_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for m in [
            StateSpaceModel::quantum(3).unwrap(),
            StateSpaceModel::ball(2).unwrap(),
            StateSpaceModel::gbit(),
            StateSpaceModel::egg(1.0, 1.5).unwrap(),
        ] {
            for _ in 0..20 {
                let meas = random_fine_grained_measurement(&m, &mut rng);
                assert!(meas.is_normalized(&m, 1e-9), "{}", m.name());
                let w = m.random_state_with(&mut rng);
                assert!(meas.probabilities(&m, &w).iter().all(|p| *p >= -1e-9));
            }
        }
    }

    #[test]
    fn search_is_independent_of_thread_count() {
        let m = StateSpaceModel::quantum(3).unwrap();
        let w = m.random_state_with(&mut ChaCha8Rng::seed_from_u64(4));
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| decomposition_entropy_search(&m, &w, 1.0, 500, 42).unwrap())
        };
        assert_eq!(run(1), run(4));
    }
}
