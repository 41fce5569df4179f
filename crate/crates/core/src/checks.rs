//! Randomized property suites. Each trial draws from its own RNG stream, so
//! results depend only on the seed and the trial count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decomposition::{classical_decomposition, quantum_frame, rotated_quantum_decomposition, Frame};
use crate::entropy::{orthogonal_mixture_relation, random_pure_decomposition, relative_entropy, RelativeEntropy};
use crate::error::Result;
use crate::linalg::hermitian::{hermitian_to_coords, random_orthonormal_basis};
use crate::measurement::projective::{projective_measurement_from_faces, ProjectiveMeasurement};
use crate::probability::collision_sum;
use crate::second_law::{mixing_concavity_check, second_law_projective, swap_entropy_decrease_demo};
use crate::state_space::sampling::{mixture, random_probability_vector, random_unit_real};
use crate::state_space::{StateSpaceModel, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    SecondLaw,
    Klein,
    Concavity,
    Petz,
    WellDefined,
    Collision,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::SecondLaw => "second-law",
            Suite::Klein => "klein",
            Suite::Concavity => "concavity",
            Suite::Petz => "petz",
            Suite::WellDefined => "well-defined",
            Suite::Collision => "collision",
        }
    }
}

/// A counterexample the suite reports but does not count as a failure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectedFailure {
    pub name: String,
    pub s_before: f64,
    pub s_after: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    /// Largest deviation from the ideal value over all trials.
    pub worst_residual: f64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub expected_failures: Vec<ExpectedFailure>,
}

impl SuiteSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Outcome of one trial: did it pass, and how far it strayed from the
/// ideal value (a violation or a numerical error, never negative).
type Trial = (bool, f64);

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

pub fn run_suite(suite: Suite, trials: usize, seed: u64) -> Result<SuiteSummary> {
    let results = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            match suite {
                Suite::SecondLaw => second_law_trial(i, &mut rng),
                Suite::Klein => klein_trial(&mut rng),
                Suite::Concavity => concavity_trial(&mut rng),
                Suite::Petz => petz_trial(&mut rng),
                Suite::WellDefined => well_defined_trial(&mut rng),
                Suite::Collision => collision_trial(&mut rng),
            }
        })
        .collect::<Result<Vec<Trial>>>()?;
    let passed = results.iter().filter(|t| t.0).count();
    let worst_residual = results.iter().map(|t| t.1).fold(0.0, |a: f64, b| if b > a { b } else { a });
    let mut expected_failures = Vec::new();
    if suite == Suite::SecondLaw {
        let r = swap_entropy_decrease_demo(2)?;
        expected_failures.push(ExpectedFailure {
            name: "swap with pure ancilla, quantum(2)".into(),
            s_before: r.s_before,
            s_after: r.s_after,
        });
    }
    Ok(SuiteSummary {
        suite,
        trials,
        passed,
        failed: trials - passed,
        worst_residual,
        expected_failures,
    })
}

/// Self-dual models the suites sample from.
pub fn self_dual_models() -> Vec<StateSpaceModel> {
    vec![
        StateSpaceModel::Classical { n: 3 },
        StateSpaceModel::Quantum { d: 2 },
        StateSpaceModel::Quantum { d: 3 },
        StateSpaceModel::Quantum { d: 4 },
        StateSpaceModel::Ball { d: 2 },
        StateSpaceModel::Ball { d: 3 },
    ]
}

/// Random maximal frame of a quantum, ball or classical model.
pub fn random_maximal_frame<R: Rng + ?Sized>(model: &StateSpaceModel, rng: &mut R) -> Result<Frame> {
    match model {
        StateSpaceModel::Quantum { d } => quantum_frame(model, &random_orthonormal_basis(*d, rng)),
        StateSpaceModel::Ball { d } => {
            let n = random_unit_real(*d, rng);
            let pole = |s: f64| StateVector::new(std::iter::once(1.0).chain(n.iter().map(|x| s * x)).collect());
            Ok(Frame::new(vec![pole(1.0), pole(-1.0)]))
        }
        _ => crate::decomposition::standard_frame(model),
    }
}

/// Projective measurement from a random maximal frame. With `degenerate`
/// (and a frame of at least three states), consecutive frame elements are
/// grouped into at least two faces, one of rank two or more.
pub fn random_projective_measurement<R: Rng + ?Sized>(
    model: &StateSpaceModel,
    degenerate: bool,
    rng: &mut R,
) -> Result<ProjectiveMeasurement> {
    let frame = random_maximal_frame(model, rng)?;
    let n = frame.size();
    let mut faces = Vec::new();
    let mut start = 0;
    while start < n {
        // at least one face of rank ≥ 2, and never a single face
        let len = if degenerate && n - start > 1 {
            let most = if start == 0 { n - 1 } else { n - start };
            rng.random_range(2..=most.max(2))
        } else {
            1
        };
        faces.push(Frame::new(frame.states[start..start + len].to_vec()));
        start += len;
    }
    projective_measurement_from_faces(model, &faces, false)
}

fn second_law_trial(i: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    // every third trial uses a degenerate measurement on quantum(3..4)
    let degenerate = i % 3 == 2;
    let model = if degenerate {
        StateSpaceModel::Quantum { d: rng.random_range(3..=4) }
    } else {
        match rng.random_range(0..5) {
            0 => StateSpaceModel::Quantum { d: 2 },
            1 => StateSpaceModel::Quantum { d: 3 },
            2 => StateSpaceModel::Quantum { d: 4 },
            3 => StateSpaceModel::Ball { d: 2 },
            _ => StateSpaceModel::Ball { d: 3 },
        }
    };
    let w = model.random_state_with(rng);
    let pm = random_projective_measurement(&model, degenerate, rng)?;
    let r = second_law_projective(&model, &w, &pm)?;
    Ok((r.passed, (-r.delta).max(0.0)))
}

fn pick<R: Rng + ?Sized>(rng: &mut R) -> StateSpaceModel {
    let models = self_dual_models();
    models[rng.random_range(0..models.len())].clone()
}

fn klein_trial(rng: &mut ChaCha8Rng) -> Result<Trial> {
    let model = pick(rng);
    let w = model.random_state_with(rng);
    let v = model.random_state_with(rng);
    let self_rel = relative_entropy(&model, &w, &w)?.finite().unwrap_or(f64::INFINITY);
    Ok(match relative_entropy(&model, &w, &v)? {
        RelativeEntropy::Infinite => (self_rel.abs() <= 1e-8, self_rel.abs()),
        RelativeEntropy::Finite(s) => {
            let equal = crate::linalg::max_abs_diff(&w.coords, &v.coords) <= 1e-8;
            let zero = s.abs() <= 1e-8;
            (s >= -1e-9 && zero == equal && self_rel.abs() <= 1e-8, (-s).max(self_rel.abs()).max(0.0))
        }
    })
}

fn concavity_trial(rng: &mut ChaCha8Rng) -> Result<Trial> {
    let model = pick(rng);
    let k = rng.random_range(2..=4);
    let states: Vec<StateVector> = (0..k).map(|_| model.random_state_with(rng)).collect();
    let lam = random_probability_vector(k, rng);
    let r = mixing_concavity_check(&model, &states, &lam)?;
    Ok((r.passed, (-r.delta).max(0.0)))
}

fn petz_trial(rng: &mut ChaCha8Rng) -> Result<Trial> {
    let (model, components) = random_orthogonal_components(rng)?;
    let lam = random_probability_vector(components.len(), rng);
    let r = orthogonal_mixture_relation(&model, &lam, &components)?;
    Ok((r.pass, (r.lhs - r.rhs).abs()))
}

/// Mixed states with mutually orthogonal supports: a random basis split
/// into blocks, one random mixture per block.
pub fn random_orthogonal_components<R: Rng + ?Sized>(
    rng: &mut R,
) -> Result<(StateSpaceModel, Vec<StateVector>)> {
    let quantum = rng.random_bool(0.5);
    let d = if quantum { rng.random_range(2..=4) } else { rng.random_range(2..=6) };
    let model = if quantum { StateSpaceModel::Quantum { d } } else { StateSpaceModel::Classical { n: d } };
    let basis = random_orthonormal_basis(d, rng);
    let mut comps = Vec::new();
    let mut start = 0;
    while start < d {
        let len = rng.random_range(1..=d - start);
        let p = random_probability_vector(len, rng);
        let block = &basis[start..start + len];
        comps.push(if quantum {
            StateVector::new(hermitian_to_coords(&mixture(&p, block)))
        } else {
            let mut c = vec![0.0; d];
            c[start..start + len].copy_from_slice(&p);
            StateVector::new(c)
        });
        start += len;
    }
    Ok((model, comps))
}

/// Quantum state whose spectrum has repeated values with probability ½.
pub fn random_degenerate_quantum_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> StateVector {
    let mut p = random_probability_vector(d, rng);
    if rng.random_bool(0.5) && d > 1 {
        let k = rng.random_range(2..=d);
        let avg = p[..k].iter().sum::<f64>() / k as f64;
        p[..k].iter_mut().for_each(|x| *x = avg);
    }
    StateVector::new(hermitian_to_coords(&mixture(&p, &random_orthonormal_basis(d, rng))))
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn well_defined_trial(rng: &mut ChaCha8Rng) -> Result<Trial> {
    let d = rng.random_range(2..=4);
    let model = StateSpaceModel::Quantum { d };
    let w = random_degenerate_quantum_state(d, rng);
    let a = sorted_desc(rotated_quantum_decomposition(&model, &w, rng)?.weights);
    let b = sorted_desc(rotated_quantum_decomposition(&model, &w, rng)?.weights);
    let diff = crate::linalg::max_abs_diff(&a, &b);
    Ok((diff <= 1e-9, diff))
}

fn collision_trial(rng: &mut ChaCha8Rng) -> Result<Trial> {
    let model = pick(rng);
    let w = model.random_state_with(rng);
    let p = classical_decomposition(&model, &w)?.weights;
    let size = rng.random_range(1..=model.max_frame_size() + 2);
    let q = random_pure_decomposition(&model, &w, size, rng)?.weights;
    let gap = collision_sum(&q) - collision_sum(&p);
    Ok((gap <= 1e-9, gap.max(0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_small_runs() {
        for suite in [
            Suite::SecondLaw,
            Suite::Klein,
            Suite::Concavity,
            Suite::Petz,
            Suite::WellDefined,
            Suite::Collision,
        ] {
            let s = run_suite(suite, 60, 3).unwrap();
            assert!(s.all_passed(), "{s:?}");
            assert_eq!(s.passed, 60);
        }
    }

    #[test]
    fn swap_listed_as_expected_failure() {
        let s = run_suite(Suite::SecondLaw, 5, 1).unwrap();
        assert_eq!(s.expected_failures.len(), 1);
        assert!(s.expected_failures[0].s_after < s.expected_failures[0].s_before);
        assert!(s.all_passed());
    }

    #[test]
    fn degenerate_measurements_have_big_faces() {
        let mut rng = trial_rng(0, 0);
        let m = StateSpaceModel::Quantum { d: 4 };
        for _ in 0..10 {
            let pm = random_projective_measurement(&m, true, &mut rng).unwrap();
            assert!(pm.is_degenerate());
            assert!(pm.is_valid(&m, 1e-8));
        }
    }

    #[test]
    fn summary_is_deterministic() {
        assert_eq!(
            run_suite(Suite::Collision, 40, 9).unwrap(),
            run_suite(Suite::Collision, 40, 9).unwrap()
        );
    }
}
