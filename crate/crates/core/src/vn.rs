//! Bookkeeping for von Neumann's box-gas argument, its Petz variant with
//! mixed species, and the counting check behind the mixture formula.
//!
//! Separation by semipermeable membranes, conversion between species and
//! merging are reversible and cost nothing. All work and heat is in the
//! isothermal compressions.

use serde::{Deserialize, Serialize};

use crate::decomposition::{classical_decomposition, perfectly_distinguishable};
use crate::entropy::{entropy, pairwise_distinguishable};
use crate::error::{GptError, Result};
use crate::linalg::dot;
use crate::probability::{check_probability_vector, shannon, LogBase};
use crate::second_law::{mixing_concavity_check, SecondLawReport};
use crate::state_space::{gbit, StateSpaceModel, StateVector, CONE_TOL};

const RELATION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasConfig {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "V")]
    pub v: f64,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(default = "one")]
    pub k_b: f64,
}

fn one() -> f64 {
    1.0
}

impl GasConfig {
    pub fn new(n: u64, v: f64, t: f64) -> Result<Self> {
        GasConfig { n, v, t, k_b: 1.0 }.validated()
    }

    pub fn with_k_b(self, k_b: f64) -> Result<Self> {
        GasConfig { k_b, ..self }.validated()
    }

    fn validated(self) -> Result<Self> {
        if self.n < 1 || [self.v, self.t, self.k_b].iter().any(|x| x.is_nan() || *x <= 0.0) {
            return Err(GptError::InvalidInput(format!(
                "need N ≥ 1 and positive V, T, k_B; got {self:?}"
            )));
        }
        Ok(self)
    }

    fn nk(&self) -> f64 {
        self.n as f64 * self.k_b
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerStep {
    pub label: String,
    /// Species index for compression steps.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub species: Option<usize>,
    pub work_on_gas: f64,
    pub heat_to_reservoir: f64,
    pub entropy_change_gas: f64,
}

impl LedgerStep {
    fn free(label: &str) -> Self {
        LedgerStep {
            label: label.into(),
            species: None,
            work_on_gas: 0.0,
            heat_to_reservoir: 0.0,
            entropy_change_gas: 0.0,
        }
    }

    /// Entropy handed to the reservoir at temperature `t`.
    pub fn reservoir_entropy_change(&self, t: f64) -> f64 {
        self.heat_to_reservoir / t
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThermoLedger {
    pub steps: Vec<LedgerStep>,
    #[serde(rename = "final_S_GPT")]
    pub final_s_gpt: f64,
}

impl ThermoLedger {
    pub fn total_work(&self) -> f64 {
        self.steps.iter().map(|s| s.work_on_gas).sum()
    }

    pub fn gas_entropy_change(&self) -> f64 {
        self.steps.iter().map(|s| s.entropy_change_gas).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ledger serializes")
    }
}

/// `−N k_B T Σ pⱼ ln pⱼ`: compressing each species from `V` to `pⱼ V`.
pub fn isothermal_compression_work(cfg: &GasConfig, fractions: &[f64]) -> Result<f64> {
    check_probability_vector(fractions, 1e-9)?;
    Ok(cfg.nk() * cfg.t * shannon(fractions, LogBase::E))
}

fn compression_step(cfg: &GasConfig, species: usize, share: f64, fraction: f64) -> LedgerStep {
    // N·share particles squeezed from V to fraction·V
    let ds = cfg.nk() * share * fraction.ln();
    LedgerStep {
        label: "compress".into(),
        species: Some(species),
        work_on_gas: -cfg.t * ds,
        heat_to_reservoir: -cfg.t * ds,
        entropy_change_gas: ds,
    }
}

fn finish(mut steps: Vec<LedgerStep>) -> ThermoLedger {
    steps.push(LedgerStep::free("convert"));
    steps.push(LedgerStep::free("merge"));
    let final_s_gpt = -steps.iter().map(|s| s.entropy_change_gas).sum::<f64>();
    ThermoLedger { steps, final_s_gpt }
}

/// Ledger for a gas whose species occur with the given weights. This is
/// also the way to run the protocol on a decomposition picked by hand.
pub fn ledger_from_weights(weights: &[f64], cfg: &GasConfig) -> Result<ThermoLedger> {
    check_probability_vector(weights, 1e-9)?;
    let mut steps = vec![LedgerStep::free("separate")];
    steps.extend(
        weights
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > 0.0)
            .map(|(j, &p)| compression_step(cfg, j, p, p)),
    );
    Ok(finish(steps))
}

/// Run the protocol on the model's classical decomposition of `w`.
pub fn run_von_neumann_protocol(
    model: &StateSpaceModel,
    w: &StateVector,
    cfg: &GasConfig,
) -> Result<ThermoLedger> {
    if let StateSpaceModel::Egg(_) = model {
        return Err(GptError::EntropyNotWellDefined(
            "egg decompositions disagree; pass explicit weights instead".into(),
        ));
    }
    ledger_from_weights(&classical_decomposition(model, w)?.weights, cfg)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PetzOutcome {
    pub ledger: ThermoLedger,
    /// Per-particle entropy of the mixture, when the model defines one.
    pub relation_lhs: Option<f64>,
    pub relation_rhs: f64,
    pub pass: bool,
}

fn gbit_distinguishable(a: &StateVector, b: &StateVector) -> bool {
    (0..4).any(|i| {
        let e = gbit::edge_effect(i);
        let (ea, eb) = (dot(&e, &a.coords), dot(&e, &b.coords));
        ((ea - 1.0).abs() < CONE_TOL && eb.abs() < CONE_TOL)
            || ((eb - 1.0).abs() < CONE_TOL && ea.abs() < CONE_TOL)
    })
}

fn components_distinguishable(model: &StateSpaceModel, comps: &[StateVector]) -> Result<bool> {
    match model {
        StateSpaceModel::Gbit {} | StateSpaceModel::Egg(_) => {
            for i in 0..comps.len() {
                for j in (i + 1)..comps.len() {
                    let ok = match model {
                        StateSpaceModel::Gbit {} => gbit_distinguishable(&comps[i], &comps[j]),
                        _ => perfectly_distinguishable(model, &comps[i], &comps[j], 1e-9),
                    };
                    if !ok {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        _ => pairwise_distinguishable(model, comps),
    }
}

/// Separate perfectly distinguishable mixed species, then run the plain
/// protocol inside each. Checks `S(Σλⱼwⱼ) = Σλⱼ S(wⱼ) + H(λ)`.
pub fn run_petz_protocol(
    model: &StateSpaceModel,
    weights: &[f64],
    components: &[StateVector],
    cfg: &GasConfig,
) -> Result<PetzOutcome> {
    check_probability_vector(weights, 1e-9)?;
    if weights.len() != components.len() {
        return Err(GptError::DimensionMismatch {
            expected: components.len(),
            got: weights.len(),
        });
    }
    if !components_distinguishable(model, components)? {
        return Err(GptError::NotDistinguishable(
            "Petz species must be perfectly distinguishable".into(),
        ));
    }
    let mut steps = vec![LedgerStep::free("separate")];
    let mut rhs = shannon(weights, LogBase::E);
    for (j, (&l, c)) in weights.iter().zip(components).enumerate() {
        if l <= 0.0 {
            continue;
        }
        steps.push(compression_step(cfg, j, l, l));
        let inner = classical_decomposition(model, c)?.weights;
        rhs += l * shannon(&inner, LogBase::E);
        for &p in inner.iter().filter(|p| **p > 0.0) {
            steps.push(compression_step(cfg, j, l * p, p));
        }
    }
    let terms: Vec<(f64, &StateVector)> = weights.iter().cloned().zip(components).collect();
    let lhs = entropy(model, &model.mix(&terms)).ok();
    let pass = lhs.is_some_and(|l| (l - rhs).abs() <= RELATION_TOL);
    Ok(PetzOutcome {
        ledger: finish(steps),
        relation_lhs: lhs,
        relation_rhs: rhs,
        pass,
    })
}

/// The gbit center split into `a·w₁ + (1−a)·w₂` and `a·w₃ + (1−a)·w₄`
/// with equal weights.
pub fn gbit_petz_center(a: f64, cfg: &GasConfig) -> Result<PetzOutcome> {
    if !(0.0..=1.0).contains(&a) {
        return Err(GptError::InvalidInput(format!("a = {a} outside [0, 1]")));
    }
    let model = StateSpaceModel::gbit();
    let edge = |i: usize, j: usize| {
        model.mix(&[(a, &gbit::corner(i)), (1.0 - a, &gbit::corner(j))])
    };
    run_petz_protocol(&model, &[0.5, 0.5], &[edge(0, 1), edge(2, 3)], cfg)
}

/// `ln n!`: summed exactly below 10, Stirling series with four correction
/// terms above (error below 1e-10).
pub fn ln_factorial(n: u64) -> f64 {
    if n < 10 {
        return (2..=n).map(|k| (k as f64).ln()).sum();
    }
    let x = n as f64;
    let x2 = x * x;
    x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + 1.0 / (12.0 * x)
        - 1.0 / (360.0 * x * x2)
        + 1.0 / (1260.0 * x * x2 * x2)
        - 1.0 / (1680.0 * x * x2 * x2 * x2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StirlingCheck {
    /// `ln(N! / ∏ Nⱼ!)`
    pub exact: f64,
    /// Same with `ln n! ≈ n ln n − n`.
    pub stirling: f64,
    /// `−N Σ pⱼ ln pⱼ`
    pub mixture: f64,
    pub relative_error: f64,
}

pub fn stirling_multiplicity_entropy(counts: &[u64]) -> Result<StirlingCheck> {
    let n: u64 = counts.iter().sum();
    if n == 0 {
        return Err(GptError::InvalidInput("need at least one particle".into()));
    }
    let crude = |k: u64| if k == 0 { 0.0 } else { k as f64 * (k as f64).ln() - k as f64 };
    let exact = ln_factorial(n) - counts.iter().map(|&k| ln_factorial(k)).sum::<f64>();
    let stirling = crude(n) - counts.iter().map(|&k| crude(k)).sum::<f64>();
    let p: Vec<f64> = counts.iter().map(|&k| k as f64 / n as f64).collect();
    let mixture = n as f64 * shannon(&p, LogBase::E);
    let relative_error = if mixture == 0.0 {
        exact.abs()
    } else {
        (exact - mixture).abs() / mixture
    };
    Ok(StirlingCheck {
        exact: exact.max(0.0),
        stirling,
        mixture,
        relative_error,
    })
}

/// Irreversible mixing of equal-density tanks, in units of `N k_B`.
pub fn mixing_protocol(
    model: &StateSpaceModel,
    components: &[StateVector],
    weights: &[f64],
    cfg: &GasConfig,
) -> Result<SecondLawReport> {
    let r = mixing_concavity_check(model, components, weights)?;
    Ok(r.scaled(cfg.nk(), "tanks merged at equal density"))
}
