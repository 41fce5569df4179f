// Projective measurements never lower the entropy; replacing the state
// with a fixed pure one does.

use gpt_thermo::checks::{run_suite, Suite};
use gpt_thermo::decomposition::standard_frame;
use gpt_thermo::measurement::projective_measurement_from_frame;
use gpt_thermo::second_law::{mixing_concavity_check, second_law_projective, swap_entropy_decrease_demo};
use gpt_thermo::StateSpaceModel;
use num_complex::Complex64;

pub fn run_example() -> gpt_thermo::Result<()> {
    let q = StateSpaceModel::quantum(2)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus = q.quantum_pure(&[Complex64::new(s, 0.0), Complex64::new(s, 0.0)])?;
    let z = projective_measurement_from_frame(&q, &standard_frame(&q)?)?;
    let r = second_law_projective(&q, &plus, &z)?;
    println!("{}: {:.6} -> {:.6}", r.context, r.s_before, r.s_after);

    let r = mixing_concavity_check(&q, &[q.basis_state(0)?, q.basis_state(1)?], &[0.5, 0.5])?;
    println!("{}: delta {:.6}", r.context, r.delta);

    let r = swap_entropy_decrease_demo(2)?;
    println!("{}: {:.6} -> {:.6}, passed {}", r.context, r.s_before, r.s_after, r.passed);

    let summary = run_suite(Suite::SecondLaw, 300, 0)?;
    println!(
        "random trials: {}/{} passed, worst residual {:.1e}",
        summary.passed, summary.trials, summary.worst_residual
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> gpt_thermo::Result<()> {
    run_example()
}
