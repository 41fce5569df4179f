// Ledgers for von Neumann's gas of mixed species, the Petz variant and
// the counting argument.

use gpt_thermo::linalg::hermitian::CMatrix;
use gpt_thermo::vn::{
    gbit_petz_center, run_petz_protocol, run_von_neumann_protocol, stirling_multiplicity_entropy,
    GasConfig,
};
use gpt_thermo::StateSpaceModel;

pub fn run_example() -> gpt_thermo::Result<()> {
    let cfg = GasConfig::new(1000, 1.0, 1.0)?;
    let q = StateSpaceModel::quantum(2)?;
    let ledger = run_von_neumann_protocol(&q, &q.maximally_mixed(), &cfg)?;
    for s in &ledger.steps {
        println!(
            "{:<9} work {:>9.3}  heat {:>9.3}  dS_gas {:>9.3}",
            s.label, s.work_on_gas, s.heat_to_reservoir, s.entropy_change_gas
        );
    }
    println!("final S_GPT = {:.3}", ledger.final_s_gpt);

    let one = GasConfig::new(1, 1.0, 1.0)?;
    let q4 = StateSpaceModel::quantum(4)?;
    let a = q4.quantum_state(&CMatrix::from_real_diag(&[0.5, 0.5, 0.0, 0.0]))?;
    let b = q4.quantum_state(&CMatrix::from_real_diag(&[0.0, 0.0, 1.0, 0.0]))?;
    let petz = run_petz_protocol(&q4, &[0.5, 0.5], &[a, b], &one)?;
    println!("Petz: lhs {:?} rhs {:.6} pass {}", petz.relation_lhs, petz.relation_rhs, petz.pass);

    for x in [0.0, 0.5] {
        let g = gbit_petz_center(x, &one)?;
        println!("gbit center, a = {x}: {:.6}", g.relation_rhs);
    }

    for n in [10u64, 100, 1000, 10_000] {
        let counts = [n / 2, 3 * n / 10, n / 5];
        let s = stirling_multiplicity_entropy(&counts)?;
        println!("N = {n:>5}: exact {:.3}  mixture {:.3}  rel. error {:.2e}", s.exact, s.mixture, s.relative_error);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gpt_thermo::Result<()> {
    run_example()
}
