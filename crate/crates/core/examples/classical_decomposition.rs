// Classical decompositions, and how a rotated degenerate eigenbasis
// leaves the weights alone.

use gpt_thermo::decomposition::{classical_decomposition, rotated_quantum_decomposition};
use gpt_thermo::linalg::hermitian::CMatrix;
use gpt_thermo::{StateSpaceModel, StateVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> gpt_thermo::Result<()> {
    let q = StateSpaceModel::quantum(3)?;
    let w = q.quantum_state(&CMatrix::from_real_diag(&[0.4, 0.4, 0.2]))?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 0..2 {
        let d = rotated_quantum_decomposition(&q, &w, &mut rng)?;
        println!("rotation {k}: weights {:?}  residual {:.1e}", d.weights, d.residual(&q, &w));
    }

    let ball = StateSpaceModel::ball(3)?;
    let w = StateVector::new(vec![1.0, 0.3, 0.0, 0.4]);
    let d = classical_decomposition(&ball, &w)?;
    println!("ball: weights {:?}", d.weights);

    let gbit = StateSpaceModel::gbit();
    let edge = StateVector::new(vec![1.0, 0.3, 1.0]);
    println!("gbit edge: weights {:?}", classical_decomposition(&gbit, &edge)?.weights);
    let center = StateVector::new(vec![0.5, 0.5, 1.0]);
    match classical_decomposition(&gbit, &center) {
        Ok(_) => unreachable!("the gbit center has no classical decomposition"),
        Err(e) => println!("gbit center: {e}"),
    }

    let egg = StateSpaceModel::egg(1.0, 2.0)?;
    let w = StateVector::new(vec![-0.5, 0.2]);
    let d = classical_decomposition(&egg, &w)?;
    println!("egg: weights {:?}  residual {:.1e}", d.weights, d.residual(&egg, &w));
    Ok(())
}

#[allow(dead_code)]
fn main() -> gpt_thermo::Result<()> {
    run_example()
}
