// The five models, their states and the JSON document format.

use gpt_thermo::linalg::hermitian::CMatrix;
use gpt_thermo::{StateDocument, StateSpaceModel, StateVector};

pub fn run_example() -> gpt_thermo::Result<()> {
    let models = [
        StateSpaceModel::classical(3)?,
        StateSpaceModel::quantum(2)?,
        StateSpaceModel::ball(3)?,
        StateSpaceModel::gbit(),
        StateSpaceModel::egg(1.0, 2.0)?,
    ];
    for m in &models {
        println!(
            "{:<16} ambient dim {}  max frame {}  self-dual {}",
            m.name(),
            m.ambient_dim(),
            m.max_frame_size(),
            m.has_self_dual_inner_product()
        );
    }

    let qubit = &models[1];
    let rho = qubit.quantum_state(&CMatrix::from_real_diag(&[0.75, 0.25]))?;
    let doc = StateDocument::new(qubit, &rho);
    let text = doc.to_json();
    println!("{text}");
    assert_eq!(StateDocument::from_json(&text)?, doc);

    let ball = &models[2];
    let north = StateVector::new(vec![1.0, 0.0, 0.0, 1.0]);
    println!("ball pole pure: {}", ball.is_pure(&north, 1e-12));
    println!(
        "ball (1, 0, 0, 1.2) is a state: {}",
        ball.contains_state(&StateVector::new(vec![1.0, 0.0, 0.0, 1.2]), 1e-9)?
    );

    let gbit = &models[3];
    let center = StateVector::new(vec![0.5, 0.5, 1.0]);
    println!("gbit center pure: {}", gbit.is_pure(&center, 1e-12));
    Ok(())
}

#[allow(dead_code)]
fn main() -> gpt_thermo::Result<()> {
    run_example()
}
