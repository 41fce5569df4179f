// Projective measurements from frames and faces, observables, Pfister's
// discrimination and the gbit side operation.

use gpt_thermo::decomposition::{standard_frame, Frame};
use gpt_thermo::measurement::{
    apply_projective, gbit_repeatability_check, gbit_side_operation, observable_from_spectral_data,
    pfister_discrimination, projective_measurement_from_faces, projective_measurement_from_frame,
};
use gpt_thermo::{StateSpaceModel, StateVector};
use num_complex::Complex64;

pub fn run_example() -> gpt_thermo::Result<()> {
    let q = StateSpaceModel::quantum(2)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus = q.quantum_pure(&[Complex64::new(s, 0.0), Complex64::new(s, 0.0)])?;
    let z = projective_measurement_from_frame(&q, &standard_frame(&q)?)?;
    let (after, probs) = apply_projective(&q, &z, &plus)?;
    println!("|+> in Z: probabilities {probs:?}, post-measurement {:?}", after.coords);

    let q4 = StateSpaceModel::quantum(4)?;
    let f = standard_frame(&q4)?;
    let faces = [Frame::new(f.states[..2].to_vec()), Frame::new(f.states[2..3].to_vec())];
    let pm = projective_measurement_from_faces(&q4, &faces, true)?;
    println!("completed face ranks {:?}, degenerate {}", pm.face_ranks, pm.is_degenerate());

    let obs = observable_from_spectral_data(&q4, &[1.0, -1.0, 0.5], &[
        faces[0].clone(),
        faces[1].clone(),
        Frame::new(f.states[3..].to_vec()),
    ])?;
    println!("observable eigenvalues {:?}", obs.eigenvalues);

    let b = |j: usize| Frame::new(vec![f.states[j].clone()]);
    let effects = pfister_discrimination(&q4, &b(0), &b(2), &b(3))?;
    for e in &effects {
        let row: Vec<f64> = [0, 2, 3].iter().map(|&j| e.evaluate(&q4, &f.states[j])).collect();
        println!("{} on b1, b3, b4: {row:?}", e.label);
    }

    let v = StateVector::new(vec![0.3, 1.0, 1.0]);
    let v_prime = StateVector::new(vec![0.6, 0.0, 1.0]);
    let op = gbit_side_operation(&v, &v_prime)?;
    println!(
        "gbit side operation repeatable {}, T1T2 = T2T1 = 0: {}",
        op.repeatable,
        gbit_repeatability_check(&op.t1, &op.t2)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> gpt_thermo::Result<()> {
    run_example()
}
