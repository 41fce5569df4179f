// Spectral entropy, Rényi entropies, the logarithm of a state and
// relative entropy.

use gpt_thermo::entropy::{
    entropy, gbit_entropy_inconsistency, log_state, orthogonal_mixture_relation, relative_entropy,
    renyi_entropy,
};
use gpt_thermo::linalg::hermitian::CMatrix;
use gpt_thermo::StateSpaceModel;

pub fn run_example() -> gpt_thermo::Result<()> {
    let q = StateSpaceModel::quantum(2)?;
    let w = q.quantum_state(&CMatrix::from_real_diag(&[0.75, 0.25]))?;
    let mixed = q.maximally_mixed();
    println!("S(w) = {:.6} nats", entropy(&q, &w)?);
    for alpha in [0.0, 0.5, 1.0, 2.0, f64::INFINITY] {
        println!("H_{alpha}(w) = {:.6} bits", renyi_entropy(&q, &w, alpha)?.value);
    }
    println!("log w = {:?}", log_state(&q, &w)?.vector);
    println!("S(w || 1/2) = {:?}", relative_entropy(&q, &w, &mixed)?);
    println!("S(0 || 1) = {:?}", relative_entropy(&q, &q.basis_state(0)?, &q.basis_state(1)?)?);

    let q4 = StateSpaceModel::quantum(4)?;
    let a = q4.quantum_state(&CMatrix::from_real_diag(&[0.5, 0.5, 0.0, 0.0]))?;
    let b = q4.quantum_state(&CMatrix::from_real_diag(&[0.0, 0.0, 1.0, 0.0]))?;
    let rel = orthogonal_mixture_relation(&q4, &[0.5, 0.5], &[a, b])?;
    println!("orthogonal mixture: {:.6} = {:.6}", rel.lhs, rel.rhs);

    for a in [0.0, 0.25, 0.5] {
        println!("gbit center split with a = {a}: {:.6}", gbit_entropy_inconsistency(a));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gpt_thermo::Result<()> {
    run_example()
}
