// Overlap matrices of two frames are doubly stochastic, and Birkhoff's
// theorem splits them into permutations.

use gpt_thermo::decomposition::{
    birkhoff_decomposition, birkhoff_reconstruct, classical_decomposition, frame_overlap_matrix,
    majorizes, quantum_frame,
};
use gpt_thermo::linalg::hermitian::random_orthonormal_basis;
use gpt_thermo::StateSpaceModel;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> gpt_thermo::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let q = StateSpaceModel::quantum(3)?;
    let w = q.random_state_with(&mut rng);
    let eig = classical_decomposition(&q, &w)?;
    let other = quantum_frame(&q, &random_orthonormal_basis(3, &mut rng))?;

    let r = frame_overlap_matrix(&q, &eig.frame, &other)?;
    // outcome probabilities in the other frame are Rᵀ p
    let p = &eig.weights;
    let outcomes: Vec<f64> = (0..3)
        .map(|j| (0..3).map(|i| r.matrix()[(i, j)] * p[i]).sum())
        .collect();
    println!("spectrum {p:.4?}");
    println!("outcomes {outcomes:.4?}  majorized: {}", majorizes(p, &outcomes)?);

    let terms = birkhoff_decomposition(&r, 1e-12)?;
    for t in &terms {
        println!("  {:.4} × {:?}", t.weight, t.permutation);
    }
    let err = birkhoff_reconstruct(&terms, 3).sub(r.matrix())?.max_abs();
    println!("reconstruction error {err:.1e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> gpt_thermo::Result<()> {
    run_example()
}
