// Measurement and decomposition entropies by randomized search.

use gpt_thermo::entropy::{decomposition_entropy_search, measurement_entropy_search, renyi_entropy};
use gpt_thermo::linalg::hermitian::CMatrix;
use gpt_thermo::{StateSpaceModel, StateVector};

pub fn run_example() -> gpt_thermo::Result<()> {
    let q = StateSpaceModel::quantum(2)?;
    let w = q.quantum_state(&CMatrix::from_real_diag(&[0.75, 0.25]))?;
    for alpha in [1.0, 2.0] {
        let spectral = renyi_entropy(&q, &w, alpha)?.value;
        let m = measurement_entropy_search(&q, &w, alpha, 4000, 7)?;
        let d = decomposition_entropy_search(&q, &w, alpha, 4000, 7)?;
        println!(
            "alpha {alpha}: spectral {spectral:.6}  measurement {:.6} (best random {:.6})  decomposition {:.6} (best random {:.6})",
            m.value,
            m.search_minimum.unwrap_or(f64::NAN),
            d.value,
            d.search_minimum.unwrap_or(f64::NAN)
        );
    }

    let gbit = StateSpaceModel::gbit();
    let center = StateVector::new(vec![0.5, 0.5, 1.0]);
    let m = measurement_entropy_search(&gbit, &center, 1.0, 10_000, 1)?;
    let d = decomposition_entropy_search(&gbit, &center, 0.0, 10_000, 1)?;
    println!("gbit center: measurement H_1 {:.6}, decomposition H_0 {:.6}", m.value, d.value);
    Ok(())
}

#[allow(dead_code)]
fn main() -> gpt_thermo::Result<()> {
    run_example()
}
