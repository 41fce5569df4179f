//! Every example must run to completion.

mod state_spaces {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/state_spaces.rs"));
}

#[test]
fn state_spaces_runs() {
    state_spaces::run_example().expect("state_spaces example should run");
}

mod classical_decomposition {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/classical_decomposition.rs"));
}

#[test]
fn classical_decomposition_runs() {
    classical_decomposition::run_example().expect("classical_decomposition example should run");
}

mod majorization {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/majorization.rs"));
}

#[test]
fn majorization_runs() {
    majorization::run_example().expect("majorization example should run");
}

mod projective_measurement {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/projective_measurement.rs"));
}

#[test]
fn projective_measurement_runs() {
    projective_measurement::run_example().expect("projective_measurement example should run");
}

mod spectral_entropy {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/spectral_entropy.rs"));
}

#[test]
fn spectral_entropy_runs() {
    spectral_entropy::run_example().expect("spectral_entropy example should run");
}

mod entropy_search {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/entropy_search.rs"));
}

#[test]
fn entropy_search_runs() {
    entropy_search::run_example().expect("entropy_search example should run");
}

mod second_law {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/second_law.rs"));
}

#[test]
fn second_law_runs() {
    second_law::run_example().expect("second_law example should run");
}

mod von_neumann_gas {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/von_neumann_gas.rs"));
}

#[test]
fn von_neumann_gas_runs() {
    von_neumann_gas::run_example().expect("von_neumann_gas example should run");
}

mod egg_spectrality {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/egg_spectrality.rs"));
}

#[test]
fn egg_spectrality_runs() {
    egg_spectrality::run_example().expect("egg_spectrality example should run");
}
