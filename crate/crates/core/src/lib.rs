//! Thermodynamic entropy in generalized probabilistic theories.
//!
//! State spaces ([`state_space`]) come with frames and classical
//! decompositions ([`decomposition`]), measurements built from frames and
//! faces ([`measurement`]), the spectral entropy and its Rényi, search and
//! relative variants ([`entropy`]), second-law checks ([`second_law`]) and
//! the box-gas bookkeeping ([`vn`]). The `examples/` directory walks through
//! each of these.

pub mod checks;
pub mod cli;
pub mod decomposition;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod measurement;
pub mod probability;
pub mod second_law;
pub mod state_space;
pub mod vn;

pub use error::{GptError, Result};
pub use state_space::{StateDocument, StateSpaceModel, StateVector};
