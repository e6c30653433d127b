//! Exact stabilizer-formalism, F2 coding-theory and rotated-Hamiltonian
//! machinery, with brute-force verification helpers.
//!
//! Modules:
//! - [`f2linalg`]: bit vectors and matrices over F2.
//! - [`pauli`]: Pauli operators in symplectic form and Clifford circuits.
//! - [`stabilizer`]: stabilizer groups, enumeration, overlaps, reduced states.
//! - [`codes`]: linear codes, Tanner lifts, odd-weight transforms, CSS assembly.
//! - [`hamiltonian`]: CSS Hamiltonians, rotated projectors, energy minima.
//! - [`rotstates`]: Clifford + rotation states and their energy bounds.
//! - [`dense`]: small dense oracles shared by the above.

pub mod codes;
pub mod dense;
pub mod error;
pub mod f2linalg;
pub mod hamiltonian;
pub mod pauli;
pub mod report;
pub mod rotstates;
pub mod sampling;
pub mod stabilizer;

pub use error::{Error, Result};

/// `sin^2(pi/8) = (2 - sqrt 2) / 4`, the single-qubit energy floor of the
/// rotated Hamiltonians.
pub fn sin2_pi8() -> f64 {
    (2.0 - std::f64::consts::SQRT_2) / 4.0
}

/// Resource limits for the exponential-cost paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Cutoffs {
    /// Largest qubit count for dense state vectors and matrices.
    pub dense_qubits: usize,
    /// Largest qubit count for exhaustive stabilizer-state enumeration.
    pub enum_qubits: usize,
    /// Largest qubit count for exhaustive minimum-energy searches.
    pub search_qubits: usize,
}

impl Default for Cutoffs {
    fn default() -> Self {
        Self {
            dense_qubits: 12,
            enum_qubits: 5,
            search_qubits: 4,
        }
    }
}
