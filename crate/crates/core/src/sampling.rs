//! Seeded random instances for the Monte Carlo checks.
//!
//! Every sampler takes an explicit generator; trial `i` of a run with seed
//! `s` uses [`crate::codes::trial_rng`]`(s, i)`, so results do not depend on
//! how trials are split across threads.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI};

use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;

use crate::f2linalg::BitVector;
use crate::pauli::{CliffordCircuit, CliffordGate, Letter, PauliOperator};
use crate::stabilizer::StabilizerGroup;

pub use crate::codes::trial_rng;

/// Uniform choice among `H(q)`, `S(q)` and (for `n >= 2`) `CNOT(c, t)`.
pub fn random_clifford_gate<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CliffordGate {
    let kinds = if n >= 2 { 3 } else { 2 };
    match rng.random_range(0..kinds) {
        0 => CliffordGate::H(rng.random_range(0..n)),
        1 => CliffordGate::S(rng.random_range(0..n)),
        _ => {
            let pair = sample(rng, n, 2);
            CliffordGate::Cnot {
                control: pair.index(0),
                target: pair.index(1),
            }
        }
    }
}

pub fn random_clifford_circuit<R: Rng + ?Sized>(n: usize, len: usize, rng: &mut R) -> CliffordCircuit {
    let gates = (0..len).map(|_| random_clifford_gate(n, rng)).collect();
    CliffordCircuit::new(n, gates).expect("sampled gates are in range")
}

/// Stabilizer state of a random Clifford circuit applied to `|0...0>`, with
/// circuit length uniform in `[0, 4n]`. Short circuits are deliberately
/// common so that near-product states (where bounds are tight) are sampled.
pub fn random_stabilizer_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> StabilizerGroup {
    let len = rng.random_range(0..=4 * n);
    let c = random_clifford_circuit(n, len, rng);
    StabilizerGroup::zero_state(n)
        .apply_clifford(&c)
        .expect("Clifford images of a stabilizer group are valid")
}

/// Hermitian Pauli with a support size uniform in `[0, n]`, uniformly random
/// support of that size, uniform non-identity letters on it and a random sign.
pub fn random_hermitian_pauli<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PauliOperator {
    let w = rng.random_range(0..=n);
    let mut letters = vec![Letter::I; n];
    for q in sample(rng, n, w) {
        letters[q] = [Letter::X, Letter::Y, Letter::Z][rng.random_range(0..3)];
    }
    let sign = rng.random::<bool>();
    PauliOperator::from_letters(&letters, if sign { 2 } else { 0 })
}

/// X-type or Z-type term with uniformly random nonzero support.
pub fn random_css_term<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PauliOperator {
    let bits = loop {
        let b = BitVector::from_bits((0..n).map(|_| rng.random::<bool>()));
        if !b.is_zero() {
            break b;
        }
    };
    if rng.random::<bool>() {
        PauliOperator::x_type(&bits)
    } else {
        PauliOperator::z_type(&bits)
    }
}

/// How rotation angles are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaPolicy {
    /// Uniform in `[-pi/2, pi/2)`, one full period of `e^{i theta P}` up to sign.
    Uniform,
    /// Uniform over `{-pi/4, -pi/8, pi/8, pi/4}`.
    Grid,
    /// Each angle independently from `Uniform` or `Grid` with equal probability.
    Mixed,
}

pub const THETA_GRID: [f64; 4] = [-FRAC_PI_4, -FRAC_PI_8, FRAC_PI_8, FRAC_PI_4];

impl ThetaPolicy {
    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R) -> f64 {
        match self {
            ThetaPolicy::Uniform => rng.random_range(-PI / 2.0..PI / 2.0),
            ThetaPolicy::Grid => THETA_GRID[rng.random_range(0..THETA_GRID.len())],
            ThetaPolicy::Mixed => {
                if rng.random::<bool>() {
                    ThetaPolicy::Uniform.sample(rng)
                } else {
                    ThetaPolicy::Grid.sample(rng)
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ThetaPolicy::Uniform => "uniform",
            ThetaPolicy::Grid => "grid",
            ThetaPolicy::Mixed => "mixed",
        }
    }
}

impl std::str::FromStr for ThetaPolicy {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "uniform" => Ok(ThetaPolicy::Uniform),
            "grid" => Ok(ThetaPolicy::Grid),
            "mixed" => Ok(ThetaPolicy::Mixed),
            _ => Err(crate::Error::InvalidArgument(format!(
                "unknown theta policy `{s}` (expected uniform, grid or mixed)"
            ))),
        }
    }
}
