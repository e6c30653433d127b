//! Independent brute-force oracles shared by the integration tests. Nothing
//! here uses the symplectic machinery under test: states are plain complex
//! vectors and F2 questions are answered by exhaustive enumeration.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use nlcs_core::dense::C64;
use nlcs_core::f2linalg::{BinaryMatrix, BitVector};

const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Elementary gates applied with explicit amplitude arithmetic.
#[derive(Clone, Copy, Debug)]
pub enum Gate {
    H(usize),
    S(usize),
    Cx(usize, usize),
}

fn mask(n: usize, q: usize) -> usize {
    1 << (n - 1 - q)
}

pub fn apply(gate: Gate, n: usize, v: &[C64]) -> Vec<C64> {
    let mut out = v.to_vec();
    match gate {
        Gate::H(q) => {
            let m = mask(n, q);
            for b in 0..v.len() {
                out[b] = if b & m == 0 {
                    (v[b] + v[b | m]) * H
                } else {
                    (v[b ^ m] - v[b]) * H
                };
            }
        }
        Gate::S(q) => {
            let m = mask(n, q);
            for (b, a) in out.iter_mut().enumerate() {
                if b & m != 0 {
                    *a *= C64::new(0.0, 1.0);
                }
            }
        }
        Gate::Cx(c, t) => {
            let (mc, mt) = (mask(n, c), mask(n, t));
            for b in 0..v.len() {
                out[b] = if b & mc != 0 { v[b ^ mt] } else { v[b] };
            }
        }
    }
    out
}

pub fn all_gates(n: usize) -> Vec<Gate> {
    let mut gates: Vec<Gate> = (0..n).flat_map(|q| [Gate::H(q), Gate::S(q)]).collect();
    for c in 0..n {
        for t in 0..n {
            if c != t {
                gates.push(Gate::Cx(c, t));
            }
        }
    }
    gates
}

/// Rounded amplitudes after rotating the first non-negligible amplitude to
/// the positive real axis.
pub fn phase_key(v: &[C64]) -> Vec<(i64, i64)> {
    let first = v.iter().find(|a| a.norm() > 1e-9).copied().unwrap_or(C64::new(1.0, 0.0));
    let rot = first.conj() / first.norm();
    v.iter()
        .map(|a| {
            let b = a * rot;
            ((b.re * 1e8).round() as i64, (b.im * 1e8).round() as i64)
        })
        .collect()
}

/// Every state reachable from `|0...0>` by H, S and CNOT, up to global phase.
pub fn clifford_orbit(n: usize) -> HashSet<Vec<(i64, i64)>> {
    let mut start = vec![C64::new(0.0, 0.0); 1 << n];
    start[0] = C64::new(1.0, 0.0);
    let gates = all_gates(n);
    let mut seen = HashSet::new();
    seen.insert(phase_key(&start));
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &g in &gates {
            let w = apply(g, n, &v);
            if seen.insert(phase_key(&w)) {
                queue.push_back(w);
            }
        }
    }
    seen
}

/// All vectors of F2^len as bit vectors.
pub fn all_vectors(len: usize) -> impl Iterator<Item = BitVector> {
    (0..1u64 << len).map(move |x| BitVector::from_u64(x, len))
}

/// Kernel by exhaustive search.
pub fn brute_kernel(m: &BinaryMatrix) -> HashSet<BitVector> {
    all_vectors(m.cols())
        .filter(|v| m.mul_vec(v).unwrap().is_zero())
        .collect()
}

/// Row span by enumerating every combination of rows.
pub fn brute_span(m: &BinaryMatrix) -> HashSet<BitVector> {
    (0..1u64 << m.rows())
        .map(|c| {
            let mut acc = BitVector::zeros(m.cols());
            for r in 0..m.rows() {
                if c >> r & 1 == 1 {
                    acc.xor_assign(m.row(r));
                }
            }
            acc
        })
        .collect()
}

pub fn matrix(rows: &[&str]) -> BinaryMatrix {
    let rows: Vec<Vec<u8>> = rows.iter().map(|r| r.bytes().map(|b| b - b'0').collect()).collect();
    BinaryMatrix::from_rows(&rows)
}
