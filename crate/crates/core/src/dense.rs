//! Small dense state-vector and matrix helpers used by the oracles and by
//! the local energy evaluations.
//!
//! Basis ordering is big-endian: qubit `j` of an `n`-qubit register is bit
//! `n - 1 - j` of the basis index, so `kron(A_0, A_1, ...)` acts with `A_0`
//! on qubit 0.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::pauli::{CliffordCircuit, CliffordGate, Letter, PauliOperator};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<Complex64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn i_pow(k: u8) -> C64 {
    match k % 4 {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    }
}

#[inline]
fn bit_of(n: usize, qubit: usize) -> usize {
    1usize << (n - 1 - qubit)
}

pub fn letter_matrix(l: Letter) -> CMatrix {
    let m = match l {
        Letter::I => [ONE, ZERO, ZERO, ONE],
        Letter::X => [ZERO, ONE, ONE, ZERO],
        Letter::Y => [ZERO, -I, I, ZERO],
        Letter::Z => [ONE, ZERO, ZERO, -ONE],
    };
    CMatrix::from_row_slice(2, 2, &m)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn kron_all(factors: &[CMatrix]) -> CMatrix {
    factors
        .iter()
        .fold(CMatrix::identity(1, 1), |acc, f| acc.kronecker(f))
}

/// Dense `2^n x 2^n` matrix of a Pauli operator.
pub fn pauli_matrix(p: &PauliOperator) -> CMatrix {
    let factors: Vec<CMatrix> = p.letters().into_iter().map(letter_matrix).collect();
    kron_all(&factors) * i_pow(p.letter_phase())
}

/// `e^{-i theta Y}` as a 2x2 matrix.
pub fn rotation_d(theta: f64) -> CMatrix {
    let (s, c) = theta.sin_cos();
    CMatrix::from_row_slice(2, 2, &[c.into(), (-s).into(), s.into(), c.into()])
}

pub fn hadamard() -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_row_slice(2, 2, &[h.into(), h.into(), h.into(), (-h).into()])
}

fn masks(p: &PauliOperator) -> (usize, usize) {
    let n = p.n();
    let mut xm = 0;
    let mut zm = 0;
    for q in 0..n {
        if p.x().get(q) {
            xm |= bit_of(n, q);
        }
        if p.z().get(q) {
            zm |= bit_of(n, q);
        }
    }
    (xm, zm)
}

/// `P |psi>`. `X^x Z^z |b> = (-1)^{z.b} |b xor x>`.
pub fn apply_pauli(p: &PauliOperator, state: &[C64]) -> Vec<C64> {
    assert_eq!(state.len(), 1usize << p.n());
    let (xm, zm) = masks(p);
    let phase = i_pow(p.phase_exp());
    let mut out = vec![ZERO; state.len()];
    for (b, &a) in state.iter().enumerate() {
        let sign = if (b & zm).count_ones() % 2 == 1 { -phase } else { phase };
        out[b ^ xm] = a * sign;
    }
    out
}

/// `e^{i theta P} |psi> = cos(theta) |psi> + i sin(theta) P |psi>` for Hermitian `P`.
pub fn apply_rotation(theta: f64, p: &PauliOperator, state: &[C64]) -> Vec<C64> {
    debug_assert!(p.is_hermitian());
    let ps = apply_pauli(p, state);
    let (s, c) = theta.sin_cos();
    state
        .iter()
        .zip(ps)
        .map(|(&a, b)| a * c + I * s * b)
        .collect()
}

/// Applies one Clifford gate to an `n`-qubit state vector in place.
pub fn apply_clifford_gate(gate: CliffordGate, n: usize, state: &mut [C64]) {
    match gate {
        CliffordGate::H(q) => {
            let m = bit_of(n, q);
            let h = std::f64::consts::FRAC_1_SQRT_2;
            for b in 0..state.len() {
                if b & m == 0 {
                    let (a0, a1) = (state[b], state[b | m]);
                    state[b] = (a0 + a1) * h;
                    state[b | m] = (a0 - a1) * h;
                }
            }
        }
        CliffordGate::S(q) => {
            let m = bit_of(n, q);
            for (b, a) in state.iter_mut().enumerate() {
                if b & m != 0 {
                    *a *= I;
                }
            }
        }
        CliffordGate::Cnot { control, target } => {
            let (mc, mt) = (bit_of(n, control), bit_of(n, target));
            for b in 0..state.len() {
                if b & mc != 0 && b & mt == 0 {
                    state.swap(b, b | mt);
                }
            }
        }
    }
}

pub fn basis_state(n: usize, index: usize) -> Vec<C64> {
    let mut v = vec![ZERO; 1 << n];
    v[index] = ONE;
    v
}

/// Dense unitary of a Clifford circuit, built column by column.
pub fn circuit_unitary(c: &CliffordCircuit) -> CMatrix {
    let n = c.n();
    let dim = 1usize << n;
    let mut u = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut v = basis_state(n, col);
        for &g in c.gates() {
            apply_clifford_gate(g, n, &mut v);
        }
        for (row, a) in v.into_iter().enumerate() {
            u[(row, col)] = a;
        }
    }
    u
}

pub fn norm_sq(state: &[C64]) -> f64 {
    state.iter().map(|a| a.norm_sqr()).sum()
}

pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn normalize(state: &mut [C64]) {
    let nrm = norm_sq(state).sqrt();
    for a in state.iter_mut() {
        *a /= nrm;
    }
}

/// Rotates the global phase so that the first amplitude with modulus above
/// `1e-9` is real and positive.
pub fn fix_global_phase(state: &mut [C64]) {
    if let Some(first) = state.iter().find(|a| a.norm() > 1e-9).copied() {
        let rot = first.conj() / first.norm();
        for a in state.iter_mut() {
            *a *= rot;
        }
    }
}

/// Reduced density matrix of a pure state on the qubits `keep`, ordered as
/// listed (`keep[0]` is the most significant local qubit).
pub fn partial_trace(state: &[C64], n: usize, keep: &[usize]) -> CMatrix {
    let k = keep.len();
    let dim_a = 1usize << k;
    let rest: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let dim_b = 1usize << rest.len();
    let compose = |a: usize, b: usize| {
        let mut idx = 0;
        for (i, &q) in keep.iter().enumerate() {
            if a & (1 << (k - 1 - i)) != 0 {
                idx |= bit_of(n, q);
            }
        }
        for (i, &q) in rest.iter().enumerate() {
            if b & (1 << (rest.len() - 1 - i)) != 0 {
                idx |= bit_of(n, q);
            }
        }
        idx
    };
    // amplitude table psi[a][b]
    let mut table = vec![ZERO; dim_a * dim_b];
    for a in 0..dim_a {
        for b in 0..dim_b {
            table[a * dim_b + b] = state[compose(a, b)];
        }
    }
    let mut rho = CMatrix::zeros(dim_a, dim_a);
    for a1 in 0..dim_a {
        for a2 in 0..dim_a {
            let mut acc = ZERO;
            for b in 0..dim_b {
                acc += table[a1 * dim_b + b] * table[a2 * dim_b + b].conj();
            }
            rho[(a1, a2)] = acc;
        }
    }
    rho
}

/// `|psi><psi|`.
pub fn outer(state: &[C64]) -> CMatrix {
    let d = state.len();
    CMatrix::from_fn(d, d, |i, j| state[i] * state[j].conj())
}

/// Embeds an operator on `support` (ordered as listed) into `n` qubits.
pub fn embed_operator(local: &CMatrix, support: &[usize], n: usize) -> CMatrix {
    let k = support.len();
    assert_eq!(local.nrows(), 1 << k);
    let dim = 1usize << n;
    let mut sup_mask = 0;
    for &q in support {
        sup_mask |= bit_of(n, q);
    }
    let local_index = |idx: usize| {
        let mut a = 0;
        for (i, &q) in support.iter().enumerate() {
            if idx & bit_of(n, q) != 0 {
                a |= 1 << (k - 1 - i);
            }
        }
        a
    };
    let mut out = CMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            if r & !sup_mask == c & !sup_mask {
                out[(r, c)] = local[(local_index(r), local_index(c))];
            }
        }
    }
    out
}

/// `<psi| M |psi>`.
pub fn expectation(state: &[C64], m: &CMatrix) -> C64 {
    let v = nalgebra::DVector::from_column_slice(state);
    (v.adjoint() * m * &v)[(0, 0)]
}

/// `M |psi>`.
pub fn apply_matrix(m: &CMatrix, state: &[C64]) -> Vec<C64> {
    (0..m.nrows())
        .map(|i| state.iter().enumerate().map(|(j, b)| m[(i, j)] * b).sum())
        .collect()
}

/// `Tr[A B]` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> C64 {
    let mut acc = ZERO;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

pub fn frobenius_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).norm()
}

/// Sorted eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}
