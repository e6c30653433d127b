//! Stabilizer groups and stabilizer states.
//!
//! A [`StabilizerGroup`] is always held in canonical form: its generators
//! are the rows of the reduced row echelon form of the symplectic check
//! matrix `(x | z)`, with the exact group element carried along for every
//! row operation. Two generating sets describe the same group iff their
//! canonical forms are identical.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::dense::{self, CMatrix, C64};
use crate::error::{Error, Result};
use crate::f2linalg::{kernel_basis, row_combination, row_combination_space, BinaryMatrix, BitVector};
use crate::pauli::{CliffordCircuit, Letter, PauliOperator};
use crate::Cutoffs;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliOperator>,
}

#[inline]
fn sym_bit(p: &PauliOperator, col: usize) -> bool {
    let n = p.n();
    if col < n {
        p.x().get(col)
    } else {
        p.z().get(col - n)
    }
}

impl StabilizerGroup {
    /// Validates a generating set and brings it to canonical form.
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.n() != n {
                return Err(Error::DimensionMismatch {
                    what: "generator qubit count",
                    expected: n,
                    got: g.n(),
                });
            }
            if !g.is_hermitian() {
                return Err(Error::InvalidGroup(format!("generator {i} ({g}) is not Hermitian")));
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if !generators[i].commutes_with(&generators[j]) {
                    return Err(Error::InvalidGroup(format!(
                        "generators {i} ({}) and {j} ({}) anticommute",
                        generators[i], generators[j]
                    )));
                }
            }
        }
        let mut rows = generators;
        let mut top = 0;
        for col in 0..2 * n {
            if top == rows.len() {
                break;
            }
            let Some(p) = (top..rows.len()).find(|&i| sym_bit(&rows[i], col)) else {
                continue;
            };
            rows.swap(top, p);
            let pivot = rows[top].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != top && sym_bit(row, col) {
                    *row = row.product(&pivot);
                }
            }
            top += 1;
        }
        if let Some(extra) = rows.get(top) {
            return Err(Error::InvalidGroup(if extra.phase_exp() == 2 {
                "-I is in the generated group".into()
            } else {
                "generators are not independent".into()
            }));
        }
        Ok(Self { n, generators: rows })
    }

    pub(crate) fn from_canonical_unchecked(n: usize, generators: Vec<PauliOperator>) -> Self {
        Self { n, generators }
    }

    /// Parses one generator per string.
    pub fn from_strs(gens: &[&str]) -> Result<Self> {
        let ps = gens
            .iter()
            .map(|s| s.parse::<PauliOperator>())
            .collect::<Result<Vec<_>>>()?;
        let n = ps.first().map_or(0, PauliOperator::n);
        Self::new(n, ps)
    }

    /// `|0...0>`, stabilized by every `Z_j`.
    pub fn zero_state(n: usize) -> Self {
        let gens = (0..n).map(|q| PauliOperator::single(n, q, Letter::Z)).collect();
        Self::new(n, gens).expect("Z_j generate a valid group")
    }

    /// Returns a copy in canonical form. Groups are canonical on
    /// construction, so this re-runs the reduction as a consistency check.
    pub fn canonicalize(&self) -> Result<Self> {
        Self::new(self.n, self.generators.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of independent generators.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn is_pure(&self) -> bool {
        self.rank() == self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    /// Symplectic check matrix, one row `(x | z)` per canonical generator.
    pub fn check_matrix(&self) -> BinaryMatrix {
        let rows = self.generators.iter().map(PauliOperator::symplectic).collect();
        BinaryMatrix::from_bit_rows(2 * self.n, rows).expect("rows have width 2n")
    }

    /// Sign column: `true` where the generator is `-1` times its letters.
    pub fn signs(&self) -> Vec<bool> {
        self.generators.iter().map(|g| g.letter_phase() == 2).collect()
    }

    fn product_of(&self, coeffs: &BitVector) -> PauliOperator {
        coeffs
            .iter_ones()
            .fold(PauliOperator::identity(self.n), |acc, i| acc.product(&self.generators[i]))
    }

    /// The group element with the given symplectic vector, if any.
    pub fn element_with(&self, symplectic: &BitVector) -> Option<PauliOperator> {
        row_combination(&self.check_matrix(), symplectic)
            .ok()
            .flatten()
            .map(|c| self.product_of(&c))
    }

    /// Exact membership, phase included.
    pub fn contains(&self, p: &PauliOperator) -> bool {
        p.n() == self.n && self.element_with(&p.symplectic()).as_ref() == Some(p)
    }

    /// All `2^k` elements. Intended for small groups.
    pub fn elements(&self) -> Vec<PauliOperator> {
        let k = self.rank();
        (0..1u64 << k)
            .map(|c| self.product_of(&BitVector::from_u64(c, k)))
            .collect()
    }

    /// Conjugates every generator by `circuit` (the stabilizer group of `C|psi>`).
    pub fn apply_clifford(&self, circuit: &CliffordCircuit) -> Result<Self> {
        let gens = self
            .generators
            .iter()
            .map(|g| circuit.conjugate(g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.n, gens)
    }

    fn check_dense(&self, cutoffs: &Cutoffs) -> Result<()> {
        if self.n > cutoffs.dense_qubits {
            return Err(Error::CutoffExceeded {
                what: "dense synthesis",
                requested: self.n,
                cutoff: cutoffs.dense_qubits,
            });
        }
        Ok(())
    }

    /// Amplitude vector of a pure stabilizer state, with the first nonzero
    /// amplitude real and positive.
    pub fn to_state_vector(&self, cutoffs: &Cutoffs) -> Result<Vec<C64>> {
        if !self.is_pure() {
            return Err(Error::RankDeficient {
                rank: self.rank(),
                n: self.n,
            });
        }
        self.check_dense(cutoffs)?;
        // Z-only canonical rows fix a basis state in the support: z.b = sign.
        let n = self.n;
        let mut b = 0usize;
        for g in self.generators.iter().filter(|g| g.x().is_zero()) {
            let pivot = g.z().iter_ones().next().expect("nonzero row");
            if g.letter_phase() == 2 {
                b |= 1 << (n - 1 - pivot);
            }
        }
        let mut v = dense::basis_state(n, b);
        for g in &self.generators {
            let gv = dense::apply_pauli(g, &v);
            for (a, x) in v.iter_mut().zip(gv) {
                *a = (*a + x) * 0.5;
            }
        }
        dense::normalize(&mut v);
        dense::fix_global_phase(&mut v);
        Ok(v)
    }

    /// `(1/2^n) sum_{g in G} g`, i.e. the code projector scaled to unit trace.
    pub fn to_density_matrix(&self, cutoffs: &Cutoffs) -> Result<CMatrix> {
        self.check_dense(cutoffs)?;
        let dim = 1usize << self.n;
        let mut rho = CMatrix::zeros(dim, dim);
        for col in 0..dim {
            let mut v = dense::basis_state(self.n, col);
            for g in &self.generators {
                let gv = dense::apply_pauli(g, &v);
                for (a, x) in v.iter_mut().zip(gv) {
                    *a = (*a + x) * 0.5;
                }
            }
            for (row, a) in v.into_iter().enumerate() {
                rho[(row, col)] = a;
            }
        }
        let scale = 1.0 / (1u64 << (self.n - self.rank())) as f64;
        Ok(rho * C64::from(scale))
    }

    /// State vector for pure groups, density matrix otherwise.
    pub fn to_dense(&self, cutoffs: &Cutoffs) -> Result<DenseForm> {
        if self.is_pure() {
            self.to_state_vector(cutoffs).map(DenseForm::Pure)
        } else {
            self.to_density_matrix(cutoffs).map(DenseForm::Mixed)
        }
    }

    fn check_qubits(&self, subset: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.n];
        for &q in subset {
            if q >= self.n || std::mem::replace(&mut seen[q], true) {
                return Err(Error::InvalidArgument(format!(
                    "qubit subset {subset:?} is not a set of distinct indices below {}",
                    self.n
                )));
            }
        }
        Ok(())
    }

    fn complement(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.n).filter(|q| !subset.contains(q)).collect()
    }

    fn outside_columns(&self, subset: &[usize]) -> Vec<usize> {
        let rest = self.complement(subset);
        rest.iter().copied().chain(rest.iter().map(|q| q + self.n)).collect()
    }

    /// `G_{A,P}`: restrictions to `subset` of the elements that agree with
    /// the letters of `p` outside `subset`. Passing the identity gives `G_A`.
    /// The result is sorted and carries exact phases.
    pub fn subgroup_on(&self, subset: &[usize], p: &PauliOperator) -> Result<Vec<PauliOperator>> {
        self.check_qubits(subset)?;
        if p.n() != self.n {
            return Err(Error::DimensionMismatch {
                what: "Pauli qubit count",
                expected: self.n,
                got: p.n(),
            });
        }
        let cols = self.outside_columns(subset);
        let outside = self.check_matrix().select_cols(&cols);
        let target = p.symplectic().select(&cols);
        let Some((particular, kernel)) = row_combination_space(&outside, &target)? else {
            return Ok(Vec::new());
        };
        let k = kernel.rows();
        let mut out: Vec<PauliOperator> = (0..1u64 << k)
            .map(|mask| {
                let mut c = particular.clone();
                for i in 0..k {
                    if mask >> i & 1 == 1 {
                        c.xor_assign(kernel.row(i));
                    }
                }
                self.product_of(&c).restrict(subset)
            })
            .collect();
        out.sort_by(pauli_order);
        Ok(out)
    }

    /// Independent generators of `G_A` as a stabilizer group on `|A|` qubits.
    pub fn local_group(&self, subset: &[usize]) -> Result<StabilizerGroup> {
        self.check_qubits(subset)?;
        let cols = self.outside_columns(subset);
        let outside = self.check_matrix().select_cols(&cols);
        let kernel = kernel_basis(&outside.transpose());
        let gens = kernel
            .row_vectors()
            .iter()
            .map(|c| self.product_of(c).restrict(subset))
            .collect();
        StabilizerGroup::new(subset.len(), gens)
    }

    /// Convex decomposition of the reduced state on `subset` into pure
    /// stabilizer states: `G_A` completed by `r` logical operators, mixed
    /// uniformly over all `2^r` logical sign patterns.
    pub fn reduced_state(&self, subset: &[usize]) -> Result<MixedStabilizerState> {
        if !self.is_pure() {
            return Err(Error::RankDeficient {
                rank: self.rank(),
                n: self.n,
            });
        }
        let local = self.local_group(subset)?;
        let logicals = local.logical_completion();
        let r = logicals.len();
        let weight = 1.0 / (1u64 << r) as f64;
        let terms = (0..1u64 << r)
            .map(|mask| {
                let mut gens = local.generators.clone();
                for (i, l) in logicals.iter().enumerate() {
                    gens.push(if mask >> i & 1 == 1 { l.negated() } else { l.clone() });
                }
                StabilizerGroup::new(subset.len(), gens).map(|g| (weight, g))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MixedStabilizerState {
            n: subset.len(),
            terms,
        })
    }

    /// Greedily extends the group to a maximal commuting set, returning the
    /// added `+`-signed operators.
    pub fn logical_completion(&self) -> Vec<PauliOperator> {
        let n = self.n;
        let mut rows: Vec<BitVector> = self.generators.iter().map(PauliOperator::symplectic).collect();
        let mut added = Vec::new();
        while rows.len() < n {
            // v commutes with s iff (s_z | s_x) . (v_x | v_z) = 0
            let swapped: Vec<BitVector> = rows
                .iter()
                .map(|s| s.slice(n, n).concat(&s.slice(0, n)))
                .collect();
            let normalizer = kernel_basis(&BinaryMatrix::from_bit_rows(2 * n, swapped).expect("width 2n"));
            let current = BinaryMatrix::from_bit_rows(2 * n, rows.clone()).expect("width 2n");
            let v = normalizer
                .row_vectors()
                .iter()
                .find(|v| !crate::f2linalg::in_row_span(&current, v).expect("width 2n"))
                .expect("a non-maximal isotropic subspace has a larger normalizer")
                .clone();
            added.push(PauliOperator::hermitian(v.slice(0, n), v.slice(n, n), false));
            rows.push(v);
        }
        added
    }

    /// `(1/2^{|A|}) sum_{g in G_A} g` on `subset`, built directly from the
    /// subgroup elements.
    pub fn reduced_density_from_subgroup(&self, subset: &[usize], cutoffs: &Cutoffs) -> Result<CMatrix> {
        if subset.len() > cutoffs.dense_qubits {
            return Err(Error::CutoffExceeded {
                what: "reduced density matrix",
                requested: subset.len(),
                cutoff: cutoffs.dense_qubits,
            });
        }
        let ga = self.subgroup_on(subset, &PauliOperator::identity(self.n))?;
        let dim = 1usize << subset.len();
        let mut rho = CMatrix::zeros(dim, dim);
        for g in &ga {
            rho += dense::pauli_matrix(g);
        }
        Ok(rho * C64::from(1.0 / dim as f64))
    }

    /// `|<self|other>|` computed exactly from the two groups.
    pub fn overlap_magnitude(&self, other: &StabilizerGroup) -> Result<f64> {
        Ok(match self.overlap_exponent(other)? {
            None => 0.0,
            Some(m) => 0.5f64.powf(m as f64 / 2.0),
        })
    }

    /// `Some(m)` when `|<self|other>| = 2^{-m/2}`, `None` when orthogonal.
    pub fn overlap_exponent(&self, other: &StabilizerGroup) -> Result<Option<usize>> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                what: "stabilizer qubit count",
                expected: self.n,
                got: other.n,
            });
        }
        for g in [self, other] {
            if !g.is_pure() {
                return Err(Error::RankDeficient { rank: g.rank(), n: g.n });
            }
        }
        let n = self.n;
        let mut stacked = self.check_matrix();
        for r in other.check_matrix().into_row_vectors() {
            stacked.push_row(r)?;
        }
        // (a | b) with a V1 = b V2 spans the intersection of the two subspaces
        let relations = kernel_basis(&stacked.transpose());
        for rel in relations.row_vectors() {
            let lhs = self.product_of(&rel.slice(0, n));
            let rhs = other.product_of(&rel.slice(n, n));
            if lhs != rhs {
                return Ok(None);
            }
        }
        Ok(Some(n - relations.rows()))
    }

    fn order_key(&self) -> impl Iterator<Item = (BitVector, bool)> + '_ {
        self.generators
            .iter()
            .map(|g| (g.symplectic(), g.letter_phase() == 2))
    }
}

/// Ordering used for deterministic tie-breaks: qubit count, then rank, then
/// the canonical rows compared lexicographically with their signs.
impl Ord for StabilizerGroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.rank().cmp(&other.rank()))
            .then_with(|| self.order_key().cmp(other.order_key()))
    }
}

impl PartialOrd for StabilizerGroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn pauli_order(a: &PauliOperator, b: &PauliOperator) -> Ordering {
    a.symplectic()
        .cmp(&b.symplectic())
        .then(a.phase_exp().cmp(&b.phase_exp()))
}

impl fmt::Debug for StabilizerGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// One generator per line in Pauli text form.
impl fmt::Display for StabilizerGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for StabilizerGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for (i, line) in s.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let p = line.parse::<PauliOperator>().map_err(|e| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })?;
            if let Some(first) = gens.first().map(PauliOperator::n) {
                if p.n() != first {
                    return Err(Error::Parse {
                        line: i + 1,
                        msg: format!("generator has {} qubits, expected {first}", p.n()),
                    });
                }
            }
            gens.push(p);
        }
        let n = gens.first().map(PauliOperator::n).ok_or(Error::Parse {
            line: 1,
            msg: "no generators".into(),
        })?;
        StabilizerGroup::new(n, gens)
    }
}

/// Dense output of [`StabilizerGroup::to_dense`].
#[derive(Clone, Debug)]
pub enum DenseForm {
    Pure(Vec<C64>),
    Mixed(CMatrix),
}

/// A convex combination of pure stabilizer states.
#[derive(Clone, Debug)]
pub struct MixedStabilizerState {
    n: usize,
    terms: Vec<(f64, StabilizerGroup)>,
}

impl MixedStabilizerState {
    pub fn new(terms: Vec<(f64, StabilizerGroup)>) -> Result<Self> {
        let n = terms
            .first()
            .map(|(_, g)| g.n())
            .ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?;
        let mut total = 0.0;
        for (p, g) in &terms {
            if *p < 0.0 {
                return Err(Error::InvalidArgument(format!("negative weight {p}")));
            }
            if g.n() != n || !g.is_pure() {
                return Err(Error::RankDeficient { rank: g.rank(), n: g.n() });
            }
            total += p;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!("weights sum to {total}")));
        }
        Ok(Self { n, terms })
    }

    pub fn pure(g: StabilizerGroup) -> Result<Self> {
        Self::new(vec![(1.0, g)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(f64, StabilizerGroup)] {
        &self.terms
    }

    pub fn to_density_matrix(&self, cutoffs: &Cutoffs) -> Result<CMatrix> {
        let dim = 1usize << self.n;
        let mut rho = CMatrix::zeros(dim, dim);
        for (p, g) in &self.terms {
            let v = g.to_state_vector(cutoffs)?;
            rho += dense::outer(&v) * C64::from(*p);
        }
        Ok(rho)
    }
}

/// `2^k prod_{i=1..k} (2^i + 1)`.
pub fn pure_state_count(k: usize) -> u64 {
    (1..=k as u32).fold(1u64 << k, |acc, i| acc * ((1u64 << i) + 1))
}

#[inline]
fn symplectic_product(u: u64, v: u64, k: usize) -> bool {
    let mask = (1u64 << k) - 1;
    let (ux, uz) = (u & mask, u >> k);
    let (vx, vz) = (v & mask, v >> k);
    ((ux & vz) ^ (uz & vx)).count_ones() % 2 == 1
}

/// Every maximal isotropic subspace of `F2^{2k}` as its reduced row
/// echelon basis. Rows pack column `c` at bit `c`, with columns `0..k`
/// holding `x` and `k..2k` holding `z`. Order is deterministic: pivot sets
/// in lexicographic order, then free entries row by row.
pub fn lagrangian_subspaces(k: usize) -> Vec<Vec<u64>> {
    assert!(k <= 31, "packed enumeration supports at most 31 qubits");
    let m = 2 * k;
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let pivot_mask: u64 = pivots.iter().map(|&p| 1u64 << p).sum();
        let free: Vec<Vec<usize>> = pivots
            .iter()
            .map(|&p| (p + 1..m).filter(|c| pivot_mask >> c & 1 == 0).collect())
            .collect();
        let mut rows = Vec::with_capacity(k);
        fill_rows(k, &pivots, &free, &mut rows, &mut out);
        // next k-combination of 0..m
        let Some(i) = (0..k).rev().find(|&i| pivots[i] < m - k + i) else {
            break;
        };
        pivots[i] += 1;
        for j in i + 1..k {
            pivots[j] = pivots[j - 1] + 1;
        }
        if k == 0 {
            break;
        }
    }
    out
}

fn fill_rows(k: usize, pivots: &[usize], free: &[Vec<usize>], rows: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    let i = rows.len();
    if i == k {
        out.push(rows.clone());
        return;
    }
    let cols = &free[i];
    for pattern in 0..1u64 << cols.len() {
        let mut row = 1u64 << pivots[i];
        for (b, &c) in cols.iter().enumerate() {
            if pattern >> b & 1 == 1 {
                row |= 1 << c;
            }
        }
        if rows.iter().all(|&r| !symplectic_product(r, row, k)) {
            rows.push(row);
            fill_rows(k, pivots, free, rows, out);
            rows.pop();
        }
    }
}

/// All `2^k` sign choices over one Lagrangian basis, in sign-pattern order
/// (generator 0 takes the most significant bit).
pub fn states_of_lagrangian(k: usize, rows: &[u64]) -> impl Iterator<Item = StabilizerGroup> + '_ {
    let unsigned: Vec<(BitVector, BitVector)> = rows
        .iter()
        .map(|&r| {
            let x = BitVector::from_u64(r, k);
            let z = BitVector::from_u64(r >> k, k);
            (x, z)
        })
        .collect();
    (0..1u64 << k).map(move |signs| {
        let gens = unsigned
            .iter()
            .enumerate()
            .map(|(i, (x, z))| PauliOperator::hermitian(x.clone(), z.clone(), signs >> (k - 1 - i) & 1 == 1))
            .collect();
        StabilizerGroup::from_canonical_unchecked(k, gens)
    })
}

/// Every pure `k`-qubit stabilizer state exactly once, in canonical form.
pub fn enumerate_pure_states(k: usize, cutoffs: &Cutoffs) -> Result<impl Iterator<Item = StabilizerGroup>> {
    if k > cutoffs.enum_qubits {
        return Err(Error::CutoffExceeded {
            what: "stabilizer enumeration",
            requested: k,
            cutoff: cutoffs.enum_qubits,
        });
    }
    let subspaces = lagrangian_subspaces(k);
    Ok(subspaces.into_iter().flat_map(move |rows| {
        states_of_lagrangian(k, &rows).collect::<Vec<_>>().into_iter()
    }))
}
