//! Stabilizer and CSS Hamiltonians, their D-rotated versions, and exact
//! energy evaluation against dense and stabilizer states.
//!
//! Normalization: `H = (1/m) sum_i Pi_{S_i}` with `Pi_S = (I - S)/2`. The
//! rotated projector of a term is `Pi~_S = D^dagger^{(x)w} Pi_S D^{(x)w}` on
//! the `w` qubits of its support, where `D = e^{-i theta Y}`. With this
//! direction `D^dagger X D = H` at `theta = pi/8`, so the all-`X` term
//! rotates to `(I - H^{(x)k})/2` and the all-`Z` term to
//! `(I - (-XHX)^{(x)k})/2`, and `D^dagger^{(x)n}|0...0>` is the rotated
//! ground state.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::CssCodePair;
use crate::dense::{self, CMatrix, C64};
use crate::error::{Error, Result};
use crate::pauli::{CliffordCircuit, PauliOperator};
use crate::stabilizer::{
    enumerate_pure_states, lagrangian_subspaces, states_of_lagrangian, MixedStabilizerState, StabilizerGroup,
};
use crate::{sin2_pi8, Cutoffs};

/// Values closer than this are treated as equal when breaking argmin ties.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct CssHamiltonian {
    n: usize,
    terms: Vec<PauliOperator>,
    theta: f64,
}

impl CssHamiltonian {
    pub fn new(n: usize, terms: Vec<PauliOperator>, theta: f64) -> Result<Self> {
        for (i, t) in terms.iter().enumerate() {
            if t.n() != n {
                return Err(Error::DimensionMismatch {
                    what: "term qubit count",
                    expected: n,
                    got: t.n(),
                });
            }
            if !t.is_hermitian() {
                return Err(Error::InvalidArgument(format!("term {i} ({t}) is not Hermitian")));
            }
        }
        Ok(Self { n, terms, theta })
    }

    /// `(1/n) sum_j (I - Z_j)/2`, rotated by `theta`.
    pub fn zero_hamiltonian(n: usize, theta: f64) -> Self {
        let terms = (0..n)
            .map(|q| PauliOperator::single(n, q, crate::pauli::Letter::Z))
            .collect();
        Self { n, terms, theta }
    }

    /// One X-type term per row of `H_X` and one Z-type term per row of
    /// `H_Z`. A pair violating the CSS condition is rejected unless
    /// `allow_violation` is set.
    pub fn from_css_pair(pair: &CssCodePair, theta: f64, allow_violation: bool) -> Result<Self> {
        if !pair.is_css() && !allow_violation {
            return Err(Error::CssViolation {
                violations: pair.violations(),
            });
        }
        let terms = pair
            .h_x()
            .row_vectors()
            .iter()
            .map(PauliOperator::x_type)
            .chain(pair.h_z().row_vectors().iter().map(PauliOperator::z_type))
            .collect();
        Self::new(pair.num_qubits(), terms, theta)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[PauliOperator] {
        &self.terms
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Largest term weight.
    pub fn locality(&self) -> usize {
        self.terms.iter().map(PauliOperator::weight).max().unwrap_or(0)
    }

    pub fn with_theta(&self, theta: f64) -> Self {
        Self { theta, ..self.clone() }
    }

    fn local_terms(&self, cutoffs: &Cutoffs) -> Result<Vec<(Vec<usize>, CMatrix)>> {
        self.terms
            .iter()
            .map(|t| Ok((t.support(), rotated_local_term(t, self.theta, cutoffs)?)))
            .collect()
    }
}

/// Text form: header `n theta`, then one Pauli term per line.
impl fmt::Display for CssHamiltonian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.theta)?;
        for t in &self.terms {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for CssHamiltonian {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing `n theta` header".into(),
        })?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let perr = |msg: String| Error::Parse { line: hl, msg };
        let [n_tok, theta_tok] = toks[..] else {
            return Err(perr("header must be `n theta`".into()));
        };
        let n = n_tok.parse::<usize>().map_err(|_| perr(format!("bad qubit count `{n_tok}`")))?;
        let theta = theta_tok
            .parse::<f64>()
            .map_err(|_| perr(format!("bad angle `{theta_tok}`")))?;
        let mut terms = Vec::new();
        for (line, text) in lines {
            let p = text.parse::<PauliOperator>().map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
            if p.n() != n {
                return Err(Error::Parse {
                    line,
                    msg: format!("term has {} qubits, header says {n}", p.n()),
                });
            }
            terms.push(p);
        }
        CssHamiltonian::new(n, terms, theta).map_err(|e| Error::Parse {
            line: hl,
            msg: e.to_string(),
        })
    }
}

/// `D^dagger^{(x)w} ((I - S|_N)/2) D^{(x)w}` on the `w` qubits of the
/// support `N` of `s`, ordered ascending.
pub fn rotated_local_term(s: &PauliOperator, theta: f64, cutoffs: &Cutoffs) -> Result<CMatrix> {
    let support = s.support();
    let w = support.len();
    if w > cutoffs.dense_qubits {
        return Err(Error::CutoffExceeded {
            what: "rotated local term",
            requested: w,
            cutoff: cutoffs.dense_qubits,
        });
    }
    let local = s.restrict(&support);
    let dim = 1usize << w;
    let proj = (CMatrix::identity(dim, dim) - dense::pauli_matrix(&local)) * C64::from(0.5);
    if theta == 0.0 {
        return Ok(proj);
    }
    let d = dense::kron_all(&vec![dense::rotation_d(theta); w]);
    Ok(d.adjoint() * proj * d)
}

/// The full `2^n x 2^n` matrix `(1/m) sum_i Pi~_{S_i}`.
pub fn dense_hamiltonian(h: &CssHamiltonian, cutoffs: &Cutoffs) -> Result<CMatrix> {
    check_dense_n(h.n, cutoffs)?;
    let dim = 1usize << h.n;
    let mut out = CMatrix::zeros(dim, dim);
    for (support, term) in h.local_terms(cutoffs)? {
        out += dense::embed_operator(&term, &support, h.n);
    }
    if !h.terms.is_empty() {
        out *= C64::from(1.0 / h.terms.len() as f64);
    }
    Ok(out)
}

fn check_dense_n(n: usize, cutoffs: &Cutoffs) -> Result<()> {
    if n > cutoffs.dense_qubits {
        return Err(Error::CutoffExceeded {
            what: "dense Hamiltonian",
            requested: n,
            cutoff: cutoffs.dense_qubits,
        });
    }
    Ok(())
}

/// Sum with pairwise (cascade) reduction so the result does not depend on
/// evaluation order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 8 {
        values.iter().sum()
    } else {
        let (a, b) = values.split_at(values.len() / 2);
        pairwise_sum(a) + pairwise_sum(b)
    }
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        pairwise_sum(values) / values.len() as f64
    }
}

/// `Re Tr[A rho]`.
fn real_trace_product(a: &CMatrix, rho: &CMatrix) -> f64 {
    dense::trace_product(a, rho).re
}

/// Per-term energies of a dense state, each evaluated on the reduced state
/// of the term's support.
pub fn term_energies_dense(state: &[C64], h: &CssHamiltonian, cutoffs: &Cutoffs) -> Result<Vec<f64>> {
    check_dense_n(h.n, cutoffs)?;
    if state.len() != 1usize << h.n {
        return Err(Error::DimensionMismatch {
            what: "state vector length",
            expected: 1usize << h.n,
            got: state.len(),
        });
    }
    let norm_sq = dense::norm_sq(state);
    if (norm_sq - 1.0).abs() > 1e-10 {
        return Err(Error::Unnormalized { norm_sq });
    }
    h.local_terms(cutoffs)?
        .par_iter()
        .map(|(support, term)| Ok(real_trace_product(term, &dense::partial_trace(state, h.n, support))))
        .collect()
}

/// `<psi| H~ |psi>` for a normalized dense state.
pub fn energy_dense(state: &[C64], h: &CssHamiltonian, cutoffs: &Cutoffs) -> Result<f64> {
    Ok(mean(&term_energies_dense(state, h, cutoffs)?))
}

/// Per-term energies of a pure stabilizer state, each evaluated on the
/// reduced state of the term's support built from the local subgroup.
pub fn term_energies_stabilizer(g: &StabilizerGroup, h: &CssHamiltonian, cutoffs: &Cutoffs) -> Result<Vec<f64>> {
    if g.n() != h.n {
        return Err(Error::DimensionMismatch {
            what: "state vs Hamiltonian qubit count",
            expected: h.n,
            got: g.n(),
        });
    }
    if !g.is_pure() {
        return Err(Error::RankDeficient { rank: g.rank(), n: g.n() });
    }
    h.local_terms(cutoffs)?
        .par_iter()
        .map(|(support, term)| {
            let rho = g.reduced_density_from_subgroup(support, cutoffs)?;
            Ok(real_trace_product(term, &rho))
        })
        .collect()
}

/// Energy of a pure stabilizer state; `n` itself is unbounded, only term
/// weights must fit the dense cutoff.
pub fn energy_stabilizer(g: &StabilizerGroup, h: &CssHamiltonian, cutoffs: &Cutoffs) -> Result<f64> {
    Ok(mean(&term_energies_stabilizer(g, h, cutoffs)?))
}

/// Convex combination of the pure-term energies.
pub fn energy_mixed(state: &MixedStabilizerState, h: &CssHamiltonian, cutoffs: &Cutoffs) -> Result<f64> {
    let parts = state
        .terms()
        .iter()
        .map(|(p, g)| Ok(p * energy_stabilizer(g, h, cutoffs)?))
        .collect::<Result<Vec<f64>>>()?;
    Ok(pairwise_sum(&parts))
}

/// `Re <psi|M|psi>` without allocating.
pub fn real_expectation(state: &[C64], m: &CMatrix) -> f64 {
    let mut acc = 0.0;
    for (i, a) in state.iter().enumerate() {
        if a.norm_sqr() == 0.0 {
            continue;
        }
        let mut row = C64::new(0.0, 0.0);
        for (j, b) in state.iter().enumerate() {
            row += m[(i, j)] * b;
        }
        acc += (a.conj() * row).re;
    }
    acc
}

/// Exhaustive minimum with its tie-broken minimizer.
#[derive(Clone, Debug)]
pub struct MinEnergy {
    pub value: f64,
    pub argmin: StabilizerGroup,
    pub states_checked: usize,
}

/// Index of the minimum; among values within [`TIE_TOLERANCE`] of it, the
/// smallest canonical form wins.
fn tie_broken_argmin(values: &[f64], group_at: impl Fn(usize) -> StabilizerGroup) -> (f64, StabilizerGroup) {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let (value, argmin) = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v <= min + TIE_TOLERANCE)
        .map(|(i, &v)| (v, group_at(i)))
        .min_by(|a, b| a.1.cmp(&b.1))
        .expect("at least one state");
    (value, argmin)
}

/// Every pure stabilizer state on `n` qubits with its amplitude vector,
/// built once and reused across many Hamiltonians.
pub struct StabilizerCatalog {
    n: usize,
    states: Vec<StabilizerGroup>,
    vectors: Vec<Vec<C64>>,
}

impl StabilizerCatalog {
    pub fn build(n: usize, cutoffs: &Cutoffs) -> Result<Self> {
        if n > cutoffs.search_qubits {
            return Err(Error::CutoffExceeded {
                what: "exhaustive stabilizer search",
                requested: n,
                cutoff: cutoffs.search_qubits,
            });
        }
        let states: Vec<StabilizerGroup> = enumerate_pure_states(n, cutoffs)?.collect();
        let vectors = states
            .par_iter()
            .map(|g| g.to_state_vector(cutoffs))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, states, vectors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[StabilizerGroup] {
        &self.states
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    /// `Re <psi|op|psi>` for every catalogued state, in catalogue order.
    pub fn expectations(&self, op: &CMatrix) -> Vec<f64> {
        self.vectors.par_iter().map(|v| real_expectation(v, op)).collect()
    }

    /// Exact minimum of `h` over all pure stabilizer states; by convexity
    /// this is also the minimum over mixed stabilizer states.
    pub fn min_energy(&self, h: &CssHamiltonian, cutoffs: &Cutoffs) -> Result<MinEnergy> {
        if h.n != self.n {
            return Err(Error::DimensionMismatch {
                what: "Hamiltonian vs catalogue qubit count",
                expected: self.n,
                got: h.n,
            });
        }
        let op = dense_hamiltonian(h, cutoffs)?;
        let energies = self.expectations(&op);
        let (value, argmin) = tie_broken_argmin(&energies, |i| self.states[i].clone());
        Ok(MinEnergy {
            value,
            argmin,
            states_checked: self.len(),
        })
    }
}

/// Builds a catalogue and minimizes once; prefer [`StabilizerCatalog`] for
/// repeated searches.
pub fn min_energy_over_stabilizers(h: &CssHamiltonian, cutoffs: &Cutoffs) -> Result<MinEnergy> {
    StabilizerCatalog::build(h.n, cutoffs)?.min_energy(h, cutoffs)
}

/// One row of the local bound table.
#[derive(Clone, Debug, Serialize)]
pub struct LocalBoundRow {
    pub k: usize,
    /// `"X"` for the all-X term, `"Z"` for the all-Z term.
    pub pauli_type: String,
    pub min_energy: f64,
    /// Canonical minimizer, one generator per entry.
    pub argmin: Vec<String>,
    pub states: usize,
    /// `max |<eta| H^{(x)k} |eta>|` over the same states.
    pub max_hadamard_overlap: f64,
}

/// Exhaustive minima of the rotated all-X and all-Z terms over every
/// `k`-qubit stabilizer state, for `k = 1..=k_max`.
pub fn local_bound_table(k_max: usize, theta: f64, cutoffs: &Cutoffs) -> Result<Vec<LocalBoundRow>> {
    let mut rows = Vec::new();
    for k in 1..=k_max {
        rows.extend(local_bound_rows(k, theta, cutoffs)?);
    }
    Ok(rows)
}

/// The all-X and all-Z rows of [`local_bound_table`] for a single `k`.
pub fn local_bound_rows(k: usize, theta: f64, cutoffs: &Cutoffs) -> Result<[LocalBoundRow; 2]> {
    if k > cutoffs.enum_qubits {
        return Err(Error::CutoffExceeded {
            what: "local bound enumeration",
            requested: k,
            cutoff: cutoffs.enum_qubits,
        });
    }
    let ones = crate::f2linalg::BitVector::ones(k);
    let px = rotated_local_term(&PauliOperator::x_type(&ones), theta, cutoffs)?;
    let pz = rotated_local_term(&PauliOperator::z_type(&ones), theta, cutoffs)?;
    let had = dense::kron_all(&vec![dense::hadamard(); k]);
    let subspaces = lagrangian_subspaces(k);
    let values: Vec<[f64; 3]> = subspaces
        .par_iter()
        .flat_map_iter(|rows| {
            states_of_lagrangian(k, rows)
                .map(|g| {
                    let v = g.to_state_vector(cutoffs).expect("within cutoff");
                    let h = dense::inner(&v, &dense::apply_matrix(&had, &v)).norm();
                    [real_expectation(&v, &px), real_expectation(&v, &pz), h]
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let group_at = |i: usize| {
        let per = 1usize << k;
        states_of_lagrangian(k, &subspaces[i / per]).nth(i % per).expect("index in range")
    };
    let max_h = values.iter().map(|v| v[2]).fold(0.0, f64::max);
    let row = |col: usize, name: &str| {
        let energies: Vec<f64> = values.iter().map(|v| v[col]).collect();
        let (min_energy, argmin) = tie_broken_argmin(&energies, group_at);
        LocalBoundRow {
            k,
            pauli_type: name.into(),
            min_energy,
            argmin: argmin.generators().iter().map(ToString::to_string).collect(),
            states: values.len(),
            max_hadamard_overlap: max_h,
        }
    };
    Ok([row(0, "X"), row(1, "Z")])
}

/// Energy floor certified for every stabilizer state: `epsilon = alpha
/// sin^2(pi/8)` where `alpha` is the fraction of odd-weight terms.
#[derive(Clone, Debug, PartialEq)]
pub struct NlcsCertificate {
    pub alpha: Ratio<usize>,
    pub epsilon: f64,
}

pub fn nlcs_certificate(h: &CssHamiltonian) -> Result<NlcsCertificate> {
    if (h.theta - std::f64::consts::FRAC_PI_8).abs() > 1e-15 {
        return Err(Error::InvalidArgument(format!(
            "certificate requires theta = pi/8, got {}",
            h.theta
        )));
    }
    if h.terms.is_empty() {
        return Err(Error::InvalidArgument("Hamiltonian has no terms".into()));
    }
    for (index, t) in h.terms.iter().enumerate() {
        if !(t.is_x_type() || t.is_z_type()) {
            return Err(Error::NotCss { index });
        }
    }
    let odd = h.terms.iter().filter(|t| t.weight() % 2 == 1).count();
    let alpha = Ratio::new(odd, h.terms.len());
    let epsilon = odd as f64 / h.terms.len() as f64 * sin2_pi8();
    Ok(NlcsCertificate { alpha, epsilon })
}

/// A unitary to conjugate by: a Clifford circuit or an explicit matrix.
#[derive(Clone, Debug)]
pub enum Conjugator {
    Clifford(CliffordCircuit),
    Unitary(CMatrix),
}

impl Conjugator {
    /// `D(theta)^{(x)n}`.
    pub fn rotation_layer(n: usize, theta: f64) -> Self {
        Conjugator::Unitary(dense::kron_all(&vec![dense::rotation_d(theta); n]))
    }

    fn matrix(&self) -> CMatrix {
        match self {
            Conjugator::Clifford(c) => dense::circuit_unitary(c),
            Conjugator::Unitary(u) => u.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub max_abs_difference: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub spectrum: Vec<f64>,
}

/// Compares the sorted spectra of `H` and `C^dagger H C`.
pub fn spectrum_conjugation_check(h: &CssHamiltonian, c: &Conjugator, cutoffs: &Cutoffs) -> Result<SpectrumReport> {
    let hm = dense_hamiltonian(h, cutoffs)?;
    let u = c.matrix();
    if u.nrows() != hm.nrows() || u.ncols() != hm.ncols() {
        return Err(Error::DimensionMismatch {
            what: "unitary dimension",
            expected: hm.nrows(),
            got: u.nrows(),
        });
    }
    let conj = u.adjoint() * &hm * &u;
    let a = dense::hermitian_eigenvalues(&hm);
    let b = dense::hermitian_eigenvalues(&conj);
    let max_abs_difference = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let tolerance = 1e-9;
    Ok(SpectrumReport {
        n: h.n,
        max_abs_difference,
        tolerance,
        pass: max_abs_difference <= tolerance,
        spectrum: a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_8;

    fn cut() -> Cutoffs {
        Cutoffs::default()
    }

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn unrotated_term_is_plain_projector() {
        let t = rotated_local_term(&p("IZI"), 0.0, &cut()).unwrap();
        let want = (CMatrix::identity(2, 2) - dense::letter_matrix(crate::pauli::Letter::Z)) * C64::from(0.5);
        assert!((t - want).norm() < 1e-15);
    }

    #[test]
    fn rotated_xx_is_hadamard_projector() {
        let t = rotated_local_term(&p("XX"), FRAC_PI_8, &cut()).unwrap();
        let hh = dense::kron(&dense::hadamard(), &dense::hadamard());
        let want = (CMatrix::identity(4, 4) - hh) * C64::from(0.5);
        assert!((t - want).norm() < 1e-14);
    }

    #[test]
    fn zero_hamiltonian_energies() {
        let n = 3;
        let h0 = CssHamiltonian::zero_hamiltonian(n, 0.0);
        let x = dense::basis_state(n, 0b101);
        assert!((energy_dense(&x, &h0, &cut()).unwrap() - 2.0 / 3.0).abs() < 1e-12);
        let ht = CssHamiltonian::zero_hamiltonian(n, FRAC_PI_8);
        let zero = dense::basis_state(n, 0);
        assert!((energy_dense(&zero, &ht, &cut()).unwrap() - sin2_pi8()).abs() < 1e-12);
        let d = dense::kron_all(&vec![dense::rotation_d(FRAC_PI_8).adjoint(); n]);
        let ground: Vec<C64> = d.column(0).iter().copied().collect();
        assert!(energy_dense(&ground, &ht, &cut()).unwrap().abs() < 1e-12);
        let bad = vec![C64::from(1.0); 8];
        assert!(matches!(energy_dense(&bad, &ht, &cut()), Err(Error::Unnormalized { .. })));
    }

    #[test]
    fn stabilizer_energy_examples() {
        let n = 6;
        let ht = CssHamiltonian::zero_hamiltonian(n, FRAC_PI_8);
        let e = energy_stabilizer(&StabilizerGroup::zero_state(n), &ht, &cut()).unwrap();
        assert!((e - sin2_pi8()).abs() < 1e-12);
        let ys: Vec<PauliOperator> = (0..n).map(|q| PauliOperator::single(n, q, crate::pauli::Letter::Y)).collect();
        let yplus = StabilizerGroup::new(n, ys).unwrap();
        assert!((energy_stabilizer(&yplus, &ht, &cut()).unwrap() - 0.5).abs() < 1e-12);
        let bell = StabilizerGroup::from_strs(&["XXII", "ZZII", "IIXX", "IIZZ"]).unwrap();
        let hx = CssHamiltonian::new(4, vec![p("XXXX")], FRAC_PI_8).unwrap();
        assert!(energy_stabilizer(&bell, &hx, &cut()).unwrap().abs() < 1e-12);
    }

    #[test]
    fn small_minima() {
        let m = min_energy_over_stabilizers(&CssHamiltonian::zero_hamiltonian(2, FRAC_PI_8), &cut()).unwrap();
        assert!((m.value - sin2_pi8()).abs() < 1e-12);
        assert_eq!(m.states_checked, 60);
        let zz = CssHamiltonian::new(2, vec![p("ZZ")], FRAC_PI_8).unwrap();
        assert!(min_energy_over_stabilizers(&zz, &cut()).unwrap().value.abs() < 1e-12);
        let m = min_energy_over_stabilizers(&CssHamiltonian::zero_hamiltonian(2, 0.0), &cut()).unwrap();
        assert!(m.value.abs() < 1e-12);
        assert_eq!(m.argmin, StabilizerGroup::zero_state(2));
    }

    #[test]
    fn certificate_examples() {
        let odd = CssHamiltonian::new(3, vec![p("XII"), p("ZZZ")], FRAC_PI_8).unwrap();
        let c = nlcs_certificate(&odd).unwrap();
        assert_eq!(c.alpha, Ratio::new(1, 1));
        assert!((c.epsilon - 0.146_446_609_406_726_24).abs() < 1e-15);
        let half = CssHamiltonian::new(3, vec![p("XXI"), p("ZZZ")], FRAC_PI_8).unwrap();
        assert!((nlcs_certificate(&half).unwrap().epsilon - sin2_pi8() / 2.0).abs() < 1e-15);
        let even = CssHamiltonian::new(2, vec![p("XX")], FRAC_PI_8).unwrap();
        assert_eq!(nlcs_certificate(&even).unwrap().epsilon, 0.0);
        let mixed = CssHamiltonian::new(2, vec![p("XZ")], FRAC_PI_8).unwrap();
        assert_eq!(nlcs_certificate(&mixed), Err(Error::NotCss { index: 0 }));
    }

    #[test]
    fn text_round_trip() {
        let h = CssHamiltonian::new(3, vec![p("XXI"), p("-ZZZ")], FRAC_PI_8).unwrap();
        assert_eq!(h.to_string().parse::<CssHamiltonian>().unwrap(), h);
        let err = "2 0.3\nXX\nXXX\n".parse::<CssHamiltonian>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn spectrum_invariance_examples() {
        let h0 = CssHamiltonian::zero_hamiltonian(3, 0.0);
        let id = Conjugator::Clifford(CliffordCircuit::identity(3));
        assert!(spectrum_conjugation_check(&h0, &id, &cut()).unwrap().pass);
        let rot = Conjugator::rotation_layer(3, FRAC_PI_8);
        assert!(spectrum_conjugation_check(&h0, &rot, &cut()).unwrap().pass);
    }

    #[test]
    fn pairwise_sum_matches_naive() {
        let v: Vec<f64> = (0..1000).map(|i| i as f64 * 0.25).collect();
        assert_eq!(pairwise_sum(&v), v.iter().sum::<f64>());
    }
}
