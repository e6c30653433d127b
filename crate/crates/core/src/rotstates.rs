//! States prepared by Clifford gates and Pauli rotations `e^{i theta P}`,
//! their normal form `e^{i theta_t P_t} ... e^{i theta_1 P_1} |phi>`, the
//! exact single-rotation reduced state, and energy checks under the rotated
//! zero Hamiltonian.

use std::f64::consts::FRAC_PI_8;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::codes::trial_rng;
use crate::dense::{self, CMatrix, C64};
use crate::error::{Error, Result};
use crate::hamiltonian::{energy_dense, pairwise_sum, rotated_local_term, CssHamiltonian};
use crate::pauli::{CliffordGate, Letter, PauliOperator};
use crate::sampling::{random_hermitian_pauli, random_stabilizer_state, ThetaPolicy};
use crate::stabilizer::StabilizerGroup;
use crate::{sin2_pi8, Cutoffs};

/// `e^{i theta_t P_t} ... e^{i theta_1 P_1} |phi>`. `rotations[0]` is
/// `(theta_1, P_1)`, the rotation applied first (closest to the base state).
#[derive(Clone, Debug, PartialEq)]
pub struct RotatedCliffordState {
    base: StabilizerGroup,
    rotations: Vec<(f64, PauliOperator)>,
}

impl RotatedCliffordState {
    pub fn new(base: StabilizerGroup, rotations: Vec<(f64, PauliOperator)>) -> Result<Self> {
        if !base.is_pure() {
            return Err(Error::RankDeficient {
                rank: base.rank(),
                n: base.n(),
            });
        }
        for (_, p) in &rotations {
            check_rotation_pauli(base.n(), p)?;
        }
        Ok(Self { base, rotations })
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// Number of rotations.
    pub fn t(&self) -> usize {
        self.rotations.len()
    }

    pub fn base(&self) -> &StabilizerGroup {
        &self.base
    }

    pub fn rotations(&self) -> &[(f64, PauliOperator)] {
        &self.rotations
    }

    pub fn to_state_vector(&self, cutoffs: &Cutoffs) -> Result<Vec<C64>> {
        let mut v = self.base.to_state_vector(cutoffs)?;
        for (theta, p) in &self.rotations {
            v = dense::apply_rotation(*theta, p, &v);
        }
        Ok(v)
    }
}

fn check_rotation_pauli(n: usize, p: &PauliOperator) -> Result<()> {
    if p.n() != n {
        return Err(Error::DimensionMismatch {
            what: "rotation Pauli qubit count",
            expected: n,
            got: p.n(),
        });
    }
    if !p.is_hermitian() {
        return Err(Error::InvalidArgument(format!("rotation Pauli {p} is not Hermitian")));
    }
    Ok(())
}

/// A gate of a Clifford + rotation circuit.
#[derive(Clone, Debug, PartialEq)]
pub enum CircuitGate {
    Clifford(CliffordGate),
    /// `e^{i theta P}`.
    Rotation { theta: f64, pauli: PauliOperator },
}

/// A Clifford + rotation circuit acting on `|0...0>`; `gates[0]` acts first.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationCircuit {
    n: usize,
    gates: Vec<CircuitGate>,
}

impl RotationCircuit {
    pub fn new(n: usize, gates: Vec<CircuitGate>) -> Result<Self> {
        for g in &gates {
            match g {
                CircuitGate::Clifford(c) => c.validate(n)?,
                CircuitGate::Rotation { pauli, .. } => check_rotation_pauli(n, pauli)?,
            }
        }
        Ok(Self { n, gates })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[CircuitGate] {
        &self.gates
    }

    /// Direct dense simulation from `|0...0>`.
    pub fn simulate(&self, cutoffs: &Cutoffs) -> Result<Vec<C64>> {
        if self.n > cutoffs.dense_qubits {
            return Err(Error::CutoffExceeded {
                what: "circuit simulation",
                requested: self.n,
                cutoff: cutoffs.dense_qubits,
            });
        }
        let mut v = dense::basis_state(self.n, 0);
        for g in &self.gates {
            match g {
                CircuitGate::Clifford(c) => dense::apply_clifford_gate(*c, self.n, &mut v),
                CircuitGate::Rotation { theta, pauli } => v = dense::apply_rotation(*theta, pauli, &v),
            }
        }
        Ok(v)
    }
}

/// Text: header `n`, then one gate per line: `H q`, `S q`, `CNOT c t`, or
/// `R theta PAULI` for `e^{i theta PAULI}`. `#` starts a comment.
impl fmt::Display for RotationCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for g in &self.gates {
            match g {
                CircuitGate::Clifford(c) => writeln!(f, "{c}")?,
                CircuitGate::Rotation { theta, pauli } => writeln!(f, "R {theta} {pauli}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for RotationCircuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut n = None;
        let mut gates = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line = i + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line, msg };
            let Some(n) = n else {
                n = Some(text.parse::<usize>().map_err(|_| perr(format!("bad qubit count `{text}`")))?);
                continue;
            };
            let toks: Vec<&str> = text.split_whitespace().collect();
            let gate = if toks[0].eq_ignore_ascii_case("R") {
                let [_, theta, pauli] = toks[..] else {
                    return Err(perr("rotation must be `R theta PAULI`".into()));
                };
                let theta = theta.parse::<f64>().map_err(|_| perr(format!("bad angle `{theta}`")))?;
                let pauli = pauli.parse::<PauliOperator>().map_err(|e| perr(e.to_string()))?;
                check_rotation_pauli(n, &pauli).map_err(|e| perr(e.to_string()))?;
                CircuitGate::Rotation { theta, pauli }
            } else {
                let c: crate::pauli::CliffordCircuit =
                    format!("{n}\n{text}\n").parse().map_err(|e: Error| perr(match e {
                        Error::Parse { msg, .. } => msg,
                        other => other.to_string(),
                    }))?;
                CircuitGate::Clifford(c.gates()[0])
            };
            gates.push(gate);
        }
        let n = n.ok_or(Error::Parse {
            line: 1,
            msg: "missing qubit-count header".into(),
        })?;
        RotationCircuit::new(n, gates)
    }
}

/// Pushes every Clifford gate past the rotations that precede it in time:
/// `U e^{i theta P} = e^{i theta U P U^dagger} U`. Cliffords end up absorbed
/// into the base state, rotation Paulis are conjugated in place.
pub fn normal_form(circuit: &RotationCircuit) -> Result<RotatedCliffordState> {
    let n = circuit.n;
    let mut base: Vec<PauliOperator> = (0..n).map(|q| PauliOperator::single(n, q, Letter::Z)).collect();
    let mut rotations: Vec<(f64, PauliOperator)> = Vec::new();
    for g in &circuit.gates {
        match g {
            CircuitGate::Clifford(c) => {
                for p in base.iter_mut().chain(rotations.iter_mut().map(|(_, p)| p)) {
                    p.conjugate_gate(*c);
                }
            }
            CircuitGate::Rotation { theta, pauli } => rotations.push((*theta, pauli.clone())),
        }
    }
    RotatedCliffordState::new(StabilizerGroup::new(n, base)?, rotations)
}

/// Reduced state on `subset` of `e^{i theta P}|phi>`, from the local
/// subgroups of `stab(|phi>)`:
/// `2^-|A| [ sum_{g in G_A} (cos^2 g + sin^2 P_A g P_A)
///         + sum_{g in G_{A,P}} i sin cos [P_A, g] ]`.
pub fn reduced_state_one_rotation(
    g: &StabilizerGroup,
    theta: f64,
    p: &PauliOperator,
    subset: &[usize],
    cutoffs: &Cutoffs,
) -> Result<CMatrix> {
    if !g.is_pure() {
        return Err(Error::RankDeficient { rank: g.rank(), n: g.n() });
    }
    check_rotation_pauli(g.n(), p)?;
    if subset.len() > cutoffs.dense_qubits {
        return Err(Error::CutoffExceeded {
            what: "single-rotation reduced state",
            requested: subset.len(),
            cutoff: cutoffs.dense_qubits,
        });
    }
    let dim = 1usize << subset.len();
    let (s, c) = theta.sin_cos();
    let pa = dense::pauli_matrix(&p.restrict(subset));
    let mut stab = CMatrix::zeros(dim, dim);
    for ga in g.subgroup_on(subset, &PauliOperator::identity(g.n()))? {
        stab += dense::pauli_matrix(&ga);
    }
    let mut rho = &stab * C64::from(c * c) + &pa * &stab * &pa * C64::from(s * s);
    for gp in g.subgroup_on(subset, p)? {
        let m = dense::pauli_matrix(&gp);
        rho += (&pa * &m - &m * &pa) * C64::new(0.0, s * c);
    }
    Ok(rho * C64::from(1.0 / dim as f64))
}

fn zero_term(cutoffs: &Cutoffs) -> CMatrix {
    rotated_local_term(&PauliOperator::single(1, 0, Letter::Z), FRAC_PI_8, cutoffs).expect("one qubit")
}

/// Energy under the rotated zero Hamiltonian `(1/n) sum_j Pi~_{Z_j}` at
/// `theta = pi/8`. With at most one rotation the exact reduced-state formula
/// is used (any `n`); otherwise the state is simulated densely.
pub fn energy_zero_rotated(s: &RotatedCliffordState, cutoffs: &Cutoffs) -> Result<f64> {
    match s.rotations() {
        [] => energy_one_rotation(s.base(), 0.0, &PauliOperator::identity(s.n()), cutoffs),
        [(theta, p)] => energy_one_rotation(s.base(), *theta, p, cutoffs),
        _ => energy_zero_rotated_dense(s, cutoffs),
    }
}

fn energy_one_rotation(g: &StabilizerGroup, theta: f64, p: &PauliOperator, cutoffs: &Cutoffs) -> Result<f64> {
    let term = zero_term(cutoffs);
    let per_qubit = (0..g.n())
        .into_par_iter()
        .map(|q| {
            let rho = reduced_state_one_rotation(g, theta, p, &[q], cutoffs)?;
            Ok(dense::trace_product(&term, &rho).re)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(pairwise_sum(&per_qubit) / g.n() as f64)
}

/// Dense evaluation of [`energy_zero_rotated`] for any number of rotations.
pub fn energy_zero_rotated_dense(s: &RotatedCliffordState, cutoffs: &Cutoffs) -> Result<f64> {
    let v = s.to_state_vector(cutoffs)?;
    energy_dense(&v, &CssHamiltonian::zero_hamiltonian(s.n(), FRAC_PI_8), cutoffs)
}

/// Qubits `i` with `P_i = Y`, `+-Z_i` in `G`, and some `g in G` with
/// `g_i = Z` and `g` equal to `P` (as letters) off `i`. At most one qubit
/// can qualify, since two such qubits would force anticommuting elements.
pub fn obstruction_qubits(g: &StabilizerGroup, p: &PauliOperator) -> Result<Vec<usize>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in 0..n {
        if p.letter(i) != Letter::Y {
            continue;
        }
        let zi = PauliOperator::single(n, i, Letter::Z).symplectic();
        if g.element_with(&zi).is_none() {
            continue;
        }
        if g.subgroup_on(&[i], p)?.iter().any(|e| e.letter(0) == Letter::Z) {
            out.push(i);
        }
    }
    Ok(out)
}

/// `(1 - t/n) sin^2(pi/8)`.
pub fn rotation_bound(n: usize, t: usize) -> f64 {
    (1.0 - t as f64 / n as f64) * sin2_pi8()
}

/// Results of the single-rotation energy check.
#[derive(Clone, Debug, Serialize)]
pub struct OneRotationReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub bound: f64,
    pub tolerance: f64,
    pub min_energy: f64,
    pub min_margin: f64,
    pub violations: usize,
    /// Samples with energy within `tolerance` of the bound.
    pub near_equality: usize,
    /// Samples where more than one qubit met the obstruction conditions.
    pub obstruction_violations: usize,
    /// Samples also evaluated by dense simulation.
    pub dense_checked: usize,
    pub max_dense_discrepancy: f64,
}

impl OneRotationReport {
    pub fn pass(&self) -> bool {
        self.violations == 0 && self.obstruction_violations == 0 && self.max_dense_discrepancy <= 1e-10
    }
}

/// Largest `n` for which sampled single-rotation energies are also
/// recomputed by dense simulation.
pub const DENSE_CROSS_CHECK_QUBITS: usize = 8;

/// Samples random stabilizer base states, Hermitian Paulis and angles
/// (trial `i` on stream `i` of `seed`) and checks the single-rotation bound.
pub fn verify_one_rotation_bound(n: usize, trials: usize, seed: u64, cutoffs: &Cutoffs) -> Result<OneRotationReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let bound = rotation_bound(n, 1);
    let tolerance = 1e-9;
    let cross = n <= cutoffs.dense_qubits.min(DENSE_CROSS_CHECK_QUBITS);
    let samples = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let g = random_stabilizer_state(n, &mut rng);
            let p = random_hermitian_pauli(n, &mut rng);
            let theta = ThetaPolicy::Mixed.sample(&mut rng);
            let e = energy_one_rotation(&g, theta, &p, cutoffs)?;
            let obstructions = obstruction_qubits(&g, &p)?.len();
            let discrepancy = if cross {
                let s = RotatedCliffordState::new(g, vec![(theta, p)])?;
                (energy_zero_rotated_dense(&s, cutoffs)? - e).abs()
            } else {
                0.0
            };
            Ok((e, obstructions, discrepancy))
        })
        .collect::<Result<Vec<_>>>()?;
    let min_energy = samples.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    Ok(OneRotationReport {
        n,
        trials,
        seed,
        bound,
        tolerance,
        min_energy,
        min_margin: min_energy - bound,
        violations: samples.iter().filter(|s| s.0 < bound - tolerance).count(),
        near_equality: samples.iter().filter(|s| (s.0 - bound).abs() <= tolerance).count(),
        obstruction_violations: samples.iter().filter(|s| s.1 > 1).count(),
        dense_checked: if cross { trials } else { 0 },
        max_dense_discrepancy: samples.iter().map(|s| s.2).fold(0.0, f64::max),
    })
}

/// One cell of the rotation-count scan.
#[derive(Clone, Debug, Serialize)]
pub struct ScanCell {
    pub n: usize,
    pub t: usize,
    pub samples: usize,
    pub theta_policy: String,
    pub min_energy: f64,
    pub bound: f64,
    pub margin: f64,
    pub violations: usize,
    /// Index of the sample attaining `min_energy`.
    pub argmin_sample: usize,
}

/// The deterministic sample 0 of every scan cell: `|0...0>` with
/// `e^{i (pi/8) Y_j}` on qubits `j < t`, which undoes the rotation on `t`
/// qubits and meets the conjectured bound with equality.
pub fn unrotation_witness(n: usize, t: usize) -> Result<RotatedCliffordState> {
    let rotations = (0..t)
        .map(|j| (FRAC_PI_8, PauliOperator::single(n, j, Letter::Y)))
        .collect();
    RotatedCliffordState::new(StabilizerGroup::zero_state(n), rotations)
}

/// Samples states with exactly `t` rotations and records the minimum
/// energy against `(1 - t/n) sin^2(pi/8)`. Violations are counted and
/// reported, never turned into errors. Sample 0 is [`unrotation_witness`];
/// sample `i >= 1` uses stream `i` of `seed`.
pub fn conjecture_scan(
    n: usize,
    t: usize,
    samples: usize,
    seed: u64,
    policy: ThetaPolicy,
    cutoffs: &Cutoffs,
) -> Result<ScanCell> {
    if n == 0 || n > cutoffs.dense_qubits {
        return Err(Error::CutoffExceeded {
            what: "rotation scan",
            requested: n,
            cutoff: cutoffs.dense_qubits,
        });
    }
    let bound = rotation_bound(n, t);
    let tolerance = 1e-9;
    let energies = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let state = if i == 0 {
                unrotation_witness(n, t)?
            } else {
                let mut rng = trial_rng(seed, i);
                let base = random_stabilizer_state(n, &mut rng);
                let rotations = (0..t)
                    .map(|_| {
                        let p = random_hermitian_pauli(n, &mut rng);
                        (policy.sample(&mut rng), p)
                    })
                    .collect();
                RotatedCliffordState::new(base, rotations)?
            };
            energy_zero_rotated_dense(&state, cutoffs)
        })
        .collect::<Result<Vec<f64>>>()?;
    let (argmin_sample, min_energy) = energies
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, e)| if e < best.1 { (i, e) } else { best });
    Ok(ScanCell {
        n,
        t,
        samples,
        theta_policy: policy.name().into(),
        min_energy,
        bound,
        margin: min_energy - bound,
        violations: energies.iter().filter(|&&e| e < bound - tolerance).count(),
        argmin_sample,
    })
}
