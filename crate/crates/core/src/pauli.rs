//! The n-qubit Pauli group in symplectic form, plus Clifford conjugation.
//!
//! An operator is stored as `i^phase * prod_j X_j^{x_j} Z_j^{z_j}`, with the
//! X factor to the left of the Z factor on every qubit. Under this
//! convention `Y = i X Z`, so a bare `Y` has `x = z = 1` and `phase = 1`.
//! Signs elsewhere in the crate are derived from this ordering.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::f2linalg::BitVector;

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Letter {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

/// An element of the n-qubit Pauli group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVector,
    z: BitVector,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
            phase: 0,
        }
    }

    /// Raw constructor in the `i^phase X^x Z^z` representation.
    pub fn from_parts(x: BitVector, z: BitVector, phase_exp: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                what: "x/z bit-vector length",
                expected: x.len(),
                got: z.len(),
            });
        }
        Ok(Self {
            x,
            z,
            phase: phase_exp % 4,
        })
    }

    /// `i^letter_phase` times the tensor product of `letters`.
    pub fn from_letters(letters: &[Letter], letter_phase: u8) -> Self {
        let mut x = BitVector::zeros(letters.len());
        let mut z = BitVector::zeros(letters.len());
        let mut ys = 0u8;
        for (q, l) in letters.iter().enumerate() {
            let (bx, bz) = l.bits();
            x.set(q, bx);
            z.set(q, bz);
            ys += (bx && bz) as u8;
        }
        Self {
            x,
            z,
            phase: (letter_phase + ys) % 4,
        }
    }

    pub fn single(n: usize, qubit: usize, letter: Letter) -> Self {
        let mut letters = vec![Letter::I; n];
        letters[qubit] = letter;
        Self::from_letters(&letters, 0)
    }

    /// `prod_j X_j^{bits_j}`.
    pub fn x_type(bits: &BitVector) -> Self {
        Self {
            x: bits.clone(),
            z: BitVector::zeros(bits.len()),
            phase: 0,
        }
    }

    /// `prod_j Z_j^{bits_j}`.
    pub fn z_type(bits: &BitVector) -> Self {
        Self {
            x: BitVector::zeros(bits.len()),
            z: bits.clone(),
            phase: 0,
        }
    }

    /// The Hermitian operator with the given symplectic vector and sign
    /// `(-1)^sign` relative to its letters.
    pub fn hermitian(x: BitVector, z: BitVector, sign: bool) -> Self {
        let ys = x.and(&z).weight();
        Self {
            x,
            z,
            phase: ((ys + 2 * sign as usize) % 4) as u8,
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &BitVector {
        &self.x
    }

    pub fn z(&self) -> &BitVector {
        &self.z
    }

    /// Exponent of `i` in the `X^x Z^z` representation.
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    /// Exponent of `i` relative to the tensor product of letters.
    pub fn letter_phase(&self) -> u8 {
        let ys = (self.x.and(&self.z).weight() % 4) as u8;
        (self.phase + 4 - ys) % 4
    }

    pub fn letter(&self, qubit: usize) -> Letter {
        Letter::from_bits(self.x.get(qubit), self.z.get(qubit))
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.n()).map(|q| self.letter(q)).collect()
    }

    /// Symplectic vector `(x | z)` of length `2n`.
    pub fn symplectic(&self) -> BitVector {
        self.x.concat(&self.z)
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.x.or(&self.z).weight()
    }

    /// Qubits acted on non-trivially, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        self.x.or(&self.z).iter_ones().collect()
    }

    /// Squares to `+I`; equivalently `phase = x.z (mod 2)`.
    pub fn is_hermitian(&self) -> bool {
        (self.phase as usize + self.x.and(&self.z).weight()).is_multiple_of(2)
    }

    /// True when the operator is `i^k I` for some `k`.
    pub fn is_scalar(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Contains only `X` and `I` letters (any phase).
    pub fn is_x_type(&self) -> bool {
        self.z.is_zero()
    }

    /// Contains only `Z` and `I` letters (any phase).
    pub fn is_z_type(&self) -> bool {
        self.x.is_zero()
    }

    pub fn negated(&self) -> Self {
        Self {
            phase: (self.phase + 2) % 4,
            ..self.clone()
        }
    }

    pub fn with_phase_exp(&self, phase_exp: u8) -> Self {
        Self {
            phase: phase_exp % 4,
            ..self.clone()
        }
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                what: "Pauli qubit count",
                expected: self.n(),
                got: other.n(),
            });
        }
        Ok(())
    }

    /// Operator product `self * other` with exact phase.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        Ok(self.product(other))
    }

    /// Moving `Z^{z1}` past `X^{x2}` on each qubit contributes `(-1)^{z1 . x2}`.
    pub(crate) fn product(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n(), other.n());
        let swap = self.z.dot(&other.x) as u8;
        Self {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            phase: (self.phase + other.phase + 2 * swap) % 4,
        }
    }

    /// True iff the symplectic form vanishes.
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_same_n(other)?;
        Ok(self.commutes_with(other))
    }

    pub(crate) fn commutes_with(&self, other: &Self) -> bool {
        self.x.dot(&other.z) == self.z.dot(&other.x)
    }

    /// Restriction to the listed qubits, in the listed order. The letter
    /// phase of the whole operator is carried by the restriction.
    pub fn restrict(&self, qubits: &[usize]) -> Self {
        let letters: Vec<Letter> = qubits.iter().map(|&q| self.letter(q)).collect();
        Self::from_letters(&letters, self.letter_phase())
    }

    /// Places `self` (on `qubits.len()` qubits) into an `n`-qubit operator.
    pub fn embed(&self, n: usize, qubits: &[usize]) -> Self {
        assert_eq!(self.n(), qubits.len());
        let mut letters = vec![Letter::I; n];
        for (i, &q) in qubits.iter().enumerate() {
            letters[q] = self.letter(i);
        }
        Self::from_letters(&letters, self.letter_phase())
    }

    /// Conjugation `G P G^dagger` by one gate, in place.
    pub fn conjugate_gate(&mut self, gate: CliffordGate) {
        match gate {
            CliffordGate::H(q) => {
                let (x, z) = (self.x.get(q), self.z.get(q));
                self.x.set(q, z);
                self.z.set(q, x);
                if x && z {
                    self.phase = (self.phase + 2) % 4;
                }
            }
            CliffordGate::S(q) => {
                // X -> iXZ, XZ -> iX
                if self.x.get(q) {
                    self.phase = (self.phase + 1) % 4;
                    self.z.flip(q);
                }
            }
            CliffordGate::Cnot { control, target } => {
                // X_c -> X_c X_t, Z_t -> Z_c Z_t; no reordering sign arises
                if self.x.get(control) {
                    self.x.flip(target);
                }
                if self.z.get(target) {
                    self.z.flip(control);
                }
            }
        }
    }

    /// Conjugation `G^dagger P G` by one gate, in place.
    pub fn conjugate_gate_inverse(&mut self, gate: CliffordGate) {
        match gate {
            CliffordGate::S(_) => {
                for _ in 0..3 {
                    self.conjugate_gate(gate);
                }
            }
            _ => self.conjugate_gate(gate),
        }
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

/// Text form: an optional sign prefix in `{+, -, +i, -i}` followed by one
/// letter per qubit. `-` and the Unicode minus `−` are both accepted.
impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.letter_phase() {
            0 => "",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let normalized = s.replace('\u{2212}', "-");
        let (phase, body) = if let Some(rest) = normalized.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = normalized.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = normalized.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = normalized.strip_prefix('-') {
            (2, rest)
        } else {
            (0, normalized.as_str())
        };
        let letters = body
            .chars()
            .map(|c| match c {
                'I' => Ok(Letter::I),
                'X' => Ok(Letter::X),
                'Y' => Ok(Letter::Y),
                'Z' => Ok(Letter::Z),
                other => Err(Error::Parse {
                    line: 1,
                    msg: format!("invalid Pauli letter `{other}` in `{s}`"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliOperator::from_letters(&letters, phase))
    }
}

/// Generators of the Clifford group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CliffordGate {
    H(usize),
    S(usize),
    Cnot { control: usize, target: usize },
}

impl CliffordGate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            CliffordGate::H(q) | CliffordGate::S(q) => vec![q],
            CliffordGate::Cnot { control, target } => vec![control, target],
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= n {
                return Err(Error::InvalidArgument(format!(
                    "gate {self} acts on qubit {q} but the circuit has {n} qubits"
                )));
            }
        }
        if let CliffordGate::Cnot { control, target } = *self {
            if control == target {
                return Err(Error::InvalidArgument(format!(
                    "CNOT control and target coincide ({control})"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CliffordGate::H(q) => write!(f, "H {q}"),
            CliffordGate::S(q) => write!(f, "S {q}"),
            CliffordGate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
        }
    }
}

/// A sequence of Clifford gates on `n` qubits; `gates[0]` acts first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordCircuit {
    n: usize,
    gates: Vec<CliffordGate>,
}

impl CliffordCircuit {
    pub fn new(n: usize, gates: Vec<CliffordGate>) -> Result<Self> {
        for g in &gates {
            g.validate(n)?;
        }
        Ok(Self { n, gates })
    }

    pub fn identity(n: usize) -> Self {
        Self { n, gates: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[CliffordGate] {
        &self.gates
    }

    pub fn push(&mut self, gate: CliffordGate) -> Result<()> {
        gate.validate(self.n)?;
        self.gates.push(gate);
        Ok(())
    }

    fn check_n(&self, p: &PauliOperator) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch {
                what: "circuit vs Pauli qubit count",
                expected: self.n,
                got: p.n(),
            });
        }
        Ok(())
    }

    /// `C P C^dagger`.
    pub fn conjugate(&self, p: &PauliOperator) -> Result<PauliOperator> {
        self.check_n(p)?;
        let mut out = p.clone();
        for &g in &self.gates {
            out.conjugate_gate(g);
        }
        Ok(out)
    }

    /// `C^dagger P C`.
    pub fn conjugate_inverse(&self, p: &PauliOperator) -> Result<PauliOperator> {
        self.check_n(p)?;
        let mut out = p.clone();
        for &g in self.gates.iter().rev() {
            out.conjugate_gate_inverse(g);
        }
        Ok(out)
    }

    /// Qubits in the reverse lightcone of `qubits`: everything that can
    /// influence them through the gates of this circuit.
    pub fn reverse_lightcone(&self, qubits: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        for &q in qubits {
            inside[q] = true;
        }
        for g in self.gates.iter().rev() {
            let qs = g.qubits();
            if qs.iter().any(|&q| inside[q]) {
                for q in qs {
                    inside[q] = true;
                }
            }
        }
        (0..self.n).filter(|&q| inside[q]).collect()
    }
}

/// Circuit text: a header line with `n`, then one gate per line
/// (`H q`, `S q`, `CNOT c t`). Blank lines and `#` comments are ignored.
impl FromStr for CliffordCircuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut n = None;
        let mut gates = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let idx = |t: &str| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("bad qubit index `{t}`"),
                })
            };
            let Some(n) = n else {
                if toks.len() != 1 {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "expected a header line with the qubit count".into(),
                    });
                }
                n = Some(idx(toks[0])?);
                continue;
            };
            let gate = match (toks[0].to_ascii_uppercase().as_str(), toks.len()) {
                ("H", 2) => CliffordGate::H(idx(toks[1])?),
                ("S", 2) => CliffordGate::S(idx(toks[1])?),
                ("CNOT" | "CX", 3) => CliffordGate::Cnot {
                    control: idx(toks[1])?,
                    target: idx(toks[2])?,
                },
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("unsupported gate `{line}`"),
                    })
                }
            };
            gate.validate(n).map_err(|e| Error::Parse {
                line: line_no,
                msg: e.to_string(),
            })?;
            gates.push(gate);
        }
        let n = n.ok_or(Error::Parse {
            line: 1,
            msg: "empty circuit file".into(),
        })?;
        Ok(CliffordCircuit { n, gates })
    }
}

impl fmt::Display for CliffordCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}
