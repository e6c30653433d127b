//! Classical linear codes, Tanner lifts over regular graphs, odd-weight
//! parity-check transforms, CSS assembly and the random parity-check
//! experiments.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2linalg::{in_row_span, kernel_basis, matrix_tensor, BinaryMatrix, BitVector};

/// A linear code given by its parity-check matrix, with a cached generator
/// matrix whose rows form a basis of the kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    parity_check: BinaryMatrix,
    generator: BinaryMatrix,
}

impl LinearCode {
    pub fn new(parity_check: BinaryMatrix) -> Self {
        let generator = kernel_basis(&parity_check);
        Self {
            parity_check,
            generator,
        }
    }

    pub fn parity_check(&self) -> &BinaryMatrix {
        &self.parity_check
    }

    pub fn generator(&self) -> &BinaryMatrix {
        &self.generator
    }

    pub fn length(&self) -> usize {
        self.parity_check.cols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn contains(&self, word: &BitVector) -> Result<bool> {
        Ok(self.parity_check.mul_vec(word)?.is_zero())
    }
}

/// A parity-check matrix of the dual code, i.e. a generator matrix of the
/// code itself.
pub fn dual_parity_check(code: &LinearCode) -> BinaryMatrix {
    code.generator.clone()
}

/// `h0 (x) h1`, a parity-check matrix of the dual tensor code
/// `(C0^perp (x) C1^perp)^perp`.
pub fn dual_tensor_parity_check(h0: &BinaryMatrix, h1: &BinaryMatrix) -> BinaryMatrix {
    matrix_tensor(h0, h1)
}

/// Makes every row odd without changing the kernel: odd rows are kept,
/// every even row has the first odd row added to it.
pub fn odd_weight_transform(h: &BinaryMatrix) -> Result<BinaryMatrix> {
    let pivot = (0..h.rows())
        .find(|&r| h.row_weight(r) % 2 == 1)
        .ok_or(Error::TransformImpossible)?;
    let pivot_row = h.row(pivot).clone();
    let rows = h
        .row_vectors()
        .iter()
        .map(|row| {
            if row.weight() % 2 == 1 {
                row.clone()
            } else {
                row.xor(&pivot_row)
            }
        })
        .collect();
    BinaryMatrix::from_bit_rows(h.cols(), rows)
}

/// Exact fraction of odd-weight rows.
pub fn odd_row_fraction(h: &BinaryMatrix) -> Result<Ratio<usize>> {
    if h.rows() == 0 {
        return Err(Error::InvalidArgument("odd-row fraction of a matrix with no rows".into()));
    }
    let odd = (0..h.rows()).filter(|&r| h.row_weight(r) % 2 == 1).count();
    Ok(Ratio::new(odd, h.rows()))
}

/// A `d`-regular simple graph whose per-vertex edge lists fix the local
/// ordering of incident edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularGraph {
    num_vertices: usize,
    degree: usize,
    incidence: Vec<Vec<usize>>,
}

impl RegularGraph {
    pub fn new(num_vertices: usize, degree: usize, incidence: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidGraph(msg));
        if incidence.len() != num_vertices {
            return bad(format!("{} edge lists for {num_vertices} vertices", incidence.len()));
        }
        if !(num_vertices * degree).is_multiple_of(2) {
            return bad(format!("{num_vertices} vertices of odd degree {degree}"));
        }
        let num_edges = num_vertices * degree / 2;
        let mut ends: Vec<Vec<usize>> = vec![Vec::new(); num_edges];
        for (v, list) in incidence.iter().enumerate() {
            if list.len() != degree {
                return bad(format!("vertex {v} has {} edges, expected {degree}", list.len()));
            }
            for &e in list {
                if e >= num_edges {
                    return bad(format!("edge id {e} at vertex {v} is not below {num_edges}"));
                }
                if ends[e].contains(&v) {
                    return bad(format!("edge {e} is a self-loop or repeated at vertex {v}"));
                }
                ends[e].push(v);
            }
        }
        let mut pairs = HashSet::new();
        for (e, end) in ends.iter().enumerate() {
            if end.len() != 2 {
                return bad(format!("edge {e} has {} endpoints", end.len()));
            }
            if !pairs.insert((end[0].min(end[1]), end[0].max(end[1]))) {
                return bad(format!("edge {e} duplicates another edge between {} and {}", end[0], end[1]));
            }
        }
        Ok(Self {
            num_vertices,
            degree,
            incidence,
        })
    }

    /// The complete graph on `num_vertices` vertices, edges numbered in
    /// lexicographic order of their endpoint pairs.
    pub fn complete(num_vertices: usize) -> Result<Self> {
        if num_vertices < 2 {
            return Err(Error::InvalidGraph("complete graph needs at least 2 vertices".into()));
        }
        let mut incidence = vec![Vec::new(); num_vertices];
        let mut e = 0;
        for u in 0..num_vertices {
            for v in u + 1..num_vertices {
                incidence[u].push(e);
                incidence[v].push(e);
                e += 1;
            }
        }
        Self::new(num_vertices, num_vertices - 1, incidence)
    }

    /// A seeded random simple `degree`-regular graph built by random stub
    /// pairing.
    pub fn random(num_vertices: usize, degree: usize, seed: u64) -> Result<Self> {
        if degree >= num_vertices || !(num_vertices * degree).is_multiple_of(2) {
            return Err(Error::InvalidGraph(format!(
                "no simple {degree}-regular graph on {num_vertices} vertices"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Pair stubs one at a time among the admissible partners (no loops, no
        // repeated edges), restarting on a dead end.
        for _ in 0..10_000 {
            let mut free: Vec<usize> = (0..num_vertices).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
            let mut seen = HashSet::new();
            let mut pairs = Vec::with_capacity(free.len() / 2);
            while !free.is_empty() {
                let a = free.swap_remove(rng.random_range(0..free.len()));
                let options: Vec<usize> = (0..free.len())
                    .filter(|&i| free[i] != a && !seen.contains(&(a.min(free[i]), a.max(free[i]))))
                    .collect();
                let Some(&i) = options.get(rng.random_range(0..options.len().max(1))) else {
                    break;
                };
                let b = free.swap_remove(i);
                seen.insert((a.min(b), a.max(b)));
                pairs.push((a, b));
            }
            if free.is_empty() && pairs.len() * 2 == num_vertices * degree {
                let mut incidence = vec![Vec::new(); num_vertices];
                for (e, &(a, b)) in pairs.iter().enumerate() {
                    incidence[a].push(e);
                    incidence[b].push(e);
                }
                return Self::new(num_vertices, degree, incidence);
            }
        }
        Err(Error::InvalidGraph("random pairing did not produce a simple graph".into()))
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_edges(&self) -> usize {
        self.num_vertices * self.degree / 2
    }

    /// The ordered incident edges of `v`.
    pub fn edges_at(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// The bits of `word` on the edges at `v`, in the stored order.
    pub fn local_view(&self, v: usize, word: &BitVector) -> BitVector {
        word.select(&self.incidence[v])
    }
}

/// Text form: `<num_vertices> <degree>`, then one line of edge ids per vertex.
impl fmt::Display for RegularGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.num_vertices, self.degree)?;
        for list in &self.incidence {
            let ids: Vec<String> = list.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", ids.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for RegularGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let parse_nums = |line: usize, text: &str| -> Result<Vec<usize>> {
            text.split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::Parse {
                        line,
                        msg: format!("expected a non-negative integer, found `{t}`"),
                    })
                })
                .collect()
        };
        let (i, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing `<num_vertices> <degree>` header".into(),
        })?;
        let head = parse_nums(i + 1, header)?;
        let [nv, d] = head[..] else {
            return Err(Error::Parse {
                line: i + 1,
                msg: "header must be `<num_vertices> <degree>`".into(),
            });
        };
        let mut incidence = Vec::with_capacity(nv);
        for (i, line) in lines {
            let ids = parse_nums(i + 1, line)?;
            if ids.len() != d {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected {d} edge ids, found {}", ids.len()),
                });
            }
            incidence.push(ids);
        }
        if incidence.len() != nv {
            return Err(Error::Parse {
                line: s.lines().count(),
                msg: format!("expected {nv} vertex lines, found {}", incidence.len()),
            });
        }
        RegularGraph::new(nv, d, incidence)
    }
}

/// Global parity-check matrix of the Tanner code: row `(v, j)` is local row
/// `h_j` placed on the edges at `v`.
pub fn tanner_lift(g: &RegularGraph, h: &BinaryMatrix) -> Result<BinaryMatrix> {
    if h.cols() != g.degree {
        return Err(Error::DimensionMismatch {
            what: "local parity-check columns vs graph degree",
            expected: g.degree,
            got: h.cols(),
        });
    }
    let mut out = BinaryMatrix::zeros(0, g.num_edges());
    for v in 0..g.num_vertices {
        for j in 0..h.rows() {
            let mut row = BitVector::zeros(g.num_edges());
            for c in h.row(j).iter_ones() {
                row.set(g.incidence[v][c], true);
            }
            out.push_row(row)?;
        }
    }
    Ok(out)
}

/// A pair of X- and Z-check matrices with the count of nonzero entries of
/// `H_X H_Z^T` (zero for a valid CSS code).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCodePair {
    h_x: BinaryMatrix,
    h_z: BinaryMatrix,
    violations: usize,
}

impl CssCodePair {
    /// Builds the pair, recording (not rejecting) CSS violations.
    pub fn new(h_x: BinaryMatrix, h_z: BinaryMatrix) -> Result<Self> {
        if h_x.cols() != h_z.cols() {
            return Err(Error::DimensionMismatch {
                what: "H_X and H_Z column counts",
                expected: h_x.cols(),
                got: h_z.cols(),
            });
        }
        let violations = h_x.mul(&h_z.transpose())?.count_ones();
        Ok(Self { h_x, h_z, violations })
    }

    /// Builds the pair and rejects it unless `H_X H_Z^T = 0`.
    pub fn checked(h_x: BinaryMatrix, h_z: BinaryMatrix) -> Result<Self> {
        let pair = Self::new(h_x, h_z)?;
        if pair.violations > 0 {
            return Err(Error::CssViolation {
                violations: pair.violations,
            });
        }
        Ok(pair)
    }

    pub fn h_x(&self) -> &BinaryMatrix {
        &self.h_x
    }

    pub fn h_z(&self) -> &BinaryMatrix {
        &self.h_z
    }

    pub fn num_qubits(&self) -> usize {
        self.h_x.cols()
    }

    pub fn violations(&self) -> usize {
        self.violations
    }

    pub fn is_css(&self) -> bool {
        self.violations == 0
    }
}

/// Output of [`assemble_quantum_tanner`]: the lifted pair and the local
/// matrices that were lifted.
#[derive(Clone, Debug)]
pub struct QuantumTannerCode {
    pub pair: CssCodePair,
    pub local_x: BinaryMatrix,
    pub local_z: BinaryMatrix,
}

fn odd_if_possible(h: &BinaryMatrix) -> BinaryMatrix {
    odd_weight_transform(h).unwrap_or_else(|_| h.clone())
}

/// Lifts the dual tensor codes `h0 (x) g1` (X checks) and `g0 (x) h1`
/// (Z checks) over `g`, where `g_i` generates `ker h_i`. Each factor is made
/// all-odd first when it has an odd row; a tensor row is odd iff both factor
/// rows are odd, and the factor row spaces (hence the tensor kernel) are
/// unchanged.
pub fn assemble_quantum_tanner(g: &RegularGraph, h0: &BinaryMatrix, h1: &BinaryMatrix) -> Result<QuantumTannerCode> {
    if h0.cols() != h1.cols() {
        return Err(Error::DimensionMismatch {
            what: "h0 and h1 column counts",
            expected: h0.cols(),
            got: h1.cols(),
        });
    }
    let d = h0.cols();
    if g.degree != d * d {
        return Err(Error::DimensionMismatch {
            what: "graph degree vs local length squared",
            expected: d * d,
            got: g.degree,
        });
    }
    let g0 = kernel_basis(h0);
    let g1 = kernel_basis(h1);
    let local_x = dual_tensor_parity_check(&odd_if_possible(h0), &odd_if_possible(&g1));
    let local_z = dual_tensor_parity_check(&odd_if_possible(&g0), &odd_if_possible(h1));
    let pair = CssCodePair::new(tanner_lift(g, &local_x)?, tanner_lift(g, &local_z)?)?;
    Ok(QuantumTannerCode {
        pair,
        local_x,
        local_z,
    })
}

/// Counter-based generator for trial `stream` under `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_matrix_from(r: usize, d: usize, rng: &mut impl RngCore) -> BinaryMatrix {
    let rows = (0..r)
        .map(|_| {
            let mut row = BitVector::zeros(d);
            let mut c = 0;
            while c < d {
                let word = rng.next_u64();
                for b in 0..(d - c).min(64) {
                    row.set(c + b, word >> b & 1 == 1);
                }
                c += 64;
            }
            row
        })
        .collect();
    BinaryMatrix::from_bit_rows(d, rows).expect("rows have width d")
}

/// Uniform i.i.d. `r x d` matrix from ChaCha8 seeded with `seed` (stream 0).
/// Each row consumes `ceil(d/64)` 64-bit words, least significant bit first.
pub fn sample_random_matrix(r: usize, d: usize, seed: u64) -> BinaryMatrix {
    sample_random_matrix_stream(r, d, seed, 0)
}

/// As [`sample_random_matrix`], on an independent stream of the same seed.
pub fn sample_random_matrix_stream(r: usize, d: usize, seed: u64, stream: u64) -> BinaryMatrix {
    random_matrix_from(r, d, &mut trial_rng(seed, stream))
}

/// Empirical frequency with its binomial 3-sigma band against a reference.
#[derive(Clone, Debug, Serialize)]
pub struct FrequencyCheck {
    pub count: usize,
    pub frequency: f64,
    pub reference: f64,
    pub sigma: f64,
    pub pass: bool,
}

impl FrequencyCheck {
    fn two_sided(count: usize, trials: usize, p: f64) -> Self {
        let frequency = count as f64 / trials.max(1) as f64;
        let sigma = (p * (1.0 - p) / trials.max(1) as f64).sqrt();
        Self {
            count,
            frequency,
            reference: p,
            sigma,
            pass: (frequency - p).abs() <= 3.0 * sigma + 1e-15,
        }
    }

    fn upper(count: usize, trials: usize, bound: f64) -> Self {
        let frequency = count as f64 / trials.max(1) as f64;
        let sigma = (bound * (1.0 - bound) / trials.max(1) as f64).sqrt();
        Self {
            count,
            frequency,
            reference: bound,
            sigma,
            pass: frequency <= bound + 3.0 * sigma + 1e-15,
        }
    }
}

/// Monte Carlo report for random `r x d` parity checks.
#[derive(Clone, Debug, Serialize)]
pub struct RandomCodeReport {
    pub r: usize,
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    /// At least one odd row, against `1 - 2^-r`.
    pub odd_row: FrequencyCheck,
    /// All-ones vector in the row space, against the bound `(2^r - 1)/2^d`.
    pub all_ones_in_span: FrequencyCheck,
    /// Trials whose kernel contains an odd-weight vector.
    pub odd_kernel_count: usize,
    /// Odd kernel vector present exactly when all-ones is outside the row
    /// space, in every trial.
    pub kernel_span_consistent: bool,
    /// Set when `r/d >= 1/2`, outside the regime the bounds are meant for.
    pub warning: Option<String>,
}

impl RandomCodeReport {
    pub fn pass(&self) -> bool {
        self.odd_row.pass && self.all_ones_in_span.pass && self.kernel_span_consistent
    }
}

/// Samples `trials` matrices (trial `i` on stream `i`) and tallies odd rows,
/// all-ones row-space membership and odd kernel vectors.
pub fn verify_random_parity_checks(r: usize, d: usize, trials: usize, seed: u64) -> RandomCodeReport {
    let tallies: Vec<(bool, bool, bool)> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let a = sample_random_matrix_stream(r, d, seed, i);
            let odd_row = (0..r).any(|j| a.row_weight(j) % 2 == 1);
            let in_span = in_row_span(&a, &BitVector::ones(d)).expect("width d");
            let odd_kernel = kernel_basis(&a).row_vectors().iter().any(|v| v.weight() % 2 == 1);
            (odd_row, in_span, odd_kernel)
        })
        .collect();
    let odd_rows = tallies.iter().filter(|t| t.0).count();
    let in_span = tallies.iter().filter(|t| t.1).count();
    let odd_kernel = tallies.iter().filter(|t| t.2).count();
    let consistent = tallies.iter().all(|t| t.1 != t.2);
    let odd_p = 1.0 - 0.5f64.powi(r as i32);
    let span_bound = (2f64.powi(r as i32) - 1.0) / 2f64.powi(d as i32);
    RandomCodeReport {
        r,
        d,
        trials,
        seed,
        odd_row: FrequencyCheck::two_sided(odd_rows, trials, odd_p),
        all_ones_in_span: FrequencyCheck::upper(in_span, trials, span_bound.min(1.0)),
        odd_kernel_count: odd_kernel,
        kernel_span_consistent: consistent,
        warning: (2 * r >= d).then(|| format!("r/d = {r}/{d} is not below 1/2")),
    }
}
