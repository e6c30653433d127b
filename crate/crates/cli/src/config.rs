//! Command-line surface and the resolved run configuration.

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use nlcs_core::Cutoffs;
use serde::Serialize;
use serde_json::Value;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(
    name = "nlcs",
    version,
    about = "Seeded verification runs for rotated CSS Hamiltonians, stabilizer-state energy floors and odd-weight code constructions"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Report format; CSV is a flat projection of the JSON report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest qubit count for dense vectors and matrices.
    #[arg(long, global = true, default_value_t = Cutoffs::default().dense_qubits)]
    pub dense_cutoff: usize,
    /// Largest qubit count for exhaustive stabilizer-state enumeration.
    #[arg(long, global = true, default_value_t = Cutoffs::default().enum_qubits)]
    pub enum_cutoff: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Run the full check suite; exit 0 iff every check passes.
    VerifyAll {
        /// Shift added to the local-bound reference values, to exercise
        /// the failure path of the harness.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        bound_offset: f64,
    },
    /// Exhaustive minima of the rotated all-X and all-Z terms for k = 1..=k_max.
    LocalBound {
        #[arg(long, default_value_t = 4)]
        k_max: usize,
        /// Rotation angle: a number or `pi/N`, `-pi/N`, `pi`.
        #[arg(long, value_parser = parse_angle, default_value = "pi/8", allow_hyphen_values = true)]
        theta: f64,
    },
    /// Sample states with t rotations and compare with (1 - t/n) sin^2(pi/8).
    ConjectureScan {
        #[arg(long)]
        n: usize,
        /// Rotation count; every t in 0..=n when omitted.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// uniform, grid or mixed.
        #[arg(long, default_value = "mixed")]
        theta_policy: String,
    },
    /// Lift a local parity-check matrix over a regular graph.
    Tanner {
        /// Graph file: `<vertices> <degree>`, then the edge ids at each vertex.
        #[arg(long, conflicts_with = "complete", required_unless_present = "complete")]
        graph: Option<PathBuf>,
        /// Use the complete graph on this many vertices.
        #[arg(long)]
        complete: Option<usize>,
        /// Local parity-check matrix file (`<rows> <cols>`, then 0/1 rows).
        #[arg(long)]
        local: PathBuf,
        /// Second local matrix: assemble the quantum code from the dual
        /// tensor codes of `--local` and this matrix instead.
        #[arg(long)]
        h1: Option<PathBuf>,
        /// Write the global matrix (or X checks) in matrix text format.
        #[arg(long)]
        matrix_out: Option<PathBuf>,
    },
    /// Make every row of a parity-check matrix odd without changing its kernel.
    OddTransform {
        matrix: PathBuf,
        #[arg(long)]
        matrix_out: Option<PathBuf>,
    },
    /// Compare the spectra of H and C^dagger H C.
    Spectrum {
        hamiltonian: PathBuf,
        /// Clifford circuit file (`n`, then `H q`, `S q`, `CNOT c t` lines).
        #[arg(long, conflicts_with = "rotation_layer", required_unless_present = "rotation_layer")]
        circuit: Option<PathBuf>,
        /// Conjugate by D(theta) on every qubit instead.
        #[arg(long)]
        rotation_layer: bool,
        #[arg(long, value_parser = parse_angle, default_value = "pi/8", allow_hyphen_values = true)]
        theta: f64,
    },
    /// Per-term and total energies of a state.
    #[command(group(ArgGroup::new("source").required(true)))]
    Energy {
        hamiltonian: PathBuf,
        /// Stabilizer generators, one per line.
        #[arg(long, group = "source")]
        state: Option<PathBuf>,
        /// Clifford + rotation circuit applied to |0...0>.
        #[arg(long, group = "source")]
        circuit: Option<PathBuf>,
        /// Exhaustive minimum over all stabilizer states.
        #[arg(long, group = "source")]
        minimize: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyAll { .. } => "verify-all",
            Command::LocalBound { .. } => "local-bound",
            Command::ConjectureScan { .. } => "conjecture-scan",
            Command::Tanner { .. } => "tanner",
            Command::OddTransform { .. } => "odd-transform",
            Command::Spectrum { .. } => "spectrum",
            Command::Energy { .. } => "energy",
        }
    }
}

/// Angle syntax: a float, or `[-]pi`, `[-]pi/N`, `[-]M*pi/N`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Ok(x) = t.parse::<f64>() {
        return Ok(x);
    }
    let (sign, body) = t.strip_prefix('-').map_or((1.0, t), |b| (-1.0, b));
    let (num, den) = body.split_once('/').unwrap_or((body, "1"));
    let mult = match num.strip_suffix("pi") {
        Some("") => 1.0,
        Some(m) => m
            .trim_end_matches('*')
            .parse::<f64>()
            .map_err(|_| format!("bad angle `{s}`"))?,
        None => return Err(format!("bad angle `{s}` (expected a number or a multiple of pi)")),
    };
    let den = den.parse::<f64>().map_err(|_| format!("bad angle `{s}`"))?;
    Ok(sign * mult * PI / den)
}

/// Everything that determines a report. Reports embed this, so identical
/// configurations give byte-identical JSON.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub seed: u64,
    pub cutoffs: Cutoffs,
    pub params: Value,
    #[serde(skip)]
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(global: &GlobalArgs, command: &Command, params: Value) -> Self {
        let defaults = Cutoffs::default();
        Self {
            command: command.name().into(),
            seed: global.seed,
            cutoffs: Cutoffs {
                dense_qubits: global.dense_cutoff,
                enum_qubits: global.enum_cutoff,
                search_qubits: defaults.search_qubits.min(global.enum_cutoff),
            },
            params,
            format: global.format,
            out: global.out.clone(),
        }
    }
}
