//! The verify-all check suite. Check groups run in parallel; records are
//! assembled in the fixed group order below, so the report does not
//! depend on scheduling.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_8};

use anyhow::Result;
use nlcs_core::codes::{
    assemble_quantum_tanner, odd_row_fraction, odd_weight_transform, sample_random_matrix_stream, tanner_lift,
    verify_random_parity_checks, RegularGraph,
};
use nlcs_core::dense::{self, CMatrix, C64};
use nlcs_core::f2linalg::{in_row_span, kernel_basis, row_combination, BinaryMatrix, BitVector};
use nlcs_core::hamiltonian::{
    energy_stabilizer, local_bound_rows, nlcs_certificate, rotated_local_term, spectrum_conjugation_check,
    Conjugator, CssHamiltonian, StabilizerCatalog,
};
use nlcs_core::pauli::{CliffordGate, Letter, PauliOperator};
use nlcs_core::report::CheckRecord;
use nlcs_core::rotstates::{
    energy_zero_rotated, normal_form, reduced_state_one_rotation, rotation_bound, unrotation_witness,
    verify_one_rotation_bound, CircuitGate, RotationCircuit,
};
use nlcs_core::sampling::{
    random_clifford_circuit, random_clifford_gate, random_css_term, random_hermitian_pauli, random_stabilizer_state,
    trial_rng,
};
use nlcs_core::stabilizer::{enumerate_pure_states, pure_state_count, StabilizerGroup};
use nlcs_core::{sin2_pi8, Cutoffs};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

/// Exact closed forms evaluated in double precision.
pub const EXACT_TOL: f64 = 1e-12;
/// Rotated projector identities, Frobenius norm.
pub const IDENTITY_TOL: f64 = 1e-13;
/// Reduced states and normal-form fidelities.
pub const STATE_TOL: f64 = 1e-10;
/// Rotation-count bounds and saturation.
pub const BOUND_TOL: f64 = 1e-9;
/// Eigenvalue agreement.
pub const SPECTRUM_TOL: f64 = 1e-9;

/// Inputs shared by every check group.
#[derive(Clone, Copy, Debug)]
pub struct SuiteContext {
    pub seed: u64,
    pub cutoffs: Cutoffs,
    /// Added to the local-bound reference values; nonzero only to exercise
    /// the failure path.
    pub bound_offset: f64,
}

type Group = fn(&SuiteContext) -> Result<Vec<CheckRecord>>;

const GROUPS: [(&str, Group); 13] = [
    ("f2_linear_algebra", f2_linear_algebra),
    ("pauli_algebra", pauli_algebra),
    ("stabilizer_state_count", stabilizer_state_count),
    ("reduced_states", reduced_states),
    ("rotated_projector_identity", rotated_projector_identity),
    ("single_qubit_energy", single_qubit_energy),
    ("local_bound", local_bound),
    ("odd_term_energy_floor", odd_term_energy_floor),
    ("stabilizer_energy_certificate", stabilizer_energy_certificate),
    ("overlap_geometry", overlap_geometry),
    ("odd_weight_codes", odd_weight_codes),
    ("rotated_states", rotated_states),
    ("spectrum_invariance", spectrum_invariance),
];

/// Runs every group. A group that errors contributes one failing record
/// named after the group, carrying the error message.
pub fn run_suite(ctx: &SuiteContext) -> Vec<CheckRecord> {
    GROUPS
        .par_iter()
        .map(|(name, group)| {
            group(ctx).unwrap_or_else(|e| {
                vec![CheckRecord::new(*name, json!({}), format!("error: {e:#}"), Value::Null, 0.0, false)]
            })
        })
        .collect::<Vec<_>>()
        .concat()
}

fn within(check: impl Into<String>, params: Value, observed: f64, expected: f64, tol: f64) -> CheckRecord {
    let pass = (observed - expected).abs() <= tol;
    CheckRecord::new(check, params, observed, expected, tol, pass)
}

fn at_least(check: impl Into<String>, params: Value, observed: f64, bound: f64, tol: f64) -> CheckRecord {
    let pass = observed >= bound - tol;
    CheckRecord::new(check, params, observed, bound, tol, pass)
}

fn at_most(check: impl Into<String>, params: Value, observed: f64, bound: f64, tol: f64) -> CheckRecord {
    let pass = observed <= bound + tol;
    CheckRecord::new(check, params, observed, bound, tol, pass)
}

fn equal<T: Serialize + PartialEq>(check: impl Into<String>, params: Value, observed: T, expected: T) -> CheckRecord {
    let pass = observed == expected;
    CheckRecord::new(check, params, observed, expected, 0.0, pass)
}

fn f2_linear_algebra(ctx: &SuiteContext) -> Result<Vec<CheckRecord>> {
    let trials = 300u64;
    let (mut nullity_bad, mut span_bad) = (0usize, 0usize);
    for i in 0..trials {
        let mut rng = trial_rng(ctx.seed ^ 0xF2, i);
        let (r, d) = (rng.random_range(1..=8), rng.random_range(1..=12));
        let h = sample_random_matrix_stream(r, d, ctx.seed ^ 0xF2F2, i);
        let k = kernel_basis(&h);
        let kernel_ok = k.rows() + h.rank() == d
            && k.rank() == k.rows()
            && k.row_vectors().iter().all(|v| h.mul_vec(v).is_ok_and(|s| s.is_zero()));
        nullity_bad += usize::from(!kernel_ok);
        // a random combination of rows lies in the span and its returned
        // coefficients reproduce it
        let coeffs = BitVector::from_bits((0..r).map(|_| rng.random::<bool>()));
        let mut v = BitVector::zeros(d);
        for j in coeffs.iter_ones() {
            v.xor_assign(h.row(j));
        }
        let reproduced = row_combination(&h, &v)?.is_some_and(|c| {
            let mut w = BitVector::zeros(d);
            c.iter_ones().for_each(|j| w.xor_assign(h.row(j)));
            w == v
        });
        span_bad += usize::from(!(in_row_span(&h, &v)? && reproduced));
    }
    let params = json!({"matrices": trials, "max_rows": 8, "max_cols": 12});
    Ok(vec![
        equal("f2_rank_nullity", params.clone(), nullity_bad, 0),
        equal("f2_row_span_membership", params, span_bad, 0),
    ])
}

fn pauli_algebra(_: &SuiteContext) -> Result<Vec<CheckRecord>> {
    let p = |s: &str| s.parse::<PauliOperator>();
    let products = [("X", "Z", "-iY"), ("Z", "X", "+iY"), ("X", "Y", "+iZ"), ("Y", "Y", "I"), ("XZ", "ZX", "YY")];
    let mut wrong = 0usize;
    for (a, b, want) in products {
        wrong += usize::from(p(a)?.multiply(&p(b)?)? != p(want)?);
    }
    let conj = |gate: CliffordGate, input: &str| -> Result<PauliOperator> {
        let mut q = p(input)?;
        q.conjugate_gate(gate);
        Ok(q)
    };
    let rules = [
        (CliffordGate::H(0), "X", "Z"),
        (CliffordGate::H(0), "Z", "X"),
        (CliffordGate::H(0), "Y", "-Y"),
        (CliffordGate::S(0), "X", "Y"),
        (CliffordGate::S(0), "Z", "Z"),
        (CliffordGate::Cnot { control: 0, target: 1 }, "XI", "XX"),
        (CliffordGate::Cnot { control: 0, target: 1 }, "IZ", "ZZ"),
    ];
    let mut conj_wrong = 0usize;
    for (gate, input, want) in rules {
        conj_wrong += usize::from(conj(gate, input)? != p(want)?);
    }
    Ok(vec![
        equal("pauli_product_phases", json!({"products": products.len()}), wrong, 0),
        equal("clifford_conjugation_rules", json!({"rules": rules.len()}), conj_wrong, 0),
    ])
}

fn stabilizer_state_count(ctx: &SuiteContext) -> Result<Vec<CheckRecord>> {
    let expected = [6u64, 60, 1080, 36720];
    (1..=4)
        .map(|k| {
            let counted = enumerate_pure_states(k, &ctx.cutoffs)?.count() as u64;
            let ok = counted == expected[k - 1] && pure_state_count(k) == counted;
            Ok(CheckRecord::new(
                format!("stabilizer_state_count k={k}"),
                json!({"k": k}),
                counted,
                expected[k - 1],
                0.0,
                ok,
            ))
        })
        .collect()
}

fn reduced_states(ctx: &SuiteContext) -> Result<Vec<CheckRecord>> {
    let c = &ctx.cutoffs;
    let subsets: [&[usize]; 6] = [&[0], &[1], &[2], &[0, 1], &[0, 2], &[1, 2]];
    let (mut mixture, mut average) = (0.0f64, 0.0f64);
    for g in enumerate_pure_states(3, c)? {
        let v = g.to_state_vector(c)?;
        for subset in subsets {
            let want = dense::partial_trace(&v, 3, subset);
            mixture = mixture.max((g.reduced_state(subset)?.to_density_matrix(c)? - &want).norm());
            average = average.max((g.reduced_density_from_subgroup(subset, c)? - want).norm());
        }
    }
    // pure-state projector equals the average of the group elements
    let mut projector = 0.0f64;
    for g in enumerate_pure_states(2, c)? {
        let mut avg = CMatrix::zeros(4, 4);
        for e in g.elements() {
            avg += dense::pauli_matrix(&e);
        }
        avg /= C64::from(4.0);
        projector = projector.max((avg - dense::outer(&g.to_state_vector(c)?)).norm());
    }
    let params = json!({"qubits": 3, "states": 1080, "subsets": 6});
    Ok(vec![
        at_most("reduced_state_stabilizer_mixture", params.clone(), mixture, 0.0, STATE_TOL),
        at_most("reduced_state_subgroup_average", params, average, 0.0, STATE_TOL),
        at_most("group_average_projector", json!({"qubits": 2, "states": 60}), projector, 0.0, STATE_TOL),
    ])
}

fn rotated_projector_identity(ctx: &SuiteContext) -> Result<Vec<CheckRecord>> {
    let h = dense::hadamard();
    let x = dense::letter_matrix(Letter::X);
    let minus_xhx = &x * &h * &x * C64::from(-1.0);
    (1..=6)
        .map(|k| {
            let ones = BitVector::ones(k);
            let id = CMatrix::identity(1 << k, 1 << k);
            let px = rotated_local_term(&PauliOperator::x_type(&ones), FRAC_PI_8, &ctx.cutoffs)?;
            let pz = rotated_local_term(&PauliOperator::z_type(&ones), FRAC_PI_8, &ctx.cutoffs)?;
            let want_x = (&id - dense::kron_all(&vec![h.clone(); k])) * C64::from(0.5);
            let want_z = (&id - dense::kron_all(&vec![minus_xhx.clone(); k])) * C64::from(0.5);
            let dist = (px - want_x).norm().max((pz - want_z).norm());
            Ok(at_most(format!("rotated_projector_identity k={k}"), json!({"k": k}), dist, 0.0, IDENTITY_TOL))
        })
        .collect()
}

fn single_qubit_energy(ctx: &SuiteContext) -> Result<Vec<CheckRecord>> {
    let h = CssHamiltonian::zero_hamiltonian(1, FRAC_PI_8);
    let (s2, c2) = (sin2_pi8(), 1.0 - sin2_pi8());
    [("Z", s2), ("-Z", c2), ("X", c2), ("-X", s2), ("Y", 0.5), ("-Y", 0.5)]
        .into_iter()
        .map(|(label, want)| {
            let g = StabilizerGroup::from_strs(&[label])?;
            let e = energy_stabilizer(&g, &h, &ctx.cutoffs)?;
            Ok(within(format!("single_qubit_energy {label}"), json!({"state": label}), e, want, EXACT_TOL))
        })
        .collect()
}

fn local_bound(ctx: &SuiteContext) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for k in 1..=4 {
        let rows = local_bound_rows(k, FRAC_PI_8, &ctx.cutoffs)?;
        let want = if k % 2 == 1 { sin2_pi8() } else { 0.0 } + ctx.bound_offset;
        for row in &rows {
            out.push(within(
                format!("local_bound k={k} {}", row.pauli_type),
                json!({"k": k, "term": row.pauli_type, "states": row.states, "argmin": row.argmin}),
                row.min_energy,
                want,
                EXACT_TOL,
            ));
        }
        if k % 2 == 1 {
            out.push(within(
                format!("hadamard_overlap k={k}"),
                json!({"k": k}),
                rows[0].max_hadamard_overlap,
                FRAC_1_SQRT_2,
                EXACT_TOL,
            ));
        }
    }
    Ok(out)
}

fn random_odd_term(n: usize, rng: &mut impl Rng) -> PauliOperator {
    loop {
        let t = random_css_term(n, rng);
        if t.weight() % 2 == 1 {
            return t;
        }
    }
}

fn odd_term_energy_floor(ctx: &SuiteContext) -> Result<Vec<CheckRecord>> {
    (2..=6)
        .map(|n| {
            let samples = 200u64;
            let mut min = f64::INFINITY;
            for i in 0..samples {
                let mut rng = trial_rng(ctx.seed ^ 0x35, (n as u64) << 32 | i);
                let g = random_stabilizer_state(n, &mut rng);
                let h = CssHamiltonian::new(n, vec![random_odd_term(n, &mut rng)], FRAC_PI_8)?;
                min = min.min(energy_stabilizer(&g, &h, &ctx.cutoffs)?);
            }
            Ok(at_least(
                format!("odd_term_energy_floor n={n}"),
                json!({"n": n, "samples": samples}),
                min,
                sin2_pi8(),
                EXACT_TOL,
            ))
        })
        .collect()
}

fn stabilizer_energy_certificate(ctx: &SuiteContext) -> Result<Vec<CheckRecord>> {
    let ham = |terms: &[&str]| -> Result<CssHamiltonian> {
        let terms = terms.iter().map(|t| t.parse()).collect::<nlcs_core::Result<Vec<_>>>()?;
        Ok(CssHamiltonian::new(3, terms, FRAC_PI_8)?)
    };
    let mut out = Vec::new();
    for (label, terms, want) in [
        ("all_odd", vec!["XII", "ZZZ"], sin2_pi8()),
        ("all_even", vec!["XXI", "IZZ"], 0.0),
        ("half_odd", vec!["XXX", "ZZI"], sin2_pi8() / 2.0),
    ] {
        let cert = nlcs_certificate(&ham(&terms)?)?;
        out.push(within(
            format!("stabilizer_energy_certificate {label}"),
            json!({"terms": terms, "alpha": cert.alpha.to_string()}),
            cert.epsilon,
            want,
            EXACT_TOL,
        ));
    }
    let n = 4;
    let catalog = StabilizerCatalog::build(n, &ctx.cutoffs)?;
    let hamiltonians = 20u64;
    let mut worst_margin = f64::INFINITY;
    for i in 0..hamiltonians {
        let mut rng = trial_rng(ctx.seed ^ 0x31, i);
        let m = rng.random_range(1..=6);
        let mut terms: Vec<PauliOperator> = (0..m - 1).map(|_| random_css_term(n, &mut rng)).collect();
        terms.push(random_odd_term(n, &mut rng));
        let h = CssHamiltonian::new(n, terms, FRAC_PI_8)?;
        let eps = nlcs_certificate(&h)?.epsilon;
        worst_margin = worst_margin.min(catalog.min_energy(&h, &ctx.cutoffs)?.value - eps);
    }
    out.push(at_least(
        format!("stabilizer_energy_floor n={n}"),
        json!({"n": n, "hamiltonians": hamiltonians, "states": catalog.len(), "observed": "min over H of (exhaustive minimum - certificate)"}),
        worst_margin,
        0.0,
        EXACT_TOL,
    ));
    Ok(out)
}

fn overlap_geometry(ctx: &SuiteContext) -> Result<Vec<CheckRecord>> {
    let states: Vec<StabilizerGroup> = enumerate_pure_states(2, &ctx.cutoffs)?.collect();
    let mut largest_non_unit = 0.0f64;
    let mut off_grid = 0usize;
    for a in &states {
        for b in &states {
            let ov = a.overlap_magnitude(b)?;
            if ov != 1.0 {
                largest_non_unit = largest_non_unit.max(ov);
            }
            let on_grid = ov == 0.0 || (0..=4).any(|m| (ov - 0.5f64.powf(m as f64 / 2.0)).abs() <= EXACT_TOL);
            off_grid += usize::from(!on_grid);
        }
    }
    Ok(vec![
        at_most("overlap_gap k=2", json!({"pairs": 3600}), largest_non_unit, FRAC_1_SQRT_2, EXACT_TOL),
        equal("overlap_values_on_grid k=2", json!({"pairs": 3600}), off_grid, 0),
    ])
}

fn same_row_space(a: &BinaryMatrix, b: &BinaryMatrix) -> Result<bool> {
    if a.rank() != b.rank() {
        return Ok(false);
    }
    for v in b.row_vectors() {
        if !in_row_span(a, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn odd_weight_codes(ctx: &SuiteContext) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let (mut transformed, mut bad) = (0usize, 0usize);
    for i in 0..300u64 {
        let d = 1 + (i % 12) as usize;
        let r = 1 + (i / 12) as usize % d;
        let h = sample_random_matrix_stream(r, d, ctx.seed ^ 0x41, i);
        if let Ok(t) = odd_weight_transform(&h) {
            transformed += 1;
            let all_odd = (0..t.rows()).all(|j| t.row_weight(j) % 2 == 1);
            bad += usize::from(!(all_odd && same_row_space(&kernel_basis(&h), &kernel_basis(&t))?));
        }
    }
    out.push(equal("odd_transform_kernel_preserved", json!({"matrices": 300, "transformed": transformed}), bad, 0));

    let mut lift_bad = 0usize;
    for i in 0..30u64 {
        let d = 3 + (i % 4) as usize;
        let g = RegularGraph::random(2 * d + 2, d, ctx.seed ^ (0x42 + i))?;
        let h = sample_random_matrix_stream(1 + (i % 3) as usize, d, ctx.seed ^ 0x43, i);
        lift_bad += usize::from(odd_row_fraction(&tanner_lift(&g, &h)?)? != odd_row_fraction(&h)?);
    }
    out.push(equal("tanner_lift_odd_fraction", json!({"graphs": 30}), lift_bad, 0));

    for (r, d) in [(1, 6), (2, 8), (3, 10)] {
        let rep = verify_random_parity_checks(r, d, 10_000, ctx.seed ^ 0x44);
        out.push(CheckRecord::new(
            format!("random_code_odd_rows r={r} d={d}"),
            json!({"r": r, "d": d, "trials": rep.trials}),
            json!({"odd_row": rep.odd_row.frequency, "all_ones_in_span": rep.all_ones_in_span.frequency,
                   "kernel_span_consistent": rep.kernel_span_consistent}),
            json!({"odd_row": rep.odd_row.reference, "all_ones_in_span_at_most": rep.all_ones_in_span.reference}),
            3.0,
            rep.pass(),
        ));
    }

    // quantum Tanner assembly with local codes whose four factors all admit
    // odd generators, over the 9-regular complete graph on 10 vertices; a
    // plain graph lacks the square-complex structure, so CSS violations are
    // expected and only their recorded count is checked
    let h0 = BinaryMatrix::from_rows(&[[1u8, 0, 0]]);
    let h1 = BinaryMatrix::from_rows(&[[0u8, 0, 1]]);
    let code = assemble_quantum_tanner(&RegularGraph::complete(10)?, &h0, &h1)?;
    let pair = &code.pair;
    let params = json!({"graph": "K10", "h0": "100", "h1": "001", "qubits": pair.num_qubits()});
    out.push(equal(
        "quantum_tanner violation_count",
        params.clone(),
        pair.violations(),
        pair.h_x().mul(&pair.h_z().transpose())?.count_ones(),
    ));
    let odd = |m: &BinaryMatrix| (0..m.rows()).all(|j| m.row_weight(j) % 2 == 1);
    out.push(equal("quantum_tanner all_checks_odd", params.clone(), odd(pair.h_x()) && odd(pair.h_z()), true));
    let ham = CssHamiltonian::from_css_pair(pair, FRAC_PI_8, true)?;
    let eps = nlcs_certificate(&ham)?.epsilon;
    out.push(within("quantum_tanner certificate", params.clone(), eps, sin2_pi8(), EXACT_TOL));
    let zero = energy_stabilizer(&StabilizerGroup::zero_state(ham.n()), &ham, &ctx.cutoffs)?;
    out.push(at_least("quantum_tanner zero_state_energy", params, zero, eps, EXACT_TOL));
    Ok(out)
}

fn rotated_states(ctx: &SuiteContext) -> Result<Vec<CheckRecord>> {
    let c = &ctx.cutoffs;
    let mut out = Vec::new();
    let circuits = 200u64;
    let mut worst_fid = 1.0f64;
    for i in 0..circuits {
        let mut rng = trial_rng(ctx.seed ^ 0xB6, i);
        let n = rng.random_range(1..=6);
        let gates = (0..rng.random_range(0..=20))
            .map(|_| {
                if rng.random_bool(0.25) {
                    CircuitGate::Rotation {
                        theta: rng.random_range(-3.2..3.2),
                        pauli: random_hermitian_pauli(n, &mut rng),
                    }
                } else {
                    CircuitGate::Clifford(random_clifford_gate(n, &mut rng))
                }
            })
            .collect();
        let circuit = RotationCircuit::new(n, gates)?;
        let nf = normal_form(&circuit)?.to_state_vector(c)?;
        worst_fid = worst_fid.min(dense::inner(&circuit.simulate(c)?, &nf).norm_sqr());
    }
    out.push(at_least("normal_form_fidelity", json!({"circuits": circuits, "max_qubits": 6, "max_gates": 20}), worst_fid, 1.0, STATE_TOL));

    let mut paulis = Vec::new();
    for a in Letter::ALL {
        for b in Letter::ALL {
            paulis.push(PauliOperator::from_letters(&[a, b], 0));
            paulis.push(PauliOperator::from_letters(&[a, b], 2));
        }
    }
    let mut worst = 0.0f64;
    for g in enumerate_pure_states(2, c)? {
        let v = g.to_state_vector(c)?;
        for p in &paulis {
            for j in -4..4 {
                let theta = j as f64 * FRAC_PI_8;
                let rotated = dense::apply_rotation(theta, p, &v);
                for q in 0..2 {
                    let f = reduced_state_one_rotation(&g, theta, p, &[q], c)?;
                    worst = worst.max((f - dense::partial_trace(&rotated, 2, &[q])).norm());
                }
            }
        }
    }
    out.push(at_most(
        "single_rotation_reduced_state",
        json!({"base_states": 60, "paulis": paulis.len(), "angles": 8, "marginals": 2}),
        worst,
        0.0,
        STATE_TOL,
    ));

    for n in 2..=6 {
        let rep = verify_one_rotation_bound(n, 1000, ctx.seed ^ 0xB8 ^ n as u64, c)?;
        out.push(CheckRecord::new(
            format!("one_rotation_bound n={n}"),
            json!({"n": n, "trials": rep.trials}),
            json!({"min_energy": rep.min_energy, "violations": rep.violations,
                   "obstruction_violations": rep.obstruction_violations, "max_dense_discrepancy": rep.max_dense_discrepancy}),
            rep.bound,
            rep.tolerance,
            rep.pass(),
        ));
    }
    let n = 4;
    let e = energy_zero_rotated(&unrotation_witness(n, 1)?, c)?;
    out.push(within("one_rotation_saturation n=4", json!({"n": n, "state": "|0000> with e^{i pi/8 Y_0}"}), e, rotation_bound(n, 1), BOUND_TOL));
    Ok(out)
}

fn spectrum_invariance(ctx: &SuiteContext) -> Result<Vec<CheckRecord>> {
    let pairs = 10u64;
    let mut worst = 0.0f64;
    for i in 0..pairs {
        let mut rng = trial_rng(ctx.seed ^ 0x22, i);
        let n = rng.random_range(2..=6);
        let terms = (0..rng.random_range(1..=6)).map(|_| random_css_term(n, &mut rng)).collect();
        let h = CssHamiltonian::new(n, terms, FRAC_PI_8)?;
        let len = rng.random_range(1..=20);
        let conj = Conjugator::Clifford(random_clifford_circuit(n, len, &mut rng));
        worst = worst.max(spectrum_conjugation_check(&h, &conj, &ctx.cutoffs)?.max_abs_difference);
    }
    let n = 4;
    let h0 = CssHamiltonian::zero_hamiltonian(n, FRAC_PI_8);
    let layer = spectrum_conjugation_check(&h0, &Conjugator::rotation_layer(n, FRAC_PI_8), &ctx.cutoffs)?;
    Ok(vec![
        at_most("spectrum_invariance clifford", json!({"pairs": pairs, "max_qubits": 6}), worst, 0.0, SPECTRUM_TOL),
        at_most("spectrum_invariance rotation_layer", json!({"n": n}), layer.max_abs_difference, 0.0, SPECTRUM_TOL),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_groups_pass() {
        let ctx = SuiteContext {
            seed: 3,
            cutoffs: Cutoffs::default(),
            bound_offset: 0.0,
        };
        for (name, group) in [GROUPS[1], GROUPS[5]] {
            let records = group(&ctx).unwrap();
            assert!(!records.is_empty() && records.iter().all(|r| r.pass), "{name}: {records:?}");
        }
    }
}
