//! Property tests for the algebraic invariants of every module.

mod common;

use std::f64::consts::FRAC_PI_8;

use common::{brute_kernel, brute_span};
use nlcs_core::codes::{odd_row_fraction, odd_weight_transform, tanner_lift, RegularGraph};
use nlcs_core::dense::{self, CMatrix, C64};
use nlcs_core::f2linalg::{in_row_span, kernel_basis, rref, BinaryMatrix, BitVector};
use nlcs_core::hamiltonian::{energy_stabilizer, rotated_local_term, CssHamiltonian};
use nlcs_core::pauli::{CliffordCircuit, PauliOperator};
use nlcs_core::sampling::{random_clifford_circuit, random_hermitian_pauli, random_stabilizer_state, trial_rng};
use nlcs_core::stabilizer::StabilizerGroup;
use nlcs_core::{sin2_pi8, Cutoffs};
use proptest::prelude::*;

fn cut() -> Cutoffs {
    Cutoffs::default()
}

fn matrix_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BinaryMatrix> {
    (0..=max_rows, 0..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(0u8..2, c), r).prop_map(move |rows| {
            let bits = rows.into_iter().map(|row| BitVector::from_u8s(&row)).collect();
            BinaryMatrix::from_bit_rows(c, bits).unwrap()
        })
    })
}

fn pauli_strategy(n: usize) -> impl Strategy<Value = PauliOperator> {
    (proptest::collection::vec(0usize..4, n), 0u8..4).prop_map(|(letters, ph)| {
        let letters: Vec<_> = letters.into_iter().map(|l| nlcs_core::pauli::Letter::ALL[l]).collect();
        PauliOperator::from_letters(&letters, ph)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    // ------------------------------------------------------------ f2linalg

    #[test]
    fn rank_nullity(m in matrix_strategy(16, 16)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(m.rank() + k.rows(), m.cols());
        prop_assert_eq!(k.rank(), k.rows());
        for v in k.row_vectors() {
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
    }

    #[test]
    fn rref_is_row_equivalent(m in matrix_strategy(10, 10)) {
        let r = rref(&m);
        prop_assert!(r.pivot_cols.windows(2).all(|w| w[0] < w[1]));
        prop_assert!((r.rank..r.reduced.rows()).all(|i| r.reduced.row(i).is_zero()));
        prop_assert_eq!(brute_span(&r.reduced), brute_span(&m));
    }

    #[test]
    fn row_span_matches_enumeration(m in matrix_strategy(12, 6), v in proptest::collection::vec(0u8..2, 6)) {
        let v = BitVector::from_u8s(&v[..m.cols()]);
        prop_assert_eq!(in_row_span(&m, &v).unwrap(), brute_span(&m).contains(&v));
    }

    #[test]
    fn matrix_text_round_trip(m in matrix_strategy(8, 8)) {
        prop_assert_eq!(m.to_string().parse::<BinaryMatrix>().unwrap(), m);
    }

    // ------------------------------------------------------------ pauli

    #[test]
    fn multiplication_is_associative(a in pauli_strategy(4), b in pauli_strategy(4), c in pauli_strategy(4)) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let dense_abc = dense::pauli_matrix(&a) * dense::pauli_matrix(&b) * dense::pauli_matrix(&c);
        prop_assert!((dense::pauli_matrix(&left) - dense_abc).norm() < 1e-10);
    }

    #[test]
    fn conjugation_preserves_commutation(seed in any::<u64>(), a in pauli_strategy(4), b in pauli_strategy(4)) {
        let c = random_clifford_circuit(4, 15, &mut trial_rng(seed, 0));
        let (ca, cb) = (c.conjugate(&a).unwrap(), c.conjugate(&b).unwrap());
        prop_assert_eq!(a.commutes(&b).unwrap(), ca.commutes(&cb).unwrap());
        prop_assert_eq!(c.conjugate_inverse(&ca).unwrap(), a);
    }

    #[test]
    fn pauli_text_round_trip(a in pauli_strategy(5)) {
        prop_assert_eq!(a.to_string().parse::<PauliOperator>().unwrap(), a);
    }

    #[test]
    fn circuit_text_round_trip(seed in any::<u64>()) {
        let c = random_clifford_circuit(4, 10, &mut trial_rng(seed, 0));
        prop_assert_eq!(c.to_string().parse::<CliffordCircuit>().unwrap(), c);
    }

    // ------------------------------------------------------------ stabilizer

    #[test]
    fn canonical_form_is_generator_independent(seed in any::<u64>(), n in 1usize..6) {
        let g = random_stabilizer_state(n, &mut trial_rng(seed, 0));
        // multiply generators together and permute: same group, same form
        let mut gens = g.generators().to_vec();
        for i in 1..gens.len() {
            gens[i] = gens[i].multiply(&gens[i - 1]).unwrap();
        }
        gens.reverse();
        prop_assert_eq!(StabilizerGroup::new(n, gens).unwrap(), g);
    }

    #[test]
    fn local_subgroup_is_group_and_coset(seed in any::<u64>(), n in 2usize..6) {
        let mut rng = trial_rng(seed, 0);
        let g = random_stabilizer_state(n, &mut rng);
        let q = random_hermitian_pauli(n, &mut rng);
        let subset: Vec<usize> = (0..n).filter(|i| i % 2 == 0).collect();
        let ga = g.subgroup_on(&subset, &PauliOperator::identity(n)).unwrap();
        let key = |p: &PauliOperator| (p.symplectic(), p.phase_exp());
        let ga_keys: std::collections::HashSet<_> = ga.iter().map(key).collect();
        for a in &ga {
            for b in &ga {
                prop_assert!(ga_keys.contains(&key(&a.multiply(b).unwrap())));
            }
        }
        let gap = g.subgroup_on(&subset, &q).unwrap();
        if let Some(first) = gap.first() {
            prop_assert_eq!(gap.len(), ga.len());
            // the coset g' G_A up to the phase carried by g'
            for b in &ga {
                let prod = first.multiply(b).unwrap();
                prop_assert!(gap.iter().any(|e| e.symplectic() == prod.symplectic()));
            }
        }
    }

    #[test]
    fn overlap_gap(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = trial_rng(seed, 0);
        let a = random_stabilizer_state(n, &mut rng);
        let b = random_stabilizer_state(n, &mut rng);
        let ov = a.overlap_magnitude(&b).unwrap();
        let dense_ov = dense::inner(&a.to_state_vector(&cut()).unwrap(), &b.to_state_vector(&cut()).unwrap()).norm();
        prop_assert!((ov - dense_ov).abs() < 1e-12);
        prop_assert!(ov == 1.0 || ov <= std::f64::consts::FRAC_1_SQRT_2 + 1e-12);
    }

    // ------------------------------------------------------------ codes

    #[test]
    fn odd_transform_preserves_kernel(m in matrix_strategy(8, 14)) {
        match odd_weight_transform(&m) {
            Ok(t) => {
                prop_assert_eq!(t.rows(), m.rows());
                prop_assert!((0..t.rows()).all(|r| t.row_weight(r) % 2 == 1));
                prop_assert_eq!(brute_span(&kernel_basis(&t)), brute_span(&kernel_basis(&m)));
            }
            Err(e) => {
                prop_assert_eq!(e, nlcs_core::Error::TransformImpossible);
                prop_assert!((0..m.rows()).all(|r| m.row_weight(r) % 2 == 0));
            }
        }
    }

    #[test]
    fn odd_plus_even_is_odd(a in proptest::collection::vec(0u8..2, 10), b in proptest::collection::vec(0u8..2, 10)) {
        let (a, b) = (BitVector::from_u8s(&a), BitVector::from_u8s(&b));
        prop_assert_eq!(a.xor(&b).weight() % 2, (a.weight() + b.weight()) % 2);
    }

    #[test]
    fn tanner_lift_locality_and_odd_fraction(seed in 0u64..1000, r in 1usize..4) {
        let d = 3;
        let g = RegularGraph::random(8, d, seed).unwrap();
        let h = nlcs_core::codes::sample_random_matrix(r, d, seed);
        let lift = tanner_lift(&g, &h).unwrap();
        for v in 0..g.num_vertices() {
            for j in 0..r {
                let row = lift.row(v * r + j);
                prop_assert!(row.iter_ones().all(|e| g.edges_at(v).contains(&e)));
                prop_assert_eq!(&g.local_view(v, row), h.row(j));
            }
        }
        prop_assert_eq!(odd_row_fraction(&lift).unwrap(), odd_row_fraction(&h).unwrap());
    }

    #[test]
    fn odd_kernel_vector_iff_generator_can_be_made_odd(seed in any::<u64>(), r in 1usize..4, d in 3usize..8) {
        let h = nlcs_core::codes::sample_random_matrix(r, d, seed);
        let gen = kernel_basis(&h);
        let has_odd_kernel_vector = brute_kernel(&h).iter().any(|v| v.weight() % 2 == 1);
        match odd_weight_transform(&gen) {
            Ok(t) => {
                prop_assert!(has_odd_kernel_vector);
                prop_assert!((0..t.rows()).all(|i| t.row_weight(i) % 2 == 1));
            }
            Err(_) => prop_assert!(!has_odd_kernel_vector),
        }
        prop_assert_eq!(has_odd_kernel_vector, !in_row_span(&h, &BitVector::ones(d)).unwrap());
    }

    // ------------------------------------------------------------ hamiltonian

    #[test]
    fn rotated_term_is_projector(theta in -3.2f64..3.2, s in pauli_strategy(3)) {
        let s = if s.is_hermitian() { s } else { s.with_phase_exp(s.phase_exp() + 1) };
        let t = rotated_local_term(&s, theta, &cut()).unwrap();
        prop_assert!((&t * &t - &t).norm() < 1e-12);
        prop_assert!((&t - t.adjoint()).norm() < 1e-12);
    }

    #[test]
    fn odd_weight_term_energy_floor(seed in any::<u64>(), n in 1usize..9) {
        let mut rng = trial_rng(seed, 0);
        let g = random_stabilizer_state(n, &mut rng);
        let mut term = nlcs_core::sampling::random_css_term(n, &mut rng);
        if term.weight() % 2 == 0 {
            let q = term.support()[0];
            term = term.multiply(&if term.is_x_type() {
                PauliOperator::single(n, q, nlcs_core::pauli::Letter::X)
            } else {
                PauliOperator::single(n, q, nlcs_core::pauli::Letter::Z)
            }).unwrap();
        }
        prop_assume!(term.weight() % 2 == 1);
        let h = CssHamiltonian::new(n, vec![term], FRAC_PI_8).unwrap();
        prop_assert!(energy_stabilizer(&g, &h, &cut()).unwrap() >= sin2_pi8() - 1e-12);
    }

    #[test]
    fn conjugated_term_support_within_lightcone(seed in any::<u64>()) {
        let n = 6;
        let mut rng = trial_rng(seed, 0);
        let c = random_clifford_circuit(n, 8, &mut rng);
        let s = nlcs_core::sampling::random_css_term(n, &mut rng);
        let conj = c.conjugate_inverse(&s).unwrap();
        let cone = c.reverse_lightcone(&s.support());
        prop_assert!(conj.support().iter().all(|q| cone.contains(q)));
    }

    // ------------------------------------------------------------ rotstates

    #[test]
    fn stabilizer_part_of_one_rotation_state_is_density_matrix(seed in any::<u64>(), theta in -3.2f64..3.2) {
        let n = 3;
        let mut rng = trial_rng(seed, 0);
        let g = random_stabilizer_state(n, &mut rng);
        let q = random_hermitian_pauli(n, &mut rng);
        let subset = [0, 2];
        let pa = dense::pauli_matrix(&q.restrict(&subset));
        let mut stab = CMatrix::zeros(4, 4);
        for e in g.subgroup_on(&subset, &PauliOperator::identity(n)).unwrap() {
            stab += dense::pauli_matrix(&e);
        }
        let (s, c) = theta.sin_cos();
        let rho = (&stab * C64::from(c * c) + &pa * &stab * &pa * C64::from(s * s)) * C64::from(0.25);
        prop_assert!((rho.trace() - C64::from(1.0)).norm() < 1e-12);
        prop_assert!(dense::hermitian_eigenvalues(&rho).iter().all(|&e| e >= -1e-10));
    }
}
