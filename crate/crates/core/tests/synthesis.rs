mod common;

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use common::*;
use num_complex::Complex64;
use oraclemux::circuit::{Axis, Circuit, ControlSpec, Gate, GateClass, GateKind, QubitId};
use oraclemux::verify::{reference_diagonal, reference_multiplexor};
use oraclemux::*;
use rand::Rng;

fn quarter_turn_angles() -> AngleVector {
    AngleVector::new(2, vec![PI / 2.0, 3.0 * PI / 2.0, PI, 0.0]).unwrap()
}

fn sim() -> Simulator {
    Simulator::new()
}

fn random_table(rng: &mut impl Rng, n_beta: usize, n_alpha: usize) -> BitTable {
    let rows: Vec<Vec<bool>> = (0..1 << n_beta)
        .map(|_| (0..n_alpha).map(|_| rng.gen()).collect())
        .collect();
    BitTable::from_rows(n_beta, n_alpha, &rows).unwrap()
}

#[test]
fn x_twice_is_identity() {
    let x = Circuit::from_gates([Gate::new(GateKind::X, QubitId::tau(), vec![]).unwrap()]);
    let u = sim().circuit_to_unitary(&x.compose(&x)).unwrap();
    assert_eq!(u, UnitaryMatrix::identity(2));
    // compose(a, b) = U(b)·U(a)
    let a = Circuit::from_gates([Gate::rot(Axis::Y, 0.4, QubitId::tau())]);
    let b = Circuit::from_gates([Gate::rot(Axis::X, 1.1, QubitId::tau())]);
    let ua = sim().circuit_to_unitary(&a).unwrap();
    let ub = sim().circuit_to_unitary(&b).unwrap();
    let uab = sim().circuit_to_unitary(&a.compose(&b)).unwrap();
    assert!(max_diff(&uab, &ub.mul(&ua)) < 1e-15);
}

#[test]
fn oracle_is_self_inverse() {
    let table = quantize(&quarter_turn_angles(), 2, QuantizeMode::Truncate).unwrap();
    let omega = build_full_oracle(&table);
    let u = sim().circuit_to_unitary(&omega).unwrap();
    assert!(max_diff(&u.mul(&u), &UnitaryMatrix::identity(u.dim())) < 1e-12);
    let sq = sim().circuit_to_unitary(&omega.compose(&omega)).unwrap();
    assert_eq!(sq, UnitaryMatrix::identity(16));

    let mut rng = rng(11);
    for n_beta in 1..=3 {
        for n_alpha in 1..=4 {
            let t = random_table(&mut rng, n_beta, n_alpha);
            for k in 1..=n_alpha {
                let o = build_oracle(&t, k).unwrap();
                let u = sim().circuit_to_unitary(&o).unwrap();
                let inv = sim().circuit_to_unitary(&o.inverse()).unwrap();
                assert!(max_diff(&u, &inv) < 1e-12);
            }
            let u = sim().circuit_to_unitary(&build_full_oracle(&t)).unwrap();
            assert!(max_diff(&u.mul(&u), &UnitaryMatrix::identity(u.dim())) < 1e-12);
        }
    }
}

#[test]
fn oracle_writes_table_rows() {
    // Ω|b⟩|0⟩ = |b⟩|a_b⟩ for every row.
    let mut rng = rng(5);
    let t = random_table(&mut rng, 3, 4);
    let omega = build_full_oracle(&t);
    for b in 0..8 {
        // beta occupies the top three bits, alphas the low four.
        let mut s = StateVector::basis(128, b << 4);
        sim().apply(&omega, &mut s).unwrap();
        let expected = (b << 4) | t.numerator(b) as usize;
        assert_eq!(s, StateVector::basis(128, expected), "row {b}");
    }
}

#[test]
fn oracle_factor_order_is_irrelevant() {
    let mut rng = rng(3);
    let t = random_table(&mut rng, 3, 4);
    let forward = build_full_oracle(&t);
    let backward = (1..=4).rev().fold(Circuit::new(), |acc, k| {
        acc.compose(&build_oracle(&t, k).unwrap())
    });
    let mut shuffled: Vec<Gate> = forward.gates().to_vec();
    shuffled.reverse();
    let shuffled = Circuit::from_gates(shuffled);
    let u = sim().circuit_to_unitary(&forward).unwrap();
    assert!(max_diff(&u, &sim().circuit_to_unitary(&backward).unwrap()) < 1e-12);
    assert!(max_diff(&u, &sim().circuit_to_unitary(&shuffled).unwrap()) < 1e-12);

    let rot = build_fraction_rotation(4, Axis::Y);
    let mut rev: Vec<Gate> = rot.gates().to_vec();
    rev.reverse();
    let ur = sim().circuit_to_unitary(&rot).unwrap();
    assert!(
        max_diff(
            &ur,
            &sim().circuit_to_unitary(&Circuit::from_gates(rev)).unwrap()
        ) < 1e-12
    );
}

#[test]
fn fraction_rotation_unitary() {
    // exp(i 2π 0.n(α_1)…n(α_N) σ_y): one block per alpha value m.
    for n_alpha in 1..=4 {
        let rot = build_fraction_rotation(n_alpha, Axis::Y);
        let u = sim().circuit_to_unitary(&rot).unwrap();
        let blocks: Vec<M2> = (0..1u32 << n_alpha)
            .map(|m| taylor_exp(TAU * m as f64 / (1u32 << n_alpha) as f64, 'y'))
            .collect();
        assert!(max_diff(&u, &block_diag(&blocks)) < 1e-12);
    }
    // α_1 = |1⟩ applies exp(iπσ_y) = -I.
    let u = sim()
        .circuit_to_unitary(&build_fraction_rotation(1, Axis::Y))
        .unwrap();
    let minus_one = taylor_exp(PI, 'y');
    assert!((minus_one[0][0] + 1.0).norm() < 1e-12 && minus_one[0][1].norm() < 1e-12);
    assert!((u.get(2, 2) - minus_one[0][0]).norm() < 1e-12);
    assert!((u.get(3, 3) - minus_one[1][1]).norm() < 1e-12);
    assert!((u.get(0, 0) - 1.0).norm() < 1e-15 && (u.get(1, 1) - 1.0).norm() < 1e-15);
}

#[test]
fn gate_matrices_match_taylor_exponential() {
    for theta in [0.0, 0.3, -1.7, 2.9, 6.2] {
        for (axis, ch) in [(Axis::X, 'x'), (Axis::Y, 'y'), (Axis::Z, 'z')] {
            let u = sim()
                .circuit_to_unitary(&Circuit::from_gates([Gate::rot(
                    axis,
                    theta,
                    QubitId::tau(),
                )]))
                .unwrap();
            assert!(max_diff(&u, &to_unitary(&taylor_exp(theta, ch))) < 1e-12);
        }
    }
}

#[test]
fn oracular_multiplexor_at_quarter_turns_is_exact() {
    let oc = synth_multiplexor_oracular(
        &MultiplexorSpec::ry(quarter_turn_angles()),
        2,
        QuantizeMode::Truncate,
    )
    .unwrap();
    let (restricted, leak) = sim()
        .restricted_unitary(&oc.circuit, &oc.ancillas())
        .unwrap();
    assert_eq!(leak, 0.0);
    let blocks: Vec<M2> = quarter_turn_angles()
        .as_slice()
        .iter()
        .map(|&t| taylor_exp(t, 'y'))
        .collect();
    assert!(max_diff(&restricted, &block_diag(&blocks)) < 1e-12);
    let counts = oc.circuit.count_gates();
    assert_eq!(counts.get(GateClass::Mcx(2)), 8);
    assert_eq!(counts.get(GateClass::ControlledRotation(1)), 2);
}

#[test]
fn oracular_zero_angles_is_identity() {
    let z = AngleVector::zeros(3).unwrap();
    let oc = synth_multiplexor_oracular(&MultiplexorSpec::ry(z.clone()), 3, QuantizeMode::Truncate)
        .unwrap();
    let (u, leak) = sim()
        .restricted_unitary(&oc.circuit, &oc.ancillas())
        .unwrap();
    assert!(max_diff(&u, &UnitaryMatrix::identity(16)) < 1e-15);
    assert_eq!(leak, 0.0);
    let od = synth_diagonal_oracular(&z, 2, QuantizeMode::Truncate).unwrap();
    let (u, leak) = sim()
        .restricted_unitary(&od.circuit, &od.ancillas())
        .unwrap();
    assert!(max_diff(&u, &UnitaryMatrix::identity(8)) < 1e-12);
    assert!(leak < 1e-12);
}

#[test]
fn oracular_z_multiplexor() {
    let mut rng = rng(21);
    let a = random_angles(&mut rng, 2);
    let spec = MultiplexorSpec {
        angles: a.clone(),
        axis: Axis::Z,
    };
    let oc = synth_multiplexor_oracular(&spec, 6, QuantizeMode::Nearest).unwrap();
    let (u, leak) = sim()
        .restricted_unitary(&oc.circuit, &oc.ancillas())
        .unwrap();
    assert_eq!(leak, 0.0);
    let reference = reference_multiplexor(&dequantize(&oc.bit_table), Axis::Z);
    assert!(max_diff(&u, &reference) < 1e-12);
}

#[test]
fn oracular_diagonal() {
    let a = AngleVector::new(1, vec![0.0, PI]).unwrap();
    let oc = synth_diagonal_oracular(&a, 1, QuantizeMode::Truncate).unwrap();
    let (u, leak) = sim()
        .restricted_unitary(&oc.circuit, &oc.ancillas())
        .unwrap();
    let expected =
        UnitaryMatrix::from_diagonal(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
    assert!(max_diff(&u, &expected) < 1e-12);
    assert!(leak < 1e-12);

    let oc = synth_diagonal_oracular(&quarter_turn_angles(), 2, QuantizeMode::Truncate).unwrap();
    let (u, leak) = sim()
        .restricted_unitary(&oc.circuit, &oc.ancillas())
        .unwrap();
    assert!(max_diff(&u, &reference_diagonal(&quarter_turn_angles())) < 1e-12);
    assert!(leak < 1e-12);

    let mut rng = rng(8);
    for n_beta in 1..=3 {
        let a = random_angles(&mut rng, n_beta);
        let oc = synth_diagonal_oracular(&a, 5, QuantizeMode::Truncate).unwrap();
        let (u, leak) = sim()
            .restricted_unitary(&oc.circuit, &oc.ancillas())
            .unwrap();
        assert!(u.max_off_diagonal() < 1e-10);
        assert!(leak < 1e-12);
        assert!(max_diff(&u, &reference_diagonal(&dequantize(&oc.bit_table))) < 1e-10);
    }
}

#[test]
fn x_quarter_turn_conjugation() {
    let mut rng = rng(2);
    for _ in 0..20 {
        let theta = rng.gen_range(-6.0..6.0);
        let c = Circuit::from_gates([
            Gate::rot(Axis::X, FRAC_PI_4, QubitId::tau()),
            Gate::rot(Axis::Y, theta, QubitId::tau()),
            Gate::rot(Axis::X, -FRAC_PI_4, QubitId::tau()),
        ]);
        let u = sim().circuit_to_unitary(&c).unwrap();
        assert!(max_diff(&u, &to_unitary(&taylor_exp(theta, 'z'))) < 1e-12);
    }
}

#[test]
fn exact_single_control() {
    let (t0, t1) = (0.9, -2.3);
    let a = AngleVector::new(1, vec![t0, t1]).unwrap();
    let c = synth_multiplexor_exact(&MultiplexorSpec::ry(a)).unwrap();
    let kinds: Vec<_> = c.gates().iter().map(|g| g.kind()).collect();
    assert!(matches!(
        kinds.as_slice(),
        [
            GateKind::RotY(_),
            GateKind::Cnot,
            GateKind::RotY(_),
            GateKind::Cnot
        ]
    ));
    // φ_0 + φ_1 = θ_0 and φ_0 - φ_1 = θ_1.
    assert_eq!(kinds[0], GateKind::RotY((t0 + t1) / 2.0));
    assert_eq!(kinds[2], GateKind::RotY((t0 - t1) / 2.0));
    let u = sim().circuit_to_unitary(&c).unwrap();
    let expected = block_diag(&[taylor_exp(t0, 'y'), taylor_exp(t1, 'y')]);
    assert!(max_diff(&u, &expected) < 1e-12);
}

#[test]
fn exact_multiplexor_matches_reference() {
    let mut rng = rng(4);
    for n_beta in 1..=4 {
        for _ in 0..5 {
            let a = random_angles(&mut rng, n_beta);
            let c = synth_multiplexor_exact(&MultiplexorSpec::ry(a.clone())).unwrap();
            assert_eq!(c.cnot_count(), 1 << n_beta);
            let u = sim().circuit_to_unitary(&c).unwrap();
            assert!(max_diff(&u, &reference_multiplexor(&a, Axis::Y)) < 1e-10);
            // Columns |b⟩|0⟩ carry (cos θ_b, -sin θ_b).
            for b in 0..1 << n_beta {
                let (s, co) = a.as_slice()[b].sin_cos();
                assert!((u.get(2 * b, 2 * b) - co).norm() < 1e-10);
                assert!((u.get(2 * b + 1, 2 * b) + s).norm() < 1e-10);
            }
            let z = synth_multiplexor_exact(&MultiplexorSpec {
                angles: a.clone(),
                axis: Axis::Z,
            })
            .unwrap();
            let uz = sim().circuit_to_unitary(&z).unwrap();
            assert!(max_diff(&uz, &reference_multiplexor(&a, Axis::Z)) < 1e-10);
        }
    }
    let zero =
        synth_multiplexor_exact(&MultiplexorSpec::ry(AngleVector::zeros(3).unwrap())).unwrap();
    assert_eq!(
        sim().circuit_to_unitary(&zero).unwrap(),
        UnitaryMatrix::identity(16)
    );
}

#[test]
fn exact_diagonal() {
    let a = AngleVector::new(2, vec![0.0, PI / 2.0, PI, 3.0 * PI / 2.0]).unwrap();
    let c = synth_diagonal_exact(&a).unwrap();
    assert_eq!(c.cnot_count(), 4);
    let (u, leak) = sim().restricted_unitary(&c, &[QubitId::tau()]).unwrap();
    let expected = UnitaryMatrix::from_diagonal(&[
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ]);
    assert!(max_diff(&u, &expected) < 1e-10);
    assert!(leak < 1e-12);
    let z = synth_diagonal_exact(&AngleVector::zeros(2).unwrap()).unwrap();
    let (u, _) = sim().restricted_unitary(&z, &[QubitId::tau()]).unwrap();
    assert!(max_diff(&u, &UnitaryMatrix::identity(4)) < 1e-12);
}

#[test]
fn restricted_unitary_of_oracular_diagonal_is_diagonal() {
    let mut rng = rng(19);
    let a = random_angles(&mut rng, 2);
    let oc = synth_diagonal_oracular(&a, 3, QuantizeMode::Nearest).unwrap();
    let (u, _) = sim()
        .restricted_unitary(&oc.circuit, &oc.ancillas())
        .unwrap();
    assert!(u.max_off_diagonal() < 1e-10);
}

#[test]
fn three_forms_agree() {
    let mut rng = rng(31);
    for n_beta in 1..=3 {
        for _ in 0..4 {
            let a = random_angles(&mut rng, n_beta);
            let sum = reference_multiplexor(&a, Axis::Y);
            let exp = oraclemux::verify::multiplexor_exponential_form(&a, Axis::Y);
            let prod = oraclemux::verify::multiplexor_product_form(&a, Axis::Y);
            assert!(max_diff(&sum, &exp) < 1e-10);
            assert!(max_diff(&sum, &prod) < 1e-10);
        }
    }
}

#[test]
fn bound_checks() {
    let s = sim();
    let r = s
        .check_bound(
            SynthTarget::Multiplexor,
            &quarter_turn_angles(),
            2,
            QuantizeMode::Truncate,
        )
        .unwrap();
    assert!(r.realized_error < 1e-12);
    assert_eq!(r.bound, TAU / 4.0);
    assert!(r.pass);
    let r = s
        .check_bound(
            SynthTarget::Multiplexor,
            &AngleVector::zeros(2).unwrap(),
            3,
            QuantizeMode::Truncate,
        )
        .unwrap();
    assert!(r.pass && r.realized_error < 1e-12);

    let mut rng = rng(1);
    for n_beta in 1..=3 {
        for n_alpha in 1..=8 {
            for mode in [QuantizeMode::Truncate, QuantizeMode::Nearest] {
                let a = random_angles(&mut rng, n_beta);
                let r = s
                    .check_bound(SynthTarget::Multiplexor, &a, n_alpha, mode)
                    .unwrap();
                assert!(r.pass, "{r:?}");
                let oc = synth_multiplexor_oracular(&MultiplexorSpec::ry(a.clone()), n_alpha, mode)
                    .unwrap();
                let analytic = multiplexor_distance(&a, &dequantize(&oc.bit_table));
                assert!((r.realized_error - analytic).abs() < 1e-10);
            }
        }
    }
    for n_beta in 1..=2 {
        let a = random_angles(&mut rng, n_beta);
        let r = s
            .check_bound(SynthTarget::Diagonal, &a, 4, QuantizeMode::Truncate)
            .unwrap();
        assert!(r.pass, "{r:?}");
        let (c, v, pass) = s.check_exact(SynthTarget::Diagonal, &a).unwrap();
        assert!(pass && v.realized_error < 1e-10 && c.cnot_count() == 1 << n_beta);
    }
}

#[test]
fn dyadic_angles_are_reproduced_exactly() {
    let mut rng = rng(13);
    for n_beta in 1..=3 {
        for n_alpha in 1..=6 {
            let m = 1u64 << n_alpha;
            let v = (0..1 << n_beta)
                .map(|_| TAU * rng.gen_range(0..m) as f64 / m as f64)
                .collect();
            let a = AngleVector::new(n_beta, v).unwrap();
            let oc = synth_multiplexor_oracular(
                &MultiplexorSpec::ry(a.clone()),
                n_alpha,
                QuantizeMode::Truncate,
            )
            .unwrap();
            let (u, leak) = sim()
                .restricted_unitary(&oc.circuit, &oc.ancillas())
                .unwrap();
            assert_eq!(leak, 0.0);
            assert!(max_diff(&u, &reference_multiplexor(&a, Axis::Y)) < 1e-12);
        }
    }
}

#[test]
fn polarity_controlled_gates_embed_projectors() {
    // X on tau controlled by (β_0 negative, β_1 positive) flips only b = 10.
    let g = Gate::new(
        GateKind::X,
        QubitId::tau(),
        vec![
            ControlSpec::negative(QubitId::beta(0)),
            ControlSpec::positive(QubitId::beta(1)),
        ],
    )
    .unwrap();
    let u = sim().circuit_to_unitary(&Circuit::from_gates([g])).unwrap();
    for col in 0..8usize {
        let row = if col >> 1 == 0b10 { col ^ 1 } else { col };
        assert_eq!(u.get(row, col), Complex64::new(1.0, 0.0));
    }
}

#[test]
fn circuit_unitaries_are_unitary() {
    let mut rng = rng(17);
    let a = random_angles(&mut rng, 2);
    let oc = synth_diagonal_oracular(&a, 3, QuantizeMode::Truncate).unwrap();
    let u = sim().circuit_to_unitary(&oc.circuit).unwrap();
    assert!(u.unitarity_defect() < 1e-10);
}
