//! Acceptance suite: functional correctness against the integer oracles,
//! closed-form count reproduction, ratio claims, lowering soundness, and the
//! reversibility audit. Each test prints one line per criterion.

use qdiv::adders::{
    build_gidney_adder, build_qcla_adder, build_qcla_u1, build_ripple_adder, flog2, omega,
};
use qdiv::dividers::{divisor_range, DivisionAlgorithm};
use qdiv::metrics::weighted_depth;
use qdiv::oracle::{ref_carries, ref_compnsub, ref_divide};
use qdiv::resources::{
    formula_compnsub, formula_long_division, formula_non_restoring_division,
    formula_restoring_division, ratio_asymptotic, validate_measurements, BaselineId, CostSource,
    Metric, ResourceBounds,
};
use qdiv::unitary::{build_unitary, equivalent_up_to_global_phase};
use qdiv::{
    build_compnsub, build_long_division, build_non_restoring_division, build_restoring_division,
    check_ancilla_restoration, count_resources, lower, simulate, simulate_division, BasisState,
    Circuit, CnsVariant, CountLevel, Gate, LoweringOptions, LoweringStrategy, NonRestoringVariant,
    QubitId,
};

const ALL_VARIANTS: [CnsVariant; 4] = [CnsVariant::I, CnsVariant::IIa, CnsVariant::IIb, CnsVariant::III];

fn lowered_paired(circuit: &Circuit) -> Circuit {
    lower(circuit, LoweringOptions::default()).unwrap()
}

fn assert_no_violations(circuit: &Circuit, bounds: &ResourceBounds, label: &str) {
    let tof = count_resources(circuit, CountLevel::ToffoliLevel).unwrap();
    let tlv = count_resources(&lowered_paired(circuit), CountLevel::TLevel).unwrap();
    let violations = validate_measurements(&tof, &tlv, bounds);
    assert!(
        violations.is_empty(),
        "{label}: {}",
        violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    );
}

#[test]
fn criterion_1_compnsub_functional() {
    for variant in ALL_VARIANTS {
        for k in 2..=8u32 {
            let circuit = build_compnsub(variant, k).unwrap();
            assert!(circuit.validate().is_empty());
            let a_reg = circuit.register("a").unwrap().to_vec();
            let b_reg = circuit.register("b").unwrap().to_vec();
            let z_reg = circuit.register("z").unwrap().to_vec();
            for a in 0..(1u64 << k) {
                for b in 0..(1u64 << k) {
                    let mut s = BasisState::zeros(circuit.qubit_count());
                    s.write_register(&a_reg, a);
                    s.write_register(&b_reg, b);
                    let out = simulate(&circuit, s).unwrap();
                    let (want_b, want_z) = ref_compnsub(a, b, k).unwrap();
                    assert_eq!(out.read_register(&a_reg), a, "{variant:?} k={k} subtrahend");
                    assert_eq!(out.read_register(&b_reg), want_b, "{variant:?} k={k} a={a} b={b}");
                    assert_eq!(out.read_register(&z_reg), want_z, "{variant:?} k={k} a={a} b={b}");
                    assert!(check_ancilla_restoration(&circuit, s).unwrap());
                }
            }
        }
    }
    println!("PASS criterion 1: compare-and-subtract exhaustive, all variants, k=2..8");
}

/// Simulates one division input and checks quotient/remainder against the
/// oracle, divisor preservation, and ancilla restoration.
fn check_division_case(circuit: &Circuit, nn: u64, d: u64, label: &str) {
    let input = qdiv::dividers::division_input(circuit, nn, d).unwrap();
    let out = simulate(circuit, input).unwrap();
    let got = qdiv::read_result(circuit, &out).unwrap();
    let (q, r) = ref_divide(nn, d).unwrap();
    assert_eq!((got.quotient, got.remainder), (q, r), "{label} N={nn} D={d}");
    assert_eq!(
        out.read_register(circuit.register("divisor").unwrap()),
        d,
        "{label} N={nn} D={d}: divisor not preserved"
    );
    for (i, role) in circuit.roles().iter().enumerate() {
        if *role == qdiv::QubitRole::Ancilla {
            let qb = QubitId(i as u32);
            assert_eq!(
                out.bit(qb),
                circuit.initial_ancilla_value(qb),
                "{label} N={nn} D={d}: ancilla {i} not restored"
            );
        }
    }
}

#[test]
fn criterion_2_division_functional() {
    for variant in ALL_VARIANTS {
        for n in 2..=6u32 {
            for m in 1..=n {
                let circuit = build_long_division(n, m, variant).unwrap();
                let (dmin, dmax) = divisor_range(DivisionAlgorithm::Long, n, m);
                for nn in 0..(1u64 << n) {
                    for d in dmin..=dmax {
                        check_division_case(&circuit, nn, d, &format!("long {variant:?} n={n} m={m}"));
                    }
                }
            }
        }
    }
    for variant in ALL_VARIANTS {
        for n in 2..=5u32 {
            let circuit = build_restoring_division(n, variant).unwrap();
            for nn in 0..(1u64 << n) {
                for d in 1..(1u64 << n) {
                    check_division_case(&circuit, nn, d, &format!("restoring {variant:?} n={n}"));
                }
            }
        }
    }
    for variant in [NonRestoringVariant::II, NonRestoringVariant::III] {
        for n in 2..=5u32 {
            let circuit = build_non_restoring_division(n, variant).unwrap();
            let (dmin, dmax) = divisor_range(DivisionAlgorithm::NonRestoring, n, n);
            for nn in 0..(1u64 << n) {
                for d in dmin..=dmax {
                    check_division_case(&circuit, nn, d, &format!("nonrestoring {variant:?} n={n}"));
                }
            }
        }
    }
    println!("PASS criterion 2: division outputs equal the integer oracle on the full grids");
}

#[test]
fn criterion_3_compnsub_table() {
    for variant in ALL_VARIANTS {
        for k in 2..=64u32 {
            let circuit = build_compnsub(variant, k).unwrap();
            let bounds = formula_compnsub(variant, k).unwrap();
            assert_no_violations(&circuit, &bounds, &format!("compnsub {variant:?} k={k}"));
        }
    }
    // Published closed forms evaluate as printed.
    assert_eq!(formula_compnsub(CnsVariant::I, 5).unwrap().t_count.unwrap().claimed, 18 * 5 - 4);
    assert_eq!(
        formula_compnsub(CnsVariant::IIa, 8).unwrap().toffoli_count.unwrap().claimed,
        11 * 8 - 6 * omega(8) - 6 * flog2(8) - 4
    );
    println!("PASS criterion 3: measured compare-and-subtract costs satisfy the cost table, k=2..64");
}

#[test]
fn criterion_4_division_formulas() {
    for variant in ALL_VARIANTS {
        for n in 2..=32u32 {
            for m in 1..=n {
                let circuit = build_long_division(n, m, variant).unwrap();
                let bounds = formula_long_division(variant, n, m).unwrap();
                assert_no_violations(&circuit, &bounds, &format!("long {variant:?} n={n} m={m}"));
            }
            let circuit = build_restoring_division(n, variant).unwrap();
            let bounds = formula_restoring_division(variant, n).unwrap();
            assert_no_violations(&circuit, &bounds, &format!("restoring {variant:?} n={n}"));
        }
    }
    for variant in [NonRestoringVariant::II, NonRestoringVariant::III] {
        for n in 2..=32u32 {
            let circuit = build_non_restoring_division(n, variant).unwrap();
            let bounds = formula_non_restoring_division(variant, n).unwrap();
            assert_no_violations(&circuit, &bounds, &format!("nonrestoring {variant:?} n={n}"));
        }
    }
    println!("PASS criterion 4: measured division costs satisfy the closed forms, n=2..32");
}

#[test]
fn criterion_5_ratio_claims() {
    let cases = [
        ("long III / prior long", Metric::TCount, CostSource::Long(CnsVariant::III), BaselineId::Opf24Long, 0.24),
        ("long I / prior long", Metric::TCount, CostSource::Long(CnsVariant::I), BaselineId::Opf24Long, 0.39),
        ("long IIa / prior long", Metric::TCount, CostSource::Long(CnsVariant::IIa), BaselineId::Opf24Long, 1.64),
        ("long IIb / prior long", Metric::TCount, CostSource::Long(CnsVariant::IIb), BaselineId::Opf24Long, 1.67),
        ("long III / prior long cnot", Metric::CnotT, CostSource::Long(CnsVariant::III), BaselineId::Opf24Long, 0.32),
        ("restoring I / prior restoring", Metric::TCount, CostSource::Restoring(CnsVariant::I), BaselineId::Tmcvh19Restoring, 0.52),
        ("restoring IIa / prior restoring", Metric::TCount, CostSource::Restoring(CnsVariant::IIa), BaselineId::Tmcvh19Restoring, 2.17),
        ("restoring III / prior restoring", Metric::TCount, CostSource::Restoring(CnsVariant::III), BaselineId::Tmcvh19Restoring, 0.31),
        ("nonrestoring III / prior nonrestoring", Metric::TCount, CostSource::NonRestoring(NonRestoringVariant::III), BaselineId::Tmcvh19NonRestoring, 0.29),
    ];
    for (label, metric, ours, baseline, want) in cases {
        let r = ratio_asymptotic(metric, ours, CostSource::Baseline(baseline)).unwrap();
        assert!((r - want).abs() <= 0.01, "{label}: got {r:.4}, want {want}");
    }
    let t_red = 100.0
        * (1.0
            - ratio_asymptotic(
                Metric::TCount,
                CostSource::Long(CnsVariant::III),
                CostSource::Baseline(BaselineId::Opf24Long),
            )
            .unwrap());
    assert!((t_red - 76.08).abs() <= 0.5, "T-count reduction {t_red:.2}%");
    let c_red = 100.0
        * (1.0
            - ratio_asymptotic(
                Metric::CnotT,
                CostSource::Long(CnsVariant::III),
                CostSource::Baseline(BaselineId::Opf24Long),
            )
            .unwrap());
    assert!((c_red - 68.35).abs() <= 0.5, "CNOT reduction {c_red:.2}%");
    println!(
        "PASS criterion 5: ratio table cells within 0.01, reductions {t_red:.2}% / {c_red:.2}%"
    );
}

#[test]
fn criterion_6_lowering_soundness() {
    let tol = 1e-9;
    // Seven-T expansion of one Toffoli.
    let mut toffoli = Circuit::new(3);
    toffoli.append(Gate::toffoli(QubitId(0), QubitId(1), QubitId(2))).unwrap();
    let naive = lower(
        &toffoli,
        LoweringOptions { strategy: LoweringStrategy::Naive7T, expand_and_gadgets: false },
    )
    .unwrap();
    let u = build_unitary(&naive).unwrap();
    let v = build_unitary(&toffoli).unwrap();
    assert!(equivalent_up_to_global_phase(&u, &v, tol).unwrap());

    // Fused pair sharing a control: TOF(q1,q2;q3) TOF(q1,q4;q5).
    let mut pair = Circuit::new(5);
    pair.append(Gate::toffoli(QubitId(0), QubitId(1), QubitId(2))).unwrap();
    pair.append(Gate::toffoli(QubitId(0), QubitId(3), QubitId(4))).unwrap();
    let fused = lowered_paired(&pair);
    let r = count_resources(&fused, CountLevel::TLevel).unwrap();
    assert_eq!(r.t_count, 12, "shared-control pair costs exactly 12 T");
    assert!(equivalent_up_to_global_phase(
        &build_unitary(&fused).unwrap(),
        &build_unitary(&pair).unwrap(),
        tol
    )
    .unwrap());

    // Fused pair sharing the target: TOF(q1,q2;q5) TOF(q3,q4;q5).
    let mut pair = Circuit::new(5);
    pair.append(Gate::toffoli(QubitId(0), QubitId(1), QubitId(4))).unwrap();
    pair.append(Gate::toffoli(QubitId(2), QubitId(3), QubitId(4))).unwrap();
    let fused = lowered_paired(&pair);
    let r = count_resources(&fused, CountLevel::TLevel).unwrap();
    assert_eq!(r.t_count, 12, "shared-target pair costs exactly 12 T");
    assert!(equivalent_up_to_global_phase(
        &build_unitary(&fused).unwrap(),
        &build_unitary(&pair).unwrap(),
        tol
    )
    .unwrap());

    // Full lowered compare-and-subtract circuits at small widths.
    for variant in [CnsVariant::I, CnsVariant::IIa, CnsVariant::IIb] {
        for k in variant.min_width()..=3u32 {
            let circuit = build_compnsub(variant, k).unwrap();
            if circuit.qubit_count() > qdiv::unitary::MAX_QUBITS {
                continue;
            }
            let reference = build_unitary(&circuit).unwrap();
            for strategy in [LoweringStrategy::Naive7T, LoweringStrategy::Paired12T] {
                let lowered = lower(
                    &circuit,
                    LoweringOptions { strategy, expand_and_gadgets: false },
                )
                .unwrap();
                let u = build_unitary(&lowered).unwrap();
                assert!(
                    equivalent_up_to_global_phase(&u, &reference, tol).unwrap(),
                    "{variant:?} k={k} {strategy:?}"
                );
            }
        }
    }

    // Lowered reversible dividers at tiny sizes.
    let small: Vec<(String, Circuit)> = vec![
        ("long n=2 m=1".into(), build_long_division(2, 1, CnsVariant::I).unwrap()),
        ("long n=3 m=2".into(), build_long_division(3, 2, CnsVariant::I).unwrap()),
        ("restoring n=2".into(), build_restoring_division(2, CnsVariant::I).unwrap()),
        ("restoring n=3".into(), build_restoring_division(3, CnsVariant::I).unwrap()),
        (
            "nonrestoring n=2".into(),
            build_non_restoring_division(2, NonRestoringVariant::II).unwrap(),
        ),
    ];
    for (label, circuit) in small {
        if circuit.qubit_count() > qdiv::unitary::MAX_QUBITS {
            continue;
        }
        let reference = build_unitary(&circuit).unwrap();
        let lowered = lowered_paired(&circuit);
        assert!(
            equivalent_up_to_global_phase(&build_unitary(&lowered).unwrap(), &reference, tol)
                .unwrap(),
            "{label}"
        );
    }
    println!("PASS criterion 6: lowering preserves unitaries; fused pairs cost exactly 12 T");
}

#[test]
fn criterion_7_adder_suite() {
    for k in 1..=6u32 {
        let ripple = build_ripple_adder(k).unwrap();
        let qcla = build_qcla_adder(k).unwrap();
        let gidney = build_gidney_adder(k).unwrap();
        for (c, carries) in [(&ripple, true), (&qcla, true), (&gidney, false)] {
            let a_reg = c.register("a").unwrap().to_vec();
            let b_reg = c.register("b").unwrap().to_vec();
            for a in 0..(1u64 << k) {
                for b in 0..(1u64 << k) {
                    let mut s = BasisState::zeros(c.qubit_count());
                    s.write_register(&a_reg, a);
                    s.write_register(&b_reg, b);
                    let out = simulate(c, s).unwrap();
                    assert_eq!(out.read_register(&b_reg), (a + b) % (1 << k));
                    assert_eq!(out.read_register(&a_reg), a);
                    if carries {
                        let z = c.register("z").unwrap();
                        assert_eq!(out.read_register(z), (a + b) >> k);
                    }
                }
            }
        }
    }
    for k in 2..=5u32 {
        let u1 = build_qcla_u1(k).unwrap();
        let a_reg = u1.register("a").unwrap().to_vec();
        let b_reg = u1.register("b").unwrap().to_vec();
        let z_reg = u1.register("z").unwrap().to_vec();
        for a in 0..(1u64 << k) {
            for b in 0..(1u64 << k) {
                let nb = !b & ((1 << k) - 1);
                let mut s = BasisState::zeros(u1.qubit_count());
                s.write_register(&a_reg, a);
                s.write_register(&b_reg, a ^ nb);
                s.write_register(&z_reg, a & nb);
                let out = simulate(&u1, s).unwrap();
                for (i, want) in ref_carries(a, b, k).unwrap().into_iter().enumerate() {
                    assert_eq!(out.bit(z_reg[i]), want == 1, "k={k} a={a} b={b} lane {i}");
                }
            }
        }
    }
    for k in 2..=64u32 {
        let u1 = build_qcla_u1(k).unwrap();
        let r = count_resources(&u1, CountLevel::ToffoliLevel).unwrap();
        assert_eq!(r.toffoli_count, 4 * u64::from(k) - 3 * omega(k) - 3 * flog2(k) - 1);
    }
    println!("PASS criterion 7: adders match integer addition; carry unit matches the carry oracle and its count formula");
}

fn assert_bijective(circuit: &Circuit, label: &str) {
    let q = circuit.qubit_count();
    assert!(q <= 16, "{label}: bijection sweep limited to 16 qubits");
    let size = 1usize << q;
    let mut seen = vec![false; size];
    for input in 0..size as u64 {
        let out = simulate(circuit, BasisState::from_bits(input, q)).unwrap();
        let idx = out.as_bits() as usize;
        assert!(!seen[idx], "{label}: output collision at input {input}");
        seen[idx] = true;
    }
}

#[test]
fn criterion_8_reversibility_audit() {
    let has_uncompute =
        |c: &Circuit| c.gates().iter().any(|g| matches!(g, Gate::AndUncompute { .. }));

    let mut audited = 0usize;
    for (variant, ks) in [
        (CnsVariant::I, vec![2u32, 3, 5, 7]),
        (CnsVariant::IIa, vec![2, 3, 4, 5]),
        (CnsVariant::IIb, vec![2, 3, 4]),
    ] {
        for k in ks {
            let c = build_compnsub(variant, k).unwrap();
            assert!(c.fully_reversible());
            assert!(!has_uncompute(&c));
            if c.qubit_count() <= 16 {
                assert_bijective(&c, &format!("compnsub {variant:?} k={k}"));
                audited += 1;
            }
        }
    }
    for (n, m, variant) in [(4, 2, CnsVariant::I), (5, 3, CnsVariant::I), (3, 2, CnsVariant::IIa)] {
        let c = build_long_division(n, m, variant).unwrap();
        assert!(c.fully_reversible());
        assert!(!has_uncompute(&c));
        if c.qubit_count() <= 16 {
            assert_bijective(&c, &format!("long {variant:?} n={n} m={m}"));
            audited += 1;
        }
    }
    for (n, variant) in [(4, CnsVariant::I), (5, CnsVariant::I), (3, CnsVariant::IIa)] {
        let c = build_restoring_division(n, variant).unwrap();
        assert!(c.fully_reversible());
        if c.qubit_count() <= 16 {
            assert_bijective(&c, &format!("restoring {variant:?} n={n}"));
            audited += 1;
        }
    }
    {
        let c = build_non_restoring_division(3, NonRestoringVariant::II).unwrap();
        assert!(c.fully_reversible());
        if c.qubit_count() <= 16 {
            assert_bijective(&c, "nonrestoring II n=3");
            audited += 1;
        }
    }
    assert!(audited >= 10, "bijection audit covered {audited} circuits");

    for k in [2u32, 5] {
        assert!(!build_compnsub(CnsVariant::III, k).unwrap().fully_reversible());
    }
    assert!(!build_restoring_division(3, CnsVariant::III).unwrap().fully_reversible());
    assert!(!build_non_restoring_division(3, NonRestoringVariant::III).unwrap().fully_reversible());
    println!("PASS criterion 8: reversible families are bijections; AND-gadget circuits flagged non-reversible");
}

#[test]
fn depth_model_reproduces_stated_examples() {
    // One lowered Toffoli: 7 T over 3 T-layers, 7 CNOTs.
    let mut c = Circuit::new(3);
    c.append(Gate::toffoli(QubitId(0), QubitId(1), QubitId(2))).unwrap();
    let l = lower(
        &c,
        LoweringOptions { strategy: LoweringStrategy::Naive7T, expand_and_gadgets: false },
    )
    .unwrap();
    let r = count_resources(&l, CountLevel::TLevel).unwrap();
    assert_eq!((r.t_count, r.t_depth, r.cnot_count_t_level), (7, 3, 7));

    // The conditioning layer of the parallel variant runs in one Toffoli layer.
    let c = build_compnsub(CnsVariant::IIb, 8).unwrap();
    let d = weighted_depth(&c, |g| u64::from(g.is_toffoli()));
    assert!(d <= 2 * flog2(8) + 2 * qdiv::adders::flog2_third(8) + 9);
}
