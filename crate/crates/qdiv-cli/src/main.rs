use std::collections::BTreeMap;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qdiv::adders::{build_gidney_adder, build_qcla_adder, build_qcla_u1, build_qcla_u2, build_ripple_adder};
use qdiv::dividers::{divisor_range, DivisionAlgorithm};
use qdiv::oracle::{ref_compnsub, ref_divide};
use qdiv::resources::{
    formula_compnsub, formula_long_division, formula_non_restoring_division,
    formula_restoring_division, ratio_report, BaselineId, Bound, BoundKind, CostSource, Metric,
    ResourceBounds, ASYMPTOTIC_M, ASYMPTOTIC_N,
};
use qdiv::{
    build_compnsub, build_long_division, build_non_restoring_division, build_restoring_division,
    check_ancilla_restoration, count_resources, lower, simulate, simulate_division, BasisState,
    Circuit, CnsVariant, CountLevel, LoweringOptions, LoweringStrategy, NonRestoringVariant,
};

#[derive(Parser)]
#[command(name = "qdiv", about = "Build, simulate, verify and cost quantum division circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Alg {
    Compnsub,
    Ripple,
    Qcla,
    QclaU1,
    QclaU2,
    Gidney,
    Long,
    Restoring,
    Nonrestoring,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Naive7t,
    Paired12t,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Baseline {
    #[value(alias = "OPF24")]
    Opf24,
    #[value(alias = "TMCVH19")]
    Tmcvh19,
    #[value(alias = "YGW22")]
    Ygw22,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    #[value(alias = "toffoli_count")]
    ToffoliCount,
    #[value(alias = "toffoli_depth")]
    ToffoliDepth,
    #[value(alias = "t_count")]
    TCount,
    #[value(alias = "t_depth")]
    TDepth,
    #[value(alias = "cnot_toffoli", alias = "cnot_count_toffoli_level")]
    CnotToffoli,
    #[value(alias = "cnot_t", alias = "cnot_count_t_level")]
    CnotT,
    #[value(alias = "qubits_total")]
    Qubits,
}

impl MetricArg {
    fn to_metric(self) -> Metric {
        match self {
            MetricArg::ToffoliCount => Metric::ToffoliCount,
            MetricArg::ToffoliDepth => Metric::ToffoliDepth,
            MetricArg::TCount => Metric::TCount,
            MetricArg::TDepth => Metric::TDepth,
            MetricArg::CnotToffoli => Metric::CnotToffoli,
            MetricArg::CnotT => Metric::CnotT,
            MetricArg::Qubits => Metric::Qubits,
        }
    }
}

#[derive(Args)]
struct Spec {
    /// Circuit family to operate on.
    #[arg(long, value_enum)]
    alg: Alg,
    /// Circuit variant: I, IIa, IIb, III (dividers), or II (non-restoring).
    #[arg(long)]
    variant: Option<String>,
    /// Operand width for compare-and-subtract and adders.
    #[arg(long)]
    k: Option<u32>,
    /// Dividend width.
    #[arg(long)]
    n: Option<u32>,
    /// Divisor width (long division).
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a circuit and print it in the text export format.
    Build {
        #[command(flatten)]
        spec: Spec,
        /// Lower to Clifford+T before exporting.
        #[arg(long, value_enum)]
        lower: Option<Strategy>,
        /// Write to a file instead of stdout.
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Run one basis-state input through a circuit and print the registers.
    Simulate {
        #[command(flatten)]
        spec: Spec,
        /// Subtrahend / addend for compare-and-subtract and adders.
        #[arg(long)]
        a: Option<u64>,
        /// Minuend / in-place operand.
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        dividend: Option<u64>,
        #[arg(long)]
        divisor: Option<u64>,
        /// Extra register assignments, e.g. --set b=13.
        #[arg(long = "set", value_name = "NAME=VALUE")]
        assignments: Vec<String>,
    },
    /// Exhaustively verify a circuit family against the integer oracle.
    Verify {
        #[command(flatten)]
        spec: Spec,
    },
    /// Measure a circuit and compare against the closed-form costs.
    Report {
        #[command(flatten)]
        spec: Spec,
        #[arg(long, value_enum)]
        metric: Option<MetricArg>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Ratio tables against a published baseline.
    Compare {
        /// Division algorithm: long, restoring, or nonrestoring.
        #[arg(long, value_enum)]
        alg: Alg,
        #[arg(long, value_enum)]
        baseline: Baseline,
        #[arg(long, value_enum, default_value = "t-count")]
        metric: MetricArg,
        /// Evaluate at the large-size convention n=2048, m=n/2.
        #[arg(long)]
        asymptotic: bool,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
}

fn parse_variant(s: Option<&str>) -> Result<CnsVariant, String> {
    match s.unwrap_or("I") {
        "I" | "i" => Ok(CnsVariant::I),
        "IIa" | "iia" | "2a" => Ok(CnsVariant::IIa),
        "IIb" | "iib" | "2b" => Ok(CnsVariant::IIb),
        "III" | "iii" | "3" => Ok(CnsVariant::III),
        other => Err(format!("unknown variant {other}; expected I, IIa, IIb or III")),
    }
}

fn parse_nr_variant(s: Option<&str>) -> Result<NonRestoringVariant, String> {
    match s.unwrap_or("II") {
        "II" | "ii" | "2" | "IIb" => Ok(NonRestoringVariant::II),
        "III" | "iii" | "3" => Ok(NonRestoringVariant::III),
        other => Err(format!("unknown variant {other}; non-restoring supports II or III")),
    }
}

fn build_from_spec(spec: &Spec) -> Result<Circuit, String> {
    let variant = spec.variant.as_deref();
    match spec.alg {
        Alg::Compnsub => {
            let k = spec.k.ok_or("--k required for compnsub")?;
            build_compnsub(parse_variant(variant)?, k).map_err(|e| e.to_string())
        }
        Alg::Ripple => build_ripple_adder(spec.k.ok_or("--k required")?).map_err(|e| e.to_string()),
        Alg::Qcla => build_qcla_adder(spec.k.ok_or("--k required")?).map_err(|e| e.to_string()),
        Alg::QclaU1 => build_qcla_u1(spec.k.ok_or("--k required")?).map_err(|e| e.to_string()),
        Alg::QclaU2 => build_qcla_u2(spec.k.ok_or("--k required")?).map_err(|e| e.to_string()),
        Alg::Gidney => build_gidney_adder(spec.k.ok_or("--k required")?).map_err(|e| e.to_string()),
        Alg::Long => {
            let n = spec.n.ok_or("--n required for long division")?;
            let m = spec.m.ok_or("--m required for long division")?;
            build_long_division(n, m, parse_variant(variant)?).map_err(|e| e.to_string())
        }
        Alg::Restoring => {
            let n = spec.n.ok_or("--n required for restoring division")?;
            build_restoring_division(n, parse_variant(variant)?).map_err(|e| e.to_string())
        }
        Alg::Nonrestoring => {
            let n = spec.n.ok_or("--n required for non-restoring division")?;
            build_non_restoring_division(n, parse_nr_variant(variant)?).map_err(|e| e.to_string())
        }
    }
}

fn bounds_from_spec(spec: &Spec) -> Result<Option<ResourceBounds>, String> {
    let variant = spec.variant.as_deref();
    let b = match spec.alg {
        Alg::Compnsub => Some(
            formula_compnsub(parse_variant(variant)?, spec.k.ok_or("--k required")?)
                .map_err(|e| e.to_string())?,
        ),
        Alg::Long => Some(
            formula_long_division(
                parse_variant(variant)?,
                spec.n.ok_or("--n required")?,
                spec.m.ok_or("--m required")?,
            )
            .map_err(|e| e.to_string())?,
        ),
        Alg::Restoring => Some(
            formula_restoring_division(parse_variant(variant)?, spec.n.ok_or("--n required")?)
                .map_err(|e| e.to_string())?,
        ),
        Alg::Nonrestoring => Some(
            formula_non_restoring_division(parse_nr_variant(variant)?, spec.n.ok_or("--n required")?)
                .map_err(|e| e.to_string())?,
        ),
        _ => None,
    };
    Ok(b)
}

fn thread_budget() -> usize {
    let available = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    match std::env::var("QDIV_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        Some(n) if n >= 1 => n.min(available),
        _ => available,
    }
}

/// Runs `case_fn` over 0..total in parallel; returns (passes, first failure).
fn sweep(total: u64, case_fn: impl Fn(u64) -> Option<String> + Sync) -> (u64, Option<String>) {
    let threads = thread_budget().max(1).min(total.max(1) as usize);
    let chunk = total.div_ceil(threads as u64);
    let results: Vec<(u64, Option<String>)> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for t in 0..threads as u64 {
            let lo = t * chunk;
            let hi = ((t + 1) * chunk).min(total);
            let f = &case_fn;
            handles.push(scope.spawn(move || {
                let mut passes = 0;
                let mut failure = None;
                for i in lo..hi {
                    match f(i) {
                        None => passes += 1,
                        Some(msg) => {
                            if failure.is_none() {
                                failure = Some(msg);
                            }
                        }
                    }
                }
                (passes, failure)
            }));
        }
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut passes = 0;
    let mut failure = None;
    for (p, f) in results {
        passes += p;
        if failure.is_none() {
            failure = f;
        }
    }
    (passes, failure)
}

fn verify_compnsub(variant: CnsVariant, k: u32) -> (u64, u64, Option<String>) {
    let circuit = match build_compnsub(variant, k) {
        Ok(c) => c,
        Err(e) => return (0, 0, Some(e.to_string())),
    };
    let total = 1u64 << (2 * k);
    let a_reg = circuit.register("a").unwrap().to_vec();
    let b_reg = circuit.register("b").unwrap().to_vec();
    let z_reg = circuit.register("z").unwrap().to_vec();
    let (passes, failure) = sweep(total, |case| {
        let a = case & ((1 << k) - 1);
        let b = case >> k;
        let mut s = BasisState::zeros(circuit.qubit_count());
        s.write_register(&a_reg, a);
        s.write_register(&b_reg, b);
        let out = match simulate(&circuit, s) {
            Ok(o) => o,
            Err(e) => return Some(format!("a={a} b={b}: {e}")),
        };
        let (want_b, want_z) = ref_compnsub(a, b, k).unwrap();
        if out.read_register(&b_reg) != want_b
            || out.read_register(&z_reg) != want_z
            || out.read_register(&a_reg) != a
        {
            return Some(format!(
                "a={a} b={b}: got b={} z={} (want b={want_b} z={want_z})",
                out.read_register(&b_reg),
                out.read_register(&z_reg)
            ));
        }
        match check_ancilla_restoration(&circuit, s) {
            Ok(true) => None,
            Ok(false) => Some(format!("a={a} b={b}: ancilla not restored")),
            Err(e) => Some(format!("a={a} b={b}: {e}")),
        }
    });
    (passes, total, failure)
}

fn verify_division(
    alg: DivisionAlgorithm,
    variant_label: &str,
    circuit: &Circuit,
    n: u32,
    m: u32,
) -> (u64, u64, Option<String>) {
    let (dmin, dmax) = divisor_range(alg, n, m);
    let dcount = dmax - dmin + 1;
    let total = (1u64 << n) * dcount;
    let (passes, failure) = sweep(total, |case| {
        let nn = case / dcount;
        let d = dmin + case % dcount;
        match simulate_division(circuit, nn, d) {
            Ok(res) => {
                let (q, r) = ref_divide(nn, d).unwrap();
                if (res.quotient, res.remainder) == (q, r) {
                    None
                } else {
                    Some(format!(
                        "{variant_label} N={nn} D={d}: got ({}, {}), want ({q}, {r})",
                        res.quotient, res.remainder
                    ))
                }
            }
            Err(e) => Some(format!("{variant_label} N={nn} D={d}: {e}")),
        }
    });
    (passes, total, failure)
}

fn run_verify(spec: &Spec) -> Result<bool, String> {
    let mut all_ok = true;
    let mut report_line = |label: String, passes: u64, total: u64, failure: Option<String>| {
        if let Some(msg) = failure {
            all_ok = false;
            println!("FAIL {passes}/{total} {label}: first counterexample: {msg}");
        } else {
            println!("PASS {passes}/{total} {label}");
        }
    };
    match spec.alg {
        Alg::Compnsub => {
            let variants = match spec.variant.as_deref() {
                Some(v) => vec![parse_variant(Some(v))?],
                None => vec![CnsVariant::I, CnsVariant::IIa, CnsVariant::IIb, CnsVariant::III],
            };
            let ks: Vec<u32> = match spec.k {
                Some(k) => vec![k],
                None => (2..=8).collect(),
            };
            for v in variants {
                for &k in &ks {
                    if k < v.min_width() {
                        continue;
                    }
                    let (p, t, f) = verify_compnsub(v, k);
                    report_line(format!("compnsub {v:?} k={k}"), p, t, f);
                }
            }
        }
        Alg::Long => {
            let variants = match spec.variant.as_deref() {
                Some(v) => vec![parse_variant(Some(v))?],
                None => vec![CnsVariant::I, CnsVariant::IIa, CnsVariant::IIb, CnsVariant::III],
            };
            let ns: Vec<u32> = spec.n.map(|n| vec![n]).unwrap_or_else(|| (2..=6).collect());
            for v in variants {
                for &n in &ns {
                    let ms: Vec<u32> = spec.m.map(|m| vec![m]).unwrap_or_else(|| (1..=n).collect());
                    for &m in &ms {
                        if m > n {
                            continue;
                        }
                        let c = build_long_division(n, m, v).map_err(|e| e.to_string())?;
                        let (p, t, f) =
                            verify_division(DivisionAlgorithm::Long, &format!("{v:?}"), &c, n, m);
                        report_line(format!("long {v:?} n={n} m={m}"), p, t, f);
                    }
                }
            }
        }
        Alg::Restoring => {
            let variants = match spec.variant.as_deref() {
                Some(v) => vec![parse_variant(Some(v))?],
                None => vec![CnsVariant::I, CnsVariant::IIa, CnsVariant::IIb, CnsVariant::III],
            };
            let ns: Vec<u32> = spec.n.map(|n| vec![n]).unwrap_or_else(|| (2..=5).collect());
            for v in variants {
                for &n in &ns {
                    let c = build_restoring_division(n, v).map_err(|e| e.to_string())?;
                    let (p, t, f) =
                        verify_division(DivisionAlgorithm::Restoring, &format!("{v:?}"), &c, n, n);
                    report_line(format!("restoring {v:?} n={n}"), p, t, f);
                }
            }
        }
        Alg::Nonrestoring => {
            let variants = match spec.variant.as_deref() {
                Some(v) => vec![parse_nr_variant(Some(v))?],
                None => vec![NonRestoringVariant::II, NonRestoringVariant::III],
            };
            let ns: Vec<u32> = spec.n.map(|n| vec![n]).unwrap_or_else(|| (2..=5).collect());
            for v in variants {
                for &n in &ns {
                    let c = build_non_restoring_division(n, v).map_err(|e| e.to_string())?;
                    let (p, t, f) = verify_division(
                        DivisionAlgorithm::NonRestoring,
                        &format!("{v:?}"),
                        &c,
                        n,
                        n,
                    );
                    report_line(format!("nonrestoring {v:?} n={n}"), p, t, f);
                }
            }
        }
        Alg::Ripple | Alg::Qcla | Alg::Gidney => {
            let ks: Vec<u32> = spec.k.map(|k| vec![k]).unwrap_or_else(|| (1..=6).collect());
            for &k in &ks {
                let c = build_from_spec(&Spec {
                    alg: spec.alg,
                    variant: None,
                    k: Some(k),
                    n: None,
                    m: None,
                })?;
                let a_reg = c.register("a").map_err(|e| e.to_string())?.to_vec();
                let b_reg = c.register("b").map_err(|e| e.to_string())?.to_vec();
                let z_reg = c.register("z").ok().map(|z| z.to_vec());
                let total = 1u64 << (2 * k);
                let (p, f) = sweep(total, |case| {
                    let a = case & ((1 << k) - 1);
                    let b = case >> k;
                    let mut s = BasisState::zeros(c.qubit_count());
                    s.write_register(&a_reg, a);
                    s.write_register(&b_reg, b);
                    let out = match simulate(&c, s) {
                        Ok(o) => o,
                        Err(e) => return Some(format!("a={a} b={b}: {e}")),
                    };
                    let sum = out.read_register(&b_reg);
                    if sum != (a + b) % (1 << k) {
                        return Some(format!("a={a} b={b}: sum {sum}"));
                    }
                    if let Some(z) = &z_reg {
                        if out.read_register(z) != (a + b) >> k {
                            return Some(format!("a={a} b={b}: bad carry"));
                        }
                    }
                    None
                });
                report_line(format!("adder k={k}"), p, total, f);
            }
        }
        Alg::QclaU1 | Alg::QclaU2 => {
            return Err("verify covers adders, compnsub and dividers; the carry units are \
                        exercised through the compnsub sweeps"
                .into());
        }
    }
    Ok(all_ok)
}

fn metric_rows() -> Vec<(&'static str, Metric)> {
    vec![
        ("toffoli_count", Metric::ToffoliCount),
        ("toffoli_depth", Metric::ToffoliDepth),
        ("t_count", Metric::TCount),
        ("t_depth", Metric::TDepth),
        ("cnot_count_toffoli_level", Metric::CnotToffoli),
        ("cnot_count_t_level", Metric::CnotT),
        ("qubits_total", Metric::Qubits),
    ]
}

fn measured_value(
    metric: Metric,
    tof: &qdiv::ResourceReport,
    tlv: &qdiv::ResourceReport,
) -> u64 {
    match metric {
        Metric::ToffoliCount => tof.toffoli_count,
        Metric::ToffoliDepth => tof.toffoli_depth,
        Metric::TCount => tlv.t_count,
        Metric::TDepth => tlv.t_depth,
        Metric::CnotToffoli => tof.cnot_count_toffoli_level,
        Metric::CnotT => tlv.cnot_count_t_level,
        Metric::Qubits => tof.qubits_total,
    }
}

fn kind_str(k: BoundKind) -> &'static str {
    match k {
        BoundKind::Exact => "=",
        BoundKind::UpperBound => "<=",
    }
}

fn run_report(spec: &Spec, metric: Option<MetricArg>, json: bool, csv: bool) -> Result<bool, String> {
    let circuit = build_from_spec(spec)?;
    let bounds = bounds_from_spec(spec)?
        .ok_or("report needs a compnsub or divider circuit with published formulas")?;
    let tof = count_resources(&circuit, CountLevel::ToffoliLevel).map_err(|e| e.to_string())?;
    let lowered = lower(&circuit, LoweringOptions::default()).map_err(|e| e.to_string())?;
    let tlv = count_resources(&lowered, CountLevel::TLevel).map_err(|e| e.to_string())?;

    let rows: Vec<(&'static str, Metric)> = match metric {
        Some(m) => metric_rows()
            .into_iter()
            .filter(|(_, mm)| *mm == m.to_metric())
            .collect(),
        None => metric_rows(),
    };

    let mut any_violation = false;
    let mut json_map = BTreeMap::new();
    let mut csv_lines = vec!["metric,measured,claimed,claimed_kind,check,check_kind,verdict".to_string()];
    let mut table = Vec::new();
    for (name, m) in rows {
        let cell: Option<Bound> = bounds.metric(m);
        let measured = measured_value(m, &tof, &tlv);
        let (claimed, ckind, check, kkind, verdict) = match cell {
            Some(b) => {
                let ok = match b.check_kind {
                    BoundKind::Exact => measured == b.check,
                    BoundKind::UpperBound => measured <= b.check,
                };
                if !ok {
                    any_violation = true;
                }
                (
                    b.claimed.to_string(),
                    kind_str(b.claimed_kind),
                    b.check.to_string(),
                    kind_str(b.check_kind),
                    if ok { "ok" } else { "VIOLATION" },
                )
            }
            None => ("-".to_string(), "", "-".to_string(), "", "n/a"),
        };
        if json {
            json_map.insert(
                name,
                serde_json::json!({
                    "measured": measured,
                    "claimed": cell.map(|b| b.claimed),
                    "claimed_kind": ckind,
                    "check": cell.map(|b| b.check),
                    "check_kind": kkind,
                    "verdict": verdict,
                }),
            );
        }
        csv_lines.push(format!("{name},{measured},{claimed},{ckind},{check},{kkind},{verdict}"));
        table.push(format!(
            "{name:<26} measured={measured:<10} claimed{ckind}{claimed:<10} check{kkind}{check:<10} {verdict}"
        ));
    }

    if json {
        println!("{}", serde_json::to_string_pretty(&json_map).unwrap());
    } else if csv {
        for line in csv_lines {
            println!("{line}");
        }
    } else {
        for line in table {
            println!("{line}");
        }
    }
    Ok(!any_violation)
}

fn run_compare(
    alg: Alg,
    baseline: Baseline,
    metric: Metric,
    n: u32,
    m: u32,
    json: bool,
    csv: bool,
) -> Result<(), String> {
    let (baseline_id, rows): (BaselineId, Vec<(String, CostSource)>) = match (alg, baseline) {
        (Alg::Long, Baseline::Opf24) => (
            BaselineId::Opf24Long,
            vec![
                ("I".into(), CostSource::Long(CnsVariant::I)),
                ("IIa".into(), CostSource::Long(CnsVariant::IIa)),
                ("IIb".into(), CostSource::Long(CnsVariant::IIb)),
                ("III".into(), CostSource::Long(CnsVariant::III)),
            ],
        ),
        (Alg::Long, Baseline::Ygw22) => (
            BaselineId::Ygw22Long,
            vec![
                ("I".into(), CostSource::Long(CnsVariant::I)),
                ("IIa".into(), CostSource::Long(CnsVariant::IIa)),
                ("IIb".into(), CostSource::Long(CnsVariant::IIb)),
                ("III".into(), CostSource::Long(CnsVariant::III)),
            ],
        ),
        (Alg::Restoring, Baseline::Tmcvh19) => (
            BaselineId::Tmcvh19Restoring,
            vec![
                ("I".into(), CostSource::Restoring(CnsVariant::I)),
                ("IIa".into(), CostSource::Restoring(CnsVariant::IIa)),
                ("IIb".into(), CostSource::Restoring(CnsVariant::IIb)),
                ("III".into(), CostSource::Restoring(CnsVariant::III)),
            ],
        ),
        (Alg::Nonrestoring, Baseline::Tmcvh19) => (
            BaselineId::Tmcvh19NonRestoring,
            vec![
                ("II".into(), CostSource::NonRestoring(NonRestoringVariant::II)),
                ("III".into(), CostSource::NonRestoring(NonRestoringVariant::III)),
            ],
        ),
        _ => return Err("unsupported algorithm/baseline combination".into()),
    };

    let mut out_rows = Vec::new();
    for (label, source) in rows {
        match ratio_report(metric, source, CostSource::Baseline(baseline_id), n, m) {
            Ok(r) => out_rows.push((label, Some(r))),
            Err(qdiv::resources::FormulaError::MetricUnavailable) => out_rows.push((label, None)),
            Err(e) => return Err(e.to_string()),
        }
    }

    if json {
        let map: BTreeMap<String, Option<f64>> = out_rows
            .iter()
            .map(|(l, r)| (l.clone(), r.map(|r| (r * 100.0).round() / 100.0)))
            .collect();
        println!("{}", serde_json::to_string_pretty(&map).unwrap());
    } else if csv {
        println!("variant,ratio");
        for (label, r) in &out_rows {
            match r {
                Some(r) => println!("{label},{r:.2}"),
                None => println!("{label},-"),
            }
        }
    } else {
        println!("ratio of {} vs baseline at n={n} m={m}", metric.name());
        for (label, r) in &out_rows {
            match r {
                Some(r) => println!("{label:<4} {r:.2}"),
                None => println!("{label:<4} -"),
            }
        }
    }
    Ok(())
}

fn run_simulate(
    spec: &Spec,
    a: Option<u64>,
    b: Option<u64>,
    dividend: Option<u64>,
    divisor: Option<u64>,
    assignments: &[String],
) -> Result<(), String> {
    let circuit = build_from_spec(spec)?;
    match spec.alg {
        Alg::Long | Alg::Restoring | Alg::Nonrestoring if assignments.is_empty() => {
            let nn = dividend.ok_or("--dividend required")?;
            let d = divisor.ok_or("--divisor required")?;
            let res = simulate_division(&circuit, nn, d)?;
            println!("quotient={} remainder={}", res.quotient, res.remainder);
            for (name, value) in res.readouts {
                if name != "quotient" && name != "remainder" {
                    println!("{name}={value}");
                }
            }
        }
        _ => {
            let mut s = BasisState::zeros(circuit.qubit_count());
            if let Some(a) = a {
                s.write_register(circuit.register("a").map_err(|e| e.to_string())?, a);
            }
            if let Some(b) = b {
                s.write_register(circuit.register("b").map_err(|e| e.to_string())?, b);
            }
            for pair in assignments {
                let (name, value) = pair
                    .split_once('=')
                    .ok_or_else(|| format!("expected NAME=VALUE, got {pair}"))?;
                let value: u64 = value.parse().map_err(|e| format!("{pair}: {e}"))?;
                s.write_register(circuit.register(name).map_err(|e| e.to_string())?, value);
            }
            let out = simulate(&circuit, s).map_err(|e| e.to_string())?;
            for (name, reg) in circuit.registers() {
                println!("{name}={}", out.read_register(reg));
            }
        }
    }
    Ok(())
}

fn run_build(spec: &Spec, strategy: Option<Strategy>, output: Option<String>) -> Result<(), String> {
    let mut circuit = build_from_spec(spec)?;
    if let Some(s) = strategy {
        let options = LoweringOptions {
            strategy: match s {
                Strategy::Naive7t => LoweringStrategy::Naive7T,
                Strategy::Paired12t => LoweringStrategy::Paired12T,
            },
            expand_and_gadgets: false,
        };
        circuit = lower(&circuit, options).map_err(|e| e.to_string())?;
    }
    let text = qdiv::export::to_qasm(&circuit);
    match output {
        Some(path) => {
            let mut f = std::fs::File::create(&path).map_err(|e| e.to_string())?;
            f.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
            println!("wrote {path}");
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<bool, String> = match cli.command {
        Command::Build { spec, lower, output } => run_build(&spec, lower, output).map(|_| true),
        Command::Simulate {
            spec,
            a,
            b,
            dividend,
            divisor,
            assignments,
        } => run_simulate(&spec, a, b, dividend, divisor, &assignments).map(|_| true),
        Command::Verify { spec } => run_verify(&spec),
        Command::Report { spec, metric, json, csv } => run_report(&spec, metric, json, csv),
        Command::Compare {
            alg,
            baseline,
            metric,
            asymptotic,
            n,
            m,
            json,
            csv,
        } => {
            let (n, m) = if asymptotic {
                (ASYMPTOTIC_N, ASYMPTOTIC_M)
            } else {
                match (n, m) {
                    (Some(n), m) => (n, m.unwrap_or(n / 2)),
                    _ => {
                        eprintln!("error: pass --asymptotic or --n (and optionally --m)");
                        return ExitCode::from(2);
                    }
                }
            };
            run_compare(alg, baseline, metric.to_metric(), n, m, json, csv).map(|_| true)
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
