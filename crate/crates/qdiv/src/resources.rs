//! Closed-form resource formulas, prior-work baselines, and the validator
//! that compares measured counts against them.
//!
//! Every cell carries two values. `claimed` is the published closed form,
//! used for reports and ratio tables. `check` is what this crate's
//! constructions are held to: it differs where the published number assumes
//! an eleven-T fused Toffoli pair that is only cited, not constructed (the
//! greedy pairing here achieves twelve), and on the non-restoring circuits,
//! whose published accounting omits the conditioning fan-outs and prices the
//! final correction below what any compare-and-subtract of that form can do.

use serde::Serialize;
use thiserror::Error;

use crate::adders::{flog2, flog2_third, network_toffoli_count, omega, pcell_count};
use crate::compnsub::CnsVariant;
use crate::dividers::NonRestoringVariant;
use crate::metrics::ResourceReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    Exact,
    UpperBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bound {
    /// Published closed-form value.
    pub claimed: u64,
    pub claimed_kind: BoundKind,
    /// Value the built circuit is validated against.
    pub check: u64,
    pub check_kind: BoundKind,
}

impl Bound {
    fn exact(v: u64) -> Bound {
        Bound {
            claimed: v,
            claimed_kind: BoundKind::Exact,
            check: v,
            check_kind: BoundKind::Exact,
        }
    }

    fn upper(v: u64) -> Bound {
        Bound {
            claimed: v,
            claimed_kind: BoundKind::UpperBound,
            check: v,
            check_kind: BoundKind::UpperBound,
        }
    }

    fn with_check(mut self, v: u64, kind: BoundKind) -> Bound {
        self.check = v;
        self.check_kind = kind;
        self
    }
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct ResourceBounds {
    pub toffoli_count: Option<Bound>,
    pub toffoli_depth: Option<Bound>,
    pub t_count: Option<Bound>,
    pub t_depth: Option<Bound>,
    pub cnot_count_toffoli_level: Option<Bound>,
    pub cnot_count_t_level: Option<Bound>,
    pub qubits_total: Option<Bound>,
    pub qubits_ancilla: Option<Bound>,
    pub qubits_garbage: Option<Bound>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("width {width} outside the validity range (minimum {min})")]
    InvalidWidth { width: u32, min: u32 },
    #[error("widths invalid: {0}")]
    InvalidWidths(String),
    #[error("metric not available for this circuit")]
    MetricUnavailable,
    #[error("formula evaluated negative")]
    NegativeFormula,
    #[error("ratio denominator is zero")]
    DivisionByZero,
}

fn nonneg(v: i128) -> u64 {
    debug_assert!(v >= 0, "formula went negative: {v}");
    v.max(0) as u64
}

/// Table of compare-and-subtract costs at width k.
pub fn formula_compnsub(variant: CnsVariant, k: u32) -> Result<ResourceBounds, FormulaError> {
    if k < 1 {
        return Err(FormulaError::InvalidWidth { width: k, min: 1 });
    }
    if k == 1 {
        return Ok(width1_bounds(variant));
    }
    let kk = i128::from(k);
    let w = i128::from(omega(k));
    let lg = i128::from(flog2(k));
    let lg3 = i128::from(flog2_third(k));
    let net = i128::from(network_toffoli_count(k));
    let net1 = i128::from(network_toffoli_count(k - 1));

    let mut b = ResourceBounds::default();
    match variant {
        CnsVariant::I => {
            b.toffoli_count = Some(Bound::exact(nonneg(3 * kk - 1)));
            b.toffoli_depth = Some(Bound::upper(nonneg(3 * kk - 1)));
            b.t_count = Some(
                Bound::upper(nonneg(18 * kk - 4))
                    .with_check(nonneg(19 * kk - 5), BoundKind::Exact),
            );
            b.t_depth = Some(Bound::upper(nonneg(9 * kk - 3)));
            b.cnot_count_toffoli_level = Some(Bound::exact(nonneg(4 * kk - 5)));
            b.cnot_count_t_level = Some(
                Bound::upper(nonneg(25 * kk - 12)).with_check(nonneg(25 * kk - 12), BoundKind::Exact),
            );
            b.qubits_total = Some(Bound::exact(nonneg(2 * kk + 1)));
            b.qubits_ancilla = Some(Bound::exact(0));
        }
        CnsVariant::IIa | CnsVariant::IIb => {
            let toffoli_check = nonneg(3 * kk - 1 + net + net1);
            b.toffoli_count = Some(
                Bound::upper(nonneg(11 * kk - 6 * w - 6 * lg - 4))
                    .with_check(toffoli_check, BoundKind::Exact),
            );
            let step6 = if variant == CnsVariant::IIa {
                // Fused pairs on the shared conditioning qubit.
                if k % 2 == 0 {
                    6 * kk
                } else {
                    6 * kk + 1
                }
            } else {
                7 * kk
            };
            let t_check = nonneg(7 * (2 * kk - 1) + 7 * (net + net1) + step6);
            if variant == CnsVariant::IIa {
                b.toffoli_depth = Some(Bound::upper(nonneg(kk + 2 * lg + 2 * lg3 + 8)));
                b.t_count = Some(
                    Bound::upper(nonneg(76 * kk - 42 * w - 42 * lg - 21))
                        .with_check(t_check, BoundKind::UpperBound),
                );
                b.t_depth = Some(Bound::upper(nonneg(3 * kk + 6 * lg + 6 * lg3 + 24)));
                b.cnot_count_toffoli_level = Some(Bound::exact(nonneg(6 * kk - 2)));
                b.cnot_count_t_level = Some(
                    Bound::upper(nonneg(83 * kk - 42 * w - 42 * lg - 30)).with_check(
                        nonneg(6 * kk - 2) + 7 * toffoli_check,
                        BoundKind::Exact,
                    ),
                );
                b.qubits_total = Some(Bound::exact(nonneg(4 * kk - w - lg)));
                b.qubits_ancilla = Some(Bound::exact(nonneg(2 * kk - w - lg - 1)));
            } else {
                b.toffoli_depth = Some(Bound::upper(nonneg(2 * lg + 2 * lg3 + 9)));
                b.t_count = Some(
                    Bound::upper(nonneg(77 * kk - 42 * w - 42 * lg - 21))
                        .with_check(t_check, BoundKind::UpperBound),
                );
                b.t_depth = Some(Bound::upper(nonneg(6 * lg + 6 * lg3 + 27)));
                b.cnot_count_toffoli_level = Some(Bound::exact(nonneg(8 * kk - 4)));
                b.cnot_count_t_level = Some(
                    Bound::upper(nonneg(85 * kk - 42 * w - 42 * lg - 32)).with_check(
                        nonneg(8 * kk - 4) + 7 * toffoli_check,
                        BoundKind::Exact,
                    ),
                );
                b.qubits_total = Some(Bound::exact(nonneg(5 * kk - w - lg - 1)));
                b.qubits_ancilla = Some(Bound::exact(nonneg(3 * kk - w - lg - 2)));
            }
        }
        CnsVariant::III => {
            b.toffoli_count = Some(Bound::exact(nonneg(kk)));
            b.toffoli_depth = Some(Bound::upper(nonneg(kk)));
            b.t_count = Some(Bound::upper(nonneg(11 * kk)).with_check(nonneg(11 * kk), BoundKind::Exact));
            b.t_depth = Some(Bound::upper(nonneg(5 * kk)));
            b.cnot_count_toffoli_level = None;
            b.cnot_count_t_level = Some(
                Bound::upper(nonneg(19 * kk - 7)).with_check(nonneg(19 * kk - 7), BoundKind::Exact),
            );
            b.qubits_total = Some(Bound::exact(nonneg(3 * kk)));
            b.qubits_ancilla = Some(Bound::exact(nonneg(kk - 1)));
        }
    }
    b.qubits_garbage = Some(Bound::exact(1));
    Ok(b)
}

/// Width-1 instances degenerate to one carry gadget plus one conditioned
/// Toffoli; the table cells are those of the actual tiny circuit.
fn width1_bounds(variant: CnsVariant) -> ResourceBounds {
    let mut b = ResourceBounds::default();
    match variant {
        CnsVariant::III => {
            b.toffoli_count = Some(Bound::exact(1));
            b.toffoli_depth = Some(Bound::upper(1));
            b.t_count = Some(Bound::exact(11));
            b.t_depth = Some(Bound::upper(5));
            b.cnot_count_t_level = Some(Bound::exact(13));
            b.qubits_total = Some(Bound::exact(3));
            b.qubits_ancilla = Some(Bound::exact(0));
        }
        _ => {
            b.toffoli_count = Some(Bound::exact(2));
            b.toffoli_depth = Some(Bound::upper(2));
            b.t_count = Some(Bound::exact(14));
            b.t_depth = Some(Bound::upper(6));
            b.cnot_count_toffoli_level = Some(Bound::exact(0));
            b.cnot_count_t_level = Some(Bound::exact(14));
            b.qubits_total = Some(Bound::exact(3));
            b.qubits_ancilla = Some(Bound::exact(0));
        }
    }
    b.qubits_garbage = Some(Bound::exact(1));
    b
}

fn combine_kind(a: BoundKind, b: BoundKind) -> BoundKind {
    if a == BoundKind::Exact && b == BoundKind::Exact {
        BoundKind::Exact
    } else {
        BoundKind::UpperBound
    }
}

fn add_cell(acc: Option<Bound>, cell: Option<Bound>, times: u64) -> Option<Bound> {
    match (acc, cell) {
        (Some(a), Some(c)) => Some(Bound {
            claimed: a.claimed + times * c.claimed,
            claimed_kind: combine_kind(a.claimed_kind, c.claimed_kind),
            check: a.check + times * c.check,
            check_kind: combine_kind(a.check_kind, c.check_kind),
        }),
        _ => None,
    }
}

fn sum_windows(windows: &[(ResourceBounds, u64)]) -> ResourceBounds {
    let zero = Some(Bound::exact(0));
    let mut out = ResourceBounds {
        toffoli_count: zero,
        toffoli_depth: zero,
        t_count: zero,
        t_depth: zero,
        cnot_count_toffoli_level: zero,
        cnot_count_t_level: zero,
        ..ResourceBounds::default()
    };
    for (cell, times) in windows {
        out.toffoli_count = add_cell(out.toffoli_count, cell.toffoli_count, *times);
        out.toffoli_depth = add_cell(out.toffoli_depth, cell.toffoli_depth, *times);
        out.t_count = add_cell(out.t_count, cell.t_count, *times);
        out.t_depth = add_cell(out.t_depth, cell.t_depth, *times);
        out.cnot_count_toffoli_level =
            add_cell(out.cnot_count_toffoli_level, cell.cnot_count_toffoli_level, *times);
        out.cnot_count_t_level =
            add_cell(out.cnot_count_t_level, cell.cnot_count_t_level, *times);
    }
    out
}

fn cns_work(variant: CnsVariant, k: u32) -> u64 {
    if k == 1 {
        0
    } else {
        variant.work_qubits(k)
    }
}

pub fn formula_long_division(
    variant: CnsVariant,
    n: u32,
    m: u32,
) -> Result<ResourceBounds, FormulaError> {
    if m < 1 || m > n {
        return Err(FormulaError::InvalidWidths(format!("need 1 <= m <= n, got n={n} m={m}")));
    }
    let first = formula_compnsub(variant, m)?;
    let mut bounds = if n > m {
        let rest = formula_compnsub(variant, m + 1)?;
        sum_windows(&[(first, 1), (rest, u64::from(n - m))])
    } else {
        sum_windows(&[(first, 1)])
    };
    let max_width = if n > m { m + 1 } else { m };
    let data = u64::from(n) + u64::from(m) + u64::from(n - m + 1);
    let prepend = u64::from(n > m);
    let work = cns_work(variant, max_width);
    bounds.qubits_total = Some(Bound::exact(data + prepend + work));
    bounds.qubits_ancilla = Some(Bound::exact(prepend + work));
    bounds.qubits_garbage = Some(Bound::exact(0));
    Ok(bounds)
}

pub fn formula_restoring_division(
    variant: CnsVariant,
    n: u32,
) -> Result<ResourceBounds, FormulaError> {
    if n < 1 {
        return Err(FormulaError::InvalidWidth { width: n, min: 1 });
    }
    let cell = formula_compnsub(variant, n)?;
    let mut bounds = sum_windows(&[(cell, u64::from(n))]);
    let work = cns_work(variant, n);
    bounds.qubits_total = Some(Bound::exact(3 * u64::from(n) + work));
    bounds.qubits_ancilla = Some(Bound::exact(work));
    bounds.qubits_garbage = Some(Bound::exact(0));
    Ok(bounds)
}

/// Toffoli count of the lookahead adder without carry-out.
fn qcla_mod_toffolis(k: u32) -> u64 {
    if k == 1 {
        return 0;
    }
    2 * u64::from(k - 1) + 2 * network_toffoli_count(k - 1)
}

/// Toffoli-depth bound of the lookahead adder without carry-out.
fn qcla_mod_depth_bound(k: u32) -> u64 {
    if k == 1 {
        return 0;
    }
    if k == 2 {
        return 2;
    }
    2 * (flog2(k - 1) + flog2_third(k - 1) + 3) + 2
}

fn qcla_mod_cnots(k: u32) -> u64 {
    if k == 1 {
        return 1;
    }
    // propagate layer + sums + two conditioning layers around the undo.
    u64::from(k) + u64::from(k - 1) + 2 * u64::from(k.saturating_sub(2))
}

fn gidney_cnots_t_level(k: u32) -> u64 {
    if k == 1 {
        1
    } else {
        13 * u64::from(k) - 17
    }
}

pub fn formula_non_restoring_division(
    variant: NonRestoringVariant,
    n: u32,
) -> Result<ResourceBounds, FormulaError> {
    if n < 2 {
        return Err(FormulaError::InvalidWidth { width: n, min: 2 });
    }
    let nn = i128::from(n);
    let w = i128::from(omega(n));
    let w1 = i128::from(omega(n - 1));
    let lg = i128::from(flog2(n));
    let lg1 = i128::from(flog2(n - 1));
    let lg3 = i128::from(flog2_third(n));
    let lg31 = i128::from(flog2_third(n - 1));
    let adders = u64::from(n) + 1;
    let fan_cnots = 2 * u64::from(n) * u64::from(n - 1) + 2;

    let mut b = ResourceBounds::default();
    match variant {
        NonRestoringVariant::II => {
            let cns = formula_compnsub(CnsVariant::IIb, n)?;
            let full_adder_tof = nonneg(10 * nn - 3 * w - 3 * w1 - 3 * lg - 3 * lg1 - 7);
            let cns_tof = cns.toffoli_count.unwrap();
            b.toffoli_count = Some(Bound {
                claimed: u64::from(n) * full_adder_tof + cns_tof.claimed,
                claimed_kind: BoundKind::UpperBound,
                check: adders * qcla_mod_toffolis(n) + cns_tof.check,
                check_kind: BoundKind::Exact,
            });
            let adder_depth = nonneg(lg + lg1 + lg3 + lg31 + 8);
            let cns_tofd = cns.toffoli_depth.unwrap();
            b.toffoli_depth = Some(Bound {
                claimed: u64::from(n) * adder_depth + cns_tofd.claimed,
                claimed_kind: BoundKind::UpperBound,
                check: adders * qcla_mod_depth_bound(n) + cns_tofd.check,
                check_kind: BoundKind::UpperBound,
            });
            let cns_t = cns.t_count.unwrap();
            b.t_count = Some(Bound {
                claimed: 7 * u64::from(n) * full_adder_tof + cns_t.claimed,
                claimed_kind: BoundKind::UpperBound,
                check: 7 * adders * qcla_mod_toffolis(n) + cns_t.check,
                check_kind: BoundKind::UpperBound,
            });
            let cns_td = cns.t_depth.unwrap();
            b.t_depth = Some(Bound {
                claimed: 3 * u64::from(n) * adder_depth + cns_td.claimed,
                claimed_kind: BoundKind::UpperBound,
                check: 3 * adders * qcla_mod_depth_bound(n) + cns_td.check,
                check_kind: BoundKind::UpperBound,
            });
            let cns_ctof = cns.cnot_count_toffoli_level.unwrap();
            b.cnot_count_toffoli_level = Some(Bound {
                claimed: u64::from(n) * nonneg(4 * nn - 5) + cns_ctof.claimed,
                claimed_kind: BoundKind::UpperBound,
                check: adders * qcla_mod_cnots(n) + cns_ctof.check + fan_cnots,
                check_kind: BoundKind::Exact,
            });
            let cns_ct = cns.cnot_count_t_level.unwrap();
            b.cnot_count_t_level = Some(Bound {
                claimed: u64::from(n) * nonneg(74 * nn - 54) + nonneg(85 * nn - 32),
                claimed_kind: BoundKind::UpperBound,
                check: adders * (qcla_mod_cnots(n) + 7 * qcla_mod_toffolis(n))
                    + cns_ct.check
                    + fan_cnots,
                check_kind: BoundKind::Exact,
            });
            let adder_work = u64::from(n - 1) + pcell_count(n - 1);
            let work = adder_work.max(CnsVariant::IIb.work_qubits(n));
            b.qubits_total = Some(Bound::exact(3 * u64::from(n) - 1 + 1 + work));
            b.qubits_ancilla = Some(Bound::exact(1 + work));
        }
        NonRestoringVariant::III => {
            let cns = formula_compnsub(CnsVariant::III, n)?;
            b.toffoli_count = Some(Bound {
                claimed: u64::from(n),
                claimed_kind: BoundKind::UpperBound,
                check: cns.toffoli_count.unwrap().check,
                check_kind: BoundKind::Exact,
            });
            b.toffoli_depth = Some(Bound::upper(u64::from(n)));
            let adder_t = nonneg(4 * nn - 4);
            b.t_count = Some(Bound {
                claimed: u64::from(n) * adder_t + nonneg(11 * nn),
                claimed_kind: BoundKind::Exact,
                check: adders * adder_t + cns.t_count.unwrap().check,
                check_kind: BoundKind::Exact,
            });
            b.t_depth = Some(Bound {
                claimed: u64::from(n) * nonneg(2 * nn - 2) + nonneg(5 * nn),
                claimed_kind: BoundKind::Exact,
                check: adders * nonneg(2 * nn - 2) + cns.t_depth.unwrap().check,
                check_kind: BoundKind::UpperBound,
            });
            b.cnot_count_toffoli_level = None;
            b.cnot_count_t_level = Some(Bound {
                claimed: u64::from(n) * nonneg(16 * nn - 15) + nonneg(19 * nn - 7),
                claimed_kind: BoundKind::Exact,
                check: adders * gidney_cnots_t_level(n)
                    + cns.cnot_count_t_level.unwrap().check
                    + fan_cnots,
                check_kind: BoundKind::Exact,
            });
            b.qubits_total = Some(Bound::exact(4 * u64::from(n) - 1));
            b.qubits_ancilla = Some(Bound::exact(u64::from(n)));
        }
    }
    b.qubits_garbage = Some(Bound::exact(0));
    Ok(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    ToffoliCount,
    ToffoliDepth,
    TCount,
    TDepth,
    CnotToffoli,
    CnotT,
    Qubits,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::ToffoliCount => "toffoli_count",
            Metric::ToffoliDepth => "toffoli_depth",
            Metric::TCount => "t_count",
            Metric::TDepth => "t_depth",
            Metric::CnotToffoli => "cnot_count_toffoli_level",
            Metric::CnotT => "cnot_count_t_level",
            Metric::Qubits => "qubits_total",
        }
    }
}

impl ResourceBounds {
    pub fn metric(&self, metric: Metric) -> Option<Bound> {
        match metric {
            Metric::ToffoliCount => self.toffoli_count,
            Metric::ToffoliDepth => self.toffoli_depth,
            Metric::TCount => self.t_count,
            Metric::TDepth => self.t_depth,
            Metric::CnotToffoli => self.cnot_count_toffoli_level,
            Metric::CnotT => self.cnot_count_t_level,
            Metric::Qubits => self.qubits_total,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaselineId {
    Opf24Long,
    Tmcvh19Restoring,
    Tmcvh19NonRestoring,
    Ygw22Long,
}

/// Published baseline costs; dashes in the comparison tables surface as
/// `MetricUnavailable`.
pub fn formula_baseline(
    id: BaselineId,
    metric: Metric,
    n: u32,
    m: u32,
) -> Result<u64, FormulaError> {
    if n < 1 || m < 1 || m > n {
        return Err(FormulaError::InvalidWidths(format!("n={n} m={m}")));
    }
    let n = i128::from(n);
    let m = i128::from(m);
    let value = match (id, metric) {
        (BaselineId::Opf24Long, Metric::TCount) => 46 * m * n - 46 * m * m + 48 * m - 2 * n - 2,
        (BaselineId::Opf24Long, Metric::TDepth) => 20 * m * n - 20 * m * m + 20 * m,
        (BaselineId::Opf24Long, Metric::CnotT) => {
            60 * n * m - 60 * m * m - 13 * n + 73 * m - 13
        }
        (BaselineId::Opf24Long, Metric::Qubits) => 3 * n,
        (BaselineId::Tmcvh19Restoring, Metric::TCount) => 35 * n * n - 28 * n,
        (BaselineId::Tmcvh19Restoring, Metric::TDepth) => 15 * n * n - 12 * n,
        (BaselineId::Tmcvh19Restoring, Metric::CnotToffoli) => 9 * n * n - 8 * n,
        (BaselineId::Tmcvh19Restoring, Metric::CnotT) => 44 * n * n - n,
        (BaselineId::Tmcvh19Restoring, Metric::Qubits) => 3 * n,
        (BaselineId::Tmcvh19NonRestoring, Metric::TCount) => 14 * n * n + 21 * n - 28,
        (BaselineId::Tmcvh19NonRestoring, Metric::TDepth) => 6 * n * n + 9 * n - 4,
        (BaselineId::Tmcvh19NonRestoring, Metric::CnotToffoli) => 5 * n * n + n - 6,
        (BaselineId::Tmcvh19NonRestoring, Metric::CnotT) => 19 * n * n + 15 * n + 8,
        (BaselineId::Tmcvh19NonRestoring, Metric::Qubits) => 5 * n,
        (BaselineId::Ygw22Long, Metric::TCount) => 126 * m * (n - m + 1),
        (BaselineId::Ygw22Long, Metric::TDepth) => 54 * m * (n - m + 1),
        (BaselineId::Ygw22Long, Metric::Qubits) => 4 * n - m,
        _ => return Err(FormulaError::MetricUnavailable),
    };
    if value < 0 {
        return Err(FormulaError::NegativeFormula);
    }
    Ok(value as u64)
}

/// One side of a ratio: a published baseline or one of this crate's
/// division circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostSource {
    Baseline(BaselineId),
    Long(CnsVariant),
    Restoring(CnsVariant),
    NonRestoring(NonRestoringVariant),
}

pub fn source_value(source: CostSource, metric: Metric, n: u32, m: u32) -> Result<u64, FormulaError> {
    match source {
        CostSource::Baseline(id) => formula_baseline(id, metric, n, m),
        CostSource::Long(v) => formula_long_division(v, n, m)?
            .metric(metric)
            .map(|b| b.claimed)
            .ok_or(FormulaError::MetricUnavailable),
        CostSource::Restoring(v) => formula_restoring_division(v, n)?
            .metric(metric)
            .map(|b| b.claimed)
            .ok_or(FormulaError::MetricUnavailable),
        CostSource::NonRestoring(v) => formula_non_restoring_division(v, n)?
            .metric(metric)
            .map(|b| b.claimed)
            .ok_or(FormulaError::MetricUnavailable),
    }
}

/// Formula ratio numerator/denominator at a concrete size.
pub fn ratio_report(
    metric: Metric,
    numerator: CostSource,
    denominator: CostSource,
    n: u32,
    m: u32,
) -> Result<f64, FormulaError> {
    let num = source_value(numerator, metric, n, m)?;
    let den = source_value(denominator, metric, n, m)?;
    if den == 0 {
        return Err(FormulaError::DivisionByZero);
    }
    Ok(num as f64 / den as f64)
}

/// Large-size convention for the published ratio tables: n = 2048, m = n/2.
pub const ASYMPTOTIC_N: u32 = 2048;
pub const ASYMPTOTIC_M: u32 = 1024;

pub fn ratio_asymptotic(
    metric: Metric,
    numerator: CostSource,
    denominator: CostSource,
) -> Result<f64, FormulaError> {
    ratio_report(metric, numerator, denominator, ASYMPTOTIC_N, ASYMPTOTIC_M)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundViolation {
    pub metric: &'static str,
    pub measured: u64,
    pub bound: u64,
    pub kind: BoundKind,
}

impl std::fmt::Display for BoundViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rel = match self.kind {
            BoundKind::Exact => "!=",
            BoundKind::UpperBound => ">",
        };
        write!(f, "{}: measured {} {} bound {}", self.metric, self.measured, rel, self.bound)
    }
}

fn check_one(
    violations: &mut Vec<BoundViolation>,
    metric: &'static str,
    measured: u64,
    bound: Option<Bound>,
) {
    if let Some(b) = bound {
        let ok = match b.check_kind {
            BoundKind::Exact => measured == b.check,
            BoundKind::UpperBound => measured <= b.check,
        };
        if !ok {
            violations.push(BoundViolation {
                metric,
                measured,
                bound: b.check,
                kind: b.check_kind,
            });
        }
    }
}

/// Compares measured reports against a bounds row. `toffoli_report` comes
/// from counting the built circuit, `t_report` from counting its lowering.
pub fn validate_measurements(
    toffoli_report: &ResourceReport,
    t_report: &ResourceReport,
    bounds: &ResourceBounds,
) -> Vec<BoundViolation> {
    let mut v = Vec::new();
    check_one(&mut v, "toffoli_count", toffoli_report.toffoli_count, bounds.toffoli_count);
    check_one(&mut v, "toffoli_depth", toffoli_report.toffoli_depth, bounds.toffoli_depth);
    check_one(
        &mut v,
        "cnot_count_toffoli_level",
        toffoli_report.cnot_count_toffoli_level,
        bounds.cnot_count_toffoli_level,
    );
    check_one(&mut v, "t_count", t_report.t_count, bounds.t_count);
    check_one(&mut v, "t_depth", t_report.t_depth, bounds.t_depth);
    check_one(
        &mut v,
        "cnot_count_t_level",
        t_report.cnot_count_t_level,
        bounds.cnot_count_t_level,
    );
    check_one(&mut v, "qubits_total", toffoli_report.qubits_total, bounds.qubits_total);
    check_one(&mut v, "qubits_ancilla", toffoli_report.qubits_ancilla, bounds.qubits_ancilla);
    check_one(&mut v, "qubits_garbage", toffoli_report.qubits_garbage, bounds.qubits_garbage);
    v
}
