//! Step-by-step audit of a reduction argument for the Brouwer bound.
//!
//! Conventions: a parameter `t` here means "the graph is hypothesized to
//! violate the bound at `t + 1`". The max-degree case isolates the max-degree
//! vertex `v` and claims a violation at `t`; the complement case passes to
//! the complement, isolates a lower-degree vertex `v1`, and claims a violation
//! at `t* - 1` with `t* = n - t - 2`. `ReductionStep::output_t` always records
//! the claimed violation index of the child, so the child's parameter is
//! `output_t - 1`.

use serde::Serialize;

use crate::brouwer::{excess_from_spectrum, BrouwerReport};
use crate::error::AuditError;
use crate::graph::{Graph, Vertex};
use crate::graph6::write_graph6;
use crate::spectral::{default_tol, laplacian_spectrum, Spectrum};

/// Which interlacing chain to test between `G` and `G - v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InterlacingVariant {
    /// `mu_i(G) >= mu_i(G-v) >= mu_{i+1}(G)`
    PaperStrict,
    /// `mu_i(G) >= mu_i(G-v) >= mu_{i+1}(G) - 1`
    UnitSlack,
}

impl InterlacingVariant {
    fn lower_slack(self) -> f64 {
        match self {
            InterlacingVariant::PaperStrict => 0.0,
            InterlacingVariant::UnitSlack => 1.0,
        }
    }
}

/// One failed link of an interlacing chain: `left >= right` does not hold.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InterlacingViolation {
    /// 1-based eigenvalue index `i`.
    pub index: usize,
    pub left: f64,
    pub right: f64,
}

/// Checks both links of the chain for `i = 1..n-1`, comparing with tolerance `1e-8 * n`.
pub fn interlacing_violations(
    g: &Graph,
    v: Vertex,
    variant: InterlacingVariant,
) -> Result<Vec<InterlacingViolation>, AuditError> {
    let h = g.isolate_vertex(v)?;
    let sg = laplacian_spectrum(g)?;
    let sh = laplacian_spectrum(&h)?;
    Ok(interlacing_from_spectra(&sg, &sh, variant))
}

pub fn interlacing_from_spectra(
    sg: &Spectrum,
    sh: &Spectrum,
    variant: InterlacingVariant,
) -> Vec<InterlacingViolation> {
    let n = sg.n();
    let eps = default_tol(n);
    let mut out = Vec::new();
    for i in 1..n {
        let upper = (sg.mu(i), sh.mu(i));
        let lower = (sh.mu(i), sg.mu(i + 1) - variant.lower_slack());
        for (left, right) in [upper, lower] {
            if left < right - eps {
                out.push(InterlacingViolation { index: i, left, right });
            }
        }
    }
    out
}

/// One audited inequality `left >= right`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditStep {
    pub name: &'static str,
    pub left: f64,
    pub right: f64,
    pub slack: f64,
    pub holds: bool,
}

impl AuditStep {
    pub fn new(name: &'static str, left: f64, right: f64, eps: f64) -> Self {
        let slack = left - right;
        AuditStep {
            name,
            left,
            right,
            slack,
            holds: slack >= -eps,
        }
    }
}

pub const STEP_INTERLACING: &str = "interlacing-shift";
pub const STEP_HYPOTHESIS: &str = "hypothesis";
pub const STEP_MU1_LE_N: &str = "mu1-le-n";
pub const STEP_EXCESS_STRICT: &str = "excess-implication-strict";
pub const STEP_EXCESS_UNIT: &str = "excess-implication-unit-slack";

/// Audit of the max-degree case on one `(G, t)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub graph6: String,
    pub t: usize,
    pub v: Vertex,
    pub degree: usize,
    pub steps: Vec<AuditStep>,
    pub notes: Vec<String>,
}

impl AuditReport {
    pub fn step(&self, name: &str) -> Option<&AuditStep> {
        self.steps.iter().find(|s| s.name == name)
    }

    pub fn failed_steps(&self) -> Vec<&'static str> {
        self.steps.iter().filter(|s| !s.holds).map(|s| s.name).collect()
    }

    pub fn all_hold(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }
}

fn check_t(g: &Graph, t: usize) -> Result<(), AuditError> {
    let n = g.n();
    if t < 2 || t + 2 > n {
        return Err(AuditError::TRange {
            t,
            lo: 2,
            hi: n.saturating_sub(2),
        });
    }
    Ok(())
}

const COMPLEMENT_NOTE: &str =
    "mu1 <= n checked directly; complement relation in use is mu_i(co-G) = n - mu_(n-i)(G), i < n";

/// Audits the max-degree case chain for `2 <= t <= n-2` with `v` the max-degree vertex.
///
/// Steps, each as `left >= right`:
/// - `interlacing-shift`: `S_t(G-v) >= S_{t+1}(G) - mu_1(G)`
/// - `hypothesis`: `d_v + t + 1 >= n`
/// - `mu1-le-n`: `n >= mu_1(G)`
/// - `excess-implication-strict`: `E_t(G-v) >= E_{t+1}(G) + (t+1) + d_v - mu_1(G)`
/// - `excess-implication-unit-slack`: `E_t(G-v) >= E_{t+1}(G) + 1 + d_v - mu_1(G)`
pub fn case1_chain(g: &Graph, t: usize) -> Result<AuditReport, AuditError> {
    check_t(g, t)?;
    let v = g.max_degree_vertex();
    let h = g.isolate_vertex(v)?;
    let sg = laplacian_spectrum(g)?;
    let sh = laplacian_spectrum(&h)?;
    Ok(case1_from_spectra(g, t, v, &sg, &sh))
}

fn case1_from_spectra(g: &Graph, t: usize, v: Vertex, sg: &Spectrum, sh: &Spectrum) -> AuditReport {
    let n = g.n();
    let eps = default_tol(n);
    let d = g.degree(v) as f64;
    let mu1 = sg.mu(1);
    let s_t_child = sh.partial_sum(t).expect("t checked");
    let s_t1 = sg.partial_sum(t + 1).expect("t checked");
    let e_child = excess_from_spectrum(sh, t).expect("t checked");
    let e_t1 = excess_from_spectrum(sg, t + 1).expect("t checked");
    let tf = t as f64;

    let steps = vec![
        AuditStep::new(STEP_INTERLACING, s_t_child, s_t1 - mu1, eps),
        AuditStep::new(STEP_HYPOTHESIS, d + tf + 1.0, n as f64, 0.0),
        AuditStep::new(STEP_MU1_LE_N, n as f64, mu1, eps),
        AuditStep::new(STEP_EXCESS_STRICT, e_child, e_t1 + (tf + 1.0) + d - mu1, eps),
        AuditStep::new(STEP_EXCESS_UNIT, e_child, e_t1 + 1.0 + d - mu1, eps),
    ];
    AuditReport {
        graph6: write_graph6(g).unwrap_or_default(),
        t,
        v,
        degree: g.degree(v),
        steps,
        notes: vec![COMPLEMENT_NOTE.to_string()],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionKind {
    Case1,
    Case2,
}

/// One transform of the reduction, with the audits performed on it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionStep {
    pub kind: ReductionKind,
    pub input: String,
    pub output: String,
    /// Parameter `t` of the input (violation hypothesized at `t + 1`).
    pub input_t: usize,
    /// Claimed violation index of the output graph.
    pub output_t: usize,
    /// `v` for the max-degree case, `v1` for the complement case.
    pub vertex: Vertex,
    pub checks: Vec<AuditStep>,
    #[serde(skip)]
    pub output_graph: Graph,
}

fn g6(g: &Graph) -> String {
    write_graph6(g).unwrap_or_default()
}

/// Which case applies to `(G, t)` with `v` the max-degree vertex.
pub fn classify(g: &Graph, t: usize) -> ReductionKind {
    let d = g.degree(g.max_degree_vertex());
    if d + t + 1 >= g.n() {
        ReductionKind::Case1
    } else {
        ReductionKind::Case2
    }
}

/// The max-degree case transform: isolate `v`, same `t`.
pub fn case1_transform(g: &Graph, t: usize) -> Result<(ReductionStep, AuditReport), AuditError> {
    let report = case1_chain(g, t)?;
    let out = g.isolate_vertex(report.v)?;
    let step = ReductionStep {
        kind: ReductionKind::Case1,
        input: g6(g),
        output: g6(&out),
        input_t: t,
        output_t: t,
        vertex: report.v,
        checks: report.steps.clone(),
        output_graph: out,
    };
    Ok((step, report))
}

pub const STEP_V1_CO_DEGREE: &str = "v1-complement-degree";
pub const STEP_CASE2_HYPOTHESIS: &str = "t-plus-2-plus-dv-le-n";
pub const STEP_CASE2_DUAL: &str = "v1-complement-degree-plus-tstar";

/// The complement case transform for `t + 1 + d_v < n`.
///
/// Preconditions are checked in the order: regular, isolated vertex, hypothesis.
/// `v1` is the lowest-indexed vertex with `d_v1 <= d_v - 1`.
pub fn case2_transform(g: &Graph, t: usize) -> Result<ReductionStep, AuditError> {
    check_t(g, t)?;
    let n = g.n();
    if g.is_regular() {
        return Err(AuditError::GraphIsRegular);
    }
    if g.has_isolated_vertex() {
        return Err(AuditError::HasIsolatedVertex);
    }
    let v = g.max_degree_vertex();
    let dv = g.degree(v);
    if t + 1 + dv >= n {
        return Err(AuditError::HypothesisNotMet { lhs: t + 1 + dv, n });
    }
    let v1 = (0..n)
        .find(|&u| g.degree(u) < dv)
        .expect("a non-regular graph has a vertex below max degree");
    let co = g.complement();
    let d1_co = co.degree(v1);
    debug_assert_eq!(d1_co, n - 1 - g.degree(v1));
    let t_star = n - t - 2;
    let out = co.isolate_vertex(v1)?;
    let checks = vec![
        AuditStep::new(STEP_V1_CO_DEGREE, d1_co as f64, (n - dv) as f64, 0.0),
        AuditStep::new(STEP_CASE2_HYPOTHESIS, n as f64, (t + 2 + dv) as f64, 0.0),
        AuditStep::new(STEP_CASE2_DUAL, (d1_co + t_star) as f64, n as f64, 0.0),
    ];
    Ok(ReductionStep {
        kind: ReductionKind::Case2,
        input: g6(g),
        output: g6(&out),
        input_t: t,
        output_t: t_star - 1,
        vertex: v1,
        checks,
        output_graph: out,
    })
}

/// How a reduction trace ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceStatus {
    /// Non-hypothetical run on a graph with no violation at `t + 1`.
    NoViolation,
    /// The complement case was needed on a regular graph.
    Regular,
    /// The complement case was needed on a graph with an isolated vertex.
    IsolatedVertex,
    /// The next parameter left `2..=n-2`.
    RangeExhausted,
    DepthExhausted,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceEntry {
    pub step: ReductionStep,
    /// Audit of the max-degree chain, present for `Case1` steps.
    pub audit: Option<AuditReport>,
    /// Brouwer report of the output graph.
    pub child_report: BrouwerReport,
    /// Excess of the output graph at the claimed violation index.
    pub child_claimed_excess: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionTrace {
    pub graph6: String,
    pub t: usize,
    pub hypothetical: bool,
    /// Excess of the input at `t + 1`.
    pub initial_excess: f64,
    pub entries: Vec<TraceEntry>,
    pub status: TraceStatus,
}

/// Follows the reduction from `(g, t)`.
///
/// Without `hypothetical` the trace stops at once unless `g` actually violates
/// the bound at `t + 1`. With it, transforms are applied regardless and the
/// trace ends at `max_depth`, on a regular or isolated-vertex graph where the
/// complement case is needed, or when the parameter leaves `2..=n-2`.
pub fn reduction_trace(
    g: &Graph,
    t: usize,
    max_depth: usize,
    hypothetical: bool,
) -> Result<ReductionTrace, AuditError> {
    check_t(g, t)?;
    let tol = default_tol(g.n());
    let initial_excess = excess_from_spectrum(&laplacian_spectrum(g)?, t + 1)?;
    let mut trace = ReductionTrace {
        graph6: g6(g),
        t,
        hypothetical,
        initial_excess,
        entries: Vec::new(),
        status: TraceStatus::DepthExhausted,
    };
    if !hypothetical && initial_excess <= tol {
        trace.status = TraceStatus::NoViolation;
        return Ok(trace);
    }

    let n = g.n();
    let mut cur = g.clone();
    let mut cur_t = t;
    for _ in 0..max_depth {
        if cur_t < 2 || cur_t + 2 > n {
            trace.status = TraceStatus::RangeExhausted;
            return Ok(trace);
        }
        let (step, audit) = match classify(&cur, cur_t) {
            ReductionKind::Case1 => {
                let (s, a) = case1_transform(&cur, cur_t)?;
                (s, Some(a))
            }
            ReductionKind::Case2 => match case2_transform(&cur, cur_t) {
                Ok(s) => (s, None),
                Err(AuditError::GraphIsRegular) => {
                    trace.status = TraceStatus::Regular;
                    return Ok(trace);
                }
                Err(AuditError::HasIsolatedVertex) => {
                    trace.status = TraceStatus::IsolatedVertex;
                    return Ok(trace);
                }
                Err(e) => return Err(e),
            },
        };
        let child_spec = laplacian_spectrum(&step.output_graph)?;
        let child_report = BrouwerReport::from_spectrum(&child_spec, tol);
        let child_claimed_excess = if step.output_t >= 1 {
            excess_from_spectrum(&child_spec, step.output_t)?
        } else {
            f64::NAN
        };
        cur = step.output_graph.clone();
        let next_t = step.output_t.checked_sub(1);
        trace.entries.push(TraceEntry {
            step,
            audit,
            child_report,
            child_claimed_excess,
        });
        match next_t {
            Some(nt) => cur_t = nt,
            None => {
                trace.status = TraceStatus::RangeExhausted;
                return Ok(trace);
            }
        }
    }
    trace.status = if cur_t < 2 || cur_t + 2 > n {
        TraceStatus::RangeExhausted
    } else {
        TraceStatus::DepthExhausted
    };
    Ok(trace)
}
