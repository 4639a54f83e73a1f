//! Corpus scans producing one JSONL record per (graph, check).
//!
//! Sources are random-access: graph `i` of a family source is generated from
//! seed `seed ^ i`, and record numbers are assigned from the source position
//! before work is dispatched, so output does not depend on scheduling.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::audit::{
    case1_chain, case2_transform, interlacing_from_spectra, InterlacingVariant, STEP_HYPOTHESIS,
};
use crate::brouwer::{complement_spectrum_error, max_duality_gap, BrouwerReport, RowStatus};
use crate::error::{AuditError, Graph6Error, GraphError, SpectralError};
use crate::exec::Exec;
use crate::family::Family;
use crate::graph::{labeled_graph_count, Graph, MAX_ENUMERATION_N};
use crate::graph6::{parse_graph6_str, write_graph6};
use crate::spectral::{default_tol, laplacian_spectrum, Spectrum};

/// Duality identity tolerance.
pub const DUALITY_TOL: f64 = 1e-6;
/// Complement-spectrum agreement tolerance (also the slack on `mu_1 <= n`).
pub const COMPLEMENT_TOL: f64 = 1e-8;

const CHUNK: u64 = 1 << 14;

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("line {line}: {source}")]
    Parse { line: usize, source: Graph6Error },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("exhaustive scans support 1 <= n <= {MAX_ENUMERATION_N}, got {0}")]
    ExhaustiveRange(usize),
    #[error(transparent)]
    Family(#[from] GraphError),
    #[error("writing output: {0}")]
    Write(#[from] io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Brouwer,
    Duality,
    Complement,
    InterlacingPaperStrict,
    InterlacingUnitSlack,
    Case1,
    Case2,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Brouwer,
        Check::Duality,
        Check::Complement,
        Check::InterlacingPaperStrict,
        Check::InterlacingUnitSlack,
        Check::Case1,
        Check::Case2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Brouwer => "brouwer",
            Check::Duality => "duality",
            Check::Complement => "complement",
            Check::InterlacingPaperStrict => "interlacing-paper-strict",
            Check::InterlacingUnitSlack => "interlacing-unit-slack",
            Check::Case1 => "case1",
            Check::Case2 => "case2",
        }
    }

    /// Parses a comma-separated list; `all` selects every check.
    pub fn parse_list(s: &str) -> Result<Vec<Check>, ScanError> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Check::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| ScanError::UnknownCheck(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Tight,
    Violated,
    Error,
}

impl From<RowStatus> for Verdict {
    fn from(s: RowStatus) -> Self {
        match s {
            RowStatus::Holds => Verdict::Holds,
            RowStatus::Tight => Verdict::Tight,
            RowStatus::Violated => Verdict::Violated,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Tight => "tight",
            Verdict::Violated => "violated",
            Verdict::Error => "error",
        })
    }
}

/// One line of scan output. Field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRecord {
    pub seq: u64,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub check: Check,
    pub verdict: Verdict,
    /// Largest Brouwer excess over `t` (negative means strictly inside every bound).
    pub min_excess: f64,
    /// `t` attaining `min_excess`.
    pub worst_t: usize,
    pub extra: Value,
}

impl ScanRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// Where the graphs come from.
#[derive(Clone, Debug)]
pub enum Source {
    /// All labeled graphs on `n` vertices, in edge-mask order.
    Exhaustive(usize),
    /// Explicit graphs, e.g. read from a graph6 file.
    Graphs(Vec<Graph>),
    Family { family: Family, count: u64, seed: u64 },
}

impl Source {
    /// Reads a graph6 file. Blank lines are skipped and an optional `>>graph6<<`
    /// prefix is accepted.
    pub fn from_graph6_file(path: impl Into<PathBuf>) -> Result<Source, ScanError> {
        let path = path.into();
        let text = std::fs::read_to_string(&path).map_err(|source| ScanError::Read {
            path: path.clone(),
            source,
        })?;
        Source::from_graph6_text(&text)
    }

    pub fn from_graph6_text(text: &str) -> Result<Source, ScanError> {
        let mut graphs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
            if line.trim().is_empty() {
                continue;
            }
            let g = parse_graph6_str(line).map_err(|source| ScanError::Parse { line: i + 1, source })?;
            graphs.push(g);
        }
        Ok(Source::Graphs(graphs))
    }

    pub fn validate(&self) -> Result<(), ScanError> {
        match self {
            Source::Exhaustive(n) if !(1..=MAX_ENUMERATION_N).contains(n) => {
                Err(ScanError::ExhaustiveRange(*n))
            }
            Source::Family { family, .. } => Ok(family.validate()?),
            _ => Ok(()),
        }
    }

    pub fn len(&self) -> u64 {
        match self {
            Source::Exhaustive(n) => labeled_graph_count(*n),
            Source::Graphs(g) => g.len() as u64,
            Source::Family { count, .. } => *count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn graph(&self, i: u64) -> Result<Graph, GraphError> {
        match self {
            Source::Exhaustive(n) => Graph::from_edge_mask(*n, i),
            Source::Graphs(g) => Ok(g[i as usize].clone()),
            Source::Family { family, seed, .. } => family.generate(seed ^ i),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Source::Exhaustive(n) => format!("exhaustive n={n}"),
            Source::Graphs(g) => format!("{} graph6 graphs", g.len()),
            Source::Family { family, count, seed } => format!("family {family} count={count} seed={seed}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub source: Source,
    pub checks: Vec<Check>,
    /// Brouwer violation tolerance; `None` means `1e-8 * n` per graph.
    pub tol: Option<f64>,
    pub exec: Exec,
    /// Worker threads; `None` uses the default pool.
    pub jobs: Option<usize>,
    pub progress: bool,
}

impl ScanConfig {
    pub fn new(source: Source, checks: Vec<Check>) -> Self {
        ScanConfig {
            source,
            checks,
            tol: None,
            exec: Exec::default(),
            jobs: None,
            progress: false,
        }
    }
}

/// Aggregate over a scan.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ScanSummary {
    pub source: String,
    pub graphs: u64,
    pub records: u64,
    pub holds: u64,
    pub tight: u64,
    pub violated: u64,
    pub errors: u64,
    /// Largest Brouwer excess seen, with its graph and `t`.
    pub worst_excess: Option<(f64, String, usize)>,
    /// First violators (graph6) per check, capped at `VIOLATOR_CAP`.
    pub violators: BTreeMap<String, Vec<String>>,
    pub violator_counts: BTreeMap<String, u64>,
}

pub const VIOLATOR_CAP: usize = 20;

impl ScanSummary {
    pub fn any_violation(&self) -> bool {
        self.violated > 0
    }

    /// Exit status: 0 when nothing is violated, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.any_violation())
    }

    fn absorb(&mut self, r: &ScanRecord) {
        self.records += 1;
        match r.verdict {
            Verdict::Holds => self.holds += 1,
            Verdict::Tight => self.tight += 1,
            Verdict::Violated => {
                self.violated += 1;
                *self.violator_counts.entry(r.check.to_string()).or_default() += 1;
                let list = self.violators.entry(r.check.to_string()).or_default();
                if list.len() < VIOLATOR_CAP {
                    list.push(r.graph6.clone());
                }
            }
            Verdict::Error => self.errors += 1,
        }
        if r.verdict != Verdict::Error
            && self.worst_excess.as_ref().map_or(true, |w| r.min_excess > w.0)
        {
            self.worst_excess = Some((r.min_excess, r.graph6.clone(), r.worst_t));
        }
    }

    /// Human-readable summary lines (no timestamp).
    pub fn render(&self) -> String {
        let mut s = String::new();
        s += &format!("source: {}\n", self.source);
        s += &format!("graphs: {}  records: {}\n", self.graphs, self.records);
        s += &format!(
            "holds: {}  tight: {}  violated: {}  error: {}\n",
            self.holds, self.tight, self.violated, self.errors
        );
        if let Some((e, g6, t)) = &self.worst_excess {
            s += &format!("worst brouwer excess: {e:.3e} at t={t} ({g6})\n");
        }
        for (check, list) in &self.violators {
            s += &format!(
                "violators [{check}] ({} total): {}\n",
                self.violator_counts[check],
                list.join(" ")
            );
        }
        s
    }
}

/// Evaluates `checks` on one graph, numbering records from `first_seq`.
pub fn check_graph(g: &Graph, checks: &[Check], tol: Option<f64>, first_seq: u64) -> Vec<ScanRecord> {
    let graph6 = write_graph6(g).unwrap_or_default();
    let n = g.n();
    let m = g.m();
    let tol = tol.unwrap_or_else(|| default_tol(n));
    let analysed = laplacian_spectrum(g).map(|s| {
        let report = BrouwerReport::from_spectrum(&s, tol);
        (s, report)
    });
    let (worst_t, min_excess) = analysed.as_ref().map_or((0, f64::NAN), |(_, r)| r.worst());

    // computed on first use, shared by the checks that need them
    let mut co_spec: Option<Result<Spectrum, SpectralError>> = None;
    let mut child_specs: Option<Result<Vec<Spectrum>, SpectralError>> = None;

    checks
        .iter()
        .enumerate()
        .map(|(k, &check)| {
            let outcome = match &analysed {
                Err(e) => Err(e.to_string()),
                Ok((sg, report)) => {
                    let co = co_spec.get_or_insert_with(|| laplacian_spectrum(&g.complement()));
                    let children = child_specs.get_or_insert_with(|| {
                        (0..n)
                            .map(|v| laplacian_spectrum(&g.isolate_vertex(v).expect("v < n")))
                            .collect()
                    });
                    run_check(check, g, sg, report, co, children)
                }
            };
            let (verdict, extra) = outcome.unwrap_or_else(|e| (Verdict::Error, json!({ "error": e })));
            ScanRecord {
                seq: first_seq + k as u64,
                graph6: graph6.clone(),
                n,
                m,
                check,
                verdict,
                min_excess,
                worst_t,
                extra,
            }
        })
        .collect()
}

fn verdict_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Holds
    } else {
        Verdict::Violated
    }
}

fn run_check(
    check: Check,
    g: &Graph,
    sg: &Spectrum,
    report: &BrouwerReport,
    co: &Result<Spectrum, SpectralError>,
    children: &Result<Vec<Spectrum>, SpectralError>,
) -> Result<(Verdict, Value), String> {
    let n = g.n();
    match check {
        Check::Brouwer => Ok((
            report.verdict().into(),
            json!({ "violated_t": report.violations() }),
        )),
        Check::Duality => {
            let co = co.as_ref().map_err(|e| e.to_string())?;
            let gap = max_duality_gap(sg, co);
            Ok((verdict_if(gap < DUALITY_TOL), json!({ "max_gap": gap })))
        }
        Check::Complement => {
            let co = co.as_ref().map_err(|e| e.to_string())?;
            let err = complement_spectrum_error(sg, co);
            let mu1 = sg.mu(1);
            let ok = err <= COMPLEMENT_TOL && mu1 <= n as f64 + COMPLEMENT_TOL;
            Ok((verdict_if(ok), json!({ "max_abs_error": err, "mu1": mu1 })))
        }
        Check::InterlacingPaperStrict | Check::InterlacingUnitSlack => {
            let variant = if check == Check::InterlacingPaperStrict {
                InterlacingVariant::PaperStrict
            } else {
                InterlacingVariant::UnitSlack
            };
            let children = children.as_ref().map_err(|e| e.to_string())?;
            let mut violators = Vec::new();
            let mut worst = 0.0f64;
            for (v, sh) in children.iter().enumerate() {
                let viol = interlacing_from_spectra(sg, sh, variant);
                if viol.is_empty() {
                    continue;
                }
                let mut idx: Vec<usize> = viol.iter().map(|x| x.index).collect();
                idx.dedup();
                worst = viol.iter().map(|x| x.right - x.left).fold(worst, f64::max);
                violators.push(json!({ "v": v, "indices": idx }));
            }
            Ok((
                verdict_if(violators.is_empty()),
                json!({ "violators": violators, "max_deficit": worst }),
            ))
        }
        Check::Case1 => {
            let mut failures: BTreeMap<&str, u64> = BTreeMap::new();
            let mut min_slack: BTreeMap<&str, f64> = BTreeMap::new();
            let mut audited = 0;
            for t in 2..n.saturating_sub(1) {
                let r = case1_chain(g, t).map_err(|e| e.to_string())?;
                audited += 1;
                for s in r.steps.iter().filter(|s| s.name != STEP_HYPOTHESIS) {
                    let e = min_slack.entry(s.name).or_insert(f64::INFINITY);
                    *e = e.min(s.slack);
                    if !s.holds {
                        *failures.entry(s.name).or_default() += 1;
                    }
                }
            }
            Ok((
                verdict_if(failures.is_empty()),
                json!({ "t_audited": audited, "failures": failures, "min_slack": min_slack }),
            ))
        }
        Check::Case2 => {
            let mut applicable = 0;
            let mut failures: BTreeMap<&str, u64> = BTreeMap::new();
            let mut skipped: BTreeMap<&str, u64> = BTreeMap::new();
            for t in 2..n.saturating_sub(1) {
                match case2_transform(g, t) {
                    Ok(step) => {
                        applicable += 1;
                        for c in step.checks.iter().filter(|c| !c.holds) {
                            *failures.entry(c.name).or_default() += 1;
                        }
                    }
                    Err(AuditError::GraphIsRegular) => *skipped.entry("regular").or_default() += 1,
                    Err(AuditError::HasIsolatedVertex) => {
                        *skipped.entry("isolated-vertex").or_default() += 1
                    }
                    Err(AuditError::HypothesisNotMet { .. }) => {
                        *skipped.entry("case1-applies").or_default() += 1
                    }
                    Err(e) => return Err(e.to_string()),
                }
            }
            Ok((
                verdict_if(failures.is_empty()),
                json!({ "applicable": applicable, "failures": failures, "skipped": skipped }),
            ))
        }
    }
}

/// Runs a scan, streaming records in `seq` order to `out` when given.
pub fn run_scan(config: &ScanConfig, mut out: Option<&mut (dyn Write + Send)>) -> Result<ScanSummary, ScanError> {
    config.source.validate()?;
    let total = config.source.len();
    let per_graph = config.checks.len() as u64;
    let mut summary = ScanSummary {
        source: config.source.describe(),
        ..Default::default()
    };

    config.exec.install(config.jobs, || -> Result<(), ScanError> {
        let mut start = 0;
        while start < total {
            let end = (start + CHUNK).min(total);
            let batch = config.exec.map_range(start..end, |i| -> Result<Vec<ScanRecord>, GraphError> {
                let g = config.source.graph(i)?;
                Ok(check_graph(&g, &config.checks, config.tol, i * per_graph))
            });
            for records in batch {
                let records = records?;
                summary.graphs += 1;
                for r in &records {
                    summary.absorb(r);
                    if let Some(w) = out.as_mut() {
                        writeln!(w, "{}", r.to_json_line())?;
                    }
                }
            }
            if config.progress {
                eprintln!("[scan] {end}/{total} graphs, {} violated", summary.violated);
            }
            start = end;
        }
        Ok(())
    })?;
    if let Some(w) = out.as_mut() {
        w.flush()?;
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!(matches!("bogus".parse::<Check>(), Err(ScanError::UnknownCheck(_))));
        assert_eq!(Check::parse_list("brouwer, duality").unwrap(), vec![Check::Brouwer, Check::Duality]);
        assert_eq!(Check::parse_list("all").unwrap().len(), 7);
    }

    #[test]
    fn record_key_order() {
        let g = Family::Star(4).generate(0).unwrap();
        let recs = check_graph(&g, &[Check::Brouwer], None, 7);
        let line = recs[0].to_json_line();
        let keys = ["seq", "graph6", "n", "m", "check", "verdict", "min_excess", "worst_t", "extra"];
        let mut pos = 0;
        for k in keys {
            let at = line[pos..].find(&format!("\"{k}\":")).unwrap() + pos;
            pos = at;
        }
        assert!(line.starts_with("{\"seq\":7,"));
        assert_eq!(recs[0].verdict, Verdict::Holds);
        assert_eq!(recs[0].worst_t, 1);
    }

    #[test]
    fn k4_strict_interlacing_record() {
        let k4 = Family::Complete(4).generate(0).unwrap();
        let recs = check_graph(&k4, &[Check::InterlacingPaperStrict, Check::InterlacingUnitSlack], None, 0);
        assert_eq!(recs[0].verdict, Verdict::Violated);
        assert_eq!(recs[0].extra["violators"].as_array().unwrap().len(), 4);
        assert_eq!(recs[0].extra["violators"][0]["indices"], json!([1, 2]));
        assert_eq!(recs[1].verdict, Verdict::Holds);
        assert_eq!(recs[1].seq, 1);
    }

    #[test]
    fn graph6_source_errors() {
        assert!(matches!(
            Source::from_graph6_text("Bw\nB?x\n"),
            Err(ScanError::Parse { line: 2, .. })
        ));
        let s = Source::from_graph6_text("Bw\n\nA_\n").unwrap();
        assert_eq!(s.len(), 2);
        assert!(matches!(
            Source::from_graph6_file("/nonexistent/x.g6"),
            Err(ScanError::Read { .. })
        ));
        assert!(matches!(Source::Exhaustive(8).validate(), Err(ScanError::ExhaustiveRange(8))));
    }

    #[test]
    fn small_exhaustive_scan() {
        let cfg = ScanConfig::new(Source::Exhaustive(4), vec![Check::Brouwer, Check::Duality]);
        let mut buf = Vec::new();
        let s = run_scan(&cfg, Some(&mut buf)).unwrap();
        assert_eq!(s.graphs, 64);
        assert_eq!(s.records, 128);
        assert_eq!(s.violated, 0);
        assert_eq!(s.exit_code(), 0);
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 128);
    }
}
