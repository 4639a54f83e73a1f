use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use brouwer_lab::audit::{
    case1_chain, case2_transform, interlacing_violations, reduction_trace, InterlacingVariant,
};
use brouwer_lab::brouwer::BrouwerReport;
use brouwer_lab::exec::Exec;
use brouwer_lab::family::Family;
use brouwer_lab::graph::Graph;
use brouwer_lab::graph6::{parse_graph6_str, write_graph6};
use brouwer_lab::scan::{run_scan, Check, ScanConfig, Source};
use brouwer_lab::spectral::{default_tol, laplacian_energy, laplacian_spectrum};
use brouwer_lab::threshold::{max_energy_threshold, verify_theorem1};

/// Laplacian spectra, Brouwer partial-sum bounds and proof-step audits.
#[derive(Parser)]
#[command(name = "brouwer-lab", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct GraphInput {
    /// Graph in graph6 short form.
    graph: Option<String>,
    /// Family spec instead of a graph6 string, e.g. `star:5`, `gnp:10:0.3`, or `tree` with --n.
    #[arg(long)]
    family: Option<String>,
    /// Vertex count for a family given without its size.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the spectrum with partial sums and bounds per t.
    Spectrum {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        tol: Option<f64>,
        /// Append a JSON record to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every t for one graph; exit 1 on a violation.
    Check {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan a corpus and write one JSONL record per (graph, check).
    Scan {
        /// `exhaustive`, `family`, or a path to a graph6 file.
        #[arg(long)]
        source: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated checks, or `all`.
        #[arg(long, default_value = "brouwer")]
        checks: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Force the sequential code path.
        #[arg(long)]
        sequential: bool,
        /// Progress lines on stderr.
        #[arg(long)]
        progress: bool,
    },
    /// Audit the max-degree case chain (and the complement case) at t.
    Audit {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace the reduction from (G, t).
    Reduce {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 16)]
        depth: usize,
        /// Apply the transforms even when G does not violate the bound.
        #[arg(long)]
        hypothetical: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximum Laplacian energy over threshold graphs with n vertices and m edges.
    ThresholdMax {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare threshold maxima with exhaustive maxima for every m.
    VerifyTheorem1 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

type CmdResult = Result<u8, String>;

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn resolve_family(spec: &str, n: Option<usize>) -> Result<Family, String> {
    let spec = match (spec.contains(':'), n) {
        (false, Some(n)) => format!("{spec}:{n}"),
        _ => spec.to_string(),
    };
    spec.parse::<Family>().map_err(|e| e.to_string())
}

fn load_graph(input: &GraphInput) -> Result<Graph, String> {
    match (&input.graph, &input.family) {
        (Some(g6), None) => parse_graph6_str(g6.trim()).map_err(|e| format!("graph6 `{g6}`: {e}")),
        (None, Some(spec)) => resolve_family(spec, input.n)?
            .generate(input.seed)
            .map_err(|e| e.to_string()),
        _ => Err("give exactly one of a graph6 string or --family".into()),
    }
}

fn append_json<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<(), String> {
    let Some(path) = out else { return Ok(()) };
    let mut f = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let line = serde_json::to_string(value).map_err(|e| e.to_string())?;
    writeln!(f, "{line}").map_err(|e| e.to_string())
}

fn fmt_values(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join(" ")
}

fn print_report(r: &BrouwerReport) {
    println!("{:>4} {:>14} {:>8} {:>14}  status", "t", "S_t", "bound", "excess");
    for row in &r.rows {
        println!(
            "{:>4} {:>14.6} {:>8} {:>14.6}  {}",
            row.t,
            row.partial_sum,
            row.bound,
            row.excess,
            serde_json::to_value(row.status).unwrap().as_str().unwrap()
        );
    }
}

fn graph_header(g: &Graph) -> String {
    format!(
        "graph6: {}  n={}  m={}",
        write_graph6(g).unwrap_or_else(|_| "-".into()),
        g.n(),
        g.m()
    )
}

fn run(cmd: Cmd) -> CmdResult {
    match cmd {
        Cmd::Spectrum { input, tol, out } => {
            let g = load_graph(&input)?;
            let spec = laplacian_spectrum(&g).map_err(|e| e.to_string())?;
            let report = BrouwerReport::from_spectrum(&spec, tol.unwrap_or_else(|| default_tol(g.n())));
            println!("{}", graph_header(&g));
            println!("spectrum: {}", fmt_values(spec.values()));
            println!("laplacian energy: {:.6}", laplacian_energy(&spec));
            print_report(&report);
            append_json(
                &out,
                &json!({
                    "graph6": write_graph6(&g).ok(),
                    "spectrum": spec.values(),
                    "report": report,
                }),
            )?;
            Ok(0)
        }
        Cmd::Check { input, tol, out } => {
            let g = load_graph(&input)?;
            let spec = laplacian_spectrum(&g).map_err(|e| e.to_string())?;
            let report = BrouwerReport::from_spectrum(&spec, tol.unwrap_or_else(|| default_tol(g.n())));
            println!("{}", graph_header(&g));
            print_report(&report);
            let violated = report.violations();
            if violated.is_empty() {
                println!("verdict: holds");
            } else {
                println!("verdict: violated at t = {violated:?}");
            }
            append_json(&out, &json!({ "graph6": write_graph6(&g).ok(), "report": report }))?;
            Ok(if violated.is_empty() { 0 } else { EXIT_VIOLATION })
        }
        Cmd::Scan {
            source,
            n,
            family,
            count,
            seed,
            checks,
            out,
            tol,
            jobs,
            sequential,
            progress,
        } => {
            let source = match source.as_str() {
                "exhaustive" => Source::Exhaustive(n.ok_or("--source exhaustive needs --n")?),
                "family" => Source::Family {
                    family: resolve_family(&family.ok_or("--source family needs --family")?, n)?,
                    count,
                    seed,
                },
                path => Source::from_graph6_file(path.strip_prefix("file:").unwrap_or(path))
                    .map_err(|e| e.to_string())?,
            };
            let checks = Check::parse_list(&checks).map_err(|e| e.to_string())?;
            if checks.is_empty() {
                return Err("no checks selected".into());
            }
            let mut config = ScanConfig::new(source, checks);
            config.tol = tol;
            config.jobs = jobs;
            config.progress = progress;
            if sequential {
                config.exec = Exec::Sequential;
            }
            let mut writer = match &out {
                Some(p) => Some(BufWriter::new(
                    File::create(p).map_err(|e| format!("{}: {e}", p.display()))?,
                )),
                None => None,
            };
            let started = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            let summary = run_scan(&config, writer.as_mut().map(|w| w as &mut (dyn Write + Send)))
                .map_err(|e| e.to_string())?;
            println!("# scan started unix={started}");
            print!("{}", summary.render());
            if let Some(p) = &out {
                println!("records written to {}", p.display());
            }
            Ok(summary.exit_code() as u8)
        }
        Cmd::Audit { input, t, out } => {
            let g = load_graph(&input)?;
            println!("{}", graph_header(&g));
            let report = case1_chain(&g, t).map_err(|e| e.to_string())?;
            println!("max-degree vertex v={} (degree {}), t={}", report.v, report.degree, t);
            println!("{:<32} {:>14} {:>14} {:>14}  holds", "step", "left", "right", "slack");
            for s in &report.steps {
                println!(
                    "{:<32} {:>14.6} {:>14.6} {:>14.6}  {}",
                    s.name, s.left, s.right, s.slack, s.holds
                );
            }
            for note in &report.notes {
                println!("note: {note}");
            }
            let mut interlacing = Vec::new();
            for variant in [InterlacingVariant::PaperStrict, InterlacingVariant::UnitSlack] {
                let viol = interlacing_violations(&g, report.v, variant).map_err(|e| e.to_string())?;
                let label = serde_json::to_value(variant).unwrap();
                if viol.is_empty() {
                    println!("interlacing {}: holds", label.as_str().unwrap());
                } else {
                    for x in &viol {
                        println!(
                            "interlacing {}: fails at i={} ({:.6} < {:.6})",
                            label.as_str().unwrap(),
                            x.index,
                            x.left,
                            x.right
                        );
                    }
                }
                interlacing.push(json!({ "variant": variant, "violations": viol }));
            }
            let case2 = match case2_transform(&g, t) {
                Ok(step) => {
                    println!("complement case: v1={} -> child {} claimed at t={}", step.vertex, step.output, step.output_t);
                    for c in &step.checks {
                        println!("  {:<30} {:>8} {:>8} {:>8}  {}", c.name, c.left, c.right, c.slack, c.holds);
                    }
                    json!(step)
                }
                Err(e) => {
                    println!("complement case: not applicable ({e})");
                    json!({ "not_applicable": e.to_string() })
                }
            };
            append_json(
                &out,
                &json!({ "case1": report, "interlacing": interlacing, "case2": case2 }),
            )?;
            Ok(0)
        }
        Cmd::Reduce {
            input,
            t,
            depth,
            hypothetical,
            out,
        } => {
            let g = load_graph(&input)?;
            println!("{}", graph_header(&g));
            let trace = reduction_trace(&g, t, depth, hypothetical).map_err(|e| e.to_string())?;
            println!("excess at t+1={}: {:.6}", t + 1, trace.initial_excess);
            for (i, e) in trace.entries.iter().enumerate() {
                let s = &e.step;
                println!(
                    "step {i}: {:?} {} (t={}) -> {} claimed at t={} via vertex {}; child excess there {:.6}",
                    s.kind, s.input, s.input_t, s.output, s.output_t, s.vertex, e.child_claimed_excess
                );
                for c in &s.checks {
                    println!("    {:<32} slack {:>12.6}  {}", c.name, c.slack, c.holds);
                }
            }
            println!(
                "status: {}",
                serde_json::to_value(trace.status).unwrap().as_str().unwrap()
            );
            append_json(&out, &trace)?;
            Ok(0)
        }
        Cmd::ThresholdMax { n, m, out } => {
            let r = max_energy_threshold(n, m, Exec::default()).map_err(|e| e.to_string())?;
            println!("n={n} m={m}");
            println!("creation sequence: {}", r.sequence);
            println!("spectrum: {:?}", r.spectrum.0);
            println!("laplacian energy: {}", r.energy);
            append_json(&out, &json!({ "n": n, "m": m, "result": r }))?;
            Ok(0)
        }
        Cmd::VerifyTheorem1 { n, tol, jobs, out } => {
            let exec = Exec::default();
            let report = exec
                .install(jobs, || verify_theorem1(n, tol, exec))
                .map_err(|e| e.to_string())?;
            println!("{:>4} {:>8} {:>14} {:>14} {:>10}  pass", "m", "graphs", "global max", "threshold max", "sequence");
            for r in &report.rows {
                println!(
                    "{:>4} {:>8} {:>14.6} {:>14.6} {:>10}  {}",
                    r.m, r.graphs, r.global_max, r.threshold_max, r.threshold_sequence, r.pass
                );
            }
            let ok = report.all_pass();
            println!("all pass: {ok}");
            append_json(&out, &report)?;
            Ok(if ok { 0 } else { EXIT_VIOLATION })
        }
    }
}
