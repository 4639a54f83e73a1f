//! Acceptance criteria. Runs as a plain binary (`harness = false`) so every
//! criterion prints a PASS/FAIL line even under `cargo test`.

use std::time::Instant;

use brouwer_lab::audit::{
    case1_chain, interlacing_from_spectra, interlacing_violations, InterlacingVariant,
    STEP_EXCESS_STRICT, STEP_EXCESS_UNIT,
};
use brouwer_lab::brouwer::{
    complement_spectrum_error, duality_gap_from_spectra, excess_from_spectrum, BrouwerReport,
};
use brouwer_lab::exec::Exec;
use brouwer_lab::family::Family;
use brouwer_lab::graph::{enumerate_labeled_graphs, labeled_graph_count, Graph};
use brouwer_lab::graph6::{parse_graph6, write_graph6};
use brouwer_lab::scan::{run_scan, Check, ScanConfig, Source};
use brouwer_lab::spectral::{default_tol, laplacian_spectrum, Spectrum};
use brouwer_lab::threshold::{
    build_threshold, max_energy_threshold, threshold_spectrum_exact, verify_theorem1,
    CreationSequence,
};

type Outcome = Result<String, String>;

const RANDOM_SEED: u64 = 0x5eed_b0de;

fn spectrum(g: &Graph) -> Spectrum {
    laplacian_spectrum(g).expect("Laplacian eigensolve")
}

/// Exhaustive graphs on `1..=6` vertices followed by `count` random graphs with `2 <= n <= max_n`.
fn corpus(count: u64, max_n: usize) -> impl Iterator<Item = Graph> {
    let exhaustive = (1..=6).flat_map(|n| enumerate_labeled_graphs(n).unwrap());
    let random = (0..count).map(move |i| Family::Mixed(2, max_n).generate(RANDOM_SEED ^ i).unwrap());
    exhaustive.chain(random)
}

fn par_corpus<R: Send>(count: u64, max_n: usize, f: impl Fn(&Graph) -> R + Sync + Send) -> Vec<R> {
    let graphs: Vec<Graph> = corpus(count, max_n).collect();
    Exec::default().map_slice(&graphs, f)
}

fn ac1_exhaustive_scan() -> Outcome {
    let mut notes = Vec::new();
    for n in 1..=7 {
        let start = Instant::now();
        let tol = default_tol(n);
        let violating = Exec::default().fold_reduce(
            0..labeled_graph_count(n),
            || 0u64,
            |acc, mask| {
                let g = Graph::from_edge_mask(n, mask).unwrap();
                let r = BrouwerReport::from_spectrum(&spectrum(&g), tol);
                acc + u64::from(!r.holds())
            },
            |a, b| a + b,
        );
        let secs = start.elapsed().as_secs_f64();
        if violating > 0 {
            return Err(format!("n={n}: {violating} violating graphs"));
        }
        if n == 7 && secs > 15.0 * 60.0 {
            return Err(format!("n=7 took {secs:.0}s (limit 900s)"));
        }
        notes.push(format!("n={n}:{}", labeled_graph_count(n)));
        if n == 7 {
            notes.push(format!("n=7 in {secs:.1}s"));
        }
    }
    Ok(format!("0 violations; {}", notes.join(" ")))
}

fn ac2_equality_witnesses() -> Outcome {
    for n in 3..=10 {
        let star = spectrum(&Family::Star(n).generate(0).unwrap());
        let e1 = excess_from_spectrum(&star, 1).unwrap();
        if e1.abs() >= 1e-8 {
            return Err(format!("star n={n}: E_1 = {e1:e}"));
        }
        let kn = spectrum(&Family::Complete(n).generate(0).unwrap());
        let e = excess_from_spectrum(&kn, n - 1).unwrap();
        if e.abs() >= 1e-8 {
            return Err(format!("K_{n}: E_(n-1) = {e:e}"));
        }
    }
    Ok("star E_1 = 0 and K_n E_(n-1) = 0 for n = 3..10".into())
}

fn ac3_duality() -> Outcome {
    let worst = par_corpus(10_000, 20, |g| {
        let s = spectrum(g);
        let co = spectrum(&g.complement());
        (1..g.n().saturating_sub(1))
            .map(|k| duality_gap_from_spectra(&s, &co, k).unwrap().abs())
            .fold(0.0, f64::max)
    })
    .into_iter()
    .fold(0.0, f64::max);
    if worst < 1e-6 {
        Ok(format!("max |gap| = {worst:.2e} < 1e-6"))
    } else {
        Err(format!("max |gap| = {worst:e}"))
    }
}

fn ac4_complement_spectrum() -> Outcome {
    let rows = par_corpus(1000, 32, |g| {
        let s = spectrum(g);
        let co = spectrum(&g.complement());
        (complement_spectrum_error(&s, &co), s.mu(1) - g.n() as f64)
    });
    let err = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let over = rows.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    if err > 1e-8 {
        return Err(format!("max element-wise error {err:e}"));
    }
    if over > 1e-8 {
        return Err(format!("mu_1 exceeds n by {over:e}"));
    }
    Ok(format!("max error {err:.2e}; max mu_1 - n = {over:.2e}"))
}

fn ac5_interlacing() -> Outcome {
    let unit = par_corpus(10_000, 20, |g| {
        let s = spectrum(g);
        (0..g.n())
            .map(|v| {
                let h = spectrum(&g.isolate_vertex(v).unwrap());
                interlacing_from_spectra(&s, &h, InterlacingVariant::UnitSlack).len()
            })
            .sum::<usize>()
    })
    .into_iter()
    .sum::<usize>();
    if unit != 0 {
        return Err(format!("unit-slack: {unit} violations"));
    }

    let k4 = Family::Complete(4).generate(0).unwrap();
    let mut strict_problems = Vec::new();
    for v in 0..4 {
        let viol = interlacing_violations(&k4, v, InterlacingVariant::PaperStrict).unwrap();
        let idx: Vec<usize> = viol.iter().map(|x| x.index).collect();
        match viol.iter().find(|x| x.index == 1) {
            Some(x) if (x.left - 3.0).abs() <= 1e-8 && (x.right - 4.0).abs() <= 1e-8 => {}
            other => strict_problems.push(format!("v={v}: index-1 record {other:?}")),
        }
        if idx != [1] {
            strict_problems.push(format!(
                "v={v}: strict index set {idx:?}, required exactly [1] ({})",
                viol.iter()
                    .map(|x| format!("i={}: {} < {}", x.index, x.left, x.right))
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        }
    }

    let cfg = ScanConfig::new(Source::Exhaustive(4), vec![Check::InterlacingPaperStrict]);
    let mut buf: Vec<u8> = Vec::new();
    let summary = run_scan(&cfg, Some(&mut buf)).map_err(|e| e.to_string())?;
    let k4_g6 = write_graph6(&k4).unwrap();
    let listed = String::from_utf8(buf).unwrap().lines().any(|l| {
        let r: serde_json::Value = serde_json::from_str(l).unwrap();
        r["graph6"] == k4_g6.as_str() && r["verdict"] == "violated"
    });
    if summary.violated == 0 || !listed {
        return Err(format!("n=4 scan: {} strict violators, K4 listed: {listed}", summary.violated));
    }
    let detail = format!(
        "unit-slack 0 violations; K4 strict violation at i=1 is (3 < 4); n=4 scan lists {} strict violators incl. {k4_g6}",
        summary.violated
    );
    if strict_problems.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; but {}", strict_problems.join("; ")))
    }
}

fn ac6_case1_k4() -> Outcome {
    let r = case1_chain(&Family::Complete(4).generate(0).unwrap(), 2).map_err(|e| e.to_string())?;
    let strict = r.step(STEP_EXCESS_STRICT).unwrap();
    let unit = r.step(STEP_EXCESS_UNIT).unwrap();
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-8;
    if strict.holds || !close(strict.slack, -2.0) || !close(strict.left, 0.0) || !close(strict.right, 2.0) {
        return Err(format!("strict step {strict:?}"));
    }
    if !unit.holds || !close(unit.slack, 0.0) {
        return Err(format!("unit-slack step {unit:?}"));
    }
    Ok(format!(
        "strict fails, slack {:.1e} ({} vs {}); unit-slack holds, slack {:.1e}",
        strict.slack, strict.left, strict.right, unit.slack
    ))
}

fn ac7_threshold_spectra() -> Outcome {
    let mut checked = 0;
    let mut worst = 0.0f64;
    for n in 2..=10 {
        for code in 0..1u64 << (n - 1) {
            let seq = CreationSequence::from_code(n, code);
            let exact = threshold_spectrum_exact(&seq);
            let numeric = spectrum(&build_threshold(&seq));
            for (&a, &b) in exact.0.iter().zip(numeric.values()) {
                worst = worst.max((a as f64 - b).abs());
            }
            checked += 1;
        }
    }
    if worst <= 1e-8 {
        Ok(format!("{checked} threshold graphs, max deviation {worst:.2e}"))
    } else {
        Err(format!("max deviation {worst:e}"))
    }
}

fn ac8_theorem1() -> Outcome {
    for n in 1..=6 {
        let r = verify_theorem1(n, 1e-6, Exec::default()).map_err(|e| e.to_string())?;
        if let Some(bad) = r.rows.iter().find(|row| !row.pass) {
            return Err(format!("n={n} m={}: global {} > threshold {}", bad.m, bad.global_max, bad.threshold_max));
        }
        if n == 4 {
            let row = &r.rows[3];
            if (row.global_max - 6.0).abs() > 1e-6 || row.threshold_max != 6.0 {
                return Err(format!("(4,3): global {} threshold {}", row.global_max, row.threshold_max));
            }
        }
    }
    let best = max_energy_threshold(4, 3, Exec::default()).map_err(|e| e.to_string())?;
    let witness = build_threshold(&best.sequence);
    let triangle_plus_isolated = witness.edges() == [(0, 1), (0, 2), (1, 2)] && witness.degree(3) == 0;
    if !triangle_plus_isolated {
        return Err(format!("(4,3) witness {} is not K3 + K1", best.sequence));
    }
    Ok(format!("n <= 6 all m pass; (4,3) maxima 6 = 6, witness {}", best.sequence))
}

fn ac9_graph6() -> Outcome {
    let mut count = 0;
    for n in 1..=6 {
        for g in enumerate_labeled_graphs(n).unwrap() {
            let text = write_graph6(&g).map_err(|e| e.to_string())?;
            let back = parse_graph6(text.as_bytes()).map_err(|e| e.to_string())?;
            if back != g || write_graph6(&back).unwrap() != text {
                return Err(format!("round trip failed for {text}"));
            }
            count += 1;
        }
    }
    let k3 = Family::Complete(3).generate(0).unwrap();
    if parse_graph6(b"Bw").map_err(|e| e.to_string())? != k3 {
        return Err("Bw is not K3".into());
    }
    Ok(format!("{count} graphs round-trip byte-exact; Bw = K3"))
}

fn ac10_determinism() -> Outcome {
    let sources = [
        Source::Exhaustive(5),
        Source::Family {
            family: Family::Mixed(2, 12),
            count: 500,
            seed: 42,
        },
    ];
    for source in sources {
        let mut outputs = Vec::new();
        for jobs in [1, 8] {
            let mut cfg = ScanConfig::new(source.clone(), Check::ALL.to_vec());
            cfg.jobs = Some(jobs);
            let mut buf: Vec<u8> = Vec::new();
            run_scan(&cfg, Some(&mut buf)).map_err(|e| e.to_string())?;
            let mut lines: Vec<(u64, String)> = String::from_utf8(buf)
                .unwrap()
                .lines()
                .map(|l| {
                    let v: serde_json::Value = serde_json::from_str(l).unwrap();
                    (v["seq"].as_u64().unwrap(), l.to_string())
                })
                .collect();
            lines.sort();
            outputs.push(lines);
        }
        if outputs[0] != outputs[1] {
            return Err(format!("{}: jobs 1 and 8 differ", source.describe()));
        }
    }
    Ok("jobs 1 and jobs 8 give identical records keyed by seq".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("AC1 exhaustive Brouwer scan n=1..7", ac1_exhaustive_scan),
        ("AC2 equality witnesses", ac2_equality_witnesses),
        ("AC3 duality identity", ac3_duality),
        ("AC4 complement spectrum", ac4_complement_spectrum),
        ("AC5 interlacing audit", ac5_interlacing),
        ("AC6 case 1 chain on K4, t=2", ac6_case1_k4),
        ("AC7 threshold exact spectra", ac7_threshold_spectra),
        ("AC8 threshold energy maxima", ac8_theorem1),
        ("AC9 graph6 round trip", ac9_graph6),
        ("AC10 scan determinism", ac10_determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
