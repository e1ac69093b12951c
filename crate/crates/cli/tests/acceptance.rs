//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use qarch_cli::checks::{self, Check};
use serde_json::Value;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn qarch(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qarch"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}: {}", out.status, String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn column(csv: &[u8], name: &str) -> Result<Vec<f64>, String> {
    let text = String::from_utf8_lossy(csv);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().ok_or("empty output")?.split(',').collect();
    let idx = header.iter().position(|h| *h == name).ok_or(format!("no column {name}"))?;
    lines
        .map(|l| l.split(',').nth(idx).unwrap_or("").parse::<f64>().map_err(|e| format!("{name}: {e}")))
        .collect()
}

fn cli_check(id: u8, name: &'static str, body: impl FnOnce() -> Result<(bool, String), String>) -> Check {
    let start = Instant::now();
    let (passed, detail) = body().unwrap_or_else(|e| (false, e));
    Check {
        id,
        name,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn figure_directions() -> Check {
    cli_check(9, "figure directions through the CLI", || {
        let fig5 = configs().join("fig5_equal_memories.json");
        let fig6 = configs().join("fig6_better_sd_memories.json");
        let post = configs().join("post_move.json");
        let d5 = column(&qarch(&["analyze", "--config", fig5.to_str().unwrap()])?, "difference")?;
        let d6 = column(&qarch(&["analyze", "--config", fig6.to_str().unwrap()])?, "difference")?;
        let report: Value = serde_json::from_slice(&qarch(&["circuit", "--config", post.to_str().unwrap()])?)
            .map_err(|e| e.to_string())?;
        let rows = report["sweep"].as_array().ok_or("no sweep in circuit report")?;
        let sd_wins = rows
            .iter()
            .filter(|r| r["postmove_circuit_sd"].as_f64() > r["postmove_circuit_dd"].as_f64())
            .count();
        let a = !d5.is_empty() && d5.iter().all(|&d| d < 0.0);
        let b = !d6.is_empty() && d6.iter().all(|&d| d > 0.0);
        let c = !rows.is_empty() && sd_wins == rows.len();
        Ok((
            a && b && c,
            format!(
                "(a) equal memories max diff {:.4}, (b) 5x SD memories diff {:.4}, (c) SD post-move higher at {sd_wins}/{} lambda_m",
                d5.iter().cloned().fold(f64::MIN, f64::max),
                d6.iter().cloned().fold(f64::MAX, f64::min),
                rows.len()
            ),
        ))
    })
}

fn determinism() -> Check {
    cli_check(10, "byte-identical CSV for identical seeds", || {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let cfg = configs().join("mu_c_sweep.json");
        let mut outputs = Vec::new();
        for run in 0..2 {
            let out = dir.path().join(format!("run{run}.csv"));
            qarch(&["simulate", "--config", cfg.to_str().unwrap(), "--seed", "12345", "--out", out.to_str().unwrap()])?;
            outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
        }
        let other = dir.path().join("other.csv");
        qarch(&["simulate", "--config", cfg.to_str().unwrap(), "--seed", "54321", "--out", other.to_str().unwrap()])?;
        let differs = std::fs::read(&other).map_err(|e| e.to_string())? != outputs[0];
        Ok((
            outputs[0] == outputs[1] && differs,
            format!("{} bytes identical across runs; other seed differs: {differs}", outputs[0].len()),
        ))
    })
}

fn main() {
    let results = vec![
        checks::fidelity_routes(1000, 1),
        checks::qbd_correctness(100, 2),
        checks::phase_masses(1e5, 5, 3),
        checks::closed_vs_simulation(1.0, 10.0, 1_000_000, 4),
        checks::closed_vs_simulation(50.0, 500.0, 1_000_000, 4),
        checks::proposition_one(1000, 5),
        checks::proposition_two(500, 6),
        checks::post_move_asymptote(),
        checks::ideal_circuits(20, 8),
        figure_directions(),
        determinism(),
    ];
    for check in &results {
        println!("{check}");
    }
    let failed = results.iter().filter(|c| !c.passed).count();
    println!("{} of {} checks passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
