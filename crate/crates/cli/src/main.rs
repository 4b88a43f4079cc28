// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! `herald`: efficiencies, unraveled statistics, purification plans and
//! threshold regions for heralded entanglement of remote atoms.
//!
//! Exit codes: 0 success, 1 usage or parameter error, 2 failed check suite,
//! 3 I/O error.

mod params;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use herald_core::protocols::{build_model, engine_triple, evaluate, SchemeParams};
use herald_core::purification::{plan_sequence, PairSource};
use herald_core::sweeps::{
    self, region_map, region_table, run_check, write_table, write_with_manifest, CheckSuite, RegionSpec, RunManifest,
    SweepSpec, Table,
};
use herald_core::unraveling::{monte_carlo, scenario_probabilities};
use herald_core::Error;

use params::SchemeArgs;

#[derive(Parser)]
#[command(
    name = "herald",
    version,
    about = "Heralded remote-atom entanglement: efficiencies and simulations"
)]
struct Cli {
    /// Directory against which relative `--out` paths are resolved.
    #[arg(long, global = true, env = "HERALD_OUTPUT_DIR")]
    output_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form success probability and fidelities.
    Analytic {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan one parameter and tabulate the efficiencies.
    Sweep {
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Parameter to scan (e.g. `t_cw`, `p1`, `eta`, `t`, `p_cav`, `p2`).
        #[arg(long)]
        param: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        /// Add columns from the unraveling engine.
        #[arg(long)]
        engine: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Click statistics and heralded states from the unraveling engine.
    Unravel {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quantum-jump Monte Carlo estimate of the click statistics.
    Mc {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, default_value_t = 100_000)]
        n_traj: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Purify free-space single-photon pairs in 0..=J rounds.
    Purify {
        #[arg(long)]
        p1: f64,
        #[arg(long)]
        eta: f64,
        #[arg(long = "steps-J", default_value_t = 4)]
        steps_j: u32,
        /// Take the source pair from the unraveling engine.
        #[arg(long)]
        engine: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a (p1, eta) grid against the coincidence scheme.
    Region {
        #[arg(long, default_value_t = 0.99)]
        fth: f64,
        /// Purification rounds to overlay, comma separated.
        #[arg(long = "steps-J", value_delimiter = ',', default_value = "0")]
        steps_j: Vec<u32>,
        #[arg(long, default_value_t = 0.001)]
        p1_min: f64,
        #[arg(long, default_value_t = 0.999)]
        p1_max: f64,
        #[arg(long, default_value_t = 200)]
        p1_steps: usize,
        #[arg(long, default_value_t = 0.001)]
        eta_min: f64,
        #[arg(long, default_value_t = 0.999)]
        eta_max: f64,
        #[arg(long, default_value_t = 200)]
        eta_steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a preset for a published experiment.
    Benchmark {
        /// `ca40-freespace`, `ca40-cavity` or `yb171-twophoton`.
        preset: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an invariant suite: `appendix-a`, `engine-vs-analytic`, `purify-oracle`.
    Check { suite: String },
}

enum Failure {
    Usage(String),
    Suite(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Csv(_) | Error::Json(_) => Failure::Io(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn resolve(dir: &Option<PathBuf>, out: &Path) -> PathBuf {
    match dir {
        Some(d) if out.is_relative() => d.join(out),
        _ => out.to_path_buf(),
    }
}

fn prepare(dir: &Option<PathBuf>, out: &Path) -> CliResult<PathBuf> {
    let path = resolve(dir, out);
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    Ok(path)
}

fn emit_json(
    dir: &Option<PathBuf>,
    out: &Option<PathBuf>,
    value: &serde_json::Value,
    manifest: RunManifest,
) -> CliResult {
    let mut text = serde_json::to_string_pretty(value).map_err(Error::from)?;
    text.push('\n');
    match out {
        Some(out) => {
            let path = prepare(dir, out)?;
            let m = write_with_manifest(&path, text.as_bytes(), manifest)?;
            eprintln!("wrote {} and {}", path.display(), m.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_table(dir: &Option<PathBuf>, out: &Option<PathBuf>, table: &Table, manifest: RunManifest) -> CliResult {
    match out {
        Some(out) => {
            let path = prepare(dir, out)?;
            let m = write_table(&path, table, manifest)?;
            eprintln!(
                "wrote {} rows to {} and {}",
                table.rows.len(),
                path.display(),
                m.display()
            );
        }
        None => print!("{}", table.to_csv_string()?),
    }
    Ok(())
}

fn manifest(command: &str, params: Option<&SchemeParams>, extra: serde_json::Value, seed: Option<u64>) -> RunManifest {
    let mut parameters = extra;
    if let Some(p) = params {
        parameters["scheme_params"] = serde_json::to_value(p).unwrap_or_default();
    }
    RunManifest::new(command, params.map(|p| p.scheme().to_string()), parameters, seed)
}

fn run(cli: Cli) -> CliResult {
    let dir = cli.output_dir;
    match cli.command {
        Command::Analytic { scheme, out } => {
            let params = scheme.to_params(false)?;
            let t = evaluate(&params)?;
            let value = json!({ "scheme": params.scheme().id(), "params": params, "p_suc": t.p_suc, "fidelity": t.fidelity, "f_avg": t.f_avg });
            emit_json(&dir, &out, &value, manifest("analytic", Some(&params), json!({}), None))
        }
        Command::Sweep {
            scheme,
            param,
            from,
            to,
            steps,
            engine,
            out,
        } => {
            let spec = SweepSpec {
                base: scheme.to_params(true)?,
                parameter: param,
                from,
                to,
                steps,
                engine,
            };
            let table = sweeps::sweep(&spec)?;
            let extra =
                json!({ "parameter": spec.parameter, "from": from, "to": to, "steps": steps, "engine": engine });
            emit_table(&dir, &out, &table, manifest("sweep", Some(&spec.base), extra, None))
        }
        Command::Unravel { scheme, out } => {
            let params = scheme.to_params(false)?;
            let model = build_model(&params)?;
            let bundle = model.bundle()?;
            let s = scenario_probabilities(&bundle, &model.initial, model.window)?;
            let t = engine_triple(&model)?;
            let heralds: Vec<_> = model
                .herald_outcomes(&bundle)?
                .into_iter()
                .map(|o| json!({ "ports": o.herald.ports, "target": o.herald.target.to_string(), "probability": o.probability, "fidelity": o.fidelity }))
                .collect();
            let value = json!({
                "scheme": params.scheme().id(), "params": params, "window": model.window,
                "p0": s.p0, "p1": s.p1, "p2": s.p2,
                "p_suc": t.p_suc, "fidelity": t.fidelity, "f_avg": t.f_avg, "heralds": heralds,
            });
            emit_json(&dir, &out, &value, manifest("unravel", Some(&params), json!({}), None))
        }
        Command::Mc {
            scheme,
            n_traj,
            seed,
            out,
        } => {
            let params = scheme.to_params(false)?;
            let model = build_model(&params)?;
            let bundle = model.bundle()?;
            let exact = scenario_probabilities(&bundle, &model.initial, model.window)?;
            let r = monte_carlo(&bundle, &model.initial, model.window, n_traj, seed)?;
            let z = |n: usize, p: f64| {
                let se = r.std_error(n);
                if se > 0.0 {
                    (r.p(n) - p) / se
                } else {
                    0.0
                }
            };
            let value = json!({
                "scheme": params.scheme().id(), "params": params, "n_traj": n_traj, "seed": seed,
                "histogram": r.histogram, "port_clicks": r.port_clicks, "ports": bundle.port_ids(),
                "p": [r.p(0), r.p(1), r.p(2)],
                "std_error": [r.std_error(0), r.std_error(1), r.std_error(2)],
                "exact": [exact.p0, exact.p1, exact.p2],
                "z": [z(0, exact.p0), z(1, exact.p1), z(2, exact.p2)],
            });
            let extra = json!({ "n_traj": n_traj });
            emit_json(&dir, &out, &value, manifest("mc", Some(&params), extra, Some(seed)))
        }
        Command::Purify {
            p1,
            eta,
            steps_j,
            engine,
            out,
        } => {
            let source = if engine {
                PairSource::engine_1cw(&herald_core::protocols::SchemeParams1cw::from_p1(p1, eta))?
            } else {
                PairSource::analytic_1cw(p1, eta)?
            };
            let mut table = Table::new(&["J", "n_pairs", "step_probability", "p_pur", "p_total", "f_pur"]);
            for plan in plan_sequence(&source, steps_j)? {
                let last = plan.step_probabilities.last().copied().unwrap_or(1.0);
                table.push(vec![
                    plan.j.into(),
                    sweeps::Value::Int(plan.n_pairs as i64),
                    last.into(),
                    plan.p_pur.into(),
                    plan.p_total.into(),
                    plan.f_pur.into(),
                ]);
            }
            let extra = json!({ "p1": p1, "eta": eta, "steps_J": steps_j, "engine": engine });
            emit_table(&dir, &out, &table, manifest("purify", None, extra, None))
        }
        Command::Region {
            fth,
            steps_j,
            p1_min,
            p1_max,
            p1_steps,
            eta_min,
            eta_max,
            eta_steps,
            out,
        } => {
            let spec = RegionSpec {
                p1_range: (p1_min, p1_max),
                eta_range: (eta_min, eta_max),
                p1_steps,
                eta_steps,
                f_th: fth,
                j_list: steps_j,
            };
            let table = region_table(&region_map(&spec)?);
            let extra = serde_json::to_value(&spec).map_err(Error::from)?;
            emit_table(&dir, &out, &table, manifest("region", None, extra, None))
        }
        Command::Benchmark { preset, out } => {
            let r = sweeps::benchmark(&preset)?;
            let p = sweeps::preset(&preset)?;
            let value = serde_json::to_value(&r).map_err(Error::from)?;
            emit_json(
                &dir,
                &out,
                &value,
                manifest("benchmark", Some(&p.params), json!({ "preset": preset }), None),
            )
        }
        Command::Check { suite } => {
            let suite: CheckSuite = suite.parse()?;
            let report = run_check(suite)?;
            for m in &report.metrics {
                let status = if m.passed() { "ok" } else { "FAIL" };
                println!("{status:4} {:<40} {:.3e} (< {:.0e})", m.name, m.value, m.tolerance);
            }
            if report.passed() {
                println!("{suite}: passed");
                Ok(())
            } else {
                Err(Failure::Suite(format!("{suite}: failed")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Suite(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("I/O error: {msg}");
            ExitCode::from(3)
        }
    }
}
