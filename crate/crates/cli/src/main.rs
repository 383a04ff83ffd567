//! Command-line front end: single-state reports, photon-number sweeps and
//! an oracle-verification mode.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or parameter validation,
//! 3 sweep finished with non-converged optimizer rows, 4 verification
//! failure.

mod report;
mod sweep;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gaussent::{LogBase, StateParams};

use report::measure_state;
use sweep::{fig_preset, render_sweep, Spacing, SweepSpec, MEASURE_COLUMNS};
use verify::{render_report, run_verify, VerifyConfig, LAMBDA_CAP, V_CAP};

#[derive(Parser)]
#[command(
    name = "gaussent",
    version,
    about = "Entanglement measures for two-mode squeezed non-symmetric thermal states"
)]
struct Cli {
    /// Logarithm base for all entropic quantities
    #[arg(long, global = true, default_value = "2", value_parser = ["2", "e"])]
    log_base: String,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute all measures for one state
    Measure(MeasureArgs),
    /// Sweep the mode-A photon number at fixed lambda and ratio, write CSV
    Sweep(SweepArgs),
    /// Cross-check the closed forms against the truncated Fock oracle
    Verify(VerifyArgs),
}

#[derive(Args)]
struct MeasureArgs {
    /// Squeeze strength λ = tanh r (requires --va and --vb)
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    va: Option<f64>,
    #[arg(long)]
    vb: Option<f64>,
    /// Squeeze parameter r (requires --na and --nb)
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    na: Option<f64>,
    #[arg(long)]
    nb: Option<f64>,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Figure preset (1: GEoF across ratios, 2: bound vs coherent information)
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    fig: Option<u8>,
    #[arg(long)]
    lambda: Option<f64>,
    /// Photon-number ratio N_B / N_A
    #[arg(long)]
    ratio: Option<f64>,
    #[arg(long)]
    na_min: Option<f64>,
    #[arg(long)]
    na_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Grid spacing of n_a
    #[arg(long, default_value = "linear", value_parser = ["linear", "log"])]
    spacing: String,
    /// Measure columns to populate (default: all)
    #[arg(long, value_delimiter = ',')]
    outputs: Option<Vec<String>>,
    /// Output CSV path (single sweep or --fig 2)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output directory for preset files
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Photon cutoff per mode of the truncated oracle
    #[arg(long, default_value_t = 40)]
    dim: usize,
    /// Largest lambda of the verification grid
    #[arg(long, default_value_t = LAMBDA_CAP)]
    lambda_max: f64,
    /// Largest thermal parameter of the verification grid
    #[arg(long, default_value_t = V_CAP)]
    v_max: f64,
    /// Allow grid scope beyond the fast-tier caps (slower, larger dims advised)
    #[arg(long)]
    slow: bool,
    /// Random edge points per state for the relative-entropy check
    #[arg(long, default_value_t = 5)]
    edges: usize,
    /// Verify a single state `lambda,v_a,v_b` instead of the grid
    #[arg(long)]
    state: Option<String>,
}

fn parse_base(label: &str) -> LogBase {
    match label {
        "e" => LogBase::Natural,
        _ => LogBase::Two,
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn cmd_measure(args: &MeasureArgs, base: LogBase) -> ExitCode {
    let canonical = [args.lambda, args.va, args.vb];
    let physical = [args.r, args.na, args.nb];
    let state = match (
        canonical.iter().all(Option::is_some),
        canonical.iter().any(Option::is_some),
        physical.iter().all(Option::is_some),
        physical.iter().any(Option::is_some),
    ) {
        (true, _, _, false) => {
            StateParams::new(args.lambda.unwrap(), args.va.unwrap(), args.vb.unwrap())
        }
        (_, false, true, _) => {
            StateParams::from_physical(args.r.unwrap(), args.na.unwrap(), args.nb.unwrap())
        }
        _ => {
            return usage_error(
                "give exactly one parametrization: --lambda --va --vb, or --r --na --nb",
            )
        }
    };
    let state = match state {
        Ok(s) => s,
        Err(e) => return usage_error(&e.to_string()),
    };
    match measure_state(&state, base) {
        Ok(rep) => {
            if args.json {
                println!("{}", serde_json::to_string_pretty(&rep).unwrap());
            } else {
                print!("{}", rep.render_text());
            }
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(&e.to_string()),
    }
}

fn write_file(path: &Path, bytes: &str) -> Result<(), String> {
    std::fs::write(path, bytes).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn cmd_sweep(args: &SweepArgs, base: LogBase) -> ExitCode {
    let mut all_converged = true;
    if let Some(fig) = args.fig {
        for (name, spec) in fig_preset(fig) {
            let (csv, converged) = match render_sweep(&spec, base) {
                Ok(r) => r,
                Err(msg) => return usage_error(&msg),
            };
            all_converged &= converged;
            let path = match (&args.out, fig) {
                (Some(out), 2) => out.clone(),
                _ => args.out_dir.join(name),
            };
            if let Err(msg) = write_file(&path, &csv) {
                eprintln!("error: {msg}");
                return ExitCode::from(1);
            }
            println!("wrote {}", path.display());
        }
    } else {
        let (Some(lambda), Some(ratio), Some(na_min), Some(na_max), Some(steps)) = (
            args.lambda,
            args.ratio,
            args.na_min,
            args.na_max,
            args.steps,
        ) else {
            return usage_error(
                "either --fig N or all of --lambda --ratio --na-min --na-max --steps",
            );
        };
        let Some(out) = &args.out else {
            return usage_error("--out is required for a manual sweep");
        };
        let spec = SweepSpec {
            lambda,
            ratio,
            n_a_min: na_min,
            n_a_max: na_max,
            steps,
            spacing: if args.spacing == "log" {
                Spacing::Log
            } else {
                Spacing::Linear
            },
            outputs: args
                .outputs
                .clone()
                .unwrap_or_else(|| MEASURE_COLUMNS.iter().map(|s| s.to_string()).collect()),
        };
        let (csv, converged) = match render_sweep(&spec, base) {
            Ok(r) => r,
            Err(msg) => return usage_error(&msg),
        };
        all_converged &= converged;
        if let Err(msg) = write_file(out, &csv) {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
        println!("wrote {}", out.display());
    }
    if all_converged {
        ExitCode::SUCCESS
    } else {
        eprintln!("warning: some rows carry converged=false");
        ExitCode::from(3)
    }
}

fn cmd_verify(args: &VerifyArgs, base: LogBase) -> ExitCode {
    if !args.slow && (args.lambda_max > LAMBDA_CAP + 1e-12 || args.v_max > V_CAP + 1e-12) {
        return usage_error(&format!(
            "grid scope beyond λ ≤ {LAMBDA_CAP}, v ≤ {V_CAP} needs --slow"
        ));
    }
    let state = match &args.state {
        None => None,
        Some(spec) => {
            let parts: Vec<_> = spec.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return usage_error("--state expects `lambda,v_a,v_b`");
            }
            let mut vals = [0.0; 3];
            for (slot, text) in vals.iter_mut().zip(&parts) {
                match text.parse::<f64>() {
                    Ok(v) => *slot = v,
                    Err(_) => return usage_error(&format!("cannot parse `{text}` as a number")),
                }
            }
            let s = match StateParams::new(vals[0], vals[1], vals[2]) {
                Ok(s) => s,
                Err(e) => return usage_error(&e.to_string()),
            };
            let in_caps = s.lambda() <= LAMBDA_CAP + 1e-12
                && s.v_a() <= V_CAP + 1e-12
                && s.v_b() <= V_CAP + 1e-12;
            if !args.slow && !in_caps {
                return usage_error(&format!(
                    "state beyond the fast-tier caps λ ≤ {LAMBDA_CAP}, v ≤ {V_CAP} needs --slow"
                ));
            }
            Some(s)
        }
    };
    let cfg = VerifyConfig {
        dim: args.dim,
        lambda_max: args.lambda_max,
        v_max: args.v_max,
        edges_per_state: args.edges,
        state,
        base,
    };
    let checks = run_verify(&cfg);
    print!("{}", render_report(&checks));
    if checks.iter().all(|c| c.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(4)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let base = parse_base(&cli.log_base);
    match &cli.cmd {
        Cmd::Measure(args) => cmd_measure(args, base),
        Cmd::Sweep(args) => cmd_sweep(args, base),
        Cmd::Verify(args) => cmd_verify(args, base),
    }
}
