//! Command-line frontend: classify plaintext sets, synthesize and verify
//! private quantum channels, emit frontier and figure data, and simulate
//! keyed transmissions.

mod files;

use clap::{Parser, Subcommand};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode as ProcessExit;

use pqc_core::apqc::{analytic_frontier, brute_force_frontier, depolarizing_curve, epsilon_for_set};
use pqc_core::pqc::{classify_with_tol, optimal_pqc, verify_pqc};
use pqc_core::protocol::{audit, generate_key, Message};
use pqc_core::qmath::h_function;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Parse = 2,
    InvalidState = 3,
    InfeasibleTheta = 4,
    CpViolation = 5,
}

#[derive(Debug)]
pub struct AppError {
    code: ExitCode,
    message: String,
}

impl AppError {
    pub fn new(code: ExitCode, message: String) -> Self {
        AppError { code, message }
    }
}

impl From<pqc_core::Error> for AppError {
    fn from(e: pqc_core::Error) -> Self {
        use pqc_core::Error::*;
        let code = match e {
            UnphysicalBloch(_) | InvalidState(_) | EmptySet => ExitCode::InvalidState,
            ThetaExceedsDelta { .. } => ExitCode::InfeasibleTheta,
            NotCompletelyPositive(_) => ExitCode::CpViolation,
            _ => ExitCode::Parse,
        };
        AppError::new(code, e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "pqc", about = "Single-qubit private quantum channel toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the trace-preserving hull of a plaintext set.
    Classify {
        #[arg(long)]
        states: PathBuf,
        /// Singular-value threshold for rank decisions.
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Synthesize the optimal channel for a set and ciphertext distance.
    Optimal {
        #[arg(long)]
        states: PathBuf,
        /// Target trace distance of the ciphertext from the total mixture.
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// Write the synthesized channel file here as well.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Check that a channel encrypts a set to a single ciphertext.
    Verify {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        states: PathBuf,
        /// Accept residual ciphertext spread up to this distance.
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Entropy-security frontier CSV over epsilon in [0, 2].
    Frontier {
        #[arg(long, default_value_t = 0.005)]
        step: f64,
        #[arg(long, default_value_t = 0.01)]
        bin: f64,
        #[arg(long)]
        out: PathBuf,
        /// Also run the grid enumeration and emit its per-bin minima.
        #[arg(long)]
        brute: bool,
    },
    /// Figure data: 1 = entropy vs theta/delta, 2 = depolarizing curve,
    /// 3 = optimal frontier.
    Figure {
        #[arg(long)]
        which: u8,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encrypt/decrypt a message and audit round trip and leakage.
    Simulate {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        states: PathBuf,
        /// Number of transmitted slots (the states file is cycled).
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Serialize)]
struct ClassifyReport {
    dim: usize,
    delta: f64,
    anchor: [f64; 3],
    basis: Vec<[f64; 3]>,
}

#[derive(Serialize)]
struct OptimalReport {
    entropy: f64,
    theta: f64,
    ciphertext: [f64; 3],
    channel: files::ChannelFile,
}

#[derive(Serialize)]
struct VerifyReport {
    ok: bool,
    ciphertext: [f64; 3],
    max_deviation: f64,
    epsilon: f64,
}

#[derive(Serialize)]
struct SimulateReport {
    n_slots: usize,
    max_roundtrip_error: f64,
    eavesdropper_ciphertext: [f64; 3],
    max_eavesdropper_deviation: f64,
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

fn write_text(path: &PathBuf, text: &str) -> Result<(), AppError> {
    std::fs::write(path, text)
        .map_err(|e| AppError::new(ExitCode::Parse, format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Classify { states, tol } => {
            let set = files::load_states(&states)?;
            let hull = classify_with_tol(&set, tol);
            print_json(&ClassifyReport {
                dim: hull.affine_dim,
                delta: hull.delta,
                anchor: files::bloch_triple(&hull.anchor),
                basis: hull.basis.iter().map(files::bloch_triple).collect(),
            });
        }
        Command::Optimal { states, theta, out, tol } => {
            let set = files::load_states(&states)?;
            let hull = classify_with_tol(&set, tol);
            let sol = optimal_pqc(&hull, theta)?;
            let channel = files::channel_to_file(&sol.channel, &sol.decomposition);
            if let Some(path) = &out {
                let text = serde_json::to_string_pretty(&channel).expect("channel serializes");
                write_text(path, &text)?;
            }
            print_json(&OptimalReport {
                entropy: sol.key_entropy,
                theta: sol.theta,
                ciphertext: files::bloch_triple(&sol.ciphertext),
                channel,
            });
        }
        Command::Verify { channel, states, epsilon, tol } => {
            let ch = files::load_channel(&channel)?;
            let set = files::load_states(&states)?;
            let check = verify_pqc(&ch, &set, epsilon.unwrap_or(tol))?;
            let eps = epsilon_for_set(&ch, &set)?;
            print_json(&VerifyReport {
                ok: check.ok,
                ciphertext: files::bloch_triple(&check.ciphertext),
                max_deviation: check.max_deviation,
                epsilon: eps,
            });
        }
        Command::Frontier { step, bin, out, brute } => {
            let text = frontier_csv(step, bin, brute)?;
            write_text(&out, &text)?;
        }
        Command::Figure { which, out } => {
            let text = figure_csv(which)?;
            write_text(&out, &text)?;
        }
        Command::Simulate { channel, states, n, seed } => {
            let ch = files::load_channel(&channel)?;
            let set = files::load_states(&states)?;
            let slots: Vec<_> = set.states().iter().cycle().take(n).cloned().collect();
            let msg = Message::new(slots)?;
            let key = generate_key(&ch, n, seed);
            let report = audit(&msg, &ch, &key)?;
            print_json(&SimulateReport {
                n_slots: report.n_slots,
                max_roundtrip_error: report.max_roundtrip_error,
                eavesdropper_ciphertext: files::bloch_triple(&report.eavesdropper_ciphertext),
                max_eavesdropper_deviation: report.max_eavesdropper_deviation,
            });
        }
    }
    Ok(())
}

/// Rows at the lower edge of each bin, so epsilon = 0 appears explicitly.
fn frontier_csv(step: f64, bin: f64, brute: bool) -> Result<String, AppError> {
    let curve = if brute {
        Some(brute_force_frontier(step, bin)?)
    } else {
        if !(0.0 < step && step <= 0.02) || bin < step {
            return Err(AppError::new(
                ExitCode::Parse,
                format!("step must lie in (0, 0.02] and bin >= step (step {step}, bin {bin})"),
            ));
        }
        None
    };
    let n_bins = (2.0 / bin).round() as usize;
    let mut by_bin = vec![None; n_bins + 1];
    if let Some(c) = &curve {
        for p in &c.points {
            let idx = ((p.epsilon / bin) as usize).min(n_bins);
            by_bin[idx] = Some(*p);
        }
    }
    let mut text = String::new();
    if brute {
        text.push_str("epsilon,H_analytic,H_brute,lx,ly,lz\n");
    } else {
        text.push_str("epsilon,H_analytic\n");
    }
    for k in 0..=n_bins {
        let eps = (k as f64 * bin).min(2.0);
        let h = analytic_frontier(eps)?;
        if brute {
            match by_bin[k] {
                Some(p) => text.push_str(&format!(
                    "{eps},{h},{},{},{},{}\n",
                    p.entropy, p.lambda.lx, p.lambda.ly, p.lambda.lz
                )),
                None => text.push_str(&format!("{eps},{h},,,,\n")),
            }
        } else {
            text.push_str(&format!("{eps},{h}\n"));
        }
    }
    Ok(text)
}

fn figure_csv(which: u8) -> Result<String, AppError> {
    let mut text = String::new();
    match which {
        1 => {
            text.push_str("theta_over_delta,H_line,H_plane\n");
            for i in 0..=100 {
                let t = i as f64 / 100.0;
                let h_plane = 2.0 - 0.5 * h_function(t)?;
                text.push_str(&format!("{t},1,{h_plane}\n"));
            }
        }
        2 => {
            let grid: Vec<f64> = (0..=200).map(|i| i as f64 / 100.0).collect();
            text.push_str("epsilon,H\n");
            for (eps, h) in depolarizing_curve(&grid)? {
                text.push_str(&format!("{eps},{h}\n"));
            }
        }
        3 => {
            text.push_str("epsilon,H\n");
            for i in 0..=400 {
                let eps = i as f64 / 200.0;
                text.push_str(&format!("{eps},{}\n", analytic_frontier(eps)?));
            }
        }
        _ => {
            return Err(AppError::new(
                ExitCode::Parse,
                format!("--which must be 1, 2 or 3 (got {which})"),
            ));
        }
    }
    Ok(text)
}

fn main() -> ProcessExit {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ProcessExit::SUCCESS,
        Err(e) => {
            let mut stderr = std::io::stderr();
            let _ = writeln!(stderr, "error: {}", e.message);
            ProcessExit::from(e.code as u8)
        }
    }
}
