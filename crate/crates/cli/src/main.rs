//! `racah` — exact Racah/Leonard-pair computations and verification
//! campaigns from the command line.
//!
//! Exit codes: 0 on success (and on passing campaigns), 1 when a campaign
//! reports a violation or a domain check fails, 2 on usage errors.

mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_rational::BigRational;

use racah_exact::hyper::{eval_4f3_unit, HypParams};
use racah_exact::intersection::{route_by_name, ROUTES};
use racah_exact::racah::{racah_w, SpinSextuple};
use racah_exact::verify::{campaign_by_name, CampaignConfig, CAMPAIGNS};
use racah_exact::RacahSystem;

use render::OutputFormat;

#[derive(Parser)]
#[command(
    name = "racah",
    version,
    about = "Exact Racah polynomials, Racah coefficients, Leonard-pair matrices and identity verification"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "pretty")]
    format: OutputFormat,

    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficient tables a, b, c, theta, k and nu of the Racah system.
    System {
        #[arg(long)]
        d: usize,
    },
    /// Table of Racah polynomial values u_i(theta_j).
    Utable {
        #[arg(long)]
        d: usize,
    },
    /// The duality matrix P (P^2 = (D+1)^2 I).
    Pmatrix {
        #[arg(long)]
        d: usize,
    },
    /// The matrix B_i = v_i(A).
    Bmatrix {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        i: usize,
    },
    /// Intersection numbers p^h_{i,j} through a selected route.
    Ptensor {
        #[arg(long)]
        d: usize,
        /// matrix | sum | racah | appendix | all
        #[arg(long, default_value = "matrix")]
        route: String,
    },
    /// Evaluate a terminating 4F3 at unit argument.
    F43 {
        /// Four upper parameters, comma-separated exact rationals.
        #[arg(long, allow_hyphen_values = true)]
        upper: String,
        /// Three lower parameters, comma-separated exact rationals.
        #[arg(long, allow_hyphen_values = true)]
        lower: String,
    },
    /// Racah coefficient W(a,b,c,d;e,f).
    W {
        /// Six spins as twice-values (integers), comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        spins: String,
        /// Mark that the spin values are in half units (twice the spin).
        /// This is the only input convention; the flag is accepted for
        /// explicitness.
        #[arg(long)]
        half: bool,
    },
    /// Run a verification campaign: kt | leonard | intersection | be | wclosed | whipple.
    Verify {
        campaign: String,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        d_min: Option<usize>,
        #[arg(long)]
        d_max: Option<usize>,
        /// Number of seeded samples (be, whipple).
        #[arg(long)]
        samples: Option<u64>,
        /// 64-bit seed for the deterministic sampler (be, whipple).
        #[arg(long)]
        seed: Option<u64>,
        /// Largest twice-spin drawn by the sampler (be).
        #[arg(long)]
        max_spin: Option<i64>,
    },
}

enum AppError {
    Usage(String),
    Domain(String),
}

fn usage(msg: impl Into<String>) -> AppError {
    AppError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = err.exit_code();
            let _ = err.print();
            return ExitCode::from(code.clamp(0, 255) as u8);
        }
    };
    let format = cli.format;
    let out_path = cli.out.clone();
    match run(cli) {
        Ok((text, code)) => {
            let written = match &out_path {
                Some(path) => fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(1);
            }
            code
        }
        Err(AppError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            let _ = format;
            ExitCode::from(2)
        }
        Err(AppError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(String, ExitCode), AppError> {
    let fmt = cli.format;
    match cli.command {
        Command::System { d } => {
            let sys = build_system(d)?;
            Ok((render::render_system(&sys, fmt), ExitCode::SUCCESS))
        }
        Command::Utable { d } => {
            let sys = build_system(d)?;
            Ok((render::render_matrix(&sys.u_table(), fmt), ExitCode::SUCCESS))
        }
        Command::Pmatrix { d } => {
            let sys = build_system(d)?;
            Ok((render::render_matrix(&sys.matrix_p(), fmt), ExitCode::SUCCESS))
        }
        Command::Bmatrix { d, i } => {
            let sys = build_system(d)?;
            if i > d {
                return Err(usage(format!("--i must be in 0..={d}, got {i}")));
            }
            let b = racah_exact::intersection::b_matrix(&sys, i);
            Ok((render::render_matrix(&b, fmt), ExitCode::SUCCESS))
        }
        Command::Ptensor { d, route } => {
            let sys = build_system(d)?;
            if route == "all" {
                let tensors: Vec<_> = ROUTES.iter().map(|r| r.compute(&sys)).collect();
                Ok((render::render_tensors(&tensors, fmt), ExitCode::SUCCESS))
            } else {
                let r = route_by_name(&route).ok_or_else(|| {
                    usage(format!(
                        "unknown route `{route}` (expected matrix, sum, racah, appendix or all)"
                    ))
                })?;
                Ok((render::render_tensor(&r.compute(&sys), fmt), ExitCode::SUCCESS))
            }
        }
        Command::F43 { upper, lower } => {
            let upper: [BigRational; 4] = parse_rationals(&upper, "--upper")?;
            let lower: [BigRational; 3] = parse_rationals(&lower, "--lower")?;
            let params = HypParams::new(upper, lower);
            let value = eval_4f3_unit(&params)
                .map_err(|e| AppError::Domain(e.to_string()))?;
            Ok((render::render_rational(&value, fmt), ExitCode::SUCCESS))
        }
        Command::W { spins, half: _ } => {
            let twices: [i64; 6] = parse_ints(&spins, "--spins")?;
            let sextuple = SpinSextuple::from_twices(twices)
                .map_err(|e| usage(e.to_string()))?;
            let w = racah_w(&sextuple);
            Ok((render::render_surd(&w, fmt), ExitCode::SUCCESS))
        }
        Command::Verify { campaign, d, d_min, d_max, samples, seed, max_spin } => {
            let c = campaign_by_name(&campaign).ok_or_else(|| {
                let names: Vec<&str> = CAMPAIGNS.iter().map(|c| c.name()).collect();
                usage(format!(
                    "unknown campaign `{campaign}` (expected one of {})",
                    names.join(", ")
                ))
            })?;
            let cfg = CampaignConfig {
                d,
                d_min,
                d_max,
                samples,
                seed,
                max_twice_spin: max_spin,
            };
            let report = c.run(&cfg).map_err(|e| usage(e.to_string()))?;
            let code = if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) };
            Ok((render::render_report(&report, fmt), code))
        }
    }
}

fn build_system(d: usize) -> Result<RacahSystem, AppError> {
    RacahSystem::new(d).map_err(|e| usage(e.to_string()))
}

fn parse_rationals<const N: usize>(
    list: &str,
    flag: &str,
) -> Result<[BigRational; N], AppError> {
    let parts: Vec<&str> = list.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(usage(format!(
            "{flag} expects {N} comma-separated values, got {}",
            parts.len()
        )));
    }
    let mut values = Vec::with_capacity(N);
    for part in parts {
        let v = BigRational::from_str(part)
            .map_err(|e| usage(format!("{flag}: cannot parse `{part}` as a rational: {e}")))?;
        values.push(v);
    }
    Ok(values.try_into().expect("length checked"))
}

fn parse_ints<const N: usize>(list: &str, flag: &str) -> Result<[i64; N], AppError> {
    let parts: Vec<&str> = list.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(usage(format!(
            "{flag} expects {N} comma-separated integers, got {}",
            parts.len()
        )));
    }
    let mut values = Vec::with_capacity(N);
    for part in parts {
        let v: i64 = part
            .parse()
            .map_err(|e| usage(format!("{flag}: cannot parse `{part}` as an integer: {e}")))?;
        values.push(v);
    }
    Ok(values.try_into().expect("length checked"))
}
