//! `frameproj`: command-line front end for the tight-frame projection
//! toolkit.
//!
//! Exit codes: 0 success (certificate passed / verdict projectable),
//! 1 certificate failed, 2 invalid input, 3 mathematical infeasibility or
//! obstruction. Scripts rely on 2 vs 3 to tell malformed data from a
//! theorem-level "no".

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use frameproj::error::Error;
use frameproj::io;
use frameproj::verify::{optimal_level, DEFAULT_PROBES, DEFAULT_PROBE_SEED};
use frameproj::{
    classify, default_certificate_tol, frame_operator, jacobi_eigh, tighten_multop, tighten_with,
    verify_tight, Projection64, TightnessCertificate64,
};

#[derive(Parser)]
#[command(name = "frameproj", version, about = "Tight-frame projection toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print dimension, vector count, frame bounds, and the spectrum of a
    /// frame file.
    Analyze { path: PathBuf },
    /// Construct a projection making the frame tight on its range, with a
    /// residual certificate.
    Tighten {
        path: PathBuf,
        /// Level to hit: a number, or "auto" for the central spectral gap.
        #[arg(long, default_value = "auto", value_parser = parse_level)]
        alpha: LevelArg,
        /// Certificate tolerance; defaults to 1e-9 * (1 + max |S|).
        #[arg(long)]
        tol: Option<f64>,
        /// Write the report JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Probe seed recorded in the certificate.
        #[arg(long, default_value_t = DEFAULT_PROBE_SEED)]
        seed: u64,
    },
    /// Decide projectability for a spectrum-model file.
    Classify { path: PathBuf },
    /// Run the two-stage multiplication-operator tightening for a symbol
    /// file.
    Multop {
        path: PathBuf,
        /// Stage-1 blocks per spectral region.
        #[arg(long, default_value_t = 16)]
        n: usize,
        /// Certificate tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Check a stored projection against a frame at a given level.
    Verify {
        frame_path: PathBuf,
        proj_path: PathBuf,
        /// Level to verify: a number, or "auto" for the least-squares level.
        #[arg(long, default_value = "auto", value_parser = parse_level)]
        alpha: LevelArg,
        /// Certificate tolerance; defaults to 1e-9 * (1 + max |S|).
        #[arg(long)]
        tol: Option<f64>,
        /// Probe seed recorded in the certificate.
        #[arg(long, default_value_t = DEFAULT_PROBE_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug)]
enum LevelArg {
    Auto,
    Value(f64),
}

fn parse_level(s: &str) -> Result<LevelArg, String> {
    if s == "auto" {
        return Ok(LevelArg::Auto);
    }
    s.parse::<f64>()
        .map(LevelArg::Value)
        .map_err(|_| format!("expected a number or \"auto\", got {s:?}"))
}

#[derive(Serialize)]
struct TightenReport {
    alpha: f64,
    projection: Projection64,
    certificate: TightnessCertificate64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> ExitCode {
    match e {
        Error::CertificateFailed(_) => ExitCode::from(1),
        Error::InfeasibleAlpha { .. }
        | Error::Infeasible(_)
        | Error::NotApplicable(_)
        | Error::Obstruction(_)
        | Error::InsufficientTruncation(_)
        | Error::PartitionExhausted { .. } => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Analyze { path } => {
            let frame = io::load_frame(&path)?;
            let s = frame_operator(&frame)?;
            let eig = jacobi_eigh(&s, 1e-14)?;
            let a = eig.eigenvalues[0];
            let b = eig.eigenvalues[eig.dim() - 1];
            let tol = 1e-10 * (1.0 + b.abs());
            println!("dim: {}", frame.dim);
            println!("vectors: {}", frame.len());
            println!("frame bounds: A = {a}, B = {b}");
            println!(
                "frame for R^{}: {}",
                frame.dim,
                if a > tol { "yes" } else { "no" }
            );
            println!("tight: {}", if (b - a).abs() <= tol { "yes" } else { "no" });
            let spectrum: Vec<String> = eig.eigenvalues.iter().map(|v| v.to_string()).collect();
            println!("eigenvalues: [{}]", spectrum.join(", "));
            Ok(ExitCode::SUCCESS)
        }
        Command::Tighten {
            path,
            alpha,
            tol,
            out,
            seed,
        } => {
            let frame = io::load_frame(&path)?;
            let s = frame_operator(&frame)?;
            let tol = tol.unwrap_or_else(|| default_certificate_tol(&s));
            let level = match alpha {
                LevelArg::Auto => None,
                LevelArg::Value(v) => Some(v),
            };
            let (projection, alpha, certificate) =
                tighten_with(&frame, level, tol, DEFAULT_PROBES, seed)?;
            let report = TightenReport {
                alpha,
                projection,
                certificate,
            };
            let text = io::to_json_pretty(&report)?;
            match out {
                Some(out_path) => std::fs::write(out_path, text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { path } => {
            let model = io::load_model(&path)?;
            let classification = classify(&model)?;
            print!("{}", io::to_json_pretty(&classification)?);
            if classification.verdict.is_projectable() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(3))
            }
        }
        Command::Multop { path, n, tol } => {
            let spec = io::load_multop_spec(&path)?;
            let result = tighten_multop(&spec, n, tol)?;
            print!("{}", io::to_json_pretty(&result.certificate)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            frame_path,
            proj_path,
            alpha,
            tol,
            seed,
        } => {
            let frame = io::load_frame(&frame_path)?;
            let projection = io::load_projection(&proj_path)?;
            let s = frame_operator(&frame)?;
            let tol = tol.unwrap_or_else(|| default_certificate_tol(&s));
            let alpha = match alpha {
                LevelArg::Auto => optimal_level(&frame, &projection)?,
                LevelArg::Value(v) => v,
            };
            let certificate = verify_tight(&frame, &projection, alpha, tol, DEFAULT_PROBES, seed)?;
            print!("{}", io::to_json_pretty(&certificate)?);
            if certificate.pass {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}
