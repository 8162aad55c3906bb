//! `qfid`: fidelity, divergences, Chebyshev coefficients, random states,
//! POVM checks and timing tables from the command line.
//!
//! Exit codes: 0 success, 2 bad arguments, 3 file or format error,
//! 4 validation error, 5 numerical failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qfid_core::chebyshev::{coeffs_by_quadrature, default_nodes, power_coeffs, sqrt_coeffs_closed};
use qfid_core::harness::{run_bench, write_records, BenchConfig, BenchMethod};
use qfid_core::measures::{
    alpha_z_divergence, classical_fidelity, fidelity, relative_entropy, renyi_divergence, sandwiched_renyi,
    FidelityMethod, DEFAULT_CHEB_DEGREE,
};
use qfid_core::povm::minimization_evidence;
use qfid_core::states::io::{load_matrix, read_prob_vector, write_matrix, write_matrix_text};
use qfid_core::states::{random_density_ginibre, repair_density, validate_density};
use qfid_core::{DensityMatrix, Error, ErrorClass, SeededRng};

#[derive(Parser)]
#[command(
    name = "qfid",
    version,
    about = "Quantum fidelity and Rényi divergences along independent routes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fidelity between two density matrices.
    Fidelity {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Chebyshev degree (cheb only).
        #[arg(long, default_value_t = DEFAULT_CHEB_DEGREE)]
        degree: usize,
        /// Hutchinson probes; 0 takes exact moments (cheb only).
        #[arg(long, default_value_t = 0)]
        probes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rényi-family divergence D(ρ‖σ) in nats.
    Divergence {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Order α (> 0, ≠ 1); ignored for `relative`.
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        /// z for alpha-z (> 0); defaults to α.
        #[arg(long, allow_negative_numbers = true)]
        z: Option<f64>,
    },
    /// Squared Bhattacharyya coefficient of two probability vectors.
    Classical {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
    },
    /// Chebyshev coefficients of √x or xᶻ on [0, b].
    ChebCoeffs {
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = FuncArg::Sqrt)]
        func: FuncArg,
        #[arg(long, allow_negative_numbers = true)]
        exponent: Option<f64>,
        #[arg(long, value_enum, default_value_t = ModeArg::Closed)]
        mode: ModeArg,
        /// Quadrature nodes; defaults to max(8(N+1), 65536).
        #[arg(long)]
        nodes: Option<usize>,
    },
    /// Random Ginibre density matrix.
    Randgen {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Qdm1)]
        format: FormatArg,
    },
    /// Random POVM overlaps versus the optimal measurement.
    PovmCheck {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Timing table of the fidelity routes, written as CSV.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long)]
        trials: usize,
        #[arg(long, value_delimiter = ',', default_value = "uhlmann,product")]
        methods: Vec<BenchMethod>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CHEB_DEGREE)]
        degree: usize,
        #[arg(long, default_value_t = 64)]
        probes: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(clap::Args)]
struct PairArgs {
    /// QDM1 or text matrix file.
    #[arg(long)]
    rho: PathBuf,
    #[arg(long)]
    sigma: PathBuf,
    /// Symmetrize, renormalize and clamp slightly invalid inputs instead of
    /// rejecting them.
    #[arg(long)]
    repair: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Uhlmann,
    Product,
    Cheb,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum KindArg {
    Renyi,
    Sandwiched,
    AlphaZ,
    Relative,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum FuncArg {
    Sqrt,
    Power,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ModeArg {
    Closed,
    Quadrature,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Qdm1,
    Text,
}

#[derive(Serialize)]
struct FidelityOut {
    value: f64,
    method: &'static str,
    std_error: Option<f64>,
    diagonalizations: usize,
    multiplications: usize,
}

#[derive(Serialize)]
#[serde(untagged)]
enum DivergenceValue {
    Finite(f64),
    Infinite(&'static str),
}

#[derive(Serialize)]
struct DivergenceOut {
    value: DivergenceValue,
    reason: Option<&'static str>,
    kind: KindArg,
    alpha: Option<f64>,
    z: Option<f64>,
}

#[derive(Serialize)]
struct ValueOut {
    value: f64,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CmdResult = Result<(), Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn load_density(path: &Path, repair: bool) -> Result<DensityMatrix, Failure> {
    let m = load_matrix(path)?;
    if !repair {
        return Ok(validate_density(&m)?);
    }
    let (rho, log) = repair_density(&m)?;
    eprintln!(
        "repaired {}: hermitian residual {:.3e}, trace before {:.17}, {} eigenvalue(s) clamped",
        path.display(),
        log.hermitian_residual,
        log.trace_before,
        log.clamped_eigenvalues
    );
    Ok(rho)
}

fn load_pair(p: &PairArgs) -> Result<(DensityMatrix, DensityMatrix), Failure> {
    Ok((load_density(&p.rho, p.repair)?, load_density(&p.sigma, p.repair)?))
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string(v).expect("serializable output"));
}

fn check_alpha(alpha: Option<f64>) -> Result<f64, Failure> {
    match alpha {
        None => usage("--alpha is required unless --kind relative"),
        Some(1.0) => usage("--alpha 1 is only meaningful as --kind relative"),
        Some(a) if !(a.is_finite() && a > 0.0) => usage(format!("--alpha must be positive (got {a})")),
        Some(a) => Ok(a),
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Fidelity {
            pair,
            method,
            degree,
            probes,
            seed,
        } => {
            let (rho, sigma) = load_pair(&pair)?;
            let method = match method {
                MethodArg::Uhlmann => FidelityMethod::Uhlmann,
                MethodArg::Product => FidelityMethod::Product,
                MethodArg::Cheb => FidelityMethod::Cheb,
            };
            let r = fidelity(&rho, &sigma, method, degree, probes, &mut SeededRng::new(seed))?;
            print_json(&FidelityOut {
                value: r.value,
                method: method.as_str(),
                std_error: r.std_error,
                diagonalizations: r.diagonalizations,
                multiplications: r.multiplications,
            });
        }
        Command::Divergence { pair, kind, alpha, z } => {
            let alpha = match kind {
                KindArg::Relative => None,
                _ => Some(check_alpha(alpha)?),
            };
            let z = match (kind, z) {
                (KindArg::AlphaZ, Some(z)) if !(z.is_finite() && z > 0.0) => {
                    return usage(format!("--z must be positive (got {z})"))
                }
                (KindArg::AlphaZ, z) => Some(z.unwrap_or(alpha.unwrap())),
                _ => None,
            };
            let (rho, sigma) = load_pair(&pair)?;
            let d = match kind {
                KindArg::Renyi => renyi_divergence(&rho, &sigma, alpha.unwrap())?,
                KindArg::Sandwiched => sandwiched_renyi(&rho, &sigma, alpha.unwrap())?,
                KindArg::AlphaZ => alpha_z_divergence(&rho, &sigma, alpha.unwrap(), z.unwrap())?,
                KindArg::Relative => relative_entropy(&rho, &sigma)?,
            };
            let (value, reason) = if d.support_violation {
                (DivergenceValue::Infinite("inf"), Some("support"))
            } else {
                (DivergenceValue::Finite(d.value), None)
            };
            print_json(&DivergenceOut {
                value,
                reason,
                kind,
                alpha,
                z,
            });
        }
        Command::Classical { p, q } => {
            let value = classical_fidelity(&read_prob_vector(&p)?, &read_prob_vector(&q)?)?;
            print_json(&ValueOut { value });
        }
        Command::ChebCoeffs {
            b,
            degree,
            func,
            exponent,
            mode,
            nodes,
        } => {
            if !(b.is_finite() && b > 0.0) {
                return usage(format!("--b must be positive (got {b})"));
            }
            let nodes = nodes.unwrap_or_else(|| default_nodes(degree));
            let series = match (func, mode) {
                (FuncArg::Power, ModeArg::Closed) => {
                    return usage("closed mode is only available for --func sqrt; use --mode quadrature")
                }
                (FuncArg::Sqrt, ModeArg::Closed) => sqrt_coeffs_closed(b, degree)?,
                (FuncArg::Sqrt, ModeArg::Quadrature) => coeffs_by_quadrature(f64::sqrt, b, degree, nodes)?,
                (FuncArg::Power, ModeArg::Quadrature) => {
                    let z = match exponent {
                        Some(z) if z.is_finite() && z > 0.0 => z,
                        Some(z) => return usage(format!("--exponent must be positive (got {z})")),
                        None => return usage("--func power needs --exponent"),
                    };
                    power_coeffs(z, b, degree, nodes)?
                }
            };
            print_json(&series.coeffs());
        }
        Command::Randgen {
            dim,
            rank,
            seed,
            out,
            format,
        } => {
            if dim == 0 || rank == 0 || rank > dim {
                return usage(format!("need 1 ≤ rank ≤ dim (got rank {rank}, dim {dim})"));
            }
            let rho = random_density_ginibre(dim, rank, &mut SeededRng::new(seed))?;
            match format {
                FormatArg::Qdm1 => write_matrix(&out, rho.matrix())?,
                FormatArg::Text => write_matrix_text(&out, rho.matrix())?,
            }
        }
        Command::PovmCheck { pair, samples, seed } => {
            let (rho, sigma) = load_pair(&pair)?;
            print_json(&minimization_evidence(
                &rho,
                &sigma,
                samples,
                &mut SeededRng::new(seed),
            )?);
        }
        Command::Bench {
            dims,
            trials,
            methods,
            seed,
            degree,
            probes,
            out,
        } => {
            if dims.contains(&0) {
                return usage("--dims entries must be at least 1");
            }
            let rows = run_bench(&BenchConfig {
                dims,
                trials,
                methods,
                seed,
                degree,
                probes,
            })?;
            write_records(&out, &rows)?;
        }
    }
    Ok(())
}

fn exit_code(class: ErrorClass) -> u8 {
    match class {
        ErrorClass::Format => 3,
        ErrorClass::Validation => 4,
        ErrorClass::Numerical => 5,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.class()))
        }
    }
}
