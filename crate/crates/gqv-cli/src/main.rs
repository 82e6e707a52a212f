//! Command-line front end: parse circuit files, conjugate Pauli literals,
//! run verification suites, synthesize circuits from tableaus, and wrap the
//! approximation procedures.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gqv::approx::{euler_reconstruct, qubit_euler_decompose, rotation_orbit_search, PhaseVector};
use gqv::clifford::{conjugate, tableau_from_circuit, Tableau};
use gqv::dense::{gauss_sum, max_abs_diff, mub_check, BasisKind, DenseOperator};
use gqv::error::GqvError;
use gqv::ring::DimensionSpec;
use gqv::suites::{run_verify, SuiteConfig};
use gqv::synth::synthesize;
use gqv::text::{parse_circuit, parse_pauli_literal, render_circuit, render_pauli_literal};
use gqv::tol;
use ndarray::Array2;
use num_complex::Complex64;

#[derive(Parser)]
#[command(
    name = "gqv",
    about = "Algebra engine for general quantum variables: Pauli conjugation, \
             verification suites, and Clifford synthesis",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugate a Pauli literal through a circuit file.
    Conjugate {
        /// Circuit file path.
        circuit: PathBuf,
        /// Pauli literal, e.g. "xi:0 x:1 z:0".
        pauli: String,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite: pauli, clifford, mub, gauss, eigen, or all.
    Verify {
        suite: String,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Synthesize a generator circuit from a circuit file or tableau JSON.
    Synth {
        /// Input path: a circuit file, or JSON (detected by a leading '{').
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check mutual unbiasedness of the three eigenbases.
    MubCheck {
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        d: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Compare brute-force and closed-form Gauss sums.
    GaussCheck {
        #[arg(long = "a-max", default_value_t = 16)]
        a_max: u64,
        #[arg(long)]
        json: bool,
    },
    /// Approximation tools: rotation orbits and the qubit Euler form.
    Euler {
        #[command(subcommand)]
        command: EulerCommand,
    },
}

#[derive(Args)]
struct ConfigArgs {
    /// Qudit dimensions, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
    d: Vec<u64>,
    /// Registers per random case.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Random cases per dimension.
    #[arg(long, default_value_t = 200)]
    cases: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Largest Gauss-sum denominator.
    #[arg(long = "a-max", default_value_t = 16)]
    a_max: u64,
}

#[derive(Subcommand)]
enum EulerCommand {
    /// Decompose a 2x2 unitary into rotation and Fourier factors.
    Decompose {
        /// Row-major entries as re,im pairs: re00,im00,re01,im01,...
        #[arg(long, value_delimiter = ',')]
        matrix: Vec<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Search the orbit of a diagonal rotation for a target rotation.
    Orbit {
        /// Angles of the stepped rotation, comma separated (first must be 0).
        #[arg(long, value_delimiter = ',')]
        phi: Vec<f64>,
        /// Angles of the target rotation, comma separated (first must be 0).
        #[arg(long, value_delimiter = ',')]
        target: Vec<f64>,
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
        #[arg(long, default_value_t = 100_000)]
        nmax: u64,
        #[arg(long)]
        json: bool,
    },
}

fn exit_code(e: &GqvError) -> u8 {
    match e {
        GqvError::ParseError { .. }
        | GqvError::InvalidInput(_)
        | GqvError::NotAUnit(_)
        | GqvError::IndexError { .. }
        | GqvError::TooLarge(_) => 2,
        GqvError::SpecMismatch(_, _) | GqvError::RegisterCountMismatch(_, _) => 3,
        GqvError::UnsupportedDimension(_) | GqvError::NonPrimeDimension(_) => 4,
        GqvError::NonSymplectic(_) => 5,
    }
}

fn read_file(path: &PathBuf) -> Result<String, GqvError> {
    std::fs::read_to_string(path)
        .map_err(|e| GqvError::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

/// Ok(true) → exit 0; Ok(false) → verification failure, exit 1.
fn run(cli: Cli) -> Result<bool, GqvError> {
    match cli.command {
        Command::Conjugate {
            circuit,
            pauli,
            json,
        } => {
            let circuit = parse_circuit(&read_file(&circuit)?)?;
            let p = parse_pauli_literal(circuit.spec(), circuit.n(), &pauli)?;
            let out = conjugate(&circuit, &p)?;
            if json {
                println!("{}", serde_json::to_string(&out).expect("serializable"));
            } else {
                println!("{}", render_pauli_literal(&out));
            }
            Ok(true)
        }
        Command::Verify { suite, config } => {
            let config = SuiteConfig {
                dims: config.d,
                n: config.n,
                cases: config.cases,
                seed: config.seed,
                a_max: config.a_max,
                tolerance: tol::suite_tolerance(),
            };
            let report = run_verify(&suite, &config)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
            Ok(report.pass)
        }
        Command::Synth { input, json } => {
            let text = read_file(&input)?;
            let tableau = if text.trim_start().starts_with('{') {
                let raw: Tableau = serde_json::from_str(&text)
                    .map_err(|e| GqvError::InvalidInput(format!("bad tableau JSON: {e}")))?;
                // Re-validate: deserialization bypasses the constructors.
                Tableau::from_images(raw.spec(), raw.n(), raw.images().to_vec())?
            } else {
                tableau_from_circuit(&parse_circuit(&text)?)?
            };
            let circuit = synthesize(&tableau)?;
            if json {
                let payload = serde_json::json!({
                    "gate_count": circuit.len(),
                    "circuit": render_circuit(&circuit),
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&payload).expect("serializable")
                );
            } else {
                print!("{}", render_circuit(&circuit));
                println!("# gates: {}", circuit.len());
            }
            Ok(true)
        }
        Command::MubCheck { d, json } => {
            let all = [
                BasisKind::Computational,
                BasisKind::Fourier,
                BasisKind::Phase,
            ];
            let mut rows = Vec::new();
            let mut pass = true;
            for &dim in &d {
                let report = mub_check(DimensionSpec::qudit(dim)?, &all)?;
                pass &= report.pass;
                rows.push(serde_json::json!({
                    "d": dim,
                    "k": report.k,
                    "pass": report.pass,
                }));
            }
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&rows).expect("serializable")
                );
            } else {
                for row in &rows {
                    println!(
                        "d={} k={} {}",
                        row["d"],
                        row["k"],
                        if row["pass"].as_bool().unwrap() {
                            "pass"
                        } else {
                            "FAIL"
                        }
                    );
                }
            }
            Ok(pass)
        }
        Command::GaussCheck { a_max, json } => {
            let mut max_error: f64 = 0.0;
            let mut cases = 0u64;
            for a in 1..=a_max.max(1) {
                let bound = 2 * a as i64;
                for b in -bound..=bound {
                    if (a as i64 + b) % 2 != 0 {
                        continue;
                    }
                    let pair = gauss_sum(a, b)?;
                    max_error = max_error.max((pair.brute - pair.closed).norm());
                    cases += 1;
                }
            }
            let pass = max_error <= tol::GAUSS;
            if json {
                let payload = serde_json::json!({
                    "a_max": a_max,
                    "cases": cases,
                    "max_error": max_error,
                    "pass": pass,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&payload).expect("serializable")
                );
            } else {
                println!(
                    "a<={a_max}: {cases} sums, max error {max_error:.3e} {}",
                    if pass { "pass" } else { "FAIL" }
                );
            }
            Ok(pass)
        }
        Command::Euler { command } => run_euler(command),
    }
}

fn run_euler(command: EulerCommand) -> Result<bool, GqvError> {
    match command {
        EulerCommand::Decompose { matrix, json } => {
            if matrix.len() != 8 {
                return Err(GqvError::InvalidInput(
                    "--matrix needs 8 numbers: re,im pairs in row-major order".into(),
                ));
            }
            let mut m = Array2::zeros((2, 2));
            for r in 0..2 {
                for c in 0..2 {
                    let k = 2 * (2 * r + c);
                    m[[r, c]] = Complex64::new(matrix[k], matrix[k + 1]);
                }
            }
            let u = DenseOperator::new(DimensionSpec::qudit(2)?, 1, m.clone())?;
            let angles = qubit_euler_decompose(&u)?;
            let err = max_abs_diff(&euler_reconstruct(&angles), &m);
            if json {
                let payload = serde_json::json!({
                    "phi": angles.phi,
                    "theta1": angles.theta1,
                    "theta2": angles.theta2,
                    "theta3": angles.theta3,
                    "reconstruction_error": err,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&payload).expect("serializable")
                );
            } else {
                println!(
                    "phi={} theta1={} theta2={} theta3={} (reconstruction error {err:.3e})",
                    angles.phi, angles.theta1, angles.theta2, angles.theta3
                );
            }
            Ok(true)
        }
        EulerCommand::Orbit {
            phi,
            target,
            eps,
            nmax,
            json,
        } => {
            let d = phi.len() as u64;
            let spec = DimensionSpec::qudit(d)?;
            let phi = PhaseVector::new(spec, phi)?;
            let target = PhaseVector::new(spec, target)?;
            let hit = rotation_orbit_search(&phi, &target, eps, nmax)?;
            if json {
                let payload = serde_json::json!({
                    "found": hit.is_some(),
                    "n": hit,
                    "eps": eps,
                    "nmax": nmax,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&payload).expect("serializable")
                );
            } else {
                match hit {
                    Some(n) => println!("N={n}"),
                    None => println!("no hit within {nmax} steps at eps={eps}"),
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    // Die quietly on SIGPIPE (e.g. when piped into `head`) like other
    // line-oriented tools instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
