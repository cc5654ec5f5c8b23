//! `vfcr`: simulate, analyze and search feedback-with-carry registers.
//!
//! Exit codes: 0 success, 1 property check failed, 2 usage error,
//! 3 budget exceeded.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use vfcr::adic::{analyze, AnalysisBudget, OrderBound};
use vfcr::exact::DEFAULT_FACTOR_BUDGET;
use vfcr::gf::BinaryPolynomial;
use vfcr::registers::{run, RegisterSpec, RegisterState, Trajectory, DEFAULT_STEP_BUDGET};
use vfcr::search::{
    check_triplet, enumerate_family, find_l_sequence_matrices, Family, PrimitiveRootFlag, SearchSpace,
    DEFAULT_BOX_BUDGET,
};
use vfcr::Error;

#[derive(Parser)]
#[command(name = "vfcr", version, about = "Feedback-with-carry registers over F2 and F2^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a register and print its output.
    Simulate {
        #[arg(long)]
        spec: PathBuf,
        /// Initial state, e.g. '{"a":[1,1,1,0],"m":[0,0,0,1]}'. Defaults to all zeros.
        #[arg(long)]
        init: Option<String>,
        /// Number of states to print, starting with the initial one.
        #[arg(long, default_value_t = 64)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = SimFormat::Bits)]
        format: SimFormat,
    },
    /// Connection norm, determinant, period bound and carry bounds of a register.
    Analyze {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        init: Option<String>,
        /// Reconstruct the rational of every output coordinate (needs --init).
        #[arg(long)]
        reconstruct: bool,
        /// Pollard rho iteration budget for the period bound.
        #[arg(long, default_value_t = DEFAULT_FACTOR_BUDGET)]
        budget: u64,
    },
    /// Enumerate every register of a family.
    Enumerate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Structured)]
        format: ReportFormat,
        /// Largest state box simulated per model.
        #[arg(long, default_value_t = DEFAULT_BOX_BUDGET)]
        budget: u64,
    },
    /// Search for transition matrices producing l-sequences.
    Search {
        #[arg(long)]
        r: usize,
        /// Defining polynomial, constant term first.
        #[arg(long, default_value = "111")]
        poly: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allow any matrix instead of ring-shaped ones.
        #[arg(long)]
        general: bool,
        /// Random draws before the exhaustive fallback.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
    /// Validate a connection triplet q = u^2 + uv - v^2.
    CheckTriplet {
        q: BigInt,
        u: BigInt,
        v: BigInt,
        #[arg(long, default_value_t = DEFAULT_FACTOR_BUDGET)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SimFormat {
    /// A header line, then one labelled row of bits per coordinate.
    Bits,
    /// Raw bytes: cell 0 packed little-endian, one byte per step.
    Bytes,
    /// One comma-separated row per coordinate, no header.
    Csv,
    /// JSON with bits and carries.
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Csv,
    Structured,
}

enum Failure {
    Property(String),
    Usage(String),
    Budget(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::FactorizationBudget { .. } | Error::StepBudget { .. } | Error::SearchExhausted { .. } => {
                Failure::Budget(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate { spec, init, steps, format } => simulate(&spec, init.as_deref(), steps, format),
        Command::Analyze { spec, init, reconstruct, budget } => {
            analyze_cmd(&spec, init.as_deref(), reconstruct, budget)
        }
        Command::Enumerate { family, r, format, budget } => enumerate(&family, r, format, budget),
        Command::Search { r, poly, count, seed, general, budget } => {
            search(r, &poly, count, seed, general, budget)
        }
        Command::CheckTriplet { q, u, v, budget } => triplet(&q, &u, &v, budget),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property(msg)) => {
            eprintln!("vfcr: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("vfcr: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("vfcr: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("vfcr: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_spec(path: &PathBuf) -> Result<RegisterSpec, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(RegisterSpec::from_json(&text)?)
}

fn load_init(spec: &RegisterSpec, init: Option<&str>) -> Result<RegisterState, Failure> {
    let state = match init {
        Some(s) => RegisterState::from_json(s)?,
        None => RegisterState::zero(spec),
    };
    state.check_for(spec)?;
    Ok(state)
}

fn print_json<T: Serialize>(value: &T) -> Outcome {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn simulate(spec: &PathBuf, init: Option<&str>, steps: usize, format: SimFormat) -> Outcome {
    let spec = load_spec(spec)?;
    let init = load_init(&spec, init)?;
    let tr = if steps == 0 {
        Trajectory {
            bits: vec![Vec::new(); init.a().len()],
            memory: vec![Vec::new(); init.m().len()],
        }
    } else {
        run(&spec, &init, steps - 1)?
    };
    let n = spec.n();
    let mut out = io::BufWriter::new(io::stdout().lock());
    match format {
        SimFormat::Bits => {
            writeln!(out, "# {} steps, {} cells of {} bits", steps, spec.r(), n)?;
            for (k, row) in tr.bits.iter().enumerate() {
                let bits: String = row.iter().map(|b| char::from(b'0' + b)).collect();
                writeln!(out, "a{}_{} {bits}", k / n, k % n)?;
            }
        }
        SimFormat::Csv => {
            for row in &tr.bits {
                let cells: Vec<&str> = row.iter().map(|&b| if b == 1 { "1" } else { "0" }).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
        SimFormat::Bytes => {
            if n > 8 {
                return Err(Failure::Usage(format!("bytes format needs n <= 8, got {n}")));
            }
            let bytes: Vec<u8> = (0..steps)
                .map(|t| (0..n).fold(0u8, |acc, j| acc | (tr.bits[j][t] << j)))
                .collect();
            out.write_all(&bytes)?;
        }
        SimFormat::Structured => {
            #[derive(Serialize)]
            struct Doc<'a> {
                spec: &'a RegisterSpec,
                init: &'a RegisterState,
                steps: usize,
                bits: &'a [Vec<u8>],
                memory: &'a [Vec<i64>],
            }
            serde_json::to_writer_pretty(
                &mut out,
                &Doc { spec: &spec, init: &init, steps, bits: &tr.bits, memory: &tr.memory },
            )
            .map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn analyze_cmd(spec: &PathBuf, init: Option<&str>, reconstruct: bool, budget: u64) -> Outcome {
    let spec = load_spec(spec)?;
    if reconstruct && init.is_none() {
        return Err(Failure::Usage("--reconstruct needs --init".into()));
    }
    let init = match init {
        Some(s) if reconstruct => Some(load_init(&spec, Some(s))?),
        _ => None,
    };
    let report = analyze(&spec, init.as_ref(), AnalysisBudget { factor: budget, steps: DEFAULT_STEP_BUDGET })?;
    print_json(&report)?;
    match &report.order {
        OrderBound::Unavailable(why) => Err(Failure::Budget(format!("ord unavailable: {why}"))),
        OrderBound::Known(_) => Ok(()),
    }
}

fn enumerate(family: &str, r: usize, format: ReportFormat, budget: u64) -> Outcome {
    let family: Family = family.parse()?;
    let report = enumerate_family(family, r, budget)?;
    match format {
        ReportFormat::Structured => print_json(&report),
        ReportFormat::Csv => {
            io::stdout().lock().write_all(report.to_csv().as_bytes())?;
            Ok(())
        }
    }
}

fn search(r: usize, poly: &str, count: usize, seed: u64, general: bool, draws: u64) -> Outcome {
    let p: BinaryPolynomial = poly.parse()?;
    let space = if general { SearchSpace::General } else { SearchSpace::Ring };
    let hits = find_l_sequence_matrices(r, &p, count, seed, space, draws)?;
    print_json(&hits)
}

fn triplet(q: &BigInt, u: &BigInt, v: &BigInt, budget: u64) -> Outcome {
    let report = check_triplet(q, u, v, budget);
    print_json(&report)?;
    if !report.form_ok || !report.prime || report.primitive_root == PrimitiveRootFlag::No {
        return Err(Failure::Property("triplet is not valid".into()));
    }
    if let PrimitiveRootFlag::Skipped(why) = &report.primitive_root {
        return Err(Failure::Budget(format!("primitive-root check skipped: {why}")));
    }
    Ok(())
}
