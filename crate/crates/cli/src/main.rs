//! `permpenta`: construct permutation pentanomials over F_{q^2} and check
//! them against independent oracles.
//!
//! Exit codes: 0 all checks passed, 1 falsification found, 2 usage or
//! precondition error, 3 resource cap hit.

mod commands;
mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permpenta::pentanomial::{PentanomialSpec, Theorem, DEFAULT_GCD_DEGREE_CAP};
use permpenta::verify::{DEFAULT_ORACLE_CAP, DEFAULT_SAMPLE};
use permpenta::Error;

use output::{Output, Status};

#[derive(Parser, Debug)]
#[command(name = "permpenta", version)]
#[command(about = "Permutation pentanomials over F_{q^2}: construction and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    out: OutArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build B_z and f = X^r B_z(X^(q-1)) and print their terms
    Construct {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Decide the permutation property by criterion, exhaustive oracle and
    /// roots-of-unity reduction
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Verify every spec of a parameter grid
    Sweep {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Check the reduction to the roots of unity of order q+1 and the
    /// structure of gcd(B_1, B_2)
    MuCheck {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Check f = rho o g o eta pointwise (requires r = Q+R+S)
    Decompose {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        caps: CapArgs,
        /// Seed for the random sample used above the oracle cap
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample size used above the oracle cap
        #[arg(long, default_value_t = DEFAULT_SAMPLE)]
        sample: usize,
    },
    /// Print the closed forms of B_1 and B_2 by residue class
    Tables {
        /// Restrict to one family
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: Option<u8>,
    },
}

#[derive(Args, Debug, Clone)]
struct SpecArgs {
    /// Pentanomial family
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    theorem: u8,
    /// Which of B_1, B_2
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    z: u8,
    /// Characteristic
    #[arg(short)]
    p: u64,
    /// q = p^k
    #[arg(short)]
    k: u32,
    /// Q = p^iq
    #[arg(long, default_value_t = 0)]
    iq: u32,
    /// R = p^ir
    #[arg(long, default_value_t = 0)]
    ir: u32,
    /// S = p^is
    #[arg(long = "is", default_value_t = 0)]
    is_: u32,
    /// Exponent r in decimal; defaults to Q+R+S
    #[arg(long)]
    r: Option<u128>,
}

impl SpecArgs {
    fn spec(&self) -> permpenta::Result<PentanomialSpec> {
        PentanomialSpec::new(
            Theorem::from_number(self.theorem)?,
            self.z,
            self.p,
            self.k,
            [self.iq, self.ir, self.is_],
            self.r,
        )
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct CapArgs {
    /// Largest set enumerated by the oracles
    #[arg(long, env = "PERMPENTA_ORACLE_CAP", default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: u64,
    /// Largest dense degree in the gcd computation
    #[arg(long, default_value_t = DEFAULT_GCD_DEGREE_CAP)]
    gcd_cap: u128,
}

#[derive(Args, Debug, Clone)]
struct GridArgs {
    /// Characteristics, comma separated
    #[arg(short, value_delimiter = ',', required = true)]
    p: Vec<u64>,
    /// Largest k
    #[arg(long)]
    kmax: u32,
    /// Indices a, b, c run over 0..=imax; negative gives an empty grid
    #[arg(long, allow_negative_numbers = true)]
    imax: i64,
    /// Leave out fields with q^2 above this
    #[arg(long)]
    q2_max: Option<u64>,
    /// Restrict to one family
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    theorem: Option<u8>,
    /// Restrict to one of B_1, B_2
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    z: Option<u8>,
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Human,
    Json,
    Csv,
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::LimitExceeded { .. } | Error::FieldTooLarge { .. } => 3,
        Error::Invariant(_) | Error::DivisionByZero | Error::DegenerateMobius => 1,
        _ => 2,
    }
}

fn run(cli: &Cli) -> permpenta::Result<Output> {
    match &cli.command {
        Command::Construct { spec } => commands::construct(&spec.spec()?),
        Command::Verify { spec, caps } => commands::verify(&spec.spec()?, caps.oracle_cap),
        Command::Sweep { grid, caps } => commands::sweep(grid, caps.oracle_cap),
        Command::MuCheck { spec, caps } => {
            commands::mu_check(&spec.spec()?, caps.oracle_cap, caps.gcd_cap)
        }
        Command::Decompose {
            spec,
            caps,
            seed,
            sample,
        } => commands::decompose(&spec.spec()?, caps.oracle_cap, *seed, *sample),
        Command::Tables { theorem } => commands::tables(*theorem),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(error_code(&e));
        }
    };
    let text = match cli.out.format {
        Format::Human => out.human.clone(),
        Format::Json => out.json_text(),
        Format::Csv => match &out.csv {
            Some(csv) => csv.clone(),
            None => {
                eprintln!("error: csv output is only available for verify and sweep");
                return ExitCode::from(2);
            }
        },
    };
    match &cli.out.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(match out.status {
        Status::Pass => 0,
        Status::Falsified => 1,
        Status::Capped => 3,
    })
}
