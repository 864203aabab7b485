//! `castkit`: run, measure and compare gradually typed programs.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use castkit::discipline::Mode;
use castkit::gtlc::GTerm;
use castkit::run::{run, Calculus, Observation, RunError};
use castkit::syntax::parse_program;
use castkit_harness::diff::run_differential;
use castkit_harness::space::measure_space;

const EXIT_PARSE: u8 = 1;
const EXIT_TYPE: u8 = 2;
const EXIT_BLAME: u8 = 3;
const EXIT_TIMEOUT: u8 = 4;
const EXIT_BOUND: u8 = 5;
const EXIT_INVARIANT: u8 = 6;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "castkit", version, about = "Run gradually typed programs under a choice of cast calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile and run a program.
    Run {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "eda", value_parser = parse_calculus)]
        calculus: Calculus,
        #[arg(long, value_enum, default_value_t = Variant::Cc)]
        variant: Variant,
        /// Print one line per reduction step.
        #[arg(long)]
        trace: bool,
    },
    /// Run in the space-efficient calculus and check the space bound.
    Measure {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "lambda-s", value_parser = parse_calculus)]
        calculus: Calculus,
    },
    /// Run under several calculi and compare the outcomes.
    Diff {
        #[command(flatten)]
        input: Input,
        /// Comma-separated calculus names; all of them by default.
        #[arg(long, value_delimiter = ',', value_parser = parse_calculus)]
        calculi: Vec<Calculus>,
        #[arg(long, value_enum, default_value_t = Variant::Cc)]
        variant: Variant,
    },
}

#[derive(clap::Args)]
struct Input {
    /// Program file, or `-` for standard input.
    file: PathBuf,
    #[arg(long, env = "CASTKIT_FUEL", default_value_t = 10_000)]
    fuel: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Cc,
    CcPrime,
}

impl From<Variant> for Mode {
    fn from(v: Variant) -> Mode {
        match v {
            Variant::Cc => Mode::CC,
            Variant::CcPrime => Mode::CCPrime,
        }
    }
}

fn parse_calculus(s: &str) -> Result<Calculus, String> {
    s.parse().map_err(|e: castkit::run::UnknownCalculus| {
        let names: Vec<_> = Calculus::ALL.iter().map(|c| c.name()).collect();
        format!("{e}; expected one of {}", names.join(", "))
    })
}

fn load(input: &Input) -> Result<GTerm, ExitCode> {
    let mut src = String::new();
    let read = if input.file.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut src).map(|_| ())
    } else {
        std::fs::read_to_string(&input.file).map(|s| src = s)
    };
    if let Err(e) = read {
        eprintln!("{}: {e}", input.file.display());
        return Err(ExitCode::from(EXIT_USAGE));
    }
    parse_program(&src).map_err(|e| {
        eprintln!("{e}");
        ExitCode::from(EXIT_PARSE)
    })
}

fn report_error(e: &RunError) -> ExitCode {
    eprintln!("{e}");
    match e {
        RunError::Type(_) => ExitCode::from(EXIT_TYPE),
        RunError::Invariant(_) => ExitCode::from(EXIT_INVARIANT),
    }
}

fn exit_for(o: &Observation) -> ExitCode {
    match o {
        Observation::Value(_) => ExitCode::SUCCESS,
        Observation::Blame(_) => ExitCode::from(EXIT_BLAME),
        Observation::Timeout => ExitCode::from(EXIT_TIMEOUT),
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which is the type-error code here.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Run { input, calculus, variant, trace } => {
            let m = match load(&input) {
                Ok(m) => m,
                Err(code) => return code,
            };
            match run(&m, calculus, variant.into(), input.fuel, trace) {
                Ok(out) => {
                    print!("{}", out.render());
                    exit_for(&out.observation)
                }
                Err(e) => report_error(&e),
            }
        }
        Command::Measure { input, calculus } => {
            let m = match load(&input) {
                Ok(m) => m,
                Err(code) => return code,
            };
            let Some(res) = measure_space(&m, calculus, input.fuel, true) else {
                eprintln!("measure needs a space-efficient calculus: lambda-s or hyper");
                return ExitCode::from(EXIT_USAGE);
            };
            let r = match res {
                Ok(r) => r,
                Err(e) => return report_error(&e),
            };
            for rep in &r.reports {
                println!("{rep}");
            }
            println!("{}", r.observation);
            for v in &r.violations {
                println!("violation: {v}");
            }
            let verdict = if r.holds() { "PASS" } else { "FAIL" };
            println!(
                "{verdict} max real={} bound factor={} max adjacency={}",
                r.max_real_size, r.witness, r.max_adjacency
            );
            if r.holds() {
                exit_for(&r.observation)
            } else {
                ExitCode::from(EXIT_BOUND)
            }
        }
        Command::Diff { input, calculi, variant } => {
            let m = match load(&input) {
                Ok(m) => m,
                Err(code) => return code,
            };
            let calculi = if calculi.is_empty() { Calculus::ALL.to_vec() } else { calculi };
            println!("{}", run_differential(&m, &calculi, variant.into(), input.fuel));
            ExitCode::SUCCESS
        }
    }
}
