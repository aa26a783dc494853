use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ealie::cli::{export_string, parse_list, parse_suites, run_verification, Construction, InstanceSpec, Suite};
use ealie::finroot::RootType;

#[derive(Parser)]
#[command(name = "ealie", version, about = "Build windowed extended affine Lie algebras and check their axioms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and print a JSON report
    Check(CheckArgs),
    /// Write the root data of the window as JSON lines
    Export(InstanceArgs),
    /// Check the Serre relations at lattice degree zero
    Serre(InstanceArgs),
    /// Check the extended affine root system axioms
    Ears(InstanceArgs),
    /// List the available constructions
    ListConstructions,
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long, default_value = "affinized")]
    construction: String,
    #[arg(long, default_value_t = 2)]
    ell: usize,
    #[arg(long, default_value_t = 0)]
    nu: usize,
    /// Strict upper triangle of the sign matrix, comma separated
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    q: String,
    #[arg(long, default_value_t = 2)]
    rank: usize,
    #[arg(long = "type", default_value = "C")]
    root_type: String,
    #[arg(long, default_value_t = 2)]
    window: i64,
    /// Distinct primes adjoined as square roots, comma separated
    #[arg(long, default_value = "")]
    primes: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Use all skew elements rather than the derived algebra
    #[arg(long)]
    full_skew: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Comma separated subset of T, D, EARS, SERRE, TAME, PROPS
    #[arg(long, default_value = "")]
    suites: String,
}

impl InstanceArgs {
    fn spec(&self) -> ealie::Result<InstanceSpec> {
        Ok(InstanceSpec {
            construction: self.construction.parse::<Construction>()?,
            ell: self.ell,
            nu: self.nu,
            q: parse_list(&self.q)?,
            window: self.window,
            rank: self.rank,
            root_type: self.root_type.parse::<RootType>()?,
            primes: parse_list(&self.primes)?,
            seed: self.seed,
            full_skew: self.full_skew,
        })
    }
}

fn usage_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn emit(text: &str, out: &Option<PathBuf>) -> ExitCode {
    match out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        None => {
            print!("{text}");
            ExitCode::SUCCESS
        }
    }
}

fn verify(args: &InstanceArgs, suites: &[Suite]) -> ExitCode {
    let spec = match args.spec() {
        Ok(s) => s,
        Err(e) => return usage_error(e),
    };
    let v = match run_verification(&spec, suites) {
        Ok(v) => v,
        Err(e @ (ealie::Error::InvalidArgument(_) | ealie::Error::InvalidSignMatrix(_) | ealie::Error::Unsupported(_))) => {
            return usage_error(e)
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let text = serde_json::to_string_pretty(&v.report).expect("report serializes") + "\n";
    let code = emit(&text, &args.out);
    if code != ExitCode::SUCCESS {
        return code;
    }
    if v.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check(a) => match parse_suites(&a.suites) {
            Ok(s) => verify(&a.instance, &s),
            Err(e) => usage_error(e),
        },
        Command::Serre(a) => verify(&a, &[Suite::Serre]),
        Command::Ears(a) => verify(&a, &[Suite::Ears]),
        Command::Export(a) => {
            let text = match a.spec().and_then(|s| export_string(&s)) {
                Ok(t) => t,
                Err(e) => return usage_error(e),
            };
            emit(&text, &a.out)
        }
        Command::ListConstructions => {
            for c in Construction::ALL {
                println!("{:<18} {}", c.name(), c.description());
            }
            ExitCode::SUCCESS
        }
    }
}
