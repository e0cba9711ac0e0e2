use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tameroot_cli::{cmd_global, cmd_lawful, cmd_local, cmd_scan, cmd_twist, Flags};

#[derive(Debug, Parser)]
#[command(
    name = "tameroot",
    version,
    about = "Root numbers of hyperelliptic Jacobians at tame primes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// emit JSON
    #[arg(long)]
    json: bool,
    /// starting p-adic precision
    #[arg(long)]
    precision: Option<u32>,
    /// conductor of the Jacobian, used to certify p = 2 and drop good primes
    #[arg(long)]
    conductor: Option<u64>,
    /// assume good reduction at 2
    #[arg(long)]
    good_at_2: bool,
}

impl Common {
    fn flags(&self) -> Flags {
        Flags {
            json: self.json,
            precision: self.precision,
            conductor: self.conductor,
            good_at_2: self.good_at_2,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cluster picture, local representation and W at one prime
    Local {
        /// coefficients of f, ascending degree, comma separated
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Global root number
    Global {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        common: Common,
    },
    /// Lawful good/evil classification
    Lawful {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        common: Common,
    },
    /// Root number of the quadratic twist by a fundamental discriminant
    Twist {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Classify every row of a `coeffs;label;conductor;expected` CSV
    Scan {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Local { f, p, common } => cmd_local(f, *p, &common.flags()),
        Command::Global { f, common } => cmd_global(f, &common.flags()),
        Command::Lawful { f, common } => cmd_lawful(f, &common.flags()),
        Command::Twist { f, d, common } => cmd_twist(f, *d, &common.flags()),
        Command::Scan { path, common } => cmd_scan(path, &common.flags()),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
