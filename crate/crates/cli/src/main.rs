use std::io::{self, Read, Write};
use std::panic;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use flagorbit_cli::{self as cmd, CliError, CliResult};

/// Exact classification of line configurations up to simultaneous change of
/// coordinates. All JSON uses 1-based line indices and string scalars.
#[derive(Parser, Debug)]
#[command(name = "flagorbit", version)]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the strata for (n, m).
    EnumeratePtypes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Classify a configuration (stdin when --input is absent).
    Classify {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Build the representative of a stratum with given moduli.
    Represent {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Decide whether two configurations lie in one orbit.
    Equiv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Brute-force orbit census over F_p, reconciled with the classification.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        prime: u64,
        /// Exit with status 2 if the partitions disagree.
        #[arg(long)]
        check: bool,
        /// Upper bound on |GL| · #configurations · m · n².
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Tits form, orbit dimension, stabilizer shape and the open-orbit and finite-type predicates.
    Invariants {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        ptype: Option<PathBuf>,
    },
    /// Run the built-in invariant suites and small censuses.
    Selfcheck,
}

fn read_path(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::domain("io", format!("{}: {e}", path.display())))
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => read_path(p),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::domain("io", e.to_string()))?;
            Ok(s)
        }
    }
}

fn dispatch(command: Command) -> CliResult {
    match command {
        Command::EnumeratePtypes { n, m, count_only } => cmd::enumerate_ptypes(n, m, count_only),
        Command::Classify { input } => cmd::classify_cmd(&read_input(input.as_ref())?),
        Command::Represent { input } => cmd::represent(&read_input(input.as_ref())?),
        Command::Equiv { a, b } => cmd::equiv(&read_path(&a)?, &read_path(&b)?),
        Command::Census { n, m, prime, check, budget } => cmd::census(n, m, prime, check, budget),
        Command::Invariants { n, m, ptype } => {
            let text = ptype.as_ref().map(read_path).transpose()?;
            cmd::invariants(n, m, text.as_deref())
        }
        Command::Selfcheck => cmd::selfcheck(),
    }
}

fn fail(err: &CliError) -> ExitCode {
    eprintln!("{}", err.to_json());
    ExitCode::from(err.exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::domain("usage", e.to_string().trim_end())),
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            return fail(&CliError::internal("threads", e.to_string()));
        }
    }
    panic::set_hook(Box::new(|_| {}));
    let outcome = panic::catch_unwind(|| dispatch(cli.command)).unwrap_or_else(|payload| {
        let message = payload
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "internal error".into());
        Err(CliError::internal("internal", message))
    });
    match outcome {
        Ok(text) => {
            let mut out = io::stdout().lock();
            let _ = writeln!(out, "{text}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
