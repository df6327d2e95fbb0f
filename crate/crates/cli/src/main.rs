use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use boxspec_cli::{
    parse_config_with, run_command, CliError, Command, Format, Options, Suite, DEFAULT_SEED,
};
use boxspec_core::Bidegree;
use clap::Parser;

/// Spectra of the complex Laplacian on product domains.
#[derive(Debug, Parser)]
#[command(name = "boxspec", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Job configuration (JSON).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Bidegree for `bidegree`, as P,Q.
    #[arg(long)]
    pq: Option<Bidegree>,
    /// Form degree for `enumerate`.
    #[arg(long)]
    q: Option<usize>,
    /// Bessel order for `bessel`.
    #[arg(long)]
    n: Option<u32>,
    /// Zero rank for `bessel`.
    #[arg(long)]
    k: Option<u32>,
    /// Overrides the config cutoff.
    #[arg(long)]
    cutoff: Option<f64>,
    #[arg(long)]
    format: Option<Format>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
}

fn run(args: Args) -> Result<(String, u8), CliError> {
    let config = match (&args.config, args.command.needs_config()) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            Some(parse_config_with(&text, args.cutoff)?)
        }
        (None, true) => return Err(CliError::usage("this command needs --config PATH")),
        (None, false) => None,
    };
    let options = Options {
        pq: args.pq,
        q: args.q,
        n: args.n,
        k: args.k,
        format: args.format,
        seed: args.seed,
        suite: args.suite,
    };
    let outcome = run_command(args.command, config.as_ref(), &options)?;
    Ok((outcome.stdout, outcome.code))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.render().to_string();
            let first = message.lines().next().unwrap_or("invalid arguments");
            let err = CliError::usage(first.trim_start_matches("error: "));
            eprintln!("{}", err.to_json_line());
            return ExitCode::from(err.code);
        }
    };
    match run(args) {
        Ok((stdout, code)) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(stdout.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(boxspec_cli::EXIT_USAGE);
            }
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("{}", err.to_json_line());
            ExitCode::from(err.code)
        }
    }
}
