use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;
use tmodel::cli::{run_command, Workspace};

/// Batch driver over a JSON workspace of complexes, maps and towers.
#[derive(Parser, Debug)]
#[command(name = "tmodel", version, allow_negative_numbers = true)]
struct Args {
    /// Workspace file.
    #[arg(long)]
    workspace: Option<PathBuf>,
    /// Directory for output tables; defaults to the workspace setting or `out`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Extra tower levels searched for pro-isomorphism fillers
    #[arg(long)]
    budget_filler: Option<usize>,
    /// Reindexing horizon used by the self tests
    #[arg(long)]
    budget_reindex: Option<usize>,
    /// Seed for the generator-based self tests.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rewrite the workspace file to stdout in canonical form and exit.
    #[arg(long)]
    canonicalize: bool,
    /// One of the subcommands, e.g. `homology`, `ahss`, `selftest`.
    command: Option<String>,
    args: Vec<String>,
}

fn main() -> ExitCode {
    let a = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut ws = match &a.workspace {
        Some(p) => match Workspace::load(p) {
            Ok(ws) => ws,
            Err(e) => {
                eprintln!("{}: {e}", p.display());
                return ExitCode::from(1);
            }
        },
        None => Workspace::parse(r#"{"ring": "Z"}"#).expect("empty workspace"),
    };
    if a.canonicalize {
        print!("{}", ws.serialize());
        return ExitCode::SUCCESS;
    }
    let Some(command) = a.command else {
        eprintln!("missing command; one of: {}", tmodel::cli::COMMANDS.join(", "));
        return ExitCode::from(1);
    };
    if let Some(b) = a.budget_filler {
        ws.config.budget_filler = b;
    }
    if let Some(b) = a.budget_reindex {
        ws.config.budget_reindex = b;
    }
    if ws.config.budget_filler == 0 || ws.config.budget_reindex == 0 {
        eprintln!("budgets must be positive");
        return ExitCode::from(1);
    }
    let out = a
        .out
        .or_else(|| ws.config.output_dir.clone().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));
    match run_command(&ws, &command, &a.args, &out, a.seed) {
        Ok(r) => {
            print!("{}", r.stdout);
            ExitCode::from(r.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{command}: {e}");
            ExitCode::from(1)
        }
    }
}
