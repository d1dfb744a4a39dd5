use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pushpush::reduce::{Manifest, DEFAULT_MAX_CLAUSE_WIDTH};
use pushpush::search::Budget;
use pushpush_cli::commands::{self, check_format, CliError};
use pushpush_cli::server::{gadget_puzzle, serve};
use pushpush_cli::session::Session;

#[derive(Parser, Debug)]
#[command(name = "pushpush", version, about = "Push-1 puzzles: solve, check, verify gadgets, compile SAT instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct BudgetArgs {
    /// Maximum canonical states to explore
    #[arg(long, default_value_t = 10_000_000)]
    budget_states: usize,
    /// Wall-clock limit in seconds
    #[arg(long, default_value_t = 300.0)]
    budget_seconds: f64,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_states: self.budget_states,
            max_seconds: self.budget_seconds,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compile a DIMACS CNF file into a puzzle file and a gadget manifest
    Compile {
        input: PathBuf,
        output: PathBuf,
        /// Manifest path (default: OUTPUT with extension .manifest)
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_CLAUSE_WIDTH)]
        max_clause_width: usize,
        #[arg(long, default_value = "v1")]
        format: String,
    },
    /// Search for a shortest-in-pushes solution
    Solve {
        puzzle: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value = "v1")]
        format: String,
    },
    /// Replay a move file and report whether it ends at the goal
    Check {
        puzzle: PathBuf,
        moves: PathBuf,
        #[arg(long, default_value = "v1")]
        format: String,
    },
    /// Exhaustively verify a gadget contract (catalog name, mutation name, library name or file)
    VerifyGadget {
        name: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value = "v1")]
        format: String,
    },
    /// Print the solution path of a compiled formula for one assignment
    Witness {
        input: PathBuf,
        /// `TTF` letters or signed literals such as `1,2,-3`
        assignment: String,
        #[arg(long, default_value_t = DEFAULT_MAX_CLAUSE_WIDTH)]
        max_clause_width: usize,
        #[arg(long, default_value = "v1")]
        format: String,
    },
    /// Print a puzzle, optionally after replaying moves, with its manifest
    Render {
        puzzle: PathBuf,
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        moves: Option<PathBuf>,
    },
    /// Serve the play session over HTTP on localhost
    Serve {
        /// Puzzle to load at start (default: the one_way gadget)
        puzzle: Option<PathBuf>,
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

fn initial_session(puzzle: Option<PathBuf>, manifest: Option<PathBuf>) -> Result<Session, CliError> {
    let Some(path) = puzzle else {
        let (board, manifest) = gadget_puzzle("one_way")?;
        return Ok(Session::new(board, manifest));
    };
    let board = commands::load_board(&path)?;
    let manifest = match manifest {
        Some(p) => {
            let text = std::fs::read_to_string(&p).map_err(|source| CliError::Read { path: p.clone(), source })?;
            Manifest::parse(&text).map_err(|source| CliError::Manifest { path: p, source })?
        }
        None => Manifest::default(),
    };
    Ok(Session::new(board, manifest))
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Compile {
            input,
            output,
            manifest,
            max_clause_width,
            format,
        } => {
            check_format(&format)?;
            commands::compile(&input, &output, manifest.as_deref(), max_clause_width, &mut out)
        }
        Command::Solve { puzzle, budget, format } => {
            check_format(&format)?;
            commands::solve_cmd(&puzzle, budget.budget(), &mut out)
        }
        Command::Check { puzzle, moves, format } => {
            check_format(&format)?;
            commands::check(&puzzle, &moves, &mut out)
        }
        Command::VerifyGadget { name, budget, format } => {
            check_format(&format)?;
            commands::verify(&name, budget.budget(), &mut out)
        }
        Command::Witness {
            input,
            assignment,
            max_clause_width,
            format,
        } => {
            check_format(&format)?;
            commands::witness(&input, &assignment, max_clause_width, &mut out)
        }
        Command::Render { puzzle, manifest, moves } => commands::render(&puzzle, manifest.as_deref(), moves.as_deref(), &mut out),
        Command::Serve { puzzle, manifest, port } => {
            let session = initial_session(puzzle, manifest)?;
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(serve(session, port))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let _ = io::stdout().flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
