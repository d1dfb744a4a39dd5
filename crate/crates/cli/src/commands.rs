//! One function per subcommand. Each writes its report to `out` and returns the exit code.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use pushpush::format::{parse_board, render_board, render_state, ParseError};
use pushpush::geom::MoveParseError;
use pushpush::gadgets::{verify_gadget, GadgetError, Outcome};
use pushpush::reduce::{compile_with, witness_on, Assignment, CnfFormula, CompileError, CompileOptions, DimacsError, Manifest, ManifestError};
use pushpush::search::{solve, Budget, Verdict};
use pushpush::{is_goal, replay, Board, MoveSequence};

use crate::gadget_source::{self, GadgetLookupError};

pub const FORMAT_HEADER: &str = "format=v1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_COMPILE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Puzzle { path: PathBuf, source: ParseError },
    #[error("{path}: {source}")]
    Dimacs { path: PathBuf, source: DimacsError },
    #[error("{path}: {source}")]
    Moves { path: PathBuf, source: MoveParseError },
    #[error("{path}: {source}")]
    Manifest { path: PathBuf, source: ManifestError },
    #[error("bad assignment {0:?}: expected letters T/F or signed literals like 1,-2,3")]
    Assignment(String),
    #[error("unsupported output format {0:?}; only v1 exists")]
    Format(String),
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Lookup(#[from] GadgetLookupError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compile(_) | CliError::Gadget(_) => EXIT_COMPILE,
            _ => EXIT_INPUT,
        }
    }
}

pub fn check_format(format: &str) -> Result<(), CliError> {
    if format == "v1" {
        Ok(())
    } else {
        Err(CliError::Format(format.to_string()))
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_board(path: &Path) -> Result<Board, CliError> {
    parse_board(&read(path)?).map_err(|source| CliError::Puzzle {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_formula(path: &Path) -> Result<CnfFormula, CliError> {
    CnfFormula::parse_dimacs(&read(path)?).map_err(|source| CliError::Dimacs {
        path: path.to_path_buf(),
        source,
    })
}

/// Move files hold one move string, optionally after a `format=v1` line.
pub fn parse_moves(text: &str) -> Result<MoveSequence, MoveParseError> {
    let body: String = text.lines().filter(|l| l.trim() != FORMAT_HEADER).collect::<Vec<_>>().join("");
    body.split_whitespace().collect::<String>().parse()
}

pub fn load_moves(path: &Path) -> Result<MoveSequence, CliError> {
    parse_moves(&read(path)?).map_err(|source| CliError::Moves {
        path: path.to_path_buf(),
        source,
    })
}

/// `T`/`F` letters per variable, or signed literals separated by commas or spaces.
pub fn parse_assignment(text: &str, num_vars: usize) -> Result<Assignment, CliError> {
    let t = text.trim();
    let bad = || CliError::Assignment(text.to_string());
    if !t.is_empty() && t.chars().all(|c| matches!(c, 'T' | 'F' | 't' | 'f' | '1' | '0')) && t.len() == num_vars && !t.contains(',') {
        return Ok(Assignment(t.chars().map(|c| matches!(c, 'T' | 't' | '1')).collect()));
    }
    let mut values = vec![None; num_vars];
    for tok in t.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        let lit: i64 = tok.parse().map_err(|_| bad())?;
        let v = lit.unsigned_abs() as usize;
        if lit == 0 || v > num_vars || values[v - 1].is_some() {
            return Err(bad());
        }
        values[v - 1] = Some(lit > 0);
    }
    values.into_iter().collect::<Option<Vec<bool>>>().map(Assignment).ok_or_else(bad)
}

pub fn manifest_path_for(output: &Path) -> PathBuf {
    output.with_extension("manifest")
}

pub fn compile(input: &Path, output: &Path, manifest: Option<&Path>, max_clause_width: usize, out: &mut impl Write) -> Result<i32, CliError> {
    let f = load_formula(input)?;
    let compiled = compile_with(&f, CompileOptions { max_clause_width })?;
    let manifest_path = manifest.map(Path::to_path_buf).unwrap_or_else(|| manifest_path_for(output));
    write_file(output, &render_board(&compiled.board))?;
    write_file(&manifest_path, &compiled.manifest.to_text())?;
    let (w, h, d) = compiled.board.dims();
    writeln!(out, "{FORMAT_HEADER}")?;
    writeln!(out, "puzzle {}", output.display())?;
    writeln!(out, "manifest {}", manifest_path.display())?;
    writeln!(out, "dims {w} {h} {d}")?;
    writeln!(out, "gadgets {}", compiled.manifest.entries.len())?;
    Ok(EXIT_OK)
}

pub fn solve_cmd(puzzle: &Path, budget: Budget, out: &mut impl Write) -> Result<i32, CliError> {
    let board = load_board(puzzle)?;
    let r = solve(&board, budget);
    writeln!(out, "{FORMAT_HEADER}")?;
    let code = match r.verdict {
        Verdict::Solved => {
            writeln!(out, "SOLVED {}", r.moves.as_ref().expect("solved has moves"))?;
            EXIT_OK
        }
        Verdict::Unsolvable => {
            writeln!(out, "UNSOLVABLE")?;
            EXIT_NEGATIVE
        }
        Verdict::BudgetExceeded => {
            writeln!(out, "BUDGET_EXCEEDED")?;
            EXIT_BUDGET
        }
    };
    writeln!(out, "states {}", r.states_explored)?;
    writeln!(out, "pushes {}", r.pushes)?;
    Ok(code)
}

pub fn check(puzzle: &Path, moves: &Path, out: &mut impl Write) -> Result<i32, CliError> {
    let board = load_board(puzzle)?;
    let m = load_moves(moves)?;
    writeln!(out, "{FORMAT_HEADER}")?;
    match replay(&board, &m) {
        Ok(s) if is_goal(&board, &s) => {
            writeln!(out, "OK {} moves", m.len())?;
            Ok(EXIT_OK)
        }
        Ok(s) => {
            writeln!(out, "FAIL not at goal after {} moves, robot at {}", m.len(), s.robot)?;
            Ok(EXIT_NEGATIVE)
        }
        Err(e) => {
            writeln!(out, "FAIL illegal move at index {} ({}): {}", e.index, e.dir, e.reason)?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

pub fn verify(name: &str, budget: Budget, out: &mut impl Write) -> Result<i32, CliError> {
    let g = gadget_source::resolve(name)?;
    let report = verify_gadget(&g.template, &g.contract, budget)?;
    writeln!(out, "{FORMAT_HEADER}")?;
    out.write_all(report.to_table().as_bytes())?;
    let code = if report.all_passed() {
        EXIT_OK
    } else if report.failures().next().is_some() {
        EXIT_NEGATIVE
    } else {
        debug_assert!(report.results.iter().any(|r| r.outcome == Outcome::Undecided));
        EXIT_BUDGET
    };
    Ok(code)
}

pub fn witness(input: &Path, assignment: &str, max_clause_width: usize, out: &mut impl Write) -> Result<i32, CliError> {
    let f = load_formula(input)?;
    let a = parse_assignment(assignment, f.num_vars)?;
    let compiled = compile_with(&f, CompileOptions { max_clause_width })?;
    let m = witness_on(&compiled, &a);
    writeln!(out, "{FORMAT_HEADER}")?;
    writeln!(out, "{m}")?;
    Ok(EXIT_OK)
}

pub fn render(puzzle: &Path, manifest: Option<&Path>, moves: Option<&Path>, out: &mut impl Write) -> Result<i32, CliError> {
    let board = load_board(puzzle)?;
    let mut text = String::new();
    let _ = writeln!(text, "{FORMAT_HEADER}");
    match moves {
        Some(p) => {
            let m = load_moves(p)?;
            let s = match replay(&board, &m) {
                Ok(s) => s,
                Err(e) => {
                    let _ = writeln!(text, "stopped at move {}: {}", e.index, e.reason);
                    e.state
                }
            };
            text.push_str(&render_state(&board, &s));
        }
        None => text.push_str(&render_board(&board)),
    }
    if let Some(p) = manifest {
        let m = Manifest::parse(&read(p)?).map_err(|source| CliError::Manifest {
            path: p.to_path_buf(),
            source,
        })?;
        text.push_str(&m.to_text());
    }
    out.write_all(text.as_bytes())?;
    Ok(EXIT_OK)
}
