//! Compiling CNF formulas into 3D puzzles whose solvability matches satisfiability.

mod cnf;
mod layout;
mod witness;

pub use cnf::{sat_oracle, Assignment, CnfFormula, DimacsError, FormulaError, Literal, OracleError, SatResult, MAX_ORACLE_VARS};
pub use layout::{
    compile, compile_with, ClausePlacement, CompileError, CompileOptions, Compiled, Manifest, ManifestEntry, ManifestError, PlacementPlan,
    VariablePlacement, WireRoute, DEFAULT_MAX_CLAUSE_WIDTH,
};
pub use witness::{witness_on, witness_path, witness_path_with, witness_pushes};
