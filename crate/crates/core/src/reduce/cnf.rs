//! DIMACS CNF input and a brute-force satisfiability oracle.

use std::fmt;

/// A nonzero signed variable index.
pub type Literal = i32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Literal>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DimacsError {
    #[error("line {0}: missing header `p cnf <vars> <clauses>`")]
    MissingHeader(usize),
    #[error("line {line}: malformed header {text:?}")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: bad literal {text:?}")]
    BadLiteral { line: usize, text: String },
    #[error("line {line}: literal {literal} out of range")]
    LiteralOutOfRange { line: usize, literal: i64 },
    #[error("line {0}: empty clause")]
    EmptyClause(usize),
    #[error("missing terminator: last clause is not closed by 0")]
    MissingTerminator,
    #[error("clause count mismatch: header says {expected}, found {found}")]
    ClauseCountMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("formula has no variables")]
    NoVariables,
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("literal {0} out of range")]
    LiteralOutOfRange(Literal),
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, FormulaError> {
        if num_vars == 0 {
            return Err(FormulaError::NoVariables);
        }
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(FormulaError::EmptyClause(i + 1));
            }
            if let Some(&l) = c.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > num_vars) {
                return Err(FormulaError::LiteralOutOfRange(l));
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn parse_dimacs(text: &str) -> Result<Self, DimacsError> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current: Vec<Literal> = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last_line = line;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('c') || l == "%" {
                continue;
            }
            if l.starts_with('p') {
                let toks: Vec<&str> = l.split_whitespace().collect();
                let parsed = match toks.as_slice() {
                    ["p", "cnf", v, c] if header.is_none() => v.parse().ok().zip(c.parse().ok()),
                    _ => None,
                };
                header = Some(parsed.filter(|&(v, _): &(usize, usize)| v > 0).ok_or(DimacsError::BadHeader { line, text: l.to_string() })?);
                continue;
            }
            let (vars, _) = header.ok_or(DimacsError::MissingHeader(line))?;
            for tok in l.split_whitespace() {
                let v: i64 = tok.parse().map_err(|_| DimacsError::BadLiteral { line, text: tok.to_string() })?;
                if v == 0 {
                    if current.is_empty() {
                        return Err(DimacsError::EmptyClause(line));
                    }
                    clauses.push(std::mem::take(&mut current));
                } else if v.unsigned_abs() as usize > vars {
                    return Err(DimacsError::LiteralOutOfRange { line, literal: v });
                } else {
                    current.push(v as Literal);
                }
            }
        }
        let (num_vars, expected) = header.ok_or(DimacsError::MissingHeader(last_line + 1))?;
        if !current.is_empty() {
            return Err(DimacsError::MissingTerminator);
        }
        if clauses.len() != expected {
            return Err(DimacsError::ClauseCountMismatch { expected, found: clauses.len() });
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                out.push_str(&format!("{l} "));
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn evaluate(&self, a: &Assignment) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| a.literal(l)))
    }

    pub fn max_clause_width(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                let lits: Vec<String> = c.iter().map(|&l| if l > 0 { format!("x{l}") } else { format!("!x{}", -l) }).collect();
                format!("({})", lits.join(" | "))
            })
            .collect();
        if parts.is_empty() {
            write!(f, "true")
        } else {
            write!(f, "{}", parts.join(" & "))
        }
    }
}

/// Truth values for variables 1..=n, stored at index v-1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn value(&self, var: usize) -> bool {
        self.0[var - 1]
    }

    pub fn literal(&self, l: Literal) -> bool {
        let v = self.value(l.unsigned_abs() as usize);
        if l > 0 {
            v
        } else {
            !v
        }
    }

    /// Assignment number `bits` of `n` variables; bit v-1 is variable v.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        Assignment((0..n).map(|i| bits >> i & 1 == 1).collect())
    }

    pub fn all(n: usize) -> impl Iterator<Item = Assignment> {
        (0..1u64 << n).map(move |b| Assignment::from_bits(n, b))
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().enumerate().map(|(i, &v)| format!("x{}={}", i + 1, if v { 'T' } else { 'F' })).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    Satisfiable(Assignment),
    Unsatisfiable,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("too many variables for exhaustive search: {0} (max {MAX_ORACLE_VARS})")]
pub struct OracleError(pub usize);

pub const MAX_ORACLE_VARS: usize = 20;

/// Tries every assignment in counting order.
pub fn sat_oracle(f: &CnfFormula) -> Result<SatResult, OracleError> {
    if f.num_vars > MAX_ORACLE_VARS {
        return Err(OracleError(f.num_vars));
    }
    Ok(Assignment::all(f.num_vars)
        .find(|a| f.evaluate(a))
        .map_or(SatResult::Unsatisfiable, SatResult::Satisfiable))
}
