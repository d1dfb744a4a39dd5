//! Deterministic placement of variable and clause components, wires and crossings.
//!
//! Variables stack down a left column starting below s. Each wire leaves its
//! rail tap eastward on its own row, turns south in its own column and runs
//! east along the row of its clause port. Wire columns are assigned so that
//! rows above the clause region never cross; every remaining crossing is
//! bridged over. Clauses stack down a right column and t sits below the last.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::cnf::CnfFormula;
use crate::board::{Board, BoardParts, Mode};
use crate::canvas::Canvas;
use crate::gadgets::catalog::{clause_contract, paint_clause, paint_variable, ClauseShape, VariableShape};
use crate::gadgets::{clause, verify_gadget};
use crate::geom::Coord;
use crate::search::Budget;

pub const DEFAULT_MAX_CLAUSE_WIDTH: usize = 3;
const VERIFIED_CLAUSE_WIDTH: usize = 3;
const VX: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompileOptions {
    pub max_clause_width: usize,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            max_clause_width: DEFAULT_MAX_CLAUSE_WIDTH,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompileError {
    #[error("unsupported clause width: clause {clause} has {width} literals (max {max})")]
    UnsupportedClauseWidth { clause: usize, width: usize, max: usize },
    #[error("clause gadget of width {0} failed verification")]
    UnverifiedClause(usize),
    #[error("assignment has {got} values, formula has {want} variables")]
    AssignmentSize { got: usize, want: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariablePlacement {
    pub var: usize,
    pub origin: (i32, i32),
    pub(crate) shape: VariableShape,
}

impl VariablePlacement {
    pub fn size(&self) -> (i32, i32) {
        (self.shape.width, self.shape.height)
    }

    pub(crate) fn at(&self, (x, y): (i32, i32)) -> Coord {
        Coord::new(self.origin.0 + x, self.origin.1 + y, 0)
    }

    /// Layer-0 cells of one rail and its taps, above the block that closes it.
    /// Cells where the rail is bridged are wall on layer 0.
    pub fn rail_cells(&self, value: bool) -> Vec<Coord> {
        let s = &self.shape;
        let mut cells = Vec::new();
        if value {
            cells.extend((4..s.yo).filter(|y| !s.f_rows.contains(y)).map(|y| self.at((6, y))));
            for &r in &s.t_rows {
                cells.extend((7..=10).map(|x| self.at((x, r))));
            }
        } else {
            cells.extend((5..s.yo + 4).map(|y| self.at((2, y))));
            cells.push(self.at((3, 5)));
            for &r in &s.f_rows {
                cells.extend((3..=10).map(|x| self.at((x, r))));
            }
        }
        cells
    }

    /// Initial cell of the block that closes a rail's exit.
    pub fn exit_block(&self, value: bool) -> Coord {
        let ((x, y), d) = self.shape.release(value);
        self.at((x, y)).step(d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClausePlacement {
    pub clause: usize,
    pub origin: (i32, i32),
    pub(crate) shape: ClauseShape,
}

impl ClausePlacement {
    pub fn size(&self) -> (i32, i32) {
        (self.shape.width, self.shape.height)
    }

    pub(crate) fn at(&self, (x, y): (i32, i32)) -> Coord {
        Coord::new(self.origin.0 + x, self.origin.1 + y, 0)
    }
}

/// One literal occurrence: a corridor from a rail tap to a clause wire port.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WireRoute {
    pub var: usize,
    pub positive: bool,
    /// 0-based clause index and literal position within it.
    pub clause: usize,
    pub slot: usize,
    /// Layer-0 corner points from the tap to the clause port.
    pub points: Vec<(i32, i32)>,
    pub leak_stop: Coord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacementPlan {
    pub dims: (i32, i32, i32),
    pub start: Coord,
    pub goal: Coord,
    pub variables: Vec<VariablePlacement>,
    pub clauses: Vec<ClausePlacement>,
    pub wires: Vec<WireRoute>,
    /// Layer-0 cells where a wire is bridged over another corridor.
    pub crossings: Vec<Coord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub name: String,
    pub lo: Coord,
    pub hi: Coord,
}

/// Gadget instances and the board boxes they occupy.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("manifest line {line}: {message}")]
pub struct ManifestError {
    pub line: usize,
    pub message: String,
}

impl Manifest {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let _ = writeln!(out, "gadget {} {} {} {} {} {} {}", e.name, e.lo.x, e.lo.y, e.lo.z, e.hi.x, e.hi.y, e.hi.z);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ManifestError> {
        let mut entries = Vec::new();
        for (i, l) in text.lines().enumerate() {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            let err = |message: &str| ManifestError {
                line: i + 1,
                message: message.to_string(),
            };
            if toks.len() != 8 || toks[0] != "gadget" {
                return Err(err("expected `gadget NAME X0 Y0 Z0 X1 Y1 Z1`"));
            }
            let n: Vec<i32> = toks[2..].iter().map(|t| t.parse()).collect::<Result<_, _>>().map_err(|_| err("bad coordinate"))?;
            entries.push(ManifestEntry {
                name: toks[1].to_string(),
                lo: Coord::new(n[0], n[1], n[2]),
                hi: Coord::new(n[3], n[4], n[5]),
            });
        }
        Ok(Manifest { entries })
    }

    pub fn count(&self, prefix: &str) -> usize {
        self.entries.iter().filter(|e| e.name.strip_prefix(prefix).is_some_and(|r| r.starts_with('_'))).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compiled {
    pub board: Board,
    pub plan: PlacementPlan,
    pub manifest: Manifest,
}

fn check_widths(f: &CnfFormula, opts: CompileOptions) -> Result<(), CompileError> {
    for (i, c) in f.clauses.iter().enumerate() {
        if c.len() > opts.max_clause_width {
            return Err(CompileError::UnsupportedClauseWidth {
                clause: i + 1,
                width: c.len(),
                max: opts.max_clause_width,
            });
        }
    }
    let wide: BTreeSet<usize> = f.clauses.iter().map(Vec::len).filter(|&k| k > VERIFIED_CLAUSE_WIDTH).collect();
    for k in wide {
        let report = verify_gadget(&clause(k), &clause_contract(k), Budget::states(1_000_000)).map_err(|_| CompileError::UnverifiedClause(k))?;
        if !report.all_passed() {
            return Err(CompileError::UnverifiedClause(k));
        }
    }
    Ok(())
}

fn layout(f: &CnfFormula) -> (PlacementPlan, Canvas) {
    let mut c = Canvas::new();
    let mut occurrences: Vec<[Vec<(usize, usize)>; 2]> = vec![[Vec::new(), Vec::new()]; f.num_vars];
    for (j, cl) in f.clauses.iter().enumerate() {
        for (s, &l) in cl.iter().enumerate() {
            occurrences[l.unsigned_abs() as usize - 1][usize::from(l > 0)].push((j, s));
        }
    }

    let start = Coord::new(VX + 4, 2, 0);
    c.carve_v(VX + 4, 2, 3);
    let mut variables = Vec::new();
    let mut taps = Vec::new();
    let mut vy = 4;
    let mut yb = 0;
    for (v, occ) in occurrences.iter().enumerate() {
        let shape = VariableShape::new(occ[1].len(), occ[0].len());
        if v > 0 {
            c.carve_v(VX + 8, yb, yb + 2);
            c.carve_h(yb + 2, VX + 4, VX + 8);
            c.carve_v(VX + 4, yb + 2, yb + 4);
        }
        paint_variable(&mut c, VX, vy, &shape, true);
        for positive in [true, false] {
            let list = &occ[usize::from(positive)];
            for (&(x, y), &(j, s)) in shape.taps(positive).iter().zip(list) {
                taps.push((vy + y, VX + x, v, positive, j, s));
            }
        }
        yb = vy + shape.exit().1;
        variables.push(VariablePlacement { var: v + 1, origin: (VX, vy), shape });
        vy = yb + 4;
    }

    let n = taps.len() as i32;
    let cx = VX + 14 + 2 * n;
    let rc = yb + 2;
    let mut clauses = Vec::new();
    let mut cy = rc + 4;
    for (j, cl) in f.clauses.iter().enumerate() {
        let shape = ClauseShape::new(cl.len());
        paint_clause(&mut c, cx, cy, &shape, true);
        let h = shape.height;
        clauses.push(ClausePlacement { clause: j, origin: (cx, cy), shape });
        cy += h;
    }
    c.carve_v(VX + 8, yb, rc);
    c.route_h(rc, VX + 8, cx + 4);
    c.carve_v(cx + 4, rc, rc + 4);
    let goal = if clauses.is_empty() {
        Coord::new(cx + 4, rc + 4, 0)
    } else {
        c.carve_v(cx + 4, cy, cy + 1);
        Coord::new(cx + 4, cy + 1, 0)
    };

    let mut order: Vec<usize> = (0..taps.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(taps[i].0));
    let mut wires = vec![None; taps.len()];
    for (rank, &i) in order.iter().enumerate() {
        let (tr, tx, v, positive, j, s) = taps[i];
        let jc = VX + 12 + 2 * rank as i32;
        let pr = clauses[j].origin.1 + clauses[j].shape.wire_rows[s];
        let points = vec![(tx, tr), (jc, tr), (jc, pr), (cx, pr)];
        c.route(&points);
        wires[i] = Some(WireRoute {
            var: v + 1,
            positive,
            clause: j,
            slot: s,
            points,
            leak_stop: Coord::new(cx + 2, pr, 0),
        });
    }
    let mut wires: Vec<WireRoute> = wires.into_iter().map(Option::unwrap).collect();
    wires.sort_by_key(|w| (w.clause, w.slot));

    let crossings = c.finish_routes();
    let dims = (cx + 8, goal.y + 2, c.depth());
    let plan = PlacementPlan {
        dims,
        start,
        goal,
        variables,
        clauses,
        wires,
        crossings,
    };
    (plan, c)
}

fn manifest(plan: &PlacementPlan) -> Manifest {
    let top = plan.dims.2 - 1;
    let mut entries = Vec::new();
    let mut boxed = |name: String, (x, y): (i32, i32), (w, h): (i32, i32)| {
        entries.push(ManifestEntry {
            name,
            lo: Coord::new(x, y, 0),
            hi: Coord::new(x + w - 1, y + h - 1, top),
        });
    };
    for v in &plan.variables {
        boxed(format!("variable_{}", v.var), v.origin, v.size());
    }
    for cl in &plan.clauses {
        boxed(format!("clause_{}", cl.clause + 1), cl.origin, cl.size());
    }
    for (k, x) in plan.crossings.iter().enumerate() {
        boxed(format!("crossover_{}", k + 1), (x.x, x.y - 2), (1, 5));
    }
    Manifest { entries }
}

/// Compiles with the default clause width limit.
pub fn compile(f: &CnfFormula) -> Result<Board, CompileError> {
    compile_with(f, CompileOptions::default()).map(|c| c.board)
}

pub fn compile_with(f: &CnfFormula, opts: CompileOptions) -> Result<Compiled, CompileError> {
    check_widths(f, opts)?;
    let (plan, canvas) = layout(f);
    let (w, h, d) = plan.dims;
    let mut parts = BoardParts::solid(w, h, d);
    parts.walls.retain(|x| !canvas.free.contains(x));
    parts.blocks = canvas.blocks;
    parts.start = plan.start;
    parts.goal = Some(plan.goal);
    parts.mode = Mode::Path;
    let board = Board::from_parts(parts).expect("layout produces a valid board");
    let manifest = manifest(&plan);
    Ok(Compiled { board, plan, manifest })
}
