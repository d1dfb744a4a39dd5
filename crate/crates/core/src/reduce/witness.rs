//! The intended solution path for an assignment.

use std::collections::VecDeque;

use super::cnf::{Assignment, CnfFormula};
use super::layout::{compile_with, CompileError, CompileOptions, Compiled};
use crate::board::{Board, State};
use crate::geom::{Coord, Direction, MoveSequence};
use crate::rules::replay_from;
use crate::search::{expand_pushes, Push};

fn push_at(stand: Coord, dir: Direction) -> Push {
    Push { block: stand.step(dir), dir }
}

/// The pushes of the intended path, in order: per variable the fork choice,
/// every leak-stop on the chosen rail, the rail's exit; then each clause plug.
pub fn witness_pushes(compiled: &Compiled, a: &Assignment) -> Vec<Push> {
    let plan = &compiled.plan;
    let mut pushes = Vec::new();
    for v in &plan.variables {
        let value = a.value(v.var);
        let (cell, dir) = v.shape.choose(value);
        pushes.push(push_at(v.at(cell), dir));
        for w in plan.wires.iter().filter(|w| w.var == v.var && w.positive == value) {
            pushes.push(Push {
                block: w.leak_stop,
                dir: Direction::E,
            });
        }
        let (cell, dir) = v.shape.release(value);
        pushes.push(push_at(v.at(cell), dir));
    }
    for cl in &plan.clauses {
        let (cell, dir) = cl.shape.drop();
        pushes.push(push_at(cl.at(cell), dir));
    }
    pushes
}

/// Shortest walk that ignores blocks; used once the intended path is obstructed.
fn static_walk(board: &Board, from: Coord, to: Coord) -> MoveSequence {
    let (Some(s), Some(t)) = (board.index(from), board.index(to)) else {
        return MoveSequence::new();
    };
    let mut prev: Vec<Option<(usize, Direction)>> = vec![None; board.cell_count()];
    let mut seen = vec![false; board.cell_count()];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(c) = queue.pop_front() {
        if c == t {
            break;
        }
        for &d in board.directions() {
            if let Some(n) = board.neighbor(c, d) {
                if !seen[n] {
                    seen[n] = true;
                    prev[n] = Some((c, d));
                    queue.push_back(n);
                }
            }
        }
    }
    let mut moves = Vec::new();
    let mut at = t;
    while let Some((p, d)) = prev[at] {
        moves.push(d);
        at = p;
    }
    moves.reverse();
    MoveSequence(moves)
}

/// Follows the intended pushes on the compiled board. If the assignment does
/// not satisfy the formula some step is obstructed; the path then heads
/// straight for that step regardless of blocks and stops, so it cannot end on t.
pub fn witness_on(compiled: &Compiled, a: &Assignment) -> MoveSequence {
    let board = &compiled.board;
    let mut state: State = board.initial_state();
    let mut moves = MoveSequence::new();
    for p in witness_pushes(compiled, a) {
        match expand_pushes(board, &state, &[p], None) {
            Some(m) => {
                state = replay_from(board, state, &m).expect("expanded push replays");
                moves.extend_from(&m);
            }
            None => {
                let stand = p.block.step(p.dir.opposite());
                moves.extend_from(&static_walk(board, state.robot, stand));
                moves.push(p.dir);
                return moves;
            }
        }
    }
    let goal = compiled.plan.goal;
    match expand_pushes(board, &state, &[], Some(goal)) {
        Some(m) => moves.extend_from(&m),
        None => moves.extend_from(&static_walk(board, state.robot, goal)),
    }
    moves
}

pub fn witness_path(f: &CnfFormula, a: &Assignment) -> Result<MoveSequence, CompileError> {
    witness_path_with(f, a, CompileOptions::default())
}

pub fn witness_path_with(f: &CnfFormula, a: &Assignment, opts: CompileOptions) -> Result<MoveSequence, CompileError> {
    if a.0.len() != f.num_vars {
        return Err(CompileError::AssignmentSize {
            got: a.0.len(),
            want: f.num_vars,
        });
    }
    let compiled = compile_with(f, opts)?;
    Ok(witness_on(&compiled, a))
}
