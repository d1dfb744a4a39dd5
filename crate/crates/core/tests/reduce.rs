mod common;

use std::collections::BTreeSet;

use pushpush::format::render_board;
use pushpush::reduce::{compile, compile_with, sat_oracle, witness_on, witness_path, Assignment, CnfFormula, CompileOptions, Compiled, SatResult};
use pushpush::search::{reachable_region, solve, Budget, StateGraph, Verdict};
use pushpush::{apply_move, is_goal, replay, slide_destination, Coord, Direction, State};
use rayon::prelude::*;

fn eq1() -> CnfFormula {
    CnfFormula::parse_dimacs("p cnf 3 4\n1 2 0\n1 -2 0\n-1 3 0\n-1 -3 0\n").unwrap()
}

fn eq2() -> CnfFormula {
    CnfFormula::parse_dimacs("p cnf 3 4\n1 2 0\n1 -2 0\n-1 2 3 0\n-1 -3 0\n").unwrap()
}

fn compiled(f: &CnfFormula) -> Compiled {
    compile_with(f, CompileOptions::default()).unwrap()
}

fn reaches_goal(c: &Compiled, a: &Assignment) -> bool {
    let w = witness_on(c, a);
    replay(&c.board, &w).is_ok_and(|s| is_goal(&c.board, &s))
}

#[test]
fn eq2_witness_replays() {
    let f = eq2();
    let a = Assignment(vec![true, true, false]);
    assert!(f.evaluate(&a));
    let w = witness_path(&f, &a).unwrap();
    let b = compile(&f).unwrap();
    assert!(is_goal(&b, &replay(&b, &w).unwrap()));
}

#[test]
fn witness_succeeds_exactly_for_satisfying_assignments() {
    for f in [eq1(), eq2()] {
        let c = compiled(&f);
        for a in Assignment::all(3) {
            assert_eq!(reaches_goal(&c, &a), f.evaluate(&a), "{f} under {a}");
        }
    }
}

#[test]
fn false_unit_clause_clogs_at_its_plug() {
    let f = CnfFormula::new(1, vec![vec![1]]).unwrap();
    let c = compiled(&f);
    assert!(reaches_goal(&c, &Assignment(vec![true])));
    let w = witness_on(&c, &Assignment(vec![false]));
    let err = replay(&c.board, &w).unwrap_err();
    let (x0, y0) = c.plan.clauses[0].origin;
    let (cw, ch) = c.plan.clauses[0].size();
    let at = err.state.robot;
    assert!(at.x >= x0 && at.x < x0 + cw && at.y >= y0 && at.y < y0 + ch, "stopped at {at}");
}

#[test]
fn smallest_instances_by_exhaustive_search() {
    let sat = CnfFormula::new(1, vec![vec![1]]).unwrap();
    assert_eq!(solve(&compile(&sat).unwrap(), Budget::default()).verdict, Verdict::Solved);
    let unsat = CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap();
    assert_eq!(sat_oracle(&unsat).unwrap(), SatResult::Unsatisfiable);
    assert_eq!(solve(&compile(&unsat).unwrap(), Budget::default()).verdict, Verdict::Unsolvable);
}

#[test]
fn solvability_matches_satisfiability_on_family() {
    let family = common::sat_family();
    assert_eq!(family.len(), 19 + 285 + 20);
    let mismatches: Vec<String> = family
        .par_iter()
        .filter_map(|f| {
            let c = compiled(f);
            let r = solve(&c.board, Budget::default());
            let sat = sat_oracle(f).unwrap();
            let ok = match (&sat, r.verdict) {
                (SatResult::Satisfiable(_), Verdict::Solved) => {
                    let end = replay(&c.board, r.moves.as_ref().unwrap()).unwrap();
                    is_goal(&c.board, &end)
                }
                (SatResult::Unsatisfiable, Verdict::Unsolvable) => true,
                _ => false,
            };
            let witnesses_ok = Assignment::all(f.num_vars).all(|a| reaches_goal(&c, &a) == f.evaluate(&a));
            (!ok || !witnesses_ok).then(|| format!("{f}: {:?} vs {:?}, witnesses ok {witnesses_ok}", sat, r.verdict))
        })
        .collect();
    assert!(mismatches.is_empty(), "{mismatches:#?}");
}

fn prefix_states(c: &Compiled, a: &Assignment) -> Vec<State> {
    let mut s = c.board.initial_state();
    let mut out = vec![s.clone()];
    for d in witness_on(c, a).iter() {
        match apply_move(&c.board, &s, d) {
            Ok(n) => s = n,
            Err(_) => break,
        }
        out.push(s.clone());
    }
    out
}

#[test]
fn leak_stops_keep_the_other_rail_closed() {
    let formulas = [
        CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap(),
        CnfFormula::new(1, vec![vec![1, -1], vec![-1], vec![1]]).unwrap(),
        CnfFormula::new(1, vec![vec![1, -1]]).unwrap(),
    ];
    for f in formulas {
        let c = compiled(&f);
        let v = &c.plan.variables[0];
        for value in [true, false] {
            let a = Assignment(vec![value]);
            let closed: BTreeSet<Coord> = v.rail_cells(!value).into_iter().filter(|&x| !c.board.is_wall(x)).collect();
            let gate = v.exit_block(value);
            let mut seen = BTreeSet::new();
            for s in prefix_states(&c, &a).into_iter().filter(|s| !s.blocks.contains(&gate)) {
                if !seen.insert(s.blocks.clone()) {
                    continue;
                }
                let g = StateGraph::explore(&c.board, &s, &[], Budget::default());
                assert!(g.is_complete());
                for n in 0..g.len() as u32 {
                    let cs = g.canonical(n);
                    let region = reachable_region(&c.board, &cs.blocks, cs.robot);
                    assert!(region.is_disjoint(&closed), "{f} value {value}: robot re-enters the other rail");
                }
            }
            assert!(!seen.is_empty());
        }
    }
}

#[test]
fn without_leak_stops_the_other_rail_opens() {
    let f = CnfFormula::new(1, vec![vec![1, -1]]).unwrap();
    let c = compiled(&f);
    let mut parts = c.board.to_parts();
    for w in &c.plan.wires {
        parts.blocks.remove(&w.leak_stop);
    }
    let board = pushpush::Board::from_parts(parts).unwrap();
    let v = &c.plan.variables[0];
    let closed: BTreeSet<Coord> = v.rail_cells(false).into_iter().filter(|&x| !board.is_wall(x)).collect();
    let g = StateGraph::explore(&board, &board.initial_state(), &[], Budget::default());
    let gate = v.exit_block(true);
    let leaked = (0..g.len() as u32).any(|n| {
        let cs = g.canonical(n);
        !cs.blocks.contains(&gate) && !reachable_region(&board, &cs.blocks, cs.robot).is_disjoint(&closed)
    });
    assert!(leaked);
}

#[test]
fn leak_stops_pushed_back_stay_on_their_wire() {
    let c = compiled(&eq2());
    for w in &c.plan.wires {
        let dest = slide_destination(&c.board, c.board.initial_blocks(), w.leak_stop, Direction::W).unwrap();
        let (jc, pr) = w.points[2];
        assert_eq!(dest, Coord::new(jc, pr, 0));
        let dest = slide_destination(&c.board, c.board.initial_blocks(), w.leak_stop, Direction::E).unwrap();
        assert_eq!(dest, w.leak_stop.step(Direction::E).step(Direction::E));
    }
}

#[test]
fn raised_cells_belong_to_crossovers() {
    let c = compiled(&eq2());
    assert!(c.board.initial_blocks().iter().all(|b| b.z == 0));
    let boxes: Vec<_> = c.manifest.entries.iter().filter(|e| e.name.starts_with("crossover_")).collect();
    for cell in c.board.free_cells().filter(|x| x.z > 0) {
        assert!(
            boxes
                .iter()
                .any(|e| (e.lo.x..=e.hi.x).contains(&cell.x) && (e.lo.y..=e.hi.y).contains(&cell.y)),
            "{cell} outside every crossover"
        );
    }
    assert!(c.manifest.count("crossover") >= c.plan.crossings.len());
}

#[test]
fn compile_is_deterministic() {
    for f in [eq1(), eq2()] {
        let a = compiled(&f);
        let b = compiled(&f);
        assert_eq!(render_board(&a.board), render_board(&b.board));
        assert_eq!(a.manifest.to_text(), b.manifest.to_text());
    }
}
