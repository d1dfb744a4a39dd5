#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use pushpush::reduce::CnfFormula;
use pushpush::{apply_move, is_goal, Board, State};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FAMILY_SEED: u64 = 0x5eed_2001;

fn multisets<T: Clone>(items: &[T], size: usize, from: usize, acc: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
    if acc.len() == size {
        out.push(acc.clone());
        return;
    }
    for i in from..items.len() {
        acc.push(items[i].clone());
        multisets(items, size, i, acc, out);
        acc.pop();
    }
}

/// Every formula over 1 or 2 variables with 1 to 3 clauses, each clause a set
/// of 1 or 2 distinct literals, clause lists taken as multisets; then 20
/// seeded random formulas over 2 variables with 1 to 3 clauses of width 3.
pub fn sat_family() -> Vec<CnfFormula> {
    let mut out = Vec::new();
    for n in 1..=2i32 {
        let lits: Vec<i32> = (1..=n).flat_map(|v| [v, -v]).collect();
        let mut types: Vec<Vec<i32>> = lits.iter().map(|&l| vec![l]).collect();
        for i in 0..lits.len() {
            for j in i + 1..lits.len() {
                types.push(vec![lits[i], lits[j]]);
            }
        }
        for size in 1..=3 {
            let mut sets = Vec::new();
            multisets(&types, size, 0, &mut Vec::new(), &mut sets);
            out.extend(sets.into_iter().map(|cl| CnfFormula::new(n as usize, cl).unwrap()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(FAMILY_SEED);
    for _ in 0..20 {
        let m = rng.gen_range(1..=3);
        let clauses = (0..m)
            .map(|_| {
                (0..3)
                    .map(|_| {
                        let v = rng.gen_range(1..=2);
                        if rng.gen_bool(0.5) {
                            v
                        } else {
                            -v
                        }
                    })
                    .collect()
            })
            .collect();
        out.push(CnfFormula::new(2, clauses).unwrap());
    }
    out
}

/// Plain breadth-first search over single robot moves. Returns the minimum
/// number of pushes to a goal state, or None if no goal state is reachable.
pub fn move_level_min_pushes(board: &Board, cap: usize) -> Option<Option<usize>> {
    let start = board.initial_state();
    let mut dist: HashMap<State, usize> = HashMap::new();
    let mut layer: VecDeque<State> = VecDeque::new();
    dist.insert(start.clone(), 0);
    layer.push_back(start);
    // 0-1 BFS: walking costs 0 pushes, pushing costs 1
    while let Some(s) = layer.pop_front() {
        let d = dist[&s];
        if is_goal(board, &s) {
            return Some(Some(d));
        }
        if dist.len() > cap {
            return None;
        }
        for &dir in board.directions() {
            if let Ok(n) = apply_move(board, &s, dir) {
                let pushed = n.blocks != s.blocks;
                let nd = d + usize::from(pushed);
                if dist.get(&n).is_none_or(|&old| nd < old) {
                    dist.insert(n.clone(), nd);
                    if pushed {
                        layer.push_back(n);
                    } else {
                        layer.push_front(n);
                    }
                }
            }
        }
    }
    Some(None)
}

/// Small random puzzle from a seed: walls, blocks, start and goal on free cells.
pub fn random_board(seed: u64, dims: (i32, i32, i32)) -> Board {
    use pushpush::board::BoardParts;
    use pushpush::{Coord, Mode};
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w, h, d) = dims;
    let mut cells = Vec::new();
    for z in 0..d {
        for y in 0..h {
            for x in 0..w {
                cells.push(Coord::new(x, y, z));
            }
        }
    }
    loop {
        let mut walls = BTreeSet::new();
        let mut blocks = BTreeSet::new();
        for &c in &cells {
            match rng.gen_range(0..10) {
                0..=1 => {
                    walls.insert(c);
                }
                2..=3 => {
                    blocks.insert(c);
                }
                _ => {}
            }
        }
        let open: Vec<Coord> = cells.iter().copied().filter(|c| !walls.contains(c) && !blocks.contains(c)).collect();
        if open.len() < 2 {
            continue;
        }
        let start = open[rng.gen_range(0..open.len())];
        let goal = open[rng.gen_range(0..open.len())];
        let parts = BoardParts {
            dims,
            walls,
            storage: BTreeSet::new(),
            start,
            goal: Some(goal),
            blocks,
            mode: Mode::Path,
        };
        if let Ok(b) = Board::from_parts(parts) {
            return b;
        }
    }
}

pub const SEMANTICS_SEED: u64 = 0x5eed_0b0a;

/// Every placement of start, goal and up to three blocks on a handful of small
/// shapes with at most 10 free cells, 2D and 3D.
pub fn small_board_family() -> Vec<Board> {
    use pushpush::board::BoardParts;
    use pushpush::{Coord, Mode};
    let shapes: Vec<((i32, i32, i32), Vec<Coord>)> = vec![
        ((10, 1, 1), vec![]),
        ((5, 2, 1), vec![]),
        ((3, 3, 1), vec![]),
        ((3, 3, 1), vec![Coord::new(1, 1, 0)]),
        ((4, 3, 1), vec![Coord::new(1, 1, 0), Coord::new(2, 1, 0)]),
        ((4, 3, 1), vec![Coord::new(0, 0, 0), Coord::new(3, 2, 0)]),
        ((2, 2, 2), vec![]),
        ((3, 2, 2), vec![Coord::new(1, 0, 1), Coord::new(1, 1, 1)]),
    ];
    let mut out = Vec::new();
    for (dims, walls) in shapes {
        let (w, h, d) = dims;
        let mut free = Vec::new();
        for z in 0..d {
            for y in 0..h {
                for x in 0..w {
                    let c = Coord::new(x, y, z);
                    if !walls.contains(&c) {
                        free.push(c);
                    }
                }
            }
        }
        assert!(free.len() <= 10);
        let n = free.len();
        for mask in 0u32..1 << n {
            if mask.count_ones() > 3 {
                continue;
            }
            let blocks: BTreeSet<Coord> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| free[i]).collect();
            let open: Vec<Coord> = free.iter().copied().filter(|c| !blocks.contains(c)).collect();
            for &start in &open {
                for &goal in &open {
                    if goal == start {
                        continue;
                    }
                    let parts = BoardParts {
                        dims,
                        walls: walls.iter().copied().collect(),
                        storage: BTreeSet::new(),
                        start,
                        goal: Some(goal),
                        blocks: blocks.clone(),
                        mode: Mode::Path,
                    };
                    out.push(Board::from_parts(parts).unwrap());
                }
            }
        }
    }
    out
}

/// Counts of semantic violations found by [`random_move_audit`].
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Violations {
    pub conservation: usize,
    pub max_slide: usize,
    pub displacement: usize,
    pub reversibility: usize,
    pub idempotence: usize,
}

impl Violations {
    pub fn total(&self) -> usize {
        self.conservation + self.max_slide + self.displacement + self.reversibility + self.idempotence
    }
}

/// Random legal-or-not moves on seeded random boards; checks every transition.
/// Returns the violations and the number of moves attempted.
pub fn random_move_audit(seed: u64, boards: usize, moves_per_board: usize) -> (Violations, usize) {
    use pushpush::search::canonicalize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = Violations::default();
    let mut attempted = 0;
    for _ in 0..boards {
        let dims = (rng.gen_range(3..9), rng.gen_range(3..9), rng.gen_range(1..4));
        let board = random_board(rng.gen(), dims);
        let mut s = board.initial_state();
        for _ in 0..moves_per_board {
            attempted += 1;
            let dirs = board.directions();
            let d = dirs[rng.gen_range(0..dirs.len())];
            let Ok(n) = apply_move(&board, &s, d) else {
                continue;
            };
            if n.blocks.len() != s.blocks.len() {
                v.conservation += 1;
            }
            let gone: Vec<_> = s.blocks.difference(&n.blocks).copied().collect();
            let came: Vec<_> = n.blocks.difference(&s.blocks).copied().collect();
            match (gone.as_slice(), came.as_slice()) {
                ([], []) => {
                    if apply_move(&board, &n, d.opposite()).ok().as_ref() != Some(&s) {
                        v.reversibility += 1;
                    }
                }
                ([from], [to]) => {
                    let beyond = to.step(d);
                    let straight = (1..64).any(|k| {
                        let (dx, dy, dz) = d.delta();
                        from.offset(dx * k, dy * k, dz * k) == *to
                    });
                    if *from != n.robot || !straight || !(board.is_wall(beyond) || n.blocks.contains(&beyond)) {
                        v.max_slide += 1;
                    }
                }
                _ => v.displacement += 1,
            }
            let c = canonicalize(&board, &n);
            let again = canonicalize(
                &board,
                &State {
                    blocks: c.blocks.clone(),
                    robot: c.robot,
                },
            );
            if again != c {
                v.idempotence += 1;
            }
            s = n;
        }
    }
    (v, attempted)
}

/// Boards where macro search and move-level search disagree on reachability,
/// push count, or where the returned moves fail to replay to the goal.
pub fn macro_vs_move_level(boards: &[Board]) -> Vec<(usize, String)> {
    use pushpush::rules::replay;
    use pushpush::search::{solve, Budget, Verdict};
    let mut bad = Vec::new();
    for (i, b) in boards.iter().enumerate() {
        let r = solve(b, Budget::states(1_000_000));
        let oracle = move_level_min_pushes(b, 10_000_000).expect("small boards fit the cap");
        let ok = match (r.verdict, oracle) {
            (Verdict::Solved, Some(p)) => {
                let moves = r.moves.as_ref().unwrap();
                let ends = replay(b, moves).map(|s| is_goal(b, &s)).unwrap_or(false);
                ends && r.pushes == p
            }
            (Verdict::Unsolvable, None) => true,
            _ => false,
        };
        if !ok {
            bad.push((i, format!("{:?} vs {:?}", r.verdict, oracle)));
        }
    }
    bad
}
