//! Breadth-first exploration over canonical states.
//!
//! A canonical state is the block set plus the least cell (by layer, row,
//! column) of the robot's walk-reachable region. Successors are macro moves:
//! walk anywhere in the region, then push one block. Walks never create new
//! canonical states.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::time::{Duration, Instant};

use crate::board::{Board, Mode, State};
use crate::geom::{Coord, Direction, MoveSequence};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    pub max_states: usize,
    pub max_seconds: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_states: 10_000_000,
            max_seconds: 300.0,
        }
    }
}

impl Budget {
    pub fn states(max_states: usize) -> Self {
        Budget {
            max_states,
            ..Budget::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Solved,
    Unsolvable,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub verdict: Verdict,
    pub moves: Option<MoveSequence>,
    pub states_explored: usize,
    /// Number of pushes in `moves`.
    pub pushes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalState {
    pub blocks: BTreeSet<Coord>,
    /// Least cell of the robot's walk-reachable region.
    pub robot: Coord,
}

/// A single push: the block at `block` is pushed in `dir`, the robot standing at `block - dir`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Push {
    pub block: Coord,
    pub dir: Direction,
}

/// Scratch buffers for flood fills and slides on one board.
pub(crate) struct Explorer<'b> {
    board: &'b Board,
    occupied: Vec<bool>,
    stamp: Vec<u32>,
    generation: u32,
    queue: Vec<u32>,
}

impl<'b> Explorer<'b> {
    pub fn new(board: &'b Board) -> Self {
        let n = board.cell_count();
        Explorer {
            board,
            occupied: vec![false; n],
            stamp: vec![0; n],
            generation: 0,
            queue: Vec::new(),
        }
    }

    pub fn set_blocks(&mut self, blocks: &[u32], on: bool) {
        for &b in blocks {
            self.occupied[b as usize] = on;
        }
    }

    fn is_open(&self, idx: usize) -> bool {
        !self.occupied[idx]
    }

    /// Flood fill from `robot`; returns the least index reached. The region
    /// stays marked until the next call (see [`Explorer::in_region`]).
    pub fn flood(&mut self, robot: u32) -> u32 {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
        let g = self.generation;
        self.queue.clear();
        self.queue.push(robot);
        self.stamp[robot as usize] = g;
        let mut min = robot;
        let mut head = 0;
        let dirs = self.board.directions();
        while head < self.queue.len() {
            let c = self.queue[head] as usize;
            head += 1;
            for &d in dirs {
                if let Some(n) = self.board.neighbor(c, d) {
                    if self.stamp[n] != g && !self.occupied[n] {
                        self.stamp[n] = g;
                        min = min.min(n as u32);
                        self.queue.push(n as u32);
                    }
                }
            }
        }
        min
    }

    pub fn in_region(&self, idx: usize) -> bool {
        self.stamp[idx] == self.generation
    }

    pub fn region_cells(&self) -> &[u32] {
        &self.queue
    }

    /// Slide destination of the block at `from` pushed in `dir`, or `None` if it cannot move.
    pub fn slide(&self, from: usize, dir: Direction) -> Option<usize> {
        let mut at = from;
        while let Some(n) = self.board.neighbor(at, dir) {
            if !self.is_open(n) {
                break;
            }
            at = n;
        }
        (at != from).then_some(at)
    }

    /// Macro successors of (blocks, region containing `robot`), in canonical
    /// order: blocks ascending, then directions N E S W U D. Each entry is
    /// (new sorted blocks, new robot cell, pushed block index, direction).
    /// Occupancy is left set to `blocks` on return.
    pub fn successors(&mut self, blocks: &[u32], robot: u32, out: &mut Vec<(Vec<u32>, u32, u32, Direction)>) {
        out.clear();
        self.set_blocks(blocks, true);
        self.flood(robot);
        let dirs = self.board.directions();
        for (bi, &b) in blocks.iter().enumerate() {
            for &d in dirs {
                let Some(stand) = self.board.neighbor(b as usize, d.opposite()) else {
                    continue;
                };
                if !self.in_region(stand) {
                    continue;
                }
                let Some(dest) = self.slide(b as usize, d) else {
                    continue;
                };
                let mut next = blocks.to_vec();
                next.remove(bi);
                let pos = next.partition_point(|&x| x < dest as u32);
                next.insert(pos, dest as u32);
                out.push((next, b, b, d));
            }
        }
    }

    /// Lexicographically least shortest walk from `from` to `to` with the
    /// current occupancy, using direction order N E S W U D.
    pub fn walk(&mut self, from: u32, to: u32) -> Option<Vec<Direction>> {
        if from == to {
            return Some(Vec::new());
        }
        let n = self.board.cell_count();
        let mut dist = vec![u32::MAX; n];
        let mut q = VecDeque::new();
        dist[to as usize] = 0;
        q.push_back(to as usize);
        let dirs = self.board.directions();
        while let Some(c) = q.pop_front() {
            if c == from as usize {
                break;
            }
            for &d in dirs {
                if let Some(nb) = self.board.neighbor(c, d) {
                    if dist[nb] == u32::MAX && self.is_open(nb) {
                        dist[nb] = dist[c] + 1;
                        q.push_back(nb);
                    }
                }
            }
        }
        if dist[from as usize] == u32::MAX {
            return None;
        }
        let mut path = Vec::new();
        let mut at = from as usize;
        while at != to as usize {
            let (d, nb) = dirs
                .iter()
                .filter_map(|&d| self.board.neighbor(at, d).map(|nb| (d, nb)))
                .find(|&(_, nb)| dist[nb] != u32::MAX && dist[nb] + 1 == dist[at])
                .expect("distance field is consistent");
            path.push(d);
            at = nb;
        }
        Some(path)
    }
}

fn block_indices(board: &Board, blocks: &BTreeSet<Coord>) -> Vec<u32> {
    let mut v: Vec<u32> = blocks.iter().map(|c| board.index(*c).expect("block in range") as u32).collect();
    v.sort_unstable();
    v
}

fn to_coords(board: &Board, blocks: &[u32]) -> BTreeSet<Coord> {
    blocks.iter().map(|&i| board.coord(i as usize)).collect()
}

pub fn reachable_region(board: &Board, blocks: &BTreeSet<Coord>, robot: Coord) -> BTreeSet<Coord> {
    let mut ex = Explorer::new(board);
    let idx = block_indices(board, blocks);
    ex.set_blocks(&idx, true);
    let r = board.index(robot).expect("robot in range");
    ex.flood(r as u32);
    ex.region_cells().iter().map(|&i| board.coord(i as usize)).collect()
}

pub fn canonicalize(board: &Board, state: &State) -> CanonicalState {
    let mut ex = Explorer::new(board);
    let idx = block_indices(board, &state.blocks);
    ex.set_blocks(&idx, true);
    let min = ex.flood(board.index(state.robot).expect("robot in range") as u32);
    CanonicalState {
        blocks: state.blocks.clone(),
        robot: board.coord(min as usize),
    }
}

pub fn successors(board: &Board, cs: &CanonicalState) -> Vec<(CanonicalState, Push)> {
    let mut ex = Explorer::new(board);
    let blocks = block_indices(board, &cs.blocks);
    let robot = board.index(cs.robot).expect("robot in range") as u32;
    let mut out = Vec::new();
    ex.successors(&blocks, robot, &mut out);
    ex.set_blocks(&blocks, false);
    out.into_iter()
        .map(|(next, r, b, d)| {
            ex.set_blocks(&next, true);
            let min = ex.flood(r);
            ex.set_blocks(&next, false);
            (
                CanonicalState {
                    blocks: to_coords(board, &next),
                    robot: board.coord(min as usize),
                },
                Push {
                    block: board.coord(b as usize),
                    dir: d,
                },
            )
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Parent {
    pub node: u32,
    pub block: u32,
    pub dir: Direction,
}

#[derive(Debug, Clone, Copy)]
pub struct Edge {
    pub to: u32,
    pub block: u32,
    pub dir: Direction,
}

fn hash_key(blocks: &[u32], robot: u32) -> u64 {
    // FxHash-style mixing; equality is always confirmed on lookup
    const K: u64 = 0x517c_c1b7_2722_0a95;
    let mut h = (robot as u64).wrapping_mul(K);
    for &b in blocks {
        h = (h.rotate_left(5) ^ b as u64).wrapping_mul(K);
    }
    h
}

/// Deduplicated set of canonical states with parent links. Block lists of
/// all nodes share one flat arena since the block count never changes.
pub(crate) struct NodeStore {
    width: usize,
    arena: Vec<u32>,
    robot: Vec<u32>,
    parent: Vec<Option<Parent>>,
    first: HashMap<u64, u32>,
    chain: Vec<u32>,
}

const NO_NODE: u32 = u32::MAX;

impl NodeStore {
    pub fn new(width: usize) -> Self {
        NodeStore {
            width,
            arena: Vec::new(),
            robot: Vec::new(),
            parent: Vec::new(),
            first: HashMap::new(),
            chain: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.robot.len()
    }

    pub fn blocks(&self, id: u32) -> &[u32] {
        let i = id as usize * self.width;
        &self.arena[i..i + self.width]
    }

    pub fn robot(&self, id: u32) -> u32 {
        self.robot[id as usize]
    }

    pub fn parent(&self, id: u32) -> Option<Parent> {
        self.parent[id as usize]
    }

    /// Returns (id, inserted).
    pub fn insert(&mut self, blocks: &[u32], robot: u32, parent: Option<Parent>) -> (u32, bool) {
        let h = hash_key(blocks, robot);
        let mut cur = self.first.get(&h).copied().unwrap_or(NO_NODE);
        let head = cur;
        while cur != NO_NODE {
            if self.robot[cur as usize] == robot && self.blocks(cur) == blocks {
                return (cur, false);
            }
            cur = self.chain[cur as usize];
        }
        let id = self.robot.len() as u32;
        self.arena.extend_from_slice(blocks);
        self.robot.push(robot);
        self.parent.push(parent);
        self.chain.push(head);
        self.first.insert(h, id);
        (id, true)
    }

    /// Pushes from the root to `id`.
    pub fn pushes_to(&self, mut id: u32) -> Vec<(u32, Direction)> {
        let mut v = Vec::new();
        while let Some(p) = self.parent(id) {
            v.push((p.block, p.dir));
            id = p.node;
        }
        v.reverse();
        v
    }
}

/// Expands a push list into walk-level moves starting from `state`, then
/// walks to `target` if given. Returns `None` if some step is impossible.
pub fn expand_pushes(board: &Board, state: &State, pushes: &[Push], target: Option<Coord>) -> Option<MoveSequence> {
    let mut ex = Explorer::new(board);
    let mut blocks = block_indices(board, &state.blocks);
    let mut robot = board.index(state.robot)? as u32;
    let mut moves = Vec::new();
    for p in pushes {
        let b = board.index(p.block)? as u32;
        let stand = board.neighbor(b as usize, p.dir.opposite())? as u32;
        ex.set_blocks(&blocks, true);
        let walk = ex.walk(robot, stand);
        let dest = ex.slide(b as usize, p.dir);
        ex.set_blocks(&blocks, false);
        moves.extend(walk?);
        let dest = dest? as u32;
        moves.push(p.dir);
        let pos = blocks.binary_search(&b).ok()?;
        blocks.remove(pos);
        let ins = blocks.partition_point(|&x| x < dest);
        blocks.insert(ins, dest);
        robot = b;
    }
    if let Some(t) = target {
        let t = board.index(t)? as u32;
        ex.set_blocks(&blocks, true);
        moves.extend(ex.walk(robot, t)?);
    }
    Some(MoveSequence(moves))
}

fn goal_reached(board: &Board, ex: &Explorer, blocks: &[u32], goal: Option<usize>) -> bool {
    match board.mode() {
        Mode::Path => goal.is_some_and(|t| ex.in_region(t)),
        Mode::Storage => board
            .storage()
            .iter()
            .all(|c| blocks.binary_search(&(board.index(*c).unwrap() as u32)).is_ok()),
    }
}

/// Shortest-in-pushes solution by breadth-first search over canonical states.
pub fn solve(board: &Board, budget: Budget) -> SolveResult {
    solve_from(board, &board.initial_state(), budget)
}

/// [`solve`] starting from `from` instead of the board's initial configuration.
pub fn solve_from(board: &Board, from: &State, budget: Budget) -> SolveResult {
    let started = Instant::now();
    let deadline = Duration::from_secs_f64(budget.max_seconds.max(0.0));
    let goal = board.goal().and_then(|t| board.index(t));
    let mut ex = Explorer::new(board);
    let init_blocks = block_indices(board, &from.blocks);
    let start = board.index(from.robot).expect("robot inside the board") as u32;
    let mut store = NodeStore::new(init_blocks.len());

    ex.set_blocks(&init_blocks, true);
    let min = ex.flood(start);
    let reached = goal_reached(board, &ex, &init_blocks, goal);
    ex.set_blocks(&init_blocks, false);
    store.insert(&init_blocks, min, None);
    let finish = |store: &NodeStore, id: u32| -> SolveResult {
        let pushes: Vec<Push> = store
            .pushes_to(id)
            .into_iter()
            .map(|(b, dir)| Push {
                block: board.coord(b as usize),
                dir,
            })
            .collect();
        let target = match board.mode() {
            Mode::Path => board.goal(),
            Mode::Storage => None,
        };
        let moves = expand_pushes(board, from, &pushes, target).expect("solution path replays");
        SolveResult {
            verdict: Verdict::Solved,
            moves: Some(moves),
            states_explored: store.len(),
            pushes: pushes.len(),
        }
    };
    if reached {
        return finish(&store, 0);
    }

    let mut succ = Vec::new();
    let mut next = 0u32;
    while (next as usize) < store.len() {
        if next.is_multiple_of(256) && started.elapsed() > deadline {
            return budget_exceeded(store.len());
        }
        let id = next;
        next += 1;
        let blocks = store.blocks(id).to_vec();
        ex.successors(&blocks, store.robot(id), &mut succ);
        ex.set_blocks(&blocks, false);
        for (nb, robot, b, d) in succ.drain(..) {
            ex.set_blocks(&nb, true);
            let min = ex.flood(robot);
            let hit = goal_reached(board, &ex, &nb, goal);
            ex.set_blocks(&nb, false);
            let (nid, fresh) = store.insert(&nb, min, Some(Parent { node: id, block: b, dir: d }));
            if fresh && hit {
                return finish(&store, nid);
            }
            if store.len() > budget.max_states {
                return budget_exceeded(store.len());
            }
        }
    }
    SolveResult {
        verdict: Verdict::Unsolvable,
        moves: None,
        states_explored: store.len(),
        pushes: 0,
    }
}

fn budget_exceeded(states: usize) -> SolveResult {
    SolveResult {
        verdict: Verdict::BudgetExceeded,
        moves: None,
        states_explored: states,
        pushes: 0,
    }
}

/// Whether the robot can get from `from` to `to`, by walking only or with pushes.
pub fn check_reachability(board: &Board, blocks: &BTreeSet<Coord>, from: Coord, to: Coord, allow_pushes: bool) -> bool {
    if !allow_pushes {
        return reachable_region(board, blocks, from).contains(&to);
    }
    let Some(target) = board.index(to) else {
        return false;
    };
    let graph = StateGraph::explore(board, &State { blocks: blocks.clone(), robot: from }, &[to], Budget::default());
    (0..graph.len() as u32).any(|n| graph.probe_mask(n) & 1 == 1) && !board.is_wall_idx(target)
}

/// The full reachable canonical state graph from one start state, with the
/// set of probe cells contained in each node's robot region.
pub struct StateGraph<'b> {
    board: &'b Board,
    store: NodeStore,
    masks: Vec<u64>,
    edges: Vec<Vec<Edge>>,
    complete: bool,
    start: State,
}

impl<'b> StateGraph<'b> {
    /// Explores everything reachable from `start` (at most 64 probes).
    pub fn explore(board: &'b Board, start: &State, probes: &[Coord], budget: Budget) -> StateGraph<'b> {
        assert!(probes.len() <= 64, "at most 64 probe cells");
        let started = Instant::now();
        let deadline = Duration::from_secs_f64(budget.max_seconds.max(0.0));
        let probe_idx: Vec<Option<usize>> = probes.iter().map(|p| board.index(*p)).collect();
        let mask_of = |ex: &Explorer| -> u64 {
            probe_idx
                .iter()
                .enumerate()
                .filter(|(_, p)| p.is_some_and(|i| ex.in_region(i)))
                .fold(0u64, |m, (i, _)| m | (1 << i))
        };
        let mut ex = Explorer::new(board);
        let init = block_indices(board, &start.blocks);
        let mut store = NodeStore::new(init.len());
        ex.set_blocks(&init, true);
        let min = ex.flood(board.index(start.robot).expect("robot in range") as u32);
        let mut masks = vec![mask_of(&ex)];
        ex.set_blocks(&init, false);
        store.insert(&init, min, None);
        let mut edges: Vec<Vec<Edge>> = Vec::new();
        let mut complete = true;
        let mut succ = Vec::new();
        let mut next = 0u32;
        'outer: while (next as usize) < store.len() {
            if next.is_multiple_of(256) && started.elapsed() > deadline {
                complete = false;
                break;
            }
            let id = next;
            next += 1;
            let blocks = store.blocks(id).to_vec();
            ex.successors(&blocks, store.robot(id), &mut succ);
            ex.set_blocks(&blocks, false);
            let mut out = Vec::with_capacity(succ.len());
            for (nb, robot, b, d) in succ.drain(..) {
                ex.set_blocks(&nb, true);
                let min = ex.flood(robot);
                let m = mask_of(&ex);
                ex.set_blocks(&nb, false);
                let (nid, fresh) = store.insert(&nb, min, Some(Parent { node: id, block: b, dir: d }));
                if fresh {
                    masks.push(m);
                }
                out.push(Edge { to: nid, block: b, dir: d });
                if store.len() > budget.max_states {
                    edges.push(out);
                    complete = false;
                    break 'outer;
                }
            }
            edges.push(out);
        }
        edges.resize_with(store.len(), Vec::new);
        StateGraph {
            board,
            store,
            masks,
            edges,
            complete,
            start: start.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.store.len()
    }

    pub fn is_empty(&self) -> bool {
        self.store.len() == 0
    }

    /// False when the budget cut exploration short.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn probe_mask(&self, node: u32) -> u64 {
        self.masks[node as usize]
    }

    pub fn edges(&self, node: u32) -> &[Edge] {
        &self.edges[node as usize]
    }

    pub fn canonical(&self, node: u32) -> CanonicalState {
        CanonicalState {
            blocks: to_coords(self.board, self.store.blocks(node)),
            robot: self.board.coord(self.store.robot(node) as usize),
        }
    }

    /// Nodes from which some node whose region contains probe `p` is reachable.
    pub fn can_reach_probe(&self, p: usize) -> Vec<bool> {
        let n = self.len();
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (from, es) in self.edges.iter().enumerate() {
            for e in es {
                rev[e.to as usize].push(from as u32);
            }
        }
        let mut ok = vec![false; n];
        let mut stack: Vec<u32> = (0..n as u32).filter(|&i| self.masks[i as usize] >> p & 1 == 1).collect();
        for &s in &stack {
            ok[s as usize] = true;
        }
        while let Some(v) = stack.pop() {
            for &u in &rev[v as usize] {
                if !ok[u as usize] {
                    ok[u as usize] = true;
                    stack.push(u);
                }
            }
        }
        ok
    }

    /// Pushes along the BFS tree from the start node to `node`.
    pub fn pushes_to(&self, node: u32) -> Vec<Push> {
        self.to_pushes(self.store.pushes_to(node))
    }

    /// Pushes along a shortest edge path from `from` to the first node satisfying `want`.
    pub fn pushes_between(&self, from: u32, want: impl Fn(u32) -> bool) -> Option<(u32, Vec<Push>)> {
        let mut prev: HashMap<u32, (u32, u32, Direction)> = HashMap::new();
        let mut q = VecDeque::from([from]);
        let mut seen = vec![false; self.len()];
        seen[from as usize] = true;
        while let Some(v) = q.pop_front() {
            if want(v) {
                let mut raw = Vec::new();
                let mut at = v;
                while at != from {
                    let (p, b, d) = prev[&at];
                    raw.push((b, d));
                    at = p;
                }
                raw.reverse();
                return Some((v, self.to_pushes(raw)));
            }
            for e in &self.edges[v as usize] {
                if !seen[e.to as usize] {
                    seen[e.to as usize] = true;
                    prev.insert(e.to, (v, e.block, e.dir));
                    q.push_back(e.to);
                }
            }
        }
        None
    }

    fn to_pushes(&self, raw: Vec<(u32, Direction)>) -> Vec<Push> {
        raw.into_iter()
            .map(|(b, dir)| Push {
                block: self.board.coord(b as usize),
                dir,
            })
            .collect()
    }

    pub fn start(&self) -> &State {
        &self.start
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_board;
    use crate::rules::{is_goal, replay};

    fn board(rows: &[&str]) -> Board {
        let text = format!(
            "pushpush v1\nmode path\ndims {} {} 1\nlayer 0\n{}\n",
            rows[0].len(),
            rows.len(),
            rows.join("\n")
        );
        parse_board(&text).unwrap()
    }

    #[test]
    fn region_of_open_room() {
        let b = board(&["#####", "#S..#", "#...#", "#..T#", "#####"]);
        let r = reachable_region(&b, &BTreeSet::new(), b.start());
        assert_eq!(r.len(), 9);
    }

    #[test]
    fn region_split_by_block() {
        let b = board(&["#######", "#S.B.T#", "#######"]);
        let r = reachable_region(&b, b.initial_blocks(), b.start());
        assert_eq!(r, [Coord::new(1, 1, 0), Coord::new(2, 1, 0)].into_iter().collect());
    }

    #[test]
    fn canonical_robot_is_least_cell() {
        let b = board(&["#####", "#S..#", "#...#", "#..T#", "#####"]);
        let mut seen = BTreeSet::new();
        for c in reachable_region(&b, &BTreeSet::new(), b.start()) {
            seen.insert(canonicalize(&b, &State { blocks: BTreeSet::new(), robot: c }));
        }
        assert_eq!(seen.len(), 1);
        assert_eq!(seen.into_iter().next().unwrap().robot, Coord::new(1, 1, 0));
    }

    #[test]
    fn successors_in_open_room() {
        let b = board(&["#######", "#S....#", "#..B..#", "#....T#", "#######"]);
        let cs = canonicalize(&b, &b.initial_state());
        let succ = successors(&b, &cs);
        assert_eq!(succ.len(), 4);
        let dirs: Vec<Direction> = succ.iter().map(|(_, p)| p.dir).collect();
        assert_eq!(dirs, vec![Direction::N, Direction::E, Direction::S, Direction::W]);
    }

    #[test]
    fn wedged_block_has_no_successors() {
        let b = board(&["#####", "#B..#", "#..S#", "#..T#", "#####"]);
        let cs = canonicalize(&b, &b.initial_state());
        assert!(successors(&b, &cs).is_empty());
    }

    #[test]
    fn solve_trivial_corridor() {
        let b = board(&["#####", "#S.T#", "#####"]);
        let r = solve(&b, Budget::default());
        assert_eq!(r.verdict, Verdict::Solved);
        assert_eq!(r.moves.unwrap().to_string(), "EE");
        assert_eq!(r.pushes, 0);
    }

    #[test]
    fn block_sliding_onto_goal_is_unsolvable() {
        let b = board(&["#########", "#S.B...T#", "#########"]);
        let r = solve(&b, Budget::default());
        assert_eq!(r.verdict, Verdict::Unsolvable);
        assert!(r.states_explored <= 8);
    }

    #[test]
    fn solve_with_pushes_replays() {
        let b = board(&["#######", "#S.B..#", "###.###", "###T###", "#######"]);
        let r = solve(&b, Budget::default());
        assert_eq!(r.verdict, Verdict::Solved);
        let end = replay(&b, r.moves.as_ref().unwrap()).unwrap();
        assert!(is_goal(&b, &end));
        assert_eq!(r.pushes, 1);
    }

    #[test]
    fn tiny_budget_is_exceeded() {
        let b = board(&["########", "#S.B.B.#", "#.B.B..#", "#......#", "########", "#T######"]);
        let r = solve(&b, Budget::states(1));
        assert_eq!(r.verdict, Verdict::BudgetExceeded);
        let r = solve(&b, Budget { max_states: 1000, max_seconds: 0.0 });
        assert_eq!(r.verdict, Verdict::BudgetExceeded);
    }

    #[test]
    fn reachability_modes() {
        let b = board(&["#####", "#S..#", "#...#", "#..T#", "#####"]);
        assert!(check_reachability(&b, &BTreeSet::new(), Coord::new(1, 1, 0), Coord::new(3, 3, 0), false));
        // sealed chamber: blocks are backed by walls on every side
        let b = board(&["#######", "#S#T..#", "#B#...#", "#######"]);
        let blocks = b.initial_blocks().clone();
        assert!(!check_reachability(&b, &blocks, b.start(), b.goal().unwrap(), true));
    }

    #[test]
    fn node_store_dedups_on_full_equality() {
        let mut s = NodeStore::new(2);
        assert_eq!(s.insert(&[1, 2], 0, None), (0, true));
        assert_eq!(s.insert(&[1, 2], 0, None), (0, false));
        assert_eq!(s.insert(&[1, 3], 0, None), (1, true));
        assert_eq!(s.insert(&[1, 2], 1, None), (2, true));
        assert_eq!(s.blocks(1), &[1, 3]);
    }
}
