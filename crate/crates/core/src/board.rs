//! Static puzzle geometry and dynamic configurations.

use std::collections::BTreeSet;

use crate::geom::{Coord, Direction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// The robot must reach the goal cell `t`.
    Path,
    /// Every storage cell must hold a block.
    Storage,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoardError {
    #[error("board dimensions must be positive, got {0}x{1}x{2}")]
    EmptyDims(i32, i32, i32),
    #[error("coordinate {0} is out of range")]
    OutOfRange(Coord),
    #[error("start {0} is a wall")]
    StartOnWall(Coord),
    #[error("start {0} holds a block")]
    StartOnBlock(Coord),
    #[error("start {0} lies on a storage cell")]
    StartOnStorage(Coord),
    #[error("path mode requires a goal")]
    MissingGoal,
    #[error("storage mode does not allow a goal")]
    GoalInStorageMode,
    #[error("goal {0} is a wall")]
    GoalOnWall(Coord),
    #[error("goal {0} holds a block")]
    GoalOnBlock(Coord),
    #[error("goal {0} lies on a storage cell")]
    GoalOnStorage(Coord),
    #[error("storage mode requires at least one storage cell")]
    NoStorage,
    #[error("storage cell {0} is a wall")]
    StorageOnWall(Coord),
    #[error("block {0} is inside a wall")]
    BlockOnWall(Coord),
}

/// Plain description of a board, validated by [`Board::from_parts`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoardParts {
    pub dims: (i32, i32, i32),
    pub walls: BTreeSet<Coord>,
    pub storage: BTreeSet<Coord>,
    pub start: Coord,
    pub goal: Option<Coord>,
    pub blocks: BTreeSet<Coord>,
    pub mode: Mode,
}

impl BoardParts {
    /// A board of the given size whose every cell is a wall.
    pub fn solid(w: i32, h: i32, d: i32) -> Self {
        let mut walls = BTreeSet::new();
        for z in 0..d {
            for y in 0..h {
                for x in 0..w {
                    walls.insert(Coord::new(x, y, z));
                }
            }
        }
        BoardParts {
            dims: (w, h, d),
            walls,
            storage: BTreeSet::new(),
            start: Coord::new(0, 0, 0),
            goal: None,
            blocks: BTreeSet::new(),
            mode: Mode::Path,
        }
    }
}

pub(crate) const NO_CELL: u32 = u32::MAX;

/// Immutable puzzle geometry. Cells outside the box behave as walls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Board {
    dims: (i32, i32, i32),
    wall: Vec<bool>,
    storage: BTreeSet<Coord>,
    start: Coord,
    goal: Option<Coord>,
    blocks: BTreeSet<Coord>,
    mode: Mode,
    // neighbor index per direction, NO_CELL when the neighbor is a wall or off-board
    adj: Vec<[u32; 6]>,
}

/// Dynamic configuration: where the blocks and the robot are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct State {
    pub blocks: BTreeSet<Coord>,
    pub robot: Coord,
}

impl Board {
    pub fn from_parts(parts: BoardParts) -> Result<Board, BoardError> {
        let (w, h, d) = parts.dims;
        if w <= 0 || h <= 0 || d <= 0 {
            return Err(BoardError::EmptyDims(w, h, d));
        }
        let inside = |c: &Coord| c.x >= 0 && c.y >= 0 && c.z >= 0 && c.x < w && c.y < h && c.z < d;
        let all = parts
            .walls
            .iter()
            .chain(&parts.storage)
            .chain(&parts.blocks)
            .chain(std::iter::once(&parts.start))
            .chain(parts.goal.iter());
        for c in all {
            if !inside(c) {
                return Err(BoardError::OutOfRange(*c));
            }
        }
        let s = parts.start;
        if parts.walls.contains(&s) {
            return Err(BoardError::StartOnWall(s));
        }
        if parts.blocks.contains(&s) {
            return Err(BoardError::StartOnBlock(s));
        }
        if parts.storage.contains(&s) {
            return Err(BoardError::StartOnStorage(s));
        }
        match (parts.mode, parts.goal) {
            (Mode::Path, None) => return Err(BoardError::MissingGoal),
            (Mode::Path, Some(t)) => {
                if parts.walls.contains(&t) {
                    return Err(BoardError::GoalOnWall(t));
                }
                if parts.blocks.contains(&t) {
                    return Err(BoardError::GoalOnBlock(t));
                }
                if parts.storage.contains(&t) {
                    return Err(BoardError::GoalOnStorage(t));
                }
            }
            (Mode::Storage, Some(_)) => return Err(BoardError::GoalInStorageMode),
            (Mode::Storage, None) => {
                if parts.storage.is_empty() {
                    return Err(BoardError::NoStorage);
                }
            }
        }
        if let Some(c) = parts.storage.iter().find(|c| parts.walls.contains(c)) {
            return Err(BoardError::StorageOnWall(*c));
        }
        if let Some(c) = parts.blocks.iter().find(|c| parts.walls.contains(c)) {
            return Err(BoardError::BlockOnWall(*c));
        }

        let n = (w * h * d) as usize;
        let mut wall = vec![false; n];
        for c in &parts.walls {
            wall[((c.z * h + c.y) * w + c.x) as usize] = true;
        }
        let mut board = Board {
            dims: parts.dims,
            wall,
            storage: parts.storage,
            start: parts.start,
            goal: parts.goal,
            blocks: parts.blocks,
            mode: parts.mode,
            adj: Vec::new(),
        };
        board.adj = (0..n)
            .map(|i| {
                let c = board.coord(i);
                let mut row = [NO_CELL; 6];
                for dir in Direction::ALL {
                    if let Some(j) = board.index(c.step(dir)) {
                        if !board.wall[j] {
                            row[dir.index()] = j as u32;
                        }
                    }
                }
                row
            })
            .collect();
        Ok(board)
    }

    pub fn to_parts(&self) -> BoardParts {
        BoardParts {
            dims: self.dims,
            walls: self.walls().collect(),
            storage: self.storage.clone(),
            start: self.start,
            goal: self.goal,
            blocks: self.blocks.clone(),
            mode: self.mode,
        }
    }

    pub fn dims(&self) -> (i32, i32, i32) {
        self.dims
    }

    pub fn width(&self) -> i32 {
        self.dims.0
    }

    pub fn height(&self) -> i32 {
        self.dims.1
    }

    pub fn depth(&self) -> i32 {
        self.dims.2
    }

    pub fn cell_count(&self) -> usize {
        self.wall.len()
    }

    pub fn in_bounds(&self, c: Coord) -> bool {
        let (w, h, d) = self.dims;
        c.x >= 0 && c.y >= 0 && c.z >= 0 && c.x < w && c.y < h && c.z < d
    }

    /// Linear index; increasing index order equals (z, y, x) order.
    pub fn index(&self, c: Coord) -> Option<usize> {
        if self.in_bounds(c) {
            let (w, h, _) = self.dims;
            Some(((c.z * h + c.y) * w + c.x) as usize)
        } else {
            None
        }
    }

    pub fn coord(&self, idx: usize) -> Coord {
        let (w, h, _) = self.dims;
        let i = idx as i32;
        Coord::new(i % w, (i / w) % h, i / (w * h))
    }

    /// Out-of-range cells count as walls.
    pub fn is_wall(&self, c: Coord) -> bool {
        self.index(c).is_none_or(|i| self.wall[i])
    }

    pub(crate) fn is_wall_idx(&self, idx: usize) -> bool {
        self.wall[idx]
    }

    /// Neighbor of `idx` in `dir` unless it is a wall or off the board.
    pub(crate) fn neighbor(&self, idx: usize, dir: Direction) -> Option<usize> {
        let j = self.adj[idx][dir.index()];
        (j != NO_CELL).then_some(j as usize)
    }

    pub fn walls(&self) -> impl Iterator<Item = Coord> + '_ {
        self.wall
            .iter()
            .enumerate()
            .filter(|(_, &w)| w)
            .map(|(i, _)| self.coord(i))
    }

    pub fn free_cells(&self) -> impl Iterator<Item = Coord> + '_ {
        self.wall
            .iter()
            .enumerate()
            .filter(|(_, &w)| !w)
            .map(|(i, _)| self.coord(i))
    }

    pub fn storage(&self) -> &BTreeSet<Coord> {
        &self.storage
    }

    pub fn start(&self) -> Coord {
        self.start
    }

    pub fn goal(&self) -> Option<Coord> {
        self.goal
    }

    pub fn initial_blocks(&self) -> &BTreeSet<Coord> {
        &self.blocks
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Directions that can ever be legal here; U/D are excluded on flat boards.
    pub fn directions(&self) -> &'static [Direction] {
        if self.depth() == 1 {
            &Direction::PLANAR
        } else {
            &Direction::ALL
        }
    }

    pub fn initial_state(&self) -> State {
        State {
            blocks: self.blocks.clone(),
            robot: self.start,
        }
    }

    /// Same geometry with a different start, goal or block set.
    pub fn with_endpoints(&self, start: Coord, goal: Option<Coord>, blocks: BTreeSet<Coord>) -> Result<Board, BoardError> {
        let mut parts = self.to_parts();
        parts.start = start;
        parts.goal = goal;
        parts.blocks = blocks;
        Board::from_parts(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corridor() -> BoardParts {
        let mut p = BoardParts::solid(5, 3, 1);
        for x in 1..4 {
            p.walls.remove(&Coord::new(x, 1, 0));
        }
        p.start = Coord::new(1, 1, 0);
        p.goal = Some(Coord::new(3, 1, 0));
        p
    }

    #[test]
    fn index_order_is_zyx() {
        let b = Board::from_parts(corridor()).unwrap();
        let mut cells: Vec<Coord> = (0..b.cell_count()).map(|i| b.coord(i)).collect();
        let by_index = cells.clone();
        cells.sort_by_key(|c| c.zyx());
        assert_eq!(cells, by_index);
        for (i, c) in by_index.iter().enumerate() {
            assert_eq!(b.index(*c), Some(i));
        }
    }

    #[test]
    fn out_of_range_is_wall() {
        let b = Board::from_parts(corridor()).unwrap();
        assert!(b.is_wall(Coord::new(-1, 1, 0)));
        assert!(b.is_wall(Coord::new(1, 1, 1)));
        assert!(!b.is_wall(Coord::new(2, 1, 0)));
        assert_eq!(b.directions().len(), 4);
    }

    #[test]
    fn invariant_violations() {
        let mut p = corridor();
        p.blocks.insert(p.start);
        assert_eq!(Board::from_parts(p).unwrap_err(), BoardError::StartOnBlock(Coord::new(1, 1, 0)));

        let mut p = corridor();
        p.goal = None;
        assert_eq!(Board::from_parts(p).unwrap_err(), BoardError::MissingGoal);

        let mut p = corridor();
        p.mode = Mode::Storage;
        p.goal = None;
        assert_eq!(Board::from_parts(p).unwrap_err(), BoardError::NoStorage);

        let mut p = corridor();
        p.blocks.insert(Coord::new(0, 0, 0));
        assert_eq!(Board::from_parts(p).unwrap_err(), BoardError::BlockOnWall(Coord::new(0, 0, 0)));

        let mut p = corridor();
        p.start = Coord::new(9, 9, 0);
        assert!(matches!(Board::from_parts(p), Err(BoardError::OutOfRange(_))));
    }

    #[test]
    fn single_cell_board() {
        let p = BoardParts {
            dims: (1, 1, 1),
            walls: BTreeSet::new(),
            storage: [Coord::new(0, 0, 0)].into_iter().collect(),
            start: Coord::new(0, 0, 0),
            goal: None,
            blocks: BTreeSet::new(),
            mode: Mode::Storage,
        };
        // start on storage has no glyph
        assert!(Board::from_parts(p).is_err());
        let p = BoardParts {
            dims: (1, 1, 1),
            walls: BTreeSet::new(),
            storage: BTreeSet::new(),
            start: Coord::new(0, 0, 0),
            goal: Some(Coord::new(0, 0, 0)),
            blocks: BTreeSet::new(),
            mode: Mode::Path,
        };
        let b = Board::from_parts(p).unwrap();
        assert!(Direction::ALL.iter().all(|&d| b.neighbor(0, d).is_none()));
    }
}
