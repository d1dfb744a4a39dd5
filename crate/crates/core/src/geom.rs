//! Lattice coordinates, the six axis directions and move scripts.

use std::fmt;
use std::str::FromStr;

/// A lattice cell. Rows grow southward (`y`), layers grow upward (`z`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub x: i32,
    pub y: i32,
    pub z: i32,
}

impl Coord {
    pub const fn new(x: i32, y: i32, z: i32) -> Self {
        Coord { x, y, z }
    }

    pub fn step(self, dir: Direction) -> Coord {
        let (dx, dy, dz) = dir.delta();
        Coord::new(self.x + dx, self.y + dy, self.z + dz)
    }

    pub fn offset(self, dx: i32, dy: i32, dz: i32) -> Coord {
        Coord::new(self.x + dx, self.y + dy, self.z + dz)
    }

    /// Ordering key used for deterministic enumeration: layer, then row, then column.
    pub fn zyx(self) -> (i32, i32, i32) {
        (self.z, self.y, self.x)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// One of the six unit moves. The derived order (N < E < S < W < U < D) is
/// the canonical enumeration order everywhere in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    N,
    E,
    S,
    W,
    U,
    D,
}

impl Direction {
    pub const ALL: [Direction; 6] = [
        Direction::N,
        Direction::E,
        Direction::S,
        Direction::W,
        Direction::U,
        Direction::D,
    ];

    pub const PLANAR: [Direction; 4] = [Direction::N, Direction::E, Direction::S, Direction::W];

    pub fn delta(self) -> (i32, i32, i32) {
        match self {
            Direction::N => (0, -1, 0),
            Direction::E => (1, 0, 0),
            Direction::S => (0, 1, 0),
            Direction::W => (-1, 0, 0),
            Direction::U => (0, 0, 1),
            Direction::D => (0, 0, -1),
        }
    }

    pub fn axis(self) -> Axis {
        match self {
            Direction::E | Direction::W => Axis::X,
            Direction::N | Direction::S => Axis::Y,
            Direction::U | Direction::D => Axis::Z,
        }
    }

    pub fn sign(self) -> i32 {
        let (dx, dy, dz) = self.delta();
        dx + dy + dz
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::N => Direction::S,
            Direction::E => Direction::W,
            Direction::S => Direction::N,
            Direction::W => Direction::E,
            Direction::U => Direction::D,
            Direction::D => Direction::U,
        }
    }

    /// Quarter turn clockwise about the z axis, as seen on a rendered layer
    /// (N -> E -> S -> W). U and D are fixed.
    pub fn rotate_cw(self) -> Direction {
        match self {
            Direction::N => Direction::E,
            Direction::E => Direction::S,
            Direction::S => Direction::W,
            Direction::W => Direction::N,
            other => other,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        match self {
            Direction::N => 'N',
            Direction::E => 'E',
            Direction::S => 'S',
            Direction::W => 'W',
            Direction::U => 'U',
            Direction::D => 'D',
        }
    }

    pub fn from_letter(c: char) -> Option<Direction> {
        match c {
            'N' => Some(Direction::N),
            'E' => Some(Direction::E),
            'S' => Some(Direction::S),
            'W' => Some(Direction::W),
            'U' => Some(Direction::U),
            'D' => Some(Direction::D),
            _ => None,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid move letter {letter:?} at index {index}")]
pub struct MoveParseError {
    pub index: usize,
    pub letter: char,
}

/// A replayable move script, written as a string over `NESWUD`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MoveSequence(pub Vec<Direction>);

impl MoveSequence {
    pub fn new() -> Self {
        MoveSequence(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, dir: Direction) {
        self.0.push(dir);
    }

    pub fn extend_from(&mut self, other: &MoveSequence) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn iter(&self) -> impl Iterator<Item = Direction> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{}", d.letter())?;
        }
        Ok(())
    }
}

impl FromStr for MoveSequence {
    type Err = MoveParseError;

    /// Surrounding whitespace is ignored; anything else must be a move letter.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .chars()
            .enumerate()
            .map(|(index, letter)| Direction::from_letter(letter).ok_or(MoveParseError { index, letter }))
            .collect::<Result<Vec<_>, _>>()
            .map(MoveSequence)
    }
}

impl From<Vec<Direction>> for MoveSequence {
    fn from(v: Vec<Direction>) -> Self {
        MoveSequence(v)
    }
}
