//! PushPush: a pushing-blocks puzzle where the robot pushes one unit block at
//! a time and every pushed block slides as far as its free range allows.
//!
//! The crate provides the move semantics ([`board`], [`rules`], [`format`]),
//! a canonicalizing breadth-first solver ([`search`]), a catalog of verified
//! gadgets ([`gadgets`]) and a compiler from CNF formulas to 3D puzzles
//! ([`reduce`]).

pub mod board;
mod canvas;
pub mod format;
pub mod gadgets;
pub mod geom;
pub mod reduce;
pub mod rules;
pub mod search;

pub use board::{Board, Mode, State};
pub use geom::{Coord, Direction, MoveSequence};
pub use rules::{apply_move, is_goal, replay, slide_destination, MoveError, ReplayError};
