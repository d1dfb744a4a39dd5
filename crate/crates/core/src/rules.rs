//! Move semantics: walk, push exactly one block, maximal slide.

use std::collections::BTreeSet;

use crate::board::{Board, Mode, State};
use crate::geom::{Coord, Direction, MoveSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("illegal: wall")]
    Wall,
    #[error("illegal: immovable block")]
    ImmovableBlock,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SlideError {
    #[error("no block at {0}")]
    NoBlock(Coord),
    #[error("immovable")]
    Immovable,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("move {index} ({dir}): {reason}")]
pub struct ReplayError {
    pub index: usize,
    pub dir: Direction,
    pub reason: MoveError,
    /// State reached just before the failing move.
    pub state: State,
}

fn is_free(board: &Board, blocks: &BTreeSet<Coord>, c: Coord) -> bool {
    !board.is_wall(c) && !blocks.contains(&c)
}

/// Where a block at `from` comes to rest when pushed in `dir`: the last cell
/// of the free run beyond it.
pub fn slide_destination(board: &Board, blocks: &BTreeSet<Coord>, from: Coord, dir: Direction) -> Result<Coord, SlideError> {
    if !blocks.contains(&from) {
        return Err(SlideError::NoBlock(from));
    }
    let mut at = from;
    while is_free(board, blocks, at.step(dir)) {
        at = at.step(dir);
    }
    if at == from {
        Err(SlideError::Immovable)
    } else {
        Ok(at)
    }
}

/// One robot move. Walking into a free cell moves the robot; walking into a
/// block pushes it to its slide destination and the robot takes its old cell.
pub fn apply_move(board: &Board, state: &State, dir: Direction) -> Result<State, MoveError> {
    let next = state.robot.step(dir);
    if board.is_wall(next) {
        return Err(MoveError::Wall);
    }
    if !state.blocks.contains(&next) {
        return Ok(State {
            blocks: state.blocks.clone(),
            robot: next,
        });
    }
    let dest = slide_destination(board, &state.blocks, next, dir).map_err(|_| MoveError::ImmovableBlock)?;
    let mut blocks = state.blocks.clone();
    blocks.remove(&next);
    blocks.insert(dest);
    Ok(State { blocks, robot: next })
}

pub fn is_goal(board: &Board, state: &State) -> bool {
    match board.mode() {
        Mode::Path => board.goal() == Some(state.robot),
        Mode::Storage => board.storage().iter().all(|c| state.blocks.contains(c)),
    }
}

/// Replays `moves` from the board's initial state.
pub fn replay(board: &Board, moves: &MoveSequence) -> Result<State, ReplayError> {
    replay_from(board, board.initial_state(), moves)
}

pub fn replay_from(board: &Board, mut state: State, moves: &MoveSequence) -> Result<State, ReplayError> {
    for (index, dir) in moves.iter().enumerate() {
        match apply_move(board, &state, dir) {
            Ok(next) => state = next,
            Err(reason) => {
                return Err(ReplayError {
                    index,
                    dir,
                    reason,
                    state,
                })
            }
        }
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_board;

    fn corridor() -> Board {
        parse_board("pushpush v1\nmode path\ndims 9 3 1\nlayer 0\n#########\n#S.B...T#\n#########\n").unwrap()
    }

    #[test]
    fn slides_past_goal_to_far_wall() {
        let b = corridor();
        let blocks = b.initial_blocks().clone();
        let dest = slide_destination(&b, &blocks, Coord::new(3, 1, 0), Direction::E).unwrap();
        assert_eq!(dest, Coord::new(7, 1, 0));
    }

    #[test]
    fn slide_stops_before_block() {
        let b = corridor();
        let blocks: BTreeSet<Coord> = [Coord::new(3, 1, 0), Coord::new(5, 1, 0)].into_iter().collect();
        assert_eq!(slide_destination(&b, &blocks, Coord::new(3, 1, 0), Direction::E), Ok(Coord::new(4, 1, 0)));
    }

    #[test]
    fn slide_into_wall_is_immovable() {
        let b = corridor();
        let blocks = b.initial_blocks().clone();
        assert_eq!(slide_destination(&b, &blocks, Coord::new(3, 1, 0), Direction::N), Err(SlideError::Immovable));
        assert_eq!(
            slide_destination(&b, &blocks, Coord::new(2, 1, 0), Direction::E),
            Err(SlideError::NoBlock(Coord::new(2, 1, 0)))
        );
    }

    #[test]
    fn push_advances_robot_one_cell() {
        let b = corridor();
        let s = apply_move(&b, &b.initial_state(), Direction::E).unwrap();
        assert_eq!(s.robot, Coord::new(2, 1, 0));
        assert_eq!(s.blocks, *b.initial_blocks());
        let s = apply_move(&b, &s, Direction::E).unwrap();
        assert_eq!(s.robot, Coord::new(3, 1, 0));
        assert_eq!(s.blocks.iter().copied().collect::<Vec<_>>(), vec![Coord::new(7, 1, 0)]);
        // the block now sits on t and nothing can move it off
        assert!(!is_goal(&b, &s));
    }

    #[test]
    fn illegal_moves() {
        let b = corridor();
        assert_eq!(apply_move(&b, &b.initial_state(), Direction::N), Err(MoveError::Wall));
        assert_eq!(apply_move(&b, &b.initial_state(), Direction::U), Err(MoveError::Wall));
        let b = parse_board("pushpush v1\nmode path\ndims 5 4 1\nlayer 0\n#####\n#SB.#\n##.T#\n#####\n").unwrap();
        let s = apply_move(&b, &b.initial_state(), Direction::E).unwrap();
        assert_eq!(s.blocks.iter().next(), Some(&Coord::new(3, 1, 0)));
        assert_eq!(apply_move(&b, &s, Direction::E), Err(MoveError::ImmovableBlock));
        assert_eq!(MoveError::Wall.to_string(), "illegal: wall");
        assert_eq!(MoveError::ImmovableBlock.to_string(), "illegal: immovable block");
    }

    #[test]
    fn replay_examples() {
        let b = parse_board("pushpush v1\nmode path\ndims 5 3 1\nlayer 0\n#####\n#S.T#\n#####\n").unwrap();
        let end = replay(&b, &"EE".parse().unwrap()).unwrap();
        assert!(is_goal(&b, &end));
        let end = replay(&b, &"EW".parse().unwrap()).unwrap();
        assert_eq!(end.robot, b.start());
        assert_eq!(replay(&b, &MoveSequence::new()).unwrap(), b.initial_state());

        let b = parse_board("pushpush v1\nmode path\ndims 6 3 1\nlayer 0\n######\n#SB#T#\n######\n").unwrap();
        let err = replay(&b, &"E".parse().unwrap()).unwrap_err();
        assert_eq!(err.index, 0);
        assert_eq!(err.reason, MoveError::ImmovableBlock);
    }

    #[test]
    fn storage_goal_requires_all_cells() {
        let b = parse_board("pushpush v1\nmode storage\ndims 7 3 1\nlayer 0\n#######\n#SB.OO#\n#######\n").unwrap();
        let s = b.initial_state();
        assert!(!is_goal(&b, &s));
        let s = apply_move(&b, &s, Direction::E).unwrap();
        // one of two storage cells covered
        assert_eq!(s.blocks.iter().next(), Some(&Coord::new(5, 1, 0)));
        assert!(!is_goal(&b, &s));
        let b = parse_board("pushpush v1\nmode storage\ndims 6 3 1\nlayer 0\n######\n#S..*#\n######\n").unwrap();
        assert!(is_goal(&b, &b.initial_state()));
    }
}
