//! The single play session behind the HTTP service.

use pushpush::reduce::Manifest;
use pushpush::rules::replay_from;
use pushpush::{apply_move, Board, Direction, MoveError, MoveSequence, State};

#[derive(Debug, Clone)]
pub struct Session {
    board: Board,
    manifest: Manifest,
    history: MoveSequence,
    state: State,
    /// Bumped whenever a new puzzle is loaded.
    generation: u64,
}

impl Session {
    pub fn new(board: Board, manifest: Manifest) -> Self {
        let state = board.initial_state();
        Session {
            board,
            manifest,
            history: MoveSequence::new(),
            state,
            generation: 0,
        }
    }

    pub fn board(&self) -> &Board {
        &self.board
    }

    pub fn manifest(&self) -> &Manifest {
        &self.manifest
    }

    pub fn state(&self) -> &State {
        &self.state
    }

    pub fn history(&self) -> &MoveSequence {
        &self.history
    }

    pub fn generation(&self) -> u64 {
        self.generation
    }

    pub fn load(&mut self, board: Board, manifest: Manifest) {
        let generation = self.generation + 1;
        *self = Session::new(board, manifest);
        self.generation = generation;
    }

    pub fn apply(&mut self, dir: Direction) -> Result<&State, MoveError> {
        self.state = apply_move(&self.board, &self.state, dir)?;
        self.history.push(dir);
        Ok(&self.state)
    }

    /// Drops the last move and rebuilds the state by replaying the rest. Returns false with no history.
    pub fn undo(&mut self) -> bool {
        if self.history.0.pop().is_none() {
            return false;
        }
        self.state = replay_from(&self.board, self.board.initial_state(), &self.history).expect("history was legal when recorded");
        true
    }

    pub fn reset(&mut self) {
        self.history = MoveSequence::new();
        self.state = self.board.initial_state();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pushpush::format::parse_board;

    #[test]
    fn undo_replays_history() {
        let b = parse_board("pushpush v1\nmode path\ndims 7 3 1\nlayer 0\n#######\n#S.B.T#\n#######\n").unwrap();
        let mut s = Session::new(b, Manifest::default());
        s.apply(Direction::E).unwrap();
        let before = s.state().clone();
        s.apply(Direction::E).unwrap();
        assert!(s.undo());
        assert_eq!(s.state(), &before);
        assert_eq!(s.history().to_string(), "E");
        s.reset();
        assert!(!s.undo());
    }
}
