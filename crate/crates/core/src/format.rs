//! The `pushpush v1` puzzle file format.
//!
//! ```text
//! pushpush v1
//! mode path
//! dims W H D
//! layer 0
//! <H rows of W glyphs>
//! layer 1
//! ...
//! ```
//!
//! Glyphs: `#` wall, `.` free, `B` block, `S` start, `T` goal, `O` storage,
//! `*` block on storage.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::board::{Board, BoardError, BoardParts, Mode};
use crate::geom::Coord;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("malformed header: {0}")]
    Header(String),
    #[error("unknown glyph {0:?}")]
    UnknownGlyph(char),
    #[error("duplicate start")]
    DuplicateStart,
    #[error("duplicate goal")]
    DuplicateGoal,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0}")]
    Invariant(#[from] BoardError),
}

/// Parse failure with a 1-based line and column (column 0 when the whole line is at fault).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn at(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

/// Cell contents of a glyph grid before board validation.
#[derive(Debug, Clone, Default)]
pub(crate) struct Grid {
    pub walls: BTreeSet<Coord>,
    pub storage: BTreeSet<Coord>,
    pub blocks: BTreeSet<Coord>,
    pub start: Option<Coord>,
    pub goal: Option<Coord>,
}

/// Line cursor over the input; line numbers are 1-based.
pub(crate) struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    pub fn new(text: &'a str) -> Self {
        Lines {
            lines: text.lines().map(|l| l.trim_end()).collect(),
            pos: 0,
        }
    }

    /// Next line that is not blank.
    pub fn next_nonblank(&mut self) -> Option<(usize, &'a str)> {
        while self.pos < self.lines.len() {
            let l = self.lines[self.pos];
            self.pos += 1;
            if !l.is_empty() {
                return Some((self.pos, l));
            }
        }
        None
    }

    pub fn next_raw(&mut self) -> Option<(usize, &'a str)> {
        let l = self.lines.get(self.pos).copied()?;
        self.pos += 1;
        Some((self.pos, l))
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }
}

fn expect_line<'a>(lines: &mut Lines<'a>, what: &str) -> Result<(usize, &'a str), ParseError> {
    lines
        .next_nonblank()
        .ok_or_else(|| ParseError::at(lines.line_count() + 1, 0, ParseErrorKind::Header(format!("expected {what}, found end of input"))))
}

pub(crate) fn parse_dims(lines: &mut Lines) -> Result<(usize, (i32, i32, i32)), ParseError> {
    let (ln, l) = expect_line(lines, "dims")?;
    let toks: Vec<&str> = l.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "dims" {
        return Err(ParseError::at(ln, 1, ParseErrorKind::Header(format!("expected `dims W H D`, found {l:?}"))));
    }
    let mut v = [0i32; 3];
    for (i, t) in toks[1..].iter().enumerate() {
        v[i] = t
            .parse::<i32>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| ParseError::at(ln, 0, ParseErrorKind::Header(format!("bad dimension {t:?}"))))?;
    }
    Ok((ln, (v[0], v[1], v[2])))
}

/// Parses the `layer z` stanzas for a grid of the given size.
pub(crate) fn parse_layers(lines: &mut Lines, dims: (i32, i32, i32), allow_endpoints: bool) -> Result<Grid, ParseError> {
    let (w, h, d) = dims;
    let mut grid = Grid::default();
    for z in 0..d {
        let (ln, l) = expect_line(lines, "layer header")?;
        if l != format!("layer {z}") {
            return Err(ParseError::at(ln, 1, ParseErrorKind::Dimension(format!("expected `layer {z}`, found {l:?}"))));
        }
        for y in 0..h {
            let (ln, row) = lines
                .next_raw()
                .ok_or_else(|| ParseError::at(lines.line_count() + 1, 0, ParseErrorKind::Dimension(format!("layer {z} has fewer than {h} rows"))))?;
            let glyphs: Vec<char> = row.chars().collect();
            if glyphs.len() != w as usize {
                return Err(ParseError::at(
                    ln,
                    0,
                    ParseErrorKind::Dimension(format!("row has {} glyphs, expected {w}", glyphs.len())),
                ));
            }
            for (x, g) in glyphs.into_iter().enumerate() {
                let c = Coord::new(x as i32, y, z);
                let col = x + 1;
                match g {
                    '#' => {
                        grid.walls.insert(c);
                    }
                    '.' => {}
                    'B' => {
                        grid.blocks.insert(c);
                    }
                    'O' => {
                        grid.storage.insert(c);
                    }
                    '*' => {
                        grid.storage.insert(c);
                        grid.blocks.insert(c);
                    }
                    'S' if allow_endpoints => {
                        if grid.start.replace(c).is_some() {
                            return Err(ParseError::at(ln, col, ParseErrorKind::DuplicateStart));
                        }
                    }
                    'T' if allow_endpoints => {
                        if grid.goal.replace(c).is_some() {
                            return Err(ParseError::at(ln, col, ParseErrorKind::DuplicateGoal));
                        }
                    }
                    other => return Err(ParseError::at(ln, col, ParseErrorKind::UnknownGlyph(other))),
                }
            }
        }
    }
    Ok(grid)
}

pub fn parse_board(text: &str) -> Result<Board, ParseError> {
    let mut lines = Lines::new(text);
    let (ln, l) = expect_line(&mut lines, "`pushpush v1`")?;
    if l != "pushpush v1" {
        return Err(ParseError::at(ln, 1, ParseErrorKind::Header(format!("expected `pushpush v1`, found {l:?}"))));
    }
    let (ln, l) = expect_line(&mut lines, "mode")?;
    let mode = match l.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["mode", "path"] => Mode::Path,
        ["mode", "storage"] => Mode::Storage,
        _ => return Err(ParseError::at(ln, 1, ParseErrorKind::Header(format!("expected `mode path` or `mode storage`, found {l:?}")))),
    };
    let (dims_line, dims) = parse_dims(&mut lines)?;
    let grid = parse_layers(&mut lines, dims, true)?;
    if let Some((ln, l)) = lines.next_nonblank() {
        return Err(ParseError::at(ln, 1, ParseErrorKind::Dimension(format!("unexpected trailing line {l:?}"))));
    }
    let start = grid
        .start
        .ok_or_else(|| ParseError::at(dims_line, 0, ParseErrorKind::Header("missing start `S`".into())))?;
    if mode == Mode::Storage {
        if let Some(t) = grid.goal {
            return Err(ParseError::at(
                row_line(dims_line, dims, t),
                t.x as usize + 1,
                ParseErrorKind::Invariant(BoardError::GoalInStorageMode),
            ));
        }
    }
    let parts = BoardParts {
        dims,
        walls: grid.walls,
        storage: grid.storage,
        start,
        goal: grid.goal,
        blocks: grid.blocks,
        mode,
    };
    Board::from_parts(parts).map_err(|e| {
        let (line, col) = match e {
            BoardError::StorageOnWall(c) | BoardError::BlockOnWall(c) | BoardError::GoalOnWall(c) => (row_line(dims_line, dims, c), c.x as usize + 1),
            _ => (dims_line, 0),
        };
        ParseError::at(line, col, ParseErrorKind::Invariant(e))
    })
}

// Line number of the row holding `c`, assuming no blank lines after `dims`.
fn row_line(dims_line: usize, dims: (i32, i32, i32), c: Coord) -> usize {
    dims_line + 1 + (c.z * (dims.1 + 1)) as usize + 1 + c.y as usize
}

pub(crate) fn glyph(board_walls: bool, storage: bool, block: bool, start: bool, goal: bool) -> char {
    match (board_walls, storage, block, start, goal) {
        (true, _, _, _, _) => '#',
        (_, _, _, true, _) => 'S',
        (_, _, _, _, true) => 'T',
        (_, true, true, _, _) => '*',
        (_, true, false, _, _) => 'O',
        (_, false, true, _, _) => 'B',
        _ => '.',
    }
}

pub(crate) fn render_layers(out: &mut String, dims: (i32, i32, i32), cell: impl Fn(Coord) -> char) {
    let (w, h, d) = dims;
    for z in 0..d {
        let _ = writeln!(out, "layer {z}");
        for y in 0..h {
            let row: String = (0..w).map(|x| cell(Coord::new(x, y, z))).collect();
            out.push_str(&row);
            out.push('\n');
        }
    }
}

pub fn render_board(board: &Board) -> String {
    let mut out = String::new();
    out.push_str("pushpush v1\n");
    out.push_str(match board.mode() {
        Mode::Path => "mode path\n",
        Mode::Storage => "mode storage\n",
    });
    let (w, h, d) = board.dims();
    let _ = writeln!(out, "dims {w} {h} {d}");
    render_layers(&mut out, board.dims(), |c| {
        glyph(
            board.is_wall(c),
            board.storage().contains(&c),
            board.initial_blocks().contains(&c),
            board.start() == c,
            board.goal() == Some(c),
        )
    });
    out
}

/// Renders a board with the blocks and robot of `state` in place of the initial configuration.
pub fn render_state(board: &Board, state: &crate::board::State) -> String {
    let mut out = String::new();
    render_layers(&mut out, board.dims(), |c| {
        if state.robot == c {
            return 'R';
        }
        glyph(
            board.is_wall(c),
            board.storage().contains(&c),
            state.blocks.contains(&c),
            false,
            board.goal() == Some(c) && !state.blocks.contains(&c),
        )
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIMPLE: &str = "pushpush v1\nmode path\ndims 5 3 1\nlayer 0\n#####\n#S.T#\n#####\n";

    #[test]
    fn parses_simple_corridor() {
        let b = parse_board(SIMPLE).unwrap();
        assert_eq!(b.start(), Coord::new(1, 1, 0));
        assert_eq!(b.goal(), Some(Coord::new(3, 1, 0)));
        assert!(b.initial_blocks().is_empty());
        assert_eq!(render_board(&b), SIMPLE);
    }

    #[test]
    fn duplicate_start_reports_position() {
        let err = parse_board("pushpush v1\nmode path\ndims 5 3 1\nlayer 0\n#####\n#SST#\n#####\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateStart);
        assert_eq!((err.line, err.column), (6, 3));
        assert_eq!(err.kind.to_string(), "duplicate start");
    }

    #[test]
    fn malformed_inputs() {
        let e = parse_board("pushpush v2\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Header(_)));
        let e = parse_board("pushpush v1\nmode path\ndims 5 3 1\nlayer 0\n#####\n#SXT#\n#####\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownGlyph('X'));
        assert_eq!((e.line, e.column), (6, 3));
        let e = parse_board("pushpush v1\nmode path\ndims 5 3 1\nlayer 0\n#####\n#S.T\n#####\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Dimension(_)));
        assert_eq!(e.line, 6);
        let e = parse_board("pushpush v1\nmode path\ndims 5 3 1\nlayer 0\n#####\n#S..#\n#####\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Invariant(BoardError::MissingGoal));
        let e = parse_board("pushpush v1\nmode storage\ndims 5 3 1\nlayer 0\n#####\n#S.T#\n#####\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Invariant(BoardError::GoalInStorageMode));
        assert_eq!((e.line, e.column), (6, 4));
    }

    #[test]
    fn two_layer_round_trip() {
        let text = "pushpush v1\nmode path\ndims 4 3 2\nlayer 0\n####\n#SB#\n####\nlayer 1\n####\n#.T#\n####\n";
        let b = parse_board(text).unwrap();
        assert_eq!(b.depth(), 2);
        assert!(b.is_wall(Coord::new(0, 0, 1)));
        assert!(!b.is_wall(Coord::new(1, 1, 1)));
        assert_eq!(b.goal(), Some(Coord::new(2, 1, 1)));
        assert_eq!(render_board(&b), text);
        assert_eq!(parse_board(&render_board(&b)).unwrap(), b);
    }

    #[test]
    fn storage_glyphs() {
        let text = "pushpush v1\nmode storage\ndims 6 3 1\nlayer 0\n######\n#SBO*#\n######\n";
        let b = parse_board(text).unwrap();
        assert_eq!(b.storage().len(), 2);
        assert_eq!(b.initial_blocks().len(), 2);
        assert_eq!(render_board(&b), text);
    }
}
