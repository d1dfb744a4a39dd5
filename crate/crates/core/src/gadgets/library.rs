//! Gadget files: a footprint in the puzzle glyph format plus ports and a contract.
//!
//! ```text
//! pushpush v1
//! gadget one_way
//! mode path
//! dims 6 3 1
//! layer 0
//! ##.###
//! ..B..#
//! ######
//! ports:
//! port x 0 1 0 W
//! port y 2 0 0 N
//! route x y
//! contract:
//! reach x y
//! ```
//!
//! A trailing `wire` on a port line marks it as a wire port.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{BehaviorContract, ContractParseError, GadgetError, GadgetTemplate, Port, PortKind};
use crate::format::{glyph, parse_dims, parse_layers, render_layers, Lines, ParseError};
use crate::geom::{Coord, Direction};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetFile {
    pub template: GadgetTemplate,
    pub contract: BehaviorContract,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LibraryError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Grid(#[from] ParseError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Contract(#[from] ContractParseError),
}

fn syntax(line: usize, message: impl Into<String>) -> LibraryError {
    LibraryError::Syntax { line, message: message.into() }
}

fn expect<'a>(lines: &mut Lines<'a>, what: &str) -> Result<(usize, &'a str), LibraryError> {
    lines.next_nonblank().ok_or_else(|| syntax(lines.line_count() + 1, format!("expected {what}, found end of input")))
}

pub fn parse_gadget_file(text: &str) -> Result<GadgetFile, LibraryError> {
    let mut lines = Lines::new(text);
    let (ln, l) = expect(&mut lines, "`pushpush v1`")?;
    if l != "pushpush v1" {
        return Err(syntax(ln, format!("expected `pushpush v1`, found {l:?}")));
    }
    let (ln, l) = expect(&mut lines, "gadget name")?;
    let name = match l.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["gadget", name] => name.to_string(),
        _ => return Err(syntax(ln, format!("expected `gadget NAME`, found {l:?}"))),
    };
    let (ln, l) = expect(&mut lines, "mode")?;
    if l.split_whitespace().collect::<Vec<_>>() != ["mode", "path"] {
        return Err(syntax(ln, "gadgets must use `mode path`"));
    }
    let (_, dims) = parse_dims(&mut lines)?;
    let grid = parse_layers(&mut lines, dims, false)?;
    let (ln, l) = expect(&mut lines, "`ports:`")?;
    if l != "ports:" {
        return Err(syntax(ln, format!("expected `ports:`, found {l:?}")));
    }
    let mut ports = Vec::new();
    let mut route = None;
    loop {
        let (ln, l) = expect(&mut lines, "`contract:`")?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.as_slice() {
            ["contract:"] => break,
            ["route", entry, exit] => route = Some((entry.to_string(), exit.to_string())),
            ["port", name, x, y, z, dir, rest @ ..] => {
                let num = |t: &str| t.parse::<i32>().map_err(|_| syntax(ln, format!("bad coordinate {t:?}")));
                let cell = Coord::new(num(x)?, num(y)?, num(z)?);
                let dir = match dir.chars().collect::<Vec<_>>().as_slice() {
                    [c] => Direction::from_letter(*c),
                    _ => None,
                }
                .ok_or_else(|| syntax(ln, format!("bad direction {dir:?}")))?;
                let kind = match rest {
                    [] => PortKind::Path,
                    ["wire"] => PortKind::Wire,
                    _ => return Err(syntax(ln, format!("unexpected {rest:?}"))),
                };
                ports.push(Port {
                    name: name.to_string(),
                    cell,
                    dir,
                    kind,
                });
            }
            _ => return Err(syntax(ln, format!("expected `port` or `route`, found {l:?}"))),
        }
    }
    let (entry, exit) = route.ok_or_else(|| syntax(lines.line_count(), "missing `route ENTRY EXIT`"))?;
    let mut rest = Vec::new();
    while let Some(l) = lines.next_raw() {
        rest.push(l);
    }
    let contract = BehaviorContract::parse_lines(rest.into_iter())?;
    let (w, h, d) = dims;
    let mut free = BTreeSet::new();
    for z in 0..d {
        for y in 0..h {
            for x in 0..w {
                let c = Coord::new(x, y, z);
                if !grid.walls.contains(&c) {
                    free.insert(c);
                }
            }
        }
    }
    if !grid.storage.is_empty() {
        return Err(syntax(0, "gadgets have no storage cells"));
    }
    let template = GadgetTemplate::new(name, dims, free, grid.blocks, ports, &entry, &exit)?;
    Ok(GadgetFile { template, contract })
}

pub fn render_gadget_file(template: &GadgetTemplate, contract: &BehaviorContract) -> String {
    let mut out = String::new();
    out.push_str("pushpush v1\n");
    let _ = writeln!(out, "gadget {}", template.name.replace(' ', ""));
    out.push_str("mode path\n");
    let (w, h, d) = template.dims;
    let _ = writeln!(out, "dims {w} {h} {d}");
    render_layers(&mut out, template.dims, |c| glyph(!template.free.contains(&c), false, template.blocks.contains(&c), false, false));
    out.push_str("ports:\n");
    for p in &template.ports {
        let _ = write!(out, "port {} {} {} {} {}", p.name, p.cell.x, p.cell.y, p.cell.z, p.dir.letter());
        if p.kind == PortKind::Wire {
            out.push_str(" wire");
        }
        out.push('\n');
    }
    let _ = writeln!(out, "route {} {}", template.entry, template.exit);
    out.push_str("contract:\n");
    out.push_str(&contract.to_text());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::catalog;

    #[test]
    fn catalog_round_trips() {
        for e in catalog() {
            let text = render_gadget_file(&e.template, &e.contract);
            let back = parse_gadget_file(&text).unwrap();
            assert_eq!(back.template, e.template);
            assert_eq!(back.contract, e.contract);
        }
    }

    #[test]
    fn rejects_open_boundary() {
        let text = "pushpush v1\ngadget g\nmode path\ndims 3 3 1\nlayer 0\n###\n...\n###\nports:\nport x 0 1 0 W\nroute x x\ncontract:\n";
        assert!(matches!(parse_gadget_file(text), Err(LibraryError::Gadget(GadgetError::OpenBoundary(_)))));
        let ok = text.replace("route x x", "port y 2 1 0 E\nroute x y");
        assert!(parse_gadget_file(&ok).is_ok());
    }
}
