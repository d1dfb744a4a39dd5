//! Gadget templates with named ports, their behavioral contracts, and an
//! exhaustive verifier.

pub(crate) mod catalog;
mod contract;
mod library;
mod verify;

use std::collections::{BTreeMap, BTreeSet};

pub use catalog::{catalog, clause, crossover3d, fork, lookup, mutation, mutations, one_way, variable, CatalogEntry, FAMILIES};
pub use contract::{Assertion, BehaviorContract, ContractParseError};
pub use library::{parse_gadget_file, render_gadget_file, GadgetFile, LibraryError};
pub use verify::{verify_gadget, AssertionReport, Outcome, VerificationReport};

use crate::board::{Board, BoardParts, Mode};
use crate::canvas::Canvas;
use crate::geom::{Coord, Direction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PortKind {
    /// Part of the robot's main route through the gadget.
    Path,
    /// Wire end; counted by `tapset` assertions.
    Wire,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Port {
    pub name: String,
    pub cell: Coord,
    /// Direction pointing out of the footprint.
    pub dir: Direction,
    pub kind: PortKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GadgetError {
    #[error("port {0} is not a free cell")]
    PortNotFree(String),
    #[error("port {0} does not open onto the footprint boundary")]
    PortNotOnBoundary(String),
    #[error("free cell {0} on the footprint boundary is not a port")]
    OpenBoundary(Coord),
    #[error("block {0} is not on a free cell")]
    BlockNotFree(Coord),
    #[error("cell {0} lies outside the footprint")]
    OutsideFootprint(Coord),
    #[error("duplicate port name {0}")]
    DuplicatePort(String),
    #[error("unknown port {0}")]
    UnknownPort(String),
    #[error("placement overlaps existing content at {0}")]
    Overlap(Coord),
    #[error("placement out of bounds at {0}")]
    OutOfBounds(Coord),
}

/// A board fragment in local coordinates. Everything not listed in `free` is wall.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetTemplate {
    pub name: String,
    pub dims: (i32, i32, i32),
    pub free: BTreeSet<Coord>,
    pub blocks: BTreeSet<Coord>,
    pub ports: Vec<Port>,
    /// Ports the harness uses as robot start and goal.
    pub entry: String,
    pub exit: String,
}

fn inside(dims: (i32, i32, i32), c: Coord) -> bool {
    c.x >= 0 && c.y >= 0 && c.z >= 0 && c.x < dims.0 && c.y < dims.1 && c.z < dims.2
}

impl GadgetTemplate {
    pub fn new(
        name: impl Into<String>,
        dims: (i32, i32, i32),
        free: BTreeSet<Coord>,
        blocks: BTreeSet<Coord>,
        ports: Vec<Port>,
        entry: &str,
        exit: &str,
    ) -> Result<Self, GadgetError> {
        let t = GadgetTemplate {
            name: name.into(),
            dims,
            free,
            blocks,
            ports,
            entry: entry.to_string(),
            exit: exit.to_string(),
        };
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn from_canvas(name: impl Into<String>, dims: (i32, i32), mut canvas: Canvas, ports: Vec<Port>, entry: &str, exit: &str) -> Self {
        canvas.finish_routes();
        let depth = canvas.depth();
        GadgetTemplate::new(name, (dims.0, dims.1, depth), canvas.free, canvas.blocks, ports, entry, exit).expect("catalog geometry is valid")
    }

    pub fn validate(&self) -> Result<(), GadgetError> {
        let (w, h, _) = self.dims;
        for c in self.free.iter().chain(&self.blocks) {
            if !inside(self.dims, *c) {
                return Err(GadgetError::OutsideFootprint(*c));
            }
        }
        if let Some(b) = self.blocks.iter().find(|b| !self.free.contains(b)) {
            return Err(GadgetError::BlockNotFree(*b));
        }
        let mut names = BTreeSet::new();
        for p in &self.ports {
            if !names.insert(p.name.as_str()) {
                return Err(GadgetError::DuplicatePort(p.name.clone()));
            }
            if !self.free.contains(&p.cell) || self.blocks.contains(&p.cell) {
                return Err(GadgetError::PortNotFree(p.name.clone()));
            }
            if matches!(p.dir, Direction::U | Direction::D) || inside(self.dims, p.cell.step(p.dir)) {
                return Err(GadgetError::PortNotOnBoundary(p.name.clone()));
            }
        }
        for name in [&self.entry, &self.exit] {
            if !names.contains(name.as_str()) {
                return Err(GadgetError::UnknownPort(name.clone()));
            }
        }
        for c in &self.free {
            let on_edge = c.x == 0 || c.y == 0 || c.x == w - 1 || c.y == h - 1;
            if on_edge && !self.ports.iter().any(|p| p.cell == *c) {
                return Err(GadgetError::OpenBoundary(*c));
            }
        }
        Ok(())
    }

    pub fn port(&self, name: &str) -> Option<&Port> {
        self.ports.iter().find(|p| p.name == name)
    }

    pub fn wire_ports(&self) -> impl Iterator<Item = &Port> {
        self.ports.iter().filter(|p| p.kind == PortKind::Wire)
    }

    /// The same gadget turned `quarter_turns` times clockwise about the z axis.
    pub fn rotated(&self, quarter_turns: u8) -> GadgetTemplate {
        let mut t = self.clone();
        for _ in 0..quarter_turns % 4 {
            let (_, h, d) = t.dims;
            let map = |c: Coord| Coord::new(h - 1 - c.y, c.x, c.z);
            t = GadgetTemplate {
                name: t.name.clone(),
                dims: (h, t.dims.0, d),
                free: t.free.iter().map(|&c| map(c)).collect(),
                blocks: t.blocks.iter().map(|&c| map(c)).collect(),
                ports: t
                    .ports
                    .iter()
                    .map(|p| Port {
                        name: p.name.clone(),
                        cell: map(p.cell),
                        dir: p.dir.rotate_cw(),
                        kind: p.kind,
                    })
                    .collect(),
                entry: t.entry.clone(),
                exit: t.exit.clone(),
            };
        }
        t
    }
}

/// Where a template goes: rotate first, then translate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    pub translation: Coord,
    pub quarter_turns: u8,
}

impl Placement {
    pub fn at(x: i32, y: i32, z: i32) -> Self {
        Placement {
            translation: Coord::new(x, y, z),
            quarter_turns: 0,
        }
    }
}

/// A bounded sheet that templates are stamped onto.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sheet {
    pub dims: (i32, i32, i32),
    pub free: BTreeSet<Coord>,
    pub blocks: BTreeSet<Coord>,
}

impl Sheet {
    pub fn new(dims: (i32, i32, i32)) -> Self {
        Sheet {
            dims,
            free: BTreeSet::new(),
            blocks: BTreeSet::new(),
        }
    }

    /// Stamps `template` and returns its ports in sheet coordinates.
    pub fn instantiate(&mut self, template: &GadgetTemplate, placement: Placement) -> Result<Vec<Port>, GadgetError> {
        let t = template.rotated(placement.quarter_turns);
        let o = placement.translation;
        let shift = |c: Coord| c.offset(o.x, o.y, o.z);
        for z in 0..t.dims.2 {
            for y in 0..t.dims.1 {
                for x in 0..t.dims.0 {
                    let g = shift(Coord::new(x, y, z));
                    if !inside(self.dims, g) {
                        return Err(GadgetError::OutOfBounds(g));
                    }
                }
            }
        }
        if let Some(c) = t.free.iter().map(|&c| shift(c)).find(|g| self.free.contains(g)) {
            return Err(GadgetError::Overlap(c));
        }
        self.free.extend(t.free.iter().map(|&c| shift(c)));
        self.blocks.extend(t.blocks.iter().map(|&c| shift(c)));
        Ok(t.ports
            .into_iter()
            .map(|p| Port {
                cell: shift(p.cell),
                ..p
            })
            .collect())
    }

    /// Turns a sheet holding one placed gadget back into a template.
    pub fn into_template(self, name: &str, ports: Vec<Port>, entry: &str, exit: &str) -> Result<GadgetTemplate, GadgetError> {
        GadgetTemplate::new(name, self.dims, self.free, self.blocks, ports, entry, exit)
    }

    /// Like [`Sheet::into_template`] but ports may sit anywhere on the sheet,
    /// as long as the two cells beyond each port are wall.
    pub fn into_fragment(self, name: &str, ports: Vec<Port>, entry: &str, exit: &str) -> GadgetTemplate {
        GadgetTemplate {
            name: name.to_string(),
            dims: self.dims,
            free: self.free,
            blocks: self.blocks,
            ports,
            entry: entry.to_string(),
            exit: exit.to_string(),
        }
    }
}

/// Length of the corridor added beyond each port; its last cell is the probe.
pub const HARNESS_LENGTH: i32 = 2;
const HARNESS_MARGIN: i32 = HARNESS_LENGTH + 1;

/// A template sealed into a stand-alone board with one probe cell per port.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Harness {
    pub board: Board,
    pub probes: BTreeMap<String, Coord>,
    pub ports: Vec<Port>,
}

impl Harness {
    pub fn probe(&self, port: &str) -> Option<Coord> {
        self.probes.get(port).copied()
    }

    pub fn port(&self, name: &str) -> Option<&Port> {
        self.ports.iter().find(|p| p.name == name)
    }
}

/// Seals `template` into a Path-mode board: each port gets a straight
/// two-cell corridor ending at its probe; the robot starts at the entry
/// probe and the goal is the exit probe.
pub fn harness(template: &GadgetTemplate) -> Harness {
    let m = HARNESS_MARGIN;
    let (w, h, d) = template.dims;
    let dims = (w + 2 * m, h + 2 * m, d);
    let shift = |c: Coord| c.offset(m, m, 0);
    let mut free: BTreeSet<Coord> = template.free.iter().map(|&c| shift(c)).collect();
    let mut probes = BTreeMap::new();
    let mut ports = Vec::new();
    for p in &template.ports {
        let cell = shift(p.cell);
        let mut at = cell;
        for _ in 0..HARNESS_LENGTH {
            at = at.step(p.dir);
            free.insert(at);
        }
        probes.insert(p.name.clone(), at);
        ports.push(Port { cell, ..p.clone() });
    }
    let mut parts = BoardParts::solid(dims.0, dims.1, dims.2);
    parts.walls.retain(|c| !free.contains(c));
    parts.blocks = template.blocks.iter().map(|&c| shift(c)).collect();
    parts.start = probes[&template.entry];
    parts.goal = Some(probes[&template.exit]);
    parts.mode = Mode::Path;
    let board = Board::from_parts(parts).expect("harnessed template is a valid board");
    Harness { board, probes, ports }
}
