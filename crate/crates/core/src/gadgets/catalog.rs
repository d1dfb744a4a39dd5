//! The built-in gadget families and their contracts.
//!
//! Coordinates are local: x grows east, y grows south, layer 0 is the plane.

use super::{Assertion, BehaviorContract, GadgetTemplate, Port, PortKind};
use crate::canvas::Canvas;
use crate::geom::{Coord, Direction};

pub const FAMILIES: [&str; 5] = ["one_way", "fork", "crossover3d", "variable", "clause"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub family: &'static str,
    pub template: GadgetTemplate,
    pub contract: BehaviorContract,
}

fn port(name: &str, x: i32, y: i32, dir: Direction) -> Port {
    Port {
        name: name.into(),
        cell: Coord::new(x, y, 0),
        dir,
        kind: PortKind::Path,
    }
}

fn wire(name: &str, x: i32, y: i32, dir: Direction) -> Port {
    Port {
        kind: PortKind::Wire,
        ..port(name, x, y, dir)
    }
}

fn one_way_canvas(pocket: bool) -> Canvas {
    let mut c = Canvas::new();
    c.carve_h(1, 0, 4);
    c.block(2, 1);
    c.carve(2, 0);
    if pocket {
        c.carve(2, 2);
    }
    c
}

/// Passable from x to y; passable back only once it has been crossed forward.
pub fn one_way() -> GadgetTemplate {
    one_way_with((6, 3), false, "one_way")
}

fn one_way_with(dims: (i32, i32), pocket: bool, name: &str) -> GadgetTemplate {
    let ports = vec![port("x", 0, 1, Direction::W), port("y", 2, 0, Direction::N)];
    GadgetTemplate::from_canvas(name, dims, one_way_canvas(pocket), ports, "x", "y")
}

pub fn one_way_contract() -> BehaviorContract {
    BehaviorContract::new(vec![
        Assertion::reach("x", "y"),
        Assertion::noreach("y", "x"),
        Assertion::after("x", "y", Assertion::reach("y", "x")),
    ])
}

fn fork_canvas(extra: bool) -> Canvas {
    let mut c = Canvas::new();
    c.carve_v(2, 0, 2);
    c.carve(1, 2);
    c.carve(1, 3);
    c.block(2, 3);
    c.carve_h(3, 3, 4);
    c.carve_v(4, 3, 6);
    c.carve_v(2, 4, 5);
    c.carve_h(5, 0, 1);
    if extra {
        c.carve(5, 3);
    }
    c
}

/// Entering at x commits the robot to exactly one of y or z.
pub fn fork() -> GadgetTemplate {
    fork_with((6, 7), false, "fork")
}

fn fork_with(dims: (i32, i32), extra: bool, name: &str) -> GadgetTemplate {
    let ports = vec![port("x", 2, 0, Direction::N), port("y", 4, 6, Direction::S), port("z", 0, 5, Direction::W)];
    GadgetTemplate::from_canvas(name, dims, fork_canvas(extra), ports, "x", "y")
}

pub fn fork_contract() -> BehaviorContract {
    BehaviorContract::new(vec![
        Assertion::reach("x", "y"),
        Assertion::reach("x", "z"),
        Assertion::after("x", "y", Assertion::noreach("y", "z")),
        Assertion::after("x", "y", Assertion::reach("y", "x")),
        Assertion::after("x", "z", Assertion::noreach("z", "y")),
        Assertion::after("x", "z", Assertion::reach("z", "x")),
    ])
}

fn crossover_ports() -> Vec<Port> {
    vec![
        port("in1", 0, 4, Direction::W),
        port("out1", 8, 4, Direction::E),
        port("in2", 4, 0, Direction::N),
        port("out2", 4, 8, Direction::S),
    ]
}

/// Two paths that cross without connecting; the second passes over the first.
pub fn crossover3d() -> GadgetTemplate {
    let mut c = Canvas::new();
    c.route(&[(0, 4), (8, 4)]);
    c.route(&[(4, 0), (4, 8)]);
    GadgetTemplate::from_canvas("crossover3d", (9, 9), c, crossover_ports(), "in1", "out1")
}

fn crossover_flat() -> GadgetTemplate {
    let mut c = Canvas::new();
    c.carve_h(4, 0, 8);
    c.carve_v(4, 0, 2);
    c.carve_v(4, 6, 8);
    for y in 2..=6 {
        c.carve_at(Coord::new(4, y, 1));
    }
    GadgetTemplate::from_canvas("crossover_flat", (9, 9), c, crossover_ports(), "in1", "out1")
}

pub fn crossover_contract() -> BehaviorContract {
    BehaviorContract::new(vec![
        Assertion::reach("in1", "out1"),
        Assertion::reach("in2", "out2"),
        Assertion::noreach("in1", "out2"),
        Assertion::noreach("in1", "in2"),
        Assertion::noreach("in2", "in1"),
        Assertion::noreach("in2", "out1"),
    ])
}

/// Row layout of a variable gadget with the given tap counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct VariableShape {
    pub width: i32,
    pub height: i32,
    /// Row of the two rail blocks that close the rails behind the robot.
    pub yo: i32,
    pub t_rows: Vec<i32>,
    pub f_rows: Vec<i32>,
}

impl VariableShape {
    pub fn new(nt: usize, nf: usize) -> Self {
        let t_rows: Vec<i32> = (0..nt as i32).map(|i| 6 + 2 * i).collect();
        let t_end = t_rows.last().copied().unwrap_or(4);
        let f_rows: Vec<i32> = (0..nf as i32).map(|j| t_end + 4 + 2 * j).collect();
        let f_end = f_rows.last().copied().unwrap_or(t_end + 2);
        let yo = f_end + 4;
        VariableShape {
            width: 11,
            height: yo + 8,
            yo,
            t_rows,
            f_rows,
        }
    }

    pub fn entry(&self) -> (i32, i32) {
        (4, 0)
    }

    pub fn exit(&self) -> (i32, i32) {
        (8, self.yo + 7)
    }

    /// Robot cell and direction of the push that commits to the chosen rail.
    pub fn choose(&self, value: bool) -> ((i32, i32), Direction) {
        if value {
            ((4, 2), Direction::S)
        } else {
            ((3, 3), Direction::E)
        }
    }

    /// Robot cell and direction of the push that opens the chosen rail's exit.
    pub fn release(&self, value: bool) -> ((i32, i32), Direction) {
        if value {
            ((6, self.yo - 1), Direction::S)
        } else {
            ((2, self.yo + 3), Direction::S)
        }
    }

    /// Port cells of the taps on one rail.
    pub fn taps(&self, value: bool) -> Vec<(i32, i32)> {
        let rows = if value { &self.t_rows } else { &self.f_rows };
        rows.iter().map(|&r| (10, r)).collect()
    }
}

pub(crate) fn paint_variable(c: &mut Canvas, ox: i32, oy: i32, shape: &VariableShape, with_f_block: bool) {
    let yo = shape.yo;
    c.carve_v(ox + 4, oy, oy + 2);
    c.carve(ox + 3, oy + 2);
    c.carve(ox + 3, oy + 3);
    c.block(ox + 4, oy + 3);
    c.carve(ox + 5, oy + 3);
    c.route_v(ox + 6, oy + 3, oy + yo);
    c.carve_v(ox + 4, oy + 4, oy + 5);
    c.carve(ox + 3, oy + 5);
    c.carve_v(ox + 2, oy + 5, oy + yo + 6);
    for &r in &shape.t_rows {
        c.carve_h(oy + r, ox + 7, ox + 10);
    }
    for &r in &shape.f_rows {
        c.route_h(oy + r, ox + 3, ox + 10);
    }
    c.block(ox + 6, oy + yo);
    c.carve_v(ox + 6, oy + yo + 1, oy + yo + 2);
    c.carve(ox + 7, oy + yo);
    c.carve_v(ox + 8, oy + yo, oy + yo + 7);
    if with_f_block {
        c.block(ox + 2, oy + yo + 4);
    }
    c.carve_h(oy + yo + 4, ox + 3, ox + 8);
}

fn variable_with(nt: usize, nf: usize, with_f_block: bool, name: String) -> GadgetTemplate {
    let shape = VariableShape::new(nt, nf);
    let mut c = Canvas::new();
    paint_variable(&mut c, 0, 0, &shape, with_f_block);
    let (ax, ay) = shape.entry();
    let (bx, by) = shape.exit();
    let mut ports = vec![port("a", ax, ay, Direction::N), port("b", bx, by, Direction::S)];
    for (i, (x, y)) in shape.taps(true).into_iter().enumerate() {
        ports.push(wire(&format!("t{}", i + 1), x, y, Direction::E));
    }
    for (i, (x, y)) in shape.taps(false).into_iter().enumerate() {
        ports.push(wire(&format!("f{}", i + 1), x, y, Direction::E));
    }
    GadgetTemplate::from_canvas(name, (shape.width, shape.height), c, ports, "a", "b")
}

/// Entering at a commits to the t rail or the f rail; the robot may visit
/// every tap on the chosen rail, none on the other, and then leave at b.
pub fn variable(nt: usize, nf: usize) -> GadgetTemplate {
    variable_with(nt, nf, true, format!("variable({nt},{nf})"))
}

pub fn variable_contract(nt: usize, nf: usize) -> BehaviorContract {
    let ts: Vec<String> = (1..=nt).map(|i| format!("t{i}")).collect();
    let fs: Vec<String> = (1..=nf).map(|i| format!("f{i}")).collect();
    let mut v = vec![Assertion::reach("a", "b")];
    for group in [&ts, &fs] {
        for w in group {
            v.push(Assertion::reach("a", w));
            v.push(Assertion::after("a", w, Assertion::tapset(w, group.iter().map(String::as_str))));
            v.push(Assertion::after("a", w, Assertion::reach(w, "b")));
        }
    }
    BehaviorContract::new(v)
}

/// Row layout of a clause gadget with `k` wires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ClauseShape {
    pub width: i32,
    pub height: i32,
    /// Bottom row of the shaft.
    pub xy: i32,
    pub wire_rows: Vec<i32>,
}

impl ClauseShape {
    pub fn new(k: usize) -> Self {
        let xy = 2 * k as i32 + 4;
        ClauseShape {
            width: 8,
            height: xy + 4,
            xy,
            wire_rows: (1..=k as i32).map(|j| 2 + 2 * j).collect(),
        }
    }

    pub fn entry(&self) -> (i32, i32) {
        (4, 0)
    }

    pub fn exit(&self) -> (i32, i32) {
        (4, self.xy + 3)
    }

    /// Robot cell of the push that drops the plug down the shaft.
    pub fn drop(&self) -> ((i32, i32), Direction) {
        ((4, 1), Direction::S)
    }
}

pub(crate) fn paint_clause(c: &mut Canvas, ox: i32, oy: i32, shape: &ClauseShape, with_plug: bool) {
    let xy = shape.xy;
    c.carve_v(ox + 4, oy, oy + xy);
    if with_plug {
        c.block(ox + 4, oy + 2);
    }
    c.carve_h(oy + 2, ox + 5, ox + 6);
    c.carve_v(ox + 6, oy + 2, oy + xy);
    c.carve(ox + 5, oy + xy);
    c.carve_v(ox + 3, oy + xy, oy + xy + 2);
    c.carve_v(ox + 4, oy + xy + 2, oy + xy + 3);
    for &r in &shape.wire_rows {
        c.carve_h(oy + r, ox, ox + 3);
        c.block(ox + 2, oy + r);
    }
}

pub(crate) fn wire_name(j: usize) -> String {
    char::from(b'a' + j as u8).to_string()
}

fn clause_with(k: usize, with_plug: bool, name: String) -> GadgetTemplate {
    let shape = ClauseShape::new(k);
    let mut c = Canvas::new();
    paint_clause(&mut c, 0, 0, &shape, with_plug);
    let (xx, xy) = shape.entry();
    let (yx, yy) = shape.exit();
    let mut ports = vec![port("x", xx, xy, Direction::N), port("y", yx, yy, Direction::S)];
    for (j, &r) in shape.wire_rows.iter().enumerate() {
        ports.push(wire(&wire_name(j), 0, r, Direction::W));
    }
    GadgetTemplate::from_canvas(name, (shape.width, shape.height), c, ports, "x", "y")
}

/// Blocked from x to y until a block arrives along one of the wires.
pub fn clause(k: usize) -> GadgetTemplate {
    clause_with(k, true, format!("clause({k})"))
}

pub fn clause_contract(k: usize) -> BehaviorContract {
    let wires: Vec<String> = (0..k).map(wire_name).collect();
    let mut v = vec![Assertion::noreach("x", "y")];
    for w in &wires {
        v.push(Assertion::noreach("x", w));
    }
    for w in &wires {
        v.push(Assertion::deliver(w, Assertion::reach("x", "y")));
        for other in wires.iter().filter(|o| *o != w) {
            v.push(Assertion::deliver(w, Assertion::noreach("x", other)));
        }
    }
    BehaviorContract::new(v)
}

fn entry(family: &'static str, template: GadgetTemplate, contract: BehaviorContract) -> CatalogEntry {
    CatalogEntry { family, template, contract }
}

/// Every gadget instance used by the compiler for clause widths up to 3.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        entry("one_way", one_way(), one_way_contract()),
        entry("fork", fork(), fork_contract()),
        entry("crossover3d", crossover3d(), crossover_contract()),
        entry("variable", variable(1, 1), variable_contract(1, 1)),
        entry("variable", variable(2, 1), variable_contract(2, 1)),
        entry("clause", clause(1), clause_contract(1)),
        entry("clause", clause(2), clause_contract(2)),
        entry("clause", clause(3), clause_contract(3)),
    ]
}

fn parse_args(name: &str, family: &str) -> Option<Vec<usize>> {
    let rest = name.strip_prefix(family)?;
    if rest.is_empty() {
        return Some(Vec::new());
    }
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|s| s.trim().parse().ok()).collect()
}

/// Looks up a gadget by name: `one_way`, `fork`, `crossover3d`,
/// `variable(T,F)` or `clause(K)`. Bare `variable` and `clause` mean
/// `variable(1,1)` and `clause(3)`.
pub fn lookup(name: &str) -> Option<CatalogEntry> {
    let name = name.trim();
    match name {
        "one_way" => return Some(entry("one_way", one_way(), one_way_contract())),
        "fork" => return Some(entry("fork", fork(), fork_contract())),
        "crossover3d" => return Some(entry("crossover3d", crossover3d(), crossover_contract())),
        _ => {}
    }
    if let Some(args) = parse_args(name, "variable") {
        let (nt, nf) = match args[..] {
            [] => (1, 1),
            [nt, nf] if nt + nf >= 1 && nt + nf <= 16 => (nt, nf),
            _ => return None,
        };
        return Some(entry("variable", variable(nt, nf), variable_contract(nt, nf)));
    }
    if let Some(args) = parse_args(name, "clause") {
        let k = match args[..] {
            [] => 3,
            [k] if (1..=16).contains(&k) => k,
            _ => return None,
        };
        return Some(entry("clause", clause(k), clause_contract(k)));
    }
    None
}

/// Deliberately broken variants; each must fail its family's contract.
pub fn mutations() -> Vec<CatalogEntry> {
    vec![
        entry("one_way", one_way_with((6, 4), true, "one_way_leaky"), one_way_contract()),
        entry("fork", fork_with((7, 7), true, "fork_unsealed"), fork_contract()),
        entry("crossover3d", crossover_flat(), crossover_contract()),
        entry("variable", variable_with(1, 1, false, "variable_leaky".into()), variable_contract(1, 1)),
        entry("clause", clause_with(2, false, "clause_unclogged".into()), clause_contract(2)),
    ]
}

pub fn mutation(name: &str) -> Option<CatalogEntry> {
    mutations().into_iter().find(|e| e.template.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canvas::BRIDGE_Z;

    #[test]
    fn bridge_cells_sit_on_the_top_layer() {
        let t = crossover3d();
        assert_eq!(t.dims, (9, 9, 3));
        for y in 3..=5 {
            assert!(t.free.contains(&Coord::new(4, y, BRIDGE_Z)));
        }
        assert!(!t.free.contains(&Coord::new(4, 3, 0)));
        let flat = crossover_flat();
        assert_eq!(flat.dims.2, 2);
    }

    #[test]
    fn shapes_have_expected_rows() {
        let s = VariableShape::new(2, 1);
        assert_eq!(s.t_rows, vec![6, 8]);
        assert_eq!(s.f_rows, vec![12]);
        assert_eq!(s.yo, 16);
        let s = VariableShape::new(0, 1);
        assert_eq!(s.f_rows, vec![8]);
        let c = ClauseShape::new(3);
        assert_eq!(c.wire_rows, vec![4, 6, 8]);
        assert_eq!(c.height, 14);
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(lookup("variable(2,1)").unwrap().template, variable(2, 1));
        assert_eq!(lookup("clause(2)").unwrap().template.name, "clause(2)");
        assert_eq!(lookup("clause").unwrap().template.name, "clause(3)");
        assert!(lookup("clause(0)").is_none());
        assert!(lookup("widget").is_none());
        assert!(mutation("fork_unsealed").is_some());
    }

    #[test]
    fn all_instances_validate() {
        for e in catalog().iter().chain(&mutations()) {
            e.template.validate().unwrap();
        }
        for nt in 0..4 {
            for nf in 0..4 {
                if nt + nf > 0 {
                    variable(nt, nf).validate().unwrap();
                }
            }
        }
    }
}
