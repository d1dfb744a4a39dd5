//! Deciding contracts by exhaustive exploration of the harnessed gadget.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use super::{harness, Assertion, BehaviorContract, GadgetError, GadgetTemplate, Harness};
use crate::board::State;
use crate::geom::{Coord, MoveSequence};
use crate::rules::slide_destination;
use crate::search::{expand_pushes, Budget, StateGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Undecided,
}

impl Outcome {
    pub fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Undecided => "UNDECIDED",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssertionReport {
    pub assertion: Assertion,
    pub outcome: Outcome,
    /// Configuration the counterexample replays from (harness board blocks, robot at a probe).
    pub start: Option<State>,
    pub counterexample: Option<MoveSequence>,
    /// Port whose probe the counterexample ends on.
    pub ends_at: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub gadget: String,
    pub results: Vec<AssertionReport>,
    pub states_explored: usize,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.outcome == Outcome::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AssertionReport> {
        self.results.iter().filter(|r| r.outcome == Outcome::Fail)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "gadget {}", self.gadget);
        for r in &self.results {
            let _ = write!(out, "{:<9} {}", r.outcome.label(), r.assertion);
            if let Some(m) = &r.counterexample {
                if r.outcome == Outcome::Fail {
                    let _ = write!(out, "  counterexample: {}", if m.is_empty() { "-".to_string() } else { m.to_string() });
                }
            }
            if !r.detail.is_empty() {
                let _ = write!(out, "  ({})", r.detail);
            }
            out.push('\n');
        }
        let _ = writeln!(out, "states {}", self.states_explored);
        out
    }
}

struct Verifier<'h> {
    h: &'h Harness,
    names: Vec<String>,
    wire: Vec<bool>,
    probes: Vec<Coord>,
    budget: Budget,
    graphs: HashMap<(String, Option<String>), (State, StateGraph<'h>)>,
}

struct Finding {
    outcome: Outcome,
    counterexample: Option<MoveSequence>,
    ends_at: Option<String>,
    detail: String,
}

impl Finding {
    fn pass() -> Self {
        Finding {
            outcome: Outcome::Pass,
            counterexample: None,
            ends_at: None,
            detail: String::new(),
        }
    }

    fn undecided() -> Self {
        Finding {
            outcome: Outcome::Undecided,
            counterexample: None,
            ends_at: None,
            detail: "state budget exhausted".into(),
        }
    }

    fn fail(trace: MoveSequence, detail: impl Into<String>) -> Self {
        Finding {
            outcome: Outcome::Fail,
            counterexample: Some(trace),
            ends_at: None,
            detail: detail.into(),
        }
    }

    fn ending(mut self, port: &str) -> Self {
        self.ends_at = Some(port.to_string());
        self
    }
}

impl<'h> Verifier<'h> {
    fn index(&self, port: &str) -> usize {
        self.names.iter().position(|n| n == port).expect("ports checked up front")
    }

    fn start_state(&self, source: &str, delivered: Option<&str>) -> Result<State, String> {
        let mut blocks = self.h.board.initial_blocks().clone();
        if let Some(w) = delivered {
            let port = self.h.port(w).expect("ports checked up front");
            let inward = port.dir.opposite();
            let mut at = port.cell;
            while !self.h.board.is_wall(at) && !blocks.contains(&at) {
                at = at.step(inward);
            }
            if !blocks.contains(&at) {
                return Err(format!("wire {w} holds no block"));
            }
            let dest = slide_destination(&self.h.board, &blocks, at, inward).map_err(|e| format!("cannot deliver {w}: {e}"))?;
            blocks.remove(&at);
            blocks.insert(dest);
        }
        let robot = self.probes[self.index(source)];
        if blocks.contains(&robot) {
            return Err(format!("probe of {source} is occupied"));
        }
        Ok(State { blocks, robot })
    }

    fn graph(&mut self, source: &str, delivered: Option<&str>) -> Result<&(State, StateGraph<'h>), String> {
        let key = (source.to_string(), delivered.map(String::from));
        if !self.graphs.contains_key(&key) {
            let start = self.start_state(source, delivered)?;
            let g = StateGraph::explore(&self.h.board, &start, &self.probes, self.budget);
            self.graphs.insert(key.clone(), (start, g));
        }
        Ok(&self.graphs[&key])
    }

    fn eval(&mut self, a: &Assertion) -> (Option<State>, Finding) {
        let (delivered, inner) = match a {
            Assertion::Deliver(w, inner) => (Some(w.as_str()), inner.as_ref()),
            other => (None, other),
        };
        let probes = self.probes.clone();
        let wire_bits: u64 = self.wire.iter().enumerate().filter(|(_, &w)| w).fold(0, |m, (i, _)| m | 1 << i);
        let names = self.names.clone();
        let idx = |p: &str| names.iter().position(|n| n == p).unwrap();
        let board = &self.h.board;
        let (start, g) = match self.graph(inner.source(), delivered) {
            Ok(v) => v,
            Err(msg) => return (None, Finding::fail(MoveSequence::new(), msg)),
        };
        let trace_to = |node: u32, probe: Coord| -> MoveSequence {
            expand_pushes(board, start, &g.pushes_to(node), Some(probe)).expect("explored path replays")
        };
        let has = |node: u32, p: usize| g.probe_mask(node) >> p & 1 == 1;
        let first_with = |p: usize| (0..g.len() as u32).find(|&n| has(n, p));
        let complete = g.is_complete();
        let finding = match inner {
            Assertion::Reach(_, q) => match first_with(idx(q)) {
                Some(_) => Finding::pass(),
                None if complete => Finding::fail(MoveSequence::new(), format!("{q} unreachable")),
                None => Finding::undecided(),
            },
            Assertion::NoReach(_, q) => match first_with(idx(q)) {
                Some(n) => Finding::fail(trace_to(n, probes[idx(q)]), format!("{q} reached")).ending(q),
                None if complete => Finding::pass(),
                None => Finding::undecided(),
            },
            Assertion::TapSet(_, want) => {
                let mut got = BTreeSet::new();
                let mut extra = None;
                for (i, name) in names.iter().enumerate() {
                    if wire_bits >> i & 1 == 1 {
                        if let Some(n) = first_with(i) {
                            got.insert(name.clone());
                            if !want.contains(name) && extra.is_none() {
                                extra = Some((n, i));
                            }
                        }
                    }
                }
                match extra {
                    Some((n, i)) => Finding::fail(trace_to(n, probes[i]), format!("{} reached", names[i])).ending(&names[i]),
                    None if !complete => Finding::undecided(),
                    None if &got == want => Finding::pass(),
                    None => Finding::fail(MoveSequence::new(), format!("reached only {:?}", got)),
                }
            }
            Assertion::After(_, q, cond) => {
                let qi = idx(q);
                let triggers: Vec<u32> = (0..g.len() as u32).filter(|&n| has(n, qi)).collect();
                let qprobe = probes[qi];
                let continue_to = |n: u32, target: usize| -> MoveSequence {
                    let mut m = trace_to(n, qprobe);
                    let here = State {
                        blocks: g.canonical(n).blocks,
                        robot: qprobe,
                    };
                    let (_, pushes) = g.pushes_between(n, |v| has(v, target)).expect("target reachable");
                    m.extend_from(&expand_pushes(board, &here, &pushes, Some(probes[target])).expect("explored path replays"));
                    m
                };
                let mut finding = None;
                match cond.as_ref() {
                    Assertion::Reach(_, r) => {
                        let ok = g.can_reach_probe(idx(r));
                        if let Some(&n) = triggers.iter().find(|&&n| !ok[n as usize]) {
                            finding = Some(Finding::fail(trace_to(n, qprobe), format!("{r} unreachable from this state")).ending(q));
                        }
                    }
                    Assertion::NoReach(_, r) => {
                        let ok = g.can_reach_probe(idx(r));
                        if let Some(&n) = triggers.iter().find(|&&n| ok[n as usize]) {
                            finding = Some(Finding::fail(continue_to(n, idx(r)), format!("{r} reached")).ending(r));
                        }
                    }
                    Assertion::TapSet(_, want) => {
                        let reach: Vec<(usize, Vec<bool>)> = (0..names.len())
                            .filter(|&i| wire_bits >> i & 1 == 1)
                            .map(|i| (i, g.can_reach_probe(i)))
                            .collect();
                        'trig: for &n in &triggers {
                            for (i, ok) in &reach {
                                let inside = want.contains(&names[*i]);
                                if ok[n as usize] && !inside {
                                    finding = Some(Finding::fail(continue_to(n, *i), format!("{} reached", names[*i])).ending(&names[*i]));
                                    break 'trig;
                                }
                                if !ok[n as usize] && inside {
                                    finding = Some(Finding::fail(trace_to(n, qprobe), format!("{} unreachable from this state", names[*i])).ending(q));
                                    break 'trig;
                                }
                            }
                        }
                    }
                    _ => unreachable!("rejected by contract checks"),
                }
                match finding {
                    Some(f) => f,
                    None if !complete => Finding::undecided(),
                    None if triggers.is_empty() => Finding {
                        detail: "vacuous: no trigger state".into(),
                        ..Finding::pass()
                    },
                    None => Finding::pass(),
                }
            }
            Assertion::Deliver(..) => Finding::fail(MoveSequence::new(), "nested deliver"),
        };
        (Some(start.clone()), finding)
    }
}

fn check_ports(template: &GadgetTemplate, a: &Assertion) -> Result<(), GadgetError> {
    for p in a.ports() {
        if template.port(p).is_none() {
            return Err(GadgetError::UnknownPort(p.to_string()));
        }
    }
    if let Assertion::After(_, q, inner) = a {
        if matches!(inner.as_ref(), Assertion::After(..) | Assertion::Deliver(..)) || inner.source() != q {
            return Err(GadgetError::UnknownPort(format!("{q} (malformed after)")));
        }
    }
    if let Assertion::Deliver(_, inner) = a {
        check_ports(template, inner)?;
        if matches!(inner.as_ref(), Assertion::Deliver(..)) {
            return Err(GadgetError::UnknownPort("nested deliver".into()));
        }
    }
    Ok(())
}

/// Decides every assertion of `contract` on the harnessed template.
/// Assertions that need more than `budget` states are reported Undecided.
pub fn verify_gadget(template: &GadgetTemplate, contract: &BehaviorContract, budget: Budget) -> Result<VerificationReport, GadgetError> {
    for a in &contract.assertions {
        check_ports(template, a)?;
    }
    let h = harness(template);
    let mut v = Verifier {
        h: &h,
        names: h.ports.iter().map(|p| p.name.clone()).collect(),
        wire: h.ports.iter().map(|p| p.kind == super::PortKind::Wire).collect(),
        probes: h.ports.iter().map(|p| h.probes[&p.name]).collect(),
        budget,
        graphs: HashMap::new(),
    };
    let mut results = Vec::new();
    for a in &contract.assertions {
        let (start, f) = v.eval(a);
        results.push(AssertionReport {
            assertion: a.clone(),
            outcome: f.outcome,
            start,
            counterexample: f.counterexample,
            ends_at: f.ends_at,
            detail: f.detail,
        });
    }
    let mut keys: Vec<_> = v.graphs.keys().cloned().collect();
    keys.sort();
    let states_explored = keys.iter().map(|k| v.graphs[k].1.len()).sum();
    Ok(VerificationReport {
        gadget: template.name.clone(),
        results,
        states_explored,
    })
}
