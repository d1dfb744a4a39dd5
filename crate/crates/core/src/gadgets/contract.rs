//! Behavioral contracts and their line-oriented text form.
//!
//! ```text
//! reach x y
//! noreach y x
//! after x y noreach y z
//! tapset a t1,t2        (`-` for the empty set)
//! deliver a reach x y
//! ```

use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Assertion {
    /// From the initial configuration with the robot at `from`'s probe, `to`'s probe is reachable.
    Reach(String, String),
    NoReach(String, String),
    /// The inner assertion holds in every reachable state (starting at the
    /// first port) whose robot region contains the second port's probe.
    After(String, String, Box<Assertion>),
    /// Exactly these wire probes are reachable from the port.
    TapSet(String, BTreeSet<String>),
    /// The inner assertion holds after the block in this wire has been pushed in from outside.
    Deliver(String, Box<Assertion>),
}

impl Assertion {
    pub fn reach(a: &str, b: &str) -> Self {
        Assertion::Reach(a.into(), b.into())
    }

    pub fn noreach(a: &str, b: &str) -> Self {
        Assertion::NoReach(a.into(), b.into())
    }

    pub fn after(a: &str, b: &str, inner: Assertion) -> Self {
        Assertion::After(a.into(), b.into(), Box::new(inner))
    }

    pub fn tapset<'a>(a: &str, wires: impl IntoIterator<Item = &'a str>) -> Self {
        Assertion::TapSet(a.into(), wires.into_iter().map(String::from).collect())
    }

    pub fn deliver(wire: &str, inner: Assertion) -> Self {
        Assertion::Deliver(wire.into(), Box::new(inner))
    }

    /// Port the robot starts from.
    pub fn source(&self) -> &str {
        match self {
            Assertion::Reach(a, _) | Assertion::NoReach(a, _) | Assertion::After(a, _, _) | Assertion::TapSet(a, _) => a,
            Assertion::Deliver(_, inner) => inner.source(),
        }
    }

    /// Every port name mentioned.
    pub fn ports(&self) -> Vec<&str> {
        match self {
            Assertion::Reach(a, b) | Assertion::NoReach(a, b) => vec![a, b],
            Assertion::After(a, b, inner) => {
                let mut v = vec![a.as_str(), b.as_str()];
                v.extend(inner.ports());
                v
            }
            Assertion::TapSet(a, s) => std::iter::once(a.as_str()).chain(s.iter().map(String::as_str)).collect(),
            Assertion::Deliver(w, inner) => {
                let mut v = vec![w.as_str()];
                v.extend(inner.ports());
                v
            }
        }
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assertion::Reach(a, b) => write!(f, "reach {a} {b}"),
            Assertion::NoReach(a, b) => write!(f, "noreach {a} {b}"),
            Assertion::After(a, b, inner) => write!(f, "after {a} {b} {inner}"),
            Assertion::TapSet(a, s) => {
                if s.is_empty() {
                    write!(f, "tapset {a} -")
                } else {
                    write!(f, "tapset {a} {}", s.iter().cloned().collect::<Vec<_>>().join(","))
                }
            }
            Assertion::Deliver(w, inner) => write!(f, "deliver {w} {inner}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("contract line {line}: {message}")]
pub struct ContractParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BehaviorContract {
    pub assertions: Vec<Assertion>,
}

impl BehaviorContract {
    pub fn new(assertions: Vec<Assertion>) -> Self {
        BehaviorContract { assertions }
    }

    pub fn to_text(&self) -> String {
        self.assertions.iter().map(|a| format!("{a}\n")).collect()
    }

    /// Parses one assertion per non-blank line.
    pub fn parse(text: &str) -> Result<Self, ContractParseError> {
        Self::parse_lines(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
    }

    pub(crate) fn parse_lines<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Self, ContractParseError> {
        let mut assertions = Vec::new();
        for (line, text) in lines {
            let toks: Vec<&str> = text.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            let (a, rest) = parse_assertion(&toks).map_err(|message| ContractParseError { line, message })?;
            if !rest.is_empty() {
                return Err(ContractParseError {
                    line,
                    message: format!("trailing tokens {rest:?}"),
                });
            }
            assertions.push(a);
        }
        Ok(BehaviorContract { assertions })
    }
}

fn parse_assertion<'a, 'b>(toks: &'b [&'a str]) -> Result<(Assertion, &'b [&'a str]), String> {
    let need = |n: usize| {
        if toks.len() < n {
            Err(format!("`{}` needs {} arguments", toks[0], n - 1))
        } else {
            Ok(())
        }
    };
    match toks.first().copied() {
        Some("reach") => {
            need(3)?;
            Ok((Assertion::reach(toks[1], toks[2]), &toks[3..]))
        }
        Some("noreach") => {
            need(3)?;
            Ok((Assertion::noreach(toks[1], toks[2]), &toks[3..]))
        }
        Some("tapset") => {
            need(3)?;
            let set = if toks[2] == "-" {
                BTreeSet::new()
            } else {
                toks[2].split(',').map(String::from).collect()
            };
            Ok((Assertion::TapSet(toks[1].into(), set), &toks[3..]))
        }
        Some("after") => {
            need(4)?;
            let (inner, rest) = parse_assertion(&toks[3..])?;
            if matches!(inner, Assertion::After(..) | Assertion::Deliver(..)) {
                return Err("`after` takes reach, noreach or tapset".into());
            }
            if inner.source() != toks[2] {
                return Err(format!("`after {} {}` must be followed by an assertion from {}", toks[1], toks[2], toks[2]));
            }
            Ok((Assertion::after(toks[1], toks[2], inner), rest))
        }
        Some("deliver") => {
            need(3)?;
            let (inner, rest) = parse_assertion(&toks[2..])?;
            if matches!(inner, Assertion::Deliver(..)) {
                return Err("nested `deliver`".into());
            }
            Ok((Assertion::deliver(toks[1], inner), rest))
        }
        Some(other) => Err(format!("unknown assertion {other:?}")),
        None => Err("empty assertion".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let text = "reach x y\nnoreach y x\nafter x y noreach y z\ntapset a t1,t2\nafter a t1 tapset t1 t1\ndeliver a reach x y\ntapset a -\n";
        let c = BehaviorContract::parse(text).unwrap();
        assert_eq!(c.assertions.len(), 7);
        assert_eq!(c.to_text(), text);
        assert_eq!(c.assertions[2], Assertion::after("x", "y", Assertion::noreach("y", "z")));
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(BehaviorContract::parse("reach x").is_err());
        assert!(BehaviorContract::parse("frob x y").is_err());
        assert!(BehaviorContract::parse("after x y noreach z w").is_err());
        let e = BehaviorContract::parse("reach x y\nreach a b c").unwrap_err();
        assert_eq!(e.line, 2);
    }
}
