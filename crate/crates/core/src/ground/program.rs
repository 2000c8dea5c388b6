use std::cmp::Ordering;
use std::fmt::{self, Display, Formatter};

use serde::Serialize;

use super::term::GroundTerm;
use crate::syntax::{AggregateFunction, Relation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroundAtom {
    pub negated: bool,
    pub predicate: String,
    pub args: Vec<GroundTerm>,
}

impl GroundAtom {
    pub fn new(predicate: &str, args: Vec<GroundTerm>) -> Self {
        GroundAtom {
            negated: false,
            predicate: predicate.to_string(),
            args,
        }
    }

    pub fn complement(&self) -> GroundAtom {
        GroundAtom {
            negated: !self.negated,
            ..self.clone()
        }
    }
}

/// Atoms sort as the term `p(t1,...,tn)` would, the positive form before
/// `-p(...)`.
impl Ord for GroundAtom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.args
            .len()
            .cmp(&other.args.len())
            .then_with(|| self.predicate.as_bytes().cmp(other.predicate.as_bytes()))
            .then_with(|| self.args.cmp(&other.args))
            .then_with(|| self.negated.cmp(&other.negated))
    }
}

impl PartialOrd for GroundAtom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GroundElement {
    pub terms: Vec<GroundTerm>,
    /// Only `Atom` and `Builtin` literals occur here.
    pub condition: Vec<GroundLiteral>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum GroundLiteral {
    Atom {
        naf: bool,
        atom: GroundAtom,
    },
    Builtin {
        left: GroundTerm,
        rel: Relation,
        right: GroundTerm,
    },
    Aggregate {
        naf: bool,
        function: AggregateFunction,
        /// Sorted, without duplicates.
        elements: Vec<GroundElement>,
        rel: Relation,
        guard: GroundTerm,
    },
}

impl GroundLiteral {
    pub fn pos(atom: GroundAtom) -> Self {
        GroundLiteral::Atom { naf: false, atom }
    }

    pub fn neg(atom: GroundAtom) -> Self {
        GroundLiteral::Atom { naf: true, atom }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GroundRule {
    pub head: Vec<GroundAtom>,
    pub body: Vec<GroundLiteral>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GroundWeak {
    pub body: Vec<GroundLiteral>,
    pub weight: GroundTerm,
    pub level: GroundTerm,
    pub terms: Vec<GroundTerm>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GroundProgram {
    pub rules: Vec<GroundRule>,
    pub weaks: Vec<GroundWeak>,
}

impl GroundProgram {
    /// Sorts statements and drops duplicates.
    pub fn canonicalize(&mut self) {
        self.rules.sort();
        self.rules.dedup();
        self.weaks.sort();
        self.weaks.dedup();
    }
}

fn write_list<T: Display>(f: &mut Formatter<'_>, items: &[T], sep: &str) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

impl Display for GroundAtom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            write_list(f, &self.args, ",")?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl Display for GroundElement {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_list(f, &self.terms, ",")?;
        if !self.condition.is_empty() {
            if !self.terms.is_empty() {
                f.write_str(" ")?;
            }
            f.write_str(": ")?;
            write_list(f, &self.condition, ", ")?;
        } else if self.terms.is_empty() {
            f.write_str(":")?;
        }
        Ok(())
    }
}

impl Display for GroundLiteral {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            GroundLiteral::Atom { naf, atom } => {
                if *naf {
                    f.write_str("not ")?;
                }
                write!(f, "{atom}")
            }
            GroundLiteral::Builtin { left, rel, right } => write!(f, "{left} {rel} {right}"),
            GroundLiteral::Aggregate {
                naf,
                function,
                elements,
                rel,
                guard,
            } => {
                if *naf {
                    f.write_str("not ")?;
                }
                write!(f, "{}{{", function.keyword())?;
                write_list(f, elements, "; ")?;
                write!(f, "}} {rel} {guard}")
            }
        }
    }
}

impl Display for GroundRule {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.head.is_empty() {
            f.write_str(":-")?;
            if self.body.is_empty() {
                return f.write_str(" .");
            }
            f.write_str(" ")?;
        } else {
            write_list(f, &self.head, " | ")?;
            if self.body.is_empty() {
                return f.write_str(".");
            }
            f.write_str(" :- ")?;
        }
        write_list(f, &self.body, ", ")?;
        f.write_str(".")
    }
}

impl Display for GroundWeak {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(":~")?;
        if self.body.is_empty() {
            f.write_str(" .")?;
        } else {
            f.write_str(" ")?;
            write_list(f, &self.body, ", ")?;
            f.write_str(".")?;
        }
        write!(f, " [{}@{}", self.weight, self.level)?;
        for t in &self.terms {
            write!(f, ",{t}")?;
        }
        f.write_str("]")
    }
}

/// One statement per line, rules before weak constraints.
impl Display for GroundProgram {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        for w in &self.weaks {
            writeln!(f, "{w}")?;
        }
        Ok(())
    }
}
