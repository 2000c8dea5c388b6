//! Brute-force answer-set enumeration over bitmask interpretations.

use std::collections::{BTreeMap, BTreeSet};

use super::eval::{aggregate_of, compare_value, satisfies_builtin, Interpretation};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::ground::*;
use crate::syntax::{AggregateFunction, Relation};

/// Hard cap imposed by the `u64` representation.
pub const MAX_BRUTE_FORCE_ATOMS: usize = 63;

enum Lit {
    Atom { naf: bool, bit: Option<usize> },
    Const(bool),
    Aggregate {
        naf: bool,
        function: AggregateFunction,
        elements: Vec<(Vec<GroundTerm>, Vec<Lit>)>,
        rel: Relation,
        guard: GroundTerm,
    },
}

impl Lit {
    fn holds(&self, mask: u64) -> bool {
        match self {
            Lit::Atom { naf, bit } => bit.is_some_and(|b| mask >> b & 1 == 1) != *naf,
            Lit::Const(v) => *v,
            Lit::Aggregate {
                naf,
                function,
                elements,
                rel,
                guard,
            } => {
                let tuples = elements
                    .iter()
                    .filter(|(_, cond)| cond.iter().all(|l| l.holds(mask)))
                    .map(|(t, _)| t);
                let value = aggregate_of(*function, tuples);
                rel.holds(compare_value(&value, guard)) != *naf
            }
        }
    }
}

struct Rule {
    head: u64,
    body: Vec<Lit>,
}

impl Rule {
    fn body_holds(&self, mask: u64) -> bool {
        self.body.iter().all(|l| l.holds(mask))
    }
}

/// A ground program restricted to atoms that can possibly be true.
pub(crate) struct Compiled {
    pub atoms: Vec<GroundAtom>,
    rules: Vec<Rule>,
    /// Pairs `p`, `-p`, as masks with both bits set.
    conflicts: Vec<u64>,
    /// Atoms in every model of the program and of every reduct.
    certain: u64,
    /// Bit positions of the remaining atoms.
    open: Vec<u32>,
}

/// Least model of the rules with a single head and a body of positive
/// atoms only. Every model contains it, and so does every model of a
/// reduct relative to a superset of it, since those rules stay in the reduct.
fn certain_mask(rules: &[Rule]) -> u64 {
    let definite: Vec<(u64, u64)> = rules
        .iter()
        .filter(|r| r.head.count_ones() == 1)
        .filter_map(|r| {
            r.body.iter().try_fold(0u64, |m, l| match l {
                Lit::Atom { naf: false, bit: Some(b) } => Some(m | 1 << b),
                Lit::Const(true) => Some(m),
                _ => None,
            })
            .map(|body| (r.head, body))
        })
        .collect();
    let mut mask = 0u64;
    loop {
        let next = definite
            .iter()
            .filter(|(_, body)| mask & body == *body)
            .fold(mask, |m, (head, _)| m | head);
        if next == mask {
            return mask;
        }
        mask = next;
    }
}

/// Scatters the low bits of `k` onto the positions in `bits`.
fn spread(k: u64, bits: &[u32]) -> u64 {
    bits.iter()
        .enumerate()
        .filter(|(i, _)| k >> i & 1 == 1)
        .fold(0u64, |m, (_, b)| m | 1 << b)
}

/// Least fixpoint of head atoms over rules whose positive classical body
/// atoms are already derived, ignoring everything else except false
/// built-ins. Every answer set is a subset of it.
pub fn possibly_true(program: &GroundProgram) -> BTreeSet<GroundAtom> {
    let mut derived: BTreeSet<GroundAtom> = BTreeSet::new();
    let mut remaining: Vec<&GroundRule> = program
        .rules
        .iter()
        .filter(|r| {
            r.body.iter().all(|l| match l {
                GroundLiteral::Builtin { left, rel, right } => satisfies_builtin(left, *rel, right),
                _ => true,
            })
        })
        .collect();
    loop {
        let before = derived.len();
        remaining.retain(|r| {
            let ready = r.body.iter().all(|l| match l {
                GroundLiteral::Atom { naf: false, atom } => derived.contains(atom),
                _ => true,
            });
            if ready {
                derived.extend(r.head.iter().cloned());
            }
            !ready
        });
        if derived.len() == before {
            return derived;
        }
    }
}

impl Compiled {
    /// `limit` bounds the atoms whose truth is left open by the program's
    /// definite part; the `u64` representation bounds all candidate atoms.
    pub fn new(program: &GroundProgram, limit: usize) -> Result<Self> {
        let possible = possibly_true(program);
        let limit = limit.min(MAX_BRUTE_FORCE_ATOMS);
        if possible.len() > MAX_BRUTE_FORCE_ATOMS {
            return Err(Error::CapacityExceeded {
                atoms: possible.len(),
                limit: MAX_BRUTE_FORCE_ATOMS,
            });
        }
        let atoms: Vec<GroundAtom> = possible.into_iter().collect();
        let index: BTreeMap<&GroundAtom, usize> =
            atoms.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let lit = |l: &GroundLiteral| compile(l, &index);
        let rules: Vec<Rule> = program
            .rules
            .iter()
            .filter_map(|r| {
                let body: Vec<Lit> = r.body.iter().map(lit).collect();
                // A positive atom outside the candidate base, or a false
                // built-in, makes the body false under every candidate.
                if body.iter().any(|l| {
                    matches!(l, Lit::Atom { naf: false, bit: None } | Lit::Const(false))
                }) {
                    return None;
                }
                let head = r
                    .head
                    .iter()
                    .filter_map(|h| index.get(h))
                    .fold(0u64, |m, &i| m | 1 << i);
                Some(Rule { head, body })
            })
            .collect();
        let conflicts = atoms
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.negated)
            .filter_map(|(i, a)| index.get(&a.complement()).map(|&j| 1u64 << i | 1u64 << j))
            .collect();
        let certain = certain_mask(&rules);
        let open: Vec<u32> = (0..atoms.len() as u32)
            .filter(|b| certain >> b & 1 == 0)
            .collect();
        if open.len() > limit {
            return Err(Error::CapacityExceeded {
                atoms: open.len(),
                limit,
            });
        }
        Ok(Compiled {
            atoms,
            rules,
            conflicts,
            certain,
            open,
        })
    }

    fn consistent(&self, mask: u64) -> bool {
        self.conflicts.iter().all(|&c| mask & c != c)
    }

    fn is_model(&self, rules: &[&Rule], mask: u64) -> bool {
        rules
            .iter()
            .all(|r| r.head & mask != 0 || !r.body_holds(mask))
    }

    /// No proper subset of `mask` is a model of the reduct. Subsets missing
    /// a certain atom cannot be, so only the open part varies.
    fn is_minimal(&self, mask: u64) -> bool {
        let reduct: Vec<&Rule> = self.rules.iter().filter(|r| r.body_holds(mask)).collect();
        let bits: Vec<u32> = self.open.iter().copied().filter(|b| mask >> b & 1 == 1).collect();
        let full = (1u64 << bits.len()) - 1;
        !(0..full).any(|k| self.is_model(&reduct, self.certain | spread(k, &bits)))
    }

    fn is_answer_set(&self, mask: u64) -> bool {
        let all: Vec<&Rule> = self.rules.iter().collect();
        self.consistent(mask) && self.is_model(&all, mask) && self.is_minimal(mask)
    }

    pub fn answer_set_masks(&self, exec: Execution) -> Vec<u64> {
        let mut masks = exec::filter_range(exec, 0..1u64 << self.open.len(), |k| {
            self.is_answer_set(self.certain | spread(k, &self.open))
        });
        for m in &mut masks {
            *m = self.certain | spread(*m, &self.open);
        }
        masks
    }

    pub fn interpretation(&self, mask: u64) -> Interpretation {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, a)| a.clone())
            .collect()
    }
}

fn compile(l: &GroundLiteral, index: &BTreeMap<&GroundAtom, usize>) -> Lit {
    match l {
        GroundLiteral::Atom { naf, atom } => Lit::Atom {
            naf: *naf,
            bit: index.get(atom).copied(),
        },
        GroundLiteral::Builtin { left, rel, right } => {
            Lit::Const(satisfies_builtin(left, *rel, right))
        }
        GroundLiteral::Aggregate {
            naf,
            function,
            elements,
            rel,
            guard,
        } => Lit::Aggregate {
            naf: *naf,
            function: *function,
            elements: elements
                .iter()
                .map(|e| {
                    let cond = e.condition.iter().map(|c| compile(c, index)).collect();
                    (e.terms.clone(), cond)
                })
                .collect(),
            rel: *rel,
            guard: guard.clone(),
        },
    }
}
