//! Reference semantics for ground programs: answer sets by exhaustive
//! search, weak-constraint optimisation and cautious queries.

mod eval;
mod search;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

pub use eval::{
    aggregate_of, body_true, compare_value, eval_aggregate, is_answer_set, is_consistent, is_model,
    reduct, satisfies_builtin, satisfies_literal, AggregateValue, Interpretation,
};
pub use search::{possibly_true, MAX_BRUTE_FORCE_ATOMS};

use crate::error::Result;
use crate::exec::Execution;
use crate::ground::*;
use crate::rewrite::is_aux_name;
use crate::syntax::{ClassicalAtom, Term};

pub const DEFAULT_BRUTE_FORCE_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Largest candidate base the exhaustive search accepts.
    pub brute_force_limit: usize,
    pub exec: Execution,
    /// Re-check every answer set against the definition before returning it.
    pub verify: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            brute_force_limit: DEFAULT_BRUTE_FORCE_LIMIT,
            exec: Execution::default(),
            verify: true,
        }
    }
}

/// All answer sets, auxiliary atoms included, in ascending order.
pub fn answer_sets(program: &GroundProgram, options: &SolveOptions) -> Result<Vec<Interpretation>> {
    let compiled = search::Compiled::new(program, options.brute_force_limit)?;
    let mut sets: Vec<Interpretation> = compiled
        .answer_set_masks(options.exec)
        .into_iter()
        .map(|m| compiled.interpretation(m))
        .collect();
    if options.verify {
        for s in &sets {
            assert!(
                is_answer_set(program, s),
                "search produced a non-answer set {}",
                format_interpretation(s)
            );
        }
    }
    sets.sort();
    Ok(sets)
}

/// Drops auxiliary atoms introduced by desugaring, then sorts and
/// deduplicates.
pub fn project(sets: &[Interpretation]) -> Vec<Interpretation> {
    let projected: BTreeSet<Interpretation> = sets
        .iter()
        .map(|s| {
            s.iter()
                .filter(|a| !is_aux_name(&a.predicate))
                .cloned()
                .collect()
        })
        .collect();
    projected.into_iter().collect()
}

pub fn format_interpretation(set: &Interpretation) -> String {
    let atoms: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", atoms.join(", "))
}

/// Per-level costs of an interpretation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Costs {
    /// Sum of integer weights for each integer level.
    pub levels: BTreeMap<BigInt, BigInt>,
    /// Some tuple had a non-integer weight or level.
    pub non_integer: bool,
}

impl Costs {
    pub fn at(&self, level: &BigInt) -> BigInt {
        self.levels.get(level).cloned().unwrap_or_default()
    }
}

pub fn weak_tuples(
    program: &GroundProgram,
    interpretation: &Interpretation,
) -> BTreeSet<(GroundTerm, GroundTerm, Vec<GroundTerm>)> {
    program
        .weaks
        .iter()
        .filter(|w| body_true(&w.body, interpretation))
        .map(|w| (w.weight.clone(), w.level.clone(), w.terms.clone()))
        .collect()
}

pub fn weak_cost(program: &GroundProgram, interpretation: &Interpretation) -> Costs {
    let mut costs = Costs::default();
    for (w, l, _) in weak_tuples(program, interpretation) {
        match (w.as_integer(), l.as_integer()) {
            (Some(w), Some(l)) => *costs.levels.entry(l.clone()).or_default() += w,
            (None, Some(l)) => {
                costs.levels.entry(l.clone()).or_default();
                costs.non_integer = true;
            }
            _ => costs.non_integer = true,
        }
    }
    costs
}

/// Integer levels of the program's weak constraints, highest first.
pub fn levels(program: &GroundProgram) -> Vec<BigInt> {
    let set: BTreeSet<BigInt> = program
        .weaks
        .iter()
        .filter_map(|w| w.level.as_integer().cloned())
        .collect();
    set.into_iter().rev().collect()
}

/// Answer sets not dominated by any other, with their costs. The input must
/// be the complete list of answer sets.
pub fn optimal_answer_sets(
    program: &GroundProgram,
    sets: &[Interpretation],
) -> Vec<(Interpretation, Costs)> {
    let levels = levels(program);
    let costs: Vec<Costs> = sets.iter().map(|s| weak_cost(program, s)).collect();
    let key = |c: &Costs| -> Vec<BigInt> { levels.iter().map(|l| c.at(l)).collect() };
    let best = costs.iter().map(key).min();
    sets.iter()
        .cloned()
        .zip(costs)
        .filter(|(_, c)| Some(key(c)) == best)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum QueryAnswer {
    True,
    False,
    /// Substitutions, each listing variables in order of first occurrence.
    Substitutions(Vec<Vec<(String, GroundTerm)>>),
    /// There are no answer sets, so every substitution is an answer.
    Inconsistent,
}

impl fmt::Display for QueryAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryAnswer::True => writeln!(f, "TRUE"),
            QueryAnswer::False => writeln!(f, "FALSE"),
            QueryAnswer::Inconsistent => writeln!(f, "INCONSISTENT"),
            QueryAnswer::Substitutions(subs) => {
                for s in subs {
                    let parts: Vec<String> = s.iter().map(|(v, t)| format!("{v}={t}")).collect();
                    writeln!(f, "{}", parts.join(" "))?;
                }
                Ok(())
            }
        }
    }
}

fn first_occurrence_order(query: &ClassicalAtom) -> Vec<String> {
    let mut order = Vec::new();
    for a in &query.args {
        a.visit(&mut |t| {
            if let Term::Variable(v) = t {
                if !order.contains(v) {
                    order.push(v.clone());
                }
            }
        });
    }
    order
}

/// Cautious reasoning over `sets`, which must be all answer sets.
/// `shown` restricts the reported variables (named variables of the query
/// as written); `None` reports all of them.
pub fn answer_query(
    query: &ClassicalAtom,
    sets: &[Interpretation],
    shown: Option<&[String]>,
) -> QueryAnswer {
    let Some(first) = sets.first() else {
        return QueryAnswer::Inconsistent;
    };
    let order = first_occurrence_order(query);
    let in_all = |a: &GroundAtom| sets.iter().all(|s| s.contains(a));
    if order.is_empty() {
        let atom = ground_query(query, &Substitution::new());
        return match atom {
            Some(a) if in_all(&a) => QueryAnswer::True,
            _ => QueryAnswer::False,
        };
    }
    let mut answers: BTreeSet<Vec<(String, GroundTerm)>> = BTreeSet::new();
    for atom in first {
        let Some(sigma) = match_query(query, atom) else {
            continue;
        };
        if !in_all(atom) {
            continue;
        }
        let row = order
            .iter()
            .filter(|v| shown.is_none_or(|s| s.contains(v)))
            .map(|v| (v.clone(), sigma[v].clone()))
            .collect();
        answers.insert(row);
    }
    // Only hidden variables: the query behaves like a ground one.
    if order.iter().all(|v| shown.is_some_and(|s| !s.contains(v))) {
        return if answers.is_empty() {
            QueryAnswer::False
        } else {
            QueryAnswer::True
        };
    }
    let mut rows: Vec<_> = answers.into_iter().collect();
    rows.sort_by(|a, b| {
        let ka: Vec<&GroundTerm> = a.iter().map(|(_, t)| t).collect();
        let kb: Vec<&GroundTerm> = b.iter().map(|(_, t)| t).collect();
        ka.cmp(&kb)
    });
    QueryAnswer::Substitutions(rows)
}

fn ground_query(query: &ClassicalAtom, sigma: &Substitution) -> Option<GroundAtom> {
    Some(GroundAtom {
        negated: query.negated,
        predicate: query.predicate.clone(),
        args: query
            .args
            .iter()
            .map(|t| eval_arithmetic(t, sigma))
            .collect::<Option<_>>()?,
    })
}

/// The substitution under which `query` becomes `atom`, if any.
pub fn match_query(query: &ClassicalAtom, atom: &GroundAtom) -> Option<Substitution> {
    if query.negated != atom.negated
        || query.predicate != atom.predicate
        || query.args.len() != atom.args.len()
    {
        return None;
    }
    let mut sigma = Substitution::new();
    for (p, v) in query.args.iter().zip(&atom.args) {
        if !crate::ground::match_term(p, v, &mut sigma) {
            return None;
        }
    }
    (ground_query(query, &sigma).as_ref() == Some(atom)).then_some(sigma)
}
