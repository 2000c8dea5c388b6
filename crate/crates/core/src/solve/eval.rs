//! Satisfaction over explicit interpretations. This is the definition-level
//! path; the search in `search.rs` compiles the same checks to bitmasks.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use crate::ground::*;
use crate::syntax::{AggregateFunction, Relation};

pub type Interpretation = BTreeSet<GroundAtom>;

/// Result of an aggregate function: a term, or one of the infinities that
/// bracket every term in the order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum AggregateValue {
    MinusInfinity,
    Term(GroundTerm),
    PlusInfinity,
}

pub fn satisfies_builtin(t: &GroundTerm, rel: Relation, u: &GroundTerm) -> bool {
    rel.holds(term_compare(t, u))
}

/// Applies an aggregate function to a set of tuples.
pub fn aggregate_of<'a>(
    function: AggregateFunction,
    tuples: impl IntoIterator<Item = &'a Vec<GroundTerm>>,
) -> AggregateValue {
    let tuples: BTreeSet<&Vec<GroundTerm>> = tuples.into_iter().collect();
    match function {
        AggregateFunction::Count => AggregateValue::Term(GroundTerm::int(tuples.len())),
        AggregateFunction::Sum => AggregateValue::Term(GroundTerm::Integer(
            tuples
                .iter()
                .filter_map(|t| t.first()?.as_integer())
                .sum::<BigInt>(),
        )),
        AggregateFunction::Max => tuples
            .iter()
            .filter_map(|t| t.first())
            .max()
            .map_or(AggregateValue::MinusInfinity, |t| AggregateValue::Term(t.clone())),
        AggregateFunction::Min => tuples
            .iter()
            .filter_map(|t| t.first())
            .min()
            .map_or(AggregateValue::PlusInfinity, |t| AggregateValue::Term(t.clone())),
    }
}

pub fn compare_value(value: &AggregateValue, guard: &GroundTerm) -> Ordering {
    match value {
        AggregateValue::MinusInfinity => Ordering::Less,
        AggregateValue::Term(t) => term_compare(t, guard),
        AggregateValue::PlusInfinity => Ordering::Greater,
    }
}

pub fn eval_aggregate(
    function: AggregateFunction,
    elements: &[GroundElement],
    interpretation: &Interpretation,
) -> AggregateValue {
    aggregate_of(
        function,
        elements
            .iter()
            .filter(|e| e.condition.iter().all(|l| satisfies_literal(l, interpretation)))
            .map(|e| &e.terms),
    )
}

pub fn satisfies_literal(lit: &GroundLiteral, interpretation: &Interpretation) -> bool {
    match lit {
        GroundLiteral::Atom { naf, atom } => interpretation.contains(atom) != *naf,
        GroundLiteral::Builtin { left, rel, right } => satisfies_builtin(left, *rel, right),
        GroundLiteral::Aggregate {
            naf,
            function,
            elements,
            rel,
            guard,
        } => {
            let value = eval_aggregate(*function, elements, interpretation);
            rel.holds(compare_value(&value, guard)) != *naf
        }
    }
}

pub fn body_true(body: &[GroundLiteral], interpretation: &Interpretation) -> bool {
    body.iter().all(|l| satisfies_literal(l, interpretation))
}

pub fn is_model(program: &GroundProgram, interpretation: &Interpretation) -> bool {
    program.rules.iter().all(|r| {
        !body_true(&r.body, interpretation) || r.head.iter().any(|h| interpretation.contains(h))
    })
}

/// Rules whose whole body is true under `interpretation`; weak constraints
/// are not part of the reduct.
pub fn reduct(program: &GroundProgram, interpretation: &Interpretation) -> GroundProgram {
    GroundProgram {
        rules: program
            .rules
            .iter()
            .filter(|r| body_true(&r.body, interpretation))
            .cloned()
            .collect(),
        weaks: Vec::new(),
    }
}

pub fn is_consistent(interpretation: &Interpretation) -> bool {
    interpretation
        .iter()
        .all(|a| a.negated || !interpretation.contains(&a.complement()))
}

/// Checks the answer-set definition directly, trying every proper subset.
pub fn is_answer_set(program: &GroundProgram, interpretation: &Interpretation) -> bool {
    if !is_consistent(interpretation) || !is_model(program, interpretation) {
        return false;
    }
    let reduct = reduct(program, interpretation);
    let atoms: Vec<&GroundAtom> = interpretation.iter().collect();
    assert!(atoms.len() < 64, "interpretation too large to verify");
    let full = (1u64 << atoms.len()) - 1;
    (0..full).all(|mask| {
        let j: Interpretation = atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, a)| (*a).clone())
            .collect();
        !is_model(&reduct, &j)
    })
}
