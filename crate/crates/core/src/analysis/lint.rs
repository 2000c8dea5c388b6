use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::syntax::*;

/// One warning per predicate name used with more than one arity. Strong
/// negation is ignored: `p` and `-p(1)` share the name `p`.
pub fn check_arities(program: &Program) -> Vec<String> {
    let mut arities: BTreeMap<&str, BTreeSet<usize>> = BTreeMap::new();
    for s in &program.statements {
        for (atom, _) in s.classical_atoms() {
            arities.entry(&atom.predicate).or_default().insert(atom.arity());
        }
    }
    if let Some(q) = &program.query {
        arities.entry(&q.predicate).or_default().insert(q.arity());
    }
    arities
        .into_iter()
        .filter(|(_, a)| a.len() > 1)
        .map(|(name, a)| {
            let list: Vec<String> = a.iter().map(ToString::to_string).collect();
            format!("predicate {name} is used with different arities: {}", list.join(", "))
        })
        .collect()
}

/// Aggregate atoms written without any comparison. The grammar admits them
/// but they have no truth value, so they are rejected before grounding.
pub fn unguarded_aggregates(program: &Program) -> Vec<String> {
    let mut out = Vec::new();
    for s in &program.statements {
        for lit in s.body() {
            if let BodyLiteral::Aggregate { atom, .. } = lit {
                if atom.left.is_none() && atom.right.is_none() {
                    out.push(format!(
                        "aggregate atom in `{s}` has no comparison with a term"
                    ));
                }
            }
        }
    }
    out
}

fn nonzero_constant(t: &Term) -> bool {
    matches!(t, Term::Integer(n) if !n.is_zero())
}

/// Flags every division whose divisor is not a non-zero integer literal.
/// Purely syntactic: a guard such as `X != 0` elsewhere in the rule is not
/// taken into account.
pub fn lint_undefined_arithmetic(program: &Program) -> Vec<String> {
    let mut out = Vec::new();
    for s in &program.statements {
        let mut seen = BTreeSet::new();
        s.terms(&mut |t| {
            if let Term::Binary(ArithOp::Div, _, d) = t {
                if !nonzero_constant(d) && seen.insert(t.to_string()) {
                    out.push(format!(
                        "division {t} in `{s}` may be undefined; the program must give the \
                         same answer sets whether or not such instances are dropped \
                         (a guard on the divisor may already ensure this)"
                    ));
                }
            }
        });
    }
    out
}
