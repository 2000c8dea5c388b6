use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::syntax::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Scope {
    Global,
    /// Variable local to the aggregate element with this index, counted over
    /// all aggregate and choice elements of the statement in textual order.
    Element(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnboundVariable {
    pub variable: String,
    pub scope: Scope,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SafetyReport {
    pub safe: bool,
    pub unbound: Vec<UnboundVariable>,
}

impl fmt::Display for UnboundVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scope = match self.scope {
            Scope::Global => "global variable",
            Scope::Element(_) => "local variable",
        };
        write!(f, "{scope} {} is not bound: {}", self.variable, self.reason)
    }
}

/// Something that may bind variables, as seen by the safety fixpoint.
enum Binder<'a> {
    Atom(&'a ClassicalAtom),
    Equality(&'a Term, &'a Term),
    AggregateEquality { element_vars: BTreeSet<String>, guard: &'a Term },
    Inert,
}

fn binder_of_naf(lit: &NafLiteral) -> Binder<'_> {
    match lit {
        NafLiteral::Classical { naf: false, atom } => Binder::Atom(atom),
        NafLiteral::Builtin(BuiltinAtom {
            left,
            rel: Relation::Eq,
            right,
        }) => Binder::Equality(left, right),
        _ => Binder::Inert,
    }
}

fn binder_of_body<'a>(lit: &'a BodyLiteral, globals: &BTreeSet<String>) -> Binder<'a> {
    match lit {
        BodyLiteral::Literal(l) => binder_of_naf(l),
        BodyLiteral::Aggregate { naf: false, atom } => {
            // `u = aggr E` and `aggr E = u` bind alike; with two guards the
            // `=` one survives normalisation as its own literal.
            let guard = match (&atom.left, &atom.right) {
                (_, Some(Guard { rel: Relation::Eq, term })) => term,
                (Some(Guard { rel: Relation::Eq, term }), _) => term,
                _ => return Binder::Inert,
            };
            let mut vars = BTreeSet::new();
            atom.elements.iter().for_each(|e| e.collect_variables(&mut vars));
            let element_vars = vars.intersection(globals).cloned().collect();
            Binder::AggregateEquality {
                element_vars,
                guard,
            }
        }
        BodyLiteral::Aggregate { naf: true, .. } => Binder::Inert,
    }
}

fn outside_arithmetic(t: &Term) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    t.collect_variables_outside_arithmetic(&mut out);
    out
}

/// Least fixpoint of the binding rules, starting from `initial`.
fn bound_closure(binders: &[Binder<'_>], initial: BTreeSet<String>) -> BTreeSet<String> {
    let mut bound = initial;
    loop {
        let before = bound.len();
        for b in binders {
            match b {
                Binder::Atom(atom) => {
                    for t in &atom.args {
                        t.collect_variables_outside_arithmetic(&mut bound);
                    }
                }
                Binder::Equality(l, r) => {
                    if l.variables().is_subset(&bound) {
                        bound.extend(outside_arithmetic(r));
                    }
                    if r.variables().is_subset(&bound) {
                        bound.extend(outside_arithmetic(l));
                    }
                }
                Binder::AggregateEquality {
                    element_vars,
                    guard,
                } => {
                    if element_vars.is_subset(&bound) {
                        bound.extend(outside_arithmetic(guard));
                    }
                }
                Binder::Inert => {}
            }
        }
        if bound.len() == before {
            return bound;
        }
    }
}

/// Explains why `var` stays unbound, looking at where it occurs.
fn explain(var: &str, naf_lits: &[&NafLiteral], body: &[BodyLiteral]) -> String {
    let inside_arith = |t: &Term| t.variables().contains(var) && !outside_arithmetic(t).contains(var);
    for l in naf_lits.iter().copied().chain(body.iter().filter_map(|b| match b {
        BodyLiteral::Literal(l) => Some(l),
        _ => None,
    })) {
        match l {
            NafLiteral::Classical { naf: false, atom } => {
                if atom.args.iter().any(inside_arith) {
                    return format!("it occurs in {atom} only inside arithmetic terms");
                }
            }
            NafLiteral::Classical { naf: true, atom } => {
                if atom.args.iter().any(|t| t.variables().contains(var)) {
                    return format!("the negated literal not {atom} does not bind it");
                }
            }
            NafLiteral::Builtin(b) => {
                if !(b.left.variables().contains(var) || b.right.variables().contains(var)) {
                    continue;
                }
                if b.rel != Relation::Eq {
                    return format!("the comparison {b} does not bind it");
                }
                return format!(
                    "the built-in atom {b} binds a variable only when the variable occurs \
                     outside arithmetic terms on one side and every variable of the other \
                     side is bound"
                );
            }
        }
    }
    for b in body {
        if let BodyLiteral::Aggregate { naf, atom } = b {
            let mut guard_vars = BTreeSet::new();
            atom.guard_variables(&mut guard_vars);
            if guard_vars.contains(var) {
                return if *naf {
                    "a negated aggregate does not bind it".to_string()
                } else {
                    format!(
                        "the aggregate {atom} binds its guard only through `=` and once the \
                         element variables that also occur outside the element are bound"
                    )
                };
            }
        }
    }
    "it does not occur in any positive body literal".to_string()
}

/// Safety of a rule, weak constraint, or (choice) rule before desugaring.
pub fn check_safety(statement: &Statement) -> SafetyReport {
    let body = statement.body();
    let mut globals = BTreeSet::new();
    for b in body {
        b.collect_global_variables(&mut globals);
    }
    // Choice elements behave like aggregate elements whose condition is
    // evaluated in the context of the rule body.
    let mut elements: Vec<(BTreeSet<String>, Vec<&NafLiteral>)> = Vec::new();
    match statement {
        Statement::Rule(r) => match &r.head {
            Head::Disjunction(atoms) => atoms.iter().for_each(|a| a.collect_variables(&mut globals)),
            Head::Choice(c) => {
                for g in c.left.iter().chain(c.right.iter()) {
                    g.term.collect_variables(&mut globals);
                }
                for e in &c.elements {
                    let mut vars = BTreeSet::new();
                    e.atom.collect_variables(&mut vars);
                    e.condition.iter().for_each(|l| l.collect_variables(&mut vars));
                    elements.push((vars, e.condition.iter().collect()));
                }
            }
        },
        Statement::Weak(w) => {
            w.weight.collect_variables(&mut globals);
            w.level.collect_variables(&mut globals);
            w.terms.iter().for_each(|t| t.collect_variables(&mut globals));
        }
    }
    for b in body {
        if let BodyLiteral::Aggregate { atom, .. } = b {
            for e in &atom.elements {
                elements.push((e.variables(), e.condition.iter().collect()));
            }
        }
    }
    let binders: Vec<Binder<'_>> = body.iter().map(|b| binder_of_body(b, &globals)).collect();
    let bound = bound_closure(&binders, BTreeSet::new());

    let mut unbound = Vec::new();
    for v in globals.difference(&bound) {
        unbound.push(UnboundVariable {
            variable: v.clone(),
            scope: Scope::Global,
            reason: explain(v, &[], body),
        });
    }
    for (i, (vars, condition)) in elements.iter().enumerate() {
        let local_binders: Vec<Binder<'_>> = condition.iter().map(|l| binder_of_naf(l)).collect();
        let local_bound = bound_closure(&local_binders, globals.clone());
        for v in vars.difference(&local_bound) {
            unbound.push(UnboundVariable {
                variable: v.clone(),
                scope: Scope::Element(i),
                reason: explain(v, condition, &[]),
            });
        }
    }
    SafetyReport {
        safe: unbound.is_empty(),
        unbound,
    }
}

/// A query `a?` is treated as a statement whose only body literal is `a`.
pub fn check_query_safety(query: &ClassicalAtom) -> SafetyReport {
    let mut vars = BTreeSet::new();
    query.collect_variables(&mut vars);
    let bound = bound_closure(&[Binder::Atom(query)], BTreeSet::new());
    let unbound: Vec<_> = vars
        .difference(&bound)
        .map(|v| UnboundVariable {
            variable: v.clone(),
            scope: Scope::Global,
            reason: format!("it occurs in {query} only inside arithmetic terms"),
        })
        .collect();
    SafetyReport {
        safe: unbound.is_empty(),
        unbound,
    }
}
