//! Desugaring of syntactic shortcuts into the core language: anonymous
//! variables, left and two-bound guards, and choice rules.
//!
//! The result contains only disjunctive rules, weak constraints and
//! aggregate atoms carrying a single right guard.

use std::collections::{BTreeMap, BTreeSet};

use crate::lexer::AUX_PREFIX;
use crate::syntax::*;

pub fn is_aux_name(name: &str) -> bool {
    name.starts_with(AUX_PREFIX)
}

/// Hands out auxiliary predicate/function names, one per original predicate
/// name, none of which occur in the program being rewritten.
#[derive(Clone, Debug)]
pub struct AuxNameGenerator {
    taken: BTreeSet<String>,
    assigned: BTreeMap<String, String>,
    counter: usize,
}

impl AuxNameGenerator {
    pub fn for_program(program: &Program) -> Self {
        let mut taken = BTreeSet::new();
        let mut note = |t: &Term| match t {
            Term::Symbol(s) | Term::Function(s, _) => {
                taken.insert(s.clone());
            }
            _ => {}
        };
        for s in &program.statements {
            s.terms(&mut note);
        }
        for s in &program.statements {
            for (atom, _) in s.classical_atoms() {
                taken.insert(atom.predicate.clone());
            }
        }
        if let Some(q) = &program.query {
            taken.insert(q.predicate.clone());
        }
        AuxNameGenerator {
            taken,
            assigned: BTreeMap::new(),
            counter: 0,
        }
    }

    /// The auxiliary name associated with `predicate`.
    pub fn name_for(&mut self, predicate: &str) -> String {
        if let Some(name) = self.assigned.get(predicate) {
            return name.clone();
        }
        let name = loop {
            self.counter += 1;
            let candidate = format!("{AUX_PREFIX}{predicate}_{}", self.counter);
            if !self.taken.contains(&candidate) {
                break candidate;
            }
        };
        self.taken.insert(name.clone());
        self.assigned.insert(predicate.to_string(), name.clone());
        name
    }
}

/// Full desugaring: anonymous variables, guards, then choice rules.
/// Identical statements produced along the way are merged.
pub fn desugar(program: &Program) -> Program {
    let named = name_anonymous_variables(program);
    let mut statements = Vec::new();
    for s in &named.statements {
        statements.extend(normalize_guards(s));
    }
    let normalized = Program {
        statements,
        query: named.query,
    };
    let mut out = desugar_choice_rules(&normalized);
    let mut seen = BTreeSet::new();
    out.statements.retain(|s| seen.insert(s.clone()));
    out
}

/// Replaces every `_` by a variable that occurs nowhere else in its
/// statement.
pub fn name_anonymous_variables(program: &Program) -> Program {
    fn rename(terms_mut: impl FnOnce(&mut dyn FnMut(&mut Term)), existing: &BTreeSet<String>) {
        let mut counter = 0usize;
        let mut fresh = || loop {
            counter += 1;
            let name = format!("Anon{counter}");
            if !existing.contains(&name) {
                return name;
            }
        };
        terms_mut(&mut |t: &mut Term| {
            if matches!(t, Term::Anonymous) {
                *t = Term::Variable(fresh());
            }
        });
    }

    let mut out = program.clone();
    for s in &mut out.statements {
        let mut existing = BTreeSet::new();
        s.terms(&mut |t| {
            if let Term::Variable(v) = t {
                existing.insert(v.clone());
            }
        });
        rename(|f| s.terms_mut(&mut |t| f(t)), &existing);
    }
    if let Some(q) = &mut out.query {
        let mut existing = BTreeSet::new();
        q.collect_variables(&mut existing);
        rename(
            |f| q.args.iter_mut().for_each(|t| t.visit_mut(&mut |t| f(t))),
            &existing,
        );
    }
    out
}

fn canonical_guards(left: &Option<Guard>, right: &Option<Guard>) -> Vec<Guard> {
    left.iter()
        .map(Guard::flipped)
        .chain(right.iter().cloned())
        .collect()
}

/// Rewrites left guards into right guards and expands two-bound aggregate
/// and choice atoms. Returns one or more statements.
pub fn normalize_guards(statement: &Statement) -> Vec<Statement> {
    let mut pending = vec![statement.clone()];
    let mut done = Vec::new();
    while let Some(mut s) = pending.pop() {
        // Two-bound choice heads split into two rules.
        if let Statement::Rule(Rule {
            head: Head::Choice(c),
            body,
        }) = &s
        {
            let guards = canonical_guards(&c.left, &c.right);
            if guards.len() == 2 || c.left.is_some() {
                for g in guards.into_iter().rev() {
                    pending.push(Statement::Rule(Rule {
                        head: Head::Choice(ChoiceAtom {
                            elements: c.elements.clone(),
                            left: None,
                            right: Some(g),
                        }),
                        body: body.clone(),
                    }));
                }
                continue;
            }
        }

        let body = match &mut s {
            Statement::Rule(r) => &mut r.body,
            Statement::Weak(w) => &mut w.body,
        };
        let mut split = None;
        let mut i = 0;
        while i < body.len() {
            if let BodyLiteral::Aggregate { naf, atom } = &body[i] {
                let guards = canonical_guards(&atom.left, &atom.right);
                if atom.left.is_some() || guards.len() > 1 {
                    let parts: Vec<BodyLiteral> = guards
                        .into_iter()
                        .map(|g| BodyLiteral::Aggregate {
                            naf: *naf,
                            atom: AggregateAtom {
                                left: None,
                                right: Some(g),
                                ..atom.clone()
                            },
                        })
                        .collect();
                    if *naf && parts.len() == 2 {
                        split = Some((i, parts));
                        break;
                    }
                    let n = parts.len();
                    body.splice(i..=i, parts);
                    i += n;
                    continue;
                }
            }
            i += 1;
        }
        match split {
            Some((i, parts)) => {
                for part in parts.into_iter().rev() {
                    let mut copy = s.clone();
                    match &mut copy {
                        Statement::Rule(r) => r.body[i] = part,
                        Statement::Weak(w) => w.body[i] = part,
                    }
                    pending.push(copy);
                }
            }
            None => done.push(s),
        }
    }
    done
}

fn aux_atom(gen: &mut AuxNameGenerator, atom: &ClassicalAtom) -> (ClassicalAtom, Term) {
    let name = gen.name_for(&atom.predicate);
    let polarity = if atom.negated { 0 } else { 1 };
    let mut args = vec![Term::int(polarity)];
    args.extend(atom.args.iter().cloned());
    (
        ClassicalAtom::new(&name, args.clone()),
        Term::Function(name, args),
    )
}

/// Replaces each choice rule `C ≺ u :- B.` by one disjunctive rule per
/// choice element plus a counting constraint. Expects normalized guards.
pub fn desugar_choice_rules(program: &Program) -> Program {
    let mut gen = AuxNameGenerator::for_program(program);
    let mut statements = Vec::new();
    for s in &program.statements {
        let Statement::Rule(Rule {
            head: Head::Choice(choice),
            body,
        }) = s
        else {
            statements.push(s.clone());
            continue;
        };
        let guard = match (&choice.left, &choice.right) {
            (_, Some(g)) => g.clone(),
            (Some(g), None) => g.flipped(),
            (None, None) => Guard::new(Relation::Ge, Term::int(0)),
        };
        let mut count_elements = Vec::new();
        for e in &choice.elements {
            let (aux, aux_term) = aux_atom(&mut gen, &e.atom);
            let mut rule_body = body.clone();
            rule_body.extend(e.condition.iter().cloned().map(BodyLiteral::Literal));
            statements.push(Statement::Rule(Rule::new(
                vec![e.atom.clone(), aux],
                rule_body,
            )));
            let mut condition = vec![NafLiteral::pos(e.atom.clone())];
            condition.extend(e.condition.iter().cloned());
            count_elements.push(AggregateElement {
                terms: vec![aux_term],
                condition,
            });
        }
        let mut constraint_body = body.clone();
        constraint_body.push(BodyLiteral::Aggregate {
            naf: true,
            atom: AggregateAtom {
                function: AggregateFunction::Count,
                elements: count_elements,
                left: None,
                right: Some(guard),
            },
        });
        statements.push(Statement::Rule(Rule::constraint(constraint_body)));
    }
    Program {
        statements,
        query: program.query.clone(),
    }
}

/// True when `program` contains no shortcut handled by [`desugar`].
pub fn is_core(program: &Program) -> bool {
    let mut anonymous = false;
    for s in &program.statements {
        s.terms(&mut |t| anonymous |= matches!(t, Term::Anonymous));
        if let Statement::Rule(Rule {
            head: Head::Choice(_),
            ..
        }) = s
        {
            return false;
        }
        for b in s.body() {
            if let BodyLiteral::Aggregate { atom, .. } = b {
                if atom.left.is_some() || atom.right.is_none() {
                    return false;
                }
            }
        }
    }
    let query_anonymous = program
        .query
        .iter()
        .flat_map(|q| q.args.iter())
        .any(|t| {
            let mut found = false;
            t.visit(&mut |t| found |= matches!(t, Term::Anonymous));
            found
        });
    !anonymous && !query_anonymous
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    fn core(text: &str) -> Vec<String> {
        desugar(&parse_program(text).unwrap())
            .statements
            .iter()
            .map(|s| s.to_string())
            .collect()
    }

    #[test]
    fn anonymous_variables_become_distinct() {
        assert_eq!(core("p :- q(_, _)."), vec!["p :- q(Anon1,Anon2)."]);
        assert_eq!(core("p(_) :- q(_)."), vec!["p(Anon1) :- q(Anon2)."]);
        assert_eq!(
            core("p(Anon1) :- q(Anon1, _)."),
            vec!["p(Anon1) :- q(Anon1,Anon2)."]
        );
        assert_eq!(core("p :- q(X)."), vec!["p :- q(X)."]);
        let p = desugar(&parse_program("a(1). a(_)?").unwrap());
        assert_eq!(p.query.unwrap().to_string(), "a(Anon1)");
    }

    #[test]
    fn naf_two_bound_aggregate_splits_rule() {
        assert_eq!(
            core("h :- not 1 < #count{X:q(X)} < 3."),
            vec![
                "h :- not #count{X : q(X)} > 1.",
                "h :- not #count{X : q(X)} < 3."
            ]
        );
    }

    #[test]
    fn positive_two_bound_aggregate_splits_literal() {
        assert_eq!(
            core("h :- a, 1 <= #sum{X:q(X)} <= 3, b."),
            vec!["h :- a, #sum{X : q(X)} >= 1, #sum{X : q(X)} <= 3, b."]
        );
        assert_eq!(
            core(":~ 1 <= #sum{X:q(X)} <= 3. [1@2]"),
            vec![":~ #sum{X : q(X)} >= 1, #sum{X : q(X)} <= 3. [1@2]"]
        );
    }

    #[test]
    fn naf_two_bound_in_weak_constraint_splits() {
        assert_eq!(
            core(":~ not 1 < #max{X:q(X)} < 3. [1,x]"),
            vec![
                ":~ not #max{X : q(X)} > 1. [1@0,x]",
                ":~ not #max{X : q(X)} < 3. [1@0,x]"
            ]
        );
    }

    #[test]
    fn left_guard_on_choice_is_inverted() {
        let prog = parse_program("2 <= {a} :- b.").unwrap();
        let normalized = normalize_guards(&prog.statements[0]);
        assert_eq!(normalized.len(), 1);
        assert_eq!(normalized[0].to_string(), "{a} >= 2 :- b.");
    }

    #[test]
    fn canonical_aggregate_untouched() {
        let prog = parse_program("h :- #count{} = 0.").unwrap();
        assert_eq!(normalize_guards(&prog.statements[0]), prog.statements);
    }

    #[test]
    fn choice_rule_maps_to_three_rules() {
        assert_eq!(
            core("{p(a):q(2); -p(a):q(3)} <= 1 :- q(1)."),
            vec![
                "p(a) | __aux_p_1(1,a) :- q(1), q(2).",
                "-p(a) | __aux_p_1(0,a) :- q(1), q(3).",
                ":- q(1), not #count{__aux_p_1(1,a) : p(a), q(2); __aux_p_1(0,a) : -p(a), q(3)} <= 1."
            ]
        );
    }

    #[test]
    fn guard_free_choice_gets_default_bound() {
        assert_eq!(
            core("{a}."),
            vec!["a | __aux_a_1(1).", ":- not #count{__aux_a_1(1) : a} >= 0."]
        );
        assert_eq!(core("{} <= 0."), vec![":- not #count{} <= 0."]);
    }

    #[test]
    fn two_bound_choice_shares_generators() {
        assert_eq!(
            core("1 <= {a; b} <= 1."),
            vec![
                "a | __aux_a_1(1).",
                "b | __aux_b_2(1).",
                ":- not #count{__aux_a_1(1) : a; __aux_b_2(1) : b} >= 1.",
                ":- not #count{__aux_a_1(1) : a; __aux_b_2(1) : b} <= 1."
            ]
        );
    }

    #[test]
    fn idempotent() {
        for text in [
            "{p(X) : q(X)} <= 1 :- r. q(1). q(2). r.",
            "h :- not 1 < #count{X:q(X)} < 3. p :- q(_).",
            "1 <= {a; -a} <= 2 :- not b. :~ a. [1@1]",
        ] {
            let once = desugar(&parse_program(text).unwrap());
            assert!(is_core(&once));
            assert_eq!(desugar(&once), once, "{text}");
        }
    }

    #[test]
    fn aux_names_avoid_program_names() {
        let prog = Program {
            statements: vec![Statement::Rule(Rule::new(
                vec![ClassicalAtom::new("__aux_p_1", vec![])],
                vec![],
            ))],
            query: None,
        };
        let mut gen = AuxNameGenerator::for_program(&prog);
        assert_eq!(gen.name_for("p"), "__aux_p_2");
        assert_eq!(gen.name_for("p"), "__aux_p_2");
        assert!(is_aux_name(&gen.name_for("q")));
    }
}
