use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::program::*;
use super::term::{eval_arithmetic, GroundTerm, Substitution, UniverseBounds};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::rewrite;
use crate::syntax::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GroundingMode {
    /// Bottom-up instantiation restricted to potentially derivable atoms.
    #[default]
    Smart,
    /// Every substitution over the bounded universe.
    Naive,
}

type Key = (bool, String, usize);

/// Atoms that may become true, indexed by signed predicate signature.
#[derive(Default)]
struct Store {
    atoms: BTreeMap<Key, BTreeSet<GroundAtom>>,
}

impl Store {
    fn key(atom: &ClassicalAtom) -> Key {
        (atom.negated, atom.predicate.clone(), atom.arity())
    }

    fn candidates(&self, atom: &ClassicalAtom) -> impl Iterator<Item = &GroundAtom> {
        self.atoms.get(&Self::key(atom)).into_iter().flatten()
    }

    fn insert(&mut self, atom: GroundAtom) -> bool {
        let key = (atom.negated, atom.predicate.clone(), atom.args.len());
        self.atoms.entry(key).or_default().insert(atom)
    }
}

fn vars_of(terms: &[Term]) -> (BTreeSet<String>, BTreeSet<String>) {
    let mut all = BTreeSet::new();
    let mut plain = BTreeSet::new();
    for t in terms {
        t.collect_variables(&mut all);
        t.collect_variables_outside_arithmetic(&mut plain);
    }
    (all, plain)
}

fn is_bound(vars: &BTreeSet<String>, sigma: &Substitution) -> bool {
    vars.iter().all(|v| sigma.contains_key(v))
}

/// Whether matching a term with these variables against a value would leave
/// some arithmetic subterm unresolved.
fn matchable(all: &BTreeSet<String>, plain: &BTreeSet<String>, sigma: &Substitution) -> bool {
    all.iter().all(|v| plain.contains(v) || sigma.contains_key(v))
}

enum Binder<'a> {
    Atom {
        atom: &'a ClassicalAtom,
        all: BTreeSet<String>,
        plain: BTreeSet<String>,
    },
    Eq {
        left: &'a Term,
        right: &'a Term,
        left_vars: (BTreeSet<String>, BTreeSet<String>),
        right_vars: (BTreeSet<String>, BTreeSet<String>),
    },
    Aggregate {
        atom: &'a AggregateAtom,
        needs: BTreeSet<String>,
        guard: &'a Term,
        guard_vars: (BTreeSet<String>, BTreeSet<String>),
    },
}

impl<'a> Binder<'a> {
    fn from_naf(lit: &'a NafLiteral) -> Option<Self> {
        match lit {
            NafLiteral::Classical { naf: false, atom } => {
                let (all, plain) = vars_of(&atom.args);
                Some(Binder::Atom { atom, all, plain })
            }
            NafLiteral::Builtin(BuiltinAtom {
                left,
                rel: Relation::Eq,
                right,
            }) => Some(Binder::Eq {
                left,
                right,
                left_vars: vars_of(std::slice::from_ref(left)),
                right_vars: vars_of(std::slice::from_ref(right)),
            }),
            _ => None,
        }
    }

    fn from_body(lit: &'a BodyLiteral, globals: &BTreeSet<String>) -> Option<Self> {
        match lit {
            BodyLiteral::Literal(l) => Self::from_naf(l),
            BodyLiteral::Aggregate {
                naf: false,
                atom:
                    atom @ AggregateAtom {
                        right: Some(Guard { rel: Relation::Eq, term }),
                        left: None,
                        ..
                    },
            } => {
                let mut vars = BTreeSet::new();
                atom.elements.iter().for_each(|e| e.collect_variables(&mut vars));
                Some(Binder::Aggregate {
                    atom,
                    needs: vars.intersection(globals).cloned().collect(),
                    guard: term,
                    guard_vars: vars_of(std::slice::from_ref(term)),
                })
            }
            _ => None,
        }
    }

    /// Ready binders never leave arithmetic unresolved. Aggregates and
    /// equalities go before atoms since they are cheap filters.
    fn priority(&self, sigma: &Substitution) -> Option<u8> {
        match self {
            Binder::Atom { all, plain, .. } => matchable(all, plain, sigma).then_some(1),
            Binder::Eq {
                left_vars: (la, lp),
                right_vars: (ra, rp),
                ..
            } => ((is_bound(la, sigma) && matchable(ra, rp, sigma))
                || (is_bound(ra, sigma) && matchable(la, lp, sigma)))
            .then_some(0),
            Binder::Aggregate {
                needs,
                guard_vars: (ga, gp),
                ..
            } => (is_bound(needs, sigma) && !is_bound(ga, sigma) && matchable(ga, gp, sigma))
                .then_some(0),
        }
    }
}

/// Matches `pattern` against `value`, extending `sigma`. Arithmetic
/// subterms are evaluated once the rest of the pattern has been matched.
pub(crate) fn match_term(pattern: &Term, value: &GroundTerm, sigma: &mut Substitution) -> bool {
    let mut deferred = Vec::new();
    if !match_structure(pattern, value, sigma, &mut deferred) {
        return false;
    }
    deferred
        .into_iter()
        .all(|(p, v)| eval_arithmetic(p, sigma).as_ref() == Some(v))
}

fn match_structure<'p, 'v>(
    pattern: &'p Term,
    value: &'v GroundTerm,
    sigma: &mut Substitution,
    deferred: &mut Vec<(&'p Term, &'v GroundTerm)>,
) -> bool {
    match (pattern, value) {
        (Term::Variable(x), _) => match sigma.get(x) {
            Some(bound) => bound == value,
            None => {
                sigma.insert(x.clone(), value.clone());
                true
            }
        },
        (Term::Integer(a), GroundTerm::Integer(b)) => a == b,
        (Term::Symbol(a), GroundTerm::Symbol(b)) => a == b,
        (Term::Str(a), GroundTerm::Str(b)) => a == b,
        (Term::Function(f, args), GroundTerm::Function(g, vals)) => {
            f == g
                && args.len() == vals.len()
                && args
                    .iter()
                    .zip(vals)
                    .all(|(a, v)| match_structure(a, v, sigma, deferred))
        }
        (Term::Neg(_) | Term::Binary(..), _) => {
            deferred.push((pattern, value));
            true
        }
        _ => false,
    }
}

fn ground_atom(atom: &ClassicalAtom, sigma: &Substitution) -> Option<GroundAtom> {
    Some(GroundAtom {
        negated: atom.negated,
        predicate: atom.predicate.clone(),
        args: atom
            .args
            .iter()
            .map(|t| eval_arithmetic(t, sigma))
            .collect::<Option<_>>()?,
    })
}

/// Every integer in `[lo, hi]`, clipped to the bounds.
fn integer_range(lo: &BigInt, hi: &BigInt, bounds: &UniverseBounds) -> Vec<GroundTerm> {
    let b = BigInt::from(bounds.max_int);
    let lo = lo.max(&-&b).to_i128().unwrap_or(0);
    let hi = hi.min(&b).to_i128().unwrap_or(-1);
    (lo..=hi).map(GroundTerm::int).collect()
}

/// Values the aggregate can take under some interpretation, as terms.
fn aggregate_candidates(
    function: AggregateFunction,
    elements: &[GroundElement],
    bounds: &UniverseBounds,
) -> Vec<GroundTerm> {
    let tuples: BTreeSet<&Vec<GroundTerm>> = elements.iter().map(|e| &e.terms).collect();
    match function {
        AggregateFunction::Count => {
            integer_range(&BigInt::zero(), &BigInt::from(tuples.len()), bounds)
        }
        AggregateFunction::Sum => {
            let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
            for n in tuples.iter().filter_map(|t| t.first()?.as_integer()) {
                if n.is_negative() {
                    lo += n;
                } else {
                    hi += n;
                }
            }
            integer_range(&lo, &hi, bounds)
        }
        AggregateFunction::Max | AggregateFunction::Min => {
            let firsts: BTreeSet<&GroundTerm> = tuples.iter().filter_map(|t| t.first()).collect();
            firsts.into_iter().cloned().collect()
        }
    }
}

struct Grounder<'a> {
    bounds: UniverseBounds,
    mode: GroundingMode,
    store: &'a Store,
    universe: &'a [GroundTerm],
}

enum Instance {
    Rule(GroundRule),
    Weak(GroundWeak),
}

impl Grounder<'_> {
    fn search(
        &self,
        binders: &[Binder<'_>],
        done: &mut Vec<bool>,
        sigma: &Substitution,
        out: &mut Vec<Substitution>,
    ) {
        let next = binders
            .iter()
            .enumerate()
            .filter(|(i, _)| !done[*i])
            .filter_map(|(i, b)| Some((b.priority(sigma)?, i)))
            .min();
        let Some((_, i)) = next else {
            out.push(sigma.clone());
            return;
        };
        done[i] = true;
        for s in self.extend(&binders[i], sigma) {
            self.search(binders, done, &s, out);
        }
        done[i] = false;
    }

    fn extend(&self, binder: &Binder<'_>, sigma: &Substitution) -> Vec<Substitution> {
        let mut out = Vec::new();
        let mut try_match = |pattern: &Term, value: &GroundTerm| {
            let mut s = sigma.clone();
            if match_term(pattern, value, &mut s) && s.values().all(|v| self.bounds.admits(v)) {
                out.push(s);
            }
        };
        match binder {
            Binder::Atom { atom, .. } => {
                for g in self.store.candidates(atom) {
                    let mut s = sigma.clone();
                    if atom
                        .args
                        .iter()
                        .zip(&g.args)
                        .all(|(p, v)| match_term(p, v, &mut s))
                    {
                        out.push(s);
                    }
                }
            }
            Binder::Eq {
                left,
                right,
                left_vars,
                ..
            } => {
                let (known, other) = if is_bound(&left_vars.0, sigma) {
                    (left, right)
                } else {
                    (right, left)
                };
                if let Some(v) = eval_arithmetic(known, sigma) {
                    try_match(other, &v);
                }
            }
            Binder::Aggregate { atom, guard, .. } => {
                let elements = self.elements(atom, sigma);
                for c in aggregate_candidates(atom.function, &elements, &self.bounds) {
                    try_match(guard, &c);
                }
            }
        }
        out
    }

    /// Local substitutions for an element, on top of `sigma`.
    fn local_substitutions(&self, e: &AggregateElement, sigma: &Substitution) -> Vec<Substitution> {
        match self.mode {
            GroundingMode::Smart => {
                let binders: Vec<Binder<'_>> =
                    e.condition.iter().filter_map(Binder::from_naf).collect();
                let mut out = Vec::new();
                self.search(&binders, &mut vec![false; binders.len()], sigma, &mut out);
                out
            }
            GroundingMode::Naive => {
                let local: Vec<String> = e
                    .variables()
                    .into_iter()
                    .filter(|v| !sigma.contains_key(v))
                    .collect();
                self.enumerate(&local, sigma)
            }
        }
    }

    /// All extensions of `sigma` to `vars` over the universe.
    fn enumerate(&self, vars: &[String], sigma: &Substitution) -> Vec<Substitution> {
        let mut out = vec![sigma.clone()];
        for v in vars {
            out = out
                .into_iter()
                .flat_map(|s| {
                    self.universe.iter().map(move |t| {
                        let mut s = s.clone();
                        s.insert(v.clone(), t.clone());
                        s
                    })
                })
                .collect();
        }
        out
    }

    /// Ground literal for `lit`; `Ok(None)` drops it as true, `Err(())` drops
    /// the enclosing instance (undefined arithmetic or a false built-in).
    fn literal(&self, lit: &NafLiteral, sigma: &Substitution) -> Result<Option<GroundLiteral>, ()> {
        match lit {
            NafLiteral::Classical { naf, atom } => Ok(Some(GroundLiteral::Atom {
                naf: *naf,
                atom: ground_atom(atom, sigma).ok_or(())?,
            })),
            NafLiteral::Builtin(b) => {
                let left = eval_arithmetic(&b.left, sigma).ok_or(())?;
                let right = eval_arithmetic(&b.right, sigma).ok_or(())?;
                match self.mode {
                    GroundingMode::Smart if b.rel.holds(left.cmp(&right)) => Ok(None),
                    GroundingMode::Smart => Err(()),
                    GroundingMode::Naive => Ok(Some(GroundLiteral::Builtin {
                        left,
                        rel: b.rel,
                        right,
                    })),
                }
            }
        }
    }

    fn elements(&self, atom: &AggregateAtom, sigma: &Substitution) -> Vec<GroundElement> {
        let mut out = BTreeSet::new();
        for e in &atom.elements {
            let vars = e.variables();
            'sub: for s in self.local_substitutions(e, sigma) {
                if !is_bound(&vars, &s) || !s.values().all(|v| self.bounds.admits(v)) {
                    continue;
                }
                let Some(terms) = e.terms.iter().map(|t| eval_arithmetic(t, &s)).collect() else {
                    continue;
                };
                let mut condition = Vec::new();
                for l in &e.condition {
                    match self.literal(l, &s) {
                        Ok(Some(g)) => condition.push(g),
                        Ok(None) => {}
                        Err(()) => continue 'sub,
                    }
                }
                out.insert(GroundElement { terms, condition });
            }
        }
        out.into_iter().collect()
    }

    fn body(&self, body: &[BodyLiteral], sigma: &Substitution) -> Option<Vec<GroundLiteral>> {
        let mut out = Vec::new();
        for b in body {
            match b {
                BodyLiteral::Literal(l) => match self.literal(l, sigma) {
                    Ok(Some(g)) => out.push(g),
                    Ok(None) => {}
                    Err(()) => return None,
                },
                BodyLiteral::Aggregate { naf, atom } => {
                    let guard = atom.right.as_ref().expect("core aggregates carry a right guard");
                    out.push(GroundLiteral::Aggregate {
                        naf: *naf,
                        function: atom.function,
                        elements: self.elements(atom, sigma),
                        rel: guard.rel,
                        guard: eval_arithmetic(&guard.term, sigma)?,
                    });
                }
            }
        }
        Some(out)
    }

    fn instance(
        &self,
        stmt: &Statement,
        globals: &BTreeSet<String>,
        sigma: &Substitution,
    ) -> Result<Option<Instance>> {
        if !is_bound(globals, sigma) || !sigma.values().all(|v| self.bounds.admits(v)) {
            return Ok(None);
        }
        match stmt {
            Statement::Rule(r) => {
                let Some(head) = r
                    .head_atoms()
                    .iter()
                    .map(|a| ground_atom(a, sigma))
                    .collect::<Option<Vec<_>>>()
                else {
                    return Ok(None);
                };
                let Some(body) = self.body(&r.body, sigma) else {
                    return Ok(None);
                };
                if self.mode == GroundingMode::Smart {
                    for a in &head {
                        if let Some(reason) = a.args.iter().find_map(|t| self.bounds.violation(t)) {
                            return Err(Error::BoundExceeded {
                                atom: a.to_string(),
                                reason,
                            });
                        }
                    }
                }
                Ok(Some(Instance::Rule(GroundRule { head, body })))
            }
            Statement::Weak(w) => {
                let eval = |t: &Term| eval_arithmetic(t, sigma);
                let (Some(weight), Some(level), Some(terms), Some(body)) = (
                    eval(&w.weight),
                    eval(&w.level),
                    w.terms.iter().map(eval).collect::<Option<Vec<_>>>(),
                    self.body(&w.body, sigma),
                ) else {
                    return Ok(None);
                };
                Ok(Some(Instance::Weak(GroundWeak {
                    body,
                    weight,
                    level,
                    terms,
                })))
            }
        }
    }

    fn ground_statement(&self, stmt: &Statement) -> Result<Vec<Instance>> {
        let globals = statement_globals(stmt);
        let substitutions = match self.mode {
            GroundingMode::Smart => {
                let binders: Vec<Binder<'_>> = stmt
                    .body()
                    .iter()
                    .filter_map(|b| Binder::from_body(b, &globals))
                    .collect();
                let mut out = Vec::new();
                self.search(
                    &binders,
                    &mut vec![false; binders.len()],
                    &Substitution::new(),
                    &mut out,
                );
                out
            }
            GroundingMode::Naive => {
                let vars: Vec<String> = globals.iter().cloned().collect();
                self.enumerate(&vars, &Substitution::new())
            }
        };
        let mut out = Vec::new();
        for s in substitutions {
            if let Some(i) = self.instance(stmt, &globals, &s)? {
                out.push(i);
            }
        }
        Ok(out)
    }
}

/// Variables of a core statement occurring outside aggregate elements.
fn statement_globals(stmt: &Statement) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for b in stmt.body() {
        b.collect_global_variables(&mut out);
    }
    match stmt {
        Statement::Rule(r) => r.head_atoms().iter().for_each(|a| a.collect_variables(&mut out)),
        Statement::Weak(w) => {
            w.weight.collect_variables(&mut out);
            w.level.collect_variables(&mut out);
            w.terms.iter().for_each(|t| t.collect_variables(&mut out));
        }
    }
    out
}

/// The bounded universe for naive grounding: integers within the bounds plus
/// every term built from the program's constants and function symbols up to
/// the nesting bound. Auxiliary names from desugaring are left out.
pub fn bounded_universe(program: &Program, bounds: &UniverseBounds) -> Vec<GroundTerm> {
    let mut constants = BTreeSet::new();
    let mut functors = BTreeSet::new();
    let mut note = |t: &Term| match t {
        Term::Symbol(s) if !rewrite::is_aux_name(s) => {
            constants.insert(GroundTerm::Symbol(s.clone()));
        }
        Term::Str(s) => {
            constants.insert(GroundTerm::Str(s.clone()));
        }
        Term::Function(f, args) if !rewrite::is_aux_name(f) => {
            functors.insert((f.clone(), args.len()));
        }
        _ => {}
    };
    for s in &program.statements {
        s.terms(&mut note);
    }
    if let Some(q) = &program.query {
        q.args.iter().for_each(|t| t.visit(&mut note));
    }
    let b = bounds.max_int as i128;
    let mut level: BTreeSet<GroundTerm> = (-b..=b).map(GroundTerm::int).collect();
    level.extend(constants);
    for _ in 0..bounds.max_nesting {
        let base: Vec<GroundTerm> = level.iter().cloned().collect();
        let mut next = level.clone();
        for (f, arity) in &functors {
            let mut tuples: Vec<Vec<GroundTerm>> = vec![Vec::new()];
            for _ in 0..*arity {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        base.iter().map(move |x| {
                            let mut t = t.clone();
                            t.push(x.clone());
                            t
                        })
                    })
                    .collect();
            }
            next.extend(tuples.into_iter().map(|args| GroundTerm::Function(f.clone(), args)));
        }
        if next.len() == level.len() {
            break;
        }
        level = next;
    }
    level.into_iter().collect()
}

pub fn ground_program(program: &Program, bounds: UniverseBounds) -> Result<GroundProgram> {
    ground_program_with(program, bounds, GroundingMode::Smart, Execution::default())
}

/// Grounds a program; sugared input is desugared first. Output statements
/// are sorted and deduplicated.
pub fn ground_program_with(
    program: &Program,
    bounds: UniverseBounds,
    mode: GroundingMode,
    exec: Execution,
) -> Result<GroundProgram> {
    let unguarded = crate::analysis::unguarded_aggregates(program);
    if !unguarded.is_empty() {
        return Err(Error::Restriction(unguarded));
    }
    let core;
    let program = if rewrite::is_core(program) {
        program
    } else {
        core = rewrite::desugar(program);
        &core
    };
    let universe = match mode {
        GroundingMode::Smart => Vec::new(),
        GroundingMode::Naive => bounded_universe(program, &bounds),
    };
    let rules: Vec<Statement> = program
        .statements
        .iter()
        .filter(|s| matches!(s, Statement::Rule(_)))
        .cloned()
        .collect();
    let weaks: Vec<Statement> = program
        .statements
        .iter()
        .filter(|s| matches!(s, Statement::Weak(_)))
        .cloned()
        .collect();

    let mut store = Store::default();
    let mut out = GroundProgram::default();
    loop {
        let grounder = Grounder {
            bounds,
            mode,
            store: &store,
            universe: &universe,
        };
        let batches = exec::map(exec, &rules, |s| grounder.ground_statement(s));
        let mut ground = Vec::new();
        for b in batches {
            for i in b? {
                if let Instance::Rule(r) = i {
                    ground.push(r);
                }
            }
        }
        let mut grew = false;
        if mode == GroundingMode::Smart {
            for r in &ground {
                for h in &r.head {
                    grew |= store.insert(h.clone());
                }
            }
        }
        if !grew {
            out.rules = ground;
            break;
        }
    }
    let grounder = Grounder {
        bounds,
        mode,
        store: &store,
        universe: &universe,
    };
    for b in exec::map(exec, &weaks, |s| grounder.ground_statement(s)) {
        for i in b? {
            if let Instance::Weak(w) = i {
                out.weaks.push(w);
            }
        }
    }
    out.canonicalize();
    Ok(out)
}
