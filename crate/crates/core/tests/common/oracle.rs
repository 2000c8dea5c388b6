//! Ground programs as plain data, evaluated straight from the definitions.
//! Nothing in here calls into the library.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum T {
    Int(i64),
    Sym(&'static str),
}

impl fmt::Display for T {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            T::Int(n) => write!(f, "{n}"),
            T::Sym(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub neg: bool,
    pub name: &'static str,
    pub arg: Option<T>,
}

impl Atom {
    pub const fn new(neg: bool, name: &'static str, arg: Option<T>) -> Atom {
        Atom { neg, name, arg }
    }

    fn complement(&self) -> Atom {
        Atom {
            neg: !self.neg,
            ..self.clone()
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.neg {
            f.write_str("-")?;
        }
        f.write_str(self.name)?;
        if let Some(a) = &self.arg {
            write!(f, "({a})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Lt,
    Le,
    Eq,
    Ne,
    Gt,
    Ge,
}

impl Rel {
    pub const ALL: [Rel; 6] = [Rel::Lt, Rel::Le, Rel::Eq, Rel::Ne, Rel::Gt, Rel::Ge];

    pub fn holds(self, o: Ordering) -> bool {
        match self {
            Rel::Lt => o.is_lt(),
            Rel::Le => o.is_le(),
            Rel::Eq => o.is_eq(),
            Rel::Ne => o.is_ne(),
            Rel::Gt => o.is_gt(),
            Rel::Ge => o.is_ge(),
        }
    }

    pub fn flip(self) -> Rel {
        match self {
            Rel::Lt => Rel::Gt,
            Rel::Le => Rel::Ge,
            Rel::Gt => Rel::Lt,
            Rel::Ge => Rel::Le,
            r => r,
        }
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
            Rel::Ne => "!=",
            Rel::Gt => ">",
            Rel::Ge => ">=",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Count,
    Sum,
    Max,
    Min,
}

#[derive(Clone, Debug)]
pub enum Cond {
    Atom { naf: bool, atom: Atom },
    Cmp(T, Rel, T),
}

#[derive(Clone, Debug)]
pub struct Elem {
    pub terms: Vec<T>,
    pub cond: Vec<Cond>,
}

#[derive(Clone, Debug)]
pub enum Lit {
    Cond(Cond),
    /// Reads as `value rel guard`; `guard_left` only changes the printing.
    Agg {
        naf: bool,
        func: Func,
        elems: Vec<Elem>,
        rel: Rel,
        guard: T,
        guard_left: bool,
    },
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub head: Vec<Atom>,
    pub body: Vec<Lit>,
}

#[derive(Clone, Debug)]
pub struct Weak {
    pub body: Vec<Lit>,
    pub weight: T,
    pub level: T,
    pub terms: Vec<T>,
}

#[derive(Clone, Debug)]
pub enum QArg {
    None,
    Ground(T),
    Var,
}

#[derive(Clone, Debug)]
pub struct Query {
    pub neg: bool,
    pub name: &'static str,
    pub arg: QArg,
}

#[derive(Clone, Debug, Default)]
pub struct Program {
    pub rules: Vec<Rule>,
    pub weaks: Vec<Weak>,
    pub query: Option<Query>,
}

fn join<D: fmt::Display>(items: &[D], sep: &str) -> String {
    items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for Cond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cond::Atom { naf, atom } => write!(f, "{}{atom}", if *naf { "not " } else { "" }),
            Cond::Cmp(l, r, u) => write!(f, "{l} {r} {u}"),
        }
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lit::Cond(c) => write!(f, "{c}"),
            Lit::Agg {
                naf,
                func,
                elems,
                rel,
                guard,
                guard_left,
            } => {
                if *naf {
                    f.write_str("not ")?;
                }
                if *guard_left {
                    write!(f, "{guard} {} ", rel.flip())?;
                }
                let name = match func {
                    Func::Count => "#count",
                    Func::Sum => "#sum",
                    Func::Max => "#max",
                    Func::Min => "#min",
                };
                let elems: Vec<String> = elems
                    .iter()
                    .map(|e| format!("{} : {}", join(&e.terms, ","), join(&e.cond, ", ")))
                    .collect();
                write!(f, "{name}{{{}}}", elems.join("; "))?;
                if !*guard_left {
                    write!(f, " {rel} {guard}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            f.write_str(&join(&r.head, " | "))?;
            if !r.body.is_empty() || r.head.is_empty() {
                write!(f, " :- {}", join(&r.body, ", "))?;
            }
            f.write_str(".\n")?;
        }
        for w in &self.weaks {
            write!(f, ":~ {}. [{}@{}", join(&w.body, ", "), w.weight, w.level)?;
            for t in &w.terms {
                write!(f, ",{t}")?;
            }
            f.write_str("]\n")?;
        }
        if let Some(q) = &self.query {
            let sign = if q.neg { "-" } else { "" };
            match &q.arg {
                QArg::None => writeln!(f, "{sign}{}?", q.name)?,
                QArg::Ground(t) => writeln!(f, "{sign}{}({t})?", q.name)?,
                QArg::Var => writeln!(f, "{sign}{}(X)?", q.name)?,
            }
        }
        Ok(())
    }
}

pub type Interp = BTreeSet<Atom>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Value {
    MinusInf,
    Term(T),
    PlusInf,
}

fn cond_true(c: &Cond, i: &Interp) -> bool {
    match c {
        Cond::Atom { naf, atom } => i.contains(atom) != *naf,
        Cond::Cmp(l, r, u) => r.holds(l.cmp(u)),
    }
}

fn aggregate(func: Func, elems: &[Elem], i: &Interp) -> Value {
    let tuples: BTreeSet<&Vec<T>> = elems
        .iter()
        .filter(|e| e.cond.iter().all(|c| cond_true(c, i)))
        .map(|e| &e.terms)
        .collect();
    let firsts = tuples.iter().filter_map(|t| t.first());
    match func {
        Func::Count => Value::Term(T::Int(tuples.len() as i64)),
        Func::Sum => Value::Term(T::Int(
            firsts
                .filter_map(|t| match t {
                    T::Int(n) => Some(*n),
                    T::Sym(_) => None,
                })
                .sum(),
        )),
        Func::Max => firsts.max().map_or(Value::MinusInf, |t| Value::Term(t.clone())),
        Func::Min => firsts.min().map_or(Value::PlusInf, |t| Value::Term(t.clone())),
    }
}

pub fn lit_true(l: &Lit, i: &Interp) -> bool {
    match l {
        Lit::Cond(c) => cond_true(c, i),
        Lit::Agg {
            naf,
            func,
            elems,
            rel,
            guard,
            ..
        } => {
            let v = aggregate(*func, elems, i);
            rel.holds(v.cmp(&Value::Term(guard.clone()))) != *naf
        }
    }
}

fn body_true(body: &[Lit], i: &Interp) -> bool {
    body.iter().all(|l| lit_true(l, i))
}

fn model(rules: &[&Rule], i: &Interp) -> bool {
    rules
        .iter()
        .all(|r| !body_true(&r.body, i) || r.head.iter().any(|h| i.contains(h)))
}

fn consistent(i: &Interp) -> bool {
    i.iter().all(|a| !i.contains(&a.complement()))
}

/// Every subset of `atoms`.
pub fn subsets(atoms: &[Atom]) -> impl Iterator<Item = Interp> + '_ {
    assert!(atoms.len() < 20);
    (0u32..1 << atoms.len()).map(move |m| {
        atoms
            .iter()
            .enumerate()
            .filter(|(k, _)| m >> k & 1 == 1)
            .map(|(_, a)| a.clone())
            .collect()
    })
}

fn proper_subsets(i: &Interp) -> impl Iterator<Item = Interp> {
    let atoms: Vec<Atom> = i.iter().cloned().collect();
    let full = (1u32 << atoms.len()) - 1;
    (0..full).map(move |m| {
        atoms
            .iter()
            .enumerate()
            .filter(|(k, _)| m >> k & 1 == 1)
            .map(|(_, a)| a.clone())
            .collect()
    })
}

/// Consistent interpretations over `base` that are minimal models of the
/// rules whose bodies they satisfy.
pub fn flp_answer_sets(p: &Program, base: &[Atom]) -> Vec<Interp> {
    let all: Vec<&Rule> = p.rules.iter().collect();
    subsets(base)
        .filter(|i| consistent(i) && model(&all, i))
        .filter(|i| {
            let reduct: Vec<&Rule> = p.rules.iter().filter(|r| body_true(&r.body, i)).collect();
            proper_subsets(i).all(|j| !model(&reduct, &j))
        })
        .collect()
}

/// Classical construction for programs without aggregates: drop rules with
/// a false naf literal or built-in, drop the remaining naf literals and
/// built-ins, and keep interpretations that are minimal models of the rest.
pub fn gl_answer_sets(p: &Program, base: &[Atom]) -> Vec<Interp> {
    subsets(base)
        .filter(consistent)
        .filter(|i| {
            let positive: Vec<(Vec<Atom>, Vec<Atom>)> = p
                .rules
                .iter()
                .filter(|r| {
                    r.body.iter().all(|l| match l {
                        Lit::Cond(Cond::Atom { naf: true, atom }) => !i.contains(atom),
                        Lit::Cond(c @ Cond::Cmp(..)) => cond_true(c, i),
                        Lit::Cond(Cond::Atom { naf: false, .. }) => true,
                        Lit::Agg { .. } => panic!("aggregate in aggregate-free oracle"),
                    })
                })
                .map(|r| {
                    let pos = r
                        .body
                        .iter()
                        .filter_map(|l| match l {
                            Lit::Cond(Cond::Atom { naf: false, atom }) => Some(atom.clone()),
                            _ => None,
                        })
                        .collect();
                    (r.head.clone(), pos)
                })
                .collect();
            let is_model = |j: &Interp| {
                positive
                    .iter()
                    .all(|(h, b)| !b.iter().all(|a| j.contains(a)) || h.iter().any(|a| j.contains(a)))
            };
            is_model(i) && proper_subsets(i).all(|j| !is_model(&j))
        })
        .collect()
}

/// Integer-level costs; tuples with a non-integer weight add nothing.
pub fn costs(p: &Program, i: &Interp) -> BTreeMap<i64, i64> {
    let tuples: BTreeSet<(T, T, Vec<T>)> = p
        .weaks
        .iter()
        .filter(|w| body_true(&w.body, i))
        .map(|w| (w.weight.clone(), w.level.clone(), w.terms.clone()))
        .collect();
    let mut out = BTreeMap::new();
    for (w, l, _) in tuples {
        if let T::Int(l) = l {
            let add = if let T::Int(w) = w { w } else { 0 };
            *out.entry(l).or_insert(0) += add;
        }
    }
    out
}

fn dominates(a: &BTreeMap<i64, i64>, b: &BTreeMap<i64, i64>) -> bool {
    let levels: BTreeSet<i64> = a.keys().chain(b.keys()).copied().collect();
    for l in levels.iter().rev() {
        let (x, y) = (a.get(l).unwrap_or(&0), b.get(l).unwrap_or(&0));
        if x != y {
            return x < y;
        }
    }
    false
}

pub fn optimal(p: &Program, sets: &[Interp]) -> Vec<Interp> {
    let cs: Vec<_> = sets.iter().map(|s| costs(p, s)).collect();
    sets.iter()
        .enumerate()
        .filter(|(k, _)| !cs.iter().any(|c| dominates(c, &cs[*k])))
        .map(|(_, s)| s.clone())
        .collect()
}

/// Expected output of a query under cautious reasoning.
pub fn cautious(q: &Query, sets: &[Interp]) -> String {
    if sets.is_empty() {
        return "INCONSISTENT\n".into();
    }
    let common: Interp = sets[0]
        .iter()
        .filter(|a| sets.iter().all(|s| s.contains(a)))
        .cloned()
        .collect();
    let truth = |a: Atom| if common.contains(&a) { "TRUE\n" } else { "FALSE\n" };
    match &q.arg {
        QArg::None => truth(Atom::new(q.neg, q.name, None)).into(),
        QArg::Ground(t) => truth(Atom::new(q.neg, q.name, Some(t.clone()))).into(),
        QArg::Var => common
            .iter()
            .filter(|a| a.neg == q.neg && a.name == q.name)
            .filter_map(|a| a.arg.as_ref())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .map(|t| format!("X={t}\n"))
            .collect(),
    }
}

pub fn render(sets: &[Interp]) -> BTreeSet<BTreeSet<String>> {
    sets.iter()
        .map(|s| s.iter().map(|a| a.to_string()).collect())
        .collect()
}
