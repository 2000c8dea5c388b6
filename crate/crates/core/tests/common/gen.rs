//! Seeded random programs.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::oracle::*;

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Heads of rules that may use aggregates.
pub const UPPER: [Atom; 5] = [
    Atom::new(false, "a", None),
    Atom::new(false, "b", None),
    Atom::new(false, "c", None),
    Atom::new(true, "a", None),
    Atom::new(false, "d", None),
];

/// Atoms aggregates range over; rules deriving them never look upwards, so
/// no aggregate is recursive.
pub const LOWER: [Atom; 5] = [
    Atom::new(false, "p", Some(T::Int(1))),
    Atom::new(false, "p", Some(T::Int(2))),
    Atom::new(true, "p", Some(T::Int(1))),
    Atom::new(false, "q", Some(T::Sym("a"))),
    Atom::new(false, "q", Some(T::Sym("b"))),
];

pub fn base() -> Vec<Atom> {
    UPPER.iter().chain(LOWER.iter()).cloned().collect()
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Shape {
    pub aggregates: bool,
    pub weaks: bool,
    pub query: bool,
}

fn term(r: &mut Rng8) -> T {
    if r.gen_bool(0.2) {
        T::Sym(["a", "b"].choose(r).unwrap())
    } else {
        T::Int(r.gen_range(-1..=3))
    }
}

fn cmp(r: &mut Rng8) -> Cond {
    Cond::Cmp(term(r), *Rel::ALL.choose(r).unwrap(), term(r))
}

fn atom_lit(r: &mut Rng8, pool: &[Atom]) -> Cond {
    Cond::Atom {
        naf: r.gen_bool(0.4),
        atom: pool.choose(r).unwrap().clone(),
    }
}

fn aggregate(r: &mut Rng8) -> Lit {
    let func = *[Func::Count, Func::Sum, Func::Max, Func::Min].choose(r).unwrap();
    let elems = (0..r.gen_range(1..=3))
        .map(|_| {
            let len = if r.gen_bool(0.05) { 0 } else { r.gen_range(1..=2) };
            let terms = (0..len).map(|_| term(r)).collect();
            let cond = (0..r.gen_range(1..=2))
                .map(|_| if r.gen_bool(0.1) { cmp(r) } else { atom_lit(r, &LOWER) })
                .collect();
            Elem { terms, cond }
        })
        .collect();
    Lit::Agg {
        naf: r.gen_bool(0.2),
        func,
        elems,
        rel: *Rel::ALL.choose(r).unwrap(),
        guard: T::Int(r.gen_range(-1..=4)),
        guard_left: r.gen_bool(0.3),
    }
}

fn body(r: &mut Rng8, pool: &[Atom], aggregates: bool, min: usize) -> Vec<Lit> {
    (0..r.gen_range(min..=3))
        .map(|_| {
            let k = r.gen_range(0..100);
            if aggregates && k < 20 {
                aggregate(r)
            } else if k < 30 {
                Lit::Cond(cmp(r))
            } else {
                Lit::Cond(atom_lit(r, pool))
            }
        })
        .collect()
}

/// A random ground program over the ten atoms of [`base`].
pub fn ground_program(r: &mut Rng8, shape: Shape) -> Program {
    let all = base();
    let mut p = Program::default();
    for _ in 0..r.gen_range(1..=7) {
        let heads = if r.gen_bool(0.15) { 0 } else { r.gen_range(1..=2) };
        let lower = !r.gen_bool(0.5);
        let pool: &[Atom] = match (shape.aggregates, lower) {
            (false, _) => &all,
            (true, true) => &LOWER,
            (true, false) => &UPPER,
        };
        let head: Vec<Atom> = (0..heads).map(|_| pool.choose(r).unwrap().clone()).collect();
        let aggregates = shape.aggregates && (heads == 0 || !lower);
        let body_pool = if shape.aggregates && lower && heads > 0 { &LOWER[..] } else { &all[..] };
        let body = body(r, body_pool, aggregates, usize::from(heads == 0));
        p.rules.push(Rule { head, body });
    }
    if shape.weaks {
        for _ in 0..r.gen_range(0..=3) {
            let weight = if r.gen_bool(0.1) { T::Sym("w") } else { T::Int(r.gen_range(-1..=3)) };
            let level = if r.gen_bool(0.05) { T::Sym("l") } else { T::Int(r.gen_range(0..=2)) };
            let terms = (0..r.gen_range(0..=1)).map(|_| term(r)).collect();
            let body = body(r, &all, shape.aggregates, 1);
            p.weaks.push(Weak {
                body,
                weight,
                level,
                terms,
            });
        }
    }
    if shape.query {
        let a = all.choose(r).unwrap();
        let arg = match (&a.arg, r.gen_range(0..3)) {
            (None, _) => QArg::None,
            (Some(_), 0) => QArg::Var,
            (Some(t), _) => QArg::Ground(t.clone()),
        };
        p.query = Some(Query {
            neg: a.neg,
            name: a.name,
            arg,
        });
    }
    p
}

const TEMPLATES: &[&str] = &[
    "p(X) :- d(X), not q(X).",
    "q(X) :- d(X), not p(X).",
    "s(X+1) :- d(X), X < 2.",
    "t(X,Y) :- d(X), d(Y), X < Y.",
    "u(Z) :- d(X), d(Y), Z = X+Y.",
    "v(N) :- #count{X : p(X)} = N.",
    "w(X) :- d(X), #sum{Y : d(Y), Y < X} >= 1.",
    ":- p(X), q(Y), X = Y+1.",
    "{c(X) : d(X)} <= 1 :- e(a).",
    "m(X/Y) :- d(X), d(Y).",
    "n(f(X)) :- d(X), not p(X).",
    "o(X) :- n(f(X)).",
    "k(X) :- d(X), X != 1, not m(X).",
    "r :- #max{X : s(X)} > 1.",
    "h(Y) :- d(X), Y = -X, not q(X).",
    "-p(X) :- e(X).",
    "g(X) :- e(X), not -p(X).",
    "z :- #min{X,Y : t(X,Y)} <= 0, not r.",
    "j(X) :- d(X), not j2(X). j2(X) :- d(X), not j(X).",
    ":- #count{X : j(X)} > 1.",
];

/// A small non-ground program over integers 0..2 and constants `a`, `b`.
pub fn nonground_program(r: &mut Rng8) -> String {
    let mut out = String::new();
    for k in 0..=2 {
        if r.gen_bool(0.6) {
            out.push_str(&format!("d({k}). "));
        }
    }
    for c in ["a", "b"] {
        if r.gen_bool(0.4) {
            out.push_str(&format!("e({c}). "));
        }
    }
    out.push('\n');
    let n = r.gen_range(2..=5);
    for t in TEMPLATES.choose_multiple(r, n) {
        out.push_str(t);
        out.push('\n');
    }
    out
}
