//! Abstract syntax of ASP-Core-2 programs, with the recursive-descent parser
//! and the canonical printer.
//!
//! The same types describe both user programs (which may contain choice
//! rules, left guards, two-bound aggregates and anonymous variables) and the
//! desugared core produced by [`crate::rewrite`].

mod parser;
mod printer;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

pub use parser::{parse, parse_program, parse_program_with, parse_with, ParseOptions};
pub use printer::pretty_print;

pub(crate) fn serialize_bigint<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl ArithOp {
    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
            ArithOp::Div => "/",
        }
    }

    pub(crate) fn precedence(self) -> u8 {
        match self {
            ArithOp::Add | ArithOp::Sub => 1,
            ArithOp::Mul | ArithOp::Div => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Term {
    Integer(#[serde(serialize_with = "serialize_bigint")] BigInt),
    Symbol(String),
    /// String constant; holds the lexeme without its surrounding quotes,
    /// escapes kept verbatim.
    Str(String),
    Variable(String),
    /// `_` as written; [`crate::rewrite`] replaces each occurrence by a fresh
    /// variable.
    Anonymous,
    Neg(Box<Term>),
    Binary(ArithOp, Box<Term>, Box<Term>),
    /// Functional term with at least one argument.
    Function(String, Vec<Term>),
}

impl Term {
    pub fn int(value: impl Into<BigInt>) -> Term {
        Term::Integer(value.into())
    }

    pub fn sym(name: &str) -> Term {
        Term::Symbol(name.to_string())
    }

    pub fn var(name: &str) -> Term {
        Term::Variable(name.to_string())
    }

    /// Builds `name(args)`, collapsing the zero-argument case to a symbolic
    /// constant.
    pub fn function(name: &str, args: Vec<Term>) -> Term {
        if args.is_empty() {
            Term::Symbol(name.to_string())
        } else {
            Term::Function(name.to_string(), args)
        }
    }

    pub fn is_arithmetic(&self) -> bool {
        matches!(self, Term::Neg(_) | Term::Binary(..))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Variable(_) | Term::Anonymous => false,
            Term::Integer(_) | Term::Symbol(_) | Term::Str(_) => true,
            Term::Neg(t) => t.is_ground(),
            Term::Binary(_, l, r) => l.is_ground() && r.is_ground(),
            Term::Function(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Variable(v) => {
                out.insert(v.clone());
            }
            Term::Neg(t) => t.collect_variables(out),
            Term::Binary(_, l, r) => {
                l.collect_variables(out);
                r.collect_variables(out);
            }
            Term::Function(_, args) => args.iter().for_each(|a| a.collect_variables(out)),
            _ => {}
        }
    }

    /// Variables occurring somewhere not below an arithmetic operator.
    pub fn collect_variables_outside_arithmetic(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Variable(v) => {
                out.insert(v.clone());
            }
            Term::Function(_, args) => args
                .iter()
                .for_each(|a| a.collect_variables_outside_arithmetic(out)),
            _ => {}
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    pub(crate) fn visit_mut(&mut self, f: &mut impl FnMut(&mut Term)) {
        f(self);
        match self {
            Term::Neg(t) => t.visit_mut(f),
            Term::Binary(_, l, r) => {
                l.visit_mut(f);
                r.visit_mut(f);
            }
            Term::Function(_, args) => args.iter_mut().for_each(|a| a.visit_mut(f)),
            _ => {}
        }
    }

    pub(crate) fn visit(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        match self {
            Term::Neg(t) => t.visit(f),
            Term::Binary(_, l, r) => {
                l.visit(f);
                r.visit(f);
            }
            Term::Function(_, args) => args.iter().for_each(|a| a.visit(f)),
            _ => {}
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ne,
    Gt,
    Ge,
}

impl Relation {
    pub const ALL: [Relation; 6] = [
        Relation::Lt,
        Relation::Le,
        Relation::Eq,
        Relation::Ne,
        Relation::Gt,
        Relation::Ge,
    ];

    /// The relation obtained by swapping operands: `u ≺ t` iff `t ≺⁻¹ u`.
    pub fn inverse(self) -> Relation {
        match self {
            Relation::Lt => Relation::Gt,
            Relation::Le => Relation::Ge,
            Relation::Eq => Relation::Eq,
            Relation::Ne => Relation::Ne,
            Relation::Gt => Relation::Lt,
            Relation::Ge => Relation::Le,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ne => "!=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
        }
    }

    /// Truth of `t ≺ u` given the three-way comparison of `t` against `u`.
    pub fn holds(self, ordering: std::cmp::Ordering) -> bool {
        use std::cmp::Ordering::*;
        match self {
            Relation::Lt => ordering == Less,
            Relation::Le => ordering != Greater,
            Relation::Eq => ordering == Equal,
            Relation::Ne => ordering != Equal,
            Relation::Gt => ordering == Greater,
            Relation::Ge => ordering != Less,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassicalAtom {
    /// Strong negation.
    pub negated: bool,
    pub predicate: String,
    pub args: Vec<Term>,
}

impl ClassicalAtom {
    pub fn new(predicate: &str, args: Vec<Term>) -> Self {
        ClassicalAtom {
            negated: false,
            predicate: predicate.to_string(),
            args,
        }
    }

    pub fn negative(predicate: &str, args: Vec<Term>) -> Self {
        ClassicalAtom {
            negated: true,
            ..ClassicalAtom::new(predicate, args)
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn collect_variables(&self, out: &mut BTreeSet<String>) {
        self.args.iter().for_each(|t| t.collect_variables(out));
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BuiltinAtom {
    pub left: Term,
    pub rel: Relation,
    pub right: Term,
}

/// A classical atom, optionally under default negation, or a built-in atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum NafLiteral {
    Classical { naf: bool, atom: ClassicalAtom },
    Builtin(BuiltinAtom),
}

impl NafLiteral {
    pub fn pos(atom: ClassicalAtom) -> Self {
        NafLiteral::Classical { naf: false, atom }
    }

    pub fn neg(atom: ClassicalAtom) -> Self {
        NafLiteral::Classical { naf: true, atom }
    }

    pub fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            NafLiteral::Classical { atom, .. } => atom.collect_variables(out),
            NafLiteral::Builtin(b) => {
                b.left.collect_variables(out);
                b.right.collect_variables(out);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AggregateFunction {
    Count,
    Sum,
    Max,
    Min,
}

impl AggregateFunction {
    pub fn keyword(self) -> &'static str {
        match self {
            AggregateFunction::Count => "#count",
            AggregateFunction::Sum => "#sum",
            AggregateFunction::Max => "#max",
            AggregateFunction::Min => "#min",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AggregateElement {
    pub terms: Vec<Term>,
    pub condition: Vec<NafLiteral>,
}

impl AggregateElement {
    pub fn collect_variables(&self, out: &mut BTreeSet<String>) {
        self.terms.iter().for_each(|t| t.collect_variables(out));
        self.condition.iter().for_each(|l| l.collect_variables(out));
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }
}

/// A comparison attached to an aggregate or choice atom. For a left guard
/// `u ≺ aggr E` the relation is stored as written.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Guard {
    pub rel: Relation,
    pub term: Term,
}

impl Guard {
    pub fn new(rel: Relation, term: Term) -> Self {
        Guard { rel, term }
    }

    /// Moves a left guard to the right-hand side.
    pub fn flipped(&self) -> Guard {
        Guard {
            rel: self.rel.inverse(),
            term: self.term.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AggregateAtom {
    pub function: AggregateFunction,
    pub elements: Vec<AggregateElement>,
    pub left: Option<Guard>,
    pub right: Option<Guard>,
}

impl AggregateAtom {
    /// Variables occurring in the guards.
    pub fn guard_variables(&self, out: &mut BTreeSet<String>) {
        for g in self.left.iter().chain(self.right.iter()) {
            g.term.collect_variables(out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BodyLiteral {
    Literal(NafLiteral),
    Aggregate { naf: bool, atom: AggregateAtom },
}

impl BodyLiteral {
    pub fn pos(atom: ClassicalAtom) -> Self {
        BodyLiteral::Literal(NafLiteral::pos(atom))
    }

    pub fn neg(atom: ClassicalAtom) -> Self {
        BodyLiteral::Literal(NafLiteral::neg(atom))
    }

    /// Variables occurring outside aggregate elements.
    pub fn collect_global_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            BodyLiteral::Literal(l) => l.collect_variables(out),
            BodyLiteral::Aggregate { atom, .. } => atom.guard_variables(out),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChoiceElement {
    pub atom: ClassicalAtom,
    pub condition: Vec<NafLiteral>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChoiceAtom {
    pub elements: Vec<ChoiceElement>,
    pub left: Option<Guard>,
    pub right: Option<Guard>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Head {
    /// `h1 | … | hm`; empty for constraints.
    Disjunction(Vec<ClassicalAtom>),
    Choice(ChoiceAtom),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Rule {
    pub head: Head,
    pub body: Vec<BodyLiteral>,
}

impl Rule {
    pub fn new(head: Vec<ClassicalAtom>, body: Vec<BodyLiteral>) -> Self {
        Rule {
            head: Head::Disjunction(head),
            body,
        }
    }

    pub fn constraint(body: Vec<BodyLiteral>) -> Self {
        Rule::new(Vec::new(), body)
    }

    pub fn head_atoms(&self) -> &[ClassicalAtom] {
        match &self.head {
            Head::Disjunction(atoms) => atoms,
            Head::Choice(_) => &[],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeakConstraint {
    pub body: Vec<BodyLiteral>,
    pub weight: Term,
    /// `0` when the `@l` part is omitted.
    pub level: Term,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Statement {
    Rule(Rule),
    Weak(WeakConstraint),
}

impl Statement {
    pub fn body(&self) -> &[BodyLiteral] {
        match self {
            Statement::Rule(r) => &r.body,
            Statement::Weak(w) => &w.body,
        }
    }

    pub(crate) fn terms_mut(&mut self, f: &mut impl FnMut(&mut Term)) {
        fn lit(l: &mut NafLiteral, f: &mut impl FnMut(&mut Term)) {
            match l {
                NafLiteral::Classical { atom, .. } => {
                    atom.args.iter_mut().for_each(|t| t.visit_mut(f))
                }
                NafLiteral::Builtin(b) => {
                    b.left.visit_mut(f);
                    b.right.visit_mut(f);
                }
            }
        }
        fn guards(
            left: &mut Option<Guard>,
            right: &mut Option<Guard>,
            f: &mut impl FnMut(&mut Term),
        ) {
            for g in left.iter_mut().chain(right.iter_mut()) {
                g.term.visit_mut(f);
            }
        }
        fn body(b: &mut [BodyLiteral], f: &mut impl FnMut(&mut Term)) {
            for l in b {
                match l {
                    BodyLiteral::Literal(l) => lit(l, f),
                    BodyLiteral::Aggregate { atom, .. } => {
                        guards(&mut atom.left, &mut atom.right, f);
                        for e in &mut atom.elements {
                            e.terms.iter_mut().for_each(|t| t.visit_mut(f));
                            e.condition.iter_mut().for_each(|l| lit(l, f));
                        }
                    }
                }
            }
        }
        match self {
            Statement::Rule(r) => {
                match &mut r.head {
                    Head::Disjunction(atoms) => {
                        for a in atoms {
                            a.args.iter_mut().for_each(|t| t.visit_mut(f));
                        }
                    }
                    Head::Choice(c) => {
                        guards(&mut c.left, &mut c.right, f);
                        for e in &mut c.elements {
                            e.atom.args.iter_mut().for_each(|t| t.visit_mut(f));
                            e.condition.iter_mut().for_each(|l| lit(l, f));
                        }
                    }
                }
                body(&mut r.body, f);
            }
            Statement::Weak(w) => {
                body(&mut w.body, f);
                w.weight.visit_mut(f);
                w.level.visit_mut(f);
                w.terms.iter_mut().for_each(|t| t.visit_mut(f));
            }
        }
    }

    /// Visits every term in the statement, outermost first.
    pub(crate) fn terms(&self, f: &mut impl FnMut(&Term)) {
        fn lit(l: &NafLiteral, f: &mut impl FnMut(&Term)) {
            match l {
                NafLiteral::Classical { atom, .. } => atom.args.iter().for_each(|t| t.visit(f)),
                NafLiteral::Builtin(b) => {
                    b.left.visit(f);
                    b.right.visit(f);
                }
            }
        }
        fn guards(left: &Option<Guard>, right: &Option<Guard>, f: &mut impl FnMut(&Term)) {
            for g in left.iter().chain(right.iter()) {
                g.term.visit(f);
            }
        }
        if let Statement::Rule(r) = self {
            match &r.head {
                Head::Disjunction(atoms) => {
                    for a in atoms {
                        a.args.iter().for_each(|t| t.visit(f));
                    }
                }
                Head::Choice(c) => {
                    guards(&c.left, &c.right, f);
                    for e in &c.elements {
                        e.atom.args.iter().for_each(|t| t.visit(f));
                        e.condition.iter().for_each(|l| lit(l, f));
                    }
                }
            }
        }
        for b in self.body() {
            match b {
                BodyLiteral::Literal(l) => lit(l, f),
                BodyLiteral::Aggregate { atom, .. } => {
                    guards(&atom.left, &atom.right, f);
                    for e in &atom.elements {
                        e.terms.iter().for_each(|t| t.visit(f));
                        e.condition.iter().for_each(|l| lit(l, f));
                    }
                }
            }
        }
        if let Statement::Weak(w) = self {
            w.weight.visit(f);
            w.level.visit(f);
            w.terms.iter().for_each(|t| t.visit(f));
        }
    }

    /// Every classical atom in the statement, with a flag telling whether it
    /// sits inside an aggregate element.
    pub fn classical_atoms(&self) -> Vec<(&ClassicalAtom, bool)> {
        fn lits<'a>(ls: &'a [NafLiteral], inside: bool, out: &mut Vec<(&'a ClassicalAtom, bool)>) {
            for l in ls {
                if let NafLiteral::Classical { atom, .. } = l {
                    out.push((atom, inside));
                }
            }
        }
        let mut out = Vec::new();
        if let Statement::Rule(r) = self {
            match &r.head {
                Head::Disjunction(atoms) => out.extend(atoms.iter().map(|a| (a, false))),
                Head::Choice(c) => {
                    for e in &c.elements {
                        out.push((&e.atom, false));
                        lits(&e.condition, false, &mut out);
                    }
                }
            }
        }
        for b in self.body() {
            match b {
                BodyLiteral::Literal(l) => lits(std::slice::from_ref(l), false, &mut out),
                BodyLiteral::Aggregate { atom, .. } => {
                    for e in &atom.elements {
                        lits(&e.condition, true, &mut out);
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Program {
    pub statements: Vec<Statement>,
    pub query: Option<ClassicalAtom>,
}

impl Program {
    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Rule(r) => Some(r),
            Statement::Weak(_) => None,
        })
    }

    pub fn weak_constraints(&self) -> impl Iterator<Item = &WeakConstraint> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Weak(w) => Some(w),
            Statement::Rule(_) => None,
        })
    }
}
