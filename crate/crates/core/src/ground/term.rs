use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::syntax::{ArithOp, Term};

/// A variable-free, arithmetic-free term.
///
/// Ordering is the standard total order on terms: integers numerically, then
/// symbolic constants, then strings, then functional terms; constants of the
/// same class byte-wise; functional terms by arity, then functor, then
/// arguments.
#[derive(Clone, Debug, Serialize)]
pub enum GroundTerm {
    Integer(#[serde(serialize_with = "crate::syntax::serialize_bigint")] BigInt),
    Symbol(String),
    /// String body as written, escapes included.
    Str(String),
    Function(String, Vec<GroundTerm>),
}

pub type Substitution = BTreeMap<String, GroundTerm>;

impl GroundTerm {
    pub fn int(v: impl Into<BigInt>) -> Self {
        GroundTerm::Integer(v.into())
    }

    pub fn sym(s: &str) -> Self {
        GroundTerm::Symbol(s.to_string())
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            GroundTerm::Integer(n) => Some(n),
            _ => None,
        }
    }

    fn class(&self) -> u8 {
        match self {
            GroundTerm::Integer(_) => 0,
            GroundTerm::Symbol(_) => 1,
            GroundTerm::Str(_) => 2,
            GroundTerm::Function(..) => 3,
        }
    }

    /// Functional nesting depth; constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            GroundTerm::Function(_, args) => 1 + args.iter().map(Self::depth).max().unwrap_or(0),
            _ => 0,
        }
    }

    pub fn max_abs_integer(&self) -> Option<BigInt> {
        match self {
            GroundTerm::Integer(n) => Some(n.abs()),
            GroundTerm::Function(_, args) => args.iter().filter_map(Self::max_abs_integer).max(),
            _ => None,
        }
    }

    pub fn to_term(&self) -> Term {
        match self {
            GroundTerm::Integer(n) => Term::Integer(n.clone()),
            GroundTerm::Symbol(s) => Term::Symbol(s.clone()),
            GroundTerm::Str(s) => Term::Str(s.clone()),
            GroundTerm::Function(f, args) => {
                Term::Function(f.clone(), args.iter().map(Self::to_term).collect())
            }
        }
    }
}

/// String content with the `\"` escape resolved.
fn unescape(raw: &str) -> Vec<u8> {
    let bytes = raw.as_bytes();
    let mut out = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'\\' && bytes.get(i + 1) == Some(&b'"') {
            out.push(b'"');
            i += 2;
        } else {
            out.push(bytes[i]);
            i += 1;
        }
    }
    out
}

pub fn term_compare(t: &GroundTerm, u: &GroundTerm) -> Ordering {
    use GroundTerm::*;
    match (t, u) {
        (Integer(a), Integer(b)) => a.cmp(b),
        (Symbol(a), Symbol(b)) => a.as_bytes().cmp(b.as_bytes()),
        (Str(a), Str(b)) => unescape(a).cmp(&unescape(b)),
        (Function(f, xs), Function(g, ys)) => xs
            .len()
            .cmp(&ys.len())
            .then_with(|| f.as_bytes().cmp(g.as_bytes()))
            .then_with(|| {
                for (x, y) in xs.iter().zip(ys) {
                    let o = term_compare(x, y);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }),
        _ => t.class().cmp(&u.class()),
    }
}

impl Ord for GroundTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        term_compare(self, other)
    }
}

impl PartialOrd for GroundTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for GroundTerm {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for GroundTerm {}

impl fmt::Display for GroundTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundTerm::Integer(n) => write!(f, "{n}"),
            GroundTerm::Symbol(s) => f.write_str(s),
            GroundTerm::Str(s) => write!(f, "\"{s}\""),
            GroundTerm::Function(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Applies `sigma` and evaluates arithmetic. `None` when a variable is
/// unassigned or some arithmetic subterm is undefined (non-integer operand,
/// division by zero). Division truncates toward zero.
pub fn eval_arithmetic(t: &Term, sigma: &Substitution) -> Option<GroundTerm> {
    Some(match t {
        Term::Integer(n) => GroundTerm::Integer(n.clone()),
        Term::Symbol(s) => GroundTerm::Symbol(s.clone()),
        Term::Str(s) => GroundTerm::Str(s.clone()),
        Term::Variable(v) => sigma.get(v)?.clone(),
        Term::Anonymous => return None,
        Term::Neg(inner) => match eval_arithmetic(inner, sigma)? {
            GroundTerm::Integer(n) => GroundTerm::Integer(-n),
            _ => return None,
        },
        Term::Binary(op, l, r) => {
            let (GroundTerm::Integer(a), GroundTerm::Integer(b)) =
                (eval_arithmetic(l, sigma)?, eval_arithmetic(r, sigma)?)
            else {
                return None;
            };
            GroundTerm::Integer(match op {
                ArithOp::Add => a + b,
                ArithOp::Sub => a - b,
                ArithOp::Mul => a * b,
                ArithOp::Div => {
                    if b.is_zero() {
                        return None;
                    }
                    a / b
                }
            })
        }
        Term::Function(f, args) => GroundTerm::Function(
            f.clone(),
            args.iter()
                .map(|a| eval_arithmetic(a, sigma))
                .collect::<Option<_>>()?,
        ),
    })
}

/// Finiteness witness: integers within `[-max_int, max_int]` and functional
/// nesting at most `max_nesting`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UniverseBounds {
    pub max_int: u64,
    pub max_nesting: usize,
}

impl Default for UniverseBounds {
    fn default() -> Self {
        UniverseBounds {
            max_int: 1000,
            max_nesting: 4,
        }
    }
}

impl UniverseBounds {
    pub fn new(max_int: u64, max_nesting: usize) -> Self {
        UniverseBounds {
            max_int,
            max_nesting,
        }
    }

    /// Why `t` falls outside the bounds, if it does.
    pub fn violation(&self, t: &GroundTerm) -> Option<String> {
        if let Some(m) = t.max_abs_integer() {
            if m > BigInt::from(self.max_int) {
                return Some(format!("integer magnitude {m} above {}", self.max_int));
            }
        }
        let d = t.depth();
        if d > self.max_nesting {
            return Some(format!("nesting depth {d} above {}", self.max_nesting));
        }
        None
    }

    pub fn admits(&self, t: &GroundTerm) -> bool {
        self.violation(t).is_none()
    }
}
