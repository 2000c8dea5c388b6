//! Canonical ASP-Core-2 text for the AST. Output re-parses to an equal AST.

use std::fmt::{self, Display, Formatter, Write};

use super::*;

fn term_precedence(t: &Term) -> u8 {
    match t {
        Term::Binary(op, ..) => op.precedence(),
        _ => 3,
    }
}

fn write_list<T: Display>(f: &mut Formatter<'_>, items: &[T], sep: &str) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Term::Integer(n) => write!(f, "{n}"),
            Term::Symbol(s) | Term::Variable(s) => f.write_str(s),
            Term::Str(s) => write!(f, "\"{s}\""),
            Term::Anonymous => f.write_char('_'),
            Term::Neg(inner) => match **inner {
                // `-3` would re-parse as the integer -3
                Term::Integer(_) | Term::Binary(..) => write!(f, "-({inner})"),
                _ => write!(f, "-{inner}"),
            },
            Term::Binary(op, l, r) => {
                let p = op.precedence();
                if term_precedence(l) < p {
                    write!(f, "({l})")?;
                } else {
                    write!(f, "{l}")?;
                }
                f.write_str(op.symbol())?;
                if term_precedence(r) <= p {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
            Term::Function(name, args) => {
                write!(f, "{name}(")?;
                write_list(f, args, ",")?;
                f.write_char(')')
            }
        }
    }
}

impl Display for Relation {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl Display for ClassicalAtom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_char('-')?;
        }
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_char('(')?;
            write_list(f, &self.args, ",")?;
            f.write_char(')')?;
        }
        Ok(())
    }
}

impl Display for BuiltinAtom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.left, self.rel, self.right)
    }
}

impl Display for NafLiteral {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            NafLiteral::Classical { naf, atom } => {
                if *naf {
                    f.write_str("not ")?;
                }
                write!(f, "{atom}")
            }
            NafLiteral::Builtin(b) => write!(f, "{b}"),
        }
    }
}

impl Display for AggregateElement {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_list(f, &self.terms, ",")?;
        if !self.condition.is_empty() {
            if !self.terms.is_empty() {
                f.write_char(' ')?;
            }
            f.write_str(": ")?;
            write_list(f, &self.condition, ", ")?;
        } else if self.terms.is_empty() {
            // distinguishes `{:}` (one empty element) from `{}` (none)
            f.write_char(':')?;
        }
        Ok(())
    }
}

impl Display for ChoiceElement {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.atom)?;
        if !self.condition.is_empty() {
            f.write_str(" : ")?;
            write_list(f, &self.condition, ", ")?;
        }
        Ok(())
    }
}

fn write_guarded(
    f: &mut Formatter<'_>,
    left: &Option<Guard>,
    right: &Option<Guard>,
    inner: impl FnOnce(&mut Formatter<'_>) -> fmt::Result,
) -> fmt::Result {
    if let Some(g) = left {
        write!(f, "{} {} ", g.term, g.rel)?;
    }
    inner(f)?;
    if let Some(g) = right {
        write!(f, " {} {}", g.rel, g.term)?;
    }
    Ok(())
}

impl Display for AggregateAtom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_guarded(f, &self.left, &self.right, |f| {
            write!(f, "{}{{", self.function.keyword())?;
            write_list(f, &self.elements, "; ")?;
            f.write_char('}')
        })
    }
}

impl Display for ChoiceAtom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_guarded(f, &self.left, &self.right, |f| {
            f.write_char('{')?;
            write_list(f, &self.elements, "; ")?;
            f.write_char('}')
        })
    }
}

impl Display for BodyLiteral {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            BodyLiteral::Literal(l) => write!(f, "{l}"),
            BodyLiteral::Aggregate { naf, atom } => {
                if *naf {
                    f.write_str("not ")?;
                }
                write!(f, "{atom}")
            }
        }
    }
}

impl Display for Head {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Head::Disjunction(atoms) => write_list(f, atoms, " | "),
            Head::Choice(c) => write!(f, "{c}"),
        }
    }
}

impl Display for Rule {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let constraint = matches!(&self.head, Head::Disjunction(h) if h.is_empty());
        if constraint {
            f.write_str(":-")?;
            if self.body.is_empty() {
                return f.write_str(" .");
            }
            f.write_char(' ')?;
        } else {
            write!(f, "{}", self.head)?;
            if self.body.is_empty() {
                return f.write_char('.');
            }
            f.write_str(" :- ")?;
        }
        write_list(f, &self.body, ", ")?;
        f.write_char('.')
    }
}

impl Display for WeakConstraint {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(":~")?;
        if self.body.is_empty() {
            f.write_str(" .")?;
        } else {
            f.write_char(' ')?;
            write_list(f, &self.body, ", ")?;
            f.write_char('.')?;
        }
        write!(f, " [{}@{}", self.weight, self.level)?;
        for t in &self.terms {
            write!(f, ",{t}")?;
        }
        f.write_char(']')
    }
}

impl Display for Statement {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Rule(r) => write!(f, "{r}"),
            Statement::Weak(w) => write!(f, "{w}"),
        }
    }
}

/// One statement per line, query last.
impl Display for Program {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        if let Some(q) = &self.query {
            writeln!(f, "{q}?")?;
        }
        Ok(())
    }
}

pub fn pretty_print(program: &Program) -> String {
    program.to_string()
}
