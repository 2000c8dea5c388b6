use num_bigint::BigInt;

use super::*;
use crate::error::{Error, ParseError};
use crate::lexer::{tokenize_with, LexOptions, Span, Token, TokenKind};

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Accept the output of rewriting and grounding: reserved auxiliary names
    /// and arbitrary terms inside aggregate elements.
    pub rewritten: bool,
}

/// Lex and parse program text.
pub fn parse_program(text: &str) -> Result<Program, Error> {
    parse_program_with(text, ParseOptions::default())
}

pub fn parse_program_with(text: &str, options: ParseOptions) -> Result<Program, Error> {
    let tokens = tokenize_with(
        text,
        LexOptions {
            allow_aux: options.rewritten,
        },
    )?;
    let end = end_span(text);
    Ok(parse_with(&tokens, end, options)?)
}

/// Parse a token stream produced by [`crate::lexer::tokenize`].
pub fn parse(tokens: &[Token]) -> Result<Program, ParseError> {
    let end = tokens
        .last()
        .map(|t| Span {
            offset: t.span.offset + t.span.len,
            len: 0,
            line: t.span.line,
            column: t.span.column + t.text.len(),
        })
        .unwrap_or(Span {
            line: 1,
            column: 1,
            ..Span::default()
        });
    parse_with(tokens, end, ParseOptions::default())
}

pub fn parse_with(tokens: &[Token], end: Span, options: ParseOptions) -> Result<Program, ParseError> {
    Parser {
        tokens,
        pos: 0,
        end,
        options,
    }
    .program()
}

fn end_span(text: &str) -> Span {
    let line = text.matches('\n').count() + 1;
    let column = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Span {
        offset: text.len(),
        len: 0,
        line,
        column,
    }
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    end: Span,
    options: ParseOptions,
}

type PResult<T> = Result<T, ParseError>;

const BINOPS: [TokenKind; 6] = [
    TokenKind::Equal,
    TokenKind::Unequal,
    TokenKind::Less,
    TokenKind::Greater,
    TokenKind::LessOrEq,
    TokenKind::GreaterOrEq,
];

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<TokenKind> {
        self.tokens.get(self.pos).map(|t| t.kind)
    }

    fn peek_at(&self, offset: usize) -> Option<TokenKind> {
        self.tokens.get(self.pos + offset).map(|t| t.kind)
    }

    fn at(&self, kind: TokenKind) -> bool {
        self.peek() == Some(kind)
    }

    fn bump(&mut self) -> &'t Token {
        let tok = &self.tokens[self.pos];
        self.pos += 1;
        tok
    }

    fn eat(&mut self, kind: TokenKind) -> bool {
        if self.at(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let (span, found) = match self.tokens.get(self.pos) {
            Some(t) => (t.span, format!("{} \"{}\"", t.kind, t.text)),
            None => (self.end, "end of input".to_string()),
        };
        ParseError {
            span,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
            message: None,
        }
    }

    fn error_msg(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            message: Some(message.into()),
            ..self.error(&[])
        }
    }

    fn expect(&mut self, kind: TokenKind) -> PResult<&'t Token> {
        if self.at(kind) {
            Ok(self.bump())
        } else {
            Err(self.error(&[kind.name()]))
        }
    }

    fn program(mut self) -> PResult<Program> {
        let mut program = Program::default();
        while self.peek().is_some() {
            if program.query.is_some() {
                return Err(self.error_msg(
                    "a query must be the last element of a program, and at most one is allowed",
                ));
            }
            self.statement(&mut program)?;
        }
        Ok(program)
    }

    fn statement(&mut self, program: &mut Program) -> PResult<()> {
        match self.peek() {
            Some(TokenKind::Cons) => {
                self.bump();
                let body = self.optional_body()?;
                self.expect(TokenKind::Dot)?;
                program.statements.push(Statement::Rule(Rule::constraint(body)));
            }
            Some(TokenKind::Wcons) => {
                self.bump();
                let body = self.optional_body()?;
                self.expect(TokenKind::Dot)?;
                self.expect(TokenKind::SquareOpen)?;
                let weight = self.term()?;
                let level = if self.eat(TokenKind::At) {
                    self.term()?
                } else {
                    Term::int(0)
                };
                let mut terms = Vec::new();
                if self.eat(TokenKind::Comma) {
                    terms = self.terms()?;
                }
                self.expect(TokenKind::SquareClose)?;
                program.statements.push(Statement::Weak(WeakConstraint {
                    body,
                    weight,
                    level,
                    terms,
                }));
            }
            Some(_) => {
                let head = self.head()?;
                if self.at(TokenKind::QueryMark) {
                    if let Head::Disjunction(atoms) = &head {
                        if atoms.len() == 1 {
                            self.bump();
                            program.query = Some(atoms[0].clone());
                            return Ok(());
                        }
                    }
                    return Err(self.error_msg("a query consists of a single classical literal"));
                }
                let body = if self.eat(TokenKind::Cons) {
                    self.optional_body()?
                } else {
                    Vec::new()
                };
                if !self.at(TokenKind::Dot) {
                    let mut expected = vec!["DOT"];
                    if body.is_empty() {
                        expected.push("CONS");
                        if matches!(head, Head::Disjunction(_)) {
                            expected.extend(["OR", "QUERY_MARK"]);
                        }
                    } else {
                        expected.push("COMMA");
                    }
                    return Err(self.error(&expected));
                }
                self.bump();
                program.statements.push(Statement::Rule(Rule { head, body }));
            }
            None => return Err(self.error(&["statement"])),
        }
        Ok(())
    }

    fn optional_body(&mut self) -> PResult<Vec<BodyLiteral>> {
        if self.at(TokenKind::Dot) {
            return Ok(Vec::new());
        }
        let mut body = vec![self.body_literal()?];
        while self.eat(TokenKind::Comma) {
            body.push(self.body_literal()?);
        }
        Ok(body)
    }

    fn head(&mut self) -> PResult<Head> {
        if self.at(TokenKind::CurlyOpen) {
            return Ok(Head::Choice(self.choice(None)?));
        }
        let start = self.pos;
        if let Some(guard) = self.try_left_guard(TokenKind::CurlyOpen) {
            return Ok(Head::Choice(self.choice(Some(guard))?));
        }
        self.pos = start;
        let mut atoms = vec![self.classical_literal()?];
        while self.eat(TokenKind::Or) {
            atoms.push(self.classical_literal()?);
        }
        Ok(Head::Disjunction(atoms))
    }

    /// Tries `<term> <binop>` followed by a token of kind `next`; on failure
    /// the position is left unspecified and the caller must reset it.
    fn try_left_guard(&mut self, next: TokenKind) -> Option<Guard> {
        let term = self.term().ok()?;
        let rel = self.binop()?;
        if self.at(next) {
            Some(Guard { rel, term })
        } else {
            None
        }
    }

    fn choice(&mut self, left: Option<Guard>) -> PResult<ChoiceAtom> {
        self.expect(TokenKind::CurlyOpen)?;
        let mut elements = Vec::new();
        if !self.at(TokenKind::CurlyClose) {
            loop {
                let atom = self.classical_literal()?;
                let condition = if self.eat(TokenKind::Colon) {
                    self.optional_naf_literals()?
                } else {
                    Vec::new()
                };
                elements.push(ChoiceElement { atom, condition });
                if !self.eat(TokenKind::Semicolon) {
                    break;
                }
            }
        }
        if !self.at(TokenKind::CurlyClose) {
            return Err(self.error(&["SEMICOLON", "CURLY_CLOSE"]));
        }
        self.bump();
        let right = self.right_guard()?;
        Ok(ChoiceAtom {
            elements,
            left,
            right,
        })
    }

    fn right_guard(&mut self) -> PResult<Option<Guard>> {
        match self.binop() {
            Some(rel) => Ok(Some(Guard {
                rel,
                term: self.term()?,
            })),
            None => Ok(None),
        }
    }

    fn binop(&mut self) -> Option<Relation> {
        let rel = match self.peek()? {
            TokenKind::Equal => Relation::Eq,
            TokenKind::Unequal => Relation::Ne,
            TokenKind::Less => Relation::Lt,
            TokenKind::Greater => Relation::Gt,
            TokenKind::LessOrEq => Relation::Le,
            TokenKind::GreaterOrEq => Relation::Ge,
            _ => return None,
        };
        self.pos += 1;
        Some(rel)
    }

    fn aggregate_function(&self) -> Option<AggregateFunction> {
        match self.peek()? {
            TokenKind::AggregateCount => Some(AggregateFunction::Count),
            TokenKind::AggregateSum => Some(AggregateFunction::Sum),
            TokenKind::AggregateMax => Some(AggregateFunction::Max),
            TokenKind::AggregateMin => Some(AggregateFunction::Min),
            _ => None,
        }
    }

    fn body_literal(&mut self) -> PResult<BodyLiteral> {
        let naf = self.eat(TokenKind::Naf);
        if self.aggregate_function().is_some() {
            let atom = self.aggregate(None)?;
            return Ok(BodyLiteral::Aggregate { naf, atom });
        }
        let start = self.pos;
        if let Ok(left) = self.term() {
            if let Some(rel) = self.binop() {
                if self.aggregate_function().is_some() {
                    let atom = self.aggregate(Some(Guard { rel, term: left }))?;
                    return Ok(BodyLiteral::Aggregate { naf, atom });
                }
                if naf {
                    self.pos = start;
                    return Err(self.error_msg("`not` cannot precede a built-in atom"));
                }
                let right = self.term()?;
                return Ok(BodyLiteral::Literal(NafLiteral::Builtin(BuiltinAtom {
                    left,
                    rel,
                    right,
                })));
            }
        }
        self.pos = start;
        let atom = self.classical_literal()?;
        Ok(BodyLiteral::Literal(NafLiteral::Classical { naf, atom }))
    }

    fn naf_literal(&mut self) -> PResult<NafLiteral> {
        if self.eat(TokenKind::Naf) {
            let atom = self.classical_literal()?;
            if self.peek().is_some_and(|k| BINOPS.contains(&k)) {
                return Err(self.error_msg("`not` cannot precede a built-in atom"));
            }
            return Ok(NafLiteral::Classical { naf: true, atom });
        }
        let start = self.pos;
        if let Ok(left) = self.term() {
            if let Some(rel) = self.binop() {
                let right = self.term()?;
                return Ok(NafLiteral::Builtin(BuiltinAtom { left, rel, right }));
            }
        }
        self.pos = start;
        Ok(NafLiteral::Classical {
            naf: false,
            atom: self.classical_literal()?,
        })
    }

    /// Condition after a COLON; may be empty before `;` or `}`.
    fn optional_naf_literals(&mut self) -> PResult<Vec<NafLiteral>> {
        if matches!(
            self.peek(),
            Some(TokenKind::Semicolon) | Some(TokenKind::CurlyClose)
        ) {
            return Ok(Vec::new());
        }
        let mut lits = vec![self.naf_literal()?];
        while self.eat(TokenKind::Comma) {
            lits.push(self.naf_literal()?);
        }
        Ok(lits)
    }

    fn aggregate(&mut self, left: Option<Guard>) -> PResult<AggregateAtom> {
        let function = self
            .aggregate_function()
            .ok_or_else(|| self.error(&["aggregate function"]))?;
        self.bump();
        self.expect(TokenKind::CurlyOpen)?;
        let mut elements = Vec::new();
        if !self.at(TokenKind::CurlyClose) {
            loop {
                elements.push(self.aggregate_element()?);
                if !self.eat(TokenKind::Semicolon) {
                    break;
                }
            }
        }
        if !self.at(TokenKind::CurlyClose) {
            return Err(self.error(&["SEMICOLON", "CURLY_CLOSE"]));
        }
        self.bump();
        let right = self.right_guard()?;
        Ok(AggregateAtom {
            function,
            elements,
            left,
            right,
        })
    }

    fn aggregate_element(&mut self) -> PResult<AggregateElement> {
        let mut terms = Vec::new();
        if !matches!(
            self.peek(),
            Some(TokenKind::Colon) | Some(TokenKind::Semicolon) | Some(TokenKind::CurlyClose)
        ) {
            terms.push(self.element_term()?);
            while self.eat(TokenKind::Comma) {
                terms.push(self.element_term()?);
            }
        }
        let condition = if self.eat(TokenKind::Colon) {
            self.optional_naf_literals()?
        } else {
            Vec::new()
        };
        if !matches!(
            self.peek(),
            Some(TokenKind::Semicolon) | Some(TokenKind::CurlyClose)
        ) {
            let expected: &[&str] = if terms.is_empty() || !condition.is_empty() {
                &["COMMA", "SEMICOLON", "CURLY_CLOSE"]
            } else {
                &["COMMA", "COLON", "SEMICOLON", "CURLY_CLOSE"]
            };
            return Err(self.error(expected));
        }
        Ok(AggregateElement { terms, condition })
    }

    /// `<basic_term>`: a constant, a possibly negative number, or a variable.
    fn element_term(&mut self) -> PResult<Term> {
        if self.options.rewritten {
            return self.term();
        }
        let tok = match self.peek() {
            Some(_) => &self.tokens[self.pos],
            None => return Err(self.error(&["basic term"])),
        };
        let term = match tok.kind {
            TokenKind::Id => {
                if self.peek_at(1) == Some(TokenKind::ParenOpen) {
                    self.pos += 1;
                    return Err(self.error_msg(
                        "aggregate element terms must be constants or variables",
                    ));
                }
                Term::Symbol(tok.text.clone())
            }
            TokenKind::String => Term::Str(string_body(&tok.text)),
            TokenKind::Number => Term::Integer(number(&tok.text)),
            TokenKind::Minus if self.peek_at(1) == Some(TokenKind::Number) => {
                self.pos += 1;
                Term::Integer(-number(&self.tokens[self.pos].text))
            }
            TokenKind::Variable => Term::Variable(tok.text.clone()),
            TokenKind::AnonymousVariable => Term::Anonymous,
            _ => return Err(self.error(&["ID", "STRING", "NUMBER", "VARIABLE", "ANONYMOUS_VARIABLE"])),
        };
        self.pos += 1;
        if self.peek().is_some_and(|k| {
            matches!(
                k,
                TokenKind::Plus | TokenKind::Minus | TokenKind::Times | TokenKind::Div
            )
        }) {
            return Err(self.error_msg("aggregate element terms must be constants or variables"));
        }
        Ok(term)
    }

    fn classical_literal(&mut self) -> PResult<ClassicalAtom> {
        let negated = self.eat(TokenKind::Minus);
        if !self.at(TokenKind::Id) {
            let expected: &[&str] = if negated { &["ID"] } else { &["MINUS", "ID"] };
            return Err(self.error(expected));
        }
        let predicate = self.bump().text.clone();
        let mut args = Vec::new();
        if self.eat(TokenKind::ParenOpen) {
            if !self.at(TokenKind::ParenClose) {
                args = self.terms()?;
            }
            self.expect(TokenKind::ParenClose)?;
        }
        Ok(ClassicalAtom {
            negated,
            predicate,
            args,
        })
    }

    fn terms(&mut self) -> PResult<Vec<Term>> {
        let mut terms = vec![self.term()?];
        while self.eat(TokenKind::Comma) {
            terms.push(self.term()?);
        }
        Ok(terms)
    }

    fn term(&mut self) -> PResult<Term> {
        let mut left = self.product()?;
        loop {
            let op = match self.peek() {
                Some(TokenKind::Plus) => ArithOp::Add,
                Some(TokenKind::Minus) => ArithOp::Sub,
                _ => return Ok(left),
            };
            self.bump();
            let right = self.product()?;
            left = Term::Binary(op, Box::new(left), Box::new(right));
        }
    }

    fn product(&mut self) -> PResult<Term> {
        let mut left = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(TokenKind::Times) => ArithOp::Mul,
                Some(TokenKind::Div) => ArithOp::Div,
                _ => return Ok(left),
            };
            self.bump();
            let right = self.unary()?;
            left = Term::Binary(op, Box::new(left), Box::new(right));
        }
    }

    fn unary(&mut self) -> PResult<Term> {
        if self.eat(TokenKind::Minus) {
            if self.at(TokenKind::Number) {
                return Ok(Term::Integer(-number(&self.bump().text)));
            }
            return Ok(Term::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> PResult<Term> {
        let Some(kind) = self.peek() else {
            return Err(self.error(&["term"]));
        };
        let tok = self.bump();
        Ok(match kind {
            TokenKind::Id => {
                let name = tok.text.clone();
                if self.eat(TokenKind::ParenOpen) {
                    let args = if self.at(TokenKind::ParenClose) {
                        Vec::new()
                    } else {
                        self.terms()?
                    };
                    self.expect(TokenKind::ParenClose)?;
                    Term::function(&name, args)
                } else {
                    Term::Symbol(name)
                }
            }
            TokenKind::Number => Term::Integer(number(&tok.text)),
            TokenKind::String => Term::Str(string_body(&tok.text)),
            TokenKind::Variable => Term::Variable(tok.text.clone()),
            TokenKind::AnonymousVariable => Term::Anonymous,
            TokenKind::ParenOpen => {
                let inner = self.term()?;
                self.expect(TokenKind::ParenClose)?;
                inner
            }
            _ => {
                self.pos -= 1;
                return Err(self.error(&["term"]));
            }
        })
    }
}

fn number(text: &str) -> BigInt {
    text.parse().expect("NUMBER lexeme is a decimal literal")
}

fn string_body(lexeme: &str) -> String {
    lexeme[1..lexeme.len() - 1].to_string()
}
