//! Tokenizer for the ASP-Core-2 lexical table.
//!
//! Matching is longest-match over the table's Flex patterns. Comments and
//! blanks are recognised but not emitted; [`tokenize_with_trivia`] keeps them
//! for tools that need to reproduce the input byte for byte.

use std::fmt;

use serde::Serialize;

use crate::error::LexError;

/// Prefix reserved for auxiliary predicate and function names introduced by
/// rewriting. It cannot be produced by the `ID` pattern.
pub const AUX_PREFIX: &str = "__aux_";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TokenKind {
    Id,
    Variable,
    String,
    Number,
    AnonymousVariable,
    Dot,
    Comma,
    QueryMark,
    Colon,
    Semicolon,
    Or,
    Naf,
    Cons,
    Wcons,
    Plus,
    Minus,
    Times,
    Div,
    At,
    ParenOpen,
    ParenClose,
    SquareOpen,
    SquareClose,
    CurlyOpen,
    CurlyClose,
    Equal,
    Unequal,
    Less,
    Greater,
    LessOrEq,
    GreaterOrEq,
    AggregateCount,
    AggregateMax,
    AggregateMin,
    AggregateSum,
    Comment,
    MultiLineComment,
    Blank,
}

impl TokenKind {
    /// Every kind, in the order of the lexical table.
    pub const ALL: [TokenKind; 38] = {
        use TokenKind::*;
        [
            Id, Variable, String, Number, AnonymousVariable, Dot, Comma, QueryMark, Colon,
            Semicolon, Or, Naf, Cons, Wcons, Plus, Minus, Times, Div, At, ParenOpen, ParenClose,
            SquareOpen, SquareClose, CurlyOpen, CurlyClose, Equal, Unequal, Less, Greater,
            LessOrEq, GreaterOrEq, AggregateCount, AggregateMax, AggregateMin, AggregateSum,
            Comment, MultiLineComment, Blank,
        ]
    };

    pub fn name(self) -> &'static str {
        use TokenKind::*;
        match self {
            Id => "ID",
            Variable => "VARIABLE",
            String => "STRING",
            Number => "NUMBER",
            AnonymousVariable => "ANONYMOUS_VARIABLE",
            Dot => "DOT",
            Comma => "COMMA",
            QueryMark => "QUERY_MARK",
            Colon => "COLON",
            Semicolon => "SEMICOLON",
            Or => "OR",
            Naf => "NAF",
            Cons => "CONS",
            Wcons => "WCONS",
            Plus => "PLUS",
            Minus => "MINUS",
            Times => "TIMES",
            Div => "DIV",
            At => "AT",
            ParenOpen => "PAREN_OPEN",
            ParenClose => "PAREN_CLOSE",
            SquareOpen => "SQUARE_OPEN",
            SquareClose => "SQUARE_CLOSE",
            CurlyOpen => "CURLY_OPEN",
            CurlyClose => "CURLY_CLOSE",
            Equal => "EQUAL",
            Unequal => "UNEQUAL",
            Less => "LESS",
            Greater => "GREATER",
            LessOrEq => "LESS_OR_EQ",
            GreaterOrEq => "GREATER_OR_EQ",
            AggregateCount => "AGGREGATE_COUNT",
            AggregateMax => "AGGREGATE_MAX",
            AggregateMin => "AGGREGATE_MIN",
            AggregateSum => "AGGREGATE_SUM",
            Comment => "COMMENT",
            MultiLineComment => "MULTI_LINE_COMMENT",
            Blank => "BLANK",
        }
    }

    /// Comments and blanks carry no syntactic meaning.
    pub fn is_trivia(self) -> bool {
        matches!(
            self,
            TokenKind::Comment | TokenKind::MultiLineComment | TokenKind::Blank
        )
    }
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Location of a lexeme: byte offset and length, plus 1-based line/column.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Span {
    pub offset: usize,
    pub len: usize,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub span: Span,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct LexOptions {
    /// Accept identifiers carrying [`AUX_PREFIX`], as printed for rewritten
    /// programs. Off for user input.
    pub allow_aux: bool,
}

/// Tokenize `text`, dropping comments and blanks.
pub fn tokenize(text: &str) -> Result<Vec<Token>, LexError> {
    tokenize_with(text, LexOptions::default())
}

pub fn tokenize_with(text: &str, options: LexOptions) -> Result<Vec<Token>, LexError> {
    let mut tokens = tokenize_with_trivia(text, options)?;
    tokens.retain(|t| !t.kind.is_trivia());
    Ok(tokens)
}

/// Tokenize `text`, keeping comment and blank lexemes in the stream.
pub fn tokenize_with_trivia(text: &str, options: LexOptions) -> Result<Vec<Token>, LexError> {
    let mut lexer = Lexer {
        src: text.as_bytes(),
        text,
        pos: 0,
        line: 1,
        column: 1,
        options,
    };
    let mut tokens = Vec::new();
    while lexer.pos < lexer.src.len() {
        tokens.push(lexer.next_token()?);
    }
    Ok(tokens)
}

struct Lexer<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
    line: usize,
    column: usize,
    options: LexOptions,
}

fn is_ident_char(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

impl<'a> Lexer<'a> {
    fn peek_at(&self, offset: usize) -> Option<u8> {
        self.src.get(self.pos + offset).copied()
    }

    fn span_here(&self, len: usize) -> Span {
        Span {
            offset: self.pos,
            len,
            line: self.line,
            column: self.column,
        }
    }

    fn error(&self, len: usize, message: impl Into<String>) -> LexError {
        LexError {
            span: self.span_here(len.max(1)),
            message: message.into(),
        }
    }

    fn ident_len(&self, start: usize) -> usize {
        let mut end = start;
        while end < self.src.len() && is_ident_char(self.src[end]) {
            end += 1;
        }
        end - self.pos
    }

    fn next_token(&mut self) -> Result<Token, LexError> {
        let c = self.src[self.pos];
        let (kind, len) = match c {
            b' ' | b'\t' | b'\n' => {
                let len = self.src[self.pos..]
                    .iter()
                    .take_while(|b| matches!(b, b' ' | b'\t' | b'\n'))
                    .count();
                (TokenKind::Blank, len)
            }
            b'%' => {
                if self.peek_at(1) == Some(b'*') {
                    (TokenKind::MultiLineComment, self.multi_line_comment_len()?)
                } else {
                    // The table's pattern ends in `\n`; end of input also closes it.
                    let rest = &self.src[self.pos..];
                    let len = match rest.iter().position(|&b| b == b'\n') {
                        Some(nl) => nl + 1,
                        None => rest.len(),
                    };
                    (TokenKind::Comment, len)
                }
            }
            b'"' => (TokenKind::String, self.string_len()?),
            b'0' => (TokenKind::Number, 1),
            b'1'..=b'9' => {
                let len = self.src[self.pos..]
                    .iter()
                    .take_while(|b| b.is_ascii_digit())
                    .count();
                (TokenKind::Number, len)
            }
            b'a'..=b'z' => {
                let len = self.ident_len(self.pos + 1);
                if &self.src[self.pos..self.pos + len] == b"not" {
                    (TokenKind::Naf, len)
                } else {
                    (TokenKind::Id, len)
                }
            }
            b'A'..=b'Z' => (TokenKind::Variable, self.ident_len(self.pos + 1)),
            b'_' => {
                if self.options.allow_aux && self.src[self.pos..].starts_with(AUX_PREFIX.as_bytes())
                {
                    (TokenKind::Id, self.ident_len(self.pos + AUX_PREFIX.len()))
                } else {
                    (TokenKind::AnonymousVariable, 1)
                }
            }
            b'#' => {
                let len = self.ident_len(self.pos + 1);
                match &self.src[self.pos..self.pos + len] {
                    b"#count" => (TokenKind::AggregateCount, len),
                    b"#max" => (TokenKind::AggregateMax, len),
                    b"#min" => (TokenKind::AggregateMin, len),
                    b"#sum" => (TokenKind::AggregateSum, len),
                    _ => return Err(self.error(len, "unknown directive")),
                }
            }
            b'.' => (TokenKind::Dot, 1),
            b',' => (TokenKind::Comma, 1),
            b'?' => (TokenKind::QueryMark, 1),
            b':' => match self.peek_at(1) {
                Some(b'-') => (TokenKind::Cons, 2),
                Some(b'~') => (TokenKind::Wcons, 2),
                _ => (TokenKind::Colon, 1),
            },
            b';' => (TokenKind::Semicolon, 1),
            b'|' => (TokenKind::Or, 1),
            b'+' => (TokenKind::Plus, 1),
            b'-' => (TokenKind::Minus, 1),
            b'*' => (TokenKind::Times, 1),
            b'/' => (TokenKind::Div, 1),
            b'@' => (TokenKind::At, 1),
            b'(' => (TokenKind::ParenOpen, 1),
            b')' => (TokenKind::ParenClose, 1),
            b'[' => (TokenKind::SquareOpen, 1),
            b']' => (TokenKind::SquareClose, 1),
            b'{' => (TokenKind::CurlyOpen, 1),
            b'}' => (TokenKind::CurlyClose, 1),
            b'=' => (TokenKind::Equal, 1),
            b'!' => match self.peek_at(1) {
                Some(b'=') => (TokenKind::Unequal, 2),
                _ => return Err(self.error(1, "unexpected character '!'")),
            },
            b'<' => match self.peek_at(1) {
                Some(b'=') => (TokenKind::LessOrEq, 2),
                Some(b'>') => (TokenKind::Unequal, 2),
                _ => (TokenKind::Less, 1),
            },
            b'>' => match self.peek_at(1) {
                Some(b'=') => (TokenKind::GreaterOrEq, 2),
                _ => (TokenKind::Greater, 1),
            },
            other => {
                // Report the whole UTF-8 character, not just its first byte.
                let width = self.text[self.pos..]
                    .chars()
                    .next()
                    .map_or(1, char::len_utf8);
                let shown = if other.is_ascii_graphic() || other >= 0x80 {
                    format!("unexpected character '{}'", &self.text[self.pos..self.pos + width])
                } else {
                    format!("unexpected byte 0x{other:02x}")
                };
                return Err(self.error(width, shown));
            }
        };
        let token = Token {
            kind,
            text: self.text[self.pos..self.pos + len].to_string(),
            span: self.span_here(len),
        };
        self.advance(len);
        Ok(token)
    }

    fn advance(&mut self, len: usize) {
        for &b in &self.src[self.pos..self.pos + len] {
            if b == b'\n' {
                self.line += 1;
                self.column = 1;
            } else if b & 0xC0 != 0x80 {
                self.column += 1;
            }
        }
        self.pos += len;
    }

    /// `\"([^\"]|\\\")*\"` under longest match: a quote preceded by a
    /// backslash may either close the string or continue it; any other quote
    /// must close it.
    fn string_len(&self) -> Result<usize, LexError> {
        let rest = &self.src[self.pos..];
        let mut end = None;
        for i in 1..rest.len() {
            if rest[i] == b'"' {
                end = Some(i + 1);
                if !(i >= 2 && rest[i - 1] == b'\\') {
                    break;
                }
            }
        }
        end.ok_or_else(|| self.error(rest.len(), "unterminated string"))
    }

    /// `"%*"([^*]|\*[^%])*"*%"`. A star always consumes the following
    /// byte unless that byte is `%`.
    fn multi_line_comment_len(&self) -> Result<usize, LexError> {
        let rest = &self.src[self.pos..];
        let mut i = 2;
        while i < rest.len() {
            if rest[i] == b'*' {
                match rest.get(i + 1) {
                    Some(b'%') => return Ok(i + 2),
                    Some(_) => i += 2,
                    None => break,
                }
            } else {
                i += 1;
            }
        }
        Err(self.error(rest.len(), "unterminated multi-line comment"))
    }
}
