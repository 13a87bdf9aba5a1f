//! Recursive-descent parser for the growth-expression grammar.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := ['-'] factor (('*'|'/') factor)*
//! factor := atom ['^' number]
//! atom   := number | 'n' | '(' expr ')' | func
//! func   := ('log2'|'ln'|'log10'|'sin') '(' expr ')'
//!         | ('log_b'|'exp_b') '(' number ',' expr ')'
//! ```
//!
//! Precedence is `^` > unary minus > `* /` > `+ -`. A unary minus on a literal
//! folds into the constant; on anything else it becomes `Mul(Const(-1), x)`.

use std::fmt;

use super::GrowthExpr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    /// Well-formed input outside the admissible function class.
    Domain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::Domain => "domain error",
        };
        write!(f, "{kind} at offset {}: {}", self.offset, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(v) => write!(f, "number {v}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

impl std::error::Error for ParseError {}

fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        kind: ParseErrorKind::Syntax,
        offset,
        message: message.into(),
    }
}

fn domain(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        kind: ParseErrorKind::Domain,
        offset,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let literal = &text[start..i];
                let value: f64 = literal
                    .parse()
                    .map_err(|_| syntax(start, format!("malformed number '{literal}'")))?;
                out.push((Tok::Num(value), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character '{ch}'")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                self.offset(),
                format!("expected {want}, found {}", self.peek()),
            ))
        }
    }

    fn expr(&mut self) -> Result<GrowthExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = lhs + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    lhs = lhs - self.term()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<GrowthExpr, ParseError> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut lhs = self.factor()?;
        if negate {
            lhs = match lhs {
                GrowthExpr::Const(c) => GrowthExpr::Const(-c),
                other => GrowthExpr::Const(-1.0) * other,
            };
        }
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = lhs * self.factor()?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    let rhs = self.factor()?;
                    if rhs == GrowthExpr::Const(0.0) {
                        return Err(domain(at, "division by literal zero"));
                    }
                    lhs = lhs / rhs;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<GrowthExpr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let exponent = match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                v
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                match inner {
                    GrowthExpr::Const(v) => v,
                    _ => return Err(domain(at, "exponent must be a numeric literal")),
                }
            }
            Tok::Ident(_) => {
                self.atom()?;
                return Err(domain(at, "exponent must be a numeric literal"));
            }
            other => return Err(syntax(at, format!("expected exponent, found {other}"))),
        };
        Ok(base.pow(exponent))
    }

    fn literal_base(&mut self, func: &str) -> Result<(f64, usize), ParseError> {
        let at = self.offset();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok((if negative { -v } else { v }, at))
            }
            Tok::Ident(_) | Tok::LParen => {
                Err(domain(at, format!("{func} base must be a numeric literal")))
            }
            other => Err(syntax(at, format!("expected base of {func}, found {other}"))),
        }
    }

    fn atom(&mut self) -> Result<GrowthExpr, ParseError> {
        let (tok, at) = self.bump();
        match tok {
            Tok::Num(v) => Ok(GrowthExpr::Const(v)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(name) => match name.as_str() {
                "n" => Ok(GrowthExpr::Var),
                "log2" | "ln" | "log10" | "sin" => {
                    self.expect(Tok::LParen)?;
                    let arg = Box::new(self.expr()?);
                    self.expect(Tok::RParen)?;
                    Ok(match name.as_str() {
                        "log2" => GrowthExpr::Log { base: 2.0, arg },
                        "ln" => GrowthExpr::Log {
                            base: std::f64::consts::E,
                            arg,
                        },
                        "log10" => GrowthExpr::Log { base: 10.0, arg },
                        _ => GrowthExpr::Sin(arg),
                    })
                }
                "log_b" | "exp_b" => {
                    self.expect(Tok::LParen)?;
                    let (base, base_at) = self.literal_base(&name)?;
                    if !base.is_finite() || base <= 1.0 {
                        let what = if name == "log_b" {
                            "logarithm"
                        } else {
                            "exponential"
                        };
                        return Err(domain(
                            base_at,
                            format!("{what} base must be greater than 1, got {base}"),
                        ));
                    }
                    self.expect(Tok::Comma)?;
                    let arg = Box::new(self.expr()?);
                    self.expect(Tok::RParen)?;
                    Ok(if name == "log_b" {
                        GrowthExpr::Log { base, arg }
                    } else {
                        GrowthExpr::Exp { base, arg }
                    })
                }
                other => Err(syntax(at, format!("unknown identifier '{other}'"))),
            },
            Tok::Eof => Err(syntax(at, "unexpected end of input, expected expression")),
            other => Err(syntax(at, format!("expected expression, found {other}"))),
        }
    }
}

/// Parse a growth expression. Whitespace is insignificant.
pub fn parse(text: &str) -> Result<GrowthExpr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(syntax(p.offset(), format!("unexpected {}", p.peek())));
    }
    Ok(e)
}
