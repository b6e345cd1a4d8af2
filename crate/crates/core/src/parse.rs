//! Expression and field-spec parsing.
//!
//! Grammar (left associative, `^` binds tightest, then unary minus, then
//! `*` `/`, then `+` `-`):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' uint)?
//! atom   := integer | 'x' | generator-name | '(' expr ')' | '-' factor
//! ```
//!
//! All arithmetic is exact rational-function arithmetic, so `3/4` and
//! `1/x` both parse through the division rule.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numfield::{BigRational, Field, FieldElement};
use crate::ratfunc::RationalFunction;

const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = vec![];
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '+' => {
                out.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Token::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Token::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digit run");
                out.push((start, Token::Int(n)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Token::Ident(src[start..i].to_string())));
            }
            _ => return Err(Error::syntax(i, format!("unexpected character '{}'", c))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    lex: Lexer,
    field: &'a Field,
    var: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.lex.tokens.get(self.lex.pos).map(|(_, t)| t)
    }

    fn peek_pos(&self) -> usize {
        self.lex
            .tokens
            .get(self.lex.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.lex.len)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.lex.tokens.get(self.lex.pos).map(|(_, t)| t.clone());
        self.lex.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?)?;
                }
                Some(Token::Slash) => {
                    self.bump();
                    acc = acc.div(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.bump();
            let pos = self.peek_pos();
            match self.bump() {
                Some(Token::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::syntax(pos, "exponent out of range"))?;
                    if e > MAX_EXPONENT {
                        return Err(Error::syntax(pos, "exponent out of range"));
                    }
                    return base.pow(e);
                }
                _ => {
                    return Err(Error::syntax(
                        pos,
                        "expected a non-negative integer exponent",
                    ))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        let pos = self.peek_pos();
        match self.bump() {
            Some(Token::Int(n)) => Ok(RationalFunction::constant(FieldElement::from_rational(
                self.field,
                BigRational::from(n),
            ))),
            Some(Token::Ident(name)) => {
                if name == self.var {
                    Ok(RationalFunction::x(self.field))
                } else if Some(name.as_str()) == self.field.generator_name() {
                    Ok(RationalFunction::constant(
                        self.field.generator().expect("extension field"),
                    ))
                } else {
                    Err(Error::UnknownSymbol(name))
                }
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::syntax(pos, "unbalanced parenthesis")),
                }
            }
            Some(Token::Minus) => Ok(self.factor()?.neg()),
            Some(tok) => Err(Error::syntax(pos, format!("unexpected token {:?}", tok))),
            None => Err(Error::syntax(pos, "unexpected end of input")),
        }
    }
}

fn parse_with_var(src: &str, field: &Field, var: &str) -> Result<RationalFunction> {
    let tokens = tokenize(src)?;
    let mut parser = Parser {
        lex: Lexer {
            tokens,
            pos: 0,
            len: src.len(),
        },
        field,
        var,
    };
    let rf = parser.expr()?;
    if parser.lex.pos != parser.lex.tokens.len() {
        return Err(Error::syntax(parser.peek_pos(), "trailing input"));
    }
    Ok(rf)
}

/// Parses an expression in the variable `x` over the given field.
pub fn parse_expression(src: &str, field: &Field) -> Result<RationalFunction> {
    parse_with_var(src, field, "x")
}

/// Parses a field spec: `Q` or `Q[name]/(monic polynomial in name)`.
pub fn parse_field(src: &str) -> Result<Field> {
    let s = src.trim();
    if s == "Q" {
        return Ok(Field::rationals());
    }
    let rest = s
        .strip_prefix("Q[")
        .ok_or_else(|| Error::syntax(0, "field spec must be Q or Q[name]/(poly)"))?;
    let close = rest
        .find(']')
        .ok_or_else(|| Error::syntax(s.len(), "missing ']' in field spec"))?;
    let name = rest[..close].trim();
    if name.is_empty()
        || name == "x"
        || !name.chars().next().unwrap().is_ascii_alphabetic()
        || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
    {
        return Err(Error::syntax(
            2,
            format!("invalid generator name '{}'", name),
        ));
    }
    let after = rest[close + 1..].trim_start();
    let inner = after
        .strip_prefix("/(")
        .ok_or_else(|| Error::syntax(s.len(), "expected '/(' after generator name"))?;
    let poly_src = inner
        .strip_suffix(')')
        .ok_or_else(|| Error::syntax(s.len(), "missing closing ')' in field spec"))?;
    let q = Field::rationals();
    let rf = parse_with_var(poly_src, &q, name)?;
    if !rf.den().is_one() {
        return Err(Error::syntax(0, "minimal polynomial must be a polynomial"));
    }
    let min_poly = rf.num().clone();
    if !min_poly.is_monic() {
        return Err(Error::NotMonic);
    }
    Field::extension(&min_poly, name)
}
