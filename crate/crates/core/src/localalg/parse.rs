//! Polynomial grammar: rational constants, variables `x` and `y`, the
//! operators `+ - * / ^` and parentheses. Division is only by nonzero
//! constants; exponents are nonnegative integer literals.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::TruncatedPolynomial;
use crate::{Error, Result};

const MAX_EXPONENT: u64 = 1 << 16;

/// Parses `input` as a polynomial read modulo `<x, y>^truncation`.
pub fn parse_polynomial(input: &str, truncation: u32) -> Result<TruncatedPolynomial> {
    if truncation == 0 {
        return Err(Error::InvalidInput("truncation must be positive".to_string()));
    }
    let tokens = tokenize(input)?;
    let mut parser = Parser { tokens, pos: 0, truncation, input_len: input.len() };
    let p = parser.expr()?;
    if let Some((offset, tok)) = parser.tokens.get(parser.pos) {
        return Err(Error::Parse { position: *offset, message: format!("unexpected `{tok:?}`") });
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Number(BigInt),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        let tok = match c {
            c if c.is_whitespace() => continue,
            '0'..='9' => {
                let mut digits = String::from(c);
                while let Some(&(_, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    digits.push(d);
                    chars.next();
                }
                Token::Number(digits.parse().expect("ascii digits"))
            }
            'x' => Token::X,
            'y' => Token::Y,
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::Open,
            ')' => Token::Close,
            other => {
                return Err(Error::Parse { position: i, message: format!("unexpected character `{other}`") })
            }
        };
        out.push((i, tok));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    truncation: u32,
    input_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.input_len, |(o, _)| *o)
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse { position: self.offset(), message: message.to_string() }
    }

    fn expr(&mut self) -> Result<TruncatedPolynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<TruncatedPolynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    let divisor = self.unary()?;
                    let c = constant_value(&divisor)
                        .ok_or(Error::Parse { position: at, message: "division by a non-constant".to_string() })?;
                    if c.is_zero() {
                        return Err(Error::Parse { position: at, message: "division by zero".to_string() });
                    }
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<TruncatedPolynomial> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<TruncatedPolynomial> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek().cloned() {
            Some(Token::Number(n)) => {
                let e = u64::try_from(&n).ok().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| self.error("exponent too large"))?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => Err(self.error("expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<TruncatedPolynomial> {
        let n = self.truncation;
        let tok = self.peek().cloned().ok_or_else(|| self.error("unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Token::Number(v) => Ok(TruncatedPolynomial::constant(BigRational::from_integer(v), n)),
            Token::X => Ok(TruncatedPolynomial::x(n)),
            Token::Y => Ok(TruncatedPolynomial::y(n)),
            Token::Open => {
                let inner = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.error("expected a number, variable or `(`"))
            }
        }
    }
}

fn constant_value(p: &TruncatedPolynomial) -> Option<BigRational> {
    match p.terms().len() {
        0 => Some(BigRational::zero()),
        1 => p.terms().get(&super::Monomial::ONE).cloned(),
        _ => None,
    }
}
