use alloc::string::String;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, Namespace, Polynomial, VariableId};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParsePolyError {
    #[error("empty input")]
    Empty,
    #[error("unexpected character {found:?} at byte {pos}")]
    Unexpected { pos: usize, found: char },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("zero denominator at byte {0}")]
    ZeroDenominator(usize),
    #[error("number too large at byte {0}")]
    Overflow(usize),
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self) -> ParsePolyError {
        match self.peek() {
            Some(found) => ParsePolyError::Unexpected { pos: self.pos, found },
            None => ParsePolyError::UnexpectedEnd,
        }
    }

    fn take_while<F: Fn(char) -> bool>(&mut self, f: F) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if f(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn integer(&mut self) -> Result<BigInt, ParsePolyError> {
        self.skip_ws();
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(self.unexpected());
        }
        BigInt::from_str(digits).map_err(|_| ParsePolyError::Overflow(self.pos))
    }

    fn exponent(&mut self) -> Result<u32, ParsePolyError> {
        let start = self.pos;
        let e = self.integer()?;
        u32::try_from(e).map_err(|_| ParsePolyError::Overflow(start))
    }

    /// factor := integer ['/' integer] | variable ['^' integer]
    fn factor(&mut self, coeff: &mut Rational, mono: &mut Monomial) -> Result<(), ParsePolyError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat('/') {
                    let at = self.pos;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(ParsePolyError::ZeroDenominator(at));
                    }
                    d
                } else {
                    BigInt::one()
                };
                *coeff *= Rational::new(num, den);
                Ok(())
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric());
                let v = parse_variable(name)?;
                let e = if self.eat('^') { self.exponent()? } else { 1 };
                *mono = mono.mul(&Monomial::from_factors([(v, e)]));
                Ok(())
            }
            _ => Err(self.unexpected()),
        }
    }

    fn term(&mut self) -> Result<(Monomial, Rational), ParsePolyError> {
        let mut coeff = Rational::one();
        let mut mono = Monomial::one();
        self.factor(&mut coeff, &mut mono)?;
        while self.eat('*') {
            self.factor(&mut coeff, &mut mono)?;
        }
        Ok((mono, coeff))
    }
}

fn parse_variable(name: &str) -> Result<VariableId, ParsePolyError> {
    let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    let (prefix, digits) = name.split_at(split);
    let namespace = match prefix {
        "x" => Namespace::X,
        "y" => Namespace::Y,
        "z" => Namespace::Z,
        "t" => Namespace::T,
        "alpha" => Namespace::Alpha,
        _ => return Err(ParsePolyError::UnknownVariable(name.into())),
    };
    let index = if digits.is_empty() {
        0
    } else {
        digits.parse::<u32>().map_err(|_| ParsePolyError::UnknownVariable(name.into()))?
    };
    Ok(VariableId::new(namespace, index))
}

impl FromStr for VariableId {
    type Err = ParsePolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_variable(s.trim())
    }
}

impl FromStr for Polynomial {
    type Err = ParsePolyError;

    /// Parses the canonical text form, e.g. `2*z1*z2 - 1/2*x1^2 + 3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor { src: s, pos: 0 };
        cur.skip_ws();
        if cur.peek().is_none() {
            return Err(ParsePolyError::Empty);
        }
        let mut out = Polynomial::zero();
        let mut first = true;
        loop {
            cur.skip_ws();
            let negative = if cur.eat('-') {
                true
            } else if cur.eat('+') || first {
                false
            } else if cur.peek().is_none() {
                break;
            } else {
                return Err(cur.unexpected());
            };
            first = false;
            let (m, c) = cur.term()?;
            out.add_term(m, if negative { -c } else { c });
            cur.skip_ws();
            if cur.peek().is_none() {
                break;
            }
        }
        Ok(out)
    }
}
