//! Recursive-descent reader for the text form of expressions.
//!
//! Variables are the single letters `L`, `T`, `u`, `v`; symbols are written
//! `[name]`. Juxtaposition multiplies, so `uv` and `4L[C]` are accepted.
//! Exponents are integers or parenthesized rationals such as `L^(1/5)`.

use super::laurent::{LaurentExpr, Term, Var};
use super::ratexpr::RationalExpr;
use super::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(Var),
    Sym(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(text[start..i].parse().expect("digits"))));
            }
            'L' | 'T' | 'u' | 'v' => {
                let v = match c {
                    'L' => Var::L,
                    'T' => Var::T,
                    'u' => Var::U,
                    _ => Var::V,
                };
                out.push((i, Tok::Var(v)));
                i += 1;
            }
            '[' => {
                let start = i;
                let close = text[i..].find(']').ok_or_else(|| ParseError {
                    position: start,
                    message: "unterminated symbol".into(),
                })?;
                let name = text[i + 1..i + close].trim();
                if name.is_empty() || name.contains('[') {
                    return Err(ParseError { position: start, message: "invalid symbol name".into() });
                }
                out.push((start, Tok::Sym(name.to_string())));
                i += close + 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push((i, Tok::Op(c)));
                i += 1;
            }
            _ => {
                return Err(ParseError { position: i, message: format!("unexpected character `{c}`") });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.here(), message: message.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalExpr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalExpr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.here();
                let d = self.unary()?;
                acc = acc
                    .checked_div(&d)
                    .map_err(|e| ParseError { position: at, message: e.to_string() })?;
            } else if matches!(self.peek(), Some(Tok::Var(_) | Tok::Sym(_) | Tok::Op('('))) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalExpr, ParseError> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<RationalExpr, ParseError> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.here();
        let e = self.exponent()?;
        if e.is_integer() {
            let n: i64 = e.numer().try_into().map_err(|_| ParseError { position: at, message: "exponent too large".into() })?;
            return base.powi(n).map_err(|err| ParseError { position: at, message: err.to_string() });
        }
        match base.as_laurent().and_then(LaurentExpr::as_monomial) {
            Some(Term { exps, syms, coeff }) if syms.is_empty() && coeff.is_one() => {
                let scaled = exps.map(|x| x * &e);
                Ok(LaurentExpr::monomial(&scaled, Rational::one()).into())
            }
            _ => Err(ParseError { position: at, message: "fractional power of a non-monomial".into() }),
        }
    }

    fn exponent(&mut self) -> Result<Rational, ParseError> {
        let signed_int = |p: &mut Parser| -> Result<BigInt, ParseError> {
            let neg = if p.eat('-') {
                true
            } else {
                p.eat('+');
                false
            };
            match p.peek().cloned() {
                Some(Tok::Num(n)) => {
                    p.pos += 1;
                    Ok(if neg { -n } else { n })
                }
                _ => p.err("expected integer exponent"),
            }
        };
        if self.eat('(') {
            let n = signed_int(self)?;
            let d = if self.eat('/') { signed_int(self)? } else { BigInt::one() };
            if d.is_zero() {
                return self.err("zero denominator in exponent");
            }
            if !self.eat(')') {
                return self.err("expected `)`");
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_integer(signed_int(self)?))
        }
    }

    fn primary(&mut self) -> Result<RationalExpr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RationalExpr::constant(Rational::from_integer(n)))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(RationalExpr::var(v))
            }
            Some(Tok::Sym(s)) => {
                self.pos += 1;
                Ok(RationalExpr::symbol(&s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            _ => self.err("expected a number, variable, symbol or `(`"),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<RationalExpr, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError { position: 0, message: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Parses an expression that must have no denominator.
pub fn parse_laurent(text: &str) -> Result<LaurentExpr, ParseError> {
    let e = parse_expr(text)?.simplified();
    e.as_laurent().cloned().ok_or(ParseError {
        position: 0,
        message: "expected a Laurent polynomial, found a fraction".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::format::{laurent_text, ratexpr_text};
    use crate::symbolic::rational::rat;

    #[test]
    fn juxtaposition_and_symbols() {
        let e = parse_laurent("L^2+L+1-[C]").unwrap();
        assert_eq!(laurent_text(&e), "L^2+L-[C]+1");
        let h = parse_laurent("uv-3u-3v+1").unwrap();
        assert_eq!(laurent_text(&h), "u*v-3*u-3*v+1");
        let k = parse_laurent("4L[C]").unwrap();
        assert_eq!(laurent_text(&k), "4*L*[C]");
    }

    #[test]
    fn fractional_and_negative_exponents() {
        let e = parse_laurent("L^(1/5)*T^(-1/5)").unwrap();
        assert_eq!(e, LaurentExpr::monomial(&[rat(1, 5), rat(-1, 5), rat(0, 1), rat(0, 1)], rat(1, 1)));
        let f = parse_laurent("(L^2)^(1/2)").unwrap();
        assert_eq!(f, LaurentExpr::var(Var::L));
        assert!(parse_expr("(L+1)^(1/2)").is_err());
    }

    #[test]
    fn fractions_round_trip() {
        let e = parse_expr("(L-1)/(L^3*T^2-1)").unwrap();
        let again = parse_expr(&ratexpr_text(&e)).unwrap();
        assert!(e == again);
        let q = parse_expr("1/2*L").unwrap();
        assert_eq!(laurent_text(q.numerator()), "1/2*L");
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_expr("L + x").unwrap_err();
        assert_eq!(err.position, 4);
        assert!(parse_expr("1/[C]").is_err());
        assert!(parse_expr("(L").is_err());
        assert!(parse_expr("").is_err());
    }
}
