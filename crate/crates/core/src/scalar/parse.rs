//! Parser for the textual scalar grammar used by fixtures and the CLI.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*        juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | 'q' | '(' expr ')'
//! ```
//!
//! Every string produced by `QScalar`'s `Display` impl parses back to the
//! same value.

use num_rational::BigRational;
use num_traits::Zero;

use super::{QScalar, ScalarError};

pub fn parse_qscalar(input: &str) -> Result<QScalar, ScalarError> {
    let mut p = Parser {
        chars: input.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
    };
    if p.chars.is_empty() {
        return Err(ScalarError::Parse("empty expression".into()));
    }
    let v = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(v)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, what: &str) -> ScalarError {
        ScalarError::Parse(format!("{what} at position {}", self.pos))
    }

    fn expr(&mut self) -> Result<QScalar, ScalarError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QScalar, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                Some(c) if c == 'q' || c == '(' || c.is_ascii_digit() => {
                    acc = acc * self.unary()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<QScalar, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let neg = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e: i32 = e
                .to_string()
                .parse()
                .map_err(|_| self.error("exponent out of range"))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<QScalar, ScalarError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn atom(&mut self) -> Result<QScalar, ScalarError> {
        match self.peek() {
            Some('q') => {
                self.pos += 1;
                Ok(QScalar::q())
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(QScalar::from_rational(self.integer()?)),
            _ => Err(self.error("expected number, 'q' or '('")),
        }
    }

    fn integer(&mut self) -> Result<BigRational, ScalarError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        let mut v = BigRational::zero();
        let ten = BigRational::from_integer(10.into());
        for d in s.chars() {
            v = v * &ten + BigRational::from_integer((d as u8 - b'0').into());
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qint;

    #[test]
    fn parses_rendered_q_integer() {
        assert_eq!(parse_qscalar("(q^2+1+q^-2)").unwrap(), qint(3));
    }

    #[test]
    fn parses_fractions_and_juxtaposition() {
        let x = parse_qscalar("(1/2*q^-2)/(q-1)").unwrap();
        assert_eq!(x.to_string(), "(1/2*q^-2)/(q-1)");
        assert_eq!(parse_qscalar("2q^3").unwrap(), parse_qscalar("2*q*q*q").unwrap());
        assert_eq!(parse_qscalar("3/2").unwrap().to_string(), "(3/2)");
        assert_eq!(parse_qscalar("-q").unwrap(), -QScalar::q());
        assert_eq!(parse_qscalar("-q^2").unwrap(), -QScalar::q_pow(2));
        assert_eq!(parse_qscalar("q^2-q^-2").unwrap(), QScalar::q_pow(2) - QScalar::q_pow(-2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_qscalar("").is_err());
        assert!(parse_qscalar("q+").is_err());
        assert!(parse_qscalar("(q").is_err());
        assert!(parse_qscalar("x").is_err());
        assert_eq!(parse_qscalar("1/(q-q)"), Err(ScalarError::DivisionByZero));
    }
}
