//! Recursive-descent parser for the polynomial / rational-function text form.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/') unary)*`,
//! `unary := ('-'|'+') unary | power`, `power := atom ('^' '-'? int)?`,
//! `atom := int | letter | '(' expr ')'`.

use num_bigint::BigInt;

use super::polynomial::Polynomial;
use super::rational::RationalFunction;
use super::CoeffError;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> CoeffError {
        CoeffError::Parse { pos: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalFunction, CoeffError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction, CoeffError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs).map_err(|_| self.err("division by zero"))?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFunction, CoeffError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction, CoeffError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = self.integer()?;
        let e: i32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
        base.powi(if neg { -e } else { e }).map_err(|_| self.err("division by zero"))
    }

    fn integer(&mut self) -> Result<BigInt, CoeffError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<RationalFunction, CoeffError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RationalFunction::from_rational(n.into()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                if self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric()) {
                    return Err(self.err("indeterminates are single letters"));
                }
                Ok(RationalFunction::from_poly(Polynomial::var(c as char)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub fn parse_rational_function(s: &str) -> Result<RationalFunction, CoeffError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

pub fn parse_polynomial(s: &str) -> Result<Polynomial, CoeffError> {
    let f = parse_rational_function(s)?;
    f.as_polynomial().cloned().ok_or(CoeffError::NotPolynomial(s.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_canonical_form() {
        let s = "-q^3*t - q^2*t^2 + q^2 + q*t + t^2";
        assert_eq!(parse_polynomial(s).unwrap().to_string(), s);
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_polynomial("-q^2").unwrap().to_string(), "-q^2");
        assert_eq!(parse_polynomial("2*q - (1 - t)").unwrap().to_string(), "2*q + t - 1");
        assert_eq!(parse_polynomial("1/2*q").unwrap().to_string(), "1/2*q");
        assert_eq!(parse_rational_function("q^-1").unwrap().to_string(), "1/q");
    }

    #[test]
    fn errors() {
        assert!(parse_polynomial("q +").is_err());
        assert!(parse_polynomial("qt").is_err());
        assert!(parse_polynomial("1/q").is_err());
        assert!(parse_rational_function("1/(q - q)").is_err());
    }
}
