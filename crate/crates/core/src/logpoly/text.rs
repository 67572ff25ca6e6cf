//! Plain-text form `c*t^m*L^j + c*t^m*L^j - ...`, where `L` stands for `log t`.
//!
//! Printing always emits all three factors of every term in canonical order, so
//! `parse(print(p)) == p` and the printed form is a stable golden-file format. The
//! parser is more lenient: factors may be omitted or repeated (`t*L`, `2*t^-1`,
//! `L^2*t`) and a bare `0` is the zero polynomial.

use std::fmt;
use std::str::FromStr;

use rug::Rational;

use super::{LogPoly, Monomial};
use crate::error::{Error, Result};

impl fmt::Display for LogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = *c < 0;
            let magnitude = Rational::from(c.abs_ref());
            match (i, negative) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            write!(f, "{}*t^{}*L^{}", magnitude, m.t_power, m.log_power)?;
        }
        Ok(())
    }
}

impl FromStr for LogPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s).parse()
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in '{}'", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn parse(mut self) -> Result<LogPoly> {
        if self.chars.is_empty() {
            return Err(self.err("empty input"));
        }
        let mut out = LogPoly::zero();
        let mut first = true;
        while self.peek().is_some() {
            let negative = match self.peek() {
                Some('+') => {
                    self.bump();
                    false
                }
                Some('-') => {
                    self.bump();
                    true
                }
                _ if first => false,
                _ => return Err(self.err("expected '+' or '-'")),
            };
            first = false;
            let (m, mut c) = self.term()?;
            if negative {
                c = -c;
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, Rational)> {
        let mut coeff = Rational::from(1);
        let mut t_power: i64 = 0;
        let mut log_power: i64 = 0;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= self.rational()?,
                Some('t') => {
                    self.bump();
                    t_power += self.exponent()?;
                }
                Some('L') => {
                    self.bump();
                    log_power += self.exponent()?;
                }
                _ => return Err(self.err("expected a coefficient, 't' or 'L'")),
            }
            if self.peek() == Some('*') {
                self.bump();
            } else {
                break;
            }
        }
        let t_power = i32::try_from(t_power).map_err(|_| self.err("t exponent out of range"))?;
        if log_power < 0 {
            return Err(Error::NegativeLogPower);
        }
        let log_power =
            u32::try_from(log_power).map_err(|_| self.err("L exponent out of range"))?;
        Ok((Monomial::new(t_power, log_power), coeff))
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        s
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.digits();
        let mut text = num;
        if self.peek() == Some('/') {
            self.bump();
            let den = self.digits();
            if den.is_empty() {
                return Err(self.err("missing denominator"));
            }
            text.push('/');
            text.push_str(&den);
        }
        text.parse::<Rational>()
            .map_err(|_| self.err("invalid rational coefficient"))
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.bump();
        let negative = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let digits = self.digits();
        let value: i64 = digits
            .parse()
            .map_err(|_| self.err("invalid exponent"))?;
        Ok(if negative { -value } else { value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::rational;

    #[test]
    fn prints_canonical_form() {
        let p = LogPoly::from_terms([
            (Monomial::new(-1, 2), rational(1, 1)),
            (Monomial::new(-1, 1), rational(2, 1)),
            (Monomial::new(-1, 0), rational(2, 1)),
        ]);
        assert_eq!(p.to_string(), "2*t^-1*L^0 + 2*t^-1*L^1 + 1*t^-1*L^2");
        let q = LogPoly::term(rational(-3, 2), 0, 0);
        assert_eq!(q.to_string(), "-3/2*t^0*L^0");
        assert_eq!(LogPoly::zero().to_string(), "0");
    }

    #[test]
    fn parses_lenient_forms() {
        assert_eq!("t*L".parse::<LogPoly>().unwrap(), LogPoly::term(1, 1, 1));
        assert_eq!("0".parse::<LogPoly>().unwrap(), LogPoly::zero());
        assert_eq!(
            "L^2*t - 1/2*t^-1".parse::<LogPoly>().unwrap(),
            &LogPoly::term(1, 1, 2) - &LogPoly::term(rational(1, 2), -1, 0)
        );
        assert_eq!("t - t".parse::<LogPoly>().unwrap(), LogPoly::zero());
        assert_eq!("-2".parse::<LogPoly>().unwrap(), LogPoly::constant(-2));
    }

    #[test]
    fn rejects_garbage() {
        assert!("".parse::<LogPoly>().is_err());
        assert!("t +".parse::<LogPoly>().is_err());
        assert!("x".parse::<LogPoly>().is_err());
        assert!("1/".parse::<LogPoly>().is_err());
        assert!("3/0".parse::<LogPoly>().is_err());
        assert!("t L".parse::<LogPoly>().is_err());
        assert_eq!("L^-1".parse::<LogPoly>(), Err(Error::NegativeLogPower));
    }

    #[test]
    fn round_trips() {
        let p = LogPoly::from_terms([
            (Monomial::new(3, 0), rational(48, 1)),
            (Monomial::new(-6, 4), rational(-7, 3)),
        ]);
        assert_eq!(p.to_string().parse::<LogPoly>().unwrap(), p);
    }
}
