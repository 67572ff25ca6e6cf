//! Exact log-polynomials: finite sums of `c * t^m * (log t)^j` with rational `c`,
//! integer `m` and non-negative `j`.
//!
//! The ring is closed under differentiation, which is what lets every Wronskian in
//! this crate be computed symbolically. Values are kept in canonical form at all
//! times: terms are stored in a `BTreeMap` keyed by `(t_power, log_power)` and no
//! zero coefficient is ever stored, so structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::precision::Precision;

mod text;

/// Guard bits carried internally by [`LogPoly::eval`] before rounding to the requested width.
const EVAL_GUARD_BITS: u32 = 32;

/// Exponents of one term `t^t_power * (log t)^log_power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub t_power: i32,
    pub log_power: u32,
}

impl Monomial {
    pub const fn new(t_power: i32, log_power: u32) -> Self {
        Monomial { t_power, log_power }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LogPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl LogPoly {
    pub fn zero() -> Self {
        LogPoly::default()
    }

    pub fn one() -> Self {
        LogPoly::constant(Rational::from(1))
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        LogPoly::term(c, 0, 0)
    }

    /// The identity function `t`.
    pub fn t() -> Self {
        LogPoly::term(1, 1, 0)
    }

    /// `log t`.
    pub fn log() -> Self {
        LogPoly::term(1, 0, 1)
    }

    pub fn term(coeff: impl Into<Rational>, t_power: i32, log_power: u32) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(Monomial::new(t_power, log_power), coeff);
        }
        LogPoly { terms }
    }

    /// Like [`LogPoly::term`] but with a signed log exponent, which must not be negative.
    pub fn try_term(coeff: impl Into<Rational>, t_power: i32, log_power: i64) -> Result<Self> {
        let log_power = u32::try_from(log_power).map_err(|_| Error::NegativeLogPower)?;
        Ok(LogPoly::term(coeff, t_power, log_power))
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<Rational>,
    {
        let mut out = LogPoly::zero();
        for (m, c) in terms {
            out.add_term(m, c.into());
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c == 0 {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if *existing == 0 {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic `(t_power, log_power)`) order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, t_power: i32, log_power: u32) -> Rational {
        self.terms
            .get(&Monomial::new(t_power, log_power))
            .cloned()
            .unwrap_or_default()
    }

    /// Largest power of `log t` present, `None` for the zero polynomial.
    pub fn log_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.log_power).max()
    }

    /// Single power of `t` shared by every term, if there is one.
    pub fn common_t_power(&self) -> Option<i32> {
        let mut powers = self.terms.keys().map(|m| m.t_power);
        let first = powers.next()?;
        powers.all(|p| p == first).then_some(first)
    }

    pub fn scale(&self, c: &Rational) -> LogPoly {
        if *c == 0 {
            return LogPoly::zero();
        }
        LogPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, Rational::from(v * c)))
                .collect(),
        }
    }

    /// Multiply by `t^shift`.
    pub fn shift_t(&self, shift: i32) -> LogPoly {
        LogPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (Monomial::new(m.t_power + shift, m.log_power), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> LogPoly {
        let mut acc = LogPoly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact derivative with respect to `t`.
    ///
    /// `d/dt [t^m (log t)^j] = m t^(m-1) (log t)^j + j t^(m-1) (log t)^(j-1)`.
    pub fn diff(&self) -> LogPoly {
        let mut out = LogPoly::zero();
        for (m, c) in &self.terms {
            if m.t_power != 0 {
                out.add_term(
                    Monomial::new(m.t_power - 1, m.log_power),
                    Rational::from(c * m.t_power),
                );
            }
            if m.log_power > 0 {
                out.add_term(
                    Monomial::new(m.t_power - 1, m.log_power - 1),
                    Rational::from(c * m.log_power),
                );
            }
        }
        out
    }

    /// `order`-th derivative.
    pub fn diff_n(&self, order: usize) -> LogPoly {
        (0..order).fold(self.clone(), |p, _| p.diff())
    }

    /// Numeric value at `t > 0`.
    ///
    /// Terms are summed in canonical order with guard bits and the sum is rounded once
    /// to `precision`.
    pub fn eval(&self, t: &Float, precision: Precision) -> Result<Float> {
        if t.cmp0() != Some(Ordering::Greater) {
            return Err(Error::NonPositiveArgument(t.to_f64().to_string()));
        }
        let work = precision.widened(EVAL_GUARD_BITS).bits();
        let t = Float::with_val(work, t);
        let ln_t = Float::with_val(work, t.ln_ref());
        let mut sum = Float::with_val(work, 0);
        for (m, c) in &self.terms {
            let mut term = Float::with_val(work, c);
            if m.t_power != 0 {
                term *= Float::with_val(work, (&t).pow(m.t_power));
            }
            if m.log_power != 0 {
                term *= Float::with_val(work, (&ln_t).pow(m.log_power));
            }
            sum += term;
        }
        Ok(Float::with_val(precision.bits(), sum))
    }

    /// Convenience wrapper around [`LogPoly::eval`] for `f64` arguments.
    pub fn eval_f64(&self, t: f64, precision: Precision) -> Result<Float> {
        self.eval(&Float::with_val(precision.bits(), t), precision)
    }

    /// Exact value at `t = 1`, where every term carrying `log t` vanishes.
    pub fn eval_at_one(&self) -> Rational {
        self.terms
            .iter()
            .filter(|(m, _)| m.log_power == 0)
            .fold(Rational::new(), |acc, (_, c)| acc + c)
    }

    /// Exact value at a rational point. `None` when a log term would make it transcendental
    /// (any `t != 1` with a `log t` factor present).
    pub fn eval_exact(&self, t: &Rational) -> Option<Rational> {
        if *t <= 0 {
            return None;
        }
        if *t == 1 {
            return Some(self.eval_at_one());
        }
        if self.log_degree().unwrap_or(0) > 0 {
            return None;
        }
        let mut sum = Rational::new();
        for (m, c) in &self.terms {
            let base = if m.t_power >= 0 {
                t.clone()
            } else {
                Rational::from(t.recip_ref())
            };
            let mut p = Rational::from(1);
            for _ in 0..m.t_power.unsigned_abs() {
                p *= &base;
            }
            sum += p * c;
        }
        Some(sum)
    }
}

impl From<Rational> for LogPoly {
    fn from(c: Rational) -> Self {
        LogPoly::constant(c)
    }
}

impl From<i64> for LogPoly {
    fn from(c: i64) -> Self {
        LogPoly::constant(c)
    }
}

impl<'a> Add<&'a LogPoly> for &LogPoly {
    type Output = LogPoly;

    fn add(self, rhs: &'a LogPoly) -> LogPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LogPoly> for &LogPoly {
    type Output = LogPoly;

    fn sub(self, rhs: &'a LogPoly) -> LogPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, Rational::from(-c));
        }
        out
    }
}

impl<'a> Mul<&'a LogPoly> for &LogPoly {
    type Output = LogPoly;

    fn mul(self, rhs: &'a LogPoly) -> LogPoly {
        let mut out = LogPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(
                    Monomial::new(ma.t_power + mb.t_power, ma.log_power + mb.log_power),
                    Rational::from(ca * cb),
                );
            }
        }
        out
    }
}

impl Neg for &LogPoly {
    type Output = LogPoly;

    fn neg(self) -> LogPoly {
        LogPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, Rational::from(-c)))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<LogPoly> for LogPoly {
            type Output = LogPoly;
            fn $method(self, rhs: LogPoly) -> LogPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a LogPoly> for LogPoly {
            type Output = LogPoly;
            fn $method(self, rhs: &'a LogPoly) -> LogPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LogPoly> for &LogPoly {
            type Output = LogPoly;
            fn $method(self, rhs: LogPoly) -> LogPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LogPoly {
    type Output = LogPoly;

    fn neg(self) -> LogPoly {
        -&self
    }
}

impl std::iter::Sum for LogPoly {
    fn sum<I: Iterator<Item = LogPoly>>(iter: I) -> LogPoly {
        iter.fold(LogPoly::zero(), |acc, p| &acc + &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::rational;

    fn t_log() -> LogPoly {
        LogPoly::term(1, 1, 1)
    }

    #[test]
    fn add_cancels_to_empty() {
        let sum = &LogPoly::t() + &(-LogPoly::t());
        assert!(sum.is_zero());
        assert_eq!(sum.len(), 0);
    }

    #[test]
    fn add_keeps_disjoint_terms() {
        let sum = &t_log() + &LogPoly::t();
        assert_eq!(sum.len(), 2);
        assert_eq!(sum.coeff(1, 1), 1);
        assert_eq!(sum.coeff(1, 0), 1);
    }

    #[test]
    fn add_merges_halves() {
        let half = LogPoly::term(rational(1, 2), 1, 0);
        assert_eq!(&half + &half, LogPoly::t());
    }

    #[test]
    fn mul_adds_exponents() {
        assert_eq!(&LogPoly::t() * &LogPoly::log(), t_log());
        assert_eq!(&LogPoly::term(1, -1, 0) * &LogPoly::t(), LogPoly::one());
        let p = &LogPoly::log() + &LogPoly::one();
        let expected = LogPoly::from_terms([
            (Monomial::new(0, 2), 1),
            (Monomial::new(0, 1), 2),
            (Monomial::new(0, 0), 1),
        ]);
        assert_eq!(p.pow(2), expected);
    }

    #[test]
    fn diff_rules() {
        assert_eq!(t_log().diff(), &LogPoly::log() + &LogPoly::one());
        // d/dt t (log t)^2 = (log t)^2 + 2 log t
        let x3 = LogPoly::term(1, 1, 2);
        let expected = LogPoly::from_terms([(Monomial::new(0, 2), 1), (Monomial::new(0, 1), 2)]);
        assert_eq!(x3.diff(), expected);
        assert!(LogPoly::one().diff().is_zero());
    }

    #[test]
    fn eval_examples() {
        let p = Precision::DOUBLE;
        // (ln^2 t + 2 ln t + 2) / t at t = 1
        let w13 = LogPoly::from_terms([
            (Monomial::new(-1, 2), 1),
            (Monomial::new(-1, 1), 2),
            (Monomial::new(-1, 0), 2),
        ]);
        assert_eq!(w13.eval_f64(1.0, p).unwrap(), 2);
        let e = Float::with_val(53, 1).exp();
        let v = t_log().eval(&e, p).unwrap();
        assert_eq!(v, e);
        assert_eq!(LogPoly::term(1, -1, 0).eval_f64(4.0, p).unwrap(), 0.25);
    }

    #[test]
    fn eval_rejects_non_positive() {
        let p = Precision::DOUBLE;
        assert!(matches!(
            LogPoly::t().eval_f64(0.0, p),
            Err(Error::NonPositiveArgument(_))
        ));
        assert!(matches!(
            LogPoly::t().eval_f64(-2.0, p),
            Err(Error::NonPositiveArgument(_))
        ));
    }

    #[test]
    fn exact_evaluation() {
        let p = LogPoly::from_terms([(Monomial::new(2, 0), 3), (Monomial::new(-1, 0), 1)]);
        assert_eq!(p.eval_exact(&rational(2, 1)), Some(rational(25, 2)));
        assert_eq!(t_log().eval_exact(&rational(2, 1)), None);
        assert_eq!(t_log().eval_exact(&rational(1, 1)), Some(Rational::new()));
    }

    #[test]
    fn negative_log_power_rejected() {
        assert_eq!(LogPoly::try_term(1, 0, -1), Err(Error::NegativeLogPower));
        assert_eq!(LogPoly::try_term(1, -3, 2).unwrap(), LogPoly::term(1, -3, 2));
    }

    #[test]
    fn common_power() {
        let p = LogPoly::from_terms([(Monomial::new(-1, 0), 1), (Monomial::new(-1, 3), 1)]);
        assert_eq!(p.common_t_power(), Some(-1));
        assert_eq!((&p + &LogPoly::one()).common_t_power(), None);
        assert_eq!(LogPoly::zero().common_t_power(), None);
    }
}
