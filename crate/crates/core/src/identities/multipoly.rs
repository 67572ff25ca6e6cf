//! Sparse polynomials over the rationals in variables `z0, z1, ...`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use rug::Rational;

use crate::det::DetRing;

/// Exponent vectors are stored without trailing zeros, so polynomials in
/// different numbers of variables compare and combine directly.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn trimmed(mut exps: Vec<u32>) -> Vec<u32> {
    while exps.last() == Some(&0) {
        exps.pop();
    }
    exps
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(Vec::new(), c.into());
        p
    }

    /// The variable `z_var`.
    pub fn var(var: usize) -> Self {
        let mut exps = vec![0; var + 1];
        exps[var] = 1;
        let mut p = MultiPoly::zero();
        p.add_term(exps, Rational::from(1));
        p
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

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c == 0 {
            return;
        }
        match self.terms.entry(trimmed(exps)) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if *slot.get() == 0 {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), Rational::from(-c));
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let len = ea.len().max(eb.len());
                let exps = (0..len)
                    .map(|i| ea.get(i).unwrap_or(&0) + eb.get(i).unwrap_or(&0))
                    .collect();
                out.add_term(exps, Rational::from(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, v) in &self.terms {
            out.add_term(e.clone(), Rational::from(v * c));
        }
        out
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        (0..exp).fold(MultiPoly::constant(1), |acc, _| acc.mul(self))
    }

    /// Exact value at `point`; missing coordinates count as zero.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::new();
        'terms: for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &p) in e.iter().enumerate() {
                match point.get(i) {
                    Some(x) => {
                        for _ in 0..p {
                            term *= x;
                        }
                    }
                    None if p > 0 => continue 'terms,
                    None => {}
                }
            }
            acc += term;
        }
        acc
    }
}

impl DetRing for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::constant(1)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        MultiPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        MultiPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        MultiPoly::mul(self, other)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(if *c < 0 { " - " } else { " + " })?;
            } else if *c < 0 {
                f.write_str("-")?;
            }
            write!(f, "{}", Rational::from(c.abs_ref()))?;
            for (v, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*z{v}")?,
                    _ => write!(f, "*z{v}^{p}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::det::laplace_det;

    #[test]
    fn ring_basics() {
        let x = MultiPoly::var(0);
        let y = MultiPoly::var(1);
        let s = MultiPoly::add(&x, &y);
        let d = MultiPoly::sub(&x, &y);
        let lhs = MultiPoly::mul(&s, &d);
        let rhs = MultiPoly::sub(&x.pow(2), &y.pow(2));
        assert_eq!(lhs, rhs);
        assert!(MultiPoly::sub(&x, &x).is_zero());
        let at = [Rational::from(3), Rational::from(2)];
        assert_eq!(lhs.eval(&at), 5);
    }

    #[test]
    fn vandermonde_3() {
        let v: Vec<MultiPoly> = (0..3).map(MultiPoly::var).collect();
        let m: Vec<Vec<MultiPoly>> = (0..3)
            .map(|r| v.iter().map(|x| x.pow(r)).collect())
            .collect();
        let det = laplace_det(&m);
        let gap = |j: usize, i: usize| MultiPoly::sub(&v[j], &v[i]);
        let expected = MultiPoly::mul(&MultiPoly::mul(&gap(1, 0), &gap(2, 0)), &gap(2, 1));
        assert_eq!(det, expected);
    }

    #[test]
    fn arity_does_not_matter() {
        let x = MultiPoly::var(2);
        assert_eq!(MultiPoly::mul(&MultiPoly::constant(1), &x), x);
        let back = MultiPoly::sub(&MultiPoly::add(&x, &MultiPoly::var(5)), &MultiPoly::var(5));
        assert_eq!(back, x);
        assert_eq!(x.to_string(), "1*z2");
    }
}
