//! Small exact combinatorial helpers shared by the symbolic layers.

use rug::{Integer, Rational};

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

pub fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

/// `0! * 1! * ... * (n-1)!`, the constant shared by the full Wronskian and its minors.
pub fn factorial_product(n: u32) -> Integer {
    (0..n).map(factorial).product()
}

pub fn rational(num: impl Into<Integer>, den: impl Into<Integer>) -> Rational {
    Rational::from((num.into(), den.into()))
}

pub fn sign(exponent: usize) -> i32 {
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_products() {
        assert_eq!(factorial_product(1), 1);
        assert_eq!(factorial_product(3), 2);
        assert_eq!(factorial_product(4), 12);
        assert_eq!(factorial_product(5), 288);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, 4), 0);
    }
}
