//! Checkers for the combinatorial, Wronskian and determinant identities behind
//! the osculating-hyperplane means, plus seeded numeric experiments.
//!
//! Exact checkers return both sides of an identity so callers can compare them
//! however they like; the suite functions turn them into [`IdentityReport`] rows.

pub mod multipoly;
mod sampling;
mod suite;

use rug::ops::Pow;
use rug::{Float, Rational};

use crate::combinat::{factorial, factorial_product};
use crate::error::{Error, Result};
use crate::logpoly::LogPoly;
use crate::numerics::determinant;
use crate::precision::Precision;
use crate::wronskian::{make_log_curve, normal_field, wronskian_full};

pub use multipoly::MultiPoly;
pub use sampling::{sample_rationals, sample_tuple, TupleSampler};
pub use suite::{
    conjecture_scan, exact_suite, numeric_suite, ulps_apart, Thresholds, MAX_SUITE_N,
};

/// Outcome of one identity row.
#[derive(Clone, Debug, PartialEq)]
pub enum Check {
    /// Symbolic or rational equality, or a property that holds or fails outright.
    Exact { holds: bool },
    /// Largest relative error seen; `threshold: None` marks a report-only row.
    Numeric {
        max_rel_error: f64,
        threshold: Option<f64>,
    },
}

impl Check {
    pub fn passed(&self) -> bool {
        match *self {
            Check::Exact { holds } => holds,
            Check::Numeric {
                max_rel_error,
                threshold,
            } => threshold.is_none_or(|t| max_rel_error < t),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub identity: String,
    pub n: Option<usize>,
    pub check: Check,
    pub instances: usize,
    pub warnings: Vec<String>,
    /// Inputs of the worst (or first failing) instance, as decimal strings.
    pub worst_instance: Option<Vec<String>>,
    /// Seed of the sampler that produced the instances, for randomized rows.
    pub seed: Option<u64>,
}

impl IdentityReport {
    pub fn exact(identity: &str, n: Option<usize>, holds: bool, instances: usize) -> Self {
        IdentityReport {
            identity: identity.to_string(),
            n,
            check: Check::Exact { holds },
            instances,
            warnings: Vec::new(),
            worst_instance: None,
            seed: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.check.passed()
    }

    /// One-line description of how to reproduce the worst instance.
    pub fn reproducer(&self) -> String {
        let mut out = self.identity.clone();
        if let Some(n) = self.n {
            out.push_str(&format!(" n={n}"));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!(" seed={seed}"));
        }
        if let Some(inputs) = &self.worst_instance {
            out.push_str(&format!(" inputs=[{}]", inputs.join(",")));
        }
        out
    }
}

/// Both sides of `sum_{k=1}^n (-1)^(k-1) / ((n+1-k)! (k-1)!) = (-1)^(n+1) / n!`.
pub fn lemma3_check(n: u32) -> (Rational, Rational) {
    let mut lhs = Rational::new();
    for k in 1..=n {
        let term = Rational::from((1, factorial(n + 1 - k) * factorial(k - 1)));
        if k % 2 == 1 {
            lhs += term;
        } else {
            lhs -= term;
        }
    }
    let rhs = Rational::from((if n % 2 == 1 { 1 } else { -1 }, factorial(n)));
    (lhs, rhs)
}

/// The two alternating sums, as polynomials in `x = log t`:
///
/// `sum_{k=1}^n (-1)^(k-1)/(k-1)! sum_{j=0}^{n-k} x^(n-1-j)/(n-k-j)!` (equal to 1) and
/// `sum_{k=2}^n (-1)^(k-1)/(k-2)! sum_{j=0}^{n-k} x^(n-j-2)/(n-k-j)!` (equal to -1).
///
/// The second sum is empty for `n = 1` and is returned as `None`.
pub fn lemma4_check(n: u32) -> (LogPoly, Option<LogPoly>) {
    let alternating = |k: u32, lead: u32, shift: u32| {
        let mut inner = LogPoly::zero();
        for j in 0..=n - k {
            let c = Rational::from((1, factorial(lead) * factorial(n - k - j)));
            inner = &inner + &LogPoly::term(c, 0, n - shift - j);
        }
        if k % 2 == 1 {
            inner
        } else {
            -inner
        }
    };
    let first = (1..=n).map(|k| alternating(k, k - 1, 1)).sum();
    let second = (n >= 2).then(|| (2..=n).map(|k| alternating(k, k - 2, 2)).sum());
    (first, second)
}

fn check_distinct_rationals(b: &[Rational]) -> Result<()> {
    for (i, x) in b.iter().enumerate() {
        if b[..i].contains(x) {
            return Err(Error::DistinctnessViolation(x.to_string()));
        }
    }
    Ok(())
}

fn vandermonde_rational(b: &[Rational], skip: Option<usize>) -> Rational {
    let mut prod = Rational::from(1);
    for j in 0..b.len() {
        for i in 0..j {
            if Some(i) != skip && Some(j) != skip {
                prod *= Rational::from(&b[j] - &b[i]);
            }
        }
    }
    prod
}

/// Both sides of
/// `sum_k (-1)^(k+1) b_k^(n-1) prod_{i<j; i,j != k} (b_j - b_i) = (-1)^(n-1) prod_{i<j} (b_j - b_i)`.
pub fn lemma7_check(b: &[Rational]) -> Result<(Rational, Rational)> {
    let n = b.len();
    if n < 3 {
        return Err(Error::BadDimension(format!("need at least 3 values, got {n}")));
    }
    check_distinct_rationals(b)?;
    let mut lhs = Rational::new();
    for (k, bk) in b.iter().enumerate() {
        let mut power = Rational::from(1);
        for _ in 0..n - 1 {
            power *= bk;
        }
        let term = power * vandermonde_rational(b, Some(k));
        // 1-based index k + 1, so the sign is (-1)^k.
        if k % 2 == 0 {
            lhs += term;
        } else {
            lhs -= term;
        }
    }
    let mut rhs = vandermonde_rational(b, None);
    if n.is_multiple_of(2) {
        rhs = -rhs;
    }
    Ok((lhs, rhs))
}

/// Replace `t -> z_t_var` and `log t -> z_log_var` in a polynomial with no negative
/// `t`-powers.
fn to_multipoly(p: &LogPoly, t_var: usize, log_var: usize) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero();
    for (m, c) in p.terms() {
        let t_power = u32::try_from(m.t_power).map_err(|_| {
            Error::DomainError(format!("negative t-power {} in {p}", m.t_power))
        })?;
        let term = MultiPoly::var(t_var)
            .pow(t_power)
            .mul(&MultiPoly::var(log_var).pow(m.log_power))
            .scale(c);
        out = out.add(&term);
    }
    Ok(out)
}

fn ln_vandermonde(n: usize, skip: Option<usize>) -> MultiPoly {
    let mut prod = MultiPoly::constant(1);
    for k in 0..n {
        for j in 0..k {
            if Some(j) != skip && Some(k) != skip {
                prod = prod.mul(&MultiPoly::var(k).sub(&MultiPoly::var(j)));
            }
        }
    }
    prod
}

fn check_determinant_dim(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::BadDimension(format!("need n >= 3, got {n}")));
    }
    Ok(())
}

/// `(n-1)(n-2)/2`, the power of every `a_j` in the determinant denominators.
fn row_scale(n: usize) -> i32 {
    ((n - 1) * (n - 2) / 2) as i32
}

/// Signed-minor rows of the log curve, each multiplied by `t^((n-1)(n-2)/2)` and
/// written in the variables `z_0..z_{n-1}` (`z_j = ln a_{j+1}`) and
/// `z_n..z_{2n-1}` (`z_{n+j} = a_{j+1}`).
fn symbolic_rows(n: usize, first_column: Option<&LogPoly>) -> Result<Vec<Vec<MultiPoly>>> {
    let curve = make_log_curve(n)?;
    let mut normal = normal_field(&curve);
    if let Some(col) = first_column {
        normal[0] = col.clone();
    }
    let scaled: Vec<LogPoly> = normal.iter().map(|w| w.shift_t(row_scale(n))).collect();
    (0..n)
        .map(|j| scaled.iter().map(|w| to_multipoly(w, n + j, j)).collect())
        .collect()
}

/// Both sides of the signed-minor determinant identity, scaled by
/// `prod_j a_j^((n-1)(n-2)/2)`: the Laplace determinant of the minors computed
/// from the curve, and `(0!...(n-1)!)^(n-2) prod_{j<k} (z_k - z_j)`.
///
/// Variables follow `z_j = ln a_{j+1}`.
pub fn prop3_symbolic(n: usize) -> Result<(MultiPoly, MultiPoly)> {
    check_determinant_dim(n)?;
    let lhs = crate::det::laplace_det(&symbolic_rows(n, None)?);
    let lead = Rational::from(factorial_product(n as u32).pow((n - 2) as u32));
    let rhs = ln_vandermonde(n, None).scale(&lead);
    Ok((lhs, rhs))
}

/// Both sides of the replaced-column determinant identity, scaled as in
/// [`prop3_symbolic`]: first column `k_n(a_j)`, closed form
/// `(-1)^(n-1) (n-1)! (0!...(n-1)!)^(n-2) sum_i (-1)^(i+1) a_i prod_{j<k; j,k != i} (z_k - z_j)`.
///
/// Variables follow `z_j = ln a_{j+1}` and `z_{n+j} = a_{j+1}`.
pub fn prop4_symbolic(n: usize) -> Result<(MultiPoly, MultiPoly)> {
    check_determinant_dim(n)?;
    let k_n = wronskian_full(&make_log_curve(n)?);
    let lhs = crate::det::laplace_det(&symbolic_rows(n, Some(&k_n))?);
    let mut sum = MultiPoly::zero();
    for i in 0..n {
        let term = MultiPoly::var(n + i).mul(&ln_vandermonde(n, Some(i)));
        sum = if i % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
    }
    let mut lead = Rational::from(factorial((n - 1) as u32) * factorial_product(n as u32).pow((n - 2) as u32));
    if n.is_multiple_of(2) {
        lead = -lead;
    }
    Ok((lhs, sum.scale(&lead)))
}

/// A numerically evaluated determinant next to its closed form.
#[derive(Clone, Debug)]
pub struct DeterminantCheck {
    pub determinant: Float,
    pub closed_form: Float,
    pub rel_error: f64,
    pub warnings: Vec<String>,
}

fn determinant_inputs(a: &[Float], precision: Precision) -> Result<(Vec<Float>, Vec<String>)> {
    check_determinant_dim(a.len())?;
    if let Some(bad) = a.iter().find(|v| v.cmp0() != Some(std::cmp::Ordering::Greater)) {
        return Err(Error::NonPositiveArgument(format!("{}", bad.to_f64())));
    }
    for (i, x) in a.iter().enumerate() {
        if a[..i].contains(x) {
            return Err(Error::DistinctnessViolation(format!("{}", x.to_f64())));
        }
    }
    let bits = precision.bits();
    let logs: Vec<Float> = a.iter().map(|x| Float::with_val(bits, x.ln_ref())).collect();
    let mut warnings = Vec::new();
    let mut min_gap = f64::INFINITY;
    for k in 0..logs.len() {
        for j in 0..k {
            min_gap = min_gap.min(Float::with_val(bits, &logs[k] - &logs[j]).abs().to_f64());
        }
    }
    if min_gap < crate::means::DEFAULT_GAP_FLOOR {
        warnings.push(format!(
            "minimum ln-gap {min_gap:.3e}: the determinant is nearly singular and its error grows"
        ));
    }
    Ok((logs, warnings))
}

fn scaled_denominator(a: &[Float], bits: u32) -> Float {
    let power = row_scale(a.len());
    a.iter().fold(Float::with_val(bits, 1), |acc, x| {
        acc * Float::with_val(bits, x.pow_ref_i32(power))
    })
}

trait PowI32 {
    fn pow_ref_i32(&self, e: i32) -> Float;
}

impl PowI32 for Float {
    fn pow_ref_i32(&self, e: i32) -> Float {
        use rug::ops::Pow;
        Float::with_val(self.prec(), self.pow(e))
    }
}

fn float_vandermonde(logs: &[Float], skip: Option<usize>, bits: u32) -> Float {
    let mut prod = Float::with_val(bits, 1);
    for k in 0..logs.len() {
        for j in 0..k {
            if Some(j) != skip && Some(k) != skip {
                prod *= Float::with_val(bits, &logs[k] - &logs[j]);
            }
        }
    }
    prod
}

fn relative(a: &Float, b: &Float) -> f64 {
    if b.is_zero() {
        return if a.is_zero() { 0.0 } else { f64::INFINITY };
    }
    (Float::with_val(a.prec(), a - b) / b).abs().to_f64()
}

fn signed_minor_matrix(a: &[Float], precision: Precision, replace_first: bool) -> Result<Vec<Vec<Float>>> {
    let curve = make_log_curve(a.len())?;
    let mut columns = normal_field(&curve);
    if replace_first {
        columns[0] = wronskian_full(&curve);
    }
    a.iter()
        .map(|x| columns.iter().map(|w| w.eval(x, precision)).collect())
        .collect()
}

/// Signed-minor determinant at the points `a`, evaluated by LU at `precision`,
/// against `(0!...(n-1)!)^(n-2) prod_{i<j} (ln a_j - ln a_i) / prod_j a_j^((n-1)(n-2)/2)`.
pub fn prop3_check(a: &[Float], precision: Precision) -> Result<DeterminantCheck> {
    let (logs, warnings) = determinant_inputs(a, precision)?;
    let n = a.len();
    let bits = precision.bits();
    let det = determinant(&signed_minor_matrix(a, precision, false)?, precision)?;
    let lead = Float::with_val(bits, factorial_product(n as u32).pow((n - 2) as u32));
    let closed = lead * float_vandermonde(&logs, None, bits) / scaled_denominator(a, bits);
    Ok(DeterminantCheck {
        rel_error: relative(&det, &closed),
        determinant: det,
        closed_form: closed,
        warnings,
    })
}

/// The same determinant with its first column replaced by `k_n(a_j)`, against
/// `(-1)^(n-1) (n-1)! (0!...(n-1)!)^(n-2) sum_i (-1)^(i+1) a_i prod_{j<k; j,k != i} (ln a_k - ln a_j)`
/// over `prod_j a_j^((n-1)(n-2)/2)`.
pub fn prop4_check(a: &[Float], precision: Precision) -> Result<DeterminantCheck> {
    let (logs, warnings) = determinant_inputs(a, precision)?;
    let n = a.len();
    let bits = precision.bits();
    let det = determinant(&signed_minor_matrix(a, precision, true)?, precision)?;
    let mut sum = Float::with_val(bits, 0);
    for (i, x) in a.iter().enumerate() {
        let term = Float::with_val(bits, x * float_vandermonde(&logs, Some(i), bits));
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let mut lead = Float::with_val(
        bits,
        factorial((n - 1) as u32) * factorial_product(n as u32).pow((n - 2) as u32),
    );
    if n.is_multiple_of(2) {
        lead = -lead;
    }
    let closed = lead * sum / scaled_denominator(a, bits);
    Ok(DeterminantCheck {
        rel_error: relative(&det, &closed),
        determinant: det,
        closed_form: closed,
        warnings,
    })
}

/// First coordinate of the intersection point by Cramer's rule: the replaced-column
/// determinant over the signed-minor determinant, both by LU.
pub fn cramer_quotient(a: &[Float], precision: Precision) -> Result<Float> {
    determinant_inputs(a, precision)?;
    let num = determinant(&signed_minor_matrix(a, precision, true)?, precision)?;
    let den = determinant(&signed_minor_matrix(a, precision, false)?, precision)?;
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::rational;

    fn floats(values: &[f64], bits: u32) -> Vec<Float> {
        values.iter().map(|&v| Float::with_val(bits, v)).collect()
    }

    #[test]
    fn lemma3_examples() {
        assert_eq!(lemma3_check(2), (rational(-1, 2), rational(-1, 2)));
        assert_eq!(lemma3_check(1), (rational(1, 1), rational(1, 1)));
        let (l, r) = lemma3_check(12);
        assert_eq!(l, r);
    }

    #[test]
    fn lemma4_examples() {
        assert_eq!(lemma4_check(1), (LogPoly::one(), None));
        let (first, second) = lemma4_check(3);
        assert_eq!(first, LogPoly::one());
        assert_eq!(second, Some(LogPoly::constant(-1)));
    }

    #[test]
    fn lemma7_examples() {
        let b: Vec<Rational> = [0, 1, 2].iter().map(|&v| Rational::from(v)).collect();
        assert_eq!(lemma7_check(&b).unwrap(), (Rational::from(2), Rational::from(2)));
        let b: Vec<Rational> = [0, 1, 2, 3].iter().map(|&v| Rational::from(v)).collect();
        let (l, r) = lemma7_check(&b).unwrap();
        assert_eq!(l, r);
        let b: Vec<Rational> = [0, 1, 1].iter().map(|&v| Rational::from(v)).collect();
        assert_eq!(lemma7_check(&b), Err(Error::DistinctnessViolation("1".into())));
        assert!(matches!(lemma7_check(&b[..2]), Err(Error::BadDimension(_))));
    }

    #[test]
    fn symbolic_determinants_n3() {
        let l = |i: usize| MultiPoly::var(i);
        let a = |i: usize| MultiPoly::var(3 + i);
        let gap = |k: usize, j: usize| l(k).sub(&l(j));
        let (lhs, rhs) = prop3_symbolic(3).unwrap();
        let hand = gap(2, 0).mul(&gap(2, 1)).mul(&gap(1, 0)).scale(&Rational::from(2));
        assert_eq!(lhs, hand);
        assert_eq!(rhs, hand);

        let (lhs, rhs) = prop4_symbolic(3).unwrap();
        let hand = a(0)
            .mul(&gap(2, 1))
            .sub(&a(1).mul(&gap(2, 0)))
            .add(&a(2).mul(&gap(1, 0)))
            .scale(&Rational::from(4));
        assert_eq!(lhs, hand);
        assert_eq!(rhs, hand);
        assert!(prop3_symbolic(2).is_err());
    }

    #[test]
    fn symbolic_determinants_n4() {
        let (lhs, rhs) = prop3_symbolic(4).unwrap();
        assert_eq!(lhs, rhs);
        let (lhs, rhs) = prop4_symbolic(4).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn numeric_determinants() {
        let p = Precision::QUAD;
        let e: Vec<Float> = (1..=3u32).map(|k| Float::with_val(113, k).exp()).collect();
        assert!(prop3_check(&e, p).unwrap().rel_error < 1e-10);
        assert!(prop4_check(&e, p).unwrap().rel_error < 1e-10);
        let a = floats(&[1.7, 3.2, 8.9, 15.5], 113);
        assert!(prop3_check(&a, p).unwrap().rel_error < 1e-8);
        assert!(prop4_check(&a, p).unwrap().rel_error < 1e-8);
        assert!(matches!(
            prop3_check(&floats(&[2.0, 2.0, 3.0], 113), p),
            Err(Error::DistinctnessViolation(_))
        ));
    }

    #[test]
    fn near_equal_pair_warns() {
        let p = Precision::QUAD;
        let a = floats(&[2.0, 2.0 * (1.0 + 1e-7), 5.0], 113);
        let check = prop4_check(&a, p).unwrap();
        assert_eq!(check.warnings.len(), 1);
        let wide = prop4_check(&a, Precision::DOUBLE).unwrap();
        let well = prop4_check(&floats(&[2.0, 3.0, 5.0], 53), Precision::DOUBLE).unwrap();
        assert!(wide.rel_error > well.rel_error);
    }

    #[test]
    fn cramer_matches_neuman() {
        let p = Precision::QUAD;
        let a = floats(&[1.7, 3.2, 8.9, 15.5], 113);
        let q = cramer_quotient(&a, p).unwrap();
        let l = crate::means::neuman_ln(&a, p).unwrap();
        assert!(relative(&q, &l) < 1e-20);
    }
}
