//! Curves with log-polynomial components, their derivative tables, Wronskian
//! minors, full Wronskians and the closed forms they reduce to on the log curve
//! `<t, t log t, ..., t (log t)^(n-1)>`.

use std::fmt;

use rug::{Integer, Rational};

use crate::combinat::{binomial, factorial, factorial_product, sign};
use crate::det::laplace_det;
use crate::error::{Error, Result};
use crate::logpoly::LogPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveKind {
    /// `<t, t log t, ..., t (log t)^(n-1)>`.
    Log,
    /// `<t, t^2, ..., t^(n-1), log t>`.
    Conjecture,
    /// `<t^e1, ..., t^en>`.
    Monomial,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    components: Vec<LogPoly>,
    label: String,
    kind: CurveKind,
}

impl Curve {
    pub fn new(label: impl Into<String>, components: Vec<LogPoly>) -> Result<Self> {
        Curve::with_kind(label.into(), components, CurveKind::Custom)
    }

    fn with_kind(label: String, components: Vec<LogPoly>, kind: CurveKind) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::BadDimension(format!(
                "a curve needs at least 2 components, got {}",
                components.len()
            )));
        }
        if let Some(i) = components.iter().position(LogPoly::is_zero) {
            return Err(Error::BadParameter(format!("component x_{} is zero", i + 1)));
        }
        Ok(Curve {
            components,
            label,
            kind,
        })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[LogPoly] {
        &self.components
    }

    /// Component `x_k`, 1-based.
    pub fn component(&self, k: usize) -> Result<&LogPoly> {
        if k == 0 || k > self.dim() {
            return Err(Error::BadIndex {
                index: k,
                len: self.dim(),
            });
        }
        Ok(&self.components[k - 1])
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    /// Component-wise derivative `alpha^(order)(t)`.
    pub fn derivative(&self, order: usize) -> Vec<LogPoly> {
        self.components.iter().map(|c| c.diff_n(order)).collect()
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <", self.label)?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(">")
    }
}

/// `x_k(t) = t (log t)^(k-1)`.
pub fn log_component(k: usize) -> LogPoly {
    LogPoly::term(1, 1, (k - 1) as u32)
}

pub fn make_log_curve(n: usize) -> Result<Curve> {
    if n < 2 {
        return Err(Error::BadDimension(format!("log curve needs n >= 2, got {n}")));
    }
    Curve::with_kind(
        format!("log{n}"),
        (1..=n).map(log_component).collect(),
        CurveKind::Log,
    )
}

pub fn make_conjecture_curve(n: usize) -> Result<Curve> {
    if n < 3 {
        return Err(Error::BadDimension(format!(
            "conjecture curve needs n >= 3, got {n}"
        )));
    }
    let mut components: Vec<LogPoly> = (1..n).map(|e| LogPoly::term(1, e as i32, 0)).collect();
    components.push(LogPoly::log());
    Curve::with_kind(format!("conjecture{n}"), components, CurveKind::Conjecture)
}

pub fn make_monomial_curve(exponents: &[i32]) -> Result<Curve> {
    if exponents.contains(&0) {
        return Err(Error::BadParameter(
            "exponent 0 gives a constant component".into(),
        ));
    }
    for (i, e) in exponents.iter().enumerate() {
        if exponents[..i].contains(e) {
            return Err(Error::BadDimension(format!("duplicate exponent {e}")));
        }
    }
    let label = format!(
        "monomial[{}]",
        exponents
            .iter()
            .map(i32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    Curve::with_kind(
        label,
        exponents.iter().map(|&e| LogPoly::term(1, e, 0)).collect(),
        CurveKind::Monomial,
    )
}

/// Exact derivatives `x_k^(r)(t)` for `0 <= r <= max_order`, computed by repeated
/// differentiation of the curve components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivTable {
    rows: Vec<Vec<LogPoly>>,
}

impl DerivTable {
    pub fn new(curve: &Curve, max_order: usize) -> Self {
        let mut rows = Vec::with_capacity(max_order + 1);
        rows.push(curve.components.clone());
        for r in 0..max_order {
            let next = rows[r].iter().map(LogPoly::diff).collect();
            rows.push(next);
        }
        DerivTable { rows }
    }

    pub fn max_order(&self) -> usize {
        self.rows.len() - 1
    }

    /// `x_k^(order)`, with `k` 1-based like the component names.
    pub fn get(&self, order: usize, k: usize) -> Option<&LogPoly> {
        self.rows.get(order)?.get(k.checked_sub(1)?)
    }

    /// Panicking form of [`DerivTable::get`].
    pub fn entry(&self, order: usize, k: usize) -> &LogPoly {
        self.get(order, k)
            .unwrap_or_else(|| panic!("no entry for order {order}, component {k}"))
    }

    pub fn row(&self, order: usize) -> &[LogPoly] {
        &self.rows[order]
    }
}

pub fn deriv_table(curve: &Curve, max_order: usize) -> DerivTable {
    DerivTable::new(curve, max_order)
}

/// Matrix whose row `r` holds the `r`-th derivatives of `funcs`.
pub fn wronskian_matrix(funcs: &[LogPoly]) -> Vec<Vec<LogPoly>> {
    let mut rows: Vec<Vec<LogPoly>> = Vec::with_capacity(funcs.len());
    if funcs.is_empty() {
        return rows;
    }
    rows.push(funcs.to_vec());
    for r in 1..funcs.len() {
        let next = rows[r - 1].iter().map(LogPoly::diff).collect();
        rows.push(next);
    }
    rows
}

pub fn wronskian(funcs: &[LogPoly]) -> LogPoly {
    laplace_det(&wronskian_matrix(funcs))
}

/// `W_{k,n}`: Wronskian of `x_1', ..., x_n'` with `x_k'` left out.
pub fn wronskian_minor(curve: &Curve, k: usize) -> Result<LogPoly> {
    let n = curve.dim();
    if k == 0 || k > n {
        return Err(Error::BadIndex { index: k, len: n });
    }
    Ok(wronskian(&minor_functions(curve, k)))
}

pub(crate) fn minor_functions(curve: &Curve, k: usize) -> Vec<LogPoly> {
    curve
        .components
        .iter()
        .enumerate()
        .filter(|(i, _)| *i + 1 != k)
        .map(|(_, c)| c.diff())
        .collect()
}

pub fn wronskian_full(curve: &Curve) -> LogPoly {
    wronskian(&curve.components)
}

/// Normal field `<W_{1,n}, -W_{2,n}, ..., (-1)^(n+1) W_{n,n}>`.
pub fn normal_field(curve: &Curve) -> Vec<LogPoly> {
    (1..=curve.dim())
        .map(|k| {
            let w = wronskian(&minor_functions(curve, k));
            if k % 2 == 1 {
                w
            } else {
                -w
            }
        })
        .collect()
}

/// `k_n(t) = (0! 1! ... (n-1)!) / t^(n(n-3)/2)`, the full Wronskian of the log curve.
pub fn full_wronskian_closed_form(n: usize) -> LogPoly {
    let n_i = n as i64;
    let power = -(n_i * (n_i - 3) / 2) as i32;
    LogPoly::term(Rational::from(factorial_product(n as u32)), power, 0)
}

/// Closed form of the log-curve minor `W_{k,n}`:
///
/// `(0!...(n-1)!) / (k-1)! * t^(-(n-2)(n-1)/2) * sum_{j=0}^{n-k} (log t)^(n-k-j) / (n-k-j)!`.
pub fn closed_form_v(k: usize, n: usize) -> Result<LogPoly> {
    if n < 2 {
        return Err(Error::BadDimension(format!("need n >= 2, got {n}")));
    }
    if k == 0 || k > n {
        return Err(Error::BadIndex { index: k, len: n });
    }
    let lead = Rational::from((factorial_product(n as u32), factorial((k - 1) as u32)));
    let t_power = -(((n - 2) * (n - 1) / 2) as i32);
    let terms = (0..=n - k).map(|j| {
        let p = (n - k - j) as u32;
        (
            crate::logpoly::Monomial::new(t_power, p),
            Rational::from((lead.numer().clone(), lead.denom() * factorial(p))),
        )
    });
    Ok(LogPoly::from_terms(terms))
}

/// `<v_{1,n}, -v_{2,n}, ..., (-1)^(n-1) v_{n,n}>`.
pub fn closed_form_normal(n: usize) -> Result<Vec<LogPoly>> {
    (1..=n)
        .map(|k| {
            let v = closed_form_v(k, n)?;
            Ok(if k % 2 == 1 { v } else { -v })
        })
        .collect()
}

fn dot(a: &[LogPoly], b: &[LogPoly]) -> LogPoly {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `[alpha . v_n - k_n, alpha' . v_n, ..., alpha^(n-1) . v_n]` on the log curve; every
/// entry is the zero polynomial when the orthogonality relations hold.
pub fn orthogonality_residuals(n: usize) -> Result<Vec<LogPoly>> {
    let curve = make_log_curve(n)?;
    let v = closed_form_normal(n)?;
    let table = DerivTable::new(&curve, n - 1);
    let mut out = Vec::with_capacity(n);
    out.push(&dot(table.row(0), &v) - &full_wronskian_closed_form(n));
    for j in 1..n {
        out.push(dot(table.row(j), &v));
    }
    Ok(out)
}

/// `a_{r,j} = (-1)^(j+1) (j-1)! C(r-2, j-1)`.
pub fn recursion_coefficient(r: usize, j: usize) -> Integer {
    let magnitude = factorial((j - 1) as u32) * binomial((r - 2) as u32, (j - 1) as u32);
    magnitude * sign(j + 1)
}

/// `x_{k+1}^(r)` on the log curve by the derivative recursion
/// `x_{k+1}^(r) = k * sum_{j=1}^{r-1} a_{r,j} / t^j * x_k^(r-j)`, `r >= 2`.
///
/// First derivatives come from `x_k' = (log t)^(k-2) (k - 1 + log t)`; nothing here
/// goes through [`LogPoly::diff`].
pub fn paper_recursion_deriv(k: usize, r: usize) -> Result<LogPoly> {
    if r < 2 {
        return Err(Error::BadOrder { order: r });
    }
    if k == 0 {
        return Err(Error::BadIndex { index: 0, len: 0 });
    }
    Ok(recursive_derivative(k + 1, r))
}

/// `x_m^(s)` for `s >= 1` without symbolic differentiation.
fn recursive_derivative(m: usize, s: usize) -> LogPoly {
    debug_assert!(m >= 1 && s >= 1);
    if s == 1 {
        return first_derivative(m);
    }
    if m == 1 {
        return LogPoly::zero();
    }
    let k = m - 1;
    let mut acc = LogPoly::zero();
    for j in 1..s {
        let coeff = Rational::from(recursion_coefficient(s, j) * k as u64);
        let inner = recursive_derivative(k, s - j);
        acc = &acc + &inner.shift_t(-(j as i32)).scale(&coeff);
    }
    acc
}

/// `x_m'(t) = (log t)^(m-2) (m - 1 + log t)`; `x_1' = 1`.
fn first_derivative(m: usize) -> LogPoly {
    if m == 1 {
        return LogPoly::one();
    }
    let p = (m - 2) as u32;
    &LogPoly::term((m - 1) as i64, 0, p) + &LogPoly::term(1, 0, p + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::det::laplace_det_by_columns;

    fn lp(s: &str) -> LogPoly {
        s.parse().unwrap()
    }

    #[test]
    fn curve_constructors() {
        let c = make_log_curve(2).unwrap();
        assert_eq!(c.components(), &[lp("t"), lp("t*L")]);
        let c = make_log_curve(3).unwrap();
        assert_eq!(c.components(), &[lp("t"), lp("t*L"), lp("t*L^2")]);
        assert!(matches!(make_log_curve(1), Err(Error::BadDimension(_))));

        let c = make_conjecture_curve(3).unwrap();
        assert_eq!(c.components(), &[lp("t"), lp("t^2"), lp("L")]);
        let c = make_conjecture_curve(4).unwrap();
        assert_eq!(c.components(), &[lp("t"), lp("t^2"), lp("t^3"), lp("L")]);
        assert!(matches!(make_conjecture_curve(2), Err(Error::BadDimension(_))));

        let c = make_monomial_curve(&[1, 2, 3, 4]).unwrap();
        assert_eq!(c.components(), &[lp("t"), lp("t^2"), lp("t^3"), lp("t^4")]);
        let c = make_monomial_curve(&[1, -1]).unwrap();
        assert_eq!(c.components(), &[lp("t"), lp("t^-1")]);
        assert!(matches!(make_monomial_curve(&[1, 1]), Err(Error::BadDimension(_))));
        assert!(make_monomial_curve(&[0, 1]).is_err());
        assert!(Curve::new("bad", vec![LogPoly::t(), LogPoly::zero()]).is_err());
    }

    #[test]
    fn derivative_table_entries() {
        let curve = make_log_curve(3).unwrap();
        let table = deriv_table(&curve, 3);
        assert_eq!(table.entry(1, 2), &lp("L + 1"));
        assert_eq!(table.entry(1, 1), &LogPoly::one());
        for k in 1..3 {
            let lhs = table.entry(2, k + 1);
            let rhs = table.entry(1, k).shift_t(-1).scale(&Rational::from(k as u32));
            assert_eq!(lhs, &rhs);
        }
        assert!(table.get(4, 1).is_none());
        assert!(table.get(1, 0).is_none());
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(paper_recursion_deriv(1, 2).unwrap(), lp("t^-1"));
        let direct = log_component(3).diff_n(3);
        assert_eq!(paper_recursion_deriv(2, 3).unwrap(), direct);
        assert_eq!(paper_recursion_deriv(1, 1), Err(Error::BadOrder { order: 1 }));
    }

    #[test]
    fn minors_of_log_curve_n3() {
        let curve = make_log_curve(3).unwrap();
        assert_eq!(wronskian_minor(&curve, 2).unwrap(), lp("2*t^-1*L + 2*t^-1"));
        assert_eq!(wronskian_minor(&curve, 3).unwrap(), lp("t^-1"));
        assert_eq!(
            wronskian_minor(&curve, 4),
            Err(Error::BadIndex { index: 4, len: 3 })
        );
    }

    #[test]
    fn quartic_minor() {
        let curve = make_monomial_curve(&[1, 2, 3, 4]).unwrap();
        assert_eq!(wronskian_minor(&curve, 1).unwrap(), lp("48*t^3"));
    }

    #[test]
    fn full_wronskians() {
        assert_eq!(wronskian_full(&make_log_curve(3).unwrap()), LogPoly::constant(2));
        assert_eq!(wronskian_full(&make_log_curve(4).unwrap()), lp("12*t^-2"));
        for n in 3..=6 {
            let w = wronskian_full(&make_log_curve(n).unwrap());
            assert_eq!(w.eval_at_one(), factorial_product(n as u32));
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_v(1, 3).unwrap(), lp("t^-1*L^2 + 2*t^-1*L + 2*t^-1"));
        assert_eq!(closed_form_v(2, 2).unwrap(), LogPoly::one());
        assert_eq!(closed_form_v(3, 3).unwrap(), lp("t^-1"));
        assert_eq!(closed_form_v(1, 2).unwrap(), lp("L + 1"));
        assert_eq!(closed_form_v(0, 3), Err(Error::BadIndex { index: 0, len: 3 }));
        assert!(matches!(closed_form_v(1, 1), Err(Error::BadDimension(_))));
    }

    #[test]
    fn normal_fields() {
        let quartic = make_monomial_curve(&[1, 2, 3, 4]).unwrap();
        assert_eq!(
            normal_field(&quartic),
            vec![lp("48*t^3"), lp("-72*t^2"), lp("48*t"), lp("-12")]
        );
        let log3 = make_log_curve(3).unwrap();
        assert_eq!(
            normal_field(&log3),
            vec![
                lp("t^-1*L^2 + 2*t^-1*L + 2*t^-1"),
                lp("-2*t^-1*L - 2*t^-1"),
                lp("t^-1")
            ]
        );
        let log2 = make_log_curve(2).unwrap();
        assert_eq!(normal_field(&log2), vec![lp("L + 1"), lp("-1")]);
    }

    #[test]
    fn orthogonality_small_cases() {
        for n in [2, 3, 4] {
            let residuals = orthogonality_residuals(n).unwrap();
            assert_eq!(residuals.len(), n);
            assert!(residuals.iter().all(LogPoly::is_zero), "n = {n}");
        }
    }

    #[test]
    fn expansion_order_independent() {
        let curve = make_log_curve(5).unwrap();
        let m = wronskian_matrix(curve.components());
        assert_eq!(laplace_det(&m), laplace_det_by_columns(&m));
    }

    #[test]
    fn recursion_coefficients() {
        // a_{r,1} = 1, a_{4,2} = -(1!)(2) = -2, a_{4,3} = 2! * 1 = 2
        assert_eq!(recursion_coefficient(4, 1), 1);
        assert_eq!(recursion_coefficient(4, 2), -2);
        assert_eq!(recursion_coefficient(4, 3), 2);
    }

    #[test]
    fn closed_form_single_power() {
        let v = closed_form_v(2, 4).unwrap();
        assert_eq!(v.common_t_power(), Some(-3));
        assert_eq!(v.coeff(-3, 2), Rational::from(12 / 2));
        assert_eq!(v.coeff(-3, 0), Rational::from(12));
    }
}
