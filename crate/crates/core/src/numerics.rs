//! Runtime-precision dense linear solves, determinants and bracketed root finding.

use std::cmp::Ordering;

use rug::Float;

use crate::error::{Error, Result};
pub use crate::precision::Precision;

/// Outcome of [`solve_linear`].
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub solution: Vec<Float>,
    /// `||A x - b||_inf / ||b||_inf`, or the absolute residual when `b = 0`.
    pub residual_norm: f64,
    /// `||A||_inf * ||A^-1||_inf`.
    pub condition_estimate: f64,
}

pub fn to_float(x: f64, precision: Precision) -> Float {
    Float::with_val(precision.bits(), x)
}

struct Lu {
    /// Packed factors: strict lower part holds the multipliers, upper part holds `U`.
    factors: Vec<Vec<Float>>,
    perm: Vec<usize>,
    swaps: usize,
}

fn check_square(a: &[Vec<Float>]) -> Result<usize> {
    let n = a.len();
    if n == 0 {
        return Err(Error::BadDimension("empty system".into()));
    }
    if let Some(row) = a.iter().position(|r| r.len() != n) {
        return Err(Error::BadDimension(format!(
            "row {} has {} entries, expected {n}",
            row + 1,
            a[row].len()
        )));
    }
    Ok(n)
}

fn row_inf_norm(row: &[Float], bits: u32) -> Float {
    row.iter().fold(Float::with_val(bits, 0), |m, x| {
        let ax = Float::with_val(bits, x.abs_ref());
        if ax > m {
            ax
        } else {
            m
        }
    })
}

/// Row-pivoted elimination. With `singular_guard`, a pivot smaller than
/// `2^(-bits+8)` times its original row scale is reported as singular.
fn factor(a: &[Vec<Float>], precision: Precision, singular_guard: bool) -> Result<Option<Lu>> {
    let n = a.len();
    let bits = precision.bits();
    let mut m: Vec<Vec<Float>> = a
        .iter()
        .map(|row| row.iter().map(|x| Float::with_val(bits, x)).collect())
        .collect();
    let scales: Vec<Float> = m.iter().map(|r| row_inf_norm(r, bits)).collect();
    let threshold = Float::with_val(bits, Float::i_exp(1, 8 - bits as i32));
    let mut perm: Vec<usize> = (0..n).collect();
    let mut swaps = 0;

    for col in 0..n {
        // Scaled partial pivoting: compare |a_ic| / scale_i.
        let mut best: Option<(usize, Float)> = None;
        for row in col..n {
            let scale = &scales[perm[row]];
            if scale.is_zero() {
                continue;
            }
            let ratio = Float::with_val(bits, m[row][col].abs_ref()) / scale;
            if best.as_ref().is_none_or(|(_, b)| ratio > *b) {
                best = Some((row, ratio));
            }
        }
        let pivot_ok = match &best {
            Some((_, ratio)) => {
                if singular_guard {
                    *ratio >= threshold
                } else {
                    !ratio.is_zero()
                }
            }
            None => false,
        };
        if !pivot_ok {
            if singular_guard {
                return Err(Error::SingularSystem(format!(
                    "no usable pivot in column {} (relative pivot below 2^{})",
                    col + 1,
                    8 - bits as i32
                )));
            }
            return Ok(None);
        }
        let (pivot_row, _) = best.unwrap();
        if pivot_row != col {
            m.swap(pivot_row, col);
            perm.swap(pivot_row, col);
            swaps += 1;
        }
        let (upper, lower) = m.split_at_mut(col + 1);
        let pivot_line = &upper[col];
        for row in lower.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = Float::with_val(bits, &row[col] / &pivot_line[col]);
            for j in col + 1..n {
                let delta = Float::with_val(bits, &factor * &pivot_line[j]);
                row[j] -= delta;
            }
            row[col] = factor;
        }
    }
    Ok(Some(Lu {
        factors: m,
        perm,
        swaps,
    }))
}

impl Lu {
    fn solve(&self, b: &[Float], bits: u32) -> Vec<Float> {
        let n = self.factors.len();
        let mut y: Vec<Float> = self.perm.iter().map(|&p| Float::with_val(bits, &b[p])).collect();
        for i in 0..n {
            for j in 0..i {
                let delta = Float::with_val(bits, &self.factors[i][j] * &y[j]);
                y[i] -= delta;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let delta = Float::with_val(bits, &self.factors[i][j] * &y[j]);
                y[i] -= delta;
            }
            y[i] /= &self.factors[i][i];
        }
        y
    }
}

fn inf_norm(v: &[Float], bits: u32) -> Float {
    row_inf_norm(v, bits)
}

fn matrix_inf_norm(a: &[Vec<Float>], bits: u32) -> Float {
    a.iter().fold(Float::with_val(bits, 0), |m, row| {
        let s = row
            .iter()
            .fold(Float::with_val(bits, 0), |acc, x| acc + Float::with_val(bits, x.abs_ref()));
        if s > m {
            s
        } else {
            m
        }
    })
}

/// Solve `A x = b` by scaled row-pivoted elimination at `precision`.
pub fn solve_linear(a: &[Vec<Float>], b: &[Float], precision: Precision) -> Result<SolveReport> {
    let n = check_square(a)?;
    if b.len() != n {
        return Err(Error::BadDimension(format!(
            "right-hand side has {} entries, expected {n}",
            b.len()
        )));
    }
    let bits = precision.bits();
    let lu = factor(a, precision, true)?.expect("guarded factorization never yields None");
    let solution = lu.solve(b, bits);

    let mut residual = Vec::with_capacity(n);
    for (row, bi) in a.iter().zip(b) {
        let mut acc = Float::with_val(bits, 0);
        for (aij, xj) in row.iter().zip(&solution) {
            acc += Float::with_val(bits, aij * xj);
        }
        acc -= bi;
        residual.push(acc);
    }
    let r_norm = inf_norm(&residual, bits);
    let b_norm = inf_norm(b, bits);
    let residual_norm = if b_norm.is_zero() {
        r_norm.to_f64()
    } else {
        (r_norm / b_norm).to_f64()
    };

    let mut inverse_norm = Float::with_val(bits, 0);
    let mut unit = vec![Float::with_val(bits, 0); n];
    let mut inverse_rows = vec![Float::with_val(bits, 0); n];
    for j in 0..n {
        unit[j] = Float::with_val(bits, 1);
        let col = lu.solve(&unit, bits);
        unit[j] = Float::with_val(bits, 0);
        for (acc, c) in inverse_rows.iter_mut().zip(&col) {
            *acc += Float::with_val(bits, c.abs_ref());
        }
    }
    for s in &inverse_rows {
        if *s > inverse_norm {
            inverse_norm = s.clone();
        }
    }
    let condition_estimate = (matrix_inf_norm(a, bits) * inverse_norm).to_f64();

    Ok(SolveReport {
        solution,
        residual_norm,
        condition_estimate,
    })
}

/// Determinant by row-pivoted elimination; exactly singular input gives zero.
pub fn determinant(a: &[Vec<Float>], precision: Precision) -> Result<Float> {
    check_square(a)?;
    let bits = precision.bits();
    match factor(a, precision, false)? {
        None => Ok(Float::with_val(bits, 0)),
        Some(lu) => {
            let mut det = Float::with_val(bits, 1);
            for (i, row) in lu.factors.iter().enumerate() {
                det *= &row[i];
            }
            if lu.swaps % 2 == 1 {
                det = -det;
            }
            Ok(det)
        }
    }
}

/// Root of `f` in `[lo, hi]` by bisection.
///
/// Requires `f(lo) * f(hi) <= 0`. Stops once the bracket is narrower than
/// `2^(-bits+4) * max(|lo|, |hi|)`.
pub fn find_root_bracketed<F>(f: F, lo: &Float, hi: &Float, precision: Precision) -> Result<Float>
where
    F: Fn(&Float) -> Float,
{
    hybrid_root(&f, None::<&fn(&Float) -> Float>, lo, hi, precision)
}

/// Same contract as [`find_root_bracketed`], using Newton steps from `df` whenever
/// they stay inside the current bracket and shrink it fast enough.
pub fn find_root_bracketed_newton<F, D>(
    f: F,
    df: D,
    lo: &Float,
    hi: &Float,
    precision: Precision,
) -> Result<Float>
where
    F: Fn(&Float) -> Float,
    D: Fn(&Float) -> Float,
{
    hybrid_root(&f, Some(&df), lo, hi, precision)
}

fn sign_of(x: &Float) -> Ordering {
    x.cmp0().unwrap_or(Ordering::Equal)
}

fn hybrid_root<F, D>(
    f: &F,
    df: Option<&D>,
    lo: &Float,
    hi: &Float,
    precision: Precision,
) -> Result<Float>
where
    F: Fn(&Float) -> Float,
    D: Fn(&Float) -> Float,
{
    let bits = precision.bits();
    let (mut a, mut b) = if lo <= hi {
        (Float::with_val(bits, lo), Float::with_val(bits, hi))
    } else {
        (Float::with_val(bits, hi), Float::with_val(bits, lo))
    };
    if a.is_nan() || b.is_nan() {
        return Err(Error::BadParameter("NaN bracket endpoint".into()));
    }
    let fa = f(&a);
    let fb = f(&b);
    if fa.is_nan() || fb.is_nan() {
        return Err(Error::DomainError("function is NaN at a bracket endpoint".into()));
    }
    let sa = sign_of(&fa);
    let sb = sign_of(&fb);
    if sa == Ordering::Equal {
        return Ok(a);
    }
    if sb == Ordering::Equal {
        return Ok(b);
    }
    if sa == sb {
        return Err(Error::NoBracket {
            lo: a.to_f64(),
            hi: b.to_f64(),
        });
    }

    let scale = {
        let aa = Float::with_val(bits, a.abs_ref());
        let ab = Float::with_val(bits, b.abs_ref());
        if aa > ab {
            aa
        } else {
            ab
        }
    };
    let tol = scale * Float::with_val(bits, Float::i_exp(1, 4 - bits as i32));

    let mut x = Float::with_val(bits, &a + &b) / 2u32;
    let mut last_step = Float::with_val(bits, &b - &a);
    let max_iter = 4 * bits as usize + 64;
    for _ in 0..max_iter {
        let fx = f(&x);
        let sx = sign_of(&fx);
        if sx == Ordering::Equal {
            return Ok(x);
        }
        if sx == sa {
            a = x.clone();
        } else {
            b = x.clone();
        }
        let width = Float::with_val(bits, &b - &a);
        if width <= tol {
            break;
        }

        let mut next = None;
        if let Some(df) = df {
            let d = df(&x);
            if !d.is_zero() && d.is_finite() {
                let step = Float::with_val(bits, &fx / &d);
                let candidate = Float::with_val(bits, &x - &step);
                let shrinks =
                    Float::with_val(bits, step.abs_ref()) * 2u32 <= Float::with_val(bits, last_step.abs_ref());
                if candidate > a && candidate < b && shrinks {
                    if Float::with_val(bits, step.abs_ref()) <= tol {
                        return Ok(candidate);
                    }
                    last_step = step;
                    next = Some(candidate);
                }
            }
        }
        x = match next {
            Some(c) => c,
            None => {
                last_step = width.clone() / 2u32;
                Float::with_val(bits, &a + &b) / 2u32
            }
        };
    }
    Ok(Float::with_val(bits, &a + &b) / 2u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fl(x: f64) -> Float {
        Float::with_val(53, x)
    }

    fn mat(rows: &[&[f64]]) -> Vec<Vec<Float>> {
        rows.iter().map(|r| r.iter().map(|&x| fl(x)).collect()).collect()
    }

    #[test]
    fn identity_system() {
        let a = mat(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        let b = vec![fl(1.0), fl(2.0), fl(3.0)];
        let r = solve_linear(&a, &b, Precision::DOUBLE).unwrap();
        assert_eq!(r.solution, b);
        assert_eq!(r.residual_norm, 0.0);
        assert_eq!(r.condition_estimate, 1.0);
    }

    #[test]
    fn one_by_one() {
        let r = solve_linear(&mat(&[&[2.0]]), &[fl(4.0)], Precision::DOUBLE).unwrap();
        assert_eq!(r.solution[0], 2.0);
    }

    #[test]
    fn duplicated_rows_are_singular() {
        let a = mat(&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0], &[1.0, 2.0, 3.0]]);
        let b = vec![fl(1.0), fl(2.0), fl(3.0)];
        assert!(matches!(
            solve_linear(&a, &b, Precision::DOUBLE),
            Err(Error::SingularSystem(_))
        ));
    }

    #[test]
    fn dimension_errors() {
        let a = mat(&[&[1.0, 2.0], &[3.0]]);
        assert!(matches!(
            solve_linear(&a, &[fl(1.0), fl(1.0)], Precision::DOUBLE),
            Err(Error::BadDimension(_))
        ));
        let a = mat(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert!(matches!(
            solve_linear(&a, &[fl(1.0)], Precision::DOUBLE),
            Err(Error::BadDimension(_))
        ));
        assert!(solve_linear(&[], &[], Precision::DOUBLE).is_err());
    }

    #[test]
    fn determinants() {
        let a = mat(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert_eq!(determinant(&a, Precision::DOUBLE).unwrap(), -1.0);
        let a = mat(&[&[2.0, 0.0, 1.0], &[1.0, 3.0, 2.0], &[1.0, 1.0, 1.0]]);
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(determinant(&a, Precision::DOUBLE).unwrap(), 0.0);
        let a = mat(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert_eq!(determinant(&a, Precision::DOUBLE).unwrap(), 0.0);
    }

    #[test]
    fn root_examples() {
        let p = Precision::DOUBLE;
        let e = Float::with_val(53, 1).exp();
        let f = |t: &Float| Float::with_val(53, t * Float::with_val(53, t.ln_ref())) - &e;
        let r = find_root_bracketed(f, &fl(1.0), &fl(10.0), p).unwrap();
        assert!((r.clone() - &e).abs() < 1e-13, "{r}");

        let g = |t: &Float| Float::with_val(53, t - 5u32);
        let r = find_root_bracketed(g, &fl(0.0), &fl(10.0), p).unwrap();
        assert_eq!(r, 5.0);
        assert!(matches!(
            find_root_bracketed(g, &fl(6.0), &fl(10.0), p),
            Err(Error::NoBracket { .. })
        ));
    }

    #[test]
    fn newton_variant_matches_bisection() {
        let p = Precision::QUAD;
        let f = |t: &Float| Float::with_val(113, t * t) - 2u32;
        let df = |t: &Float| Float::with_val(113, t * 2u32);
        let lo = Float::with_val(113, 0);
        let hi = Float::with_val(113, 2);
        let newton = find_root_bracketed_newton(f, df, &lo, &hi, p).unwrap();
        let bisect = find_root_bracketed(f, &lo, &hi, p).unwrap();
        let sqrt2 = Float::with_val(113, 2).sqrt();
        assert!(Float::with_val(113, &newton - &sqrt2).abs() < 1e-30);
        assert!(Float::with_val(113, &bisect - &sqrt2).abs() < 1e-30);
    }

    #[test]
    fn newton_out_of_bracket_falls_back() {
        // Newton from the midpoint of [0.1, 3] on atan-like f overshoots; the result must stay bracketed.
        let p = Precision::DOUBLE;
        let f = |t: &Float| Float::with_val(53, t - 1u32).atan();
        let df = |t: &Float| {
            let u = Float::with_val(53, t - 1u32);
            Float::with_val(53, 1) / (Float::with_val(53, &u * &u) + 1u32)
        };
        let r = find_root_bracketed_newton(f, df, &fl(0.1), &fl(30.0), p).unwrap();
        assert!((0.1..=30.0).contains(&r));
        assert!((r - 1.0f64).abs() < 1e-12);
    }
}
