//! Exact and numeric suites assembled into report rows.

use std::collections::BTreeMap;

use rayon::prelude::*;
use rug::{Float, Rational};

use super::sampling::TupleSampler;
use super::{
    cramer_quotient, lemma3_check, lemma4_check, lemma7_check, prop3_check, prop3_symbolic,
    prop4_check, prop4_symbolic, relative, Check, IdentityReport,
};
use crate::combinat::{factorial, factorial_product};
use crate::error::{Error, Result};
use crate::logpoly::LogPoly;
use crate::means::{identric_iz, neuman_ln, MeanRequest, OsculatingFrame};
use crate::precision::Precision;
use crate::wronskian::{
    closed_form_v, deriv_table, full_wronskian_closed_form, make_conjecture_curve,
    make_log_curve, orthogonality_residuals, paper_recursion_deriv, wronskian_full,
    wronskian_minor,
};

/// Largest dimension the suites accept.
pub const MAX_SUITE_N: usize = 7;

/// Entries and spacing of the random tuples in the numeric suite.
const RANGE: (f64, f64) = (1.1, 50.0);
const CONJECTURE_RANGE: (f64, f64) = (1.5, 20.0);
const MIN_LN_GAP: f64 = 0.05;

/// Random rational vectors per `n` in the Vandermonde-cofactor row.
const COFACTOR_VECTORS: usize = 50;

/// Warnings kept verbatim per row before the rest are counted.
const WARNING_CAP: usize = 3;

/// Pass thresholds of the numeric rows at one precision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thresholds {
    pub main_theorem: f64,
    pub tangent_case: f64,
    pub determinant: f64,
    pub cramer: f64,
    /// Relative form of the 4-ulp bound on symmetry and homogeneity.
    pub invariance: f64,
    pub conjecture: f64,
}

impl Thresholds {
    pub fn for_precision(precision: Precision) -> Self {
        let quad = precision >= Precision::QUAD;
        Thresholds {
            main_theorem: if quad { 1e-20 } else { 1e-9 },
            tangent_case: 1e-12,
            determinant: if quad { 1e-8 } else { 1e-5 },
            cramer: if quad { 1e-9 } else { 1e-5 },
            invariance: 4.0 * precision.epsilon(),
            conjecture: 1e-6,
        }
    }
}

/// `|a - b|` in units of the last place of `b`.
pub fn ulps_apart(a: &Float, b: &Float) -> f64 {
    if a == b {
        return 0.0;
    }
    let bits = b.prec().max(a.prec());
    let diff = Float::with_val(bits, a - b).abs();
    let exp = b.get_exp().unwrap_or(0) - b.prec() as i32;
    (diff >> exp).to_f64()
}

fn check_max_n(max_n: usize) -> Result<()> {
    if max_n < 2 {
        return Err(Error::BadParameter("n must be ≥ 2".into()));
    }
    if max_n > MAX_SUITE_N {
        return Err(Error::BadParameter(format!("n must be ≤ {MAX_SUITE_N}")));
    }
    Ok(())
}

type Job<'a> = Box<dyn Fn() -> Result<IdentityReport> + Send + Sync + 'a>;

fn run_jobs(jobs: Vec<Job<'_>>) -> Result<Vec<IdentityReport>> {
    jobs.par_iter().map(|job| job()).collect()
}

/// Every exact identity, with dimension ranges capped at `max_n` (`2..=7`).
///
/// The alternating factorial sums, log-power sums, derivative recursion and
/// derivative values at one keep their own fixed ranges.
pub fn exact_suite(max_n: usize) -> Result<Vec<IdentityReport>> {
    check_max_n(max_n)?;
    let minors: BTreeMap<usize, Vec<LogPoly>> = (2..=max_n)
        .into_par_iter()
        .map(|n| {
            let curve = make_log_curve(n)?;
            let row = (1..=n)
                .map(|k| wronskian_minor(&curve, k))
                .collect::<Result<Vec<_>>>()?;
            Ok((n, row))
        })
        .collect::<Result<_>>()?;
    let minors = &minors;

    let mut jobs: Vec<Job<'_>> = Vec::new();
    for n in 2..=max_n {
        jobs.push(Box::new(move || {
            let mut holds = true;
            for (k, w) in minors[&n].iter().enumerate() {
                holds &= *w == closed_form_v(k + 1, n)?;
            }
            Ok(IdentityReport::exact("minor_closed_form", Some(n), holds, n))
        }));
    }
    for n in 3..=max_n {
        jobs.push(Box::new(move || {
            let w = wronskian_full(&make_log_curve(n)?);
            let holds = w == full_wronskian_closed_form(n);
            Ok(IdentityReport::exact("full_wronskian", Some(n), holds, 1))
        }));
    }
    for n in 2..max_n {
        jobs.push(Box::new(move || {
            let mut holds = true;
            for k in 1..=n {
                let factor = LogPoly::term(
                    Rational::from((factorial(n as u32), k as u32)),
                    -((n - 1) as i32),
                    0,
                );
                let closed = closed_form_v(k + 1, n + 1)? == &factor * &closed_form_v(k, n)?;
                let computed = minors[&(n + 1)][k] == &factor * &minors[&n][k - 1];
                holds &= closed && computed;
            }
            Ok(IdentityReport::exact("minor_recursion_shift", Some(n), holds, n))
        }));
        jobs.push(Box::new(move || {
            let lead = LogPoly::term(
                Rational::from(factorial_product(n as u32)),
                -((n * (n - 1) / 2) as i32),
                n as u32,
            );
            let factor = LogPoly::term(Rational::from(factorial(n as u32)), -((n - 1) as i32), 0);
            let closed = closed_form_v(1, n + 1)? == &lead + &(&factor * &closed_form_v(1, n)?);
            let computed = minors[&(n + 1)][0] == &lead + &(&factor * &minors[&n][0]);
            Ok(IdentityReport::exact("minor_recursion_first", Some(n), closed && computed, 1))
        }));
    }
    jobs.push(Box::new(|| {
        let table = deriv_table(&make_log_curve(7)?, 6);
        let mut holds = true;
        let mut instances = 0;
        for k in 1..=6 {
            for r in 2..=6 {
                holds &= paper_recursion_deriv(k, r)? == *table.entry(r, k + 1);
                instances += 1;
            }
        }
        Ok(IdentityReport::exact("derivative_recursion", None, holds, instances))
    }));
    jobs.push(Box::new(|| {
        let table = deriv_table(&make_log_curve(7)?, 7);
        let mut holds = true;
        let mut instances = 0;
        for k in 2..=7 {
            for r in 0..=k - 2 {
                holds &= table.entry(r, k).eval_at_one() == 0;
                instances += 1;
            }
        }
        for r in 2..=7 {
            holds &= table.entry(r - 1, r).eval_at_one() == factorial((r - 1) as u32);
            instances += 1;
        }
        Ok(IdentityReport::exact("derivative_values_at_one", None, holds, instances))
    }));
    for n in 3..=max_n {
        jobs.push(Box::new(move || {
            let residuals = orthogonality_residuals(n)?;
            let holds = residuals.iter().all(LogPoly::is_zero);
            Ok(IdentityReport::exact("orthogonality", Some(n), holds, residuals.len()))
        }));
    }
    jobs.push(Box::new(|| {
        let holds = (1..=20).all(|n| {
            let (l, r) = lemma3_check(n);
            l == r
        });
        Ok(IdentityReport::exact("alternating_factorial_sum", None, holds, 20))
    }));
    jobs.push(Box::new(|| {
        let holds = (1..=12).all(|n| {
            let (first, second) = lemma4_check(n);
            first == LogPoly::one() && second.is_none_or(|s| s == LogPoly::constant(-1))
        });
        Ok(IdentityReport::exact("log_power_sums", None, holds, 12))
    }));
    for n in 3..=7 {
        jobs.push(Box::new(move || {
            let mut sampler = TupleSampler::new(0, "vandermonde_cofactor", n, 0.0, 1.0, 0.0);
            let mut holds = true;
            for _ in 0..COFACTOR_VECTORS {
                let (l, r) = lemma7_check(&sampler.rationals(n))?;
                holds &= l == r;
            }
            Ok(IdentityReport::exact("vandermonde_cofactor", Some(n), holds, COFACTOR_VECTORS))
        }));
    }
    for n in 3..=max_n {
        jobs.push(Box::new(move || {
            let (l, r) = prop3_symbolic(n)?;
            Ok(IdentityReport::exact("signed_minor_determinant", Some(n), l == r, 1))
        }));
        jobs.push(Box::new(move || {
            let (l, r) = prop4_symbolic(n)?;
            Ok(IdentityReport::exact("replaced_column_determinant", Some(n), l == r, 1))
        }));
    }
    run_jobs(jobs)
}

fn floats(values: &[f64], precision: Precision) -> Vec<Float> {
    values.iter().map(|&v| Float::with_val(precision.bits(), v)).collect()
}

fn describe(values: &[f64]) -> Vec<String> {
    values.iter().map(|v| format!("{v}")).collect()
}

/// Result of one trial: relative error (or `0/1` for a property) and warnings.
type Trial = Result<(f64, Vec<String>)>;

fn summarize_warnings(all: Vec<String>) -> Vec<String> {
    let mut unique: Vec<String> = Vec::new();
    for w in all {
        if !unique.contains(&w) {
            unique.push(w);
        }
    }
    if unique.len() > WARNING_CAP {
        let extra = unique.len() - WARNING_CAP;
        unique.truncate(WARNING_CAP);
        unique.push(format!("{extra} more distinct warnings"));
    }
    unique
}

struct Row<'a> {
    identity: &'a str,
    n: usize,
    seed: u64,
    tuples: Vec<Vec<f64>>,
}

impl Row<'_> {
    /// Evaluate trials in parallel; results are merged in trial order.
    fn run(self, eval: impl Fn(usize, &[f64]) -> Trial + Sync) -> Vec<(f64, Vec<String>, String)> {
        self.tuples
            .par_iter()
            .enumerate()
            .map(|(i, t)| match eval(i, t) {
                Ok((err, warnings)) => (err, warnings, String::new()),
                Err(e) => (f64::INFINITY, Vec::new(), e.to_string()),
            })
            .collect()
    }

    fn numeric(self, threshold: Option<f64>, eval: impl Fn(usize, &[f64]) -> Trial + Sync) -> IdentityReport {
        let (identity, n, seed) = (self.identity.to_string(), self.n, self.seed);
        let tuples = self.tuples.clone();
        let results = self.run(eval);
        let mut worst = 0usize;
        let mut warnings = Vec::new();
        for (i, (err, w, failure)) in results.iter().enumerate() {
            let current = results[worst].0;
            if !(*err <= current) {
                worst = i;
            }
            warnings.extend(w.iter().cloned());
            if !failure.is_empty() {
                warnings.push(format!("trial {i} failed: {failure}"));
            }
        }
        let max_rel_error = results.get(worst).map_or(0.0, |r| r.0);
        IdentityReport {
            identity,
            n: Some(n),
            check: Check::Numeric {
                max_rel_error,
                threshold,
            },
            instances: tuples.len(),
            warnings: summarize_warnings(warnings),
            worst_instance: tuples.get(worst).map(|t| describe(t)),
            seed: Some(seed),
        }
    }

    fn property(self, eval: impl Fn(usize, &[f64]) -> Result<(bool, Vec<String>)> + Sync) -> IdentityReport {
        let (identity, n, seed) = (self.identity.to_string(), self.n, self.seed);
        let tuples = self.tuples.clone();
        let results = self.run(|i, t| eval(i, t).map(|(ok, w)| (if ok { 0.0 } else { 1.0 }, w)));
        let failing = results.iter().position(|r| r.0 != 0.0);
        let mut warnings: Vec<String> = results.iter().flat_map(|r| r.1.clone()).collect();
        for (i, r) in results.iter().enumerate() {
            if !r.2.is_empty() {
                warnings.push(format!("trial {i} failed: {}", r.2));
            }
        }
        IdentityReport {
            identity,
            n: Some(n),
            check: Check::Exact {
                holds: failing.is_none(),
            },
            instances: tuples.len(),
            warnings: summarize_warnings(warnings),
            worst_instance: failing.map(|i| describe(&tuples[i])),
            seed: Some(seed),
        }
    }
}

fn row<'a>(identity: &'a str, n: usize, trials: usize, seed: u64, range: (f64, f64)) -> Row<'a> {
    let mut sampler = TupleSampler::new(seed, identity, n, range.0, range.1, MIN_LN_GAP);
    Row {
        identity,
        n,
        seed,
        tuples: sampler.tuples(n, trials),
    }
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::BadParameter("trials must be ≥ 1".into()));
    }
    Ok(())
}

/// Seeded numeric rows for `n` up to `max_n`, `trials` tuples each.
pub fn numeric_suite(max_n: usize, trials: usize, seed: u64, precision: Precision) -> Result<Vec<IdentityReport>> {
    check_max_n(max_n)?;
    check_trials(trials)?;
    let th = Thresholds::for_precision(precision);
    let bits = precision.bits();
    let mut jobs: Vec<Job<'_>> = Vec::new();

    jobs.push(Box::new(move || {
        let curve = make_log_curve(2)?;
        Ok(row("tangent_case", 2, trials, seed, RANGE).numeric(Some(th.tangent_case), |_, t| {
            let values = floats(t, precision);
            let r = MeanRequest::new(values.clone(), precision).intersect(&curve)?;
            let (a, b) = (&values[0], &values[1]);
            let ln_gap = Float::with_val(bits, b.ln_ref()) - Float::with_val(bits, a.ln_ref());
            let expected = Float::with_val(bits, b - a) / ln_gap;
            Ok((relative(&r.point[0], &expected), r.warnings))
        }))
    }));
    for n in 3..=max_n {
        jobs.push(Box::new(move || {
            let frame = OsculatingFrame::new(&make_log_curve(n)?);
            Ok(row("main_theorem", n, trials, seed, RANGE).numeric(Some(th.main_theorem), |_, t| {
                let values = floats(t, precision);
                let r = MeanRequest::new(values.clone(), precision).intersect_in_frame(&frame)?;
                let m1 = r.means.get(&1).ok_or_else(|| {
                    Error::DomainError(r.warnings.join("; "))
                })?;
                Ok((relative(m1, &neuman_ln(&values, precision)?), r.warnings.clone()))
            }))
        }));
        jobs.push(Box::new(move || {
            Ok(row("signed_minor_determinant_numeric", n, trials, seed, RANGE)
                .numeric(Some(th.determinant), |_, t| {
                    let c = prop3_check(&floats(t, precision), precision)?;
                    Ok((c.rel_error, c.warnings))
                }))
        }));
        jobs.push(Box::new(move || {
            Ok(row("replaced_column_determinant_numeric", n, trials, seed, RANGE)
                .numeric(Some(th.determinant), |_, t| {
                    let c = prop4_check(&floats(t, precision), precision)?;
                    Ok((c.rel_error, c.warnings))
                }))
        }));
        jobs.push(Box::new(move || {
            Ok(row("cramer_quotient", n, trials, seed, RANGE).numeric(Some(th.cramer), |_, t| {
                let values = floats(t, precision);
                let q = cramer_quotient(&values, precision)?;
                Ok((relative(&q, &neuman_ln(&values, precision)?), Vec::new()))
            }))
        }));
    }
    for n in 2..=max_n {
        jobs.push(Box::new(move || {
            let curve = make_log_curve(n)?;
            Ok(row("betweenness", n, trials, seed, RANGE).property(|_, t| {
                let r = MeanRequest::new(floats(t, precision), precision).all_means(&curve)?;
                Ok((r.means.len() == n && r.all_between(), r.warnings.clone()))
            }))
        }));
        jobs.push(Box::new(move || {
            let row = row("symmetry", n, trials, seed, RANGE);
            let mut sampler = TupleSampler::new(seed, "symmetry/shuffle", n, 0.0, 1.0, 0.0);
            let shuffles: Vec<Vec<f64>> = row.tuples.iter().map(|t| sampler.shuffled(t)).collect();
            Ok(row.numeric(Some(th.invariance), |i, t| {
                let sorted = floats(t, precision);
                let mixed = floats(&shuffles[i], precision);
                let ln = relative(&neuman_ln(&mixed, precision)?, &neuman_ln(&sorted, precision)?);
                let iz = relative(&identric_iz(&mixed, precision)?, &identric_iz(&sorted, precision)?);
                Ok((ln.max(iz), Vec::new()))
            }))
        }));
        jobs.push(Box::new(move || {
            let row = row("homogeneity", n, trials, seed, RANGE);
            let mut sampler = TupleSampler::new(seed, "homogeneity/scale", n, 0.0, 1.0, 0.0);
            let lambdas: Vec<f64> = row.tuples.iter().map(|_| sampler.uniform(0.1, 10.0)).collect();
            Ok(row.numeric(Some(th.invariance), |i, t| {
                let values = floats(t, precision);
                let lambda = Float::with_val(bits, lambdas[i]);
                let scaled: Vec<Float> = values.iter().map(|v| Float::with_val(bits, v * &lambda)).collect();
                let direct = neuman_ln(&scaled, precision)?;
                let expected = Float::with_val(bits, neuman_ln(&values, precision)? * &lambda);
                Ok((relative(&direct, &expected), Vec::new()))
            }))
        }));
    }
    for n in 3..=max_n.min(5) {
        jobs.push(Box::new(move || conjecture_scan(n, trials, seed, precision)));
    }
    let mut rows = run_jobs(jobs)?;
    rows.sort_by(|a, b| (a.identity.as_str(), a.n).cmp(&(b.identity.as_str(), b.n)));
    Ok(rows)
}

/// `M_n` on the conjecture curve `<t, t^2, ..., t^(n-1), log t>` against `I_Z` over
/// seeded tuples in `[1.5, 20]`. Gated at `n = 3`; report-only for larger `n`.
pub fn conjecture_scan(n: usize, trials: usize, seed: u64, precision: Precision) -> Result<IdentityReport> {
    check_trials(trials)?;
    let curve = make_conjecture_curve(n)?;
    let frame = OsculatingFrame::new(&curve);
    let threshold = (n == 3).then_some(Thresholds::for_precision(precision).conjecture);
    Ok(row("conjecture", n, trials, seed, CONJECTURE_RANGE).numeric(threshold, |_, t| {
        let values = floats(t, precision);
        let r = MeanRequest::new(values.clone(), precision).mean_in_frame(&frame, n)?;
        let mn = &r.means[&n];
        let iz = identric_iz(&values, precision)?;
        Ok((relative(mn, &iz), r.warnings.clone()))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_rows_hold() {
        let rows = exact_suite(4).unwrap();
        for r in &rows {
            assert!(r.passed(), "{r:?}");
        }
        assert!(rows.iter().any(|r| r.identity == "orthogonality" && r.n == Some(4)));
        assert_eq!(exact_suite(1), Err(Error::BadParameter("n must be ≥ 2".into())));
        assert!(exact_suite(8).is_err());
    }

    #[test]
    fn numeric_rows_hold() {
        let rows = numeric_suite(4, 5, 1, Precision::DOUBLE).unwrap();
        for r in &rows {
            assert!(r.passed(), "{r:?}");
        }
        assert!(numeric_suite(4, 0, 1, Precision::DOUBLE).is_err());
    }

    #[test]
    fn conjecture_bad_parameters() {
        assert!(matches!(conjecture_scan(3, 0, 0, Precision::DOUBLE), Err(Error::BadParameter(_))));
        assert!(conjecture_scan(2, 5, 0, Precision::DOUBLE).is_err());
    }

    #[test]
    fn ulps() {
        let a = Float::with_val(53, 1.0);
        let b = Float::with_val(53, 1.0 + f64::EPSILON * 3.0);
        assert_eq!(ulps_apart(&b, &a), 3.0);
        assert_eq!(ulps_apart(&a, &a), 0.0);
    }
}
