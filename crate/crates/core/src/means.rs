//! Osculating hyperplanes, their common intersection point, the means it defines,
//! and the closed-form means `L_N` (logarithmic) and `I_Z` (identric) they are
//! compared against.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rug::float::Special;
use rug::{Float, Rational};

use crate::combinat::factorial;
use crate::error::{Error, Result};
use crate::logpoly::LogPoly;
use crate::numerics::{find_root_bracketed_newton, solve_linear, SolveReport};
use crate::precision::Precision;
use crate::wronskian::{normal_field, Curve, CurveKind};

/// Smallest pairwise `|ln a_i - ln a_j|` accepted without a conditioning warning.
pub const DEFAULT_GAP_FLOOR: f64 = 1e-6;

/// Guard bits of the first evaluation pass in [`neuman_ln`] and [`identric_iz`].
const BASE_GUARD_BITS: u32 = 32;

/// The hyperplane `x . normal = offset`.
#[derive(Clone, Debug)]
pub struct Hyperplane {
    pub normal: Vec<Float>,
    pub offset: Float,
}

impl Hyperplane {
    /// `|x . normal - offset| / (|normal| |x| + |offset|)` with infinity norms.
    pub fn relative_residual(&self, x: &[Float]) -> f64 {
        let bits = self.offset.prec();
        let mut dot = Float::with_val(bits, 0);
        let mut scale = Float::with_val(bits, 0);
        for (n, xi) in self.normal.iter().zip(x) {
            let prod = Float::with_val(bits, n * xi);
            scale += Float::with_val(bits, prod.abs_ref());
            dot += prod;
        }
        dot -= &self.offset;
        scale += Float::with_val(bits, self.offset.abs_ref());
        if scale.is_zero() {
            return 0.0;
        }
        (dot.abs() / scale).to_f64()
    }
}

/// Exact hyperplane with rational data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactHyperplane {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl ExactHyperplane {
    /// Same plane scaled to coprime integer coefficients with a positive leading entry.
    pub fn primitive(&self) -> ExactHyperplane {
        use rug::Integer;
        let all: Vec<&Rational> = self.normal.iter().chain(std::iter::once(&self.offset)).collect();
        let mut lcm = Integer::from(1);
        for q in &all {
            lcm.lcm_mut(q.denom());
        }
        let ints: Vec<Integer> = all
            .iter()
            .map(|q| q.numer() * Integer::from(&lcm / q.denom()))
            .collect();
        let mut gcd = Integer::new();
        for v in &ints {
            gcd.gcd_mut(v);
        }
        if gcd == 0 {
            return self.clone();
        }
        let lead_negative = ints.iter().find(|v| **v != 0).is_some_and(|v| *v < 0);
        if lead_negative {
            gcd = -gcd;
        }
        let scaled: Vec<Rational> = ints
            .into_iter()
            .map(|v| Rational::from(Integer::from(&v / &gcd)))
            .collect();
        let (offset, normal) = scaled.split_last().unwrap();
        ExactHyperplane {
            normal: normal.to_vec(),
            offset: offset.clone(),
        }
    }
}

/// A curve together with its symbolic normal field, so hyperplanes at many points
/// share one symbolic computation.
#[derive(Clone, Debug)]
pub struct OsculatingFrame {
    curve: Curve,
    normal: Vec<LogPoly>,
}

impl OsculatingFrame {
    pub fn new(curve: &Curve) -> Self {
        OsculatingFrame {
            curve: curve.clone(),
            normal: normal_field(curve),
        }
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn normal_field(&self) -> &[LogPoly] {
        &self.normal
    }

    pub fn hyperplane_at(&self, a: &Float, precision: Precision) -> Result<Hyperplane> {
        let bits = precision.bits();
        let normal = self
            .normal
            .iter()
            .map(|w| w.eval(a, precision))
            .collect::<Result<Vec<_>>>()?;
        if normal.iter().all(Float::is_zero) {
            return Err(Error::DomainError(format!(
                "normal vector vanishes at t = {}",
                a.to_f64()
            )));
        }
        let mut offset = Float::with_val(bits, 0);
        for (x, n) in self.curve.components().iter().zip(&normal) {
            offset += Float::with_val(bits, &x.eval(a, precision)? * n);
        }
        Ok(Hyperplane { normal, offset })
    }

    pub fn exact_hyperplane_at(&self, a: &Rational) -> Result<ExactHyperplane> {
        let transcendental = || {
            Error::DomainError(format!(
                "hyperplane at t = {a} has transcendental coefficients"
            ))
        };
        if *a <= 0 {
            return Err(Error::NonPositiveArgument(a.to_string()));
        }
        let normal = self
            .normal
            .iter()
            .map(|w| w.eval_exact(a).ok_or_else(transcendental))
            .collect::<Result<Vec<_>>>()?;
        let mut offset = Rational::new();
        for (x, n) in self.curve.components().iter().zip(&normal) {
            offset += x.eval_exact(a).ok_or_else(transcendental)? * n;
        }
        Ok(ExactHyperplane { normal, offset })
    }

    /// `C_a(t) = (alpha(t) - alpha(a)) . n(a)`, which vanishes to order `n` at `t = a`.
    pub fn contact_function(&self, a: &Rational) -> Result<LogPoly> {
        let plane = self.exact_hyperplane_at(a)?;
        let along: LogPoly = self
            .curve
            .components()
            .iter()
            .zip(&plane.normal)
            .map(|(x, n)| x.scale(n))
            .sum();
        Ok(&along - &LogPoly::constant(plane.offset))
    }
}

pub fn hyperplane_at(curve: &Curve, a: &Float, precision: Precision) -> Result<Hyperplane> {
    OsculatingFrame::new(curve).hyperplane_at(a, precision)
}

/// Validated input tuple: sorted, distinct, positive.
#[derive(Clone, Debug)]
struct Prepared {
    values: Vec<Float>,
    precision: Precision,
    min_ln_gap: f64,
    warnings: Vec<String>,
}

fn describe(x: &Float) -> String {
    format!("{}", x.to_f64())
}

fn check_positive(values: &[Float]) -> Result<()> {
    match values.iter().find(|v| v.cmp0() != Some(Ordering::Greater)) {
        Some(bad) => Err(Error::NonPositiveArgument(describe(bad))),
        None => Ok(()),
    }
}

fn sorted_distinct(values: &[Float]) -> Result<Vec<Float>> {
    check_positive(values)?;
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DistinctnessViolation(describe(&w[0])));
    }
    Ok(sorted)
}

fn check_distinct(values: &[Float]) -> Result<()> {
    sorted_distinct(values).map(|_| ())
}

/// Smallest `ln(a_{i+1}) - ln(a_i)` of a sorted tuple.
pub fn min_ln_gap(sorted: &[Float], precision: Precision) -> f64 {
    let bits = precision.bits();
    sorted
        .windows(2)
        .map(|w| {
            let lo = Float::with_val(bits, w[0].ln_ref());
            let hi = Float::with_val(bits, w[1].ln_ref());
            (hi - lo).to_f64()
        })
        .fold(f64::INFINITY, f64::min)
}

fn prepare(values: &[Float], precision: Precision, gap_floor: f64) -> Result<Prepared> {
    let sorted = sorted_distinct(values)?;
    let bits = precision.bits();
    let values: Vec<Float> = sorted.iter().map(|v| Float::with_val(bits, v)).collect();
    let gap = min_ln_gap(&values, precision);
    let mut warnings = Vec::new();
    let mut precision = precision;
    if gap < gap_floor {
        let escalated = precision.max(Precision::QUAD);
        warnings.push(format!(
            "minimum ln-gap {gap:.3e} is below {gap_floor:.0e}; working at {escalated}"
        ));
        precision = escalated;
    }
    Ok(Prepared {
        values,
        precision,
        min_ln_gap: gap,
        warnings,
    })
}

/// Intersection of the osculating hyperplanes at `a_1 < ... < a_n`.
#[derive(Clone, Debug)]
pub struct IntersectionResult {
    /// Input points, sorted ascending.
    pub values: Vec<Float>,
    pub hyperplanes: Vec<Hyperplane>,
    /// `P = (i_1, ..., i_n)`.
    pub point: Vec<Float>,
    pub report: SolveReport,
    wide_point: Vec<Float>,
    /// `M_k = x_k^-1(i_k)` for every `k` computed so far.
    pub means: BTreeMap<usize, Float>,
    /// Precision of `point` and `means`, after any conditioning escalation.
    pub precision: Precision,
    /// Precision the hyperplanes were evaluated and the system solved at.
    pub working_precision: Precision,
    pub min_ln_gap: f64,
    pub warnings: Vec<String>,
}

impl IntersectionResult {
    /// Largest relative residual of `P` over all hyperplanes.
    pub fn max_plane_residual(&self) -> f64 {
        self.hyperplanes
            .iter()
            .map(|h| h.relative_residual(&self.point))
            .fold(0.0, f64::max)
    }

    /// `a_1 < M_k < a_n` for every computed mean.
    pub fn all_between(&self) -> bool {
        self.means.values().all(|m| self.is_between(m))
    }

    pub fn is_between(&self, m: &Float) -> bool {
        let (first, last) = (&self.values[0], &self.values[self.values.len() - 1]);
        m > first && m < last
    }
}

/// Request for the intersection point and means of one input tuple on one curve.
#[derive(Clone, Debug)]
pub struct MeanRequest {
    pub values: Vec<Float>,
    pub precision: Precision,
    pub gap_floor: f64,
    pub working: Working,
}

/// Precision the linear system is assembled and solved at.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Working {
    /// Extra bits sized from the condition estimate; results rounded to the
    /// requested precision.
    #[default]
    Adaptive,
    /// Exactly the requested precision.
    Exact,
}

/// Bits lost to a condition number `cond`.
fn condition_bits(cond: f64) -> u32 {
    if cond.is_finite() && cond > 1.0 {
        cond.log2().ceil() as u32
    } else if cond.is_finite() {
        0
    } else {
        1024
    }
}

impl MeanRequest {
    pub fn new(values: Vec<Float>, precision: Precision) -> Self {
        MeanRequest {
            values,
            precision,
            gap_floor: DEFAULT_GAP_FLOOR,
            working: Working::default(),
        }
    }

    pub fn from_f64(values: &[f64], precision: Precision) -> Self {
        let bits = precision.bits();
        MeanRequest::new(
            values.iter().map(|&v| Float::with_val(bits, v)).collect(),
            precision,
        )
    }

    pub fn with_gap_floor(mut self, gap_floor: f64) -> Self {
        self.gap_floor = gap_floor;
        self
    }

    pub fn with_working(mut self, working: Working) -> Self {
        self.working = working;
        self
    }

    pub fn intersect(&self, curve: &Curve) -> Result<IntersectionResult> {
        self.intersect_in_frame(&OsculatingFrame::new(curve))
    }

    pub fn intersect_in_frame(&self, frame: &OsculatingFrame) -> Result<IntersectionResult> {
        let n = frame.curve().dim();
        if self.values.len() != n {
            return Err(Error::BadDimension(format!(
                "{} values for a curve in R^{n}",
                self.values.len()
            )));
        }
        let prepared = prepare(&self.values, self.precision, self.gap_floor)?;
        let precision = prepared.precision;
        let solve_at = |working: Precision| -> Result<(Vec<Hyperplane>, SolveReport)> {
            let hyperplanes = prepared
                .values
                .iter()
                .map(|a| frame.hyperplane_at(a, working))
                .collect::<Result<Vec<_>>>()?;
            let matrix: Vec<Vec<Float>> = hyperplanes.iter().map(|h| h.normal.clone()).collect();
            let rhs: Vec<Float> = hyperplanes.iter().map(|h| h.offset.clone()).collect();
            let report = solve_linear(&matrix, &rhs, working).map_err(|e| match e {
                Error::SingularSystem(detail) => Error::SingularSystem(format!(
                    "{detail}; minimum ln-gap between inputs is {:.3e}",
                    prepared.min_ln_gap
                )),
                other => other,
            })?;
            Ok((hyperplanes, report))
        };
        let (working, (hyperplanes, report)) = match self.working {
            Working::Exact => (precision, solve_at(precision)?),
            Working::Adaptive => {
                let first = precision.widened(BASE_GUARD_BITS);
                let (planes, report) = solve_at(first)?;
                let needed = condition_bits(report.condition_estimate) + 16;
                if needed > BASE_GUARD_BITS {
                    let second = precision.widened(needed.min(8 * precision.bits() + 1024));
                    (second, solve_at(second)?)
                } else {
                    (first, (planes, report))
                }
            }
        };
        let bits = precision.bits();
        let mut result = IntersectionResult {
            values: prepared.values,
            hyperplanes,
            point: report.solution.iter().map(|x| Float::with_val(bits, x)).collect(),
            wide_point: report.solution.clone(),
            report,
            means: BTreeMap::new(),
            precision,
            working_precision: working,
            min_ln_gap: prepared.min_ln_gap,
            warnings: prepared.warnings,
        };
        // Coordinate 1 is always inverted; on every built-in curve x_1(t) = t.
        match invert_coordinate(frame.curve(), 1, &result) {
            Ok(m1) => {
                if !result.is_between(&m1) {
                    result.warnings.push(format!(
                        "M_1 = {} is not strictly between the smallest and largest input",
                        m1.to_f64()
                    ));
                }
                result.means.insert(1, m1);
            }
            Err(e) => result.warnings.push(format!("M_1 unavailable: {e}")),
        }
        Ok(result)
    }

    /// `M_1, ..., M_n` on `curve`.
    pub fn all_means(&self, curve: &Curve) -> Result<IntersectionResult> {
        check_mean_index(curve, curve.dim(), &self.values)?;
        let mut result = self.intersect(curve)?;
        for k in 2..=curve.dim() {
            let m = invert_coordinate(curve, k, &result)?;
            if !result.is_between(&m) {
                result.warnings.push(format!(
                    "M_{k} = {} is not strictly between the smallest and largest input",
                    m.to_f64()
                ));
            }
            result.means.insert(k, m);
        }
        Ok(result)
    }

    /// `M_k` on `curve`, attached to the returned intersection.
    pub fn mean(&self, curve: &Curve, k: usize) -> Result<IntersectionResult> {
        self.mean_in_frame(&OsculatingFrame::new(curve), k)
    }

    pub fn mean_in_frame(&self, frame: &OsculatingFrame, k: usize) -> Result<IntersectionResult> {
        let curve = frame.curve();
        check_mean_index(curve, k, &self.values)?;
        let mut result = self.intersect_in_frame(frame)?;
        if !result.means.contains_key(&k) {
            let m = invert_coordinate(curve, k, &result)?;
            result.means.insert(k, m);
        }
        let m = &result.means[&k];
        if !result.is_between(m) {
            let note = format!(
                "M_{k} = {} is not strictly between the smallest and largest input",
                m.to_f64()
            );
            if !result.warnings.contains(&note) {
                result.warnings.push(note);
            }
        }
        Ok(result)
    }
}

fn check_mean_index(curve: &Curve, k: usize, values: &[Float]) -> Result<()> {
    let n = curve.dim();
    if k == 0 || k > n {
        return Err(Error::BadIndex { index: k, len: n });
    }
    if curve.kind() == CurveKind::Log && k >= 2 {
        let one = Float::with_val(53, 1);
        if let Some(v) = values.iter().find(|v| **v <= one) {
            return Err(Error::DomainError(format!(
                "M_{k} on the log curve needs every input > 1 (x_{k} is not monotone below 1), got {}; \
                 rescale the inputs first",
                describe(v)
            )));
        }
    }
    Ok(())
}

/// `x_k^-1(i_k)` with the bracket `[a_1, a_n]`.
fn invert_coordinate(curve: &Curve, k: usize, result: &IntersectionResult) -> Result<Float> {
    let component = curve.component(k)?;
    let target = &result.wide_point[k - 1];
    let out = result.precision.bits();
    if *component == LogPoly::t() {
        return Ok(Float::with_val(out, target));
    }
    let precision = result.working_precision;
    let bits = precision.bits();
    let derivative = component.diff();
    let nan = || Float::with_val(bits, Special::Nan);
    let f = |t: &Float| match component.eval(t, precision) {
        Ok(v) => Float::with_val(bits, &v - target),
        Err(_) => nan(),
    };
    let df = |t: &Float| derivative.eval(t, precision).unwrap_or_else(|_| nan());
    let lo = &result.values[0];
    let hi = &result.values[result.values.len() - 1];
    let root = find_root_bracketed_newton(f, df, lo, hi, precision)?;
    Ok(Float::with_val(out, root))
}

/// Intersection of the osculating hyperplanes of `curve` at `values`.
pub fn intersect(curve: &Curve, values: &[Float], precision: Precision) -> Result<IntersectionResult> {
    MeanRequest::new(values.to_vec(), precision).intersect(curve)
}

/// `M_k(a_1, ..., a_n) = x_k^-1(i_k)`.
pub fn mean_m(curve: &Curve, k: usize, values: &[Float], precision: Precision) -> Result<Float> {
    let result = MeanRequest::new(values.to_vec(), precision).mean(curve, k)?;
    Ok(result.means[&k].clone())
}

/// Scale factor `lambda = e / min(values)` and the scaled tuple, all of whose entries
/// are at least `e > 1`.
pub fn rescale_for_inversion(values: &[Float], precision: Precision) -> Result<(Vec<Float>, Float)> {
    check_positive(values)?;
    check_distinct(values)?;
    let bits = precision.bits();
    let min = values
        .iter()
        .min_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal))
        .ok_or_else(|| Error::BadDimension("empty input".into()))?;
    let e = Float::with_val(bits, 1).exp();
    let lambda = Float::with_val(bits, &e / min);
    let scaled = values
        .iter()
        .map(|v| Float::with_val(bits, v * &lambda))
        .collect();
    Ok((scaled, lambda))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frame {
    /// Value is a mean of the caller's inputs.
    Original,
    /// Value is a mean of the inputs multiplied by `lambda`.
    Scaled,
}

#[derive(Clone, Debug)]
pub struct ScaledMean {
    pub value: Float,
    pub lambda: Float,
    pub frame: Frame,
}

/// `M_k` after [`rescale_for_inversion`]. `M_1` is homogeneous and is mapped back to
/// the caller's frame; `M_k` for `k >= 2` is reported in the scaled frame.
pub fn mean_m_rescaled(curve: &Curve, k: usize, values: &[Float], precision: Precision) -> Result<ScaledMean> {
    let (scaled, lambda) = rescale_for_inversion(values, precision)?;
    let value = mean_m(curve, k, &scaled, precision)?;
    if k == 1 {
        let bits = precision.bits();
        Ok(ScaledMean {
            value: Float::with_val(bits, &value / &lambda),
            lambda,
            frame: Frame::Original,
        })
    } else {
        Ok(ScaledMean {
            value,
            lambda,
            frame: Frame::Scaled,
        })
    }
}

fn validate_mean_input(values: &[Float]) -> Result<()> {
    if values.len() < 2 {
        return Err(Error::BadDimension(format!(
            "a mean needs at least 2 values, got {}",
            values.len()
        )));
    }
    check_distinct(values)
}

/// Guard-bit schedule shared by the closed-form means: evaluate once with
/// [`BASE_GUARD_BITS`], then again with `needed(first_pass)` bits if that is larger.
fn with_adaptive_guard<T>(
    precision: Precision,
    eval: impl Fn(u32) -> (T, u32),
) -> T {
    let cap = 8 * precision.bits() + 1024;
    let (value, needed) = eval(precision.bits() + BASE_GUARD_BITS);
    if needed <= BASE_GUARD_BITS {
        return value;
    }
    eval(precision.bits() + needed.min(cap)).0
}

fn log2_ceil(x: &Float) -> u32 {
    if x.is_zero() || !x.is_finite() {
        return 0;
    }
    x.get_exp().map_or(0, |e| e.max(0) as u32)
}

/// `L_N(a) = (n-1)! sum_j a_j / prod_{i != j} (ln a_j - ln a_i)`.
///
/// Evaluated with enough guard bits to cover the cancellation in the sum, then
/// rounded once to `precision`.
pub fn neuman_ln(values: &[Float], precision: Precision) -> Result<Float> {
    validate_mean_input(values)?;
    let n = values.len();
    let sum = with_adaptive_guard(precision, |bits| {
        let logs: Vec<Float> = values.iter().map(|a| Float::with_val(bits, a.ln_ref())).collect();
        let mut sum = Float::with_val(bits, 0);
        let mut magnitude = Float::with_val(bits, 0);
        let mut max_log = Float::with_val(bits, 0);
        let mut min_gap = Float::with_val(bits, Special::Infinity);
        for (j, a) in values.iter().enumerate() {
            let mut denom = Float::with_val(bits, 1);
            for i in 0..n {
                if i != j {
                    let gap = Float::with_val(bits, &logs[j] - &logs[i]);
                    let abs_gap = Float::with_val(bits, gap.abs_ref());
                    if abs_gap < min_gap {
                        min_gap = abs_gap;
                    }
                    denom *= gap;
                }
            }
            let term = Float::with_val(bits, a / &denom);
            magnitude += Float::with_val(bits, term.abs_ref());
            sum += term;
            let abs_log = Float::with_val(bits, logs[j].abs_ref());
            if abs_log > max_log {
                max_log = abs_log;
            }
        }
        // Error model: every term carries n relative roundings plus the relative
        // error of its ln-gaps, about max|ln a| / min gap ulps each.
        let amplification = Float::with_val(bits, &magnitude / &sum).abs()
            * (Float::with_val(bits, &max_log / &min_gap) + 1u32)
            * (n as u32 * n as u32);
        let needed = log2_ceil(&amplification) + 8;
        (sum, needed)
    });
    let bits = precision.bits();
    let scale = Float::with_val(sum.prec(), factorial((n - 1) as u32));
    Ok(Float::with_val(bits, sum * scale))
}

/// Cramer-quotient form of `L_N`:
/// `(n-1)! sum_i (-1)^(n+i) a_i prod_{j<k; j,k != i} (ln a_k - ln a_j) / prod_{j<k} (ln a_k - ln a_j)`.
///
/// Evaluated directly at `precision` without guard bits.
pub fn neuman_ln_cramer_form(values: &[Float], precision: Precision) -> Result<Float> {
    validate_mean_input(values)?;
    let n = values.len();
    let bits = precision.bits();
    let logs: Vec<Float> = values.iter().map(|a| Float::with_val(bits, a.ln_ref())).collect();
    let vandermonde = |skip: Option<usize>| {
        let mut prod = Float::with_val(bits, 1);
        for k in 0..n {
            for j in 0..k {
                if Some(j) == skip || Some(k) == skip {
                    continue;
                }
                prod *= Float::with_val(bits, &logs[k] - &logs[j]);
            }
        }
        prod
    };
    let mut numerator = Float::with_val(bits, 0);
    for (i, a) in values.iter().enumerate() {
        // 1-based index i + 1.
        let term = Float::with_val(bits, a * vandermonde(Some(i)));
        if (n + i + 1).is_multiple_of(2) {
            numerator += term;
        } else {
            numerator -= term;
        }
    }
    let denominator = vandermonde(None);
    let scale = Float::with_val(bits, factorial((n - 1) as u32));
    Ok(numerator / denominator * scale)
}

/// Harmonic number `1 + 1/2 + ... + 1/(n-1)`.
fn harmonic(n: usize, bits: u32) -> Float {
    (1..n).fold(Float::with_val(bits, 0), |acc, k| acc + Float::with_val(bits, 1) / k as u32)
}

/// `I_Z(a) = exp[ (1/V) sum_i (-1)^(n+i) a_i^(n-1) V_i ln a_i - m ]` with the
/// Vandermonde product `V`, its column-deleted minors `V_i`, and `m = H_(n-1)`.
pub fn identric_iz(values: &[Float], precision: Precision) -> Result<Float> {
    validate_mean_input(values)?;
    check_positive(values)?;
    let n = values.len();
    let exponent = with_adaptive_guard(precision, |bits| {
        let vandermonde = |skip: Option<usize>| {
            let mut prod = Float::with_val(bits, 1);
            for i in 0..n {
                for j in 0..i {
                    if Some(j) == skip || Some(i) == skip {
                        continue;
                    }
                    prod *= Float::with_val(bits, &values[i] - &values[j]);
                }
            }
            prod
        };
        let full = vandermonde(None);
        let mut sum = Float::with_val(bits, 0);
        let mut magnitude = Float::with_val(bits, 0);
        for (i, a) in values.iter().enumerate() {
            let power = Float::with_val(bits, a.pow_ref_u((n - 1) as u32));
            let ln = Float::with_val(bits, a.ln_ref());
            let term = Float::with_val(bits, power * vandermonde(Some(i))) * ln / &full;
            magnitude += Float::with_val(bits, term.abs_ref());
            if (n + i + 1).is_multiple_of(2) {
                sum += term;
            } else {
                sum -= term;
            }
        }
        let exponent = sum - harmonic(n, bits);
        // Absolute error in the exponent is relative error in the result.
        let amplification = magnitude * (n as u32 * n as u32 * 4);
        let needed = log2_ceil(&amplification) + 8;
        (exponent, needed)
    });
    Ok(Float::with_val(precision.bits(), exponent.exp()))
}

trait PowU {
    fn pow_ref_u(&self, e: u32) -> Float;
}

impl PowU for Float {
    fn pow_ref_u(&self, e: u32) -> Float {
        use rug::ops::Pow;
        Float::with_val(self.prec(), self.pow(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wronskian::{make_log_curve, make_monomial_curve};

    fn floats(values: &[f64], bits: u32) -> Vec<Float> {
        values.iter().map(|&v| Float::with_val(bits, v)).collect()
    }

    fn e_powers(bits: u32, powers: &[u32]) -> Vec<Float> {
        powers
            .iter()
            .map(|&p| Float::with_val(bits, p).exp())
            .collect()
    }

    fn rel(a: &Float, b: &Float) -> f64 {
        (Float::with_val(a.prec(), a - b) / b).abs().to_f64()
    }

    #[test]
    fn quartic_plane_at_one() {
        let curve = make_monomial_curve(&[1, 2, 3, 4]).unwrap();
        let frame = OsculatingFrame::new(&curve);
        let plane = hyperplane_at(&curve, &Float::with_val(53, 1), Precision::DOUBLE).unwrap();
        let normal: Vec<f64> = plane.normal.iter().map(Float::to_f64).collect();
        assert_eq!(normal, vec![48.0, -72.0, 48.0, -12.0]);
        assert_eq!(plane.offset, 12.0);
        let exact = frame.exact_hyperplane_at(&Rational::from(1)).unwrap().primitive();
        let ints: Vec<Rational> = [4, -6, 4, -1].iter().map(|&v| Rational::from(v)).collect();
        assert_eq!(exact.normal, ints);
        assert_eq!(exact.offset, 1);
    }

    #[test]
    fn log3_plane_at_one() {
        let curve = make_log_curve(3).unwrap();
        let plane = hyperplane_at(&curve, &Float::with_val(53, 1), Precision::DOUBLE).unwrap();
        let normal: Vec<f64> = plane.normal.iter().map(Float::to_f64).collect();
        assert_eq!(normal, vec![2.0, -2.0, 1.0]);
        assert_eq!(plane.offset, 2.0);
        assert!(hyperplane_at(&curve, &Float::with_val(53, 0), Precision::DOUBLE).is_err());
    }

    #[test]
    fn tangent_case_is_log_mean() {
        let curve = make_log_curve(2).unwrap();
        let values = floats(&[2.0, 5.0], 53);
        let result = intersect(&curve, &values, Precision::DOUBLE).unwrap();
        let expected = 3.0 / (5f64.ln() - 2f64.ln());
        assert!((result.point[0].to_f64() - expected).abs() / expected < 1e-14);
    }

    #[test]
    fn log3_at_powers_of_e() {
        let curve = make_log_curve(3).unwrap();
        let values = e_powers(113, &[0, 1, 2]);
        let result = intersect(&curve, &values, Precision::QUAD).unwrap();
        let e = Float::with_val(113, 1).exp();
        let expected = Float::with_val(113, &e - 1u32).square();
        assert!(rel(&result.point[0], &expected) < 1e-30);
        assert!(rel(&result.means[&1], &expected) < 1e-30);
        let ln = neuman_ln(&values, Precision::QUAD).unwrap();
        assert!(rel(&ln, &expected) < 1e-32);
        assert!(result.all_between());
        assert!(result.max_plane_residual() < 1e-30);
    }

    #[test]
    fn duplicates_rejected() {
        let curve = make_log_curve(3).unwrap();
        let err = intersect(&curve, &floats(&[2.0, 2.0, 3.0], 53), Precision::DOUBLE).unwrap_err();
        assert_eq!(err, Error::DistinctnessViolation("2".into()));
        assert_eq!(err.to_string(), "duplicate value 2");
        assert!(matches!(
            intersect(&curve, &floats(&[-1.0, 2.0, 3.0], 53), Precision::DOUBLE),
            Err(Error::NonPositiveArgument(_))
        ));
        assert!(matches!(
            intersect(&curve, &floats(&[1.0, 2.0], 53), Precision::DOUBLE),
            Err(Error::BadDimension(_))
        ));
    }

    #[test]
    fn unsorted_input_is_sorted() {
        let curve = make_log_curve(3).unwrap();
        let a = intersect(&curve, &floats(&[3.0, 1.5, 7.0], 53), Precision::DOUBLE).unwrap();
        let b = intersect(&curve, &floats(&[1.5, 3.0, 7.0], 53), Precision::DOUBLE).unwrap();
        assert_eq!(a.point, b.point);
    }

    #[test]
    fn mean_indices() {
        let curve = make_log_curve(2).unwrap();
        let values = e_powers(53, &[1, 2]);
        let m2 = mean_m(&curve, 2, &values, Precision::DOUBLE).unwrap();
        assert!(m2 > values[0] && m2 < values[1]);
        assert_eq!(
            mean_m(&curve, 0, &values, Precision::DOUBLE),
            Err(Error::BadIndex { index: 0, len: 2 })
        );
        assert_eq!(
            mean_m(&curve, 3, &values, Precision::DOUBLE),
            Err(Error::BadIndex { index: 3, len: 2 })
        );
        let low = floats(&[0.5, 2.0], 53);
        assert!(matches!(
            mean_m(&curve, 2, &low, Precision::DOUBLE),
            Err(Error::DomainError(_))
        ));
        // M_1 has no such restriction.
        assert!(mean_m(&curve, 1, &low, Precision::DOUBLE).is_ok());
    }

    #[test]
    fn rescaling() {
        let p = Precision::DOUBLE;
        let e = Float::with_val(53, 1).exp();
        let (scaled, lambda) = rescale_for_inversion(&floats(&[0.5, 2.0], 53), p).unwrap();
        assert!(rel(&lambda, &Float::with_val(53, &e * 2u32)) < 1e-15);
        assert!(rel(&scaled[0], &e) < 1e-15);
        assert!(rel(&scaled[1], &Float::with_val(53, &e * 4u32)) < 1e-15);

        let (scaled, lambda) = rescale_for_inversion(&floats(&[2.0, 3.0], 53), p).unwrap();
        assert!(rel(&lambda, &Float::with_val(53, &e / 2u32)) < 1e-15);
        assert!(rel(&scaled[1], &Float::with_val(53, &e * 1.5f64)) < 1e-15);

        let original = floats(&[0.3, 0.7, 2.0], 53);
        let (scaled, lambda) = rescale_for_inversion(&original, p).unwrap();
        let back = Float::with_val(53, neuman_ln(&scaled, p).unwrap() / &lambda);
        let direct = neuman_ln(&original, p).unwrap();
        assert!(rel(&back, &direct) <= 4.0 * p.epsilon());

        let curve = make_log_curve(3).unwrap();
        let m = mean_m_rescaled(&curve, 2, &original, p).unwrap();
        assert_eq!(m.frame, Frame::Scaled);
        let m1 = mean_m_rescaled(&curve, 1, &original, p).unwrap();
        assert_eq!(m1.frame, Frame::Original);
        assert!(rel(&m1.value, &direct) < 1e-12);
    }

    #[test]
    fn neuman_examples() {
        let p = Precision::DOUBLE;
        let v = neuman_ln(&e_powers(53, &[0, 1, 2]), p).unwrap();
        assert!((v.to_f64() - 2.952492442012559).abs() < 1e-14);
        let v = neuman_ln(&floats(&[1.0, 4.0], 53), p).unwrap();
        assert!((v.to_f64() - 3.0 / 4f64.ln()).abs() < 1e-15);
        assert!(matches!(neuman_ln(&floats(&[2.0, 2.0], 53), p), Err(Error::DistinctnessViolation(_))));
        assert!(matches!(neuman_ln(&floats(&[0.0, 2.0], 53), p), Err(Error::NonPositiveArgument(_))));
        assert!(matches!(neuman_ln(&floats(&[2.0], 53), p), Err(Error::BadDimension(_))));
    }

    #[test]
    fn identric_examples() {
        let p = Precision::DOUBLE;
        let e = std::f64::consts::E;
        let v = identric_iz(&floats(&[1.0, e], 53), p).unwrap();
        assert!((v.to_f64() - (1.0 / (e - 1.0)).exp()).abs() < 1e-14);
        assert!((v.to_f64() - 1.789_57).abs() < 1e-5);
        let (a, b) = (2.0f64, 7.0f64);
        let expected = ((b * b.ln() - a * a.ln()) / (b - a) - 1.0).exp();
        let v = identric_iz(&floats(&[a, b], 53), p).unwrap();
        assert!((v.to_f64() - expected).abs() / expected < 1e-14);
    }

    #[test]
    fn cramer_form_matches() {
        let p = Precision::DOUBLE;
        let values = floats(&[1.3, 2.9, 4.4, 17.0], 53);
        let a = neuman_ln(&values, p).unwrap();
        let b = neuman_ln_cramer_form(&values, p).unwrap();
        assert!(rel(&a, &b) < 1e-12);
    }

    #[test]
    fn conditioning_guard_escalates() {
        let curve = make_log_curve(3).unwrap();
        let values = floats(&[2.0, 2.000_000_1, 5.0], 53);
        let result = intersect(&curve, &values, Precision::DOUBLE).unwrap();
        assert_eq!(result.precision, Precision::QUAD);
        assert_eq!(result.warnings.len(), 1);
        assert!(result.min_ln_gap < 1e-6);
    }

    #[test]
    fn contact_order() {
        let curve = make_monomial_curve(&[1, 2, 3, 4]).unwrap();
        let frame = OsculatingFrame::new(&curve);
        let c = frame.contact_function(&Rational::from(1)).unwrap();
        // -12 (t - 1)^4
        let expected: LogPoly = "-12*t^4 + 48*t^3 - 72*t^2 + 48*t - 12".parse().unwrap();
        assert_eq!(c, expected);
        for j in 0..4 {
            assert_eq!(c.diff_n(j).eval_at_one(), 0);
        }
        assert_ne!(c.diff_n(4).eval_at_one(), 0);
    }
}
