use std::fmt::Write as _;

use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::identities::{Check, IdentityReport};
use crate::means::IntersectionResult;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Human,
    Json,
    Csv,
}

/// One report row in the machine-readable formats.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Row {
    pub identity: String,
    pub n: Option<usize>,
    pub exact: Option<bool>,
    pub max_rel_error: Option<f64>,
    pub instances: usize,
    pub warnings: Vec<String>,
}

impl From<&IdentityReport> for Row {
    fn from(r: &IdentityReport) -> Self {
        let (exact, max_rel_error) = match r.check {
            Check::Exact { holds } => (Some(holds), None),
            Check::Numeric { max_rel_error, .. } => (None, Some(max_rel_error)),
        };
        Row {
            identity: r.identity.clone(),
            n: r.n,
            exact,
            max_rel_error,
            instances: r.instances,
            warnings: r.warnings.clone(),
        }
    }
}

fn serialization(e: impl std::fmt::Display) -> Error {
    Error::Parse(format!("cannot serialize output: {e}"))
}

pub(super) fn render_rows(reports: &[IdentityReport], format: OutputFormat) -> Result<String> {
    let rows: Vec<Row> = reports.iter().map(Row::from).collect();
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&rows).map_err(serialization)?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["identity", "n", "exact", "max_rel_error", "instances", "warnings"])
                .map_err(serialization)?;
            for r in &rows {
                w.write_record([
                    r.identity.clone(),
                    r.n.map(|n| n.to_string()).unwrap_or_default(),
                    r.exact.map(|b| b.to_string()).unwrap_or_default(),
                    r.max_rel_error.map(|e| format!("{e:e}")).unwrap_or_default(),
                    r.instances.to_string(),
                    r.warnings.join("; "),
                ])
                .map_err(serialization)?;
            }
            let bytes = w.into_inner().map_err(serialization)?;
            String::from_utf8(bytes).map_err(serialization)
        }
        OutputFormat::Human => Ok(render_rows_human(reports)),
    }
}

fn render_rows_human(reports: &[IdentityReport]) -> String {
    let mut out = String::new();
    let (mut passed, mut failed, mut info) = (0, 0, 0);
    for r in reports {
        let n = r.n.map(|n| format!("n={n}")).unwrap_or_default();
        let (status, detail) = match r.check {
            Check::Exact { holds } => (if holds { "PASS" } else { "FAIL" }, format!("exact {holds}")),
            Check::Numeric {
                max_rel_error,
                threshold: Some(t),
            } => (
                if max_rel_error < t { "PASS" } else { "FAIL" },
                format!("max_rel_error {max_rel_error:.3e} (threshold {t:.0e})"),
            ),
            Check::Numeric {
                max_rel_error,
                threshold: None,
            } => ("INFO", format!("max_rel_error {max_rel_error:.3e} (not gated)")),
        };
        match status {
            "PASS" => passed += 1,
            "FAIL" => failed += 1,
            _ => info += 1,
        }
        let _ = writeln!(
            out,
            "{status}  {:<36} {n:<4} {detail}, {} instances",
            r.identity, r.instances
        );
        for w in &r.warnings {
            let _ = writeln!(out, "      warning: {w}");
        }
    }
    let _ = writeln!(out, "{passed} passed, {failed} failed, {info} report-only");
    out
}

/// Everything `mean` reports for one tuple.
#[derive(Clone, Debug, Serialize)]
pub struct MeanSummary {
    pub values: Vec<f64>,
    pub point: Vec<f64>,
    pub m1: Option<f64>,
    pub neuman_ln: f64,
    pub rel_gap: Option<f64>,
    pub k: Option<usize>,
    pub mk: Option<f64>,
    pub precision: u32,
    pub working_precision: u32,
    pub residual_norm: f64,
    pub condition_estimate: f64,
    pub warnings: Vec<String>,
    #[serde(skip)]
    decimals: Decimals,
}

#[derive(Clone, Debug)]
struct Decimals {
    point: Vec<String>,
    m1: Option<String>,
    neuman_ln: String,
    mk: Option<String>,
}

fn decimal(x: &Float) -> String {
    x.to_string()
}

impl MeanSummary {
    pub fn new(result: &IntersectionResult, neuman_ln: &Float, k: Option<usize>) -> Self {
        let m1 = result.means.get(&1);
        let rel_gap = m1.map(|m| {
            (Float::with_val(neuman_ln.prec(), m - neuman_ln) / neuman_ln)
                .abs()
                .to_f64()
        });
        let mk = k.and_then(|k| result.means.get(&k));
        MeanSummary {
            values: result.values.iter().map(Float::to_f64).collect(),
            point: result.point.iter().map(Float::to_f64).collect(),
            m1: m1.map(Float::to_f64),
            neuman_ln: neuman_ln.to_f64(),
            rel_gap,
            k,
            mk: mk.map(Float::to_f64),
            precision: result.precision.bits(),
            working_precision: result.working_precision.bits(),
            residual_norm: result.report.residual_norm,
            condition_estimate: result.report.condition_estimate,
            warnings: result.warnings.clone(),
            decimals: Decimals {
                point: result.point.iter().map(decimal).collect(),
                m1: m1.map(decimal),
                neuman_ln: decimal(neuman_ln),
                mk: mk.map(decimal),
            },
        }
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(serialization)?;
                s.push('\n');
                Ok(s)
            }
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["field", "value"]).map_err(serialization)?;
                for (field, value) in self.fields() {
                    w.write_record([field, value]).map_err(serialization)?;
                }
                let bytes = w.into_inner().map_err(serialization)?;
                String::from_utf8(bytes).map_err(serialization)
            }
            OutputFormat::Human => {
                let mut out = String::new();
                for (field, value) in self.fields() {
                    let _ = writeln!(out, "{field:<20} {value}");
                }
                Ok(out)
            }
        }
    }

    fn fields(&self) -> Vec<(String, String)> {
        let mut f = vec![("precision".into(), format!("{} bits", self.precision))];
        for (i, x) in self.decimals.point.iter().enumerate() {
            f.push((format!("i_{}", i + 1), x.clone()));
        }
        if let Some(m1) = &self.decimals.m1 {
            f.push(("M_1".into(), m1.clone()));
        }
        f.push(("L_N".into(), self.decimals.neuman_ln.clone()));
        if let Some(gap) = self.rel_gap {
            f.push(("relative gap".into(), format!("{gap:e}")));
        }
        if let (Some(k @ 2..), Some(mk)) = (self.k, &self.decimals.mk) {
            f.push((format!("M_{k}"), mk.clone()));
        }
        f.push(("residual".into(), format!("{:e}", self.residual_norm)));
        f.push(("condition".into(), format!("{:e}", self.condition_estimate)));
        for w in &self.warnings {
            f.push(("warning".into(), w.clone()));
        }
        f
    }
}
