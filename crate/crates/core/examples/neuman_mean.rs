//! Osculating-hyperplane mean `M_1` of a tuple against the closed form `L_N`.
//!
//! ```text
//! cargo run --example neuman_mean -- 1.5 4 9 20
//! ```

use oscmean::means::{neuman_ln, MeanRequest};
use oscmean::wronskian::make_log_curve;
use oscmean::{Float, Precision};

fn main() -> oscmean::Result<()> {
    let mut values: Vec<f64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    if values.len() < 2 {
        values = vec![1.0, std::f64::consts::E, std::f64::consts::E.powi(2)];
    }
    let curve = make_log_curve(values.len())?;

    for bits in [53, 113, 256] {
        let p = Precision::new(bits)?;
        let r = MeanRequest::from_f64(&values, p).intersect(&curve)?;
        let m1 = &r.means[&1];
        let ln = neuman_ln(&r.values, p)?;
        let gap = Float::with_val(bits, m1 - &ln).abs() / &ln;
        println!("{bits:>4} bits  M_1 = {:.30}", m1);
        println!("           L_N = {:.30}", ln);
        println!("           relative gap {:.3e}, condition {:.2e}", gap.to_f64(), r.report.condition_estimate);
    }
    Ok(())
}
