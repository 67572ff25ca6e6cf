//! How the working precision of the intersection solve affects the residual and
//! the agreement with `L_N`, on a tuple with closely spaced values.

use oscmean::means::{neuman_ln, MeanRequest, Working};
use oscmean::wronskian::make_log_curve;
use oscmean::{Float, Precision};

fn main() -> oscmean::Result<()> {
    let values = [1.5, 1.62, 1.75, 1.9, 2.05, 2.2];
    let curve = make_log_curve(values.len())?;

    println!("{:>5} {:>9} {:>9} {:>11} {:>11} {:>10}", "bits", "working", "solved", "residual", "condition", "gap");
    for bits in [53, 80, 113, 200] {
        let p = Precision::new(bits)?;
        for working in [Working::Exact, Working::Adaptive] {
            let r = MeanRequest::from_f64(&values, p).with_working(working).intersect(&curve)?;
            let ln = neuman_ln(&r.values, p)?;
            let gap = (Float::with_val(bits, &r.means[&1] - &ln) / &ln).abs().to_f64();
            println!(
                "{bits:>5} {:>9} {:>9} {:>11.2e} {:>11.2e} {gap:>10.2e}",
                format!("{working:?}"),
                r.working_precision.bits(),
                r.report.residual_norm,
                r.report.condition_estimate,
            );
        }
    }
    Ok(())
}
