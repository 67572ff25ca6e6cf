//! The curve `(t, t^2, ..., t^{n-1}, ln t)`: its last coordinate mean against the
//! identric-type mean `I_Z`, over seeded random tuples.

use oscmean::identities::{conjecture_scan, Check};
use oscmean::means::{identric_iz, MeanRequest, OsculatingFrame};
use oscmean::wronskian::make_conjecture_curve;
use oscmean::{Float, Precision};

fn main() -> oscmean::Result<()> {
    let p = Precision::DOUBLE;
    let values = [2.0, 3.5, 7.0];
    let frame = OsculatingFrame::new(&make_conjecture_curve(values.len())?);
    let r = MeanRequest::from_f64(&values, p).mean_in_frame(&frame, values.len())?;
    let floats: Vec<Float> = values.iter().map(|&v| Float::with_val(53, v)).collect();
    println!("values {values:?}");
    println!("  M_3 = {:.17}", r.means[&3]);
    println!("  I_Z = {:.17}", identric_iz(&floats, p)?);

    for n in 3..=5 {
        let report = conjecture_scan(n, 100, 7, p)?;
        if let Check::Numeric { max_rel_error, threshold } = report.check {
            let gate = threshold.map(|t| format!("gate {t:.0e}")).unwrap_or_else(|| "report only".into());
            println!("n = {n}: max relative gap {max_rel_error:.2e} over {} tuples ({gate})", report.instances);
        }
    }
    Ok(())
}
