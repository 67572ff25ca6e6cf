//! Every mean `M_1..M_n` of a tuple on the log curve, including the
//! rescaled variant for tuples that reach below 1.

use oscmean::means::{mean_m_rescaled, MeanRequest};
use oscmean::wronskian::make_log_curve;
use oscmean::{Float, Precision};

fn main() -> oscmean::Result<()> {
    let p = Precision::QUAD;
    let values = [2.0, 3.0, 5.0, 8.0, 13.0];
    let curve = make_log_curve(values.len())?;

    let r = MeanRequest::from_f64(&values, p).all_means(&curve)?;
    println!("values {values:?}");
    for (k, m) in &r.means {
        println!("  M_{k} = {:.25}", m);
    }
    println!("  all inside (a_1, a_n): {}", r.all_between());

    // M_k for k >= 2 needs values above 1; rescaling moves the tuple there.
    let low: Vec<Float> = [0.2, 0.5, 0.9].iter().map(|&v| Float::with_val(p.bits(), v)).collect();
    let curve = make_log_curve(low.len())?;
    println!("values [0.2, 0.5, 0.9]");
    for k in 1..=low.len() {
        let s = mean_m_rescaled(&curve, k, &low, p)?;
        println!("  M_{k} = {:.20} ({:?} frame, lambda {:.6})", s.value, s.frame, s.lambda);
    }
    Ok(())
}
