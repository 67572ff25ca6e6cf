//! Wronskian minors of the curve `(t, t ln t, ..., t ln^{n-1} t)` computed by
//! symbolic determinants and compared with their closed forms.

use oscmean::wronskian::{closed_form_v, full_wronskian_closed_form, make_log_curve, normal_field, wronskian_full, wronskian_minor};

fn main() -> oscmean::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let curve = make_log_curve(n)?;
    println!("curve: {}", curve.label());

    for k in 1..=n {
        let minor = wronskian_minor(&curve, k)?;
        let closed = closed_form_v(k, n)?;
        let tag = if minor == closed { "ok" } else { "MISMATCH" };
        println!("V_{k}^({n}) = {minor}    [{tag}]");
    }

    let full = wronskian_full(&curve);
    println!("W = {full}    [{}]", if full == full_wronskian_closed_form(n) { "ok" } else { "MISMATCH" });

    println!("normal field:");
    for (k, c) in normal_field(&curve).iter().enumerate() {
        println!("  N_{} = {c}", k + 1);
    }
    Ok(())
}
