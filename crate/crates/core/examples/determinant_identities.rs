//! Signed-minor and replaced-column determinants: symbolic at n = 3, numeric
//! against their closed forms for larger n, and the Cramer quotient against `L_N`.

use oscmean::identities::{cramer_quotient, prop3_check, prop3_symbolic, prop4_check, prop4_symbolic, TupleSampler};
use oscmean::means::neuman_ln;
use oscmean::{Float, Precision};

fn main() -> oscmean::Result<()> {
    let (det, closed) = prop3_symbolic(3)?;
    println!("signed minors, n = 3:\n  det    = {det}\n  closed = {closed}");
    let (det, closed) = prop4_symbolic(3)?;
    println!("replaced column, n = 3:\n  det    = {det}\n  closed = {closed}");
    println!("(z0..z2 are ln a_1..ln a_3, z3..z5 are a_1..a_3)\n");

    let p = Precision::QUAD;
    for n in 3..=6 {
        let t = TupleSampler::new(1, "demo", n, 1.1, 50.0, 0.05).tuple(n);
        let values: Vec<Float> = t.iter().map(|&v| Float::with_val(p.bits(), v)).collect();
        let a = prop3_check(&values, p)?;
        let b = prop4_check(&values, p)?;
        let q = cramer_quotient(&values, p)?;
        let ln = neuman_ln(&values, p)?;
        let gap = (Float::with_val(p.bits(), &q - &ln) / &ln).abs().to_f64();
        println!(
            "n = {n}: signed-minor {:.2e}, replaced-column {:.2e}, Cramer vs L_N {gap:.2e}",
            a.rel_error, b.rel_error
        );
    }
    Ok(())
}
