//! Exact osculating hyperplane of the moment curve `(t, t^2, t^3, t^4)` and its
//! order of contact.

use oscmean::means::OsculatingFrame;
use oscmean::wronskian::make_monomial_curve;
use oscmean::{Float, Precision, Rational};

fn main() -> oscmean::Result<()> {
    let curve = make_monomial_curve(&[1, 2, 3, 4])?;
    let frame = OsculatingFrame::new(&curve);

    let normal: Vec<String> = frame.normal_field().iter().map(|c| c.to_string()).collect();
    println!("N(t) = <{}>", normal.join(", "));

    for a in [1, 2, 3] {
        let plane = frame.exact_hyperplane_at(&Rational::from(a))?.primitive();
        let lhs: Vec<String> = plane
            .normal
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c}*x{}", i + 1))
            .collect();
        println!("a = {a}: {} = {}", lhs.join(" + "), plane.offset);
        println!("        contact h(t) = {}", frame.contact_function(&Rational::from(a))?);
    }

    // The floating-point plane agrees with the exact one up to scale.
    let h = frame.hyperplane_at(&Float::with_val(53, 1), Precision::DOUBLE)?;
    let scale = Float::with_val(53, &h.offset);
    let ratios: Vec<f64> = h.normal.iter().map(|c| Float::with_val(53, c / &scale).to_f64()).collect();
    println!("float plane at a = 1, normalised: {ratios:?}");
    Ok(())
}
