//! Exact arithmetic and differentiation in the ring spanned by `t^m ln^j t`.

use oscmean::wronskian::wronskian;
use oscmean::{LogPoly, Precision};

fn main() -> oscmean::Result<()> {
    let f: LogPoly = "t*L^2 - 3/2*t^-1".parse()?;
    let g: LogPoly = "t^2 + L".parse()?;
    println!("f = {f}");
    println!("g = {g}");
    println!("f + g = {}", &f + &g);
    println!("f * g = {}", &f * &g);
    for order in 1..=3 {
        println!("f^({order}) = {}", f.diff_n(order));
    }
    println!("f(1) = {}", f.eval_at_one());
    println!("f(2.5) = {:.30}", f.eval_f64(2.5, Precision::QUAD)?);
    println!("W(f, g) = {}", wronskian(&[f, g]));
    Ok(())
}
