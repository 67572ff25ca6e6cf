//! Exact and seeded numeric identity suites, printed as a table.

use oscmean::identities::{exact_suite, numeric_suite, Check};
use oscmean::Precision;

fn main() -> oscmean::Result<()> {
    let max_n = 5;
    let mut rows = exact_suite(max_n)?;
    rows.extend(numeric_suite(max_n, 25, 0, Precision::DOUBLE)?);

    let mut failed = 0;
    for r in &rows {
        let detail = match r.check {
            Check::Exact { holds } => format!("exact {holds}"),
            Check::Numeric { max_rel_error, .. } => format!("{max_rel_error:.2e}"),
        };
        let n = r.n.map(|n| n.to_string()).unwrap_or_else(|| "-".into());
        println!("{:<4} {:<36} n={n:<2} {detail}", if r.passed() { "ok" } else { "FAIL" }, r.identity);
        if !r.passed() {
            failed += 1;
            println!("     reproduce: {}", r.reproducer());
        }
    }
    println!("{} rows, {failed} failed", rows.len());
    Ok(())
}
