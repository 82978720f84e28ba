//! How large does prod v_p(F(n)) get against rad(F(n))? Reports the
//! empirical exponent mu_emp(n) = log(prod v_p) / log rad and a histogram.
//!
//!     cargo run --example condition_check -- "x^2 + 1" 1 10000

use gpfscan::polyz::parse_poly;
use gpfscan::scan::{self, ScanConfig};

fn main() -> gpfscan::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let poly = args.first().cloned().unwrap_or_else(|| "x^3 - 2".into());
    let lo = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let hi = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(2000);

    let f = parse_poly(&poly)?;
    let rep = scan::check_condition(&f, lo, hi, &ScanConfig::default())?;
    if let Some(m) = rep.max_mu_emp {
        let row = rep
            .rows
            .iter()
            .find(|r| r.n == m.n)
            .expect("max comes from a row");
        println!(
            "F = {f} on [{lo}, {hi}]: max mu_emp = {:.4} at n = {} (F(n) = {}, prod v_p = {}, rad = {})",
            m.value, m.n, row.f_n, row.val_product, row.rad
        );
    }
    for b in &rep.histogram {
        println!(
            "  [{:.1}, {:.1})  {:>6}  {}",
            b.lo,
            b.hi,
            b.count,
            "#".repeat((b.count as f64).log2().max(0.0) as usize)
        );
    }
    Ok(())
}
