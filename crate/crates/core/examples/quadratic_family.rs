//! Fibers of y^2 = x^3 - 3 delta x - 2 delta (2an + b) for f = x^2 + 1:
//! minimal discriminants, conductors, Szpiro ratios and empirical kappa.
//!
//!     cargo run --release --example quadratic_family -- 1 2000

use gpfscan::families::QuadraticGPF;
use gpfscan::scan::{self, Family, ScanConfig};

fn main() -> gpfscan::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (lo, hi) = match args.as_slice() {
        [lo, hi, ..] => (*lo, *hi),
        _ => (1, 500),
    };
    let fam = Family::quadratic(QuadraticGPF::new(1, 0, 1)?)?;
    let spec = fam.spec();
    println!("A = {}, B = {}, rho = {}", spec.a(), spec.b(), spec.rho());
    println!("D = {}", spec.d());

    let out = scan::scan_family(&fam, lo, hi, &ScanConfig::default())?;
    for r in out.records.iter().take(8) {
        println!(
            "n = {:<4} delta_min = {:<12} N = {:<10} szpiro = {:.4} kappa_emp = {:.4}",
            r.n,
            r.delta_min
                .as_ref()
                .map(|d| d.to_string())
                .unwrap_or_default(),
            r.conductor
                .as_ref()
                .map(|d| d.to_string())
                .unwrap_or_default(),
            r.szpiro_ratio.unwrap_or(f64::NAN),
            r.kappa_emp.unwrap_or(f64::NAN),
        );
    }
    let s = &out.summary;
    let divides = out.records.iter().all(|r| r.rad_divides == Some(true));
    println!("{} fibers, rad(D(n)) | rho N on all: {divides}", s.rows);
    if let Some(m) = s.max_szpiro_ratio {
        println!("max Szpiro ratio {:.4} at n = {}", m.value, m.n);
    }
    if let Some(m) = s.max_kappa_emp {
        println!("max kappa_emp {:.4} at n = {}", m.value, m.n);
    }
    let ratios: Vec<&str> = s.quasi_ratios.iter().map(String::as_str).collect();
    println!(
        "D(n) / delta_min takes the values {{{}}}",
        ratios.join(", ")
    );
    Ok(())
}
