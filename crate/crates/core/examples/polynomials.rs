//! Parse polynomials and compute gcds, resultants and discriminants.
//!
//!     cargo run --example polynomials -- "(2*t + 1)^3 - 5" "t^2 + 1"

use gpfscan::polyz::{self, parse_poly};

fn main() -> gpfscan::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (fs, gs) = match args.as_slice() {
        [f, g, ..] => (f.clone(), g.clone()),
        _ => ("t^3 - 2*t + 1".to_string(), "16*t".to_string()),
    };
    let f = parse_poly(&fs)?;
    let g = parse_poly(&gs)?;
    println!("f = {f}");
    println!("g = {g}");
    println!("gcd over Q = {}", polyz::gcd_over_q(&f, &g)?);
    println!("Res(f, g) = {}", polyz::resultant(&f, &g)?);
    println!("distinct roots of f: {}", polyz::distinct_root_count(&f)?);
    let roots: Vec<String> = polyz::integer_roots(&f)?
        .iter()
        .map(|r| r.to_string())
        .collect();
    println!("integer roots of f: [{}]", roots.join(", "));

    // y^2 = x^3 + f(t)x + g(t)
    let d = polyz::discriminant_poly(&f, &g);
    println!("-16(4f^3 + 27g^2) = {d}");
    println!("  with {} distinct roots", polyz::distinct_root_count(&d)?);
    Ok(())
}
