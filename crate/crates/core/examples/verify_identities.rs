//! The discriminants of the quadratic and cubic constructions are
//! -6912 delta^2 a f(t) and -1728 c^3 f(t); check both symbolically.

use gpfscan::families::{self, CubicGPF, QuadraticGPF};

fn main() -> gpfscan::Result<()> {
    let q = QuadraticGPF::new(1, 0, 1)?;
    let check = families::verify_quadratic_identity(&q);
    println!("f = {}: D(t) = {}  [{}]", q.poly(), check.lhs, check.holds);

    let c = CubicGPF::new(2, 1, -1)?;
    let check = families::verify_cubic_identity(&c);
    println!("f = {}: D(t) = {}  [{}]", c.poly(), check.lhs, check.holds);

    let start = std::time::Instant::now();
    let t = families::verify_identities_random(1000, 2024, 1000)?;
    println!(
        "1000 random triples each, coefficients in [-1000, 1000]: quadratic failures {}, cubic failures {} ({:.2?})",
        t.quadratic_failures.len(),
        t.cubic_failures.len(),
        start.elapsed()
    );
    Ok(())
}
