//! Tabulate the bound shapes: the GPF lower bound (log*_2 n)^2 / log*_3 n
//! against Stewart-Yu's log*_2 n log*_3 n / log*_4 n, and the conductor
//! shapes at a few sizes.

use gpfscan::bounds;

fn main() -> gpfscan::Result<()> {
    let grid: Vec<f64> = [1e2, 1e4, 1e8, 1e16, 1e32, 1e64, 1e128, 1e256].to_vec();
    println!("{:>8}  {:>10}  {:>10}", "n", "gpf", "stewart-yu");
    for r in bounds::shape_grid(&grid, 1.0)? {
        println!(
            "{:>8.0e}  {:>10.4}  {:>10.4}",
            r.n, r.gpf_shape, r.stewart_yu_shape
        );
    }

    println!();
    println!(
        "{:>8}  {:>12}  {:>12}  {:>12}  {:>12}",
        "N", "szpiro", "B(R=N)", "N log N", "N^6"
    );
    for n in [11.0, 37.0, 1e3, 1e5] {
        println!(
            "{:>8}  {:>12.4e}  {:>12.4e}  {:>12.4e}  {:>12.4e}",
            n,
            bounds::szpiro_shape(n, 1.0)?,
            bounds::B_of_R(n)?,
            bounds::murty_pasten_rhs(n, 1.0)?,
            bounds::shimura_rhs(n, 1.0, 0.5)?
        );
    }
    let v = bounds::lfl_rhs(1.0, 2, 5.0, 1.0, &[0.7, 1.3])?;
    println!("\nlinear forms in logarithms, m = 2, N(v) = 5: {v:.6}");
    Ok(())
}
