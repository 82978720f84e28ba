//! Recompute the greatest prime factors of n^2 + 1 for ten consecutive n
//! found by Luca, where P(n^2 + 1) = 89 sits among values above 10^8.

fn main() -> gpfscan::Result<()> {
    let start = std::time::Instant::now();
    let rows = gpfscan::scan::luca_table()?;
    println!("{:>10}  {:>16}  {:>16}", "n", "n^2 + 1", "P(n^2 + 1)");
    for r in &rows {
        let mark = if r.matches() { "" } else { "  MISMATCH" };
        println!("{:>10}  {:>16}  {:>16}{mark}", r.n, r.value, r.gpf);
    }
    println!(
        "{} of 10 match, {:.2?}",
        rows.iter().filter(|r| r.matches()).count(),
        start.elapsed()
    );
    Ok(())
}
