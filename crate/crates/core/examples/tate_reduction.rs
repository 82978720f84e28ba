//! Tate's algorithm on a handful of curves: Kodaira symbols, conductor
//! exponents, Tamagawa numbers, global minimal models.
//!
//!     cargo run --example tate_reduction -- 0,0,0,-16,0

use gpfscan::ellcurve::{self, WeierstrassModel};

fn main() -> gpfscan::Result<()> {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        args = [
            "0,-1,1,0,0",
            "0,0,0,-1,0",
            "0,0,0,0,1",
            "0,0,0,-16,0",
            "1,-1,1,-1030,10519",
            "0,0,0,-1156,0",
        ]
        .map(String::from)
        .to_vec();
    }
    for a in &args {
        let e = WeierstrassModel::parse(a)?;
        let g = ellcurve::conductor(&e)?;
        let (min, w) = ellcurve::minimal_model(&e)?;
        println!("{e}: delta = {}", e.discriminant());
        println!(
            "  minimal {min} via u = {}, delta_min = {}",
            w.u, g.delta_min
        );
        println!(
            "  N = {}, Szpiro ratio {:.4}",
            g.conductor,
            ellcurve::szpiro_ratio_from(&g.delta_min, &g.conductor)?
        );
        for l in &g.locals {
            println!(
                "    p = {:<6} {:<5} f = {} v = {:<3} c = {}",
                l.p.to_string(),
                l.kodaira.to_string(),
                l.f_p,
                l.v_delta_min,
                l.tamagawa
            );
        }
    }
    Ok(())
}
