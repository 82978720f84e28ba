//! Factor integers and check rad(m) <= primorial(P(m)) <= 4^P(m).
//!
//!     cargo run --example factor -- 600851475143 -1000000016000000063

use gpfscan::arith;
use gpfscan::BigInt;

fn main() -> gpfscan::Result<()> {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        args = [
            "360",
            "600851475143",
            "-1000000016000000063",
            "2305843009213693951",
        ]
        .map(String::from)
        .to_vec();
    }
    for a in &args {
        let m: BigInt = a
            .parse()
            .map_err(|_| gpfscan::Error::Usage(format!("not an integer: {a}")))?;
        let f = arith::factorize(&m)?;
        let factors: Vec<String> = f
            .factors()
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        let gpf = f.greatest_prime_factor();
        println!(
            "{m} = {}{}",
            if f.sign() < 0 { "-" } else { "" },
            factors.join(" * ")
        );
        println!(
            "  P(m) = {gpf}, rad(m) = {}, prod v_p = {}",
            f.radical(),
            f.valuation_product()
        );

        // the sandwich is checked exactly only while P(m) is small enough to multiply out
        if let Ok(x) = u64::try_from(&gpf) {
            if x < 100_000 {
                let prim = arith::primorial(x as f64);
                let four = gpfscan::BigUint::from(4u32).pow(x as u32);
                println!(
                    "  rad <= primorial(P) <= 4^P: {}",
                    f.radical() <= prim && prim <= four
                );
            }
        }
    }
    Ok(())
}
