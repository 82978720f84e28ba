use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gpfscan::arith::{self, FactorConfig};
use gpfscan::ellcurve::{self, WeierstrassModel};
use gpfscan::families::{self, CubicGPF, QuadraticGPF};
use gpfscan::polyz::{self, IntPoly};
use gpfscan::scan::{self, Family, Format, RunOptions, ScanConfig, ScanJob, ScanSummary};
use gpfscan::{BigInt, Error, Result};

/// Greatest prime factors, elliptic-surface fibers and Szpiro-ratio scans.
#[derive(Parser)]
#[command(name = "gpfscan", version, allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Factor an integer and print P(m), rad(m) and the valuation product.
    Factor {
        #[arg(allow_hyphen_values = true)]
        m: BigInt,
        #[command(flatten)]
        factor: FactorArgs,
    },
    /// Factor f(n) over a range of n.
    GpfScan {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Minimal discriminants, conductors and empirical ratios along a family.
    FamilyScan {
        #[arg(long = "A-poly", allow_hyphen_values = true, requires = "b_poly",
              conflicts_with_all = ["quadratic", "cubic"])]
        a_poly: Option<String>,
        #[arg(long = "B-poly", allow_hyphen_values = true, requires = "a_poly")]
        b_poly: Option<String>,
        /// a,b,c of f = ax^2 + bx + c
        #[arg(long, allow_hyphen_values = true, conflicts_with = "cubic")]
        quadratic: Option<String>,
        /// a,b,c of f = (ax + b)^3 + c
        #[arg(long, allow_hyphen_values = true)]
        cubic: Option<String>,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Tate's algorithm, minimal model and conductor of one curve.
    Curve {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a1: BigInt,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a2: BigInt,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a3: BigInt,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a4: BigInt,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a6: BigInt,
        #[command(flatten)]
        factor: FactorArgs,
    },
    /// Check both discriminant identities on random admissible triples.
    VerifyIdentities {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coefficients are drawn from [-bound, bound].
        #[arg(long, default_value_t = 1000)]
        bound: i64,
    },
    /// Empirical exponents log(prod v_p(F(n))) / log rad(F(n)).
    ConditionCheck {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[command(flatten)]
        range: RangeArgs,
        /// Print every row as CSV.
        #[arg(long)]
        rows: bool,
    },
    /// Recompute P(n^2 + 1) for n = 24208141..24208150.
    Luca,
}

#[derive(Args)]
struct FactorArgs {
    #[arg(long, default_value_t = FactorConfig::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = FactorConfig::default().max_rho_iterations)]
    max_rho_iterations: u64,
}

impl FactorArgs {
    fn config(&self) -> FactorConfig {
        FactorConfig {
            seed: self.seed,
            max_rho_iterations: self.max_rho_iterations,
        }
    }
}

#[derive(Args)]
struct RangeArgs {
    #[arg(long, allow_hyphen_values = true)]
    from: i64,
    #[arg(long, allow_hyphen_values = true)]
    to: i64,
    #[arg(long, default_value_t = scan::DEFAULT_CHUNK_SIZE)]
    chunk_size: usize,
    #[command(flatten)]
    factor: FactorArgs,
}

impl RangeArgs {
    fn config(&self) -> ScanConfig {
        ScanConfig {
            factor: self.factor.config(),
            chunk_size: self.chunk_size,
            ..ScanConfig::default()
        }
    }
}

#[derive(Args)]
struct OutArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Checkpoint file; the scan continues from it when it exists.
    #[arg(long, alias = "checkpoint")]
    resume: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("gpfscan: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn triple(text: &str) -> Result<(BigInt, BigInt, BigInt)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || Error::Usage(format!("expected three integers a,b,c, got {text:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut v = parts.iter().map(|s| s.parse::<BigInt>().map_err(|_| bad()));
    Ok((v.next().unwrap()?, v.next().unwrap()?, v.next().unwrap()?))
}

fn print_summary(s: &ScanSummary, to_stdout: bool) -> Result<()> {
    let text = serde_json::to_string_pretty(s)?;
    if to_stdout {
        println!("{text}");
    } else {
        eprintln!("{text}");
    }
    Ok(())
}

fn run_job(job: ScanJob, range: &RangeArgs, out: &OutArgs) -> Result<u8> {
    let opts = RunOptions {
        out: out.out.clone(),
        format: Some(out.format),
        checkpoint: out.resume.clone(),
        stop_after_chunks: None,
    };
    let outcome = scan::run_scan(&job, range.from, range.to, &range.config(), &opts)?;
    print_summary(&outcome.summary, out.out.is_some())?;
    Ok(0)
}

fn run(cmd: Cmd) -> Result<u8> {
    match cmd {
        Cmd::Factor { m, factor } => {
            let f = arith::factorize_with(&m, &factor.config())?;
            let parts: Vec<String> = f
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
            let sign = if f.sign() < 0 { "-1 * " } else { "" };
            let body = if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join(" * ")
            };
            println!("{m} = {sign}{body}");
            println!("gpf: {}", f.greatest_prime_factor());
            println!("rad: {}", f.radical());
            println!("val_product: {}", f.valuation_product());
            if f.is_probable() {
                println!("note: some factors are probable primes");
            }
            Ok(0)
        }
        Cmd::GpfScan { poly, range, out } => {
            let f = polyz::parse_poly(&poly)?;
            run_job(ScanJob::Gpf(f), &range, &out)
        }
        Cmd::FamilyScan {
            a_poly,
            b_poly,
            quadratic,
            cubic,
            range,
            out,
        } => {
            let family = match (a_poly, b_poly, quadratic, cubic) {
                (Some(a), Some(b), None, None) => {
                    Family::surface(polyz::parse_poly(&a)?, polyz::parse_poly(&b)?)?
                }
                (None, None, Some(q), None) => {
                    let (a, b, c) = triple(&q)?;
                    Family::quadratic(QuadraticGPF::new(a, b, c)?)?
                }
                (None, None, None, Some(c3)) => {
                    let (a, b, c) = triple(&c3)?;
                    Family::cubic(CubicGPF::new(a, b, c)?)?
                }
                _ => {
                    return Err(Error::Usage(
                        "give exactly one of --A-poly/--B-poly, --quadratic, --cubic".into(),
                    ))
                }
            };
            run_job(ScanJob::Family(family), &range, &out)
        }
        Cmd::Curve {
            a1,
            a2,
            a3,
            a4,
            a6,
            factor,
        } => {
            let e = WeierstrassModel::new(a1, a2, a3, a4, a6);
            let cfg = factor.config();
            let g = ellcurve::conductor_with(&e, &cfg)?;
            let (min, w) = ellcurve::minimal_model_with(&e, &cfg)?;
            println!("model: {e}");
            println!("discriminant: {}", e.discriminant());
            println!("minimal model: {min}");
            println!(
                "transformation [u,r,s,t]: [{},{},{},{}]",
                w.u, w.r, w.s, w.t
            );
            println!("delta_min: {}", g.delta_min);
            println!("conductor: {}", g.conductor);
            if g.conductor > 1u32.into() {
                println!(
                    "szpiro_ratio: {}",
                    ellcurve::szpiro_ratio_from(&g.delta_min, &g.conductor)?
                );
            }
            println!("p,kodaira,f_p,v_p(delta_min),tamagawa,reduction");
            for l in &g.locals {
                println!(
                    "{},{},{},{},{},{:?}",
                    l.p, l.kodaira, l.f_p, l.v_delta_min, l.tamagawa, l.kind
                );
            }
            Ok(0)
        }
        Cmd::VerifyIdentities {
            trials,
            seed,
            bound,
        } => {
            let t = families::verify_identities_random(trials, seed, bound)?;
            println!(
                "quadratic: {}/{trials} hold",
                trials - t.quadratic_failures.len() as u64
            );
            println!(
                "cubic: {}/{trials} hold",
                trials - t.cubic_failures.len() as u64
            );
            for (a, b, c) in &t.quadratic_failures {
                println!("quadratic failure: a={a} b={b} c={c}");
            }
            for (a, b, c) in &t.cubic_failures {
                println!("cubic failure: a={a} b={b} c={c}");
            }
            Ok(if t.all_hold() { 0 } else { 3 })
        }
        Cmd::ConditionCheck { poly, range, rows } => {
            let f: IntPoly = polyz::parse_poly(&poly)?;
            let rep = scan::check_condition(&f, range.from, range.to, &range.config())?;
            if rows {
                println!("n,f_n,val_product,rad,mu_emp");
                for r in &rep.rows {
                    println!("{},{},{},{},{}", r.n, r.f_n, r.val_product, r.rad, r.mu_emp);
                }
            }
            match rep.max_mu_emp {
                Some(m) => println!("max mu_emp: {} at n = {}", m.value, m.n),
                None => println!("max mu_emp: none (no |F(n)| >= 2)"),
            }
            println!(
                "rows: {}, skipped |F(n)| < 2: {}, factor cap: {}",
                rep.rows.len(),
                rep.skipped_small,
                rep.factor_cap
            );
            for b in &rep.histogram {
                println!("[{:.1}, {:.1}): {}", b.lo, b.hi, b.count);
            }
            Ok(0)
        }
        Cmd::Luca => {
            let rows = scan::luca_table()?;
            println!("n,n^2+1,P(n^2+1),expected,match");
            for r in &rows {
                println!(
                    "{},{},{},{},{}",
                    r.n,
                    r.value,
                    r.gpf,
                    r.expected,
                    r.matches()
                );
            }
            Ok(if rows.iter().all(|r| r.matches()) {
                0
            } else {
                3
            })
        }
    }
}
