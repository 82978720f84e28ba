//! A family scan written to CSV with a checkpoint, stopped part way and
//! resumed; the result is compared with an uninterrupted run.

use std::fs;

use gpfscan::families::QuadraticGPF;
use gpfscan::scan::{self, Family, Format, RunOptions, ScanConfig, ScanJob};

fn main() -> gpfscan::Result<()> {
    let dir = std::env::temp_dir().join(format!("gpfscan-resume-{}", std::process::id()));
    fs::create_dir_all(&dir)?;
    let job = ScanJob::Family(Family::quadratic(QuadraticGPF::new(1, 0, 1)?)?);
    let cfg = ScanConfig {
        chunk_size: 256,
        ..ScanConfig::default()
    };
    let (lo, hi) = (1, 3000);

    let whole = dir.join("whole.csv");
    scan::run_scan(
        &job,
        lo,
        hi,
        &cfg,
        &RunOptions {
            out: Some(whole.clone()),
            format: Some(Format::Csv),
            ..RunOptions::default()
        },
    )?;

    let part = dir.join("part.csv");
    let ckpt = dir.join("part.ckpt");
    let mut opts = RunOptions {
        out: Some(part.clone()),
        format: Some(Format::Csv),
        checkpoint: Some(ckpt.clone()),
        stop_after_chunks: Some(4),
    };
    let first = scan::run_scan(&job, lo, hi, &cfg, &opts)?;
    println!("stopped after {} rows", first.rows_written);

    opts.stop_after_chunks = None;
    let rest = scan::run_scan(&job, lo, hi, &cfg, &opts)?;
    println!(
        "resumed at n = {:?}, {} rows total",
        rest.resumed_from, rest.rows_written
    );

    let same = fs::read(&whole)? == fs::read(&part)?;
    println!("byte-identical to the uninterrupted run: {same}");
    if let Some(k) = rest.summary.max_kappa_emp {
        println!("max kappa_emp {:.6} at n = {}", k.value, k.n);
    }
    fs::remove_dir_all(&dir)?;
    Ok(())
}
