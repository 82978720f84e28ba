//! Range scans over polynomial values and over the fibers of a family.
//!
//! Work is split into chunks of consecutive `n` (1024 by default). Chunks
//! are computed in parallel and handed, in order, to a single consumer, so
//! rows and summaries do not depend on the chunk size or the thread count.
//! [`run_scan`] adds file output and checkpoint/resume on top.

mod persist;
mod record;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

pub use persist::{run_scan, Checkpoint, RunOptions, RunOutcome};
pub use record::{read_csv, read_json, Flag, Format, ScanRecord, CSV_HEADER};

use crate::arith::{self, FactorConfig, Factorization};
use crate::bounds::{self, BoundParams};
use crate::ellcurve::{self, WeierstrassModel};
use crate::families::{self, cubic_curve, quadratic_curve, CubicGPF, QuadraticGPF, SurfaceSpec};
use crate::polyz::{self, IntPoly};
use crate::{Error, Result};
use record::dec;

pub const DEFAULT_CHUNK_SIZE: usize = 1024;

/// Knobs of a scan. Everything except `chunk_size` enters the checkpoint
/// digest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub factor: FactorConfig,
    pub chunk_size: usize,
    pub bounds: BoundParams,
    /// Fraction of rows re-derived in the verification pass.
    pub verify_fraction: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            factor: FactorConfig::default(),
            chunk_size: DEFAULT_CHUNK_SIZE,
            bounds: BoundParams::default(),
            verify_fraction: 0.01,
        }
    }
}

/// A family of curves indexed by `n`, with the value `f_n` whose
/// factorization goes into the row.
#[derive(Debug, Clone)]
pub enum Family {
    /// `y^2 = x^3 + A(n)x + B(n)`, `f_n = D(n)`.
    Surface(SurfaceSpec),
    /// The quadratic construction, `f_n = f(n)`.
    Quadratic(QuadraticGPF, SurfaceSpec),
    /// The cubic construction, `f_n = f(n)`.
    Cubic(CubicGPF, SurfaceSpec),
}

impl Family {
    pub fn surface(a: IntPoly, b: IntPoly) -> Result<Self> {
        Ok(Family::Surface(families::make_surface(a, b)?))
    }

    pub fn quadratic(f: QuadraticGPF) -> Result<Self> {
        let s = f.surface()?;
        Ok(Family::Quadratic(f, s))
    }

    pub fn cubic(f: CubicGPF) -> Result<Self> {
        let s = f.surface()?;
        Ok(Family::Cubic(f, s))
    }

    pub fn spec(&self) -> &SurfaceSpec {
        match self {
            Family::Surface(s) | Family::Quadratic(_, s) | Family::Cubic(_, s) => s,
        }
    }

    pub fn value(&self, n: &BigInt) -> BigInt {
        match self {
            Family::Surface(s) => s.d().eval(n),
            Family::Quadratic(f, _) => f.poly().eval(n),
            Family::Cubic(f, _) => f.poly().eval(n),
        }
    }

    pub fn fiber(&self, n: &BigInt) -> Result<WeierstrassModel> {
        let spec = self.spec();
        if spec.is_bad(n) {
            return Err(Error::BadFiber { n: n.clone() });
        }
        Ok(match self {
            Family::Surface(s) => families::fiber(s, n)?,
            Family::Quadratic(f, _) => quadratic_curve(f, n),
            Family::Cubic(f, _) => cubic_curve(f, n),
        })
    }

    fn describe(&self) -> serde_json::Value {
        match self {
            Family::Surface(s) => json!({
                "kind": "surface",
                "A": s.a().to_coeff_list(),
                "B": s.b().to_coeff_list(),
            }),
            Family::Quadratic(f, _) => json!({
                "kind": "quadratic",
                "abc": [f.a.to_string(), f.b.to_string(), f.c.to_string()],
            }),
            Family::Cubic(f, _) => json!({
                "kind": "cubic",
                "abc": [f.a.to_string(), f.b.to_string(), f.c.to_string()],
            }),
        }
    }
}

/// What to compute for each `n`.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum ScanJob {
    /// Factor `f(n)`.
    Gpf(IntPoly),
    /// Factor `f_n` and compute the fiber's minimal discriminant and conductor.
    Family(Family),
}

impl ScanJob {
    fn validate(&self) -> Result<()> {
        if let ScanJob::Gpf(f) = self {
            if f.is_constant() {
                return Err(Error::Usage(format!("polynomial {f} is constant")));
            }
        }
        Ok(())
    }

    fn describe(&self) -> serde_json::Value {
        match self {
            ScanJob::Gpf(f) => json!({ "kind": "gpf", "poly": f.to_coeff_list() }),
            ScanJob::Family(fam) => fam.describe(),
        }
    }
}

/// `(n, value)` at which a maximum was first attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub n: i64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minimum {
    pub n: i64,
    #[serde(with = "dec")]
    pub gpf: BigUint,
}

/// Aggregates over all rows, in `n` order.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ScanSummary {
    pub rows: u64,
    pub ok: u64,
    pub zero_value: u64,
    pub bad_fiber: u64,
    pub factor_cap: u64,
    /// Every `(n, gpf)` where the gpf dropped below all earlier values.
    pub running_minima: Vec<Minimum>,
    pub max_kappa_emp: Option<Extremum>,
    pub max_szpiro_ratio: Option<Extremum>,
    pub max_mu_emp: Option<Extremum>,
    /// Distinct values of `D(n) / delta_min`.
    pub quasi_ratios: BTreeSet<String>,
}

fn bump(slot: &mut Option<Extremum>, n: i64, v: Option<f64>) {
    if let Some(v) = v {
        if slot.is_none_or(|e| v > e.value) {
            *slot = Some(Extremum { n, value: v });
        }
    }
}

impl ScanSummary {
    pub fn absorb(&mut self, rows: &[ScanRecord]) {
        for r in rows {
            self.rows += 1;
            match r.flags {
                Flag::Ok => self.ok += 1,
                Flag::ZeroValue => self.zero_value += 1,
                Flag::BadFiber => self.bad_fiber += 1,
                Flag::FactorCap => self.factor_cap += 1,
            }
            if let Some(g) = &r.gpf {
                if self.running_minima.last().is_none_or(|m| g < &m.gpf) {
                    self.running_minima.push(Minimum {
                        n: r.n,
                        gpf: g.clone(),
                    });
                }
            }
            bump(&mut self.max_kappa_emp, r.n, r.kappa_emp);
            bump(&mut self.max_szpiro_ratio, r.n, r.szpiro_ratio);
            bump(&mut self.max_mu_emp, r.n, r.mu_emp);
            if let Some(q) = &r.quasi_ratio {
                self.quasi_ratios.insert(q.clone());
            }
        }
    }
}

/// Rows plus summary of an in-memory scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanOutput {
    pub records: Vec<ScanRecord>,
    pub summary: ScanSummary,
}

fn check_range(lo: i64, hi: i64) -> Result<()> {
    if lo > hi {
        return Err(Error::Usage(format!("empty range: from {lo} > to {hi}")));
    }
    Ok(())
}

/// GPF, radical and valuation product of `f(n)` for `n` in `[lo, hi]`.
pub fn scan_gpf(f: &IntPoly, lo: i64, hi: i64, cfg: &ScanConfig) -> Result<ScanOutput> {
    collect(&ScanJob::Gpf(f.clone()), lo, hi, cfg)
}

/// Curve invariants and empirical ratios for the fibers at `n` in `[lo, hi]`.
pub fn scan_family(family: &Family, lo: i64, hi: i64, cfg: &ScanConfig) -> Result<ScanOutput> {
    collect(&ScanJob::Family(family.clone()), lo, hi, cfg)
}

fn collect(job: &ScanJob, lo: i64, hi: i64, cfg: &ScanConfig) -> Result<ScanOutput> {
    check_range(lo, hi)?;
    job.validate()?;
    let mut summary = ScanSummary::default();
    let mut records = Vec::new();
    drive(job, lo, hi, cfg, &mut summary, |rows, _, _| {
        records.extend_from_slice(rows);
        Ok(true)
    })?;
    Ok(ScanOutput { records, summary })
}

/// Computes chunks starting at `start` and feeds them in order to `sink`,
/// which receives the rows, the last `n` of the chunk and the updated
/// summary, and returns whether to continue. Returns whether `hi` was
/// reached.
pub(crate) fn drive<F>(
    job: &ScanJob,
    start: i64,
    hi: i64,
    cfg: &ScanConfig,
    summary: &mut ScanSummary,
    mut sink: F,
) -> Result<bool>
where
    F: FnMut(&[ScanRecord], i64, &ScanSummary) -> Result<bool>,
{
    let size = cfg.chunk_size.max(1) as i64;
    let width = rayon::current_num_threads().max(1);
    let mut next = Some(start).filter(|&s| s <= hi);
    while let Some(from) = next {
        let mut ranges = Vec::with_capacity(width);
        let mut cursor = Some(from);
        while ranges.len() < width {
            let Some(a) = cursor else { break };
            let b = a.saturating_add(size - 1).min(hi);
            ranges.push((a, b));
            cursor = b.checked_add(1).filter(|&c| c <= hi);
        }
        next = cursor;
        let batch: Vec<Result<Vec<ScanRecord>>> = ranges
            .par_iter()
            .map(|&(a, b)| compute_chunk(job, a, b, cfg))
            .collect();
        for (rows, &(_, b)) in batch.into_iter().zip(&ranges) {
            let rows = rows?;
            summary.absorb(&rows);
            if !sink(&rows, b, summary)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn compute_chunk(job: &ScanJob, a: i64, b: i64, cfg: &ScanConfig) -> Result<Vec<ScanRecord>> {
    let mut rows = Vec::with_capacity((b - a + 1) as usize);
    for n in a..=b {
        let row = compute_row(job, n, cfg)?;
        verify_row(job, &row, cfg)?;
        rows.push(row);
    }
    Ok(rows)
}

fn factor_columns(r: &mut ScanRecord, fact: &Factorization) {
    let rad = fact.radical();
    let vp = fact.valuation_product();
    r.mu_emp = bounds::mu_emp(&vp, &rad);
    r.gpf = Some(fact.greatest_prime_factor());
    r.rad = Some(rad);
    r.val_product = Some(vp);
}

fn capped<T>(res: Result<T>) -> Result<Option<T>> {
    match res {
        Ok(v) => Ok(Some(v)),
        Err(Error::FactorCap { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// One row of `job` at `n`.
pub fn compute_row(job: &ScanJob, n: i64, cfg: &ScanConfig) -> Result<ScanRecord> {
    let nn = BigInt::from(n);
    match job {
        ScanJob::Gpf(f) => {
            let f_n = f.eval(&nn);
            if f_n.is_zero() {
                return Ok(ScanRecord::bare(n, f_n, Flag::ZeroValue));
            }
            let Some(fact) = capped(arith::factorize_with(&f_n, &cfg.factor))? else {
                return Ok(ScanRecord::bare(n, f_n, Flag::FactorCap));
            };
            let mut r = ScanRecord::bare(n, f_n, Flag::Ok);
            factor_columns(&mut r, &fact);
            let x = (n.unsigned_abs()) as f64;
            if x >= 2.0 {
                let k = cfg.bounds.kappa;
                r.bound_columns
                    .insert("gpf_shape".into(), bounds::gpf_shape(x, k)?);
                r.bound_columns
                    .insert("stewart_yu_shape".into(), bounds::stewart_yu_shape(x)?);
            }
            Ok(r)
        }
        ScanJob::Family(fam) => family_row(fam, n, &nn, cfg),
    }
}

fn family_row(fam: &Family, n: i64, nn: &BigInt, cfg: &ScanConfig) -> Result<ScanRecord> {
    let f_n = fam.value(nn);
    let spec = fam.spec();
    if spec.is_bad(nn) {
        return Ok(ScanRecord::bare(n, f_n, Flag::BadFiber));
    }
    if f_n.is_zero() {
        return Ok(ScanRecord::bare(n, f_n, Flag::ZeroValue));
    }
    let mut r = ScanRecord::bare(n, f_n, Flag::FactorCap);
    let Some(fact) = capped(arith::factorize_with(&r.f_n, &cfg.factor))? else {
        return Ok(r);
    };
    factor_columns(&mut r, &fact);

    let e = fam.fiber(nn)?;
    let Some(g) = capped(ellcurve::conductor_with(&e, &cfg.factor))? else {
        return Ok(r);
    };
    r.szpiro_ratio = if g.conductor >= BigUint::from(2u32) {
        Some(ellcurve::szpiro_ratio_from(&g.delta_min, &g.conductor)?)
    } else {
        None
    };
    r.kappa_emp = bounds::kappa_emp(&g.delta_min, &g.conductor);
    let ln_n = arith::ln_biguint(&g.conductor);
    if ln_n > 0.0 {
        let shape = cfg.bounds.kappa * (ln_n * bounds::iter_log_of_ln(ln_n, 2)).sqrt();
        r.bound_columns.insert("log_szpiro_shape".into(), shape);
    }
    r.bound_columns
        .insert("log_abs_delta_min".into(), arith::ln_abs(&g.delta_min));
    r.delta_min = Some(g.delta_min.clone());
    r.conductor = Some(g.conductor.clone());

    let Some(q) = capped(families::quasiminimality_from(spec, nn, &g, &cfg.factor))? else {
        return Ok(r);
    };
    r.quasi_ratio = Some(q.ratio.to_string());
    r.rad_divides = Some(q.rad_divides);
    r.flags = Flag::Ok;
    Ok(r)
}

fn sampled(n: i64, cfg: &ScanConfig) -> bool {
    let frac = cfg.verify_fraction;
    if frac <= 0.0 {
        return false;
    }
    if frac >= 1.0 {
        return true;
    }
    let seed = cfg.factor.seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    ChaCha8Rng::seed_from_u64(seed).gen_bool(frac)
}

fn broken(r: &ScanRecord, what: &str) -> Error {
    Error::Internal(format!("row n = {} failed verification: {what}", r.n))
}

/// Structural checks on every row, plus an independent re-derivation on a
/// sample of rows.
fn verify_row(job: &ScanJob, r: &ScanRecord, cfg: &ScanConfig) -> Result<()> {
    if let (Some(gpf), Some(rad)) = (&r.gpf, &r.rad) {
        let f = r.f_n.magnitude();
        if !rad.is_multiple_of(gpf) || !f.is_multiple_of(rad) {
            return Err(broken(r, "gpf | rad | |f_n|"));
        }
    }
    if let ScanJob::Family(fam) = job {
        if r.rad_divides == Some(false) {
            return Err(broken(r, "rad(D(n)) does not divide rho N"));
        }
        if r.flags != Flag::BadFiber {
            let nn = BigInt::from(r.n);
            if fam.fiber(&nn)?.discriminant() != fam.spec().d().eval(&nn) {
                return Err(broken(r, "fiber discriminant differs from D(n)"));
            }
        }
    }
    if !sampled(r.n, cfg) || r.flags != Flag::Ok {
        return Ok(());
    }
    let alt = FactorConfig {
        seed: cfg.factor.seed.wrapping_add(1),
        ..cfg.factor
    };
    let Some(fact) = capped(arith::factorize_with(&r.f_n, &alt))? else {
        return Ok(());
    };
    if fact.reconstruct() != r.f_n
        || r.gpf.as_ref() != Some(&fact.greatest_prime_factor())
        || r.rad.as_ref() != Some(&fact.radical())
        || r.val_product.as_ref() != Some(&fact.valuation_product())
    {
        return Err(broken(r, "refactorization disagrees"));
    }
    if let (Some(d), Some(nc)) = (&r.delta_min, &r.conductor) {
        let rad_d = capped(arith::radical_with(d, &alt))?;
        let rad_n = capped(arith::radical_with(&BigInt::from(nc.clone()), &alt))?;
        if let (Some(a), Some(b)) = (rad_d, rad_n) {
            if a != b {
                return Err(broken(r, "rad(N) != rad(delta_min)"));
            }
        }
    }
    Ok(())
}

/// The ten values printed in the Luca example: `(n, P(n^2 + 1))`.
pub const LUCA_GOLDEN: [(i64, u64); 10] = [
    (24208141, 119529857),
    (24208142, 121140377),
    (24208143, 67749617053),
    (24208144, 89),
    (24208145, 5218192121),
    (24208146, 586034332757317),
    (24208147, 58603438117361),
    (24208148, 117206885917981),
    (24208149, 2292977009),
    (24208150, 127793609),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LucaRow {
    pub n: i64,
    pub value: BigInt,
    pub gpf: BigUint,
    pub expected: u64,
}

impl LucaRow {
    pub fn matches(&self) -> bool {
        self.gpf == BigUint::from(self.expected)
    }
}

/// Recomputes `P(n^2 + 1)` for the ten golden `n` from scratch.
pub fn luca_table() -> Result<Vec<LucaRow>> {
    let f = IntPoly::from_i64s(&[1, 0, 1]);
    let (lo, hi) = (LUCA_GOLDEN[0].0, LUCA_GOLDEN[9].0);
    let out = scan_gpf(&f, lo, hi, &ScanConfig::default())?;
    out.records
        .into_iter()
        .zip(LUCA_GOLDEN)
        .map(|(r, (n, expected))| {
            debug_assert_eq!(r.n, n);
            let gpf = r
                .gpf
                .ok_or_else(|| Error::Internal(format!("no factorization at n = {n}")))?;
            Ok(LucaRow {
                n,
                value: r.f_n,
                gpf,
                expected,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionRow {
    pub n: i64,
    #[serde(with = "dec")]
    pub f_n: BigInt,
    #[serde(with = "dec")]
    pub val_product: BigUint,
    #[serde(with = "dec")]
    pub rad: BigUint,
    pub mu_emp: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: u64,
}

/// Empirical exponents `mu_emp(n) = log(prod v_p) / log rad` over a range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub rows: Vec<ConditionRow>,
    pub max_mu_emp: Option<Extremum>,
    /// Bins of width [`HISTOGRAM_WIDTH`] starting at 0.
    pub histogram: Vec<HistogramBin>,
    /// Values of `n` with `|F(n)| < 2`.
    pub skipped_small: u64,
    pub factor_cap: u64,
}

pub const HISTOGRAM_WIDTH: f64 = 0.1;

/// Probes how large the valuation product of `F(n)` gets relative to its
/// radical.
pub fn check_condition(f: &IntPoly, lo: i64, hi: i64, cfg: &ScanConfig) -> Result<ConditionReport> {
    check_range(lo, hi)?;
    let roots = polyz::distinct_root_count(f)?;
    if roots < 2 {
        return Err(Error::domain(format!(
            "the valuation-product condition is posed for F with at least two distinct \
             complex roots; F = {f} has {roots}"
        )));
    }
    let out = scan_gpf(f, lo, hi, cfg)?;
    let mut rows = Vec::new();
    let mut skipped_small = 0;
    let mut factor_cap = 0;
    let mut max = None;
    let mut bins: BTreeMap<u64, u64> = BTreeMap::new();
    for r in out.records {
        if r.flags == Flag::FactorCap {
            factor_cap += 1;
            continue;
        }
        if r.f_n.magnitude() < &BigUint::from(2u32) {
            skipped_small += 1;
            continue;
        }
        let (Some(vp), Some(rad), Some(mu)) = (r.val_product, r.rad, r.mu_emp) else {
            return Err(Error::Internal(format!(
                "row n = {} lacks factor columns",
                r.n
            )));
        };
        bump(&mut max, r.n, Some(mu));
        *bins
            .entry((mu / HISTOGRAM_WIDTH).floor() as u64)
            .or_default() += 1;
        rows.push(ConditionRow {
            n: r.n,
            f_n: r.f_n,
            val_product: vp,
            rad,
            mu_emp: mu,
        });
    }
    let top = bins.keys().next_back().copied();
    let histogram = top
        .map(|top| {
            (0..=top)
                .map(|i| HistogramBin {
                    lo: i as f64 * HISTOGRAM_WIDTH,
                    hi: (i + 1) as f64 * HISTOGRAM_WIDTH,
                    count: bins.get(&i).copied().unwrap_or(0),
                })
                .collect()
        })
        .unwrap_or_default();
    Ok(ConditionReport {
        rows,
        max_mu_emp: max,
        histogram,
        skipped_small,
        factor_cap,
    })
}

/// Content hash of everything that determines the rows: the job, the range,
/// the factoring and bound parameters and the output format.
pub fn spec_digest(job: &ScanJob, lo: i64, hi: i64, cfg: &ScanConfig, format: Format) -> String {
    use sha2::{Digest, Sha256};
    let desc = json!({
        "job": job.describe(),
        "lo": lo,
        "hi": hi,
        "factor": cfg.factor,
        "bounds": cfg.bounds,
        "verify_fraction": cfg.verify_fraction,
        "format": format,
    });
    format!("{:x}", Sha256::digest(desc.to_string().as_bytes()))
}

/// Whether `r`'s ratio is `u^12` or `u^-12` for an integer `u`.
pub fn is_twelfth_power_ratio(ratio: &str) -> bool {
    let (num, den) = match ratio.split_once('/') {
        Some((a, b)) => (a, b),
        None => (ratio, "1"),
    };
    let (Ok(num), Ok(den)) = (num.parse::<BigInt>(), den.parse::<BigInt>()) else {
        return false;
    };
    let value = if den.abs().is_one() {
        num.abs()
    } else if num.abs().is_one() {
        den.abs()
    } else {
        return false;
    };
    let m = value.magnitude();
    let u = m.nth_root(12);
    u.pow(12) == *m
}

#[cfg(test)]
mod tests;
