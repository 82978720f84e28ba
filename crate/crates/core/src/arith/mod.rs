//! Factorization of unbounded integers and the multiplicative functions
//! built on it: greatest prime factor, radical, valuations, valuation
//! products and primorials.

mod primes;
mod rho;

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use primes::{is_prime, is_prime_u64, primality, sieve, small_primes, Primality, PrimeIter};

use crate::{Error, Result};
use rho::Budget;

/// Knobs for the rho stage. Results are a pure function of the input and
/// this configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorConfig {
    pub seed: u64,
    /// Total rho iterations allowed for one call to [`factorize_with`].
    pub max_rho_iterations: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            seed: 0x005e_ed0f_9a7e,
            max_rho_iterations: 1 << 26,
        }
    }
}

/// A nonzero integer with its prime-power decomposition, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: BigInt,
    factors: Vec<(BigUint, u32)>,
    probable: bool,
}

impl Factorization {
    pub fn value(&self) -> &BigInt {
        &self.value
    }

    /// `-1` or `1`.
    pub fn sign(&self) -> i32 {
        if self.value.sign() == Sign::Minus {
            -1
        } else {
            1
        }
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    /// True when some listed prime is only a probable prime (above the range
    /// where the primality test is proven).
    pub fn is_probable(&self) -> bool {
        self.probable
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Largest prime factor, `1` for a unit.
    pub fn greatest_prime_factor(&self) -> BigUint {
        self.factors
            .last()
            .map(|(p, _)| p.clone())
            .unwrap_or_else(BigUint::one)
    }

    pub fn radical(&self) -> BigUint {
        self.factors.iter().map(|(p, _)| p).product()
    }

    /// Product of the exponents, `1` for a unit.
    pub fn valuation_product(&self) -> BigUint {
        self.factors
            .iter()
            .map(|(_, e)| BigUint::from(*e))
            .product()
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// Recomputes `sign * prod p^e`.
    pub fn reconstruct(&self) -> BigInt {
        let mag: BigUint = self.factors.iter().map(|(p, e)| p.pow(*e)).product();
        BigInt::from_biguint(
            if self.sign() < 0 {
                Sign::Minus
            } else {
                Sign::Plus
            },
            mag,
        )
    }
}

fn require_nonzero(m: &BigInt, what: &str) -> Result<()> {
    if m.is_zero() {
        Err(Error::domain(format!("{what} is undefined at 0")))
    } else {
        Ok(())
    }
}

/// Factors `m` with the default configuration.
pub fn factorize(m: &BigInt) -> Result<Factorization> {
    factorize_with(m, &FactorConfig::default())
}

/// Factors `m`: trial division by primes below 10^6, then perfect-power
/// detection and Brent's rho on the cofactors. Fails with
/// [`Error::FactorCap`] when the rho budget runs out.
pub fn factorize_with(m: &BigInt, cfg: &FactorConfig) -> Result<Factorization> {
    require_nonzero(m, "factorize")?;
    let mut found: Vec<BigUint> = Vec::new();
    let mut probable = false;
    let mut n = m.magnitude().clone();

    let cofactor = if let Some(small) = n.to_u64() {
        let mut small_found = Vec::new();
        let rest = trial_divide_u64(small, &mut small_found);
        found.extend(small_found.into_iter().map(BigUint::from));
        BigUint::from(rest)
    } else {
        trial_divide_big(&mut n, &mut found);
        n
    };

    if !cofactor.is_one() {
        let limit = primes::TRIAL_LIMIT as u64;
        if cofactor < BigUint::from(limit * limit) {
            // no factor below the trial limit, so it is prime
            found.push(cofactor);
        } else {
            let mut budget = Budget {
                remaining: cfg.max_rho_iterations,
                used: 0,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut stack = vec![cofactor];
            while let Some(c) = stack.pop() {
                match primality(&c) {
                    Primality::Prime => found.push(c),
                    Primality::Probable => {
                        probable = true;
                        found.push(c)
                    }
                    Primality::Composite => {
                        let (a, b) =
                            split(&c, &mut rng, &mut budget).map_err(|_| Error::FactorCap {
                                value: c.clone(),
                                iterations: budget.used,
                            })?;
                        stack.push(a);
                        stack.push(b);
                    }
                }
            }
        }
    }

    found.sort();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for p in found {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization {
        value: m.clone(),
        factors,
        probable,
    })
}

fn trial_divide_u64(mut n: u64, out: &mut Vec<u64>) -> u64 {
    for &p in small_primes() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
    }
    if n > 1 && n < (primes::TRIAL_LIMIT as u64).pow(2) {
        out.push(n);
        return 1;
    }
    n
}

fn trial_divide_big(n: &mut BigUint, out: &mut Vec<BigUint>) {
    for &p in small_primes() {
        if let Some(small) = n.to_u64() {
            let mut rest = Vec::new();
            let r = trial_divide_u64(small, &mut rest);
            out.extend(rest.into_iter().map(BigUint::from));
            *n = BigUint::from(r);
            return;
        }
        while (&*n % p).is_zero() {
            out.push(BigUint::from(p));
            *n /= p;
        }
    }
}

/// Splits a composite with no prime factor below the trial limit.
fn split(
    n: &BigUint,
    rng: &mut ChaCha8Rng,
    budget: &mut Budget,
) -> std::result::Result<(BigUint, BigUint), ()> {
    // Prime factors exceed 2^19, so exponents above bits/19 are impossible.
    let max_k = (n.bits() / 19).max(2) as u32;
    for k in 2..=max_k {
        let r = n.nth_root(k);
        if r.pow(k) == *n {
            let rest = n / &r;
            return Ok((r, rest));
        }
    }
    loop {
        let d = if let Some(small) = n.to_u64() {
            let c = rng.gen_range(1..small);
            let x0 = rng.gen_range(0..small);
            rho::brent_u64(small, c, x0, budget)?.map(BigUint::from)
        } else {
            let c = BigUint::from(rng.gen::<u64>()) % n;
            let x0 = BigUint::from(rng.gen::<u64>()) % n;
            rho::brent_big(n, &c, &x0, budget)?
        };
        if let Some(d) = d {
            let rest = n / &d;
            return Ok((d, rest));
        }
    }
}

/// Greatest prime factor of `|m|`; `1` for `m = +-1`.
pub fn greatest_prime_factor(m: &BigInt) -> Result<BigUint> {
    Ok(factorize(m)?.greatest_prime_factor())
}

/// Product of the distinct primes dividing `m`; `1` for `m = +-1`.
pub fn radical(m: &BigInt) -> Result<BigUint> {
    Ok(factorize(m)?.radical())
}

pub fn radical_with(m: &BigInt, cfg: &FactorConfig) -> Result<BigUint> {
    Ok(factorize_with(m, cfg)?.radical())
}

/// Largest `e` with `p^e | m`, by repeated division.
pub fn valuation(p: &BigUint, m: &BigInt) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::domain(format!("valuation base {p} is not prime")));
    }
    require_nonzero(m, "valuation")?;
    Ok(valuation_unchecked(p, m.magnitude()))
}

pub(crate) fn valuation_unchecked(p: &BigUint, m: &BigUint) -> u32 {
    let mut e = 0;
    let mut n = m.clone();
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

/// Same as [`valuation`] for signed values.
pub fn valuation_int(p: &BigInt, m: &BigInt) -> Result<u32> {
    if !p.is_positive() {
        return Err(Error::domain(format!("valuation base {p} is not prime")));
    }
    valuation(p.magnitude(), m)
}

/// `prod_{p | m} v_p(m)`; `1` for `m = +-1`.
pub fn valuation_product(m: &BigInt) -> Result<BigUint> {
    Ok(factorize(m)?.valuation_product())
}

/// Product of all primes `<= x`; `1` when `x < 2`.
pub fn primorial(x: f64) -> BigUint {
    if x.is_nan() || x < 2.0 {
        return BigUint::one();
    }
    let bound = x.floor() as u64;
    PrimeIter::new()
        .take_while(|&p| p <= bound)
        .map(BigUint::from)
        .product()
}

/// Compares `primorial(x)` with `bound` in exact arithmetic, stopping as soon
/// as the partial product exceeds `bound`.
pub fn primorial_cmp(x: u64, bound: &BigUint) -> Ordering {
    let mut acc = BigUint::one();
    for p in PrimeIter::new().take_while(|&p| p <= x) {
        acc *= p;
        if &acc > bound {
            return Ordering::Greater;
        }
    }
    acc.cmp(bound)
}

/// `sum_{p <= x} bitlen(p)` for each `x` in `xs` (any order), in one sieve
/// sweep. Since `p < 2^bitlen(p)`, `primorial(x) < 2^S(x)` exactly.
pub fn prime_bit_length_sums(xs: &[u64]) -> Vec<u64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by_key(|&i| xs[i]);
    let mut out = vec![0u64; xs.len()];
    let mut primes = PrimeIter::new().peekable();
    let mut acc = 0u64;
    for i in order {
        while let Some(&p) = primes.peek() {
            if p > xs[i] {
                break;
            }
            acc += u64::from(64 - p.leading_zeros());
            primes.next();
        }
        out[i] = acc;
    }
    out
}

/// Decides `primorial(x) <= 4^x` exactly. Uses the bit-length certificate
/// `primorial(x) < 2^S(x) <= 4^x` when `S(x) <= 2x`, otherwise multiplies out.
pub fn primorial_le_pow4(x: u64) -> bool {
    let s = prime_bit_length_sums(&[x])[0];
    primorial_le_pow4_with_sum(x, s)
}

pub fn primorial_le_pow4_with_sum(x: u64, bit_sum: u64) -> bool {
    if bit_sum <= 2 * x {
        return true;
    }
    primorial(x as f64) <= (BigUint::one() << (2 * x))
}

/// Natural log of `|m|` for `m != 0`: bit length times `ln 2` plus the log of
/// the leading 64-bit mantissa. Relative error well below 1e-12.
pub fn ln_abs(m: &BigInt) -> f64 {
    ln_biguint(m.magnitude())
}

pub fn ln_biguint(m: &BigUint) -> f64 {
    let bits = m.bits();
    if bits <= 64 {
        return (m.to_u64().unwrap_or(0) as f64).ln();
    }
    let shift = bits - 64;
    let top = (m >> shift).to_u64().unwrap_or(u64::MAX);
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.factors()
            .iter()
            .map(|(p, e)| (p.to_u64().unwrap(), *e))
            .collect()
    }

    #[test]
    fn small_factorizations() {
        assert_eq!(pairs(&factorize(&bi(12)).unwrap()), vec![(2, 2), (3, 1)]);
        let f = factorize(&bi(-221184)).unwrap();
        assert_eq!(f.sign(), -1);
        assert_eq!(pairs(&f), vec![(2, 13), (3, 3)]);
        let unit = factorize(&bi(-1)).unwrap();
        assert!(unit.factors().is_empty());
        assert_eq!(unit.reconstruct(), bi(-1));
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(factorize(&bi(0)), Err(Error::Domain(_))));
        assert!(radical(&bi(0)).is_err());
        assert!(greatest_prime_factor(&bi(0)).is_err());
        assert!(valuation_product(&bi(0)).is_err());
    }

    #[test]
    fn multiplicative_functions() {
        assert_eq!(
            greatest_prime_factor(&bi(1024)).unwrap(),
            BigUint::from(2u32)
        );
        assert_eq!(greatest_prime_factor(&bi(1)).unwrap(), BigUint::one());
        assert_eq!(radical(&bi(12)).unwrap(), BigUint::from(6u32));
        assert_eq!(radical(&bi(-221184)).unwrap(), BigUint::from(6u32));
        assert_eq!(radical(&bi(-1)).unwrap(), BigUint::one());
        assert_eq!(valuation_product(&bi(12)).unwrap(), BigUint::from(2u32));
        assert_eq!(
            valuation_product(&bi(221184)).unwrap(),
            BigUint::from(39u32)
        );
        assert_eq!(
            valuation_product(&bi(2 * 3 * 5 * 7 * 11)).unwrap(),
            BigUint::one()
        );
    }

    #[test]
    fn valuations() {
        let two = BigUint::from(2u32);
        assert_eq!(valuation(&two, &bi(12)).unwrap(), 2);
        assert_eq!(valuation(&BigUint::from(3u32), &bi(221184)).unwrap(), 3);
        assert_eq!(valuation(&BigUint::from(5u32), &bi(12)).unwrap(), 0);
        assert!(valuation(&BigUint::from(4u32), &bi(12)).is_err());
        assert!(valuation(&two, &bi(0)).is_err());
    }

    #[test]
    fn valuation_product_of_prime_powers() {
        for p in [2u32, 3, 5, 7, 101, 65537] {
            for k in 1..=20u32 {
                let m = BigInt::from(p).pow(k);
                assert_eq!(valuation_product(&m).unwrap(), BigUint::from(k));
            }
        }
    }

    #[test]
    fn primorials() {
        assert_eq!(primorial(1.0), BigUint::one());
        assert_eq!(primorial(0.0), BigUint::one());
        assert_eq!(primorial(2.0), BigUint::from(2u32));
        assert_eq!(primorial(10.0), BigUint::from(210u32));
        assert_eq!(primorial(10.9), BigUint::from(210u32));
        assert_eq!(primorial_cmp(10, &BigUint::from(210u32)), Ordering::Equal);
        assert_eq!(primorial_cmp(10, &BigUint::from(209u32)), Ordering::Greater);
        assert_eq!(primorial_cmp(10, &BigUint::from(211u32)), Ordering::Less);
    }

    #[test]
    fn pow4_certificate_agrees_with_multiplication() {
        for x in 0..400u64 {
            let exact = primorial(x as f64) <= (BigUint::one() << (2 * x));
            assert!(exact);
            assert_eq!(primorial_le_pow4(x), exact);
        }
    }

    #[test]
    fn large_cofactors() {
        // (2^61 - 1) * (2^31 - 1) * 1000003^2
        let m61 = (BigUint::one() << 61) - 1u32;
        let m31 = BigUint::from((1u64 << 31) - 1);
        let p = BigUint::from(1_000_003u64);
        let n: BigUint = &m61 * &m31 * &p * &p;
        let f = factorize(&BigInt::from(n.clone())).unwrap();
        assert_eq!(f.factors().len(), 3);
        assert_eq!(f.reconstruct(), BigInt::from(n));
        assert_eq!(f.greatest_prime_factor(), m61);
        assert!(!f.is_probable());

        // semiprime of two ~40 bit primes and a prime square above 10^6
        let a = BigUint::from(1_099_511_627_791u64);
        let b = BigUint::from(1_099_511_627_803u64);
        let q = BigUint::from(1_000_000_007u64);
        let n: BigUint = &a * &b * &q * &q;
        let f = factorize(&BigInt::from(n.clone())).unwrap();
        assert_eq!(f.reconstruct(), BigInt::from(n));
        assert_eq!(f.exponent_of(&q), 2);
    }

    #[test]
    fn probable_flag_for_huge_primes() {
        let m127 = (BigUint::one() << 127) - 1u32;
        let f = factorize(&BigInt::from(&m127 * 6u32)).unwrap();
        assert!(f.is_probable());
        assert_eq!(f.greatest_prime_factor(), m127);
    }

    #[test]
    fn effort_cap_is_an_error() {
        let a = BigUint::from(1_099_511_627_791u64);
        let b = BigUint::from(1_099_511_627_803u64);
        let cfg = FactorConfig {
            max_rho_iterations: 50,
            ..FactorConfig::default()
        };
        let err = factorize_with(&BigInt::from(&a * &b), &cfg).unwrap_err();
        assert!(matches!(err, Error::FactorCap { .. }));
    }

    #[test]
    fn ln_of_big_values() {
        let big = BigInt::from(10u32).pow(400);
        let rel = (ln_abs(&big) - 400.0 * 10f64.ln()).abs() / (400.0 * 10f64.ln());
        assert!(rel < 1e-12);
        assert_eq!(ln_abs(&bi(-1)), 0.0);
        assert!((ln_abs(&bi(64)) - 64f64.ln()).abs() < 1e-15);
    }
}
