//! Prime sieves and strong-pseudoprime testing.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_bigint::RandBigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Trial division covers every prime below this bound.
pub const TRIAL_LIMIT: u32 = 1_000_000;

/// Miller-Rabin with the first 13 primes as bases is deterministic below this
/// value (Sorenson and Webster).
const DETERMINISTIC_BIG_BOUND: &str = "3317044064679887385961981";

/// Random strong-pseudoprime rounds used above the deterministic range.
/// Each round errs with probability at most 1/4, so 64 rounds give < 2^-128.
const PROBABLE_ROUNDS: usize = 64;

const SMALL_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Outcome of a primality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primality {
    Composite,
    /// Certified by a test that is deterministic on this input size.
    Prime,
    /// Passed enough random strong-pseudoprime rounds for error < 2^-128.
    Probable,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        !matches!(self, Primality::Composite)
    }
}

/// Primes below [`TRIAL_LIMIT`], computed once.
pub fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(TRIAL_LIMIT))
}

/// Eratosthenes sieve, primes strictly below `limit`.
pub fn sieve(limit: u32) -> Vec<u32> {
    let limit = limit as usize;
    if limit < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; limit];
    let mut out = Vec::with_capacity(limit / 10);
    for i in 2..limit {
        if composite[i] {
            continue;
        }
        out.push(i as u32);
        let mut j = i * i;
        while j < limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Ascending iterator over all primes, unbounded. Starts from the cached
/// small sieve and continues with a segmented sieve.
pub struct PrimeIter {
    idx: usize,
    segment: Vec<u64>,
    seg_pos: usize,
    next_lo: u64,
}

const SEGMENT: u64 = 1 << 18;

impl PrimeIter {
    pub fn new() -> Self {
        PrimeIter {
            idx: 0,
            segment: Vec::new(),
            seg_pos: 0,
            next_lo: TRIAL_LIMIT as u64,
        }
    }

    fn fill_segment(&mut self) {
        let lo = self.next_lo;
        let hi = lo + SEGMENT;
        let mut composite = vec![false; SEGMENT as usize];
        let root = isqrt_u64(hi) + 1;
        let mut base_primes: Vec<u64> = Vec::new();
        if root < TRIAL_LIMIT as u64 {
            base_primes.extend(
                small_primes()
                    .iter()
                    .map(|&p| p as u64)
                    .take_while(|&p| p <= root),
            );
        } else {
            // Past 10^12 the base primes themselves need a sieve.
            base_primes.extend(sieve((root + 1) as u32).into_iter().map(u64::from));
        }
        for p in base_primes {
            let mut start = lo.div_ceil(p) * p;
            if start < p * p {
                start = p * p;
            }
            let mut j = start;
            while j < hi {
                composite[(j - lo) as usize] = true;
                j += p;
            }
        }
        self.segment = composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| lo + i as u64)
            .collect();
        self.seg_pos = 0;
        self.next_lo = hi;
    }
}

impl Default for PrimeIter {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for PrimeIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let small = small_primes();
        if self.idx < small.len() {
            self.idx += 1;
            return Some(small[self.idx - 1] as u64);
        }
        while self.seg_pos >= self.segment.len() {
            self.fill_segment();
        }
        self.seg_pos += 1;
        Some(self.segment[self.seg_pos - 1])
    }
}

pub(crate) fn isqrt_u64(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_probable_prime_u64(n: u64, base: u64) -> bool {
    let a = base % n;
    if a == 0 {
        return true;
    }
    let d_shift = (n - 1).trailing_zeros();
    let d = (n - 1) >> d_shift;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..d_shift {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic for every 64-bit input.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_BASES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    // Jaeschke / Sinclair base set, proven for n < 2^64.
    [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022]
        .iter()
        .all(|&a| strong_probable_prime_u64(n, a))
}

fn strong_probable_prime_big(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = base.modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&BigUint::from(2u32), n);
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Primality of an unbounded integer. Inputs below 3.3 * 10^24 get a proven
/// answer; larger ones get 64 seeded random rounds and report
/// [`Primality::Probable`].
pub fn primality(n: &BigUint) -> Primality {
    if let Some(small) = n.to_u64() {
        return if is_prime_u64(small) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    for &p in small_primes().iter().take(200) {
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    let bound: BigUint = DETERMINISTIC_BIG_BOUND.parse().expect("constant");
    if *n < bound {
        let ok = SMALL_BASES
            .iter()
            .all(|&a| strong_probable_prime_big(n, &BigUint::from(a)));
        return if ok {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    if !strong_probable_prime_big(n, &BigUint::from(2u32)) {
        return Primality::Composite;
    }
    // Seed from the input so the verdict is a pure function of n.
    let digest = n.to_u64_digits();
    let seed = digest.iter().fold(0x9e37_79b9_7f4a_7c15u64, |h, &w| {
        (h ^ w).wrapping_mul(0x1000_0000_01b3)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = n - 3u32;
    for _ in 0..PROBABLE_ROUNDS {
        let a = BigUint::from(2u32) + rng.gen_biguint_below(&span);
        if !strong_probable_prime_big(n, &a) {
            return Primality::Composite;
        }
    }
    Primality::Probable
}

/// Convenience wrapper around [`primality`].
pub fn is_prime(n: &BigUint) -> bool {
    primality(n).is_prime()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_counts() {
        assert_eq!(sieve(100).len(), 25);
        assert_eq!(small_primes().len(), 78_498);
    }

    #[test]
    fn prime_iter_crosses_sieve_boundary() {
        let around: Vec<u64> = PrimeIter::new()
            .skip_while(|&p| p < 999_900)
            .take_while(|&p| p < 1_000_200)
            .collect();
        let brute: Vec<u64> = (999_900..1_000_200).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(around, brute);
    }

    #[test]
    fn u64_primality_matches_trial_division() {
        for n in 0u64..20_000 {
            let brute = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), brute, "n = {n}");
        }
        // strong pseudoprimes to several small bases
        assert!(!is_prime_u64(3_215_031_751));
        assert!(!is_prime_u64(3_825_123_056_546_413_051));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
    }

    #[test]
    fn big_primality() {
        let m127 = (BigUint::one() << 127) - 1u32;
        assert_eq!(primality(&m127), Primality::Probable);
        let m61 = (BigUint::one() << 61) - 1u32;
        let m89 = (BigUint::one() << 89) - 1u32;
        assert_eq!(primality(&m89), Primality::Probable);
        assert_eq!(primality(&(&m61 * &m89)), Primality::Composite);
        let above_64 = (BigUint::one() << 64) + 13u32;
        assert_eq!(primality(&above_64), Primality::Prime);
        assert_eq!(primality(&(&m61 * &m61)), Primality::Composite);
        // 2^82 + 1 composite, lies inside the deterministic window
        assert_eq!(
            primality(&((BigUint::one() << 82) + 1u32)),
            Primality::Composite
        );
    }
}
