//! Pollard rho with Brent's cycle detection, on `u64` and on `BigUint`.
//!
//! Each call consumes iterations from a shared budget; running dry is
//! reported through `Err(())` and turned into a factor-cap error upstream.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::primes::mul_mod;

const BATCH: u64 = 128;

pub(crate) struct Budget {
    pub remaining: u64,
    pub used: u64,
}

impl Budget {
    fn spend(&mut self, k: u64) -> Result<(), ()> {
        if self.remaining < k {
            self.used += self.remaining;
            self.remaining = 0;
            return Err(());
        }
        self.remaining -= k;
        self.used += k;
        Ok(())
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns a proper divisor of the odd composite `n`, or `Ok(None)` when this
/// choice of `(c, x0)` degenerates.
pub(crate) fn brent_u64(n: u64, c: u64, x0: u64, budget: &mut Budget) -> Result<Option<u64>, ()> {
    let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
    let mut y = x0 % n;
    let mut x = y;
    let mut ys = y;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut r = 1u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        budget.spend(r)?;
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let steps = BATCH.min(r - k);
            for _ in 0..steps {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            budget.spend(steps)?;
            g = gcd_u64(q, n);
            k += steps;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            budget.spend(1)?;
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    Ok((g != n).then_some(g))
}

pub(crate) fn brent_big(
    n: &BigUint,
    c: &BigUint,
    x0: &BigUint,
    budget: &mut Budget,
) -> Result<Option<BigUint>, ()> {
    let f = |x: &BigUint| (x * x + c) % n;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let one = BigUint::one();
    let mut y = x0 % n;
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = one.clone();
    let mut g = one.clone();
    let mut r = 1u64;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        budget.spend(r)?;
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            let steps = BATCH.min(r - k);
            for _ in 0..steps {
                y = f(&y);
                q = (&q * diff(&x, &y)) % n;
            }
            budget.spend(steps)?;
            g = q.gcd(n);
            k += steps;
        }
        r *= 2;
    }
    if &g == n || g.is_zero() {
        loop {
            ys = f(&ys);
            budget.spend(1)?;
            g = diff(&x, &ys).gcd(n);
            if g > one {
                break;
            }
        }
    }
    Ok((&g != n).then_some(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_semiprimes() {
        let mut budget = Budget {
            remaining: 1 << 24,
            used: 0,
        };
        let n = 1_000_003u64 * 998_244_353;
        let d = (1..)
            .find_map(|c| brent_u64(n, c, 2, &mut budget).unwrap())
            .unwrap();
        assert!(d == 1_000_003 || d == 998_244_353);

        let big = BigUint::from(4_294_967_311u64) * BigUint::from(1_000_000_007u64);
        let d = (1u32..)
            .find_map(|c| {
                brent_big(&big, &BigUint::from(c), &BigUint::from(2u32), &mut budget).unwrap()
            })
            .unwrap();
        assert!((&big % &d).is_zero() && d > one() && d < big);
    }

    fn one() -> BigUint {
        BigUint::one()
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let mut budget = Budget {
            remaining: 10,
            used: 0,
        };
        let n = 1_000_003u64 * 998_244_353;
        assert!(brent_u64(n, 1, 2, &mut budget).is_err());
        assert_eq!(budget.used, 10);
    }
}
