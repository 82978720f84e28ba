//! Iterated logarithms and the closed-form bound shapes.
//!
//! All logarithms are natural. The constants (`kappa`, `epsilon`, `mu`) are
//! ineffective in the underlying theorems, so they are always supplied by the
//! caller; scans report empirical constants ([`kappa_emp`], [`mu_emp`])
//! instead of asserting the bounds.

use std::f64::consts::E;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{ln_abs, ln_biguint};
use crate::{Error, Result};

/// Caller-supplied constants of the bound shapes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub kappa: f64,
    pub epsilon: f64,
    pub mu: f64,
}

impl Default for BoundParams {
    fn default() -> Self {
        BoundParams {
            kappa: 1.0,
            epsilon: 0.5,
            mu: 1.0,
        }
    }
}

impl BoundParams {
    pub fn new(kappa: f64, epsilon: f64, mu: f64) -> Result<Self> {
        for (name, v) in [("kappa", kappa), ("epsilon", epsilon), ("mu", mu)] {
            positive(name, v)?;
        }
        Ok(BoundParams { kappa, epsilon, mu })
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive, got {v}")))
    }
}

fn at_least_two(name: &str, v: f64) -> Result<()> {
    if v >= 2.0 && !v.is_nan() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be >= 2, got {v}")))
    }
}

/// `log*_k(t)`: the `k`-fold logarithm when every step is defined and the
/// result is at least 1, otherwise 1.
pub fn iter_log(k: u32, t: f64) -> f64 {
    let mut x = t;
    for _ in 0..k {
        if x.is_nan() || x <= 0.0 {
            return 1.0;
        }
        x = x.ln();
    }
    if x >= 1.0 {
        x
    } else {
        1.0
    }
}

/// `exp(kappa * sqrt(log N * log*_2 N))`.
pub fn szpiro_shape(n: f64, kappa: f64) -> Result<f64> {
    at_least_two("N", n)?;
    positive("kappa", kappa)?;
    Ok((kappa * (n.ln() * iter_log(2, n)).sqrt()).exp())
}

/// `kappa * (log*_2 n)^2 / log*_3 n`.
pub fn gpf_shape(n: f64, kappa: f64) -> Result<f64> {
    at_least_two("n", n)?;
    positive("kappa", kappa)?;
    let l2 = iter_log(2, n);
    Ok(kappa * l2 * l2 / iter_log(3, n))
}

/// `exp(gpf_shape(n, kappa))`.
pub fn radical_shape(n: f64, kappa: f64) -> Result<f64> {
    Ok(gpf_shape(n, kappa)?.exp())
}

/// `log*_2 n * log*_3 n / log*_4 n`.
pub fn stewart_yu_shape(n: f64) -> Result<f64> {
    at_least_two("n", n)?;
    Ok(iter_log(2, n) * iter_log(3, n) / iter_log(4, n))
}

/// `exp(sqrt(log* R * log*_2 R))`.
#[allow(non_snake_case)]
pub fn B_of_R(r: f64) -> Result<f64> {
    at_least_two("R", r)?;
    Ok((iter_log(1, r) * iter_log(2, r)).sqrt().exp())
}

/// `kappa * N log N`.
pub fn murty_pasten_rhs(n: f64, kappa: f64) -> Result<f64> {
    at_least_two("N", n)?;
    positive("kappa", kappa)?;
    Ok(kappa * n * n.ln())
}

/// `kappa * N^(11/2 + epsilon)`.
pub fn shimura_rhs(n: f64, kappa: f64, epsilon: f64) -> Result<f64> {
    at_least_two("N", n)?;
    positive("kappa", kappa)?;
    positive("epsilon", epsilon)?;
    Ok(kappa * n.powf(5.5 + epsilon))
}

/// `kappa^m (Nv / log Nv) log max{e, Nv h(xi)} prod h(xi_j)`.
pub fn lfl_rhs(kappa: f64, m: u32, norm_v: f64, h_xi: f64, h_gens: &[f64]) -> Result<f64> {
    positive("kappa", kappa)?;
    if m == 0 {
        return Err(Error::domain("m must be at least 1"));
    }
    if h_gens.len() != m as usize {
        return Err(Error::domain(format!(
            "expected {m} generator heights, got {}",
            h_gens.len()
        )));
    }
    at_least_two("norm of v", norm_v)?;
    positive("h(xi)", h_xi)?;
    for &h in h_gens {
        positive("generator height", h)?;
    }
    let prod: f64 = h_gens.iter().product();
    let inner = (norm_v * h_xi).max(E).ln();
    Ok(kappa.powi(m as i32) * norm_v / norm_v.ln() * inner * prod)
}

/// `log(max(log|delta_min|, 1 + 1e-9)) / sqrt(log N * log*_2 N)`, defined for
/// `N >= 3`. The inner guard keeps the outer log defined when
/// `|delta_min| <= e`.
pub fn kappa_emp(delta_min: &BigInt, conductor: &BigUint) -> Option<f64> {
    if *conductor < BigUint::from(3u32) || delta_min.is_zero() {
        return None;
    }
    let ln_n = ln_biguint(conductor);
    let denom = (ln_n * iter_log_of_ln(ln_n, 2)).sqrt();
    Some(ln_abs(delta_min).max(1.0 + 1e-9).ln() / denom)
}

/// `log*_k(N)` for `k >= 1`, given `log N` (so `N` may exceed the `f64` range).
pub fn iter_log_of_ln(ln_n: f64, k: u32) -> f64 {
    iter_log(k.saturating_sub(1), ln_n).max(1.0)
}

/// `log(valuation product) / log(radical)`, and 0 when the product is 1.
pub fn mu_emp(valuation_product: &BigUint, radical: &BigUint) -> Option<f64> {
    if valuation_product.is_one() {
        return Some(0.0);
    }
    if *radical < BigUint::from(2u32) {
        return None;
    }
    Some(ln_biguint(valuation_product) / ln_biguint(radical))
}

/// One row of the comparison grid between the GPF shapes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeRow {
    pub n: f64,
    pub gpf_shape: f64,
    pub stewart_yu_shape: f64,
    pub radical_shape: f64,
}

/// `gpf_shape`, `stewart_yu_shape` and `radical_shape` over `points`.
pub fn shape_grid(points: &[f64], kappa: f64) -> Result<Vec<ShapeRow>> {
    points
        .iter()
        .map(|&n| {
            Ok(ShapeRow {
                n,
                gpf_shape: gpf_shape(n, kappa)?,
                stewart_yu_shape: stewart_yu_shape(n)?,
                radical_shape: radical_shape(n, kappa)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn iterated_logs() {
        assert_eq!(iter_log(1, E), 1.0);
        assert!(close(iter_log(2, E.powf(E)), 1.0));
        assert_eq!(iter_log(3, 10.0), 1.0);
        assert_eq!(iter_log(1, -3.0), 1.0);
        assert_eq!(iter_log(2, 0.5), 1.0);
        assert!(close(iter_log(1, 100.0), 100f64.ln()));
    }

    #[test]
    fn shapes_at_exact_towers() {
        let tower = E.powf(E.powf(E));
        assert!(close(szpiro_shape(E, 1.0).unwrap(), E));
        assert!(close(szpiro_shape(E.powf(E), 1.0).unwrap(), E.sqrt().exp()));
        assert!(szpiro_shape(1e6, 1.0).unwrap() > szpiro_shape(1e3, 1.0).unwrap());
        assert!(szpiro_shape(1.5, 1.0).is_err());

        assert_eq!(gpf_shape(3.0, 2.5).unwrap(), 2.5);
        assert!(close(gpf_shape(tower, 1.0).unwrap(), E * E));
        assert!(close(radical_shape(tower, 1.0).unwrap(), (E * E).exp()));
        assert!(gpf_shape(1.0, 1.0).is_err());

        assert_eq!(stewart_yu_shape(5.0).unwrap(), 1.0);
        assert!(close(stewart_yu_shape(tower).unwrap(), E));

        assert!(close(B_of_R(E).unwrap(), E));
        assert!(close(B_of_R(E.powf(E)).unwrap(), E.sqrt().exp()));
        assert!(B_of_R(1.0).is_err());
    }

    #[test]
    fn gpf_shape_eventually_dominates_stewart_yu() {
        let grid: Vec<f64> = (1..=300).map(|k| 10f64.powf(k as f64)).collect();
        let rows = shape_grid(&grid, 1.0).unwrap();
        let threshold = rows
            .iter()
            .rposition(|r| r.gpf_shape <= r.stewart_yu_shape)
            .map_or(0, |i| i + 1);
        assert!(threshold < rows.len());
        assert!(rows[threshold..]
            .iter()
            .all(|r| r.gpf_shape > r.stewart_yu_shape));
    }

    #[test]
    fn right_hand_sides() {
        assert!(close(murty_pasten_rhs(E, 1.0).unwrap(), E));
        assert!(close(murty_pasten_rhs(E * E, 1.0).unwrap(), 2.0 * E * E));
        assert!(close(
            murty_pasten_rhs(10.0, 2.0).unwrap(),
            20.0 * 10f64.ln()
        ));

        assert!(close(shimura_rhs(2.0, 1.0, 0.5).unwrap(), 64.0));
        assert!(close(shimura_rhs(10.0, 1.0, 0.5).unwrap(), 1e6));
        assert!(close(shimura_rhs(4.0, 3.0, 0.5).unwrap(), 3.0 * 4096.0));
        assert!(shimura_rhs(10.0, 1.0, 0.0).is_err());

        assert!(close(
            lfl_rhs(1.0, 1, 2.0, 1.0, &[1.0]).unwrap(),
            2.0 / 2f64.ln()
        ));
        let base = lfl_rhs(1.0, 3, 7.0, 2.0, &[1.5, 2.0, 0.3]).unwrap();
        let doubled = lfl_rhs(1.0, 3, 7.0, 2.0, &[1.5, 4.0, 0.3]).unwrap();
        assert!(close(doubled, 2.0 * base));
        assert!(close(
            lfl_rhs(2.0, 3, 7.0, 2.0, &[1.5, 2.0, 0.3]).unwrap(),
            8.0 * base
        ));
        assert!(lfl_rhs(1.0, 2, 7.0, 2.0, &[1.0]).is_err());
    }

    #[test]
    fn params_must_be_positive() {
        assert!(BoundParams::new(1.0, 0.5, 1.0).is_ok());
        assert!(BoundParams::new(0.0, 0.5, 1.0).is_err());
        assert!(BoundParams::new(1.0, -1.0, 1.0).is_err());
        assert!(BoundParams::new(1.0, 0.5, f64::NAN).is_err());
    }

    #[test]
    fn empirical_constants() {
        // delta_min = -432, N = 36
        let k = kappa_emp(&BigInt::from(-432), &BigUint::from(36u32)).unwrap();
        let ln_n = 36f64.ln();
        let expected = 432f64.ln().ln() / (ln_n * iter_log(2, 36.0)).sqrt();
        assert!(close(k, expected));
        assert!(kappa_emp(&BigInt::from(-11), &BigUint::from(2u32)).is_none());
        // |delta_min| below e uses the guard
        let g = kappa_emp(&BigInt::from(2), &BigUint::from(5u32)).unwrap();
        assert!(close(g, (1.0 + 1e-9f64).ln() / (5f64.ln()).sqrt()));

        assert_eq!(mu_emp(&BigUint::one(), &BigUint::from(30u32)), Some(0.0));
        // 72 = 2^3 3^2: product 6, radical 6
        assert!(close(
            mu_emp(&BigUint::from(6u32), &BigUint::from(6u32)).unwrap(),
            1.0
        ));
    }

    #[test]
    fn huge_conductors_stay_finite() {
        let n = BigUint::from(10u32).pow(400);
        let d = BigInt::from(10u32).pow(900);
        let k = kappa_emp(&d, &n).unwrap();
        assert!(k.is_finite() && k > 0.0);
    }

    proptest! {
        #[test]
        fn iter_log_total_and_monotone(k in 1u32..5, a in -10.0f64..1e12, b in -10.0f64..1e12) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(iter_log(k, lo) >= 1.0);
            prop_assert!(iter_log(k, lo) <= iter_log(k, hi));
            if lo >= E {
                prop_assert!(iter_log(k + 1, lo) <= iter_log(k, lo));
            }
        }

        #[test]
        fn shapes_increase_in_kappa(n in 2.0f64..1e200, k1 in 0.01f64..5.0, dk in 0.01f64..5.0) {
            let k2 = k1 + dk;
            prop_assert!(gpf_shape(n, k1).unwrap() < gpf_shape(n, k2).unwrap());
            prop_assert!(szpiro_shape(n, k1).unwrap() < szpiro_shape(n, k2).unwrap());
            prop_assert!(murty_pasten_rhs(n, k1).unwrap() < murty_pasten_rhs(n, k2).unwrap());
        }

        #[test]
        fn lfl_is_multiplicative(h in prop::collection::vec(0.1f64..10.0, 1..5), j in 0usize..5, c in 0.1f64..10.0) {
            let m = h.len() as u32;
            let j = j % h.len();
            let base = lfl_rhs(1.5, m, 11.0, 3.0, &h).unwrap();
            let mut h2 = h.clone();
            h2[j] *= c;
            prop_assert!(close(lfl_rhs(1.5, m, 11.0, 3.0, &h2).unwrap(), c * base));
        }
    }
}
