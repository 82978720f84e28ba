//! Global minimal models.
//!
//! Over Q every curve has a global minimal model. Tate's algorithm gives a
//! `p`-minimal transformation at each prime where the model may fail to be
//! minimal; those are glued by the Chinese remainder theorem into one
//! integral transformation, which is then normalized so that
//! `a1, a3 in {0, 1}` and `a2 in {-1, 0, 1}`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{tate_local_full, Urst, WeierstrassModel};
use crate::arith;
use crate::{Error, Result};

/// Global minimal reduced model of `e` and the transformation taking `e` to it.
pub fn minimal_model(e: &WeierstrassModel) -> Result<(WeierstrassModel, Urst)> {
    minimal_model_with(e, &arith::FactorConfig::default())
}

pub fn minimal_model_with(
    e: &WeierstrassModel,
    cfg: &arith::FactorConfig,
) -> Result<(WeierstrassModel, Urst)> {
    let delta = e.require_nonsingular()?;
    let fact = arith::factorize_with(&delta, cfg)?;

    let mut u = BigInt::one();
    let mut r = Crt::new();
    let mut s = Crt::new();
    let mut locals = Vec::new();
    for (p, v) in fact.factors() {
        if *v < 12 {
            continue;
        }
        let local = tate_local_full(e, p)?;
        let w = local.urst;
        let p = BigInt::from_biguint(Sign::Plus, p.clone());
        let e_p = arith::valuation_int(&p, &w.u)?;
        if e_p == 0 {
            continue;
        }
        let pe = p.pow(e_p);
        u *= &pe;
        r.add(&w.r, &(&pe * &pe))?;
        s.add(&w.s, &pe)?;
        locals.push((pe, w));
    }
    let r = r.value;
    let s = s.value;
    let mut t = Crt::new();
    for (pe, w) in &locals {
        let m3 = pe * pe * pe;
        t.add(&(&w.t + &w.s * (&r - &w.r)), &m3)?;
    }
    let global = Urst {
        u,
        r,
        s,
        t: t.value,
    };
    let model = e
        .apply(&global)
        .ok_or_else(|| Error::Internal(format!("glued transformation is not integral on {e}")))?;

    let normalize = reduce_shift(&model);
    let reduced = model
        .apply(&normalize)
        .expect("unit shift keeps integrality");
    Ok((reduced, global.then(&normalize)))
}

/// The shift with `u = 1` making `a1, a3 in {0, 1}` and `a2 in {-1, 0, 1}`.
fn reduce_shift(m: &WeierstrassModel) -> Urst {
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let s = -m.a1.div_floor(&two);
    let x: BigInt = &m.a2 - &s * &m.a1 - &s * &s;
    let r = -(x + 1u32).div_floor(&three);
    let t = -(&m.a3 + &r * &m.a1).div_floor(&two);
    Urst::shift(r, s, t)
}

/// Incremental CRT over pairwise coprime moduli.
struct Crt {
    value: BigInt,
    modulus: BigInt,
}

impl Crt {
    fn new() -> Self {
        Crt {
            value: BigInt::zero(),
            modulus: BigInt::one(),
        }
    }

    fn add(&mut self, a: &BigInt, m: &BigInt) -> Result<()> {
        let g = self.modulus.extended_gcd(m);
        if !g.gcd.is_one() {
            return Err(Error::Internal(format!(
                "CRT moduli {} and {m} are not coprime",
                self.modulus
            )));
        }
        // value + modulus * k = a (mod m)
        let k = ((a - &self.value) * &g.x).mod_floor(m);
        self.value += &self.modulus * k;
        self.modulus *= m;
        self.value = self.value.mod_floor(&self.modulus);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crt_glues_residues() {
        let mut c = Crt::new();
        c.add(&BigInt::from(2), &BigInt::from(3)).unwrap();
        c.add(&BigInt::from(3), &BigInt::from(5)).unwrap();
        c.add(&BigInt::from(-1), &BigInt::from(7)).unwrap();
        assert_eq!(c.value, BigInt::from(83));
        assert!(c.add(&BigInt::one(), &BigInt::from(15)).is_err());
    }

    #[test]
    fn reduction_shift_ranges() {
        for a in -7..=7i64 {
            for b in -7..=7i64 {
                for c in -7..=7i64 {
                    let m = WeierstrassModel::from_i64s([a, b, c, 5, 3]);
                    let n = m.apply(&reduce_shift(&m)).unwrap();
                    assert!(n.a1 == BigInt::zero() || n.a1 == BigInt::one());
                    assert!(n.a3 == BigInt::zero() || n.a3 == BigInt::one());
                    assert!((-1..=1).contains(&i64::try_from(&n.a2).unwrap()));
                }
            }
        }
    }
}
