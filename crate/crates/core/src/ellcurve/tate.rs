//! Tate's algorithm at a single prime.
//!
//! The steps follow the classical presentation (Tate 1975; Cremona,
//! "Algorithms for modular elliptic curves", 3.2). For `p >= 5` the
//! coordinate shifts come from closed formulas; for `p = 2, 3` they are found
//! by exhaustive search over the few residues involved, and every shift is
//! checked against the divisibility it is supposed to produce.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Kodaira, LocalReductionData, ReductionKind, Urst, WeierstrassModel};
use crate::arith;
use crate::{Error, Result};

/// Tate's algorithm output together with the `p`-minimal model it ends on
/// and the transformation from the input model to it.
#[derive(Debug, Clone)]
pub struct LocalTate {
    pub data: LocalReductionData,
    pub model: WeierstrassModel,
    pub urst: Urst,
}

/// Reduction data of `e` at the prime `p`.
pub fn tate_local(e: &WeierstrassModel, p: &BigUint) -> Result<LocalReductionData> {
    Ok(tate_local_full(e, p)?.data)
}

fn val(x: &BigInt, p: &BigInt) -> u32 {
    if x.is_zero() {
        return u32::MAX;
    }
    arith::valuation_unchecked(p.magnitude(), x.magnitude())
}

fn md(x: &BigInt, p: &BigInt) -> BigInt {
    x.mod_floor(p)
}

fn divides(p: &BigInt, x: &BigInt) -> bool {
    md(x, p).is_zero()
}

fn inv_mod(a: &BigInt, p: &BigInt) -> Result<BigInt> {
    let e = md(a, p).extended_gcd(p);
    if !e.gcd.is_one() {
        return Err(Error::Internal(format!("{a} is not invertible mod {p}")));
    }
    Ok(md(&e.x, p))
}

fn exact(x: &BigInt, d: &BigInt) -> Result<BigInt> {
    let (q, r) = x.div_rem(d);
    if !r.is_zero() {
        return Err(Error::Internal(format!("{d} does not divide {x}")));
    }
    Ok(q)
}

/// Small primes get exhaustive residue searches.
fn small(p: &BigInt) -> Option<u32> {
    p.to_u32().filter(|&q| q < 5)
}

/// Whether `a x^2 + b x + c` has a root mod `p`.
fn quad_has_root(a: &BigInt, b: &BigInt, c: &BigInt, p: &BigInt) -> bool {
    if let Some(q) = p.to_u32().filter(|&q| q < 64) {
        return (0..q).any(|x| {
            let x = BigInt::from(x);
            divides(p, &(a * &x * &x + b * &x + c))
        });
    }
    let (a, b, c) = (md(a, p), md(b, p), md(c, p));
    if a.is_zero() {
        return !b.is_zero() || c.is_zero();
    }
    let disc = md(&(&b * &b - 4 * &a * &c), p);
    if disc.is_zero() {
        return true;
    }
    let e = (p - 1) / 2;
    disc.modpow(&e, p).is_one()
}

/// Number of distinct roots mod `p` of the monic cubic `T^3 + bT^2 + cT + d`.
fn cubic_root_count(b: &BigInt, c: &BigInt, d: &BigInt, p: &BigInt) -> u32 {
    if let Some(q) = p.to_u32().filter(|&q| q < 1000) {
        return (0..q)
            .filter(|&x| {
                let x = BigInt::from(x);
                divides(p, &(&x * &x * &x + b * &x * &x + c * &x + d))
            })
            .count() as u32;
    }
    // deg gcd(P, T^p - T) over F_p
    let reduce = |v: &[BigInt]| -> Vec<BigInt> {
        let mut v: Vec<BigInt> = v.iter().map(|x| md(x, p)).collect();
        while v.len() > 3 {
            let top = v.pop().expect("nonempty");
            let k = v.len() - 3;
            v[k + 2] -= &top * b;
            v[k + 1] -= &top * c;
            v[k] -= &top * d;
            for x in v.iter_mut() {
                *x = md(x, p);
            }
        }
        v
    };
    let mul = |x: &[BigInt], y: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); x.len() + y.len() - 1];
        for (i, a) in x.iter().enumerate() {
            for (j, bb) in y.iter().enumerate() {
                out[i + j] += a * bb;
            }
        }
        reduce(&out)
    };
    let mut acc = vec![BigInt::one()];
    let mut base = vec![BigInt::zero(), BigInt::one()];
    let mut e = p.magnitude().clone();
    while !e.is_zero() {
        if e.is_odd() {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if !e.is_zero() {
            base = mul(&base, &base);
        }
    }
    // acc = T^p mod P; subtract T
    acc.resize(3, BigInt::zero());
    acc[1] -= 1;
    let h: Vec<BigInt> = acc.iter().map(|x| md(x, p)).collect();
    let cubic = vec![md(d, p), md(c, p), md(b, p), BigInt::one()];
    poly_gcd_degree_mod_p(cubic, h, p)
}

fn poly_gcd_degree_mod_p(mut a: Vec<BigInt>, mut b: Vec<BigInt>, p: &BigInt) -> u32 {
    let trim = |v: &mut Vec<BigInt>| {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let lead_inv = inv_mod(b.last().expect("nonempty"), p).expect("p prime");
        while a.len() >= b.len() && !a.is_empty() {
            let k = a.len() - b.len();
            let f = md(&(a.last().expect("nonempty") * &lead_inv), p);
            for (i, bi) in b.iter().enumerate() {
                a[k + i] = md(&(&a[k + i] - &f * bi), p);
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1) as u32
}

struct State<'a> {
    p: &'a BigInt,
    model: WeierstrassModel,
    urst: Urst,
}

impl State<'_> {
    fn apply(&mut self, w: Urst) -> Result<()> {
        self.model = self.model.apply(&w).ok_or_else(|| {
            Error::Internal(format!(
                "non-integral change of variables at p = {}",
                self.p
            ))
        })?;
        self.urst = self.urst.then(&w);
        Ok(())
    }

    /// First shift among `candidates` whose result satisfies `ok`.
    fn search<I>(&self, candidates: I, ok: impl Fn(&WeierstrassModel) -> bool) -> Result<Urst>
    where
        I: IntoIterator<Item = Urst>,
    {
        candidates
            .into_iter()
            .find(|w| self.model.apply(w).is_some_and(|m| ok(&m)))
            .ok_or_else(|| Error::Internal(format!("no admissible shift at p = {}", self.p)))
    }

    fn check(&self, cond: bool, what: &str) -> Result<()> {
        if cond {
            Ok(())
        } else {
            Err(Error::Internal(format!(
                "Tate step failed at p = {}: {what} on {}",
                self.p, self.model
            )))
        }
    }
}

fn residues(q: u32) -> impl Iterator<Item = BigInt> + Clone {
    (0..q).map(BigInt::from)
}

/// Runs the full algorithm, returning the data, the `p`-minimal model and
/// the transformation to it.
pub fn tate_local_full(e: &WeierstrassModel, p: &BigUint) -> Result<LocalTate> {
    let delta0 = e.require_nonsingular()?;
    if !arith::is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let pz = BigInt::from_biguint(Sign::Plus, p.clone());
    let p = &pz;
    let p2 = p * p;
    let p3 = &p2 * p;
    let p4 = &p3 * p;
    let half = if small(p) == Some(2) {
        BigInt::zero()
    } else {
        (p + 1) / 2
    };

    let mut st = State {
        p,
        model: e.clone(),
        urst: Urst::identity(),
    };
    // each pass that finds a non-minimal model removes 12 from v_p(delta)
    let max_passes = val(&delta0, p) / 12 + 1;

    for _ in 0..max_passes {
        let inv = st.model.invariants();
        let n = val(&inv.delta, p);
        if n == 0 {
            return Ok(finish(st, p, ReductionKind::Good, Kodaira::I(0), 0, 0, 1));
        }

        // Move the singular point of the reduction to (0, 0).
        let w = match small(p) {
            Some(q) => st.search(
                residues(q).flat_map(|r| {
                    residues(q).map(move |t| Urst::shift(r.clone(), BigInt::zero(), t))
                }),
                |m| divides(p, &m.a3) && divides(p, &m.a4) && divides(p, &m.a6),
            )?,
            None => {
                let (b2, _, _, _) = st.model.b_invariants();
                let r = if divides(p, &inv.c4) {
                    -inv_mod(&BigInt::from(12), p)? * &b2
                } else {
                    -inv_mod(&(12 * &inv.c4), p)? * (&inv.c6 + &b2 * &inv.c4)
                };
                let r = md(&r, p);
                let t = md(&(-&half * (&st.model.a1 * &r + &st.model.a3)), p);
                Urst::shift(r, BigInt::zero(), t)
            }
        };
        st.apply(w)?;
        st.check(
            divides(p, &st.model.a3) && divides(p, &st.model.a4) && divides(p, &st.model.a6),
            "p | a3, a4, a6",
        )?;

        if !divides(p, &inv.c4) {
            let split = quad_has_root(&BigInt::one(), &st.model.a1, &(-&st.model.a2), p);
            let c = if split {
                n
            } else if n.is_multiple_of(2) {
                2
            } else {
                1
            };
            return Ok(finish(
                st,
                p,
                ReductionKind::Multiplicative,
                Kodaira::I(n),
                n,
                1,
                c,
            ));
        }

        let (_, _, b6, b8) = st.model.b_invariants();
        if val(&st.model.a6, p) < 2 {
            return Ok(finish(st, p, ReductionKind::Additive, Kodaira::II, n, n, 1));
        }
        if val(&b8, p) < 3 {
            return Ok(finish(
                st,
                p,
                ReductionKind::Additive,
                Kodaira::III,
                n,
                n - 1,
                2,
            ));
        }
        if val(&b6, p) < 3 {
            let a3t = exact(&st.model.a3, p)?;
            let a6t = exact(&st.model.a6, &p2)?;
            let c = if quad_has_root(&BigInt::one(), &a3t, &(-a6t), p) {
                3
            } else {
                1
            };
            return Ok(finish(
                st,
                p,
                ReductionKind::Additive,
                Kodaira::IV,
                n,
                n - 2,
                c,
            ));
        }

        // Make p | a1, a2; p^2 | a3, a4; p^3 | a6.
        let target = |m: &WeierstrassModel| {
            divides(p, &m.a1)
                && divides(p, &m.a2)
                && divides(&p2, &m.a3)
                && divides(&p2, &m.a4)
                && divides(&p3, &m.a6)
        };
        let w = match small(p) {
            Some(q) => st.search(
                residues(q).flat_map(|s| {
                    residues(q * q).map(move |t| Urst::shift(BigInt::zero(), s.clone(), t))
                }),
                target,
            )?,
            None => Urst::shift(BigInt::zero(), -&st.model.a1 * &half, -&st.model.a3 * &half),
        };
        st.apply(w)?;
        st.check(target(&st.model), "p | a1, a2; p^2 | a3, a4; p^3 | a6")?;

        // T^3 + bT^2 + cT + d with b = a2/p, c = a4/p^2, d = a6/p^3
        let b = md(&exact(&st.model.a2, p)?, p);
        let c = md(&exact(&st.model.a4, &p2)?, p);
        let d = md(&exact(&st.model.a6, &p3)?, p);
        let w_disc = 27 * &d * &d - &b * &b * &c * &c + 4 * &b * &b * &b * &d - 18 * &b * &c * &d
            + 4 * &c * &c * &c;
        let x = 3 * &c - &b * &b;
        let cubic = |t: &BigInt| t * t * t + &b * t * t + &c * t + &d;
        let cubic_d = |t: &BigInt| 3 * t * t + 2 * &b * t + &c;

        if !divides(p, &w_disc) {
            let tam = 1 + cubic_root_count(&b, &c, &d, p);
            return Ok(finish(
                st,
                p,
                ReductionKind::Additive,
                Kodaira::IStar(0),
                n,
                n - 4,
                tam,
            ));
        }

        if !divides(p, &x) {
            // one double root: move it to 0
            let r0 = match small(p) {
                Some(q) => residues(q)
                    .find(|t| divides(p, &cubic(t)) && divides(p, &cubic_d(t)))
                    .ok_or_else(|| Error::Internal(format!("no double root mod {p}")))?,
                None => md(&((&b * &c - 9 * &d) * inv_mod(&(2 * &x), p)?), p),
            };
            st.apply(Urst::shift(p * r0, BigInt::zero(), BigInt::zero()))?;

            let (mut ix, mut iy) = (3u32, 3u32);
            let mut mx = p2.clone();
            let mut my = p2.clone();
            let tam;
            loop {
                if ix + iy > n + 2 {
                    return Err(Error::Internal(format!(
                        "I*m loop did not terminate within v_p(delta) = {n} steps at p = {p}"
                    )));
                }
                let a2t = md(&exact(&st.model.a2, p)?, p);
                let a3t = md(&exact(&st.model.a3, &my)?, p);
                let a6t = md(&exact(&st.model.a6, &(&mx * &my))?, p);
                if !divides(p, &(&a3t * &a3t + 4 * &a6t)) {
                    tam = if quad_has_root(&BigInt::one(), &a3t, &(-&a6t), p) {
                        4
                    } else {
                        2
                    };
                    break;
                }
                let y0 = double_root(&BigInt::one(), &a3t, &(-&a6t), p)?;
                st.apply(Urst::shift(BigInt::zero(), BigInt::zero(), &my * y0))?;
                my *= p;
                iy += 1;

                let a2t = md(&a2t, p);
                let a4t = md(&exact(&st.model.a4, &(p * &mx))?, p);
                let a6t = md(&exact(&st.model.a6, &(&mx * &my))?, p);
                if !divides(p, &(&a4t * &a4t - 4 * &a2t * &a6t)) {
                    tam = if quad_has_root(&a2t, &a4t, &a6t, p) {
                        4
                    } else {
                        2
                    };
                    break;
                }
                let x0 = double_root(&a2t, &a4t, &a6t, p)?;
                st.apply(Urst::shift(&mx * x0, BigInt::zero(), BigInt::zero()))?;
                mx *= p;
                ix += 1;
            }
            let m = ix + iy - 5;
            return Ok(finish(
                st,
                p,
                ReductionKind::Additive,
                Kodaira::IStar(m),
                n,
                n - ix - iy + 1,
                tam,
            ));
        }

        // triple root: move it to 0
        let r0 = match small(p) {
            Some(q) => residues(q)
                .find(|t| {
                    divides(p, &cubic(t))
                        && divides(p, &cubic_d(t))
                        && divides(p, &(6 * t + 2 * &b))
                })
                .ok_or_else(|| Error::Internal(format!("no triple root mod {p}")))?,
            None => md(&(-&b * inv_mod(&BigInt::from(3), p)?), p),
        };
        st.apply(Urst::shift(p * r0, BigInt::zero(), BigInt::zero()))?;
        let x3 = md(&exact(&st.model.a3, &p2)?, p);
        let x6 = md(&exact(&st.model.a6, &p4)?, p);
        if !divides(p, &(&x3 * &x3 + 4 * &x6)) {
            let c = if quad_has_root(&BigInt::one(), &x3, &(-&x6), p) {
                3
            } else {
                1
            };
            return Ok(finish(
                st,
                p,
                ReductionKind::Additive,
                Kodaira::IVStar,
                n,
                n - 6,
                c,
            ));
        }
        let y0 = double_root(&BigInt::one(), &x3, &(-&x6), p)?;
        st.apply(Urst::shift(BigInt::zero(), BigInt::zero(), &p2 * y0))?;
        if val(&st.model.a4, p) < 4 {
            return Ok(finish(
                st,
                p,
                ReductionKind::Additive,
                Kodaira::IIIStar,
                n,
                n - 7,
                2,
            ));
        }
        if val(&st.model.a6, p) < 6 {
            return Ok(finish(
                st,
                p,
                ReductionKind::Additive,
                Kodaira::IIStar,
                n,
                n - 8,
                1,
            ));
        }
        // not minimal at p
        st.apply(Urst::scale(p.clone()))?;
    }
    Err(Error::Internal(format!(
        "Tate's algorithm did not terminate within {max_passes} passes at p = {p}"
    )))
}

/// The double root mod `p` of `a X^2 + b X + c` (discriminant divisible by `p`,
/// `a` a unit).
fn double_root(a: &BigInt, b: &BigInt, c: &BigInt, p: &BigInt) -> Result<BigInt> {
    if let Some(q) = small(p) {
        return residues(q)
            .find(|x| divides(p, &(a * x * x + b * x + c)))
            .ok_or_else(|| Error::Internal(format!("no double root mod {p}")));
    }
    Ok(md(&(-b * inv_mod(&(2 * a), p)?), p))
}

fn finish(
    st: State<'_>,
    p: &BigInt,
    kind: ReductionKind,
    kodaira: Kodaira,
    v: u32,
    f: u32,
    tamagawa: u32,
) -> LocalTate {
    LocalTate {
        data: LocalReductionData {
            p: p.magnitude().clone(),
            kind,
            kodaira,
            v_delta_min: v,
            f_p: f,
            tamagawa,
        },
        model: st.model,
        urst: st.urst,
    }
}
