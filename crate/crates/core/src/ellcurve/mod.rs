//! Integral long Weierstrass models over Q.
//!
//! `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`, with the standard b- and
//! c-invariants, coordinate changes `[u, r, s, t]`, Tate's algorithm at a
//! prime ([`tate_local`]), global minimal models ([`minimal_model`]) and the
//! conductor ([`conductor`]).

mod kodaira;
mod minimal;
mod tate;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use kodaira::Kodaira;
pub use minimal::{minimal_model, minimal_model_with};
pub use tate::{tate_local, tate_local_full, LocalTate};

use crate::arith::{self, ln_abs, ln_biguint};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeierstrassModel {
    pub a1: BigInt,
    pub a2: BigInt,
    pub a3: BigInt,
    pub a4: BigInt,
    pub a6: BigInt,
}

/// `(c4, c6, discriminant)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub c4: BigInt,
    pub c6: BigInt,
    pub delta: BigInt,
}

/// The change of variables `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Urst {
    pub u: BigInt,
    pub r: BigInt,
    pub s: BigInt,
    pub t: BigInt,
}

impl Urst {
    pub fn identity() -> Self {
        Urst {
            u: BigInt::one(),
            r: BigInt::zero(),
            s: BigInt::zero(),
            t: BigInt::zero(),
        }
    }

    pub fn shift(r: BigInt, s: BigInt, t: BigInt) -> Self {
        Urst {
            u: BigInt::one(),
            r,
            s,
            t,
        }
    }

    pub fn scale(u: BigInt) -> Self {
        Urst {
            u,
            r: BigInt::zero(),
            s: BigInt::zero(),
            t: BigInt::zero(),
        }
    }

    /// The transformation "first `self`, then `next`".
    pub fn then(&self, next: &Urst) -> Urst {
        let u2 = &self.u * &self.u;
        Urst {
            u: &self.u * &next.u,
            r: &self.r + &u2 * &next.r,
            s: &self.s + &self.u * &next.s,
            t: &self.t + &u2 * &self.s * &next.r + &u2 * &self.u * &next.t,
        }
    }
}

impl WeierstrassModel {
    pub fn new(a1: BigInt, a2: BigInt, a3: BigInt, a4: BigInt, a6: BigInt) -> Self {
        WeierstrassModel { a1, a2, a3, a4, a6 }
    }

    /// `y^2 = x^3 + a4 x + a6`.
    pub fn short(a4: BigInt, a6: BigInt) -> Self {
        Self::new(BigInt::zero(), BigInt::zero(), BigInt::zero(), a4, a6)
    }

    pub fn from_i64s(a: [i64; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a.map(BigInt::from);
        Self::new(a1, a2, a3, a4, a6)
    }

    pub fn a_invariants(&self) -> [&BigInt; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    /// `(b2, b4, b6, b8)`.
    pub fn b_invariants(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        (b2, b4, b6, b8)
    }

    pub fn invariants(&self) -> Invariants {
        let (b2, b4, b6, b8) = self.b_invariants();
        let c4 = &b2 * &b2 - 24 * &b4;
        let c6 = -(&b2 * &b2 * &b2) + 36 * &b2 * &b4 - 216 * &b6;
        let delta = -(&b2 * &b2 * &b8) - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6;
        Invariants { c4, c6, delta }
    }

    pub fn discriminant(&self) -> BigInt {
        self.invariants().delta
    }

    pub fn is_short(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }

    pub(crate) fn require_nonsingular(&self) -> Result<BigInt> {
        let d = self.discriminant();
        if d.is_zero() {
            return Err(Error::domain(format!(
                "singular model {self}: discriminant 0"
            )));
        }
        Ok(d)
    }

    /// Applies `[u, r, s, t]`; `None` when the result is not integral.
    pub fn apply(&self, w: &Urst) -> Option<WeierstrassModel> {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let (u, r, s, t) = (&w.u, &w.r, &w.s, &w.t);
        if u.is_zero() {
            return None;
        }
        let n1 = a1 + 2 * s;
        let n2 = a2 - s * a1 + 3 * r - s * s;
        let n3 = a3 + r * a1 + 2 * t;
        let n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        let div = |n: BigInt, k: u32| -> Option<BigInt> {
            let d = u.pow(k);
            let (q, rem) = n.div_rem(&d);
            rem.is_zero().then_some(q)
        };
        Some(WeierstrassModel {
            a1: div(n1, 1)?,
            a2: div(n2, 2)?,
            a3: div(n3, 3)?,
            a4: div(n4, 4)?,
            a6: div(n6, 6)?,
        })
    }

    /// Parses `a1,a2,a3,a4,a6`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(Error::Parse {
                pos: 0,
                msg: format!(
                    "expected 5 comma-separated coefficients, got {}",
                    parts.len()
                ),
            });
        }
        let mut vals = Vec::with_capacity(5);
        for part in parts {
            vals.push(part.parse::<BigInt>().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("coefficient {part:?} is not an integer"),
            })?);
        }
        let mut it = vals.into_iter();
        let mut next = || it.next().expect("five values");
        Ok(Self::new(next(), next(), next(), next(), next()))
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{},{},{},{}]",
            self.a1, self.a2, self.a3, self.a4, self.a6
        )
    }
}

impl fmt::Debug for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeierstrassModel{self}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionKind {
    Good,
    Multiplicative,
    Additive,
}

/// Output of Tate's algorithm at one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalReductionData {
    pub p: BigUint,
    pub kind: ReductionKind,
    pub kodaira: Kodaira,
    /// Valuation of the minimal discriminant at `p`.
    pub v_delta_min: u32,
    /// Exponent of `p` in the conductor.
    pub f_p: u32,
    /// Tamagawa number, kept only as metadata.
    pub tamagawa: u32,
}

impl LocalReductionData {
    /// `p:kodaira:f:v`, the per-prime field of the fixture format.
    pub fn fixture_field(&self) -> String {
        format!(
            "{}:{}:{}:{}",
            self.p, self.kodaira, self.f_p, self.v_delta_min
        )
    }
}

/// Minimal discriminant, conductor and the bad-prime data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalInvariants {
    pub delta_min: BigInt,
    pub conductor: BigUint,
    pub locals: Vec<LocalReductionData>,
}

/// `(c4, c6, discriminant)` of `e`.
pub fn invariants(e: &WeierstrassModel) -> Invariants {
    e.invariants()
}

/// Minimal discriminant and conductor, running Tate's algorithm at every
/// prime dividing the discriminant of `e`.
pub fn conductor(e: &WeierstrassModel) -> Result<GlobalInvariants> {
    conductor_with(e, &arith::FactorConfig::default())
}

pub fn conductor_with(e: &WeierstrassModel, cfg: &arith::FactorConfig) -> Result<GlobalInvariants> {
    let delta = e.require_nonsingular()?;
    let fact = arith::factorize_with(&delta, cfg)?;
    let mut locals = Vec::new();
    let mut u = BigUint::one();
    let mut conductor = BigUint::one();
    for (p, v) in fact.factors() {
        let local = tate_local(e, p)?;
        let drop = v - local.v_delta_min;
        if drop % 12 != 0 {
            return Err(Error::Internal(format!(
                "valuation at {p} fell from {v} to {}, not by a multiple of 12",
                local.v_delta_min
            )));
        }
        u *= p.pow(drop / 12);
        if local.kind != ReductionKind::Good {
            conductor *= p.pow(local.f_p);
            locals.push(local);
        }
    }
    let u12 = BigInt::from(u.pow(12));
    let delta_min = &delta / &u12;
    Ok(GlobalInvariants {
        delta_min,
        conductor,
        locals,
    })
}

/// `log|delta_min| / log N`.
pub fn szpiro_ratio(e: &WeierstrassModel) -> Result<f64> {
    let g = conductor(e)?;
    szpiro_ratio_from(&g.delta_min, &g.conductor)
}

pub fn szpiro_ratio_from(delta_min: &BigInt, conductor: &BigUint) -> Result<f64> {
    if *conductor < BigUint::from(2u32) {
        return Err(Error::domain(format!(
            "Szpiro ratio needs conductor >= 2, got {conductor}"
        )));
    }
    if delta_min.is_zero() {
        return Err(Error::domain("zero discriminant"));
    }
    Ok(ln_abs(delta_min) / ln_biguint(conductor))
}

/// `log max{|A|^3, B^2, 1}`, the height proxy for `y^2 = x^3 + Ax + B`.
pub fn naive_height(a: &BigInt, b: &BigInt) -> Result<f64> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::domain("naive height of (0, 0)"));
    }
    let cube = a.abs().pow(3u32);
    let square = b * b;
    let m = cube.max(square).max(BigInt::one());
    Ok(ln_abs(&m))
}

/// True when every bad prime outside `exceptional` has multiplicative
/// reduction.
pub fn is_semistable_outside(e: &WeierstrassModel, exceptional: &[BigUint]) -> Result<bool> {
    let g = conductor(e)?;
    Ok(g.locals
        .iter()
        .filter(|l| !exceptional.contains(&l.p))
        .all(|l| l.kind == ReductionKind::Multiplicative))
}

/// `prod v_p(delta_min)` over bad primes outside `exceptional`.
pub fn valuation_product_outside(e: &WeierstrassModel, exceptional: &[BigUint]) -> Result<BigUint> {
    let g = conductor(e)?;
    Ok(g.locals
        .iter()
        .filter(|l| !exceptional.contains(&l.p))
        .map(|l| BigUint::from(l.v_delta_min))
        .product())
}

impl GlobalInvariants {
    /// Product of `p^f_p`, recomputed from the locals.
    pub fn conductor_from_locals(&self) -> BigUint {
        self.locals.iter().map(|l| l.p.pow(l.f_p)).product()
    }

    pub fn local(&self, p: &BigUint) -> Option<&LocalReductionData> {
        self.locals.iter().find(|l| &l.p == p)
    }

    /// The fixture record for the input model `e`.
    pub fn fixture_line(&self, e: &WeierstrassModel) -> String {
        let mut fields: Vec<String> = e.a_invariants().iter().map(|a| a.to_string()).collect();
        fields.push(self.delta_min.to_string());
        fields.push(self.conductor.to_string());
        fields.extend(self.locals.iter().map(LocalReductionData::fixture_field));
        fields.join(",")
    }
}
