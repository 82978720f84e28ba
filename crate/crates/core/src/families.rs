//! Elliptic surfaces `y^2 = x^3 + A(t)x + B(t)` over `Z[t]` and the two
//! explicit constructions attached to a quadratic `f = ax^2 + bx + c` and to a
//! cubic `f = (ax + b)^3 + c`.
//!
//! The bad-fiber set `Sigma` is exactly the set of integer zeros of
//! `D(t) = -16(4A^3 + 27B^2)`: a short Weierstrass fiber is singular iff its
//! discriminant vanishes.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{self, FactorConfig};
use crate::ellcurve::{self, GlobalInvariants, WeierstrassModel};
use crate::polyz::{self, IntPoly};
use crate::{Error, Result};

/// A validated pair `(A, B)`: coprime over Q, not both constant, with
/// `D = -16(4A^3 + 27B^2)` having at least two distinct complex zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceSpec {
    a: IntPoly,
    b: IntPoly,
    d: IntPoly,
    rho: BigInt,
    sigma: Vec<BigInt>,
}

pub fn make_surface(a: IntPoly, b: IntPoly) -> Result<SurfaceSpec> {
    if a.is_constant() && b.is_constant() {
        return Err(Error::domain(format!(
            "A = {a} and B = {b} are both constant; the family is a single curve"
        )));
    }
    let g = polyz::gcd_over_q(&a, &b)?;
    if !g.is_constant() {
        return Err(Error::domain(format!(
            "A and B are not coprime over Q: gcd is {g}"
        )));
    }
    let d = polyz::discriminant_poly(&a, &b);
    if d.is_zero() {
        return Err(Error::domain(
            "discriminant polynomial D is identically zero",
        ));
    }
    let roots = polyz::distinct_root_count(&d)?;
    if roots < 2 {
        return Err(Error::domain(format!(
            "D = {d} has {roots} distinct complex zero(s), at least 2 are required"
        )));
    }
    let rho = polyz::resultant(&a, &b)?;
    if rho.is_zero() {
        return Err(Error::Internal(format!(
            "resultant of coprime {a}, {b} is 0"
        )));
    }
    let sigma = polyz::integer_roots(&d)?;
    Ok(SurfaceSpec {
        a,
        b,
        d,
        rho,
        sigma,
    })
}

impl SurfaceSpec {
    pub fn a(&self) -> &IntPoly {
        &self.a
    }

    pub fn b(&self) -> &IntPoly {
        &self.b
    }

    /// `D(t) = -16(4A^3 + 27B^2)`.
    pub fn d(&self) -> &IntPoly {
        &self.d
    }

    /// `Res(A, B)`, nonzero.
    pub fn rho(&self) -> &BigInt {
        &self.rho
    }

    /// Sorted integer zeros of `D`.
    pub fn sigma(&self) -> &[BigInt] {
        &self.sigma
    }

    pub fn is_bad(&self, n: &BigInt) -> bool {
        self.sigma.binary_search(n).is_ok()
    }

    pub fn fiber(&self, n: &BigInt) -> Result<WeierstrassModel> {
        fiber(self, n)
    }
}

/// The fiber `y^2 = x^3 + A(n)x + B(n)`.
pub fn fiber(spec: &SurfaceSpec, n: &BigInt) -> Result<WeierstrassModel> {
    if spec.is_bad(n) {
        return Err(Error::BadFiber { n: n.clone() });
    }
    Ok(WeierstrassModel::short(spec.a.eval(n), spec.b.eval(n)))
}

/// `f = ax^2 + bx + c` with `a != 0` and `delta = b^2 - 4ac != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticGPF {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub delta: BigInt,
}

impl QuadraticGPF {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        if a.is_zero() {
            return Err(Error::domain("leading coefficient a must be nonzero"));
        }
        let delta: BigInt = &b * &b - 4 * &a * &c;
        if delta.is_zero() {
            return Err(Error::domain(format!(
                "b^2 - 4ac = 0 for ({a}, {b}, {c}): f has a double root; \
                 \"two complex roots\" is read as two distinct roots, i.e. b^2 - 4ac != 0"
            )));
        }
        Ok(QuadraticGPF { a, b, c, delta })
    }

    pub fn poly(&self) -> IntPoly {
        IntPoly::new(vec![self.c.clone(), self.b.clone(), self.a.clone()])
    }

    /// `A = -3 delta`, `B = -2 delta (2a t + b)`.
    pub fn coefficient_polys(&self) -> (IntPoly, IntPoly) {
        let d = &self.delta;
        let a4 = IntPoly::constant(-3 * d);
        let a6 = IntPoly::new(vec![-2 * d * &self.b, -4 * d * &self.a]);
        (a4, a6)
    }

    pub fn surface(&self) -> Result<SurfaceSpec> {
        let (a, b) = self.coefficient_polys();
        make_surface(a, b)
    }
}

/// `f = (ax + b)^3 + c` with `a, c != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicGPF {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl CubicGPF {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        if a.is_zero() || c.is_zero() {
            return Err(Error::domain(format!(
                "(ax + b)^3 + c needs a != 0 and c != 0, got a = {a}, c = {c}"
            )));
        }
        Ok(CubicGPF { a, b, c })
    }

    pub fn poly(&self) -> IntPoly {
        let lin = IntPoly::linear(self.a.clone(), self.b.clone());
        &lin.pow(3) + &IntPoly::constant(self.c.clone())
    }

    /// `A = 3c(at + b)`, `B = 2c^2`.
    pub fn coefficient_polys(&self) -> (IntPoly, IntPoly) {
        let c3 = 3 * &self.c;
        let a4 = IntPoly::new(vec![&c3 * &self.b, &c3 * &self.a]);
        let a6 = IntPoly::constant(2 * &self.c * &self.c);
        (a4, a6)
    }

    pub fn surface(&self) -> Result<SurfaceSpec> {
        let (a, b) = self.coefficient_polys();
        make_surface(a, b)
    }
}

/// `y^2 = x^3 - 3 delta x - 2 delta (2an + b)`.
pub fn quadratic_curve(f: &QuadraticGPF, n: &BigInt) -> WeierstrassModel {
    let d = &f.delta;
    WeierstrassModel::short(-3 * d, -2 * d * (2 * &f.a * n + &f.b))
}

/// `y^2 = x^3 + 3c(an + b)x + 2c^2`.
pub fn cubic_curve(f: &CubicGPF, n: &BigInt) -> WeierstrassModel {
    WeierstrassModel::short(3 * &f.c * (&f.a * n + &f.b), 2 * &f.c * &f.c)
}

/// Both sides of a discriminant identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    /// `-16(4A^3 + 27B^2)` expanded.
    pub lhs: IntPoly,
    /// The closed form.
    pub rhs: IntPoly,
}

/// Compares `discriminant_poly(a4, a6)` with `expected` coefficientwise.
pub fn check_identity(a4: &IntPoly, a6: &IntPoly, expected: IntPoly) -> IdentityCheck {
    let lhs = polyz::discriminant_poly(a4, a6);
    IdentityCheck {
        holds: lhs == expected,
        lhs,
        rhs: expected,
    }
}

/// `D(t) = -6912 delta^2 a f(t)` for the quadratic construction.
pub fn verify_quadratic_identity(f: &QuadraticGPF) -> IdentityCheck {
    let (a4, a6) = f.coefficient_polys();
    let k = BigInt::from(-6912) * &f.delta * &f.delta * &f.a;
    check_identity(&a4, &a6, f.poly().scale(&k))
}

/// `D(t) = -1728 c^3 ((at + b)^3 + c)` for the cubic construction.
pub fn verify_cubic_identity(f: &CubicGPF) -> IdentityCheck {
    let (a4, a6) = f.coefficient_polys();
    let k = BigInt::from(-1728) * &f.c * &f.c * &f.c;
    check_identity(&a4, &a6, f.poly().scale(&k))
}

/// Outcome of randomized identity trials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityTrials {
    pub trials: u64,
    pub seed: u64,
    pub bound: i64,
    pub quadratic_failures: Vec<(BigInt, BigInt, BigInt)>,
    pub cubic_failures: Vec<(BigInt, BigInt, BigInt)>,
}

impl IdentityTrials {
    pub fn all_hold(&self) -> bool {
        self.quadratic_failures.is_empty() && self.cubic_failures.is_empty()
    }
}

/// Runs both identities on `trials` random admissible triples with
/// coefficients in `[-bound, bound]`.
pub fn verify_identities_random(trials: u64, seed: u64, bound: i64) -> Result<IdentityTrials> {
    if bound < 1 {
        return Err(Error::Usage(format!(
            "coefficient bound must be >= 1, got {bound}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = IdentityTrials {
        trials,
        seed,
        bound,
        quadratic_failures: Vec::new(),
        cubic_failures: Vec::new(),
    };
    let draw = |rng: &mut ChaCha8Rng| BigInt::from(rng.gen_range(-bound..=bound));
    for _ in 0..trials {
        let q = loop {
            let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            if let Ok(q) = QuadraticGPF::new(a, b, c) {
                break q;
            }
        };
        if !verify_quadratic_identity(&q).holds {
            out.quadratic_failures.push((q.a, q.b, q.c));
        }
        let cu = loop {
            let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            if let Ok(cu) = CubicGPF::new(a, b, c) {
                break cu;
            }
        };
        if !verify_cubic_identity(&cu).holds {
            out.cubic_failures.push((cu.a, cu.b, cu.c));
        }
    }
    Ok(out)
}

/// How far the fiber equation is from minimal, and whether `rad(D(n))`
/// divides `rho N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiminimalityReport {
    pub n: BigInt,
    /// `D(n)`, the discriminant of the fiber equation.
    pub discriminant: BigInt,
    pub delta_min: BigInt,
    pub conductor: BigUint,
    /// `D(n) / delta_min`.
    pub ratio: BigRational,
    pub rad_divides: bool,
}

impl QuasiminimalityReport {
    /// `Some((u, e))` with `|ratio| = u^(12 e)`, `e = +-1`, when the ratio is
    /// such a power.
    pub fn twelfth_power(&self) -> Option<(BigUint, i32)> {
        let r = self.ratio.abs();
        let (num, den) = (r.numer().magnitude(), r.denom().magnitude());
        let (value, e) = if den.is_one() {
            (num, 1)
        } else if num.is_one() {
            (den, -1)
        } else {
            return None;
        };
        let u = value.nth_root(12);
        (u.pow(12) == *value).then_some((u, e))
    }
}

pub fn quasiminimality_report(spec: &SurfaceSpec, n: &BigInt) -> Result<QuasiminimalityReport> {
    quasiminimality_report_with(spec, n, &FactorConfig::default())
}

pub fn quasiminimality_report_with(
    spec: &SurfaceSpec,
    n: &BigInt,
    cfg: &FactorConfig,
) -> Result<QuasiminimalityReport> {
    let e = fiber(spec, n)?;
    let g = ellcurve::conductor_with(&e, cfg)?;
    quasiminimality_from(spec, n, &g, cfg)
}

/// The report from already computed global data of the fiber at `n`.
pub fn quasiminimality_from(
    spec: &SurfaceSpec,
    n: &BigInt,
    g: &GlobalInvariants,
    cfg: &FactorConfig,
) -> Result<QuasiminimalityReport> {
    let discriminant = spec.d.eval(n);
    if discriminant.is_zero() {
        return Err(Error::BadFiber { n: n.clone() });
    }
    let ratio = BigRational::new(discriminant.clone(), g.delta_min.clone());
    let rad = arith::factorize_with(&discriminant, cfg)?.radical();
    let target = spec.rho.magnitude() * &g.conductor;
    let rad_divides = target.is_multiple_of(&rad);
    Ok(QuasiminimalityReport {
        n: n.clone(),
        discriminant,
        delta_min: g.delta_min.clone(),
        conductor: g.conductor.clone(),
        ratio,
        rad_divides,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn surfaces() {
        let s = make_surface(p(&[12]), p(&[0, 16])).unwrap();
        assert_eq!(*s.rho(), bi(12));
        assert!(s.sigma().is_empty());
        assert_eq!(*s.d(), p(&[-110592, 0, -110592]));

        let s = make_surface(p(&[0, 1]), p(&[1])).unwrap();
        assert_eq!(*s.d(), p(&[-432, 0, 0, -64]));
        assert!(s.sigma().is_empty());

        let err = make_surface(p(&[]), p(&[0, 1])).unwrap_err();
        assert!(err.to_string().contains("gcd is t"), "{err}");
        assert!(make_surface(p(&[3]), p(&[5])).is_err());
        assert!(make_surface(p(&[0, 1]), p(&[0, 0, 1])).is_err());
    }

    #[test]
    fn fibers() {
        let s = make_surface(p(&[12]), p(&[0, 16])).unwrap();
        assert_eq!(
            fiber(&s, &bi(1)).unwrap(),
            WeierstrassModel::short(bi(12), bi(16))
        );
        let s = make_surface(p(&[0, 1]), p(&[1])).unwrap();
        assert_eq!(
            fiber(&s, &bi(0)).unwrap(),
            WeierstrassModel::short(bi(0), bi(1))
        );

        // A = -3, B = t: D = -16(-108 + 27t^2) vanishes at t = +-2
        let s = make_surface(p(&[-3]), p(&[0, 1])).unwrap();
        assert_eq!(s.sigma(), &[bi(-2), bi(2)]);
        assert_eq!(fiber(&s, &bi(2)).unwrap_err(), Error::BadFiber { n: bi(2) });
        assert!(fiber(&s, &bi(3)).is_ok());
    }

    #[test]
    fn quadratic_and_cubic_curves() {
        let n = bi(7);
        let q = QuadraticGPF::new(1, 0, 1).unwrap();
        assert_eq!(
            quadratic_curve(&q, &n),
            WeierstrassModel::short(bi(12), bi(16 * 7))
        );
        let q = QuadraticGPF::new(1, 1, 1).unwrap();
        assert_eq!(
            quadratic_curve(&q, &n),
            WeierstrassModel::short(bi(9), bi(6 * 15))
        );
        let err = QuadraticGPF::new(1, -2, 1).unwrap_err();
        assert!(err.to_string().contains("distinct"));

        let c = CubicGPF::new(1, 0, 1).unwrap();
        assert_eq!(cubic_curve(&c, &n), WeierstrassModel::short(bi(21), bi(2)));
        let c = CubicGPF::new(2, 1, -1).unwrap();
        assert_eq!(cubic_curve(&c, &n), WeierstrassModel::short(bi(-45), bi(2)));
        assert!(CubicGPF::new(1, 0, 0).is_err());
        assert!(CubicGPF::new(0, 1, 1).is_err());
    }

    #[test]
    fn identities_hold_and_detect_mutations() {
        let q = QuadraticGPF::new(1, 0, 1).unwrap();
        let check = verify_quadratic_identity(&q);
        assert!(check.holds);
        assert_eq!(check.lhs, p(&[-110592, 0, -110592]));

        let c = CubicGPF::new(1, 0, 1).unwrap();
        let check = verify_cubic_identity(&c);
        assert!(check.holds);
        assert_eq!(check.rhs, p(&[-1728, 0, 0, -1728]));

        // sign flip in a4
        let (a4, a6) = q.coefficient_polys();
        let bad = check_identity(&-a4.clone(), &a6, q.poly().scale(&bi(-6912 * 16)));
        assert!(!bad.holds);
        assert_ne!(bad.lhs, bad.rhs);
        let bad = check_identity(&a4, &(&a6 + &p(&[1])), q.poly().scale(&bi(-6912 * 16)));
        assert!(!bad.holds);
        assert_ne!(bad.lhs, bad.rhs);
        // mutated constant in the cubic
        let (a4, a6) = c.coefficient_polys();
        let bad = check_identity(&a4, &(&a6 + &p(&[1])), c.poly().scale(&bi(-1728)));
        assert!(!bad.holds);
    }

    #[test]
    fn fiber_discriminant_is_d_of_n() {
        let s = make_surface(p(&[1, -2, 0, 3]), p(&[-5, 0, 7])).unwrap();
        for n in -30..=30 {
            let n = bi(n);
            if let Ok(e) = fiber(&s, &n) {
                assert_eq!(e.discriminant(), s.d().eval(&n));
            }
        }
    }

    #[test]
    fn quasiminimality() {
        let s = make_surface(p(&[0, 1]), p(&[1])).unwrap();
        let r = quasiminimality_report(&s, &bi(0)).unwrap();
        assert_eq!(r.delta_min, bi(-432));
        assert_eq!(r.conductor, BigUint::from(36u32));
        assert!(r.ratio.is_one());
        assert!(r.rad_divides);
        assert_eq!(r.twelfth_power(), Some((BigUint::one(), 1)));

        let q = QuadraticGPF::new(1, 0, 1).unwrap().surface().unwrap();
        let r = quasiminimality_report(&q, &bi(1)).unwrap();
        let (u, e) = r.twelfth_power().unwrap();
        assert_eq!(e, 1);
        let (min, w) = ellcurve::minimal_model(&fiber(&q, &bi(1)).unwrap()).unwrap();
        assert_eq!(BigInt::from(u), w.u.abs());
        assert_eq!(min.discriminant(), r.delta_min);

        let bad = make_surface(p(&[-3]), p(&[0, 1])).unwrap();
        assert!(quasiminimality_report(&bad, &bi(-2)).is_err());
    }

    #[test]
    fn random_identity_trials() {
        let t = verify_identities_random(200, 7, 1000).unwrap();
        assert!(t.all_hold());
        assert!(verify_identities_random(1, 7, 0).is_err());
    }

    proptest! {
        #[test]
        fn quadratic_identity(a in -1000i64..=1000, b in -1000i64..=1000, c in -1000i64..=1000) {
            if let Ok(q) = QuadraticGPF::new(a, b, c) {
                prop_assert!(verify_quadratic_identity(&q).holds);
                let s = q.surface().unwrap();
                let n = bi(a - c);
                prop_assume!(!s.is_bad(&n));
                prop_assert_eq!(fiber(&s, &n).unwrap(), quadratic_curve(&q, &n));
            }
        }

        #[test]
        fn cubic_identity(a in -1000i64..=1000, b in -1000i64..=1000, c in -1000i64..=1000) {
            if let Ok(f) = CubicGPF::new(a, b, c) {
                prop_assert!(verify_cubic_identity(&f).holds);
                let s = f.surface().unwrap();
                let n = bi(b + c);
                prop_assume!(!s.is_bad(&n));
                prop_assert_eq!(fiber(&s, &n).unwrap(), cubic_curve(&f, &n));
            }
        }
    }
}
