use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{EllipticError, Result};
use crate::arith::{big_mod, big_valuation, legendre, modulo, rational_mod};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over `Q`.
#[derive(Clone, PartialEq, Eq)]
pub struct EllipticCurve {
    a: [BigRational; 5],
    b: [BigRational; 4],
    c4: BigRational,
    c6: BigRational,
    disc: BigRational,
    j: BigRational,
}

impl fmt::Debug for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "EllipticCurve[{}]", a.join(","))
    }
}

/// Standard invariants of a Weierstrass model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInvariants {
    pub disc: BigRational,
    pub c4: BigRational,
    pub c6: BigRational,
    pub j: BigRational,
}

impl EllipticCurve {
    /// Coefficients in the order `a1, a2, a3, a4, a6`.
    pub fn new(a: [BigRational; 5]) -> Result<EllipticCurve> {
        let [a1, a2, a3, a4, a6] = &a;
        let b2 = a1 * a1 + q(4) * a2;
        let b4 = q(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + q(4) * a6;
        let b8 = a1 * a1 * a6 + q(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let c4 = &b2 * &b2 - q(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + q(36) * &b2 * &b4 - q(216) * &b6;
        let disc = -(&b2 * &b2 * &b8) - q(8) * &b4 * &b4 * &b4 - q(27) * &b6 * &b6 + q(9) * &b2 * &b4 * &b6;
        if disc.is_zero() {
            return Err(EllipticError::SingularCurve);
        }
        let j = &c4 * &c4 * &c4 / &disc;
        Ok(EllipticCurve { a, b: [b2, b4, b6, b8], c4, c6, disc, j })
    }

    pub fn from_integers(a: [i64; 5]) -> Result<EllipticCurve> {
        Self::new(a.map(q))
    }

    pub fn from_bigints(a: [BigInt; 5]) -> Result<EllipticCurve> {
        Self::new(a.map(BigRational::from_integer))
    }

    /// `y^2 = x^3 + A x + B`.
    pub fn short(a4: BigInt, a6: BigInt) -> Result<EllipticCurve> {
        Self::from_bigints([BigInt::zero(), BigInt::zero(), BigInt::zero(), a4, a6])
    }

    pub fn coefficients(&self) -> &[BigRational; 5] {
        &self.a
    }

    pub fn b_invariants(&self) -> &[BigRational; 4] {
        &self.b
    }

    pub fn c4(&self) -> &BigRational {
        &self.c4
    }

    pub fn c6(&self) -> &BigRational {
        &self.c6
    }

    pub fn discriminant(&self) -> &BigRational {
        &self.disc
    }

    pub fn j_invariant(&self) -> &BigRational {
        &self.j
    }

    pub fn invariants(&self) -> CurveInvariants {
        CurveInvariants { disc: self.disc.clone(), c4: self.c4.clone(), c6: self.c6.clone(), j: self.j.clone() }
    }

    fn is_integral_at(&self, ell: u64) -> bool {
        self.a.iter().all(|x| big_mod(x.denom(), ell) != 0)
    }

    /// A model that is integral and minimal at `ell`, isomorphic over `Q`.
    ///
    /// For `ell >= 5` the short model `y^2 = x^3 - 27 c4 x - 54 c6` is descaled
    /// by the largest admissible power of `ell`. For `ell = 3` the model is first
    /// made integral and then descaled through a search over `(r, s, t)`.
    pub fn minimal_model_at(&self, ell: u64) -> Result<EllipticCurve> {
        match ell {
            2 => Err(EllipticError::UnsupportedPrime(2)),
            3 => self.minimal_model_at_3(),
            _ => {
                let v = |x: &BigRational| -> i64 {
                    if x.is_zero() {
                        i64::MAX / 2
                    } else {
                        big_valuation(x.numer(), ell) as i64 - big_valuation(x.denom(), ell) as i64
                    }
                };
                let k = (v(&self.c4).div_euclid(4)).min(v(&self.c6).div_euclid(6)).min(v(&self.disc).div_euclid(12));
                let u = BigRational::from_integer(BigInt::from(ell)).pow(k as i32);
                let a4 = q(-27) * &self.c4 / u.pow(4);
                let a6 = q(-54) * &self.c6 / u.pow(6);
                EllipticCurve::new([q(0), q(0), q(0), a4, a6])
            }
        }
    }

    fn minimal_model_at_3(&self) -> Result<EllipticCurve> {
        let mut cur = self.clone();
        while !cur.is_integral_at(3) {
            cur = cur.scale(&q(3).recip());
        }
        loop {
            if big_valuation(cur.disc.numer(), 3) < 12
                || big_valuation(cur.c4.numer(), 3) < 4 && !cur.c4.is_zero()
                || big_valuation(cur.c6.numer(), 3) < 6 && !cur.c6.is_zero()
            {
                return Ok(cur);
            }
            match cur.descale_search(3) {
                Some(next) => cur = next,
                None => return Ok(cur),
            }
        }
    }

    /// Substitution `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
    pub fn transform(&self, u: &BigRational, r: &BigRational, s: &BigRational, t: &BigRational) -> Result<EllipticCurve> {
        let [a1, a2, a3, a4, a6] = &self.a;
        let n1 = a1 + q(2) * s;
        let n2 = a2 - s * a1 + q(3) * r - s * s;
        let n3 = a3 + r * a1 + q(2) * t;
        let n4 = a4 - s * a3 + q(2) * r * a2 - (t + r * s) * a1 + q(3) * r * r - q(2) * s * t;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        EllipticCurve::new([n1 / u, n2 / u.pow(2), n3 / u.pow(3), n4 / u.pow(4), n6 / u.pow(6)])
    }

    fn scale(&self, u: &BigRational) -> EllipticCurve {
        self.transform(u, &q(0), &q(0), &q(0)).expect("scaling keeps the curve nonsingular")
    }

    fn descale_search(&self, ell: u64) -> Option<EllipticCurve> {
        let u = q(ell as i64);
        let l = ell as i64;
        for r in 0..l * l {
            for s in 0..l {
                for t in 0..l * l * l {
                    let e = self.transform(&u, &q(r), &q(s), &q(t)).ok()?;
                    if e.is_integral_at(ell) {
                        return Some(e);
                    }
                }
            }
        }
        None
    }

    /// Good reduction at `ell` after minimalization.
    pub fn good_reduction(&self, ell: u64) -> bool {
        match self.minimal_model_at(ell) {
            Ok(m) => big_mod(m.disc.numer(), ell) != 0 && m.is_integral_at(ell),
            Err(_) => false,
        }
    }

    /// Number of points over `F_ell` of the reduction, including infinity.
    pub fn point_count(&self, ell: u64) -> Result<ReductionData> {
        if ell == 2 {
            return Err(EllipticError::UnsupportedPrime(2));
        }
        if ell > 1_000_000 {
            return Err(EllipticError::PrimeTooLarge(ell));
        }
        let m = self.minimal_model_at(ell)?;
        if !m.is_integral_at(ell) || big_mod(m.disc.numer(), ell) == 0 {
            return Err(EllipticError::BadReduction(ell));
        }
        let r = |x: &BigRational| rational_mod(x, ell).expect("integral model") as i64;
        let (b2, b4, b6) = (r(&m.b[0]), r(&m.b[1]), r(&m.b[2]));
        let l = ell as i64;
        // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
        let mut count: i64 = 1;
        for x in 0..l {
            let rhs = ((((4 * x + b2) % l) * x % l + 2 * b4) % l * x + b6) % l;
            count += 1 + legendre(rhs, ell) as i64;
        }
        let a = l + 1 - count;
        assert!((a * a) as u64 <= 4 * ell, "Hasse bound violated: a = {a}, ell = {ell}");
        let kind = if modulo(a as i128, ell) == 0 { ReductionType::Supersingular } else { ReductionType::Ordinary };
        Ok(ReductionData { ell, good: true, count: Some(count as u64), a: Some(a), kind })
    }

    /// Reduction data, with bad primes reported rather than rejected.
    pub fn reduction(&self, ell: u64) -> Result<ReductionData> {
        match self.point_count(ell) {
            Err(EllipticError::BadReduction(_)) => {
                Ok(ReductionData { ell, good: false, count: None, a: None, kind: ReductionType::Bad })
            }
            other => other,
        }
    }

    /// Residue of `j` modulo `m`.
    pub fn j_mod(&self, m: u64) -> Result<u64> {
        residue_of_rational(&self.j, m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionType {
    Ordinary,
    Supersingular,
    Bad,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionData {
    pub ell: u64,
    pub good: bool,
    pub count: Option<u64>,
    /// `ell + 1 - count`
    pub a: Option<i64>,
    pub kind: ReductionType,
}

pub fn residue_of_rational(x: &BigRational, m: u64) -> Result<u64> {
    rational_mod(x, m).ok_or(EllipticError::NonInvertibleDenominator(m))
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// `n` or `n/d` as a string.
pub fn rational_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Factorization helper: `p^e` products as a signed rational.
pub fn rational_from_factors(sign: i64, factors: &[(i64, i32)]) -> BigRational {
    let mut x = q(sign);
    for &(p, e) in factors {
        let pe = q(p).pow(e.abs());
        x = if e >= 0 { x * pe } else { x / pe };
    }
    x
}
