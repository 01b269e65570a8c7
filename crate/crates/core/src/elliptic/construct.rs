use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::curve::{parse_rational, rational_string, EllipticCurve, ReductionType};
use super::lift::canonical_lift_j;
use super::surjectivity::{in_zywina_exceptions, zywina_surjectivity};
use super::{EllipticError, Result};
use crate::arith::{big_mod, crt, inv_mod, is_prime, modulo, mul_mod};

const MAX_B_STEPS: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateKind {
    Supersingular,
    Ordinary { diagonal: bool },
}

/// Claims about a constructed curve `y^2 = x^3 + (A + a p) x + (B + b p)`,
/// each re-checked by [`CurveCertificate::validate`] from the coefficients alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveCertificate {
    pub kind: CertificateKind,
    pub p: u64,
    /// auxiliary prime dividing the denominator of `j`
    pub q: u64,
    /// `[a1, a2, a3, a4, a6]` as decimal strings
    pub coefficients: Vec<String>,
    /// reduction `(A, B)` modulo `p`
    pub base: (u64, u64),
    pub shift_a: String,
    pub shift_b: String,
    pub j: String,
    pub a_p: i64,
    pub j_mod_p2: Option<u64>,
    pub j_lift_mod_p2: Option<u64>,
    /// prime certifying surjectivity through the denominator criterion
    pub surjectivity_prime: String,
}

impl CurveCertificate {
    pub fn curve(&self) -> Result<EllipticCurve> {
        let bad = || EllipticError::CertificateFailed("coefficients must be five rationals".into());
        if self.coefficients.len() != 5 {
            return Err(bad());
        }
        let mut a: [BigRational; 5] = Default::default();
        for (slot, s) in a.iter_mut().zip(&self.coefficients) {
            *slot = parse_rational(s).ok_or_else(bad)?;
        }
        EllipticCurve::new(a)
    }

    /// Recomputes every claim from the curve.
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(EllipticError::CertificateFailed(m));
        let e = self.curve()?;
        let p = self.p;
        if p <= 13 || !is_prime(p) {
            return fail(format!("p = {p} must be a prime above 13"));
        }
        if rational_string(e.j_invariant()) != self.j {
            return fail("j does not match the coefficients".into());
        }
        let data = e.point_count(p)?;
        if data.a != Some(self.a_p) {
            return fail(format!("a_p is {:?}, certificate says {}", data.a, self.a_p));
        }
        match self.kind {
            CertificateKind::Supersingular => {
                if data.kind != ReductionType::Supersingular {
                    return fail("reduction is not supersingular".into());
                }
            }
            CertificateKind::Ordinary { diagonal } => {
                if data.kind != ReductionType::Ordinary {
                    return fail("reduction is not ordinary".into());
                }
                let lift = canonical_lift_j(&e, p)?;
                let jm = e.j_mod(p * p)?;
                if Some(lift.j_lift) != self.j_lift_mod_p2 || Some(jm) != self.j_mod_p2 {
                    return fail("residues of j and its canonical lift do not match".into());
                }
                if (jm == lift.j_lift) != diagonal {
                    return fail(format!("diagonalizability is {}, expected {diagonal}", jm == lift.j_lift));
                }
            }
        }
        let q = self.q;
        if !is_prime(q) || q <= 3 || q % p == 1 || q % p == p - 1 {
            return fail(format!("q = {q} must be a prime above 3 with q != +-1 mod {p}"));
        }
        if big_mod(e.j_invariant().denom(), q) != 0 {
            return fail(format!("{q} does not divide the denominator of j"));
        }
        if in_zywina_exceptions(p, e.j_invariant()) {
            return fail("(p, j) is an exceptional pair".into());
        }
        let v = zywina_surjectivity(&e, p);
        if !v.is_surjective() {
            return fail(v.reason);
        }
        Ok(())
    }
}

/// Smallest prime `q > 3` with `q != +-1 mod p`.
fn auxiliary_prime(p: u64) -> u64 {
    (5..).find(|&q| is_prime(q) && q % p != 1 && q % p != p - 1).expect("infinitely many primes")
}

fn short_curve(a4: &BigInt, a6: &BigInt) -> Result<EllipticCurve> {
    EllipticCurve::short(a4.clone(), a6.clone())
}

fn nonsingular_mod(a: u64, b: u64, p: u64) -> bool {
    (4 * mul_mod(mul_mod(a, a, p), a, p) + 27 * mul_mod(b, b, p)) % p != 0
}

/// `a` in `[0, 3q)` with `3 | A + a p` and `A + a p = -3 mod q`.
fn shift_a(big_a: u64, p: u64, q: u64) -> u64 {
    let inv3 = inv_mod(p as i128, 3).expect("p > 3");
    let invq = inv_mod(p as i128, q).expect("q != p");
    let r3 = mul_mod(modulo(-(big_a as i128), 3), inv3, 3);
    let rq = mul_mod(modulo(-3 - big_a as i128, q), invq, q);
    crt(r3, 3, rq, q).expect("coprime moduli")
}

fn certificate(
    kind: CertificateKind,
    p: u64,
    q: u64,
    base: (u64, u64),
    a: u64,
    b: &BigInt,
    e: &EllipticCurve,
) -> Result<CurveCertificate> {
    let data = e.point_count(p)?;
    let v = zywina_surjectivity(e, p);
    let (j_mod_p2, j_lift_mod_p2) = match kind {
        CertificateKind::Supersingular => (None, None),
        CertificateKind::Ordinary { .. } => (Some(e.j_mod(p * p)?), Some(canonical_lift_j(e, p)?.j_lift)),
    };
    Ok(CurveCertificate {
        kind,
        p,
        q,
        coefficients: e.coefficients().iter().map(rational_string).collect(),
        base,
        shift_a: a.to_string(),
        shift_b: b.to_string(),
        j: rational_string(e.j_invariant()),
        a_p: data.a.expect("good reduction"),
        j_mod_p2,
        j_lift_mod_p2,
        surjectivity_prime: v.witnesses.first().map(|w| w.prime.clone()).unwrap_or_default(),
    })
}

/// Steps `b` by `modulus` from `start` until `(p, j)` avoids the exceptional pairs.
fn step_b(
    p: u64,
    big_a: &BigInt,
    big_b: u64,
    start: u64,
    modulus: u64,
) -> Result<(BigInt, EllipticCurve)> {
    for k in 0..MAX_B_STEPS {
        let b = BigInt::from(start) + BigInt::from(k) * modulus;
        let a6 = BigInt::from(big_b) + &b * p;
        let Ok(e) = short_curve(big_a, &a6) else { continue };
        if !in_zywina_exceptions(p, e.j_invariant()) {
            return Ok((b, e));
        }
    }
    Err(EllipticError::SearchExhausted(format!("no admissible b within {MAX_B_STEPS} steps")))
}

/// A curve with supersingular reduction at `p` whose mod-`p` representation is surjective.
pub fn construct_supersingular(p: u64) -> Result<(EllipticCurve, CurveCertificate)> {
    if p <= 13 || !is_prime(p) {
        return Err(EllipticError::PrimeTooSmall(p));
    }
    let q = auxiliary_prime(p);
    for big_a in 0..p {
        for big_b in 0..p {
            if !nonsingular_mod(big_a, big_b, p) {
                continue;
            }
            let probe = short_curve(&BigInt::from(big_a), &BigInt::from(big_b))?;
            if probe.point_count(p)?.kind != ReductionType::Supersingular {
                continue;
            }
            let a = shift_a(big_a, p, q);
            let a4 = BigInt::from(big_a) + BigInt::from(a) * p;
            // B + b p = 2 mod q
            let b0 = mul_mod(modulo(2 - big_b as i128, q), inv_mod(p as i128, q).expect("q != p"), q);
            let (b, e) = step_b(p, &a4, big_b, b0, q)?;
            let cert = certificate(CertificateKind::Supersingular, p, q, (big_a, big_b), a, &b, &e)?;
            return Ok((e, cert));
        }
    }
    Err(EllipticError::SearchExhausted(format!("no supersingular curve over F_{p}")))
}

/// A curve with ordinary reduction at `p`, surjective mod `p`, whose restriction
/// to inertia is diagonalizable exactly when `diagonal` holds.
///
/// `j` is forced modulo `p^2` to the canonical lift (or away from it) by
/// solving `27 j B'^2 = (6912 - 4 j) A'^3 mod p^2` for `B' = B + b p`.
pub fn construct_ordinary(p: u64, diagonal: bool) -> Result<(EllipticCurve, CurveCertificate)> {
    if p <= 13 || !is_prime(p) {
        return Err(EllipticError::PrimeTooSmall(p));
    }
    let q = auxiliary_prime(p);
    let p2 = p * p;
    for big_a in 1..p {
        for big_b in 1..p {
            if !nonsingular_mod(big_a, big_b, p) {
                continue;
            }
            let a = shift_a(big_a, p, q);
            let a4 = BigInt::from(big_a) + BigInt::from(a) * p;
            let seed = short_curve(&a4, &BigInt::from(big_b))?;
            if seed.point_count(p)?.kind != ReductionType::Ordinary {
                continue;
            }
            let Ok(lift) = canonical_lift_j(&seed, p) else { continue };
            let target = if diagonal { lift.j_lift } else { (lift.j_lift + p) % p2 };
            let jt = BigInt::from(target);
            let n = (BigInt::from(6912) - 4 * &jt) * a4.pow(3) - 27 * &jt * BigInt::from(big_b).pow(2);
            if big_mod(&n, p) != 0 {
                return Err(EllipticError::CertificateFailed("j target is not a root mod p".into()));
            }
            let unit = mul_mod(54 * (target % p) % p, big_b, p);
            let Some(inv) = inv_mod(unit as i128, p) else {
                return Err(EllipticError::UnluckyUnit(p));
            };
            let bp = mul_mod(big_mod(&(n / p), p), inv, p);
            let bq = mul_mod(modulo(2 - big_b as i128, q), inv_mod(p as i128, q).expect("q != p"), q);
            let b0 = crt(bp, p, bq, q).expect("coprime moduli");
            let (b, e) = step_b(p, &a4, big_b, b0, p * q)?;
            let cert = certificate(CertificateKind::Ordinary { diagonal }, p, q, (big_a, big_b), a, &b, &e)?;
            return Ok((e, cert));
        }
    }
    Err(EllipticError::SearchExhausted(format!("no ordinary curve over F_{p}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supersingular_17() {
        let (e, cert) = construct_supersingular(17).unwrap();
        cert.validate().unwrap();
        assert_eq!(cert.q, 5);
        // 4 A'^3 + 27 B'^2 vanishes mod q while c4 does not
        let a = e.coefficients();
        let a4 = big_mod(a[3].numer(), 5);
        let a6 = big_mod(a[4].numer(), 5);
        assert_eq!((4 * a4 * a4 * a4 + 27 * a6 * a6) % 5, 0);
        assert_ne!(a4, 0);
    }

    #[test]
    fn ordinary_17_both_flags() {
        for diagonal in [true, false] {
            let (_, cert) = construct_ordinary(17, diagonal).unwrap();
            cert.validate().unwrap();
            assert_eq!(cert.j_mod_p2 == cert.j_lift_mod_p2, diagonal);
        }
    }

    #[test]
    fn tampered_certificate_fails() {
        let (_, mut cert) = construct_supersingular(19).unwrap();
        cert.validate().unwrap();
        cert.coefficients[4] = format!("{}1", cert.coefficients[4]);
        assert!(cert.validate().is_err());
        assert!(construct_supersingular(13).is_err());
    }
}
