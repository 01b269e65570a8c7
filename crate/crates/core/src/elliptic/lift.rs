use serde::Serialize;

use super::classpoly::{hilbert_class_polynomial, poly_mod};
use super::curve::{EllipticCurve, ReductionType};
use super::surjectivity::{surjectivity, SurjectivityVerdict};
use super::{EllipticError, Result};
use crate::arith::{inv_mod, mul_mod};
use crate::gl2::InertiaCandidate;

/// `j` of the canonical lift of an ordinary reduction, modulo `p^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalLiftResult {
    pub p: u64,
    /// `j mod p`
    pub j_bar: u64,
    pub a_p: i64,
    /// `a_p^2 - 4p`
    pub frobenius_discriminant: i64,
    /// discriminant of the class polynomial whose root was lifted
    pub discriminant: i64,
    /// `f` with `discriminant * f^2 = a_p^2 - 4p`
    pub conductor_index: u64,
    pub class_number: usize,
    pub j_lift: u64,
}

fn eval_mod(poly: &[u64], x: u64, m: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, m) + c) % m)
}

fn derivative(poly: &[u64], m: u64) -> Vec<u64> {
    poly.iter().enumerate().skip(1).map(|(k, &c)| mul_mod(c, k as u64, m)).collect()
}

/// Lifts `j mod p` to a root of a class polynomial modulo `p^2`.
///
/// The endomorphism ring of the reduction is the order of discriminant
/// `(a_p^2 - 4p) / f^2` for some `f`; its class polynomial is the one having
/// `j mod p` as a root. Each `f` is tried from `1` up and the root is lifted
/// by one Newton step, which requires it to be simple.
pub fn canonical_lift_j(e: &EllipticCurve, p: u64) -> Result<CanonicalLiftResult> {
    if p == 2 {
        return Err(EllipticError::UnsupportedPrime(2));
    }
    let data = e.point_count(p)?;
    if data.kind != ReductionType::Ordinary {
        return Err(EllipticError::NotOrdinary(p));
    }
    let a_p = data.a.expect("good reduction");
    let j_bar = e.j_mod(p)?;
    let big = a_p * a_p - 4 * p as i64;
    let p2 = p * p;
    let mut f = 1i64;
    while f * f <= -big {
        let d = big / (f * f);
        if big % (f * f) == 0 && d.rem_euclid(4) <= 1 {
            let h = hilbert_class_polynomial(d)?;
            let hm = poly_mod(&h, p2);
            let hp: Vec<u64> = hm.iter().map(|c| c % p).collect();
            if eval_mod(&hp, j_bar, p) == 0 {
                let dh = derivative(&hm, p2);
                let slope = eval_mod(&dh, j_bar, p2);
                let Some(inv) = inv_mod((slope % p) as i128, p) else {
                    return Err(EllipticError::MultipleRoot { p, discriminant: d });
                };
                // j + p k with H(j) + p k H'(j) = 0 mod p^2
                let value = eval_mod(&hm, j_bar, p2);
                let k = mul_mod((p - (value / p) % p) % p, inv, p);
                return Ok(CanonicalLiftResult {
                    p,
                    j_bar,
                    a_p,
                    frobenius_discriminant: big,
                    discriminant: d,
                    conductor_index: f as u64,
                    class_number: h.len() - 1,
                    j_lift: (j_bar + p * k) % p2,
                });
            }
        }
        f += 1;
    }
    Err(EllipticError::NoClassPolynomialRoot(p))
}

/// Whether the restriction to inertia at `p` is diagonalizable: `j = j_lift mod p^2`.
pub fn gross_diagonalizable(e: &EllipticCurve, p: u64) -> Result<bool> {
    let lift = canonical_lift_j(e, p)?;
    Ok(e.j_mod(p * p)? == lift.j_lift)
}

/// Inertia candidate cut out by the mod-`p` representation of a weight-2 form.
pub fn inertia_image_weight2(e: &EllipticCurve, p: u64, ell_bound: u64) -> Result<(InertiaCandidate, SurjectivityVerdict)> {
    let data = e.point_count(p)?;
    let verdict = surjectivity(e, p, ell_bound);
    if !verdict.is_surjective() {
        return Err(EllipticError::InconclusiveSurjectivity(p));
    }
    let c = match data.kind {
        ReductionType::Supersingular => InertiaCandidate::NonsplitTame { index: 1 },
        ReductionType::Ordinary if gross_diagonalizable(e, p)? => InertiaCandidate::SplitTame { a: 0, b: 1 },
        ReductionType::Ordinary => InertiaCandidate::Wild { a: 0, b: 1 },
        ReductionType::Bad => return Err(EllipticError::BadReduction(p)),
    };
    Ok((c, verdict))
}
