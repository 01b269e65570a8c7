use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{EllipticError, Result};
use crate::arith::gcd;

const MAX_ABS_DISCRIMINANT: i64 = 10_000;
const MAX_PRECISION_BITS: u64 = 1 << 16;

/// Reduced primitive positive definite forms `(a, b, c)` of discriminant `d`.
pub fn reduced_forms(d: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    let n = -d;
    let mut a = 1;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if gcd(gcd(a as u64, b.unsigned_abs()), c as u64) == 1 {
                out.push((a, b, c));
            }
        }
        a += 1;
    }
    out
}

/// Fixed-point reals: `value * 2^bits`.
#[derive(Clone, Copy)]
struct Fx {
    bits: u64,
}

#[derive(Clone, Debug)]
struct Cx {
    re: BigInt,
    im: BigInt,
}

impl Fx {
    fn one(&self) -> BigInt {
        BigInt::one() << self.bits
    }

    fn mul(&self, x: &BigInt, y: &BigInt) -> BigInt {
        (x * y) >> self.bits
    }

    fn div(&self, x: &BigInt, y: &BigInt) -> BigInt {
        (x << self.bits).div_floor(y)
    }

    fn sqrt_int(&self, n: i64) -> BigInt {
        (BigInt::from(n) << (2 * self.bits)).sqrt()
    }

    /// `atan(1/n)` by its alternating series.
    fn atan_inv(&self, n: i64) -> BigInt {
        let n2 = BigInt::from(n * n);
        let mut power = self.one() / BigInt::from(n);
        let mut sum = power.clone();
        let mut k = 1i64;
        while !power.is_zero() {
            power = -power / &n2;
            sum += &power / BigInt::from(2 * k + 1);
            k += 1;
        }
        sum
    }

    fn pi(&self) -> BigInt {
        BigInt::from(16) * self.atan_inv(5) - BigInt::from(4) * self.atan_inv(239)
    }

    fn cmul(&self, x: &Cx, y: &Cx) -> Cx {
        Cx {
            re: self.mul(&x.re, &y.re) - self.mul(&x.im, &y.im),
            im: self.mul(&x.re, &y.im) + self.mul(&x.im, &y.re),
        }
    }

    fn cdiv(&self, x: &Cx, y: &Cx) -> Cx {
        let norm = self.mul(&y.re, &y.re) + self.mul(&y.im, &y.im);
        let conj = Cx { re: y.re.clone(), im: -&y.im };
        let n = self.cmul(x, &conj);
        Cx { re: self.div(&n.re, &norm), im: self.div(&n.im, &norm) }
    }

    fn cone(&self) -> Cx {
        Cx { re: self.one(), im: BigInt::zero() }
    }

    /// `exp(z)`: halve until tiny, sum the series, square back.
    fn cexp(&self, z: &Cx) -> Cx {
        let size = z.re.abs().max(z.im.abs()) >> self.bits;
        let halvings = size.bits() + 8;
        let small = Cx { re: &z.re >> halvings, im: &z.im >> halvings };
        let mut term = self.cone();
        let mut sum = self.cone();
        let mut k = 1i64;
        loop {
            term = self.cmul(&term, &small);
            term.re /= k;
            term.im /= k;
            if negligible(&term) {
                break;
            }
            sum.re += &term.re;
            sum.im += &term.im;
            k += 1;
        }
        for _ in 0..halvings {
            sum = self.cmul(&sum, &sum);
        }
        sum
    }
}

/// Below the last bit: floored shifts can leave `-1` forever.
fn negligible(z: &Cx) -> bool {
    z.re.magnitude().bits() <= 1 && z.im.magnitude().bits() <= 1
}

/// `H_D(X)`, coefficients from the constant term up; the leading one is 1.
pub fn hilbert_class_polynomial(d: i64) -> Result<Vec<BigInt>> {
    if d >= 0 || d.rem_euclid(4) > 1 || -d > MAX_ABS_DISCRIMINANT {
        return Err(EllipticError::InvalidDiscriminant(d));
    }
    let forms = reduced_forms(d);
    let n = -d;
    // log2 |j(tau)| is about pi sqrt|D| / (a ln 2); the coefficients are bounded by the product
    let magnitude: f64 = forms
        .iter()
        .map(|&(a, _, _)| std::f64::consts::PI * (n as f64).sqrt() / (a as f64 * std::f64::consts::LN_2) + 12.0)
        .sum();
    let mut bits = (magnitude as u64 + 64 + 8 * forms.len() as u64).max(128);
    while bits <= MAX_PRECISION_BITS {
        if let Some(poly) = class_poly_at(d, &forms, bits) {
            return Ok(poly);
        }
        bits *= 2;
    }
    Err(EllipticError::PrecisionFailure(d))
}

fn class_poly_at(d: i64, forms: &[(i64, i64, i64)], bits: u64) -> Option<Vec<BigInt>> {
    let fx = Fx { bits };
    let pi = fx.pi();
    let sqrt_n = fx.sqrt_int(-d);
    let mut poly: Vec<Cx> = vec![fx.cone()];
    for &(a, b, _) in forms {
        // 2 pi i tau = pi (-sqrt|D| - i b) / a
        let z = Cx {
            re: -(fx.mul(&pi, &sqrt_n)) / a,
            im: -(&pi * BigInt::from(b)) / a,
        };
        let q = fx.cexp(&z);
        let j = j_value(&fx, &q);
        // poly *= (X - j)
        let mut next: Vec<Cx> = vec![Cx { re: BigInt::zero(), im: BigInt::zero() }; poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1].re += &c.re;
            next[k + 1].im += &c.im;
            let t = fx.cmul(c, &j);
            next[k].re -= &t.re;
            next[k].im -= &t.im;
        }
        poly = next;
    }
    // accept only when every coefficient sits well inside a rounding cell
    let tolerance = fx.one() >> 16;
    let half = BigInt::one() << (bits - 1);
    let mut out = Vec::with_capacity(poly.len());
    for c in &poly {
        let rounded = (&c.re + &half) >> bits;
        let err = &c.re - (&rounded << bits);
        if err.abs() > tolerance || c.im.abs() > tolerance {
            return None;
        }
        out.push(rounded);
    }
    Some(out)
}

/// `j(tau)` from `q = exp(2 pi i tau)` as `E4^3 / Delta`.
fn j_value(fx: &Fx, q: &Cx) -> Cx {
    let one = fx.cone();
    let mut e4_sum = Cx { re: BigInt::zero(), im: BigInt::zero() };
    let mut prod = one.clone();
    let mut qn = one.clone();
    let mut n = 1i64;
    loop {
        qn = fx.cmul(&qn, q);
        if negligible(&qn) {
            break;
        }
        let denom = Cx { re: &one.re - &qn.re, im: -&qn.im };
        let t = fx.cdiv(&qn, &denom);
        let n3 = BigInt::from(n).pow(3);
        e4_sum.re += &t.re * &n3;
        e4_sum.im += &t.im * &n3;
        prod = fx.cmul(&prod, &denom);
        n += 1;
    }
    let e4 = Cx { re: &one.re + &e4_sum.re * 240, im: &e4_sum.im * 240 };
    let e4_cubed = fx.cmul(&fx.cmul(&e4, &e4), &e4);
    // Delta = q prod^24
    let mut p24 = prod;
    let p2 = fx.cmul(&p24, &p24);
    let p4 = fx.cmul(&p2, &p2);
    let p8 = fx.cmul(&p4, &p4);
    let p16 = fx.cmul(&p8, &p8);
    p24 = fx.cmul(&p16, &p8);
    let delta = fx.cmul(q, &p24);
    fx.cdiv(&e4_cubed, &delta)
}

/// Coefficients reduced modulo `m`.
pub fn poly_mod(poly: &[BigInt], m: u64) -> Vec<u64> {
    let bm = BigInt::from(m);
    poly.iter().map(|c| c.mod_floor(&bm).to_u64().expect("residue fits")).collect()
}
