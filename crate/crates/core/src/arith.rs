//! Small-integer and big-integer number theory used throughout the crate.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Least non-negative residue of `a` modulo `m`.
pub fn modulo(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: i128, m: u64) -> Option<u64> {
    let m_i = m as i128;
    let a = a.rem_euclid(m_i);
    let ext = a.extended_gcd(&m_i);
    if ext.gcd != 1 {
        return None;
    }
    Some(ext.x.rem_euclid(m_i) as u64)
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Odd primes in `[lo, hi]`, ascending.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&n| is_prime(n)).collect()
}

/// Factorization of a small integer as `(prime, exponent)` pairs, ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).collect();
    let mut hi: Vec<u64> = ds.iter().rev().map(|d| n / d).filter(|&q| q * q != n).collect();
    ds.append(&mut hi);
    ds
}

/// The exponent `v` with `p^v || n` and the cofactor.
pub fn split_prime_power(mut n: u64, p: u64) -> (u32, u64) {
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

/// Multiplicative order of `a` modulo `m` (`a` must be a unit).
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    let phi: u64 = factor_u64(m)
        .iter()
        .map(|&(q, e)| (q - 1) * q.pow(e - 1))
        .product();
    let mut ord = phi;
    for (q, _) in factor_u64(phi) {
        while ord % q == 0 && pow_mod(a, ord / q, m) == 1 {
            ord /= q;
        }
    }
    ord
}

/// Smallest primitive root modulo an odd prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    (2..p)
        .find(|&g| multiplicative_order(g, p) == p - 1)
        .unwrap_or(1)
}

/// Legendre symbol `(a/p)` for an odd prime `p`, as -1, 0 or 1.
pub fn legendre(a: i64, p: u64) -> i32 {
    let a = modulo(a as i128, p);
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Smallest quadratic non-residue modulo an odd prime `p`.
pub fn smallest_nonresidue(p: u64) -> u64 {
    (2..p).find(|&d| legendre(d as i64, p) == -1).unwrap_or(0)
}

/// Chinese remainder for coprime moduli: the unique `x mod m1*m2`.
pub fn crt(r1: u64, m1: u64, r2: u64, m2: u64) -> Option<u64> {
    let inv = inv_mod(m1 as i128, m2)?;
    let m = m1 as u128 * m2 as u128;
    let t = mul_mod(modulo(r2 as i128 - r1 as i128, m2), inv, m2);
    Some(((r1 as u128 + m1 as u128 * t as u128) % m) as u64)
}

// ---------------------------------------------------------------------------
// Big integers

pub fn big_mod(a: &BigInt, m: u64) -> u64 {
    a.mod_floor(&BigInt::from(m)).to_u64().unwrap_or(0)
}

/// Residue of an exact rational modulo `m`; `None` when the denominator is not a unit.
pub fn rational_mod(x: &BigRational, m: u64) -> Option<u64> {
    let num = big_mod(x.numer(), m);
    let den = big_mod(x.denom(), m);
    let inv = inv_mod(den as i128, m)?;
    Some(mul_mod(num, inv, m))
}

/// p-adic valuation of a nonzero big integer.
pub fn big_valuation(a: &BigInt, p: u64) -> u32 {
    if a.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut a = a.clone();
    let mut v = 0;
    loop {
        let (q, r) = a.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        a = q;
        v += 1;
    }
}

fn big_pow_mod(base: &BigInt, exp: &BigInt, m: &BigInt) -> BigInt {
    base.modpow(exp, m)
}

/// Miller-Rabin with the first twelve prime bases; deterministic below 3.3e24.
pub fn big_is_prime(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    if n.sign() != Sign::Plus || n.is_even() {
        return false;
    }
    let one = BigInt::one();
    let n_minus = n - &one;
    let mut d = n_minus.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = big_pow_mod(&BigInt::from(a), &d, n);
        if x == one || x == n_minus {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    for c in 1u32.. {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut x, mut y, mut d) = (BigInt::from(2), BigInt::from(2), one.clone());
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
    }
    unreachable!()
}

/// Full factorization of `|n|`: trial division to 10^6, then Pollard rho.
pub fn factor_big(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    if n.is_zero() {
        return out;
    }
    let push = |out: &mut Vec<(BigInt, u32)>, q: BigInt| {
        if let Some(entry) = out.iter_mut().find(|(r, _)| *r == q) {
            entry.1 += 1;
        } else {
            out.push((q, 1));
        }
    };
    let mut d = 2u64;
    while d <= 1_000_000 {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            break;
        }
        while (&n % &bd).is_zero() {
            n /= &bd;
            push(&mut out, bd.clone());
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if big_is_prime(&m) {
            push(&mut out, m);
            continue;
        }
        let f = pollard_brent(&m);
        stack.push(&m / &f);
        stack.push(f);
    }
    out.sort();
    out
}
