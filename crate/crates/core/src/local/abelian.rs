use serde::{Deserialize, Serialize};

use super::{LocalError, Result};
use crate::arith::{is_prime, split_prime_power};
use crate::group::AbelianType;

/// Whether `a` is a quotient of the `p`-adic units.
///
/// Odd `p`: the units are `C_(p-1) x Z_p`, so the quotients are the cyclic
/// groups of order `d p^k` with `d | p - 1`. For `p = 2` they are `C_(2^k)`
/// and `C_2 x C_(2^k)`.
pub fn is_quotient_of_zp_units(a: &AbelianType, p: u64) -> bool {
    let f = a.factors();
    if p == 2 {
        return match f {
            [] | [_] => f.iter().all(|&d| split_prime_power(d, 2).1 == 1),
            [2, d] => split_prime_power(*d, 2).1 == 1,
            _ => false,
        };
    }
    match f {
        [] => true,
        [d] => {
            let (_, prime_to_p) = split_prime_power(*d, p);
            (p - 1) % prime_to_p == 0
        }
        _ => false,
    }
}

/// Data for the global construction: `I` is a quotient of `(Z/p^n)^x`, and each
/// cyclic factor `n_i` of `G` is cut out of the `q_i`-th cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianWitness {
    pub n: u32,
    pub primes: Vec<u64>,
    pub factor_orders: Vec<u64>,
}

impl AbelianWitness {
    /// Re-checks the arithmetic conditions from scratch.
    pub fn validate(&self, g: &AbelianType, i: &AbelianType, p: u64) -> std::result::Result<(), String> {
        if self.factor_orders != g.factors() {
            return Err("factor orders differ from the invariant factors of G".into());
        }
        for (k, (&q, &n)) in self.primes.iter().zip(&self.factor_orders).enumerate() {
            if !is_prime(q) || q == p || (q - 1) % n != 0 {
                return Err(format!("q_{} = {q} fails q prime, q != p, {n} | q - 1", k + 1));
            }
            if self.primes[..k].contains(&q) {
                return Err(format!("prime {q} repeated"));
            }
        }
        if self.primes.len() != self.factor_orders.len() {
            return Err("one prime per cyclic factor is required".into());
        }
        let units = units_type(p, self.n);
        if !i.embeds_in(&units) {
            return Err(format!("I is not a quotient of (Z/{p}^{})^x", self.n));
        }
        Ok(())
    }
}

/// Type of `(Z/p^n)^x`.
fn units_type(p: u64, n: u32) -> AbelianType {
    let factors: Vec<u64> = if p == 2 {
        match n {
            0 | 1 => vec![],
            2 => vec![2],
            _ => vec![2, 2u64.pow(n - 2)],
        }
    } else if n == 0 {
        vec![]
    } else {
        vec![p - 1, p.pow(n - 1)]
    };
    AbelianType::from_cyclic_factors(&factors).expect("positive factors")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianVerdict {
    pub realizable: bool,
    pub witness: Option<AbelianWitness>,
    pub reason: String,
}

pub fn abelian_realizable(g: &AbelianType, i: &AbelianType, p: u64) -> Result<AbelianVerdict> {
    if !i.embeds_in(g) {
        return Err(LocalError::NotASubgroupType);
    }
    if is_quotient_of_zp_units(i, p) {
        Ok(AbelianVerdict {
            realizable: true,
            witness: Some(abelian_construction_witness(g, i, p)?),
            reason: format!("I is a quotient of Z_{p}^x"),
        })
    } else {
        Ok(AbelianVerdict {
            realizable: false,
            witness: None,
            reason: "I is not a quotient of Z_p^x".into(),
        })
    }
}

pub fn abelian_construction_witness(g: &AbelianType, i: &AbelianType, p: u64) -> Result<AbelianWitness> {
    if !is_quotient_of_zp_units(i, p) {
        return Err(LocalError::CheckFailed("I is not a quotient of Z_p^x".into()));
    }
    // (Z/p^n)^x grows by one factor of p (of 2 for p = 2) per step, so this terminates
    let n = (0..)
        .find(|&n| i.embeds_in(&units_type(p, n)))
        .expect("every quotient of Z_p^x is a quotient of some (Z/p^n)^x");
    let mut primes = Vec::new();
    for &d in g.factors() {
        let mut q = d + 1;
        while !(is_prime(q) && q != p && !primes.contains(&q)) {
            q += d;
        }
        primes.push(q);
    }
    Ok(AbelianWitness { n, primes, factor_orders: g.factors().to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(f: &[u64]) -> AbelianType {
        AbelianType::from_cyclic_factors(f).unwrap()
    }

    #[test]
    fn quotient_classification() {
        assert!(is_quotient_of_zp_units(&t(&[4]), 5));
        assert!(!is_quotient_of_zp_units(&t(&[2, 2]), 5));
        assert!(is_quotient_of_zp_units(&t(&[2, 8]), 2));
        assert!(is_quotient_of_zp_units(&t(&[2, 2]), 2));
        assert!(!is_quotient_of_zp_units(&t(&[4, 4]), 2));
        assert!(is_quotient_of_zp_units(&t(&[6 * 9]), 7) == false);
        assert!(is_quotient_of_zp_units(&t(&[6 * 49]), 7));
        assert!(is_quotient_of_zp_units(&t(&[]), 3));
    }

    #[test]
    fn verdicts_and_witnesses() {
        let v = abelian_realizable(&t(&[4, 4]), &t(&[4]), 5).unwrap();
        assert!(v.realizable);
        let v = abelian_realizable(&t(&[2, 2]), &t(&[2, 2]), 7).unwrap();
        assert!(!v.realizable);
        let v = abelian_realizable(&t(&[8]), &t(&[]), 3).unwrap();
        assert!(v.realizable);
        assert_eq!(abelian_realizable(&t(&[4]), &t(&[2, 2]), 5).unwrap_err(), LocalError::NotASubgroupType);

        let w = abelian_construction_witness(&t(&[4]), &t(&[4]), 5).unwrap();
        assert_eq!((w.n, w.primes.clone()), (1, vec![13]));
        w.validate(&t(&[4]), &t(&[4]), 5).unwrap();
        let w = abelian_construction_witness(&t(&[3]), &t(&[]), 5).unwrap();
        assert_eq!(w.primes, vec![7]);
        let w = abelian_construction_witness(&t(&[2, 2]), &t(&[2]), 5).unwrap();
        assert_eq!(w.n, 1);
        assert_eq!(w.primes, vec![3, 7]);
        w.validate(&t(&[2, 2]), &t(&[2]), 5).unwrap();
        let w = abelian_construction_witness(&t(&[2, 8]), &t(&[2, 8]), 2).unwrap();
        assert_eq!(w.n, 5);
    }
}
