use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::finite::FiniteGroup;
use super::{GroupError, Result};
use crate::arith::{factor_u64, split_prime_power};

/// Isomorphism type of a finite abelian group as invariant factors
/// `d1 | d2 | ... | dk`, all greater than 1. The trivial group has no factors.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianType(Vec<u64>);

impl fmt::Debug for AbelianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl AbelianType {
    /// Normalizes any list of cyclic orders (e.g. `[6, 4]`) to invariant factors.
    pub fn from_cyclic_factors(factors: &[u64]) -> Result<Self> {
        if factors.contains(&0) {
            return Err(GroupError::InconsistentParameters("cyclic factor 0".into()));
        }
        let mut parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &d in factors {
            for (q, e) in factor_u64(d) {
                parts.entry(q).or_default().push(e);
            }
        }
        Ok(Self::from_partitions(&parts))
    }

    /// Builds from `prime -> exponents of the cyclic q-parts`.
    pub fn from_partitions(parts: &BTreeMap<u64, Vec<u32>>) -> Self {
        let len = parts.values().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![1u64; len];
        for (&q, exps) in parts {
            let mut e = exps.clone();
            e.sort_unstable_by(|a, b| b.cmp(a));
            for (k, &x) in e.iter().enumerate() {
                out[len - 1 - k] *= q.pow(x);
            }
        }
        out.retain(|&d| d > 1);
        AbelianType(out)
    }

    /// Invariant factors; each divides the next.
    pub fn factors(&self) -> &[u64] {
        &self.0
    }

    pub fn order(&self) -> u64 {
        self.0.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.0.len() <= 1
    }

    /// Exponents of the cyclic `q`-primary parts, largest first.
    pub fn primary_partition(&self, q: u64) -> Vec<u32> {
        let mut e: Vec<u32> = self
            .0
            .iter()
            .map(|&d| split_prime_power(d, q).0)
            .filter(|&x| x > 0)
            .collect();
        e.sort_unstable_by(|a, b| b.cmp(a));
        e
    }

    pub fn primes(&self) -> Vec<u64> {
        self.0.last().map(|&d| factor_u64(d).into_iter().map(|(q, _)| q).collect()).unwrap_or_default()
    }

    /// Whether a group of this type embeds in one of type `other`:
    /// for every prime the sorted partitions must be dominated termwise.
    pub fn embeds_in(&self, other: &AbelianType) -> bool {
        self.primes().into_iter().all(|q| {
            let a = self.primary_partition(q);
            let b = other.primary_partition(q);
            a.len() <= b.len() && a.iter().zip(&b).all(|(x, y)| x <= y)
        })
    }
}

impl FiniteGroup {
    /// Invariant factors, read off from the number of solutions of `x^(q^k) = 1`.
    pub fn abelian_invariants(&self) -> Result<AbelianType> {
        if !self.is_abelian() {
            return Err(GroupError::NotAbelian);
        }
        let orders = self.orders();
        let mut parts = BTreeMap::new();
        for (q, v) in factor_u64(self.order() as u64) {
            // at_least[k-1] = number of cyclic q-parts of exponent >= k
            let mut exps = Vec::new();
            let mut prev = 0u32;
            for k in 1..=v {
                let qk = q.pow(k);
                let count = orders.iter().filter(|&&o| qk % o as u64 == 0).count() as u64;
                let log = split_prime_power(count, q).0;
                let at_least = log - prev;
                prev = log;
                exps.push(at_least);
            }
            let mut partition = Vec::new();
            for k in 1..=v as usize {
                let next = exps.get(k).copied().unwrap_or(0);
                for _ in 0..exps[k - 1] - next {
                    partition.push(k as u32);
                }
            }
            parts.insert(q, partition);
        }
        Ok(AbelianType::from_partitions(&parts))
    }
}
