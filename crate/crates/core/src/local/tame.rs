use serde::Serialize;

use crate::arith::{gcd, pow_mod};
use crate::group::{Element, FiniteGroup, Subgroup};

/// `D = <sigma, tau | tau^e, sigma^f = tau^r, sigma^-1 tau sigma = tau^p>` with
/// `<tau>` the inertia group. When produced for `D / I_p`, `sigma` and `tau`
/// are lifts to `D` and the relations hold modulo `I_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameWitness {
    pub sigma: Element,
    pub tau: Element,
    pub e: u64,
    pub f: u64,
    pub r: u64,
}

/// Side congruences satisfied by the observed exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TameConsistency {
    /// `p^f mod e`
    pub p_pow_f_mod_e: u64,
    /// `r (p - 1) mod e`
    pub r_times_p_minus_one_mod_e: u64,
}

impl TameWitness {
    pub fn consistency(&self, p: u64) -> TameConsistency {
        TameConsistency {
            p_pow_f_mod_e: pow_mod(p, self.f, self.e),
            r_times_p_minus_one_mod_e: (self.r as u128 * (p - 1) as u128 % self.e as u128) as u64,
        }
    }

    /// Checks every relation by direct multiplication in `d`, modulo the normal
    /// subgroup `kernel`, with `inertia` the subgroup that `<tau>` must cover.
    pub fn validate(
        &self,
        d: &FiniteGroup,
        kernel: &Subgroup,
        inertia: &Subgroup,
        p: u64,
    ) -> std::result::Result<(), String> {
        let sigma = d.index_of(&self.sigma).ok_or("sigma is not in D")?;
        let tau = d.index_of(&self.tau).ok_or("tau is not in D")?;
        let same = |x: usize, y: usize| kernel.contains(d.mul(x, d.inv(y)));
        if gcd(self.e, p) != 1 {
            return Err(format!("e = {} is not prime to p", self.e));
        }
        if !kernel.contains(d.pow(tau, self.e as i64)) {
            return Err("tau^e is not trivial".into());
        }
        if (1..self.e).any(|k| kernel.contains(d.pow(tau, k as i64))) {
            return Err("tau has order smaller than e".into());
        }
        if !same(d.conj(tau, sigma), d.pow(tau, p as i64)) {
            return Err("sigma^-1 tau sigma != tau^p".into());
        }
        if !same(d.pow(sigma, self.f as i64), d.pow(tau, self.r as i64)) {
            return Err("sigma^f != tau^r".into());
        }
        let mut gens = kernel.generators().to_vec();
        gens.push(tau);
        let tau_k = d.subgroup(&gens);
        if tau_k != *inertia {
            return Err("<tau> does not cover the inertia group".into());
        }
        if (1..self.f).any(|k| tau_k.contains(d.pow(sigma, k as i64))) {
            return Err("f is not the order of sigma modulo <tau>".into());
        }
        gens.push(sigma);
        if !d.subgroup(&gens).is_whole() {
            return Err("sigma and tau do not generate D".into());
        }
        if (self.e * self.f) as usize * kernel.order() != d.order() {
            return Err("|D| != e f".into());
        }
        Ok(())
    }
}

/// Index-level search result.
#[derive(Clone, Copy, Debug)]
pub(crate) struct TamePair {
    pub sigma: usize,
    pub tau: usize,
    pub e: u64,
    pub f: u64,
    pub r: u64,
}

/// First pair `(tau, sigma)` in index order presenting `(D, I)` as a tame pair.
pub(crate) fn tame_search(d: &FiniteGroup, i: &Subgroup, p: u64) -> Option<TamePair> {
    let n = d.order() as u64;
    for &tau in i.members() {
        let e = d.element_order(tau) as u64;
        if e != i.order() as u64 || gcd(e, p) != 1 {
            continue;
        }
        let target = d.pow(tau, p as i64);
        for sigma in 0..d.order() {
            if d.conj(tau, sigma) != target {
                continue;
            }
            let mut f = 1u64;
            let mut y = sigma;
            while !i.contains(y) {
                y = d.mul(y, sigma);
                f += 1;
            }
            if e * f != n || !d.subgroup(&[sigma, tau]).is_whole() {
                continue;
            }
            let r = (0..e).find(|&r| d.pow(tau, r as i64) == y).expect("sigma^f lies in <tau>");
            return Some(TamePair { sigma, tau, e, f, r });
        }
    }
    None
}

/// Searches `D x D` for a tame presentation with inertia `I`.
pub fn tame_realizable(d: &FiniteGroup, i: &Subgroup, p: u64) -> Option<TameWitness> {
    if !i.parent().same(d) {
        return None;
    }
    tame_search(d, i, p).map(|t| TameWitness {
        sigma: d.element(t.sigma).clone(),
        tau: d.element(t.tau).clone(),
        e: t.e,
        f: t.f,
        r: t.r,
    })
}
