use std::collections::HashSet;

use super::tame::{tame_search, TameWitness};
use super::verdict::{OddVerdict, Status, WildWitness};
use super::{LocalError, Result};
use crate::arith::{gcd, split_prime_power};
use crate::group::{quotient_group, FiniteGroup, GroupError, Homomorphism, Subgroup};

fn require_odd(g: &FiniteGroup) -> Result<()> {
    if g.order() % 2 == 0 {
        Err(LocalError::EvenOrder(g.order()))
    } else {
        Ok(())
    }
}

fn is_p_element(g: &FiniteGroup, x: usize, p: u64) -> bool {
    split_prime_power(g.element_order(x) as u64, p).1 == 1
}

/// Local realizability of `(D, I)` at `p` for `|D|` odd: `I` normal with a normal
/// Sylow `p`-subgroup `I_p`, a tame presentation of `(D/I_p, I/I_p)`, and `I_p`
/// the normal closure of a single element.
pub fn qp_realizable_odd(d: &FiniteGroup, i: &Subgroup, p: u64) -> Result<OddVerdict> {
    require_odd(d)?;
    if !i.parent().same(d) {
        return Err(LocalError::ForeignSubgroup);
    }
    if !i.is_normal() {
        return Ok(OddVerdict::negative(p, i, "I is not normal in D"));
    }
    let i_group = i.as_group();
    let i_p_local = i_group.sylow_subgroup(p);
    if !i_p_local.is_normal() {
        return Ok(OddVerdict::negative(p, i, "I has no normal Sylow p-subgroup"));
    }
    let i_p = i.lift(&i_p_local);
    if !i_p.is_normal() {
        return Ok(OddVerdict::negative(p, i, "I_p is not normal in D"));
    }
    let (q, proj) = quotient_group(d, &i_p)?;
    let i_bar = proj.image_of(i);
    let Some(pair) = tame_search(&q, &i_bar, p) else {
        return Ok(OddVerdict::negative(p, i, "(D/I_p, I/I_p) has no tame presentation"));
    };
    let Some(a) = i_p.members().iter().copied().find(|&a| d.normal_closure(&[a]) == i_p) else {
        return Ok(OddVerdict::negative(p, i, "I_p is not the normal closure of one element"));
    };
    let lift = |y: usize| (0..d.order()).find(|&x| proj.apply(x) == y).expect("projection is onto");
    let tame = TameWitness {
        sigma: d.element(lift(pair.sigma)).clone(),
        tau: d.element(lift(pair.tau)).clone(),
        e: pair.e,
        f: pair.f,
        r: pair.r,
    };
    Ok(OddVerdict {
        status: Status::Realizable,
        p,
        decomposition: Some(d.whole()),
        inertia: i.clone(),
        tame: Some(tame),
        wild: Some(WildWitness { a: d.element(a).clone() }),
        reason: format!("tame presentation with e = {}, f = {}; I_p of order {}", pair.e, pair.f, i_p.order()),
    })
}

/// Global realizability for `|G|` odd: some `D` between `I` and `G` is locally realizable.
pub fn q_realizable_odd(g: &FiniteGroup, i: &Subgroup, p: u64, index_bound: usize) -> Result<OddVerdict> {
    require_odd(g)?;
    if !i.parent().same(g) {
        return Err(LocalError::ForeignSubgroup);
    }
    for d in g.intermediate_subgroups(i, index_bound)? {
        let local = qp_realizable_odd(&d.as_group(), &d.restrict(i)?, p)?;
        if local.is_realizable() {
            return Ok(OddVerdict {
                decomposition: Some(d),
                inertia: i.clone(),
                reason: format!("D of order {}: {}", local.decomposition.as_ref().map_or(0, |x| x.order()), local.reason),
                ..local
            });
        }
    }
    Ok(OddVerdict::negative(p, i, "no intermediate subgroup D is locally realizable"))
}

/// Whether some `I` makes `(D, I)` locally realizable, searched through triples
/// `(a, s, t)` with `s^-1 t s = t^p`, `t` of order prime to `p`, `a` a
/// `p`-element and `<a, s, t> = D`; the candidate inertia group is the normal
/// closure of `{a, t}`.
pub fn pro_odd_quotient_check(d: &FiniteGroup, p: u64) -> Result<Option<OddVerdict>> {
    require_odd(d)?;
    let n = d.order();
    let mut tried: HashSet<Vec<usize>> = HashSet::new();
    let p_elements: Vec<usize> = (0..n).filter(|&x| is_p_element(d, x, p)).collect();
    for t in (0..n).filter(|&t| gcd(d.element_order(t) as u64, p) == 1) {
        let tp = d.pow(t, p as i64);
        for s in (0..n).filter(|&s| d.conj(t, s) == tp) {
            let st = d.subgroup(&[s, t]);
            for &a in &p_elements {
                if !st.is_whole() && !d.subgroup(&[a, s, t]).is_whole() {
                    continue;
                }
                let i = d.normal_closure(&[a, t]);
                if !tried.insert(i.members().to_vec()) {
                    continue;
                }
                let v = qp_realizable_odd(d, &i, p)?;
                if v.is_realizable() {
                    return Ok(Some(v));
                }
            }
        }
    }
    Ok(None)
}

/// Generators `sigma, x_1..x_n` of the `p`-group `D` with `I` the normal closure of the `x_i`.
#[derive(Clone, Debug)]
pub struct StructureWitness {
    pub sigma: usize,
    pub xs: Vec<usize>,
}

/// Searches for `sigma, x_1, .., x_n` generating `D` with `<x_1..x_n>^D = I`.
///
/// The `x_i` range over coset representatives of `[I, D] I^p` in `I`, which
/// decides the normal closure; `sigma` ranges over representatives of
/// `D / Phi(D)`, which decides generation.
pub fn p_group_structure_check(d: &FiniteGroup, i: &Subgroup, n: usize, p: u64) -> Result<Option<StructureWitness>> {
    if !d.is_p_group(p) {
        return Err(GroupError::NotAPGroup { order: d.order(), p }.into());
    }
    if !i.parent().same(d) {
        return Err(LocalError::ForeignSubgroup);
    }
    if !i.is_normal() {
        return Err(GroupError::NotNormal.into());
    }
    let mut seeds: Vec<usize> = i.generators().iter().map(|&x| d.pow(x, p as i64)).collect();
    for &x in i.generators() {
        for &g in d.generators() {
            seeds.push(d.commutator(x, g));
        }
    }
    let m = d.normal_closure(&seeds);
    let i_reps = coset_reps(d, i.members(), &m);
    let phi = d.frattini_subgroup(p)?;
    let d_reps = coset_reps(d, &(0..d.order()).collect::<Vec<_>>(), &phi);

    let mut xs = Vec::new();
    Ok(structure_dfs(d, i, &m, &i_reps, &d_reps, n, &mut xs))
}

fn coset_reps(d: &FiniteGroup, set: &[usize], sub: &Subgroup) -> Vec<usize> {
    let mut covered = vec![false; d.order()];
    let mut reps = Vec::new();
    for &x in set {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &m in sub.members() {
            covered[d.mul(x, m)] = true;
        }
    }
    reps
}

fn structure_dfs(
    d: &FiniteGroup,
    i: &Subgroup,
    m: &Subgroup,
    i_reps: &[usize],
    d_reps: &[usize],
    n: usize,
    xs: &mut Vec<usize>,
) -> Option<StructureWitness> {
    let mut seeds = xs.clone();
    seeds.extend_from_slice(m.generators());
    let current = d.normal_closure(&seeds);
    if d.normal_closure(xs) == *i {
        for &sigma in d_reps {
            let mut gens = xs.clone();
            gens.push(sigma);
            if d.subgroup(&gens).is_whole() {
                return Some(StructureWitness { sigma, xs: xs.clone() });
            }
        }
        return None;
    }
    if xs.len() == n {
        return None;
    }
    for &x in i_reps {
        if current.contains(x) {
            continue;
        }
        xs.push(x);
        if let Some(w) = structure_dfs(d, i, m, i_reps, d_reps, n, xs) {
            return Some(w);
        }
        xs.pop();
    }
    None
}

/// Given `pi: G -> H` with `p`-group kernel and a tame pair `(tau, sigma)` of
/// `H`, finds `t in pi^-1(tau)`, `s in pi^-1(sigma)` with `s^-1 t s = t^p`.
pub fn lift_tame_generators(pi: &Homomorphism, tau: usize, sigma: usize, p: u64) -> Option<(usize, usize)> {
    let g = pi.source();
    let ts: Vec<usize> = (0..g.order()).filter(|&x| pi.apply(x) == tau).collect();
    let ss: Vec<usize> = (0..g.order()).filter(|&x| pi.apply(x) == sigma).collect();
    for &t in &ts {
        let tp = g.pow(t, p as i64);
        if let Some(&s) = ss.iter().find(|&&s| g.conj(t, s) == tp) {
            return Some((s, t));
        }
    }
    None
}
