use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::finite::FiniteGroup;
use super::{Element, GroupError, Result};
use crate::arith::split_prime_power;

pub const DEFAULT_INDEX_BOUND: usize = 10_000;

/// Which formula `(x, y)` denotes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CommutatorConvention {
    /// `x^-1 y^-1 x y`
    InverseFirst,
    /// `x y x^-1 y^-1`
    InverseLast,
}

impl CommutatorConvention {
    pub const ALL: [CommutatorConvention; 2] =
        [CommutatorConvention::InverseFirst, CommutatorConvention::InverseLast];

    pub fn apply(self, g: &FiniteGroup, x: usize, y: usize) -> usize {
        match self {
            CommutatorConvention::InverseFirst => g.commutator(x, y),
            CommutatorConvention::InverseLast => {
                g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y)))
            }
        }
    }
}

/// A subgroup of an enumerated group, stored as a sorted set of parent indices.
#[derive(Clone)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Arc<Vec<usize>>,
    mask: Arc<Vec<bool>>,
    generators: Vec<usize>,
    as_group: Arc<OnceLock<FiniteGroup>>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} of {})", self.order(), self.parent.order())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same(&other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup {}

/// Smallest set containing `seed` and closed under right multiplication by `gens`.
fn close(parent: &FiniteGroup, seed: &[usize], gens: &[usize], bound: usize) -> Option<Vec<bool>> {
    let mut mask = vec![false; parent.order()];
    let mut queue = VecDeque::new();
    let mut count = 0;
    for &s in seed.iter().chain(std::iter::once(&0)) {
        if !mask[s] {
            mask[s] = true;
            count += 1;
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = parent.mul(x, g);
            if !mask[y] {
                mask[y] = true;
                count += 1;
                if count > bound {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(mask)
}

impl Subgroup {
    fn from_mask(parent: &FiniteGroup, mask: Vec<bool>, generators: Vec<usize>) -> Subgroup {
        let members = mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
        let mut gens: Vec<usize> = Vec::new();
        for g in generators {
            if g != 0 && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Subgroup {
            parent: parent.clone(),
            members: Arc::new(members),
            mask: Arc::new(mask),
            generators: gens,
            as_group: Arc::new(OnceLock::new()),
        }
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_elements(&self) -> Vec<Element> {
        self.generators.iter().map(|&i| self.parent.element(i).clone()).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask[i]
    }

    pub fn contains_element(&self, x: &Element) -> bool {
        self.parent.index_of(x).is_some_and(|i| self.contains(i))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.generators.iter().all(|&g| other.contains(g))
    }

    pub fn is_normal(&self) -> bool {
        self.generators.iter().all(|&x| {
            self.parent.generators().iter().all(|&g| self.contains(self.parent.conj(x, g)))
        })
    }

    /// Whether `g` normalizes this subgroup.
    pub fn normalized_by(&self, g: usize) -> bool {
        self.generators.iter().all(|&x| self.contains(self.parent.conj(x, g)))
    }

    /// `g^-1 S g`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let gens: Vec<usize> = self.generators.iter().map(|&x| self.parent.conj(x, g)).collect();
        self.parent.subgroup(&gens)
    }

    /// The subgroup as a group in its own right. Its element `k` is parent element `members()[k]`.
    pub fn as_group(&self) -> FiniteGroup {
        self.as_group
            .get_or_init(|| {
                let elements = self.members.iter().map(|&i| self.parent.element(i).clone()).collect();
                FiniteGroup::from_closed_set(
                    self.parent.law().clone(),
                    self.generator_elements(),
                    elements,
                )
            })
            .clone()
    }

    /// Parent index of element `k` of [`as_group`](Self::as_group).
    pub fn lift_index(&self, k: usize) -> usize {
        self.members[k]
    }

    /// Position of parent element `i` inside [`as_group`](Self::as_group).
    pub fn local_index(&self, i: usize) -> Option<usize> {
        self.members.binary_search(&i).ok()
    }

    /// Maps a subgroup of `as_group()` back into the parent.
    pub fn lift(&self, inner: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = inner.generators.iter().map(|&k| self.members[k]).collect();
        let mut mask = vec![false; self.parent.order()];
        for &k in inner.members() {
            mask[self.members[k]] = true;
        }
        Subgroup::from_mask(&self.parent, mask, gens)
    }

    /// Views `other` (a subgroup of the same parent contained in `self`) inside `as_group()`.
    pub fn restrict(&self, other: &Subgroup) -> Result<Subgroup> {
        let g = self.as_group();
        let gens = other
            .generators
            .iter()
            .map(|&i| self.local_index(i).ok_or(GroupError::NotInGroup))
            .collect::<Result<Vec<_>>>()?;
        Ok(g.subgroup(&gens))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mask: Vec<bool> = self.mask.iter().zip(other.mask.iter()).map(|(&a, &b)| a && b).collect();
        let members: Vec<usize> = mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
        self.parent.subgroup_from_members(&members)
    }

    /// `<self, other>`.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(&other.generators);
        self.parent.subgroup(&gens)
    }
}

impl FiniteGroup {
    pub fn whole(&self) -> Subgroup {
        let mask = vec![true; self.order()];
        Subgroup::from_mask(self, mask, self.generators().to_vec())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        Subgroup::from_mask(self, mask, Vec::new())
    }

    /// Subgroup generated by the given element indices.
    pub fn subgroup(&self, gens: &[usize]) -> Subgroup {
        let mask = close(self, &[], gens, usize::MAX).expect("unbounded closure");
        Subgroup::from_mask(self, mask, gens.to_vec())
    }

    pub fn subgroup_generated(&self, elems: &[Element]) -> Result<Subgroup> {
        let gens = elems.iter().map(|x| self.require(x)).collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup(&gens))
    }

    /// Subgroup with a known closed member set; generators are chosen greedily.
    pub fn subgroup_from_members(&self, members: &[usize]) -> Subgroup {
        let mut gens = Vec::new();
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        for &m in members {
            if !mask[m] {
                gens.push(m);
                let seed: Vec<usize> = mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
                mask = close(self, &seed, &gens, usize::MAX).expect("unbounded closure");
            }
        }
        Subgroup::from_mask(self, mask, gens)
    }

    /// Smallest normal subgroup containing the given indices.
    pub fn normal_closure(&self, elems: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = elems.iter().copied().filter(|&x| x != 0).collect();
        let mut mask = close(self, &[], &gens, usize::MAX).expect("unbounded closure");
        let mut k = 0;
        while k < gens.len() {
            let x = gens[k];
            for &g in self.generators() {
                let c = self.conj(x, g);
                if !mask[c] {
                    gens.push(c);
                    let seed: Vec<usize> =
                        mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
                    mask = close(self, &seed, &gens, usize::MAX).expect("unbounded closure");
                }
            }
            k += 1;
        }
        Subgroup::from_mask(self, mask, gens)
    }

    pub fn normal_closure_of(&self, elems: &[Element]) -> Result<Subgroup> {
        let idx = elems.iter().map(|x| self.require(x)).collect::<Result<Vec<_>>>()?;
        Ok(self.normal_closure(&idx))
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        split_prime_power(self.order() as u64, p).1 == 1
    }

    /// A Sylow `p`-subgroup, built deterministically: starting from the trivial
    /// group, repeatedly adjoin the first element (in index order) of order `p`
    /// modulo the current subgroup inside its normalizer.
    pub fn sylow_subgroup(&self, p: u64) -> Subgroup {
        let (v, _) = split_prime_power(self.order() as u64, p);
        let target = (p as usize).pow(v);
        let mut current = self.trivial_subgroup();
        while current.order() < target {
            let mut next = None;
            for g in 1..self.order() {
                if current.contains(g) || !current.normalized_by(g) {
                    continue;
                }
                let mut k = 1usize;
                let mut y = g;
                while !current.contains(y) {
                    y = self.mul(y, g);
                    k += 1;
                }
                let (_, rest) = split_prime_power(k as u64, p);
                if rest == 1 {
                    next = Some(self.pow(g, (k / p as usize) as i64));
                    break;
                }
            }
            let h = next.expect("p-subgroup below Sylow order has a normalizer of p-index");
            let mut gens = current.generators().to_vec();
            gens.push(h);
            current = self.subgroup(&gens);
        }
        current
    }

    fn require_p_group(&self, p: u64) -> Result<()> {
        if self.is_p_group(p) {
            Ok(())
        } else {
            Err(GroupError::NotAPGroup { order: self.order(), p })
        }
    }

    /// Frattini subgroup of a `p`-group: normal closure of `p`-th powers and
    /// commutators of the generators.
    pub fn frattini_subgroup(&self, p: u64) -> Result<Subgroup> {
        self.require_p_group(p)?;
        let gens = self.generators();
        let mut seeds: Vec<usize> = gens.iter().map(|&g| self.pow(g, p as i64)).collect();
        for (k, &a) in gens.iter().enumerate() {
            for &b in &gens[k + 1..] {
                seeds.push(self.commutator(a, b));
            }
        }
        Ok(self.normal_closure(&seeds))
    }

    /// Dimension of `P / Phi(P)` over `F_p`.
    pub fn generator_rank(&self, p: u64) -> Result<usize> {
        let phi = self.frattini_subgroup(p)?;
        let (rank, _) = split_prime_power(phi.index() as u64, p);
        Ok(rank as usize)
    }

    /// All subgroups between `sub` and the whole group, in breadth-first order.
    pub fn intermediate_subgroups(&self, sub: &Subgroup, index_bound: usize) -> Result<Vec<Subgroup>> {
        if !sub.parent().same(self) {
            return Err(GroupError::NotInGroup);
        }
        if sub.index() > index_bound {
            return Err(GroupError::BoundExceeded { bound: index_bound });
        }
        let mut seen: HashSet<Arc<Vec<usize>>> = HashSet::new();
        seen.insert(sub.members.clone());
        let mut out = vec![sub.clone()];
        let mut k = 0;
        while k < out.len() {
            let d = out[k].clone();
            let mut visited = d.mask.as_ref().clone();
            for g in 0..self.order() {
                if visited[g] {
                    continue;
                }
                for &x in d.members() {
                    visited[self.mul(g, x)] = true;
                }
                let mut gens = d.generators().to_vec();
                gens.push(g);
                let mask = close(self, d.members(), &gens, usize::MAX).expect("unbounded closure");
                let cand = Subgroup::from_mask(self, mask, gens);
                if seen.insert(cand.members.clone()) {
                    out.push(cand);
                }
            }
            k += 1;
        }
        Ok(out)
    }

    /// Some `g` with `g^-1 A g = B`, searching in index order.
    pub fn conjugating_element(&self, a: &Subgroup, b: &Subgroup) -> Option<usize> {
        if a.order() != b.order() {
            return None;
        }
        (0..self.order()).find(|&g| a.generators().iter().all(|&x| b.contains(self.conj(x, g))))
    }

    pub fn is_conjugate_subgroup(&self, a: &Subgroup, b: &Subgroup) -> (bool, Option<usize>) {
        let w = self.conjugating_element(a, b);
        (w.is_some(), w)
    }

    /// One representative (the smallest index) of each conjugacy class.
    pub fn class_representatives(&self) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut reps = Vec::new();
        for x in 0..self.order() {
            if seen[x] {
                continue;
            }
            reps.push(x);
            seen[x] = true;
            let mut queue = VecDeque::from([x]);
            while let Some(y) = queue.pop_front() {
                for &g in self.generators() {
                    let c = self.conj(y, g);
                    if !seen[c] {
                        seen[c] = true;
                        queue.push_back(c);
                    }
                }
            }
        }
        reps
    }

    /// Smallest number of generators, if it is at most `bound`.
    pub fn minimal_generating_size(&self, bound: usize) -> Option<usize> {
        if self.is_trivial() {
            return Some(0);
        }
        let order = self.order() as u64;
        let (p, _) = crate::arith::factor_u64(order)[0];
        if self.is_p_group(p) {
            let r = self.generator_rank(p).expect("p-group");
            return (r <= bound).then_some(r);
        }
        let reps = self.class_representatives();
        for k in 1..=bound {
            for &first in reps.iter().filter(|&&r| r != 0) {
                let mut tuple = vec![first];
                if self.extend_generating(&mut tuple, k, 1) {
                    return Some(k);
                }
            }
        }
        None
    }

    fn extend_generating(&self, tuple: &mut Vec<usize>, k: usize, start: usize) -> bool {
        if tuple.len() == k {
            let mask = close(self, &[], tuple, usize::MAX).expect("unbounded closure");
            return mask.iter().all(|&b| b);
        }
        for x in start..self.order() {
            tuple.push(x);
            if self.extend_generating(tuple, k, x + 1) {
                return true;
            }
            tuple.pop();
        }
        false
    }
}
