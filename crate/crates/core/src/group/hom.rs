use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use super::element::Permutation;
use super::finite::FiniteGroup;
use super::subgroup::Subgroup;
use super::{Element, GroupError, Result};

/// A homomorphism between enumerated groups, stored as a full index map.
#[derive(Clone)]
pub struct Homomorphism {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Arc<Vec<usize>>,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Homomorphism({:?} -> {:?})", self.source, self.target)
    }
}

impl Homomorphism {
    /// Extends `images[k]` (image of the `k`-th source generator) to the whole
    /// source. Walks the Cayley graph of the source; any edge on which two
    /// values disagree means the assignment is not a homomorphism.
    pub fn from_generator_images(
        source: &FiniteGroup,
        target: &FiniteGroup,
        images: &[usize],
    ) -> Result<Homomorphism> {
        let gens = source.generators();
        if images.len() != gens.len() || images.iter().any(|&i| i >= target.order()) {
            return Err(GroupError::NotAHomomorphism);
        }
        let mut map = vec![usize::MAX; source.order()];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&s, &t) in gens.iter().zip(images) {
                let y = source.mul(x, s);
                let v = target.mul(map[x], t);
                if map[y] == usize::MAX {
                    map[y] = v;
                    queue.push_back(y);
                } else if map[y] != v {
                    return Err(GroupError::NotAHomomorphism);
                }
            }
        }
        Ok(Homomorphism { source: source.clone(), target: target.clone(), map: Arc::new(map) })
    }

    /// Same as [`from_generator_images`](Self::from_generator_images) with target elements.
    pub fn from_generator_elements(
        source: &FiniteGroup,
        target: &FiniteGroup,
        images: &[Element],
    ) -> Result<Homomorphism> {
        let idx = images.iter().map(|x| target.require(x)).collect::<Result<Vec<_>>>()?;
        Self::from_generator_images(source, target, &idx)
    }

    pub fn identity(g: &FiniteGroup) -> Homomorphism {
        Homomorphism {
            source: g.clone(),
            target: g.clone(),
            map: Arc::new((0..g.order()).collect()),
        }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn apply_element(&self, x: &Element) -> Result<Element> {
        let i = self.source.require(x)?;
        Ok(self.target.element(self.map[i]).clone())
    }

    pub fn image(&self) -> Subgroup {
        let gens: Vec<usize> = self.source.generators().iter().map(|&g| self.map[g]).collect();
        self.target.subgroup(&gens)
    }

    pub fn kernel(&self) -> Subgroup {
        let members: Vec<usize> = (0..self.source.order()).filter(|&i| self.map[i] == 0).collect();
        self.source.subgroup_from_members(&members)
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage(&self, sub: &Subgroup) -> Subgroup {
        let members: Vec<usize> =
            (0..self.source.order()).filter(|&i| sub.contains(self.map[i])).collect();
        self.source.subgroup_from_members(&members)
    }

    /// Image of a subgroup of the source.
    pub fn image_of(&self, sub: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = sub.generators().iter().map(|&g| self.map[g]).collect();
        self.target.subgroup(&gens)
    }

    /// `other` after `self`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if !self.target.same(&other.source) {
            return Err(GroupError::TargetMismatch);
        }
        let map = self.map.iter().map(|&i| other.map[i]).collect();
        Ok(Homomorphism { source: self.source.clone(), target: other.target.clone(), map: Arc::new(map) })
    }
}

/// `G / N` as a permutation group on the cosets of `N`, with the projection.
pub fn quotient_group(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, Homomorphism)> {
    if !n.parent().same(g) {
        return Err(GroupError::NotInGroup);
    }
    if !n.is_normal() {
        return Err(GroupError::NotNormal);
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &m in n.members() {
            coset[g.mul(x, m)] = c;
        }
    }
    let action = |x: usize| -> Element {
        let images = reps.iter().map(|&r| coset[g.mul(r, x)] as u32).collect();
        Permutation::from_images(images).expect("coset action is a bijection").into()
    };
    let gen_images: Vec<Element> = g.generators().iter().map(|&x| action(x)).collect();
    let q = if gen_images.is_empty() {
        FiniteGroup::trivial(reps.len())
    } else {
        FiniteGroup::enumerate_bounded(&gen_images, reps.len() + 1)?
    };
    let images = gen_images.iter().map(|x| q.require(x)).collect::<Result<Vec<_>>>()?;
    let proj = Homomorphism::from_generator_images(g, &q, &images)?;
    Ok((q, proj))
}
