use std::collections::VecDeque;
use std::sync::Arc;

use super::element::Permutation;
use super::finite::{FiniteGroup, Law, ProductLaw, DEFAULT_CLOSURE_BOUND};
use super::hom::Homomorphism;
use super::{Element, GroupError, Result};
use crate::arith::{gcd, inv_mod, pow_mod};

/// Cyclic group of order `n` acting regularly on `n` points.
pub fn cyclic_group(n: usize) -> FiniteGroup {
    abelian_group(&[n as u64]).expect("cyclic group")
}

/// Direct product of cyclic groups, as disjoint cycles.
pub fn abelian_group(factors: &[u64]) -> Result<FiniteGroup> {
    let degree: u64 = factors.iter().filter(|&&d| d > 1).sum();
    if degree as usize > DEFAULT_CLOSURE_BOUND || factors.contains(&0) {
        return Err(GroupError::InconsistentParameters("cyclic factors must be positive".into()));
    }
    let degree = (degree as usize).max(1);
    let mut gens = Vec::new();
    let mut offset = 0u32;
    for &d in factors.iter().filter(|&&d| d > 1) {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for k in 0..d as u32 {
            images[(offset + k) as usize] = offset + (k + 1) % d as u32;
        }
        offset += d as u32;
        gens.push(Permutation::from_images(images).expect("cycle").into());
    }
    let bound = factors.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d as usize));
    match bound {
        Some(b) if b <= DEFAULT_CLOSURE_BOUND => {}
        _ => return Err(GroupError::BoundExceeded { bound: DEFAULT_CLOSURE_BOUND }),
    }
    if gens.is_empty() {
        return Ok(FiniteGroup::trivial(degree));
    }
    FiniteGroup::enumerate(&gens)
}

pub fn direct_product(n: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    product(n, h, None)
}

/// `N x| H` where `action[k]` is the automorphism of `N` given by the `k`-th
/// generator of `H`, so that `h n h^-1 = action(h)(n)`.
pub fn semidirect_product(n: &FiniteGroup, h: &FiniteGroup, action: &[Homomorphism]) -> Result<FiniteGroup> {
    let hgens = h.generators();
    if action.len() != hgens.len() {
        return Err(GroupError::NotAnAction);
    }
    for a in action {
        if !a.source().same(n) || !a.target().same(n) || !a.is_injective() {
            return Err(GroupError::NotAnAction);
        }
    }
    // table[x][m] = act(x)(m); act(x s) = act(x) o act(s)
    let mut table: Vec<Option<Vec<u32>>> = vec![None; h.order()];
    table[0] = Some((0..n.order() as u32).collect());
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&s, a) in hgens.iter().zip(action) {
            let y = h.mul(x, s);
            let row: Vec<u32> = {
                let ax = table[x].as_ref().expect("visited");
                (0..n.order()).map(|m| ax[a.apply(m)]).collect()
            };
            match &table[y] {
                None => {
                    table[y] = Some(row);
                    queue.push_back(y);
                }
                Some(existing) if *existing != row => return Err(GroupError::NotAnAction),
                Some(_) => {}
            }
        }
    }
    let table: Vec<Vec<u32>> = table.into_iter().map(|r| r.expect("H is generated")).collect();
    let trivial = table.iter().all(|row| row.iter().enumerate().all(|(i, &j)| i as u32 == j));
    product(n, h, if trivial { None } else { Some(table) })
}

fn product(n: &FiniteGroup, h: &FiniteGroup, action: Option<Vec<Vec<u32>>>) -> Result<FiniteGroup> {
    let size = n.order().checked_mul(h.order()).unwrap_or(usize::MAX);
    if size > DEFAULT_CLOSURE_BOUND {
        return Err(GroupError::BoundExceeded { bound: DEFAULT_CLOSURE_BOUND });
    }
    let law = Law::Product(Arc::new(ProductLaw { normal: n.clone(), acting: h.clone(), action }));
    let mut gens = Vec::new();
    for &g in n.generators() {
        gens.push(Element::tuple(n.element(g).clone(), h.element(0).clone()));
    }
    for &g in h.generators() {
        gens.push(Element::tuple(n.element(0).clone(), h.element(g).clone()));
    }
    FiniteGroup::generate(law, gens, DEFAULT_CLOSURE_BOUND)
}

/// `C_p wr H`: the group ring `F_p[H]` (as an elementary abelian group with one
/// coordinate per element of `H`) extended by `H` permuting coordinates by left
/// multiplication.
pub fn wreath_product_regular(p: u64, h: &FiniteGroup) -> Result<FiniteGroup> {
    let m = h.order();
    let size = (p as f64).powi(m as i32) * m as f64;
    if size > DEFAULT_CLOSURE_BOUND as f64 {
        return Err(GroupError::BoundExceeded { bound: DEFAULT_CLOSURE_BOUND });
    }
    let base = abelian_group(&vec![p; m])?;
    // base generator k is the unit vector at coordinate k of H
    let action = h
        .generators()
        .iter()
        .map(|&g| {
            let images: Vec<usize> = (0..m).map(|x| base.generators()[h.mul(g, x)]).collect();
            Homomorphism::from_generator_images(&base, &base, &images)
        })
        .collect::<Result<Vec<_>>>()?;
    semidirect_product(&base, h, &action)
}

/// Pairs `(x, y)` with `phi1(x) = phi2(y)`.
pub fn fiber_product(phi1: &Homomorphism, phi2: &Homomorphism) -> Result<FiniteGroup> {
    if !phi1.target().same(phi2.target()) || !phi1.is_surjective() || !phi2.is_surjective() {
        return Err(GroupError::TargetMismatch);
    }
    let (g1, g2) = (phi1.source(), phi2.source());
    let mut lift = vec![usize::MAX; phi1.target().order()];
    for y in (0..g2.order()).rev() {
        lift[phi2.apply(y)] = y;
    }
    let mut gens = Vec::new();
    for &x in g1.generators() {
        let y = lift[phi1.apply(x)];
        gens.push(Element::tuple(g1.element(x).clone(), g2.element(y).clone()));
    }
    for &k in phi2.kernel().generators() {
        gens.push(Element::tuple(g1.element(0).clone(), g2.element(k).clone()));
    }
    let law = Law::Product(Arc::new(ProductLaw { normal: g1.clone(), acting: g2.clone(), action: None }));
    let group = FiniteGroup::generate(law, gens, DEFAULT_CLOSURE_BOUND)?;
    debug_assert_eq!(group.order() * phi1.target().order(), g1.order() * g2.order());
    Ok(group)
}

/// The group `<t, s | t^e, s^n = t^c, s^-1 t s = t^u>` in its right regular
/// representation, with the distinguished elements `t` and `s`.
#[derive(Clone, Debug)]
pub struct Metacyclic {
    pub group: FiniteGroup,
    pub t: usize,
    pub s: usize,
    pub e: u64,
    pub n: u64,
    pub c: u64,
    pub u: u64,
}

pub fn metacyclic_group(e: u64, n: u64, c: u64, u: u64) -> Result<Metacyclic> {
    if e == 0 || n == 0 {
        return Err(GroupError::InconsistentParameters("orders must be positive".into()));
    }
    let u = u % e;
    let c = c % e;
    if gcd(u, e) != 1 && e > 1 {
        return Err(GroupError::InconsistentParameters(format!("{u} is not a unit mod {e}")));
    }
    if pow_mod(u, n, e) != 1 % e {
        return Err(GroupError::InconsistentParameters(format!("{u}^{n} is not 1 mod {e}")));
    }
    if (c as u128 * ((u + e - 1) % e) as u128) % e as u128 != 0 {
        return Err(GroupError::InconsistentParameters(format!("t^{c} is not central")));
    }
    let order = e.checked_mul(n).filter(|&o| o as usize <= DEFAULT_CLOSURE_BOUND);
    let order = order.ok_or(GroupError::BoundExceeded { bound: DEFAULT_CLOSURE_BOUND })?;
    let u_inv = inv_mod(u as i128, e).unwrap_or(0);
    let point = |i: u64, j: u64| (i + e * j) as u32;
    // (i, j)(k, l) = (i + k u^-j + c [j + l >= n], j + l mod n)
    let mul = |i: u64, j: u64, k: u64, l: u64| {
        let twist = (k as u128 * pow_mod(u_inv, j, e) as u128 % e as u128) as u64;
        let carry = if j + l >= n { c } else { 0 };
        ((i + twist + carry) % e, (j + l) % n)
    };
    let right_mult = |k: u64, l: u64| -> Element {
        let mut images = vec![0u32; order as usize];
        for i in 0..e {
            for j in 0..n {
                let (a, b) = mul(i, j, k, l);
                images[point(i, j) as usize] = point(a, b);
            }
        }
        Permutation::from_images(images).expect("regular action").into()
    };
    let t_el = right_mult(1 % e, 0);
    let s_el = right_mult(0, 1 % n);
    let group = FiniteGroup::enumerate(&[t_el.clone(), s_el.clone()])?;
    if group.order() as u64 != order {
        return Err(GroupError::InconsistentParameters(format!(
            "presentation collapses to order {} instead of {order}",
            group.order()
        )));
    }
    Ok(Metacyclic {
        t: group.require(&t_el)?,
        s: group.require(&s_el)?,
        group,
        e,
        n,
        c,
        u,
    })
}
