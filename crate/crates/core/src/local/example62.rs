use serde::Serialize;

use super::{LocalError, Result};
use crate::group::{abelian_group, cyclic_group, semidirect_product, CommutatorConvention, FiniteGroup, Homomorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntermediateRank {
    pub order: usize,
    pub rank: usize,
}

/// Outcome of the checks on `G = C_2^4 x| C_8` with inertia `I = C_2^4`,
/// where `h` fixes `a1` and sends `a2 -> a3 -> a4 -> a2 a3 a4`.
#[derive(Clone, Debug, Serialize)]
pub struct Example62Report {
    pub group_order: usize,
    /// whether `x^2 y^4 (y, z)` maps to 1, per commutator convention
    pub relator_trivial: Vec<(CommutatorConvention, bool)>,
    pub images_generate: bool,
    pub inertia_order: usize,
    pub quotient_order: usize,
    pub quotient_cyclic: bool,
    /// subgroups containing `I`, by increasing order
    pub intermediate: Vec<IntermediateRank>,
    pub only_whole_rank_at_most_3: bool,
}

/// The group with its distinguished elements `a1..a4` and `h`.
fn build() -> Result<(FiniteGroup, [usize; 4], usize)> {
    let n = abelian_group(&[2, 2, 2, 2])?;
    let a: Vec<usize> = n.generators().to_vec();
    let h = cyclic_group(8);
    let omega = Homomorphism::from_generator_images(&n, &n, &[a[0], a[2], a[3], n.mul(n.mul(a[1], a[2]), a[3])])?;
    let g = semidirect_product(&n, &h, &[omega])?;
    let lift = |x: usize| g.join(x, 0).expect("normal factor embeds");
    let gen_h = g.join(0, h.generators()[0]).expect("acting factor embeds");
    let a = [lift(a[0]), lift(a[1]), lift(a[2]), lift(a[3])];
    Ok((g, a, gen_h))
}

pub fn verify_example_6_2() -> Result<Example62Report> {
    let fail = |m: &str| LocalError::CheckFailed(m.to_string());
    let (g, a, h) = build()?;
    let x = g.mul(a[1], g.pow(h, -2));
    let y = h;
    let z = g.mul(g.mul(a[0], a[1]), a[2]);

    let head = g.mul(g.pow(x, 2), g.pow(y, 4));
    let relator_trivial: Vec<(CommutatorConvention, bool)> = CommutatorConvention::ALL
        .iter()
        .map(|&c| (c, g.mul(head, c.apply(&g, y, z)) == 0))
        .collect();
    if !relator_trivial.iter().any(|&(_, ok)| ok) {
        return Err(fail("relator x^2 y^4 (y,z) does not map to 1"));
    }
    let images_generate = g.subgroup(&[x, y, z]).is_whole();
    if !images_generate {
        return Err(fail("images of x, y, z do not generate G"));
    }

    let inertia = g.subgroup(&a);
    let closure = g.normal_closure(&[g.mul(x, g.pow(y, 2)), z]);
    if closure != inertia {
        return Err(fail("normal closure of x y^2 and z is not I"));
    }
    let quotient_order = inertia.index();
    let quotient_cyclic = (0..g.order()).any(|s| {
        let mut gens = a.to_vec();
        gens.push(s);
        g.subgroup(&gens).is_whole() && g.element_order(s) * inertia.order() >= g.order()
    });
    if quotient_order != 8 || !quotient_cyclic {
        return Err(fail("G/I is not cyclic of order 8"));
    }

    let mut intermediate = Vec::new();
    for d in g.intermediate_subgroups(&inertia, usize::MAX)? {
        let rank = d.as_group().generator_rank(2)?;
        intermediate.push(IntermediateRank { order: d.order(), rank });
    }
    intermediate.sort_by_key(|r| r.order);
    if intermediate.len() != 4 {
        return Err(fail("expected four subgroups containing I"));
    }
    let only_whole_rank_at_most_3 = intermediate.iter().all(|r| (r.rank <= 3) == (r.order == g.order()));
    if !only_whole_rank_at_most_3 {
        return Err(fail("G is not the only subgroup containing I of rank at most 3"));
    }
    Ok(Example62Report {
        group_order: g.order(),
        relator_trivial,
        images_generate,
        inertia_order: inertia.order(),
        quotient_order,
        quotient_cyclic,
        intermediate,
        only_whole_rank_at_most_3,
    })
}
