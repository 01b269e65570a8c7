use super::Result;
use crate::arith::pow_mod;
use crate::group::{
    fiber_product, metacyclic_group, wreath_product_regular, FiniteGroup, GroupError, Homomorphism,
    Metacyclic, Subgroup,
};

fn check_tame_data(e: u64, f: u64, r: u64, p: u64) -> Result<()> {
    if e == 0 || f == 0 {
        return Err(GroupError::InconsistentParameters("e and f must be positive".into()).into());
    }
    if pow_mod(p, f, e) != 1 % e {
        return Err(GroupError::InconsistentParameters(format!("{p}^{f} is not 1 mod {e}")).into());
    }
    if (r as u128 * (p - 1) as u128) % e as u128 != 0 {
        return Err(GroupError::InconsistentParameters(format!("{r}*({p}-1) is not 0 mod {e}")).into());
    }
    Ok(())
}

/// `H = <tau, sigma | tau^e, sigma^f = tau^r, sigma^-1 tau sigma = tau^p>`.
pub fn tame_quotient_group(e: u64, f: u64, r: u64, p: u64) -> Result<Metacyclic> {
    check_tame_data(e, f, r, p)?;
    Ok(metacyclic_group(e, f, r, p)?)
}

/// `<t, s | t^e, s^(fp) = t^(rp), s^-1 t s = t^p>`, of order `e f p`.
pub fn lambda1(e: u64, f: u64, r: u64, p: u64) -> Result<Metacyclic> {
    check_tame_data(e, f, r, p)?;
    Ok(metacyclic_group(e, f * p, r * p, p)?)
}

/// `C_p wr H`.
pub fn lambda2(h: &FiniteGroup, p: u64) -> Result<FiniteGroup> {
    Ok(wreath_product_regular(p, h)?)
}

/// The tower `Lambda = Lambda_1 x_H Lambda_2` with its inertia subgroup.
#[derive(Clone, Debug)]
pub struct LambdaTower {
    pub h: Metacyclic,
    pub lambda1: Metacyclic,
    pub lambda2: FiniteGroup,
    /// `t -> tau`, `s -> sigma`
    pub phi1: Homomorphism,
    /// projection of the wreath product onto `H`
    pub phi2: Homomorphism,
    pub lambda: FiniteGroup,
    /// pairs whose first coordinate lies in `<t>`
    pub inertia: Subgroup,
}

impl LambdaTower {
    /// Coordinates of an element of the fiber product.
    pub fn project(&self, x: usize) -> (usize, usize) {
        self.lambda.split(x).expect("fiber product element")
    }

    /// `<t>` inside the first factor.
    pub fn t_subgroup(&self) -> Subgroup {
        self.lambda1.group.subgroup(&[self.lambda1.t])
    }

    /// Preimage of `<tau>` in the wreath product.
    pub fn tau_preimage(&self) -> Subgroup {
        self.phi2.preimage(&self.h.group.subgroup(&[self.h.t]))
    }

    /// Images of the inertia subgroup under the two coordinate projections.
    pub fn inertia_projections(&self) -> (Subgroup, Subgroup) {
        let (a, b): (Vec<usize>, Vec<usize>) = self.inertia.members().iter().map(|&x| self.project(x)).unzip();
        (
            self.lambda1.group.subgroup_from_members(&dedup(a)),
            self.lambda2.subgroup_from_members(&dedup(b)),
        )
    }
}

fn dedup(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

pub fn lambda_fiber(e: u64, f: u64, r: u64, p: u64) -> Result<LambdaTower> {
    let h = tame_quotient_group(e, f, r, p)?;
    let l1 = lambda1(e, f, r, p)?;
    let l2 = lambda2(&h.group, p)?;
    let images: Vec<usize> = l1
        .group
        .generators()
        .iter()
        .map(|&g| if g == l1.t { h.t } else { h.s })
        .collect();
    let phi1 = Homomorphism::from_generator_images(&l1.group, &h.group, &images)?;
    let images: Vec<usize> = l2
        .generators()
        .iter()
        .map(|&g| l2.split(g).expect("wreath product element").1)
        .collect();
    let phi2 = Homomorphism::from_generator_images(&l2, &h.group, &images)?;
    let lambda = fiber_product(&phi1, &phi2)?;
    let t_sub = l1.group.subgroup(&[l1.t]);
    let members: Vec<usize> = (0..lambda.order())
        .filter(|&x| t_sub.contains(lambda.split(x).expect("fiber product element").0))
        .collect();
    let inertia = lambda.subgroup_from_members(&members);
    Ok(LambdaTower { h, lambda1: l1, lambda2: l2, phi1, phi2, lambda, inertia })
}
