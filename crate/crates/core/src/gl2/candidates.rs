use serde::{Deserialize, Serialize};

use super::{Gl2Context, Gl2Error, Result};
use crate::arith::{divisors, gcd};
use crate::group::{Gl2Matrix, Subgroup};

/// A subgroup of `GL2(F_p)` that can be the inertia group at `p`, up to conjugacy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum InertiaCandidate {
    /// `<diag(alpha^(a+b), alpha^a)>`
    #[serde(rename = "split")]
    SplitTame { a: u64, b: u64 },
    /// `<g^index>` for the fixed generator `g` of the nonsplit Cartan
    #[serde(rename = "nonsplit")]
    NonsplitTame { index: u64 },
    /// `<diag(alpha^(a+b), alpha^a), (1 1; 0 1)>`
    #[serde(rename = "wild")]
    Wild { a: u64, b: u64 },
}

impl InertiaCandidate {
    pub fn validate(&self, ctx: &Gl2Context) -> Result<()> {
        let p = ctx.p();
        match *self {
            InertiaCandidate::SplitTame { .. } => Ok(()),
            InertiaCandidate::NonsplitTame { index } if (1..p * p).contains(&index) => Ok(()),
            InertiaCandidate::NonsplitTame { index } => {
                Err(Gl2Error::InvalidParameters(format!("nonsplit index {index} outside 1..{}", p * p - 1)))
            }
            InertiaCandidate::Wild { b, .. } if (1..p).contains(&b) => Ok(()),
            InertiaCandidate::Wild { b, .. } => {
                Err(Gl2Error::InvalidParameters(format!("wild exponent b = {b} outside 1..{}", p - 1)))
            }
        }
    }

    fn diagonal(ctx: &Gl2Context, a: u64, b: u64) -> Gl2Matrix {
        ctx.diag(ctx.alpha_pow((a + b) as i64), ctx.alpha_pow(a as i64))
    }

    /// The parametrized generators.
    pub fn generators(&self, ctx: &Gl2Context) -> Result<Vec<Gl2Matrix>> {
        self.validate(ctx)?;
        Ok(match *self {
            InertiaCandidate::SplitTame { a, b } => vec![Self::diagonal(ctx, a, b)],
            InertiaCandidate::NonsplitTame { index } => vec![matrix_pow(&ctx.nonsplit_generator(), index)],
            InertiaCandidate::Wild { a, b } => vec![Self::diagonal(ctx, a, b), ctx.unipotent()],
        })
    }

    pub fn subgroup(&self, ctx: &Gl2Context) -> Result<Subgroup> {
        Ok(ctx.subgroup_of(&self.generators(ctx)?))
    }

    pub fn is_wild(&self) -> bool {
        matches!(self, InertiaCandidate::Wild { .. })
    }
}

fn matrix_pow(m: &Gl2Matrix, mut k: u64) -> Gl2Matrix {
    let mut acc = Gl2Matrix::identity(m.modulus());
    let mut base = *m;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.mul(&base);
        }
        base = base.mul(&base);
        k >>= 1;
    }
    acc
}

fn cached(ctx: &Gl2Context) -> &[(InertiaCandidate, Subgroup)] {
    ctx.0.candidates.get_or_init(|| enumerate(ctx))
}

fn enumerate(ctx: &Gl2Context) -> Vec<(InertiaCandidate, Subgroup)> {
    let p = ctx.p();
    let g = ctx.group();
    let w = ctx.index(&ctx.matrix([0, 1, 1, 0]).expect("invertible"));
    let mut out: Vec<(InertiaCandidate, Subgroup)> = Vec::new();

    // diagonal subgroups are conjugate in GL2 iff they agree up to swapping the eigenvalues
    let mut split: Vec<Subgroup> = Vec::new();
    for a in 0..p - 1 {
        for b in 1..p {
            let c = InertiaCandidate::SplitTame { a, b };
            let s = c.subgroup(ctx).expect("valid parameters");
            if split.iter().any(|t| *t == s || *t == s.conjugate(w)) {
                continue;
            }
            split.push(s.clone());
            out.push((c, s));
        }
    }

    // indices divisible by p + 1 give scalar subgroups, already listed as split
    for index in divisors(p * p - 1) {
        if index % (p + 1) != 0 {
            let c = InertiaCandidate::NonsplitTame { index };
            out.push((c, c.subgroup(ctx).expect("valid parameters")));
        }
    }

    // wild subgroups normalize <(1 1; 0 1)>, so any conjugator lies in the Borel
    let borel = ctx.borel();
    let mut wild: Vec<Subgroup> = Vec::new();
    for a in 0..p - 1 {
        for b in 1..p {
            let c = InertiaCandidate::Wild { a, b };
            let s = c.subgroup(ctx).expect("valid parameters");
            let seen = wild.iter().any(|t| {
                t.order() == s.order()
                    && borel.members().iter().any(|&x| s.generators().iter().all(|&y| t.contains(g.conj(y, x))))
            });
            if !seen {
                wild.push(s.clone());
                out.push((c, s));
            }
        }
    }
    out
}

/// All inertia candidates up to conjugacy, split tame first, then nonsplit
/// tame, then wild, each in increasing parameter order.
pub fn inertia_candidates(ctx: &Gl2Context) -> Vec<InertiaCandidate> {
    cached(ctx).iter().map(|(c, _)| *c).collect()
}

/// The listed candidate conjugate to `s`.
pub fn classify_candidate(ctx: &Gl2Context, s: &Subgroup) -> Result<InertiaCandidate> {
    if !s.parent().same(ctx.group()) {
        return Err(Gl2Error::Group(crate::group::GroupError::NotInGroup));
    }
    let g = ctx.group();
    cached(ctx)
        .iter()
        .filter(|(_, t)| t.order() == s.order())
        .find(|(_, t)| g.conjugating_element(t, s).is_some())
        .map(|(c, _)| *c)
        .ok_or(Gl2Error::NotACandidate)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reduction {
    Ordinary,
    Supersingular,
}

/// An eigenform of weight `weight` whose representation, twisted by the
/// `twist`-th power of the cyclotomic character, has image `GL2(F_p)` and the
/// given behaviour at `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularRequirement {
    pub weight: u64,
    pub twist: u64,
    pub reduction: Reduction,
    /// restriction to inertia diagonal; only set for ordinary forms
    pub diagonal: Option<bool>,
    /// listed representative the requirement was computed from
    pub candidate: InertiaCandidate,
    pub note: Option<String>,
}

const SCALAR_NOTE: &str = "scalar inertia: b = p - 1 stands in for b = 0, outside the stated range 1 <= b <= p - 1";

/// Weight, twist and reduction type of an eigenform realizing `c`.
///
/// Parameters are first replaced by the listed representative of the
/// conjugacy class, so aliases of one subgroup give one answer. Nonsplit
/// indices divisible by `p + 1` give central subgroups and are answered as split.
pub fn candidate_requirement(ctx: &Gl2Context, c: InertiaCandidate) -> Result<ModularRequirement> {
    let p = ctx.p();
    let canon = classify_candidate(ctx, &c.subgroup(ctx)?)?;
    let req = |weight: u64, twist: u64, reduction, diagonal| ModularRequirement {
        weight,
        twist,
        reduction,
        diagonal,
        candidate: canon,
        note: None,
    };
    Ok(match canon {
        InertiaCandidate::SplitTame { a, b } => {
            let mut r = req(b + 1, a, Reduction::Ordinary, Some(true));
            if b == p - 1 {
                r.note = Some(SCALAR_NOTE.into());
            }
            r
        }
        InertiaCandidate::Wild { a, b } => req(b + 1, a, Reduction::Ordinary, Some(false)),
        InertiaCandidate::NonsplitTame { index } => {
            let a = (index - 1) / (p + 1);
            let b = index - a * (p + 1);
            debug_assert!((1..=p).contains(&b));
            req(b + 1, a, Reduction::Supersingular, None)
        }
    })
}

/// Checks that `diag(alpha^(a+b), alpha^a)` and `beta^a (1 1; 0 1)`, with
/// `beta = alpha^((p-1)/gcd(b, p-1))`, generate the wild candidate `(a, b)`.
pub fn wrcase_group_identity_check(ctx: &Gl2Context, a: u64, b: u64) -> Result<bool> {
    let p = ctx.p();
    let c = InertiaCandidate::Wild { a, b };
    let target = c.subgroup(ctx)?;
    let beta = ctx.alpha_pow(((p - 1) / gcd(b, p - 1)) as i64);
    let beta_a = crate::arith::pow_mod(beta, a, p);
    let h = ctx.diag(ctx.alpha_pow((a + b) as i64), ctx.alpha_pow(a as i64));
    let g = ctx.diag(beta_a, beta_a).mul(&ctx.unipotent());
    Ok(ctx.subgroup_of(&[h, g]) == target)
}
