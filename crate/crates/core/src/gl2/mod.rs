//! `GL2(F_p)`: Cartan and Borel subgroups, inertia candidates up to conjugacy,
//! and the weight/twist data an eigenform must have to realize each candidate.

mod candidates;

pub use candidates::{
    candidate_requirement, classify_candidate, inertia_candidates, wrcase_group_identity_check,
    InertiaCandidate, ModularRequirement, Reduction,
};

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::arith::{is_prime, pow_mod, primitive_root, smallest_nonresidue};
use crate::group::{Element, FiniteGroup, Gl2Matrix, GroupError, Subgroup};

/// Largest prime for which the full group is enumerated.
pub const MAX_ENUMERATED_PRIME: u64 = 13;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gl2Error {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("p = {0} exceeds the enumeration cap {MAX_ENUMERATED_PRIME}")]
    PrimeTooLarge(u64),
    #[error("subgroup is not an inertia candidate")]
    NotACandidate,
    #[error("invalid candidate parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub type Result<T> = std::result::Result<T, Gl2Error>;

struct Inner {
    p: u64,
    alpha: u64,
    delta: u64,
    group: OnceLock<FiniteGroup>,
    candidates: OnceLock<Vec<(InertiaCandidate, Subgroup)>>,
}

/// Fixed data for `GL2(F_p)`: `alpha` is the smallest primitive root and
/// `delta` the smallest quadratic non-residue.
#[derive(Clone)]
pub struct Gl2Context(Arc<Inner>);

impl std::fmt::Debug for Gl2Context {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Gl2Context(p = {}, alpha = {}, delta = {})", self.p(), self.alpha(), self.delta())
    }
}

impl Gl2Context {
    pub fn new(p: u64) -> Result<Gl2Context> {
        if p < 3 || !is_prime(p) {
            return Err(Gl2Error::InvalidPrime(p));
        }
        if p > MAX_ENUMERATED_PRIME {
            return Err(Gl2Error::PrimeTooLarge(p));
        }
        let alpha = primitive_root(p);
        let delta = smallest_nonresidue(p);
        Ok(Gl2Context(Arc::new(Inner {
            p,
            alpha,
            delta,
            group: OnceLock::new(),
            candidates: OnceLock::new(),
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn alpha(&self) -> u64 {
        self.0.alpha
    }

    pub fn delta(&self) -> u64 {
        self.0.delta
    }

    /// `alpha^k` for any integer `k`.
    pub fn alpha_pow(&self, k: i64) -> u64 {
        pow_mod(self.alpha(), k.rem_euclid(self.p() as i64 - 1) as u64, self.p())
    }

    pub fn matrix(&self, entries: [i64; 4]) -> Option<Gl2Matrix> {
        Gl2Matrix::new(self.p() as u32, entries)
    }

    pub fn diag(&self, x: u64, y: u64) -> Gl2Matrix {
        Gl2Matrix::diag(self.p() as u32, x, y).expect("nonzero diagonal")
    }

    /// `(1 1; 0 1)`.
    pub fn unipotent(&self) -> Gl2Matrix {
        self.matrix([1, 1, 0, 1]).expect("invertible")
    }

    /// Index of a matrix in the enumerated group.
    pub fn index(&self, m: &Gl2Matrix) -> usize {
        self.group().index_of(&Element::Matrix(*m)).expect("matrix over F_p")
    }

    /// The full group, generated by `diag(alpha, 1)` and `(-1 1; -1 0)`.
    pub fn group(&self) -> &FiniteGroup {
        self.0.group.get_or_init(|| {
            let gens: Vec<Element> = vec![
                self.diag(self.alpha(), 1).into(),
                self.matrix([-1, 1, -1, 0]).expect("invertible").into(),
            ];
            let g = FiniteGroup::enumerate(&gens).expect("GL2 enumeration within bound");
            let p = self.p() as usize;
            assert_eq!(g.order(), (p * p - 1) * (p * p - p), "generators must give all of GL2");
            g
        })
    }

    pub fn subgroup_of(&self, gens: &[Gl2Matrix]) -> Subgroup {
        let idx: Vec<usize> = gens.iter().map(|m| self.index(m)).collect();
        self.group().subgroup(&idx)
    }

    /// Diagonal matrices.
    pub fn split_cartan(&self) -> Subgroup {
        self.subgroup_of(&[self.diag(self.alpha(), 1), self.diag(1, self.alpha())])
    }

    /// A generator of `{(x y; delta y x)}`: the first such matrix, in
    /// lexicographic `(x, y)` order, of order `p^2 - 1`.
    pub fn nonsplit_generator(&self) -> Gl2Matrix {
        let p = self.p() as i64;
        let d = self.delta() as i64;
        for x in 0..p {
            for y in 1..p {
                let m = self.matrix([x, y, d * y, x]).expect("norm form is anisotropic");
                if self.group().element_order(self.index(&m)) as i64 == p * p - 1 {
                    return m;
                }
            }
        }
        unreachable!("F_(p^2)^x is cyclic")
    }

    pub fn nonsplit_cartan(&self) -> Subgroup {
        self.subgroup_of(&[self.nonsplit_generator()])
    }

    pub fn cartan_subgroups(&self) -> (Subgroup, Subgroup) {
        (self.split_cartan(), self.nonsplit_cartan())
    }

    /// Upper-triangular matrices.
    pub fn borel(&self) -> Subgroup {
        self.subgroup_of(&[self.diag(self.alpha(), 1), self.diag(1, self.alpha()), self.unipotent()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_constants() {
        let c = Gl2Context::new(5).unwrap();
        assert_eq!((c.alpha(), c.delta()), (2, 2));
        let c = Gl2Context::new(7).unwrap();
        assert_eq!((c.alpha(), c.delta()), (3, 3));
        assert_eq!(Gl2Context::new(15).unwrap_err(), Gl2Error::InvalidPrime(15));
        assert_eq!(Gl2Context::new(2).unwrap_err(), Gl2Error::InvalidPrime(2));
        assert_eq!(Gl2Context::new(17).unwrap_err(), Gl2Error::PrimeTooLarge(17));
    }

    #[test]
    fn group_orders() {
        assert_eq!(Gl2Context::new(3).unwrap().group().order(), 48);
        assert_eq!(Gl2Context::new(5).unwrap().group().order(), 480);
    }

    #[test]
    fn cartans_and_borel() {
        let c = Gl2Context::new(5).unwrap();
        let (split, nonsplit) = c.cartan_subgroups();
        assert_eq!(split.order(), 16);
        assert_eq!(nonsplit.order(), 24);
        assert!(nonsplit.as_group().is_abelian());
        assert_eq!(c.borel().order(), 80);
        // every member of the nonsplit Cartan has the shape (x y; delta y x)
        for &k in nonsplit.members() {
            let [a, b, cc, d] = c.group().element(k).as_matrix().unwrap().entries();
            assert_eq!(a, d);
            assert_eq!(cc as u64, c.delta() * b as u64 % 5);
        }
        assert_eq!(Gl2Context::new(3).unwrap().nonsplit_cartan().order(), 8);
    }
}
