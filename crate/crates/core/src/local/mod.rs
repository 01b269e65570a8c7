//! Decision procedures for realizing `(G, I)` as a Galois group with inertia
//! subgroup `I` at `p`, over `Q_p` and over `Q`, in the abelian and odd-order
//! regimes, plus the tower groups used to prove the odd-order criterion.

mod abelian;
mod example62;
mod lambda;
mod odd;
mod tame;
mod verdict;

pub use abelian::{
    abelian_construction_witness, abelian_realizable, is_quotient_of_zp_units, AbelianVerdict,
    AbelianWitness,
};
pub use example62::{verify_example_6_2, Example62Report, IntermediateRank};
pub use lambda::{lambda1, lambda2, lambda_fiber, tame_quotient_group, LambdaTower};
pub use odd::{
    lift_tame_generators, p_group_structure_check, pro_odd_quotient_check, q_realizable_odd,
    qp_realizable_odd, StructureWitness,
};
pub use tame::{tame_realizable, TameWitness};
pub use verdict::{verify_verdict_json, OddVerdict, Status, WildWitness};

use thiserror::Error;

use crate::group::GroupError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    #[error("group has even order {0}")]
    EvenOrder(usize),
    #[error("inertia type does not embed in the group type")]
    NotASubgroupType,
    #[error("subgroup does not belong to the given group")]
    ForeignSubgroup,
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub type Result<T> = std::result::Result<T, LocalError>;
