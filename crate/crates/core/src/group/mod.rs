//! Exact finite groups given by concrete generators.
//!
//! Elements are stored explicitly and addressed by their index in the group's
//! element table; index 0 is always the identity.

mod abelian;
mod construct;
pub mod element;
mod finite;
mod hom;
pub mod spec;
mod subgroup;

pub use abelian::AbelianType;
pub use construct::{
    abelian_group, cyclic_group, direct_product, fiber_product, metacyclic_group,
    semidirect_product, wreath_product_regular, Metacyclic,
};
pub use element::{Element, ElementKind, Gl2Matrix, Permutation};
pub use finite::{FiniteGroup, DEFAULT_CLOSURE_BOUND};
pub use hom::{quotient_group, Homomorphism};
pub use subgroup::{CommutatorConvention, Subgroup, DEFAULT_INDEX_BOUND};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("closure exceeded the bound of {bound} elements")]
    BoundExceeded { bound: usize },
    #[error("generators mix element kinds or dimensions")]
    KindMismatch,
    #[error("element is not in the group")]
    NotInGroup,
    #[error("group of order {order} is not a {p}-group")]
    NotAPGroup { order: usize, p: u64 },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("action does not extend to a homomorphism into the automorphism group")]
    NotAnAction,
    #[error("generator assignment does not extend to a homomorphism")]
    NotAHomomorphism,
    #[error("maps do not share a common surjective target")]
    TargetMismatch,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("inconsistent parameters: {0}")]
    InconsistentParameters(String),
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;
