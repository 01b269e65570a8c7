//! Elliptic curves over `Q`: invariants, reduction data, surjectivity of the
//! mod-`p` representation, canonical lifts and the curve constructions.

mod classpoly;
mod construct;
mod curve;
mod fixtures;
mod lift;
mod surjectivity;

pub use classpoly::{hilbert_class_polynomial, poly_mod, reduced_forms};
pub use construct::{construct_ordinary, construct_supersingular, CertificateKind, CurveCertificate};
pub use curve::{
    parse_rational, rational_from_factors, rational_string, residue_of_rational, CurveInvariants,
    EllipticCurve, ReductionData, ReductionType,
};
pub use fixtures::{fixture, fixture_labels};
pub use lift::{canonical_lift_j, gross_diagonalizable, inertia_image_weight2, CanonicalLiftResult};
pub use surjectivity::{
    in_zywina_exceptions, sampling_surjectivity, surjectivity, zywina_exceptions, zywina_surjectivity,
    EliminationWitness, SurjectivityMethod, SurjectivityStatus, SurjectivityVerdict,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EllipticError {
    #[error("singular curve: discriminant is zero")]
    SingularCurve,
    #[error("prime {0} is not supported")]
    UnsupportedPrime(u64),
    #[error("prime {0} exceeds the point-counting cap")]
    PrimeTooLarge(u64),
    #[error("bad reduction at {0}")]
    BadReduction(u64),
    #[error("denominator not invertible modulo {0}")]
    NonInvertibleDenominator(u64),
    #[error("invalid discriminant {0}")]
    InvalidDiscriminant(i64),
    #[error("class polynomial of discriminant {0} did not round unambiguously")]
    PrecisionFailure(i64),
    #[error("j mod {p} is a multiple root of the class polynomial of discriminant {discriminant}")]
    MultipleRoot { p: u64, discriminant: i64 },
    #[error("reduction at {0} is not ordinary")]
    NotOrdinary(u64),
    #[error("j mod {0} is not a root of any candidate class polynomial")]
    NoClassPolynomialRoot(u64),
    #[error("surjectivity at {0} could not be certified")]
    InconclusiveSurjectivity(u64),
    #[error("construction requires p > 13, got {0}")]
    PrimeTooSmall(u64),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("54 j B is not a unit modulo {0}")]
    UnluckyUnit(u64),
    #[error("certificate check failed: {0}")]
    CertificateFailed(String),
}

pub type Result<T> = std::result::Result<T, EllipticError>;
