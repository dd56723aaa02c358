//! Exact-rational polyhedral geometry for the numerical invariants of
//! Manin's conjecture.
//!
//! The crate mechanizes, over exact rational arithmetic only:
//!
//! - pointed rational polyhedral cones with synchronized V/H representations
//!   and exact duality ([`cone`]);
//! - the Fujita invariant `a(X, L)`, the adjoint class `a·L + K`, the
//!   geometric and Galois-equivariant `b`-invariants, and lexicographic
//!   balanced-property comparisons ([`invariants`]);
//! - explicit Fujita-type bigness certificates, rigid volume bounds, del
//!   Pezzo cover-degree inequalities and Riemann–Roch style polynomial
//!   checks ([`fujita`]);
//! - the `Z^{1,n}` del Pezzo lattice with its `(-1)`-class and root
//!   enumerations, blow-downs and crepant rank drops ([`delpezzo`]);
//! - bundled case-study datasets with a verifier that recomputes every
//!   expected quantity ([`casestudy`]).
//!
//! There is no floating point anywhere: boundary membership is exact by
//! construction, and all cone representations are canonical (primitive
//! integer rays, lexicographically sorted), so reruns are bit-identical.
//!
//! ```
//! use manin_core::cone::{PairingForm, PolyCone};
//! use manin_core::{invariants, rat, PolarizedSpace, RatVec};
//!
//! // a rank-2 model: Λ_eff the octant, K = (-1, -2), L = (1, 1)
//! let pseff = PolyCone::from_generators(
//!     &[RatVec::from_ints(&[1, 0]), RatVec::from_ints(&[0, 1])],
//!     PairingForm::identity(2),
//! )?;
//! let space = PolarizedSpace::new(
//!     "toy",
//!     vec![],
//!     pseff,
//!     RatVec::from_ints(&[-1, -2]),
//!     RatVec::from_ints(&[1, 1]),
//!     None,
//!     Some(true),
//! )?;
//! assert_eq!(invariants::a_invariant(&space)?, rat(2));
//! assert_eq!(invariants::adjoint_class(&space)?, RatVec::from_ints(&[1, 0]));
//! assert_eq!(invariants::b_invariant(&space)?, 1);
//! # Ok::<(), manin_core::Error>(())
//! ```

pub mod casestudy;
pub mod cone;
pub mod delpezzo;
pub mod fujita;
pub mod invariants;
pub mod matrix;
pub mod rat;

pub use cone::{PairingForm, PolyCone};
pub use invariants::{
    a_invariant, adjoint_class, b_equivariant, b_invariant, balanced_verdict, compare_lex,
    ABResult, AbPair, BalancedVerdict, GroupAction, PolarizedSpace,
};
pub use rat::{parse_rat, rat, ratio, Rat, RatVec};

use thiserror::Error as ThisError;

/// Crate-wide error type.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cone has lineality: {0}")]
    Lineality(String),
    #[error("pairing not usable for duality: {0}")]
    Pairing(String),
    #[error("vector is not contained in the cone")]
    NotInCone,
    #[error("polarization not big")]
    PolarizationNotBig,
    #[error("equivariant formula requires the adjoint-rigid flag")]
    AdjointNotRigid,
    #[error("group closure exceeded bound {bound}")]
    ClosureExceeded { bound: usize },
    #[error("invalid group action: {0}")]
    Action(String),
    #[error("dataset schema: {0}")]
    Schema(String),
    #[error("unknown case study {0:?}")]
    UnknownCaseStudy(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Names of the public operations, used by the CLI coverage check.
pub const OPERATIONS: &[&str] = &[
    // cone
    "cone_from_generators",
    "dual_cone",
    "contains",
    "minimal_supported_face",
    // invariants
    "a_invariant",
    "adjoint_class",
    "b_invariant",
    "b_equivariant",
    "compare_lex",
    "balanced_verdict",
    // fujita criteria
    "bigness_criterion",
    "bigness_dim3_improved",
    "surface_rational_curve_criterion",
    "rigid_surface_volume_check",
    "surface_cover_a_bound",
    "weak_dp_cover_b_bound",
    "adjoint_hilbert_check",
    // del Pezzo lattice
    "enumerate_minus_one",
    "enumerate_minus_two",
    "blow_down",
    "crepant_rank_drop",
    // case studies
    "load_case_study",
    "verify_case_study",
    "check_table_consistency",
];
