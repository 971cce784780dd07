//! Crossed modules over finite permutation groups.
//!
//! The crate builds everything on explicitly enumerated permutation groups:
//! coset enumeration turns finite presentations into permutation groups,
//! crossed modules are checked axiom by axiom over full element lists, and
//! induced crossed modules are computed from their presentation on symbols
//! `(m, q)`.

pub mod catalog;
pub mod error;
pub mod extend;
pub mod fpres;
pub mod group;
pub mod hom;
pub mod induce;
pub mod iso;
pub mod perm;
pub mod xmod;

pub use catalog::{fingerprint, identify, Fingerprint, Identification};
pub use error::{Error, ParseError, Result};
pub use group::{enumerate, normal_closure, quotient, PermGroup, DEFAULT_ELEMENT_CAP};
pub use hom::GroupHom;
pub use iso::{automorphism_group, is_isomorphic, AutomorphismGroup, DEFAULT_AUT_CAP};
pub use perm::Perm;
pub use fpres::{FpGroup, Word};
pub use xmod::{make_standard, ActionMap, CrossedModule, StandardData, StandardKind, VerificationReport};
pub use induce::{induce, induced_presentation, universal_check, InduceConfig, Induced, InducedReport, Mode};
pub use extend::{solve_relator_extension, verify_factor_system, ExtensionDatum, FactorSystem};
