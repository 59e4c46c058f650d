//! Invariant (Haar) measures on finite hypergroups.
//!
//! A finite hypergroup is a point set `0..n` with an identity, an involution
//! and structure constants `c[s][t][u]` describing the probability measure
//! `ε_s ∗ ε_t`. This crate provides the convolution algebra of measures and
//! functions over such tables, axiom validation, a constructive route to the
//! left-invariant measure through bump-function approximants, independent
//! oracles for that measure, and a small text format.
//!
//! ```
//! use hyperhaar::{compare_methods, haar_measure, ApproximantConfig, FamilySpec, Method};
//!
//! # fn main() -> hyperhaar::Result<()> {
//! let h = "cosine-grid:5".parse::<FamilySpec>()?.build()?;
//! assert!(h.validate().passed());
//! let cfg = ApproximantConfig::standard(&h)?;
//! let (chi, _trace) = haar_measure(&h, Method::Net, &cfg)?;
//! assert!((chi.weight(0) - 1.0 / 8.0).abs() < 1e-12);
//! assert!(compare_methods(&h, &cfg, 1e-10)?.agree);
//! # Ok(())
//! # }
//! ```

pub mod error;
pub mod family;
pub mod format;
pub mod haar;
pub mod hypergroup;
pub mod lemmas;
pub mod measure;
pub mod methods;
pub mod oracles;
pub mod validate;

pub use error::{Error, Result};
pub use family::{FamilySpec, GroupTable};
pub use haar::{
    approximant, bounds_certificate, canonical_chain, haar_net, main_identity_gap,
    normalized_approximant, sandwich_ratio, symmetrize, ApproximantConfig, BoundsCertificate,
    ConvergenceTrace, ShrinkingChain, TraceStep,
};
pub use hypergroup::FiniteHypergroup;
pub use measure::{pair, Measure, PointFunction, PointSet};
pub use methods::{compare_methods, haar_measure, Comparison, Method};
pub use oracles::{invariance_residual, jewett_haar, solve_invariance};
pub use validate::{Axiom, Status, ValidationReport};
