//! Exact weighted-barycenter decompositions over polytope skeleta.
//!
//! Given a polytope `P`, a target point `p ∈ P`, per-point face-dimension caps
//! `k_i` and weights `λ_i`, the search either produces points `x_i` lying in
//! faces of dimension at most `k_i` with `Σ λ_i x_i = p`, or an exhaustive
//! refutation backed by one Farkas witness per face tuple. All arithmetic is
//! exact over arbitrary-precision rationals.
//!
//! Module map:
//! - [`geometry`]: points, polytopes, face lattices, products and simplices.
//! - [`lp`]: exact two-phase simplex with Farkas witnesses, barycenter systems.
//! - [`search`]: face-tuple enumeration, `decompose`, weight probes.
//! - [`instances`]: the concrete constructions around skeleton barycenters
//!   (lifting, counterexamples, weight families, coefficient bounds).
//! - [`io`]: JSON problem and report files.
//! - [`reproduce`]: the reproducibility suite behind `skelsum verify-paper`.

pub mod error;
pub mod generators;
pub mod geometry;
pub mod instances;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod reproduce;
pub mod rational;
pub mod search;

pub use error::{Error, Result};
pub use geometry::{DualFunctional, Face, Point, Polytope};
pub use lp::{LinearProgram, LpOutcome};
pub use rational::Rational;
pub use search::{
    Certificate, Decomposition, DecompositionProblem, ProbeResult, Refutation, SearchMode,
};

/// Library version string, echoed into reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
