//! Complete search over face tuples.
//!
//! A problem fixes a polytope, a target, per-point face-dimension caps and
//! weights. [`decompose`] scans face tuples in lexicographic order and solves
//! one exact LP per tuple; [`max_weight_probe`] maximizes one weight over all
//! tuples instead.

mod decompose;
mod probe;
mod problem;
mod tuples;
mod verify;

pub use decompose::{decompose, decompose_with, Certificate, Decomposition, Refutation, SearchMode, TupleWitness};
pub use probe::{max_weight_probe, max_weight_probe_with, ProbeResult};
pub use problem::{equal_weights, DecompositionProblem};
pub use tuples::{enumerate_face_tuples, symmetric_tuple_count, IndexTuples};
pub use verify::verify_external;
