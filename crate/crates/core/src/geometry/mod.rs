//! Exact polytope geometry: points, V-polytopes with facet incidences, face
//! lattices, products and simplices.

mod functional;
pub mod hull;
mod point;
mod polytope;

pub use functional::DualFunctional;
pub use point::Point;
pub use polytope::{Face, Polytope};
