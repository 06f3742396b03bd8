//! Exact linear programming and the barycenter systems built on it.

mod barycenter;
mod simplex;

pub use barycenter::{assemble_fixed, assemble_probe, check_certificate, BarycenterSystem, WeightMode};
pub use simplex::{lp_solve, LinearProgram, LpOutcome};

use num_traits::One;

use crate::error::{ensure_dim, Error, Result};
use crate::geometry::Point;
use crate::rational::Rational;

/// Convex coefficients expressing `target` over `points`, if any exist.
pub fn convex_combination(points: &[Point], target: &Point) -> Result<Option<Vec<Rational>>> {
    let dim = target.dim();
    for p in points {
        ensure_dim(dim, p.dim())?;
    }
    let mut lp = LinearProgram::new(points.len());
    lp.add_row(vec![Rational::one(); points.len()], Rational::one())?;
    for c in 0..dim {
        lp.add_row(points.iter().map(|p| p.coords()[c].clone()).collect(), target.coords()[c].clone())?;
    }
    match lp_solve(&lp)? {
        LpOutcome::Optimal { values, .. } => Ok(Some(values)),
        LpOutcome::Infeasible { .. } => Ok(None),
        LpOutcome::Unbounded { .. } => Err(Error::Internal("feasibility program reported unbounded".into())),
    }
}
