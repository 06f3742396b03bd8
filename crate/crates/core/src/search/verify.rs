use num_traits::Zero;

use super::problem::DecompositionProblem;
use crate::error::{ensure_dim, Result};
use crate::geometry::Point;
use crate::lp::convex_combination;

/// Checks an externally supplied solution: each point lies in some face of
/// dimension at most its cap, and the weighted combination is the target.
pub fn verify_external(problem: &DecompositionProblem, points: &[Point]) -> Result<bool> {
    ensure_dim(problem.num_points(), points.len())?;
    let polytope = problem.polytope();
    for p in points {
        ensure_dim(polytope.ambient_dim(), p.dim())?;
    }
    let dim = polytope.ambient_dim();
    let mut acc = Point::origin(dim);
    for (p, w) in points.iter().zip(problem.weights()) {
        if !w.is_zero() {
            acc = acc.checked_add(&p.scale(w))?;
        }
    }
    if &acc != problem.target() {
        return Ok(false);
    }
    // Faces of lower dimension nest inside faces of exactly the cap.
    for (p, &k) in points.iter().zip(problem.dims()) {
        let mut found = false;
        for face in polytope.faces_of_dim(k)? {
            if convex_combination(&polytope.face_points(face), p)?.is_some() {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Polytope;
    use crate::rational::{int, rat};

    fn square_problem() -> DecompositionProblem {
        let pts: Vec<Point> = [[0, 0], [1, 0], [0, 1], [1, 1]].iter().map(|c| Point::from_ints(c)).collect();
        let sq = Polytope::canonicalize(&pts).unwrap();
        DecompositionProblem::with_equal_weights(sq, Point::new(vec![rat(1, 2), rat(1, 2)]), vec![1, 1]).unwrap()
    }

    #[test]
    fn opposite_midpoints() {
        let p = square_problem();
        let good = [Point::new(vec![int(0), rat(1, 2)]), Point::new(vec![int(1), rat(1, 2)])];
        assert!(verify_external(&p, &good).unwrap());
        // Same barycenter, but the first point sits in the interior.
        let bad = [Point::new(vec![rat(1, 4), rat(1, 2)]), Point::new(vec![rat(3, 4), rat(1, 2)])];
        assert!(!verify_external(&p, &bad).unwrap());
        let off_target = [Point::new(vec![int(0), rat(1, 2)]), Point::new(vec![int(1), int(1)])];
        assert!(!verify_external(&p, &off_target).unwrap());
        assert!(verify_external(&p, &good[..1]).is_err());
    }
}
