//! Seeded random instances: polytopes, interior targets, small LPs and
//! decomposition problems built forward from a known solution.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{Point, Polytope};
use crate::lp::LinearProgram;
use crate::rational::{int, rat, Rational};
use crate::search::DecompositionProblem;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational in `[lo, hi]` with denominator dividing `denom`.
pub fn random_rational(rng: &mut impl Rng, lo: i64, hi: i64, denom: i64) -> Rational {
    rat(rng.random_range(lo * denom..=hi * denom), denom)
}

/// Positive weights summing to one, with small denominators.
pub fn random_simplex_weights(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    let raw: Vec<i64> = (0..n).map(|_| rng.random_range(1..=6)).collect();
    let total: i64 = raw.iter().sum();
    raw.into_iter().map(|a| rat(a, total)).collect()
}

/// The hull of `num_points` random points of `[0, 1]^dim` (denominator 4),
/// resampled until it is full-dimensional.
pub fn random_polytope(rng: &mut impl Rng, dim: usize, num_points: usize) -> Polytope {
    loop {
        let pts: Vec<Point> = (0..num_points)
            .map(|_| Point::new((0..dim).map(|_| random_rational(rng, 0, 1, 4)).collect()))
            .collect();
        let p = Polytope::canonicalize(&pts).expect("nonempty uniform input");
        if p.dim() == dim {
            return p;
        }
    }
}

/// A strictly positive combination of all vertices: a relative-interior point.
pub fn random_interior_point(rng: &mut impl Rng, polytope: &Polytope) -> Point {
    let w = random_simplex_weights(rng, polytope.num_vertices());
    Point::combination(&w, polytope.vertices(), polytope.ambient_dim()).expect("uniform dimensions")
}

/// An LP with up to `max_vars` variables and `max_rows` rows, entries in `[-3, 3]`.
pub fn random_small_lp(rng: &mut impl Rng, max_vars: usize, max_rows: usize) -> LinearProgram {
    let n = rng.random_range(1..=max_vars);
    let m = rng.random_range(1..=max_rows);
    let mut lp = LinearProgram::new(n);
    for _ in 0..m {
        let row = (0..n).map(|_| int(rng.random_range(-3..=3))).collect();
        lp.add_row(row, int(rng.random_range(-3..=3))).expect("width");
    }
    lp.set_objective((0..n).map(|_| int(rng.random_range(-3..=3))).collect()).expect("width");
    lp
}

/// A problem together with the solution it was built from.
#[derive(Clone, Debug)]
pub struct ForwardInstance {
    pub problem: DecompositionProblem,
    pub points: Vec<Point>,
}

/// Picks a polytope, caps, faces within the caps, convex coefficients and
/// weights, then sets the target to the resulting combination, so the
/// problem is solvable by construction.
pub fn forward_feasible_instance(rng: &mut impl Rng) -> ForwardInstance {
    let polytope = match rng.random_range(0..4) {
        0 => Polytope::standard_simplex(2),
        1 => Polytope::standard_simplex(3),
        2 => random_polytope(rng, 2, 6),
        _ => random_polytope(rng, 3, 6),
    };
    let n = rng.random_range(1..=3);
    let weights = if rng.random_bool(0.5) {
        crate::search::equal_weights(n)
    } else {
        random_simplex_weights(rng, n)
    };
    let mut dims = Vec::with_capacity(n);
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let k = rng.random_range(0..=polytope.dim());
        let j = rng.random_range(0..=k);
        let faces = polytope.faces_of_dim(j).expect("in range");
        let face = &faces[rng.random_range(0..faces.len())];
        let coeffs = random_simplex_weights(rng, face.len());
        let x = Point::combination(&coeffs, &polytope.face_points(face), polytope.ambient_dim()).expect("dims");
        dims.push(k);
        points.push(x);
    }
    let mut target = Point::origin(polytope.ambient_dim());
    for (x, w) in points.iter().zip(&weights) {
        if !w.is_zero() {
            target = target.checked_add(&x.scale(w)).expect("dims");
        }
    }
    let problem = DecompositionProblem::new(polytope, target, dims, weights).expect("forward instance is valid");
    ForwardInstance { problem, points }
}
