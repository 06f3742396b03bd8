//! Linear systems for weighted barycenters of points confined to faces.
//!
//! Point `x_i` is written as a convex combination `Σ_j μ_ij v_ij` of the
//! vertices of its face. With fixed weights the system is
//! `Σ_j μ_ij = 1`, `Σ_i λ_i Σ_j μ_ij v_ij = p`, `μ ≥ 0`. In probe mode the
//! weights become variables; substituting `μ_ij ← λ_i μ_ij` keeps it linear:
//! `Σ_j μ_ij = λ_i`, `Σ λ_i = 1`, `Σ_ij μ_ij v_ij = p`, maximize `λ_probe`.

use num_traits::{One, Signed, Zero};

use super::simplex::LinearProgram;
use crate::error::{argument, ensure_dim, Error, Result};
use crate::geometry::{Face, Point, Polytope};
use crate::rational::{sum, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightMode {
    Fixed(Vec<Rational>),
    Probe(usize),
}

#[derive(Clone, Debug)]
pub struct BarycenterSystem {
    faces: Vec<Face>,
    face_points: Vec<Vec<Point>>,
    mode: WeightMode,
    target: Point,
}

/// Builds the fixed-weight system: feasible iff there are `x_i ∈ conv(faces[i])`
/// with `Σ λ_i x_i = target`.
pub fn assemble_fixed(
    polytope: &Polytope,
    faces: &[Face],
    weights: &[Rational],
    target: &Point,
) -> Result<BarycenterSystem> {
    if faces.is_empty() {
        return Err(argument("at least one face is required"));
    }
    ensure_dim(faces.len(), weights.len())?;
    if weights.iter().any(Signed::is_negative) {
        return Err(argument("weights must be nonnegative"));
    }
    if sum(weights) != Rational::one() {
        return Err(argument(format!("weights sum to {}, not 1", sum(weights))));
    }
    build(polytope, faces, WeightMode::Fixed(weights.to_vec()), target)
}

/// Builds the probe system maximizing the weight of point `probe_index`.
pub fn assemble_probe(
    polytope: &Polytope,
    faces: &[Face],
    probe_index: usize,
    target: &Point,
) -> Result<BarycenterSystem> {
    if faces.is_empty() {
        return Err(argument("at least one face is required"));
    }
    if probe_index >= faces.len() {
        return Err(argument(format!(
            "probe index {probe_index} out of range for {} points",
            faces.len()
        )));
    }
    build(polytope, faces, WeightMode::Probe(probe_index), target)
}

fn build(polytope: &Polytope, faces: &[Face], mode: WeightMode, target: &Point) -> Result<BarycenterSystem> {
    ensure_dim(polytope.ambient_dim(), target.dim())?;
    for f in faces {
        if f.is_empty() || f.vertex_indices().iter().any(|&i| i >= polytope.num_vertices()) {
            return Err(argument("face does not index into the polytope"));
        }
    }
    Ok(BarycenterSystem {
        faces: faces.to_vec(),
        face_points: faces.iter().map(|f| polytope.face_points(f)).collect(),
        mode,
        target: target.clone(),
    })
}

impl BarycenterSystem {
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn mode(&self) -> &WeightMode {
        &self.mode
    }

    pub fn target(&self) -> &Point {
        &self.target
    }

    pub fn num_points(&self) -> usize {
        self.faces.len()
    }

    fn num_mu(&self) -> usize {
        self.face_points.iter().map(Vec::len).sum()
    }

    /// The program in standard form. Variables are the `μ_ij` in row-major
    /// order, followed by the weights `λ_i` in probe mode.
    pub fn to_lp(&self) -> LinearProgram {
        let n = self.faces.len();
        let n_mu = self.num_mu();
        let dim = self.target.dim();
        let probe = matches!(self.mode, WeightMode::Probe(_));
        let num_vars = if probe { n_mu + n } else { n_mu };
        let mut lp = LinearProgram::new(num_vars);

        let mut offset = 0;
        for (i, pts) in self.face_points.iter().enumerate() {
            let mut row = vec![Rational::zero(); num_vars];
            for slot in &mut row[offset..offset + pts.len()] {
                *slot = Rational::one();
            }
            let rhs = if probe {
                row[n_mu + i] = -Rational::one();
                Rational::zero()
            } else {
                Rational::one()
            };
            lp.add_row(row, rhs).expect("row width");
            offset += pts.len();
        }
        if probe {
            let mut row = vec![Rational::zero(); num_vars];
            for slot in &mut row[n_mu..] {
                *slot = Rational::one();
            }
            lp.add_row(row, Rational::one()).expect("row width");
        }
        for c in 0..dim {
            let mut row = vec![Rational::zero(); num_vars];
            let mut k = 0;
            for (i, pts) in self.face_points.iter().enumerate() {
                let scale = match &self.mode {
                    WeightMode::Fixed(w) => w[i].clone(),
                    WeightMode::Probe(_) => Rational::one(),
                };
                for p in pts {
                    row[k] = &scale * &p.coords()[c];
                    k += 1;
                }
            }
            lp.add_row(row, self.target.coords()[c].clone()).expect("row width");
        }
        if let WeightMode::Probe(idx) = self.mode {
            let mut obj = vec![Rational::zero(); num_vars];
            obj[n_mu + idx] = Rational::one();
            lp.set_objective(obj).expect("objective width");
        }
        lp
    }

    /// Splits LP variable values into the per-face coefficient matrix.
    pub fn mu_from_values(&self, values: &[Rational]) -> Vec<Vec<Rational>> {
        let mut out = Vec::with_capacity(self.faces.len());
        let mut k = 0;
        for pts in &self.face_points {
            out.push(values[k..k + pts.len()].to_vec());
            k += pts.len();
        }
        out
    }

    /// Probe-mode weights `λ_i` from LP variable values.
    pub fn weights_from_values(&self, values: &[Rational]) -> Vec<Rational> {
        values[self.num_mu()..].to_vec()
    }

    /// `x_i = Σ_j μ_ij v_ij`, normalizing by `Σ_j μ_ij` in probe mode when nonzero.
    pub fn realized_points(&self, mu: &[Vec<Rational>]) -> Result<Vec<Point>> {
        self.check_shape(mu)?;
        let dim = self.target.dim();
        mu.iter()
            .zip(&self.face_points)
            .map(|(coeffs, pts)| {
                let total = sum(coeffs);
                let coeffs: Vec<Rational> = if matches!(self.mode, WeightMode::Probe(_)) && !total.is_zero() {
                    coeffs.iter().map(|c| c / &total).collect()
                } else {
                    coeffs.clone()
                };
                Point::combination(&coeffs, pts, dim)
            })
            .collect()
    }

    fn check_shape(&self, mu: &[Vec<Rational>]) -> Result<()> {
        if mu.len() != self.faces.len() {
            return Err(Error::DimensionMismatch { expected: self.faces.len(), found: mu.len() });
        }
        for (row, pts) in mu.iter().zip(&self.face_points) {
            ensure_dim(pts.len(), row.len())?;
        }
        Ok(())
    }
}

/// Checks a coefficient matrix against the system by direct arithmetic,
/// without touching the solver.
///
/// Fixed mode: `μ ≥ 0`, each row sums to 1, `Σ_i λ_i Σ_j μ_ij v_ij = target`.
/// Probe mode (unnormalized `μ`): `μ ≥ 0`, all entries sum to 1,
/// `Σ_ij μ_ij v_ij = target`.
pub fn check_certificate(system: &BarycenterSystem, mu: &[Vec<Rational>]) -> Result<bool> {
    system.check_shape(mu)?;
    if mu.iter().flatten().any(Signed::is_negative) {
        return Ok(false);
    }
    let dim = system.target.dim();
    let mut acc = Point::origin(dim);
    match &system.mode {
        WeightMode::Fixed(weights) => {
            for ((coeffs, pts), w) in mu.iter().zip(&system.face_points).zip(weights) {
                if sum(coeffs) != Rational::one() {
                    return Ok(false);
                }
                let x = Point::combination(coeffs, pts, dim)?;
                acc = acc.checked_add(&x.scale(w))?;
            }
        }
        WeightMode::Probe(_) => {
            if sum(mu.iter().flatten()) != Rational::one() {
                return Ok(false);
            }
            for (coeffs, pts) in mu.iter().zip(&system.face_points) {
                acc = acc.checked_add(&Point::combination(coeffs, pts, dim)?)?;
            }
        }
    }
    Ok(acc == system.target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{lp_solve, LpOutcome};
    use crate::rational::{int, rat};

    fn square() -> Polytope {
        let pts: Vec<Point> = [[0, 0], [1, 0], [0, 1], [1, 1]].iter().map(|c| Point::from_ints(c)).collect();
        Polytope::canonicalize(&pts).unwrap()
    }

    fn face_of(p: &Polytope, verts: &[usize]) -> Face {
        p.smallest_face_containing(verts)
    }

    fn solve_fixed(p: &Polytope, faces: &[Face], w: &[Rational], target: &Point) -> (BarycenterSystem, LpOutcome) {
        let sys = assemble_fixed(p, faces, w, target).unwrap();
        let out = lp_solve(&sys.to_lp()).unwrap();
        (sys, out)
    }

    #[test]
    fn opposite_square_edges_reach_center() {
        let sq = square();
        // Vertices sorted: (0,0), (0,1), (1,0), (1,1).
        let left = face_of(&sq, &[0, 1]);
        let right = face_of(&sq, &[2, 3]);
        let center = Point::new(vec![rat(1, 2), rat(1, 2)]);
        let half = [rat(1, 2), rat(1, 2)];
        let (sys, out) = solve_fixed(&sq, &[left, right], &half, &center);
        let LpOutcome::Optimal { values, .. } = out else { panic!("expected feasible") };
        let mu = sys.mu_from_values(&values);
        assert!(check_certificate(&sys, &mu).unwrap());

        let midpoints = vec![vec![rat(1, 2), rat(1, 2)], vec![rat(1, 2), rat(1, 2)]];
        assert!(check_certificate(&sys, &midpoints).unwrap());
        let mut perturbed = midpoints.clone();
        perturbed[0][0] += rat(1, 1000);
        assert!(!check_certificate(&sys, &perturbed).unwrap());
        assert!(check_certificate(&sys, &midpoints[..1]).is_err());
    }

    #[test]
    fn vertex_plus_triangle_misses_barycenter() {
        let t = Polytope::standard_simplex(2);
        let e1 = t.vertex_index(&Point::unit(3, 0)).unwrap();
        let faces = [face_of(&t, &[e1]), t.full_face()];
        let bary = Point::new(vec![rat(1, 3); 3]);
        let (sys, out) = solve_fixed(&t, &faces, &[rat(1, 2), rat(1, 2)], &bary);
        assert!(matches!(out, LpOutcome::Infeasible { .. }));
        assert!(sys.to_lp().validates(&out));
    }

    #[test]
    fn disjoint_tetrahedron_edges() {
        let s = Polytope::standard_simplex(3);
        let idx = |i: usize| s.vertex_index(&Point::unit(4, i)).unwrap();
        let faces = [face_of(&s, &[idx(0), idx(1)]), face_of(&s, &[idx(2), idx(3)])];
        let target = Point::new(vec![rat(1, 4); 4]);
        let (sys, out) = solve_fixed(&s, &faces, &[rat(1, 2), rat(1, 2)], &target);
        let LpOutcome::Optimal { values, .. } = out else { panic!("expected feasible") };
        let pts = sys.realized_points(&sys.mu_from_values(&values)).unwrap();
        assert_eq!(pts[0], Point::new(vec![rat(1, 2), rat(1, 2), int(0), int(0)]));
        assert_eq!(pts[1], Point::new(vec![int(0), int(0), rat(1, 2), rat(1, 2)]));
    }

    #[test]
    fn weight_validation() {
        let t = Polytope::standard_simplex(2);
        let f = t.full_face();
        let bary = Point::new(vec![rat(1, 3); 3]);
        assert!(assemble_fixed(&t, &[f.clone(), f.clone()], &[rat(1, 2), rat(2, 5)], &bary).is_err());
        assert!(assemble_fixed(&t, &[f.clone(), f.clone()], &[rat(3, 2), rat(-1, 2)], &bary).is_err());
        assert!(assemble_fixed(&t, std::slice::from_ref(&f), &[rat(1, 2), rat(1, 2)], &bary).is_err());
        assert!(assemble_probe(&t, std::slice::from_ref(&f), 1, &bary).is_err());
        assert!(assemble_probe(&t, &[], 0, &bary).is_err());
    }

    #[test]
    fn probe_on_whole_polytope_is_one() {
        let t = Polytope::standard_simplex(2);
        let bary = Point::new(vec![rat(1, 3); 3]);
        let sys = assemble_probe(&t, &[t.full_face()], 0, &bary).unwrap();
        let LpOutcome::Optimal { values, objective } = lp_solve(&sys.to_lp()).unwrap() else { panic!() };
        assert_eq!(objective, int(1));
        assert!(check_certificate(&sys, &sys.mu_from_values(&values)).unwrap());
    }

    #[test]
    fn probe_edge_pairs_on_triangle() {
        let t = Polytope::standard_simplex(2);
        let bary = Point::new(vec![rat(1, 3); 3]);
        let edges = t.faces_of_dim(1).unwrap();
        let mut best = Rational::zero();
        for a in edges {
            for b in edges {
                let sys = assemble_probe(&t, &[a.clone(), b.clone()], 0, &bary).unwrap();
                if let LpOutcome::Optimal { objective, .. } = lp_solve(&sys.to_lp()).unwrap() {
                    best = best.max(objective);
                }
            }
        }
        assert_eq!(best, rat(2, 3));
    }
}
