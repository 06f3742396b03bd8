use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use num_traits::One;

use super::hull;
use super::point::Point;
use crate::error::{argument, ensure_dim, Result};
use crate::linalg;
use crate::lp;
use crate::rational::{int, Rational};

/// A face, identified by the sorted indices of its vertices in the parent polytope.
///
/// Faces order lexicographically by vertex-index set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    vertex_indices: Vec<usize>,
    dim: usize,
}

impl Face {
    pub(crate) fn new(vertex_indices: Vec<usize>, dim: usize) -> Self {
        debug_assert!(vertex_indices.windows(2).all(|w| w[0] < w[1]));
        Self { vertex_indices, dim }
    }

    pub fn vertex_indices(&self) -> &[usize] {
        &self.vertex_indices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vertex_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_indices.is_empty()
    }

    pub fn contains_vertex(&self, index: usize) -> bool {
        self.vertex_indices.binary_search(&index).is_ok()
    }

    pub fn contains_face(&self, other: &Face) -> bool {
        other.vertex_indices.iter().all(|&i| self.contains_vertex(i))
    }
}

/// Every face of a polytope, grouped by dimension; `by_dim[d]` is sorted.
#[derive(Debug)]
struct FaceLattice {
    by_dim: Vec<Vec<Face>>,
}

/// A convex polytope in V-representation with its facet-vertex incidences.
///
/// Vertices are extreme, distinct and sorted lexicographically. The polytope
/// may be embedded in an ambient space of higher dimension than its own;
/// all face dimensions are intrinsic.
#[derive(Clone, Debug)]
pub struct Polytope {
    ambient_dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Vec<usize>>,
    dim: usize,
    lattice: OnceLock<Arc<FaceLattice>>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.vertices == other.vertices
            && self.facets == other.facets
            && self.dim == other.dim
    }
}

impl Eq for Polytope {}

impl Polytope {
    fn from_parts(ambient_dim: usize, vertices: Vec<Point>, mut facets: Vec<Vec<usize>>, dim: usize) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        facets.sort();
        Self {
            ambient_dim,
            vertices,
            facets,
            dim,
            lattice: OnceLock::new(),
        }
    }

    /// `Δ^d`: the convex hull of the standard unit vectors of `Q^{d+1}`.
    pub fn standard_simplex(d: usize) -> Self {
        let ambient = d + 1;
        // Lexicographic order puts e_{d+1} first and e_1 last.
        let vertices: Vec<Point> = (0..ambient).rev().map(|i| Point::unit(ambient, i)).collect();
        let facets = if d == 0 {
            Vec::new()
        } else {
            (0..ambient)
                .map(|skip| (0..ambient).filter(|&i| i != skip).collect())
                .collect()
        };
        Self::from_parts(ambient, vertices, facets, d)
    }

    /// Cartesian product, with facets from the combinatorial product rule.
    ///
    /// Vertex `(i, j)` of the product sits at index `i * |V(other)| + j`, which
    /// keeps the vertex list in lexicographic order.
    pub fn product(&self, other: &Polytope) -> Polytope {
        let m = other.vertices.len();
        let mut vertices = Vec::with_capacity(self.vertices.len() * m);
        for p in &self.vertices {
            for q in &other.vertices {
                vertices.push(p.concat(q));
            }
        }
        let mut facets = Vec::new();
        for f in &self.facets {
            facets.push(f.iter().flat_map(|&i| (0..m).map(move |j| i * m + j)).collect());
        }
        for g in &other.facets {
            facets.push(
                (0..self.vertices.len())
                    .flat_map(|i| g.iter().map(move |&j| i * m + j))
                    .collect(),
            );
        }
        Self::from_parts(
            self.ambient_dim + other.ambient_dim,
            vertices,
            facets,
            self.dim + other.dim,
        )
    }

    /// The polytope spanned by `points`: duplicates and non-extreme points are
    /// dropped (each point is tested by exact LP against all others) and the
    /// facets are enumerated by double description in the affine hull.
    pub fn canonicalize(points: &[Point]) -> Result<Polytope> {
        let first = points
            .first()
            .ok_or_else(|| argument("cannot build a polytope from an empty point list"))?;
        let ambient_dim = first.dim();
        for p in points {
            ensure_dim(ambient_dim, p.dim())?;
        }
        let distinct: Vec<Point> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let mut vertices = Vec::with_capacity(distinct.len());
        for (i, p) in distinct.iter().enumerate() {
            let others: Vec<Point> = distinct
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| q.clone())
                .collect();
            if others.is_empty() || lp::convex_combination(&others, p)?.is_none() {
                vertices.push(p.clone());
            }
        }

        let refs: Vec<&[Rational]> = vertices.iter().map(Point::coords).collect();
        let pivots = linalg::affine_pivot_columns(&refs);
        let dim = pivots.len();
        let facets = match dim {
            0 => Vec::new(),
            1 => vec![vec![0], vec![vertices.len() - 1]],
            _ => {
                let projected: Vec<Vec<Rational>> = vertices
                    .iter()
                    .map(|v| pivots.iter().map(|&c| v.coords()[c].clone()).collect())
                    .collect();
                hull::facets(&projected)
                    .ok_or_else(|| crate::Error::Internal("projection lost full dimension".into()))?
                    .into_iter()
                    .map(|f| f.tight)
                    .collect()
            }
        };
        Ok(Self::from_parts(ambient_dim, vertices, facets, dim))
    }

    /// A convex polygon with `m` vertices on the unit circle, all rational.
    ///
    /// Vertices come from the tangent-half-angle map
    /// `t ↦ ((1−t²)/(1+t²), 2t/(1+t²))` at rationalized parameters close to
    /// equally spaced angles. With `symmetric`, the points come in antipodal pairs.
    pub fn rational_circle_polygon(m: usize, symmetric: bool) -> Result<Polytope> {
        if m < 3 {
            return Err(argument(format!("a polygon needs at least 3 vertices, got {m}")));
        }
        if symmetric && !m.is_multiple_of(2) {
            return Err(argument(format!("a centrally symmetric polygon needs an even vertex count, got {m}")));
        }
        let scale = 8 * m as i64;
        let circle_point = |j: usize| -> Point {
            // Angle 2πj/m, half-angle πj/m.
            if 2 * j == m {
                return Point::from_ints(&[-1, 0]);
            }
            let half = std::f64::consts::PI * j as f64 / m as f64;
            let t = crate::rational::rat((half.tan() * scale as f64).round() as i64, scale);
            let t2 = &t * &t;
            let denom = Rational::one() + &t2;
            Point::new(vec![(Rational::one() - &t2) / &denom, (int(2) * &t) / &denom])
        };
        let points: Vec<Point> = if symmetric {
            (0..m / 2)
                .flat_map(|j| {
                    let p = circle_point(j);
                    let q = p.scale(&int(-1));
                    [p, q]
                })
                .collect()
        } else {
            (0..m).map(circle_point).collect()
        };
        let polygon = Self::canonicalize(&points)?;
        if polygon.vertices.len() != m {
            return Err(crate::Error::Internal(format!(
                "rounded circle parameters collided: {} of {m} vertices distinct",
                polygon.vertices.len()
            )));
        }
        Ok(polygon)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Intrinsic (affine) dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn vertex_index(&self, p: &Point) -> Option<usize> {
        self.vertices.binary_search(p).ok()
    }

    pub fn face_points(&self, face: &Face) -> Vec<Point> {
        face.vertex_indices.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Affine dimension of a vertex subset, by rank of difference vectors.
    pub fn subset_dim(&self, indices: &[usize]) -> usize {
        let refs: Vec<&[Rational]> = indices.iter().map(|&i| self.vertices[i].coords()).collect();
        linalg::affine_dim(&refs).unwrap_or(0)
    }

    fn lattice(&self) -> &FaceLattice {
        self.lattice.get_or_init(|| Arc::new(self.build_lattice()))
    }

    // Faces are exactly the nonempty intersections of facet vertex sets, plus the polytope itself.
    fn build_lattice(&self) -> FaceLattice {
        let full: Vec<usize> = (0..self.vertices.len()).collect();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        sets.insert(full);
        for facet in &self.facets {
            let snapshot: Vec<Vec<usize>> = sets.iter().cloned().collect();
            for s in snapshot {
                let inter: Vec<usize> = s.iter().copied().filter(|i| facet.binary_search(i).is_ok()).collect();
                if !inter.is_empty() {
                    sets.insert(inter);
                }
            }
        }
        let mut by_dim: Vec<Vec<Face>> = vec![Vec::new(); self.dim + 1];
        for s in sets {
            let d = self.subset_dim(&s);
            by_dim[d].push(Face::new(s, d));
        }
        for faces in &mut by_dim {
            faces.sort();
        }
        FaceLattice { by_dim }
    }

    /// All faces of dimension exactly `k`, sorted by vertex-index set.
    pub fn faces_of_dim(&self, k: usize) -> Result<&[Face]> {
        if k > self.dim {
            return Err(argument(format!(
                "face dimension {k} exceeds polytope dimension {}",
                self.dim
            )));
        }
        Ok(&self.lattice().by_dim[k])
    }

    /// Number of faces of each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.lattice().by_dim.iter().map(Vec::len).collect()
    }

    /// The polytope itself as a face.
    pub fn full_face(&self) -> Face {
        Face::new((0..self.vertices.len()).collect(), self.dim)
    }

    /// Whether `p` is a convex combination of the vertices.
    pub fn contains(&self, p: &Point) -> Result<bool> {
        ensure_dim(self.ambient_dim, p.dim())?;
        Ok(lp::convex_combination(&self.vertices, p)?.is_some())
    }

    /// The smallest face containing the given vertices: the intersection of
    /// every facet that contains all of them. `support` should be nonempty.
    pub fn smallest_face_containing(&self, support: &[usize]) -> Face {
        let mut set: Vec<usize> = (0..self.vertices.len()).collect();
        for facet in &self.facets {
            if support.iter().all(|i| facet.binary_search(i).is_ok()) {
                set.retain(|i| facet.binary_search(i).is_ok());
            }
        }
        let d = self.subset_dim(&set);
        Face::new(set, d)
    }

    /// A face as a polytope in its own right; its facets are its faces of one
    /// dimension lower. Local vertex `i` is parent vertex `face.vertex_indices()[i]`.
    pub fn face_polytope(&self, face: &Face) -> Polytope {
        let vertices = self.face_points(face);
        let facets = if face.dim == 0 {
            Vec::new()
        } else {
            self.lattice().by_dim[face.dim - 1]
                .iter()
                .filter(|g| face.contains_face(g))
                .map(|g| {
                    g.vertex_indices
                        .iter()
                        .map(|i| face.vertex_indices.binary_search(i).expect("subface vertex"))
                        .collect()
                })
                .collect()
        };
        Self::from_parts(self.ambient_dim, vertices, facets, face.dim)
    }

    /// The barycenter of the vertex set.
    pub fn vertex_barycenter(&self) -> Point {
        let n = self.vertices.len();
        let w = vec![Rational::one() / int(n as i64); n];
        Point::combination(&w, &self.vertices, self.ambient_dim).expect("uniform dimensions")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn square() -> Polytope {
        let pts: Vec<Point> = [[0, 0], [1, 0], [0, 1], [1, 1]].iter().map(|c| Point::from_ints(c)).collect();
        Polytope::canonicalize(&pts).unwrap()
    }

    #[test]
    fn point_simplex() {
        let p = Polytope::standard_simplex(0);
        assert_eq!(p.ambient_dim(), 1);
        assert_eq!(p.vertices(), &[Point::from_ints(&[1])]);
        assert_eq!(p.dim(), 0);
        assert_eq!(p.faces_of_dim(0).unwrap().len(), 1);
    }

    #[test]
    fn triangle() {
        let t = Polytope::standard_simplex(2);
        assert_eq!(t.num_vertices(), 3);
        assert_eq!(t.facets().len(), 3);
        assert_eq!(t.faces_of_dim(1).unwrap().len(), 3);
    }

    #[test]
    fn simplex_face_counts_are_binomial() {
        for d in 0..=6 {
            let s = Polytope::standard_simplex(d);
            for k in 0..=d {
                assert_eq!(s.faces_of_dim(k).unwrap().len(), binomial(d + 1, k + 1), "d={d} k={k}");
            }
        }
        assert_eq!(Polytope::standard_simplex(4).faces_of_dim(2).unwrap().len(), 10);
    }

    #[test]
    fn face_dimension_out_of_range() {
        assert!(Polytope::standard_simplex(2).faces_of_dim(3).is_err());
    }

    #[test]
    fn segment_times_segment_is_a_square() {
        let seg = Polytope::canonicalize(&[Point::from_ints(&[0]), Point::from_ints(&[1])]).unwrap();
        let sq = seg.product(&seg);
        assert_eq!(sq.num_vertices(), 4);
        assert_eq!(sq.faces_of_dim(1).unwrap().len(), 4);
        assert_eq!(sq, square());
    }

    #[test]
    fn product_counts() {
        let p = Polytope::standard_simplex(2).product(&Polytope::standard_simplex(1));
        assert_eq!(p.num_vertices(), 6);
        assert_eq!(p.dim(), 3);
        let q = Polytope::standard_simplex(3).product(&Polytope::standard_simplex(1));
        assert_eq!(q.faces_of_dim(1).unwrap().len(), 6 * 2 + 4);
        assert_eq!(q.faces_of_dim(2).unwrap().len(), 4 * 2 + 6);
    }

    #[test]
    fn product_facets_match_double_description() {
        let q = Polytope::standard_simplex(2).product(&Polytope::standard_simplex(1));
        let numeric = Polytope::canonicalize(q.vertices()).unwrap();
        assert_eq!(numeric, q);
    }

    #[test]
    fn canonicalize_drops_interior_and_duplicate_points() {
        let seg = Polytope::canonicalize(&[Point::from_ints(&[0]), Point::from_ints(&[1]), Point::new(vec![rat(1, 2)])]).unwrap();
        assert_eq!(seg.vertices(), &[Point::from_ints(&[0]), Point::from_ints(&[1])]);

        let mut pts: Vec<Point> = [[0, 0], [1, 0], [0, 1], [1, 1], [1, 1]].iter().map(|c| Point::from_ints(c)).collect();
        pts.push(Point::new(vec![rat(1, 2), rat(1, 2)]));
        let sq = Polytope::canonicalize(&pts).unwrap();
        assert_eq!(sq.num_vertices(), 4);
        assert_eq!(sq.facets().len(), 4);
    }

    #[test]
    fn canonicalize_empty_is_an_error() {
        assert!(Polytope::canonicalize(&[]).is_err());
        assert!(Polytope::canonicalize(&[Point::from_ints(&[0]), Point::from_ints(&[0, 1])]).is_err());
    }

    #[test]
    fn embedded_simplex_matches_combinatorial_simplex() {
        for d in 1..=4 {
            let s = Polytope::standard_simplex(d);
            assert_eq!(Polytope::canonicalize(s.vertices()).unwrap(), s);
        }
    }

    #[test]
    fn contains_examples() {
        let t = Polytope::standard_simplex(2);
        assert!(t.contains(&Point::new(vec![rat(1, 3), rat(1, 3), rat(1, 3)])).unwrap());
        assert!(!t.contains(&Point::from_ints(&[1, 1, -1])).unwrap());
        let seg = Polytope::standard_simplex(1);
        assert!(seg.contains(&Point::new(vec![rat(1, 4), rat(3, 4)])).unwrap());
        assert!(seg.contains(&Point::from_ints(&[1, 0, 0])).is_err());
    }

    #[test]
    fn circle_polygons() {
        let sq = Polytope::rational_circle_polygon(4, true).unwrap();
        let expected: Vec<Point> = [[-1, 0], [0, -1], [0, 1], [1, 0]].iter().map(|c| Point::from_ints(c)).collect();
        assert_eq!(sq.vertices(), expected.as_slice());

        for (m, sym) in [(3, false), (5, false), (8, true), (12, true), (7, false)] {
            let poly = Polytope::rational_circle_polygon(m, sym).unwrap();
            assert_eq!(poly.num_vertices(), m);
            assert_eq!(poly.facets().len(), m);
            for v in poly.vertices() {
                assert_eq!(v.dot(v).unwrap(), Rational::one());
                if sym {
                    assert!(poly.vertex_index(&v.scale(&int(-1))).is_some());
                }
            }
            // Origin strictly inside: every edge line separates it from the boundary.
            assert!(poly.contains(&Point::origin(2)).unwrap());
            let on_boundary = poly
                .faces_of_dim(1)
                .unwrap()
                .iter()
                .any(|e| lp::convex_combination(&poly.face_points(e), &Point::origin(2)).unwrap().is_some());
            assert!(!on_boundary);
        }
        assert!(Polytope::rational_circle_polygon(2, false).is_err());
        assert!(Polytope::rational_circle_polygon(7, true).is_err());
    }

    #[test]
    fn smallest_face_and_face_polytope() {
        let s = Polytope::standard_simplex(3);
        let f = s.smallest_face_containing(&[0, 2]);
        assert_eq!(f.vertex_indices(), &[0, 2]);
        assert_eq!(f.dim(), 1);

        let tri = &s.faces_of_dim(2).unwrap()[0];
        let sub = s.face_polytope(tri);
        assert_eq!(sub.dim(), 2);
        assert_eq!(sub.facets().len(), 3);
        assert_eq!(sub, Polytope::canonicalize(&s.face_points(tri)).unwrap());
    }
}
