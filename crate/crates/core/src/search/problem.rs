use num_traits::{One, Signed};

use crate::error::{argument, ensure_dim, Error, Result};
use crate::geometry::{Face, Point, Polytope};
use crate::rational::{int, sum, Rational};

/// Find `x_i` in faces of dimension at most `dims[i]` with `Σ weights[i] x_i = target`.
///
/// Caps above the polytope's dimension are clamped to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionProblem {
    polytope: Polytope,
    target: Point,
    requested_dims: Vec<usize>,
    dims: Vec<usize>,
    weights: Vec<Rational>,
}

pub fn equal_weights(n: usize) -> Vec<Rational> {
    vec![Rational::one() / int(n as i64); n]
}

impl DecompositionProblem {
    pub fn new(polytope: Polytope, target: Point, dims: Vec<usize>, weights: Vec<Rational>) -> Result<Self> {
        if dims.is_empty() {
            return Err(argument("a problem needs at least one point"));
        }
        ensure_dim(dims.len(), weights.len())?;
        ensure_dim(polytope.ambient_dim(), target.dim())?;
        if weights.iter().any(Signed::is_negative) {
            return Err(argument("weights must be nonnegative"));
        }
        let total = sum(&weights);
        if total != Rational::one() {
            return Err(argument(format!("weights sum to {total}, not 1")));
        }
        if !polytope.contains(&target)? {
            return Err(Error::Precondition(format!("target {target} lies outside the polytope")));
        }
        let clamped = dims.iter().map(|&k| k.min(polytope.dim())).collect();
        Ok(Self { polytope, target, requested_dims: dims, dims: clamped, weights })
    }

    pub fn with_equal_weights(polytope: Polytope, target: Point, dims: Vec<usize>) -> Result<Self> {
        let w = equal_weights(dims.len());
        Self::new(polytope, target, dims, w)
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn target(&self) -> &Point {
        &self.target
    }

    /// Face-dimension caps after clamping to the polytope's dimension.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Caps as supplied by the caller.
    pub fn requested_dims(&self) -> &[usize] {
        &self.requested_dims
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn num_points(&self) -> usize {
        self.dims.len()
    }

    /// For each point, the faces of dimension exactly its cap.
    pub(crate) fn face_lists(&self) -> Vec<&[Face]> {
        self.dims
            .iter()
            .map(|&k| self.polytope.faces_of_dim(k).expect("clamped dimension"))
            .collect()
    }

    /// Interchangeable positions share a group id: equal cap and equal weight.
    pub(crate) fn symmetry_groups(&self) -> Vec<usize> {
        let mut groups = Vec::with_capacity(self.dims.len());
        for i in 0..self.dims.len() {
            let id = (0..i)
                .find(|&j| self.dims[j] == self.dims[i] && self.weights[j] == self.weights[i])
                .map_or(i, |j| groups[j]);
            groups.push(id);
        }
        groups
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn validation() {
        let t = Polytope::standard_simplex(2);
        let bary = Point::new(vec![rat(1, 3); 3]);
        assert!(DecompositionProblem::new(t.clone(), bary.clone(), vec![1, 1], vec![rat(1, 2), rat(1, 3)]).is_err());
        assert!(DecompositionProblem::new(t.clone(), bary.clone(), vec![], vec![]).is_err());
        assert!(matches!(
            DecompositionProblem::with_equal_weights(t.clone(), Point::from_ints(&[2, 0, -1]), vec![1, 1]),
            Err(Error::Precondition(_))
        ));
        let p = DecompositionProblem::with_equal_weights(t, bary, vec![1, 7]).unwrap();
        assert_eq!(p.dims(), &[1, 2]);
        assert_eq!(p.requested_dims(), &[1, 7]);
    }

    #[test]
    fn groups_follow_cap_and_weight() {
        let t = Polytope::standard_simplex(3);
        let bary = Point::new(vec![rat(1, 4); 4]);
        let p = DecompositionProblem::new(
            t,
            bary,
            vec![1, 2, 1, 1],
            vec![rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)],
        )
        .unwrap();
        assert_eq!(p.symmetry_groups(), vec![0, 1, 0, 0]);
    }
}
