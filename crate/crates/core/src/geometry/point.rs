use std::fmt;

use num_traits::Zero;

use crate::error::{ensure_dim, Result};
use crate::rational::{format_rational, int, Rational};

/// A point of `Q^d`. Arithmetic between points of different dimension is an error.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim])
    }

    /// The standard unit vector `e_{index+1}` of `Q^dim`.
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut p = Self::origin(dim);
        p.0[index] = int(1);
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn checked_add(&self, other: &Point) -> Result<Point> {
        ensure_dim(self.dim(), other.dim())?;
        Ok(Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn checked_sub(&self, other: &Point) -> Result<Point> {
        ensure_dim(self.dim(), other.dim())?;
        Ok(Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, factor: &Rational) -> Point {
        Point(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn dot(&self, other: &Point) -> Result<Rational> {
        ensure_dim(self.dim(), other.dim())?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    /// Concatenation `(self, other)`, the coordinates of a product point.
    pub fn concat(&self, other: &Point) -> Point {
        let mut coords = self.0.clone();
        coords.extend_from_slice(&other.0);
        Point(coords)
    }

    /// Coordinates `range` of the point, e.g. one block of a product.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Point {
        Point(self.0[range].to_vec())
    }

    /// `Σ coefficients[i] · points[i]`.
    pub fn combination(coefficients: &[Rational], points: &[Point], dim: usize) -> Result<Point> {
        ensure_dim(points.len(), coefficients.len())?;
        let mut acc = vec![Rational::zero(); dim];
        for (c, p) in coefficients.iter().zip(points) {
            ensure_dim(dim, p.dim())?;
            if c.is_zero() {
                continue;
            }
            for (slot, x) in acc.iter_mut().zip(&p.0) {
                *slot += c * x;
            }
        }
        Ok(Point(acc))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<Rational>> for Point {
    fn from(coords: Vec<Rational>) -> Self {
        Self(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::rational::rat;

    #[test]
    fn mixed_dimension_arithmetic_is_an_error() {
        let a = Point::from_ints(&[1, 2]);
        let b = Point::from_ints(&[1, 2, 3]);
        assert_eq!(
            a.checked_add(&b),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        );
        assert!(a.dot(&b).is_err());
    }

    #[test]
    fn combination_is_exact() {
        let pts = [Point::from_ints(&[1, 0]), Point::from_ints(&[0, 1])];
        let p = Point::combination(&[rat(1, 3), rat(2, 3)], &pts, 2).unwrap();
        assert_eq!(p, Point::new(vec![rat(1, 3), rat(2, 3)]));
        assert_eq!(p.to_string(), "(1/3, 2/3)");
    }
}
