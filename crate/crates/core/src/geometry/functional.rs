use num_traits::{One, Zero};

use super::point::Point;
use crate::error::{ensure_dim, Result};
use crate::rational::Rational;

/// An affine functional `x ↦ coefficients · x + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualFunctional {
    pub coefficients: Vec<Rational>,
    pub offset: Rational,
}

impl DualFunctional {
    /// `e_{i_1}^* + … + e_{i_m}^*` on `Q^dim`, with zero-based coordinate indices.
    pub fn sum_of_duals(dim: usize, coordinates: &[usize]) -> Self {
        let mut coefficients = vec![Rational::zero(); dim];
        for &c in coordinates {
            coefficients[c] = Rational::one();
        }
        Self { coefficients, offset: Rational::zero() }
    }

    pub fn evaluate(&self, p: &Point) -> Result<Rational> {
        ensure_dim(self.coefficients.len(), p.dim())?;
        let dot: Rational = self.coefficients.iter().zip(p.coords()).map(|(a, b)| a * b).sum();
        Ok(dot + &self.offset)
    }
}
