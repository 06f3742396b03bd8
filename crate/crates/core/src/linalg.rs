//! Dense exact Gaussian elimination.

use num_traits::{One, Zero};

use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduces `m` to reduced row echelon form in place and returns the pivot columns.
///
/// Rows may have any common length; zero rows sink to the bottom.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Affine dimension of a point set given as coordinate rows; `None` when empty.
pub fn affine_dim(points: &[&[Rational]]) -> Option<usize> {
    let (base, rest) = points.split_first()?;
    let diffs: Matrix = rest
        .iter()
        .map(|p| p.iter().zip(base.iter()).map(|(a, b)| a - b).collect())
        .collect();
    Some(rank(&diffs))
}

/// Coordinates spanning the affine hull of `points`: projecting onto these
/// columns is injective on the hull. Empty when the set is a single point.
pub fn affine_pivot_columns(points: &[&[Rational]]) -> Vec<usize> {
    let Some((base, rest)) = points.split_first() else {
        return Vec::new();
    };
    let mut diffs: Matrix = rest
        .iter()
        .map(|p| p.iter().zip(base.iter()).map(|(a, b)| a - b).collect())
        .collect();
    rref(&mut diffs)
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `a x = b` for a square nonsingular `a`.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![int(1), int(-1)], vec![int(-1), int(2)]]);
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn solve_small_system() {
        let a = m(&[&[3, 1], &[1, 2]]);
        let x = solve_square(&a, &[int(9), int(8)]).unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
        let x = solve_square(&m(&[&[2]]), &[int(1)]).unwrap();
        assert_eq!(x, vec![rat(1, 2)]);
    }

    #[test]
    fn affine_dim_of_collinear_points() {
        let pts = m(&[&[0, 0, 0], &[1, 1, 1], &[2, 2, 2]]);
        let refs: Vec<&[Rational]> = pts.iter().map(Vec::as_slice).collect();
        assert_eq!(affine_dim(&refs), Some(1));
        assert_eq!(affine_pivot_columns(&refs), vec![0]);
        assert_eq!(affine_dim(&[]), None);
    }
}
