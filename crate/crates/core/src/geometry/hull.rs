//! Facet enumeration for full-dimensional point sets by exact double description.
//!
//! Facets of `conv(V) ⊂ Q^d` are the extreme rays of the cone
//! `{ (a0, a) : a0 + a·v ≥ 0 for all v ∈ V }`. The cone is built one
//! constraint at a time: starting from `d + 1` affinely independent points
//! (whose cone is simplicial), each new constraint splits the current rays
//! into positive, zero and negative parts, and every adjacent
//! positive/negative pair contributes the ray on the new hyperplane.
//! Adjacency is decided combinatorially from the rays' zero sets.

use num_traits::{One, Signed, Zero};

use crate::linalg;
use crate::rational::{primitive_direction, Rational};

/// A facet inequality `offset + normal · x ≥ 0` and the input points it holds with equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetInequality {
    pub offset: Rational,
    pub normal: Vec<Rational>,
    pub tight: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<Rational>,
    /// Sorted indices of processed constraints this ray satisfies with equality.
    zeros: Vec<usize>,
}

fn homogenize(p: &[Rational]) -> Vec<Rational> {
    let mut row = Vec::with_capacity(p.len() + 1);
    row.push(Rational::one());
    row.extend_from_slice(p);
    row
}

fn eval(row: &[Rational], ray: &[Rational]) -> Rational {
    row.iter()
        .zip(ray)
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, b)| a * b)
        .sum()
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn insert_sorted(v: &mut Vec<usize>, x: usize) {
    if let Err(pos) = v.binary_search(&x) {
        v.insert(pos, x);
    }
}

fn is_superset(big: &[usize], small: &[usize]) -> bool {
    intersect_sorted(big, small).len() == small.len()
}

/// Facets of the convex hull of `points`, which must affinely span `Q^d` with `d ≥ 1`.
///
/// Returns `None` when the points are not full-dimensional.
pub fn facets(points: &[Vec<Rational>]) -> Option<Vec<FacetInequality>> {
    let d = points.first()?.len();
    if d == 0 {
        return None;
    }
    let rows: Vec<Vec<Rational>> = points.iter().map(|p| homogenize(p)).collect();

    // Greedy affinely independent start.
    let mut basis: Vec<usize> = Vec::with_capacity(d + 1);
    let mut basis_rows: Vec<Vec<Rational>> = Vec::with_capacity(d + 1);
    for (i, row) in rows.iter().enumerate() {
        basis_rows.push(row.clone());
        if linalg::rank(&basis_rows) == basis_rows.len() {
            basis.push(i);
            if basis.len() == d + 1 {
                break;
            }
        } else {
            basis_rows.pop();
        }
    }
    if basis.len() < d + 1 {
        return None;
    }

    // Columns of the inverse are the simplicial cone's rays; ray j is tight on every basis row but j.
    let inv = linalg::inverse(&basis_rows)?;
    let mut rays: Vec<Ray> = (0..=d)
        .map(|j| {
            let mut coords: Vec<Rational> = inv.iter().map(|r| r[j].clone()).collect();
            primitive_direction(&mut coords);
            let mut zeros: Vec<usize> = basis
                .iter()
                .enumerate()
                .filter(|&(pos, _)| pos != j)
                .map(|(_, &row)| row)
                .collect();
            zeros.sort_unstable();
            Ray { coords, zeros }
        })
        .collect();

    for (i, row) in rows.iter().enumerate() {
        if basis.contains(&i) {
            continue;
        }
        let values: Vec<Rational> = rays.iter().map(|r| eval(row, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        for (k, ray) in rays.iter().enumerate() {
            if values[k].is_positive() {
                next.push(ray.clone());
            } else if values[k].is_zero() {
                let mut r = ray.clone();
                insert_sorted(&mut r.zeros, i);
                next.push(r);
            }
        }
        for &p in &pos {
            for &n in &neg {
                let common = intersect_sorted(&rays[p].zeros, &rays[n].zeros);
                if common.len() + 1 < d {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == n || !is_superset(&r.zeros, &common));
                if !adjacent {
                    continue;
                }
                let mut coords: Vec<Rational> = rays[n]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(cn, cp)| &values[p] * cn - &values[n] * cp)
                    .collect();
                primitive_direction(&mut coords);
                let mut zeros = common;
                insert_sorted(&mut zeros, i);
                next.push(Ray { coords, zeros });
            }
        }
        rays = next;
    }

    let mut out: Vec<FacetInequality> = rays
        .into_iter()
        .map(|r| {
            let tight: Vec<usize> = rows
                .iter()
                .enumerate()
                .filter(|(_, row)| eval(row, &r.coords).is_zero())
                .map(|(i, _)| i)
                .collect();
            let mut coords = r.coords;
            let offset = coords.remove(0);
            FacetInequality { offset, normal: coords, tight }
        })
        .collect();
    out.sort_by(|a, b| a.tight.cmp(&b.tight));
    Some(out)
}
