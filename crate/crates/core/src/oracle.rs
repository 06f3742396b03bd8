//! Brute-force LP classification by enumerating basic solutions.
//!
//! Independent of the simplex code: it only uses Gaussian elimination and
//! exhaustive column subsets, so it is practical for a handful of variables.

use num_traits::{One, Signed, Zero};

use crate::linalg::{rref, solve_square, Matrix};
use crate::lp::LinearProgram;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Infeasible,
    Unbounded,
    Optimal(Rational),
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All basic feasible solutions of `A x = b, x ≥ 0`, or `None` when `A x = b`
/// has no solution at all.
pub fn basic_feasible_solutions(a: &[Vec<Rational>], b: &[Rational], num_vars: usize) -> Option<Vec<Vec<Rational>>> {
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
    if pivots.contains(&num_vars) {
        return None;
    }
    let rank = pivots.len();
    let rows: Matrix = aug[..rank].iter().map(|r| r[..num_vars].to_vec()).collect();
    let rhs: Vec<Rational> = aug[..rank].iter().map(|r| r[num_vars].clone()).collect();
    let mut out = Vec::new();
    for cols in combinations(num_vars, rank) {
        let square: Matrix = rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        let Some(xs) = solve_square(&square, &rhs) else { continue };
        if xs.iter().any(Signed::is_negative) {
            continue;
        }
        let mut x = vec![Rational::zero(); num_vars];
        for (&c, v) in cols.iter().zip(xs) {
            x[c] = v;
        }
        if !out.contains(&x) {
            out.push(x);
        }
    }
    Some(out)
}

pub fn brute_force_lp(lp: &LinearProgram) -> OracleOutcome {
    let n = lp.num_vars();
    let Some(points) = basic_feasible_solutions(lp.rows(), lp.rhs(), n) else {
        return OracleOutcome::Infeasible;
    };
    if points.is_empty() {
        return OracleOutcome::Infeasible;
    }
    // Recession directions normalized by Σ r = 1; their vertices are the extreme rays.
    let mut ray_rows = lp.rows().to_vec();
    ray_rows.push(vec![Rational::one(); n]);
    let mut ray_rhs = vec![Rational::zero(); lp.num_rows()];
    ray_rhs.push(Rational::one());
    let rays = basic_feasible_solutions(&ray_rows, &ray_rhs, n).unwrap_or_default();
    if rays.iter().any(|r| lp.objective_value(r).is_positive()) {
        return OracleOutcome::Unbounded;
    }
    let best = points.iter().map(|x| lp.objective_value(x)).max().expect("nonempty");
    OracleOutcome::Optimal(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn classifies_small_programs() {
        let mut lp = LinearProgram::new(2);
        lp.add_row(vec![int(1), int(1)], int(1)).unwrap();
        lp.set_objective(vec![int(1), int(0)]).unwrap();
        assert_eq!(brute_force_lp(&lp), OracleOutcome::Optimal(int(1)));

        let mut lp = LinearProgram::new(2);
        lp.add_row(vec![int(1), int(1)], int(-1)).unwrap();
        assert_eq!(brute_force_lp(&lp), OracleOutcome::Infeasible);

        let mut lp = LinearProgram::new(2);
        lp.add_row(vec![int(1), int(-1)], int(1)).unwrap();
        lp.set_objective(vec![int(0), int(1)]).unwrap();
        assert_eq!(brute_force_lp(&lp), OracleOutcome::Unbounded);
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
