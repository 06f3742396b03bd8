//! Dense two-phase simplex over exact rationals.
//!
//! Programs are in equality standard form: `A x = b`, `x ≥ 0`, maximize `c·x`.
//! Pivoting follows Bland's rule (smallest eligible index for both the
//! entering and the leaving variable), so every run terminates and is fully
//! deterministic. Each outcome carries a witness that [`LinearProgram`] can
//! check with plain arithmetic.

use num_traits::{One, Signed, Zero};

use crate::error::{argument, Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    num_vars: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    objective: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { values: Vec<Rational>, objective: Rational },
    /// Multipliers `y` with `yᵀA ≥ 0` componentwise and `yᵀb < 0`.
    Infeasible { farkas: Vec<Rational> },
    /// A feasible point plus a direction `r ≥ 0`, `A r = 0`, `c·r > 0`.
    Unbounded { point: Vec<Rational>, ray: Vec<Rational> },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible { .. })
    }
}

impl LinearProgram {
    /// A feasibility program in `num_vars` nonnegative variables with no rows yet.
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            rows: Vec::new(),
            rhs: Vec::new(),
            objective: vec![Rational::zero(); num_vars],
        }
    }

    pub fn add_row(&mut self, coefficients: Vec<Rational>, rhs: Rational) -> Result<()> {
        if coefficients.len() != self.num_vars {
            return Err(argument(format!(
                "row has {} coefficients, program has {} variables",
                coefficients.len(),
                self.num_vars
            )));
        }
        self.rows.push(coefficients);
        self.rhs.push(rhs);
        Ok(())
    }

    pub fn set_objective(&mut self, coefficients: Vec<Rational>) -> Result<()> {
        if coefficients.len() != self.num_vars {
            return Err(argument(format!(
                "objective has {} coefficients, program has {} variables",
                coefficients.len(),
                self.num_vars
            )));
        }
        self.objective = coefficients;
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    fn row_dot(&self, i: usize, x: &[Rational]) -> Rational {
        self.rows[i].iter().zip(x).filter(|(a, _)| !a.is_zero()).map(|(a, v)| a * v).sum()
    }

    /// `x ≥ 0` and every row holds with equality.
    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars
            && x.iter().all(|v| !v.is_negative())
            && (0..self.rows.len()).all(|i| self.row_dot(i, x) == self.rhs[i])
    }

    /// `yᵀA ≥ 0` and `yᵀb < 0`: no nonnegative `x` can satisfy `A x = b`.
    pub fn is_farkas_witness(&self, y: &[Rational]) -> bool {
        if y.len() != self.rows.len() {
            return false;
        }
        let combined_rhs: Rational = y.iter().zip(&self.rhs).map(|(a, b)| a * b).sum();
        if !combined_rhs.is_negative() {
            return false;
        }
        (0..self.num_vars).all(|j| {
            let col: Rational = y
                .iter()
                .zip(&self.rows)
                .filter(|(m, _)| !m.is_zero())
                .map(|(m, row)| m * &row[j])
                .sum();
            !col.is_negative()
        })
    }

    /// `r ≥ 0`, `A r = 0` and `c·r > 0`.
    pub fn is_improving_ray(&self, r: &[Rational]) -> bool {
        r.len() == self.num_vars
            && r.iter().all(|v| !v.is_negative())
            && (0..self.rows.len()).all(|i| self.row_dot(i, r).is_zero())
            && self.objective_value(r).is_positive()
    }

    /// Checks an outcome's witness against this program.
    pub fn validates(&self, outcome: &LpOutcome) -> bool {
        match outcome {
            LpOutcome::Optimal { values, objective } => {
                self.is_feasible_point(values) && self.objective_value(values) == *objective
            }
            LpOutcome::Infeasible { farkas } => self.is_farkas_witness(farkas),
            LpOutcome::Unbounded { point, ray } => {
                self.is_feasible_point(point) && self.is_improving_ray(ray)
            }
        }
    }
}

struct Tableau {
    /// Constraint rows, `cols` entries each.
    t: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced costs `c_j − c_Bᵀ B⁻¹ A_j`.
    d: Vec<Rational>,
    z: Rational,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.t[r][c];
        for v in self.t[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.b[r] *= &inv;
        let prow = self.t[r].clone();
        let pb = self.b[r].clone();
        for i in 0..self.t.len() {
            if i == r || self.t[i][c].is_zero() {
                continue;
            }
            let f = self.t[i][c].clone();
            for (v, p) in self.t[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            self.b[i] -= &f * &pb;
        }
        if !self.d[c].is_zero() {
            let f = self.d[c].clone();
            for (v, p) in self.d.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            self.z += &f * &pb;
        }
        self.basis[r] = c;
    }

    /// Bland's rule over columns `0..eligible`. Returns the unbounded column, if any.
    fn optimize(&mut self, eligible: usize) -> Option<usize> {
        loop {
            let c = (0..eligible).find(|&j| self.d[j].is_positive())?;
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                if !self.t[i][c].is_positive() {
                    continue;
                }
                let ratio = &self.b[i] / &self.t[i][c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return Some(c),
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    fn primal(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (i, &j) in self.basis.iter().enumerate() {
            if j < n {
                x[j] = self.b[i].clone();
            }
        }
        x
    }
}

/// Solves `lp` exactly. Infeasibility is detected in phase one, whose final
/// simplex multipliers form the Farkas witness.
pub fn lp_solve(lp: &LinearProgram) -> Result<LpOutcome> {
    let n = lp.num_vars;
    let m = lp.rows.len();
    if lp.objective.len() != n || lp.rows.iter().any(|r| r.len() != n) || lp.rhs.len() != m {
        return Err(argument("malformed linear program"));
    }

    // Phase one: rows sign-normalized so b ≥ 0, one artificial per row, maximize −Σ artificials.
    let signs: Vec<Rational> = lp
        .rhs
        .iter()
        .map(|b| if b.is_negative() { -Rational::one() } else { Rational::one() })
        .collect();
    let cols = n + m;
    let mut t = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    for (i, sign) in signs.iter().enumerate() {
        let mut row: Vec<Rational> = lp.rows[i].iter().map(|a| a * sign).collect();
        row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        t.push(row);
        b.push(&lp.rhs[i] * sign);
    }
    let mut d = vec![Rational::zero(); cols];
    for j in 0..n {
        d[j] = t.iter().map(|row| row[j].clone()).sum();
    }
    let z = -b.iter().cloned().sum::<Rational>();
    let mut tab = Tableau { t, b, basis: (n..cols).collect(), d, z };
    if tab.optimize(n).is_some() {
        return Err(Error::Internal("phase one cannot be unbounded".into()));
    }

    if tab.z.is_negative() {
        // Reduced cost of artificial i is −1 − π_i.
        let farkas: Vec<Rational> = (0..m)
            .map(|i| (-Rational::one() - &tab.d[n + i]) * &signs[i])
            .collect();
        let outcome = LpOutcome::Infeasible { farkas };
        debug_assert!(lp.validates(&outcome));
        return Ok(outcome);
    }

    // Drive zero-level artificials out of the basis; rows where that is impossible are redundant.
    let mut keep = vec![true; m];
    for (r, kept) in keep.iter_mut().enumerate() {
        if tab.basis[r] < n {
            continue;
        }
        match (0..n).find(|&j| !tab.t[r][j].is_zero()) {
            Some(c) => tab.pivot(r, c),
            None => *kept = false,
        }
    }
    let mut t2 = Vec::new();
    let mut b2 = Vec::new();
    let mut basis2 = Vec::new();
    for (r, &kept) in keep.iter().enumerate() {
        if kept {
            t2.push(tab.t[r][..n].to_vec());
            b2.push(tab.b[r].clone());
            basis2.push(tab.basis[r]);
        }
    }

    // Phase two with the true objective.
    let mut d = lp.objective.clone();
    let mut z = Rational::zero();
    for (r, &j) in basis2.iter().enumerate() {
        let cj = &lp.objective[j];
        if cj.is_zero() {
            continue;
        }
        for (k, v) in t2[r].iter().enumerate() {
            if !v.is_zero() {
                d[k] -= cj * v;
            }
        }
        z += cj * &b2[r];
    }
    let mut tab = Tableau { t: t2, b: b2, basis: basis2, d, z };
    let outcome = match tab.optimize(n) {
        Some(c) => {
            let point = tab.primal(n);
            let mut ray = vec![Rational::zero(); n];
            ray[c] = Rational::one();
            for (i, &j) in tab.basis.iter().enumerate() {
                ray[j] = -tab.t[i][c].clone();
            }
            LpOutcome::Unbounded { point, ray }
        }
        None => LpOutcome::Optimal { values: tab.primal(n), objective: tab.z.clone() },
    };
    debug_assert!(lp.validates(&outcome));
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn simple_optimum() {
        let mut lp = LinearProgram::new(2);
        lp.add_row(ints(&[1, 1]), int(1)).unwrap();
        lp.set_objective(ints(&[1, 0])).unwrap();
        let out = lp_solve(&lp).unwrap();
        assert_eq!(out, LpOutcome::Optimal { values: ints(&[1, 0]), objective: int(1) });
    }

    #[test]
    fn negative_sum_is_infeasible() {
        let mut lp = LinearProgram::new(2);
        lp.add_row(ints(&[1, 1]), int(-1)).unwrap();
        let out = lp_solve(&lp).unwrap();
        assert!(matches!(out, LpOutcome::Infeasible { .. }));
        assert!(lp.validates(&out));
    }

    #[test]
    fn unbounded_ray() {
        let mut lp = LinearProgram::new(2);
        lp.add_row(ints(&[1, -1]), int(1)).unwrap();
        lp.set_objective(ints(&[0, 1])).unwrap();
        let out = lp_solve(&lp).unwrap();
        assert!(matches!(out, LpOutcome::Unbounded { .. }));
        assert!(lp.validates(&out));
    }

    #[test]
    fn redundant_and_degenerate_rows() {
        let mut lp = LinearProgram::new(3);
        lp.add_row(ints(&[1, 1, 1]), int(1)).unwrap();
        lp.add_row(ints(&[2, 2, 2]), int(2)).unwrap();
        lp.add_row(ints(&[1, -1, 0]), int(0)).unwrap();
        lp.set_objective(ints(&[1, 0, 0])).unwrap();
        let out = lp_solve(&lp).unwrap();
        assert_eq!(
            out,
            LpOutcome::Optimal { values: vec![rat(1, 2), rat(1, 2), int(0)], objective: rat(1, 2) }
        );
    }

    #[test]
    fn empty_program() {
        let lp = LinearProgram::new(0);
        assert_eq!(lp_solve(&lp).unwrap(), LpOutcome::Optimal { values: vec![], objective: int(0) });
        let mut lp = LinearProgram::new(1);
        lp.set_objective(ints(&[1])).unwrap();
        assert!(matches!(lp_solve(&lp).unwrap(), LpOutcome::Unbounded { .. }));
    }

    #[test]
    fn malformed_rows_are_rejected() {
        let mut lp = LinearProgram::new(2);
        assert!(lp.add_row(ints(&[1]), int(0)).is_err());
        assert!(lp.set_objective(ints(&[1, 2, 3])).is_err());
    }

    #[test]
    fn witness_checkers_reject_bad_witnesses() {
        let mut lp = LinearProgram::new(2);
        lp.add_row(ints(&[1, 1]), int(-1)).unwrap();
        assert!(!lp.is_farkas_witness(&ints(&[-1])));
        assert!(lp.is_farkas_witness(&ints(&[1])));
        assert!(!lp.is_feasible_point(&ints(&[-1, 0])));
    }
}
