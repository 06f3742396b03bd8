//! Reproducibility suite: ten exact checks, each with a runtime budget.
//!
//! Every check returns a [`CriterionResult`] carrying what was expected, what
//! was observed and how long it took. A check passes only if its exact
//! comparisons hold and it finishes within its budget.

use std::fmt;
use std::time::{Duration, Instant};

use log::info;

use crate::error::{Error, Result};
use crate::generators::{forward_feasible_instance, random_interior_point, random_polytope, random_small_lp, rng};
use crate::geometry::{Face, Point, Polytope};
use crate::instances::{
    balanced_limit_schedule, bound_certificate, coeff_bound, edge_split_certificate, equal_weight_vector,
    lemma_target, lifted_decompose, prop_a_instance, prop_b_instance, schedule_refutation, simplex_barycenter,
    weight_family, Schedule, WeightVector,
};
use crate::lp::{assemble_fixed, lp_solve, LpOutcome};
use crate::oracle::{brute_force_lp, OracleOutcome};
use crate::rational::{format_all, rat};
use crate::search::{
    decompose, equal_weights, max_weight_probe, symmetric_tuple_count, verify_external, Decomposition,
    DecompositionProblem,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Scale {
    /// Only the `(n, k) ≤ (2, 1)` cases and small samples.
    Smoke,
    #[default]
    Full,
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub expected: String,
    pub observed: String,
    /// The exact comparisons held (independent of the time budget).
    pub correct: bool,
    pub runtime: Duration,
    pub limit: Duration,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.correct && self.runtime <= self.limit
    }

    pub const CSV_HEADER: &'static str = "criterion,expected,observed,status,runtime";

    pub fn csv_row(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
        format!(
            "{},{},{},{},{:.3}",
            quote(&format!("{} {}", self.id, self.name)),
            quote(&self.expected),
            quote(&self.observed),
            if self.passed() { "pass" } else { "fail" },
            self.runtime.as_secs_f64()
        )
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() {
            "PASS"
        } else if self.correct {
            "FAIL (over time budget)"
        } else {
            "FAIL"
        };
        write!(
            f,
            "[{status}] {:>2} {}: expected {}; observed {} ({:.2}s, budget {}s)",
            self.id,
            self.name,
            self.expected,
            self.observed,
            self.runtime.as_secs_f64(),
            self.limit.as_secs()
        )
    }
}

/// Runs a check body, turning errors into a failed result.
fn timed(
    id: u8,
    name: &'static str,
    expected: String,
    limit_secs: u64,
    body: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionResult {
    let start = Instant::now();
    let (correct, observed) = match body() {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    let result = CriterionResult {
        id,
        name,
        expected,
        observed,
        correct,
        runtime: start.elapsed(),
        limit: Duration::from_secs(limit_secs),
    };
    info!("{result}");
    result
}

fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}

fn certificate_of(result: Decomposition) -> Result<crate::search::Certificate> {
    match result {
        Decomposition::Certificate(c) => Ok(c),
        Decomposition::Refutation(r) => Err(internal(format!("refuted over {} tuples", r.tuple_count()))),
    }
}

/// Uniform caps `k`, equal weights, barycenter of `Δ^{nk}`: always solvable.
pub fn skeleton_barycenters(scale: Scale) -> CriterionResult {
    let cases: &[(usize, usize)] = match scale {
        Scale::Smoke => &[(2, 1)],
        Scale::Full => &[(2, 1), (3, 1), (4, 1), (2, 2), (3, 2)],
    };
    let per_case = Duration::from_secs(60);
    timed(
        1,
        "uniform skeleton barycenter on simplices",
        format!("certificate for (n,k) in {cases:?}, each < 60s; Δ^6 has 35 2-faces, 7770 symmetric triples"),
        60 * cases.len() as u64,
        || {
            let mut notes = Vec::new();
            let mut ok = true;
            for &(n, k) in cases {
                let start = Instant::now();
                let d = n * k;
                let problem = DecompositionProblem::with_equal_weights(
                    Polytope::standard_simplex(d),
                    simplex_barycenter(d),
                    vec![k; n],
                )?;
                let faces = problem.polytope().faces_of_dim(k)?.len();
                let tuples = symmetric_tuple_count(&vec![faces; n], &vec![0; n]);
                let cert = certificate_of(decompose(&problem)?)?;
                let elapsed = start.elapsed();
                ok &= cert.verify() && elapsed <= per_case;
                if (n, k) == (3, 2) {
                    ok &= faces == 35 && tuples == 7770;
                }
                notes.push(format!("({n},{k}): {faces} faces, {tuples} tuples, {:.2}s", elapsed.as_secs_f64()));
            }
            Ok((ok, notes.join("; ")))
        },
    )
}

/// Mixed `k`/`(k+1)` skeleton barycenters on random 3-polytopes via the lift.
pub fn mixed_skeleton_lift(scale: Scale) -> CriterionResult {
    let count = match scale {
        Scale::Smoke => 3,
        Scale::Full => 20,
    };
    timed(
        2,
        "mixed skeleton barycenter via product lift",
        format!("{count} random 3-polytopes, n=2, k=1: one point in an edge, one in a face of dim <= 2"),
        120,
        || {
            let mut rng = rng(0x5eed_0002);
            let mut ok_count = 0;
            for _ in 0..count {
                let polytope = random_polytope(&mut rng, 3, 8);
                let p = random_interior_point(&mut rng, &polytope);
                let cert = lifted_decompose(&polytope, &p, 2, 1)?;
                let problem = DecompositionProblem::with_equal_weights(polytope, p, vec![1, 2])?;
                let ok = cert.verify()
                    && cert.faces()[0].dim() <= 1
                    && cert.faces().iter().all(|f| f.dim() <= 2)
                    && verify_external(&problem, cert.points())?;
                ok_count += usize::from(ok);
            }
            Ok((ok_count == count, format!("{ok_count}/{count} verified certificates")))
        },
    )
}

/// One point confined to a `(k−1)`-face makes the simplex barycenter unreachable.
pub fn low_face_counterexample(scale: Scale) -> CriterionResult {
    let cases: &[(usize, usize, usize)] = match scale {
        Scale::Smoke => &[(2, 1, 2)],
        Scale::Full => &[(2, 1, 2), (3, 1, 3), (2, 2, 4)],
    };
    let per_case = Duration::from_secs(10);
    timed(
        3,
        "one point in a (k-1)-face is infeasible",
        format!("refutation with valid witnesses for (n,k,d) in {cases:?}, each < 10s"),
        10 * cases.len() as u64,
        || {
            let mut notes = Vec::new();
            let mut ok = true;
            for &(n, k, d) in cases {
                let start = Instant::now();
                let problem = prop_a_instance(n, k, d)?;
                match decompose(&problem)? {
                    Decomposition::Refutation(r) => {
                        ok &= r.verify(&problem) && start.elapsed() <= per_case;
                        notes.push(format!("({n},{k},{d}): refuted, {} tuples", r.tuple_count()));
                    }
                    Decomposition::Certificate(_) => {
                        ok = false;
                        notes.push(format!("({n},{k},{d}): certificate"));
                    }
                }
            }
            Ok((ok, notes.join("; ")))
        },
    )
}

/// Odometer over `base^len` raw index tuples.
fn raw_tuples(base: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = base.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = code % base;
            code /= base;
        }
        t
    })
}

/// Raw scan for the vertex-heavy target: every ordered choice of `n − d + 1`
/// vertices of `Δ^d`, the other `d − 1` points free in `Δ^d`, one LP each.
/// Returns the number of assignments examined, or `None` if any is feasible
/// or lacks a valid Farkas witness.
pub fn vertex_heavy_scan(d: usize, n: usize) -> Result<Option<usize>> {
    let simplex = Polytope::standard_simplex(d);
    let target = lemma_target(d, n)?;
    let vertices: Vec<Face> = simplex.faces_of_dim(0)?.to_vec();
    let fixed = n - d + 1;
    let weights = equal_weights(n);
    let mut examined = 0;
    for choice in raw_tuples(vertices.len(), fixed) {
        let mut faces: Vec<Face> = choice.iter().map(|&i| vertices[i].clone()).collect();
        faces.extend(std::iter::repeat_n(simplex.full_face(), d - 1));
        let lp = assemble_fixed(&simplex, &faces, &weights, &target)?.to_lp();
        match lp_solve(&lp)? {
            LpOutcome::Infeasible { farkas } if lp.is_farkas_witness(&farkas) => examined += 1,
            _ => return Ok(None),
        }
    }
    Ok(Some(examined))
}

pub fn vertex_heavy_target(scale: Scale) -> CriterionResult {
    let cases: &[(usize, usize)] = match scale {
        Scale::Smoke => &[(1, 2), (1, 3)],
        Scale::Full => &[(1, 2), (1, 3), (2, 3), (3, 4)],
    };
    let per_case = Duration::from_secs(10);
    timed(
        4,
        "no barycenter with n-d+1 vertex points",
        format!("every vertex choice infeasible for (d,n) in {cases:?}, each < 10s"),
        10 * cases.len() as u64,
        || {
            let mut notes = Vec::new();
            let mut ok = true;
            for &(d, n) in cases {
                let start = Instant::now();
                let raw = vertex_heavy_scan(d, n)?;
                let mut dims = vec![0; n - d + 1];
                dims.extend(std::iter::repeat_n(d, d - 1));
                let problem =
                    DecompositionProblem::with_equal_weights(Polytope::standard_simplex(d), lemma_target(d, n)?, dims)?;
                let refuted = decompose(&problem)?.refutation().is_some_and(|r| r.verify(&problem));
                ok &= raw.is_some() && refuted && start.elapsed() <= per_case;
                let raw = raw.map_or("feasible".to_string(), |c| format!("{c} raw assignments infeasible"));
                notes.push(format!("({d},{n}): {raw}"));
            }
            Ok((ok, notes.join("; ")))
        },
    )
}

/// On `Δ^2 × Δ^1` one extra uncapped slot is exactly what is missing.
pub fn product_counterexample(_scale: Scale) -> CriterionResult {
    timed(
        5,
        "product-of-simplices counterexample and its relaxation",
        "dims (1,1) refuted; dims (1,2) certificate".into(),
        10,
        || {
            let problem = prop_b_instance(2, 1, 1)?;
            let refuted = match decompose(&problem)? {
                Decomposition::Refutation(r) => r.verify(&problem).then_some(r.tuple_count()),
                Decomposition::Certificate(_) => None,
            };
            let relaxed = DecompositionProblem::new(
                problem.polytope().clone(),
                problem.target().clone(),
                vec![1, 2],
                problem.weights().to_vec(),
            )?;
            let cert = decompose(&relaxed)?.certificate().is_some_and(|c| c.verify());
            let observed = format!(
                "dims (1,1): {}; dims (1,2): {}",
                refuted.map_or("not refuted".to_string(), |t| format!("refuted over {t} tuples")),
                if cert { "certificate" } else { "no certificate" }
            );
            Ok((refuted.is_some() && cert, observed))
        },
    )
}

pub fn coefficient_bound_tightness(scale: Scale) -> CriterionResult {
    let (cases, max_nk): (&[(usize, usize)], usize) = match scale {
        Scale::Smoke => (&[(2, 1)], 2),
        Scale::Full => (&[(2, 1), (3, 1), (2, 2)], 5),
    };
    timed(
        6,
        "largest weight equals (k+1)/(nk+1) on simplices",
        format!("probe = (k+1)/(nk+1) for {cases:?}; bound functional valid for n,k <= {max_nk}"),
        60,
        || {
            let mut notes = Vec::new();
            let mut ok = true;
            for &(n, k) in cases {
                let d = n * k;
                let probe =
                    max_weight_probe(&Polytope::standard_simplex(d), &simplex_barycenter(d), &vec![k; n], 0)?;
                let value = probe.map(|p| p.value);
                ok &= value.as_ref() == Some(&coeff_bound(n, k));
                notes.push(format!("({n},{k}): {}", value.map_or("none".into(), |v| v.to_string())));
            }
            let mut valid = 0;
            let mut total = 0;
            for n in 2..=max_nk {
                for k in 1..=max_nk {
                    total += 1;
                    valid += usize::from(bound_certificate(n, k)?.validate()?);
                }
            }
            ok &= valid == total;
            notes.push(format!("{valid}/{total} bound certificates valid"));
            Ok((ok, notes.join("; ")))
        },
    )
}

pub fn two_point_collapse(_scale: Scale) -> CriterionResult {
    timed(
        7,
        "two-point weights on symmetric polygons",
        "square 1/2, symmetric octagon 1/2, triangle 2/3".into(),
        10,
        || {
            let square = Polytope::canonicalize(&[
                Point::from_ints(&[0, 0]),
                Point::from_ints(&[1, 0]),
                Point::from_ints(&[0, 1]),
                Point::from_ints(&[1, 1]),
            ])?;
            let center = Point::new(vec![rat(1, 2), rat(1, 2)]);
            let octagon = Polytope::rational_circle_polygon(8, true)?;
            let cases = [
                ("square", square, center, rat(1, 2)),
                ("octagon", octagon, Point::origin(2), rat(1, 2)),
                ("triangle", Polytope::standard_simplex(2), simplex_barycenter(2), rat(2, 3)),
            ];
            let mut notes = Vec::new();
            let mut ok = true;
            for (name, polytope, target, expected) in cases {
                let value = max_weight_probe(&polytope, &target, &[1, 1], 0)?.map(|p| p.value);
                ok &= value.as_ref() == Some(&expected);
                notes.push(format!("{name} {}", value.map_or("none".into(), |v| v.to_string())));
            }
            Ok((ok, notes.join(", ")))
        },
    )
}

pub fn unbalanced_edge_weights(scale: Scale) -> CriterionResult {
    let randoms = match scale {
        Scale::Smoke => 0,
        Scale::Full => 5,
    };
    timed(
        8,
        "weights (1/2,1/4,1/4) on the 1-skeleton",
        format!("verified edge certificates on Δ^3 and {randoms} random 3-polytopes"),
        30,
        || {
            let expected = weight_family(1, 1, 1)?;
            let mut rng = rng(0x5eed_0008);
            let mut cases = vec![(Polytope::standard_simplex(3), simplex_barycenter(3))];
            for _ in 0..randoms {
                let polytope = random_polytope(&mut rng, 3, 8);
                let p = random_interior_point(&mut rng, &polytope);
                cases.push((polytope, p));
            }
            let mut verified = 0;
            for (polytope, p) in &cases {
                let cert = edge_split_certificate(polytope, p, 1, 1, 1)?;
                let on_edges = DecompositionProblem::new(
                    polytope.clone(),
                    p.clone(),
                    vec![1; 3],
                    expected.entries().to_vec(),
                )?;
                let ok = cert.verify()
                    && cert.problem().weights() == expected.entries()
                    && verify_external(&on_edges, cert.points())?;
                verified += usize::from(ok);
            }
            let observed = format!(
                "weights ({}); {verified}/{} verified",
                format_all(expected.entries()).join(","),
                cases.len()
            );
            Ok((verified == cases.len(), observed))
        },
    )
}

pub fn limit_schedule(_scale: Scale) -> CriterionResult {
    timed(
        9,
        "unbalanced weights are excluded for large k",
        "(2/3,1/3) excluded from k=2, refuted over 100 tuples on Δ^4; balanced vectors never excluded".into(),
        30,
        || {
            let weights = WeightVector::new(vec![rat(2, 3), rat(1, 3)])?;
            let schedule = balanced_limit_schedule(&weights);
            let refutation = schedule_refutation(&weights, 2, 10_000)?;
            let refuted = refutation
                .as_ref()
                .and_then(Decomposition::refutation)
                .map(|r| r.tuple_count());
            let problem = DecompositionProblem::new(
                Polytope::standard_simplex(4),
                simplex_barycenter(4),
                vec![2, 2],
                weights.entries().to_vec(),
            )?;
            let witnesses_ok = refutation
                .as_ref()
                .and_then(Decomposition::refutation)
                .is_some_and(|r| r.verify(&problem));
            let balanced = (1..=5)
                .map(equal_weight_vector)
                .collect::<Result<Vec<_>>>()?
                .iter()
                .all(|w| balanced_limit_schedule(w) == Schedule::Balanced);
            let ok = schedule == Schedule::ExcludedFrom(2) && refuted == Some(100) && witnesses_ok && balanced;
            Ok((ok, format!("schedule {schedule:?}; refuted tuples {refuted:?}; balanced -> Balanced: {balanced}")))
        },
    )
}

fn oracle_agrees(outcome: &LpOutcome, oracle: &OracleOutcome) -> bool {
    match (outcome, oracle) {
        (LpOutcome::Optimal { objective, .. }, OracleOutcome::Optimal(v)) => objective == v,
        (LpOutcome::Infeasible { .. }, OracleOutcome::Infeasible) => true,
        (LpOutcome::Unbounded { .. }, OracleOutcome::Unbounded) => true,
        _ => false,
    }
}

pub fn solver_trust(scale: Scale) -> CriterionResult {
    let (lps, instances) = match scale {
        Scale::Smoke => (10, 10),
        Scale::Full => (50, 100),
    };
    timed(
        10,
        "solver agrees with brute force; search is complete",
        format!("{lps}/{lps} LPs agree with basic-solution enumeration; {instances}/{instances} forward instances solved"),
        60,
        || {
            let mut rng = rng(0x5eed_0010);
            let mut agree = 0;
            for _ in 0..lps {
                let lp = random_small_lp(&mut rng, 6, 4);
                let outcome = lp_solve(&lp)?;
                agree += usize::from(lp.validates(&outcome) && oracle_agrees(&outcome, &brute_force_lp(&lp)));
            }
            let mut solved = 0;
            for _ in 0..instances {
                let inst = forward_feasible_instance(&mut rng);
                let accepted = verify_external(&inst.problem, &inst.points)?;
                let cert = decompose(&inst.problem)?.certificate().is_some_and(|c| c.verify());
                solved += usize::from(accepted && cert);
            }
            Ok((
                agree == lps && solved == instances,
                format!("{agree}/{lps} LPs agree; {solved}/{instances} forward instances solved"),
            ))
        },
    )
}

pub type Check = fn(Scale) -> CriterionResult;

pub const CHECKS: [Check; 10] = [
    skeleton_barycenters,
    mixed_skeleton_lift,
    low_face_counterexample,
    vertex_heavy_target,
    product_counterexample,
    coefficient_bound_tightness,
    two_point_collapse,
    unbalanced_edge_weights,
    limit_schedule,
    solver_trust,
];

pub fn run_all(scale: Scale) -> Vec<CriterionResult> {
    CHECKS.iter().map(|check| check(scale)).collect()
}

pub fn to_csv(results: &[CriterionResult]) -> String {
    let mut out = String::from(CriterionResult::CSV_HEADER);
    out.push('\n');
    for r in results {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raw_tuples_cover_every_assignment() {
        let all: Vec<Vec<usize>> = raw_tuples(3, 2).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[5], vec![1, 2]);
    }

    #[test]
    fn vertex_heavy_scan_counts() {
        assert_eq!(vertex_heavy_scan(1, 2).unwrap(), Some(4));
        assert_eq!(vertex_heavy_scan(2, 3).unwrap(), Some(9));
    }

    #[test]
    fn csv_quotes_fields() {
        let r = CriterionResult {
            id: 1,
            name: "x",
            expected: "a, \"b\"".into(),
            observed: "c".into(),
            correct: true,
            runtime: Duration::from_millis(5),
            limit: Duration::from_secs(1),
        };
        assert_eq!(r.csv_row(), "\"1 x\",\"a, \"\"b\"\"\",\"c\",pass,0.005");
    }

    #[test]
    fn smoke_suite_passes() {
        for r in run_all(Scale::Smoke) {
            assert!(r.correct, "{r}");
        }
    }
}
