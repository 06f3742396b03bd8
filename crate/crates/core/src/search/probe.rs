use rayon::prelude::*;

use super::decompose::SearchMode;
use super::tuples::IndexTuples;
use crate::error::{argument, ensure_dim, Error, Result};
use crate::geometry::{Face, Point, Polytope};
use crate::lp::{assemble_probe, lp_solve, LpOutcome};
use crate::rational::Rational;

/// The largest weight point `probe_index` can carry over all face tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeResult {
    pub value: Rational,
    /// A tuple attaining the value (the lexicographically first in deterministic mode).
    pub faces: Vec<Face>,
    /// Optimal weights on that tuple; they sum to 1.
    pub weights: Vec<Rational>,
    /// Unnormalized coefficients: `Σ_j mu[i][j] = weights[i]`.
    pub mu: Vec<Vec<Rational>>,
    pub tuples_examined: u64,
}

pub fn max_weight_probe(
    polytope: &Polytope,
    target: &Point,
    dims: &[usize],
    probe_index: usize,
) -> Result<Option<ProbeResult>> {
    max_weight_probe_with(polytope, target, dims, probe_index, SearchMode::Deterministic)
}

/// Maximizes `λ_{probe_index}` over every face tuple with free nonnegative
/// weights summing to one. `None` when no tuple admits any weight vector.
///
/// Non-probe positions with equal caps are interchangeable and enumerated
/// as multisets.
pub fn max_weight_probe_with(
    polytope: &Polytope,
    target: &Point,
    dims: &[usize],
    probe_index: usize,
    mode: SearchMode,
) -> Result<Option<ProbeResult>> {
    ensure_dim(polytope.ambient_dim(), target.dim())?;
    if probe_index >= dims.len() {
        return Err(argument(format!(
            "probe index {probe_index} out of range for {} points",
            dims.len()
        )));
    }
    if !polytope.contains(target)? {
        return Err(Error::Precondition(format!("target {target} lies outside the polytope")));
    }
    let dims: Vec<usize> = dims.iter().map(|&k| k.min(polytope.dim())).collect();
    let lists: Vec<&[Face]> = dims.iter().map(|&k| polytope.faces_of_dim(k).expect("clamped")).collect();
    let groups: Vec<usize> = (0..dims.len())
        .map(|i| {
            if i == probe_index {
                return i;
            }
            (0..i)
                .find(|&j| j != probe_index && dims[j] == dims[i])
                .unwrap_or(i)
        })
        .collect();
    let tuples: Vec<Vec<usize>> = IndexTuples::new(lists.iter().map(|l| l.len()).collect(), &groups).collect();
    let examined = tuples.len() as u64;

    let solve = |t: &Vec<usize>| -> Result<Option<ProbeResult>> {
        let faces: Vec<Face> = t.iter().zip(&lists).map(|(&i, l)| l[i].clone()).collect();
        let system = assemble_probe(polytope, &faces, probe_index, target)?;
        match lp_solve(&system.to_lp())? {
            LpOutcome::Optimal { values, objective } => Ok(Some(ProbeResult {
                value: objective,
                weights: system.weights_from_values(&values),
                mu: system.mu_from_values(&values),
                faces,
                tuples_examined: examined,
            })),
            LpOutcome::Infeasible { .. } => Ok(None),
            LpOutcome::Unbounded { .. } => Err(Error::Internal("probe weight is bounded by 1".into())),
        }
    };
    // Keep the first tuple attaining the maximum.
    let better = |best: Option<ProbeResult>, next: Option<ProbeResult>| match (best, next) {
        (None, n) => n,
        (b, None) => b,
        (Some(b), Some(n)) => Some(if n.value > b.value { n } else { b }),
    };

    match mode {
        SearchMode::Deterministic => {
            let mut best = None;
            for t in &tuples {
                best = better(best, solve(t)?);
            }
            Ok(best)
        }
        SearchMode::Parallel { jobs } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
            let results: Vec<Option<ProbeResult>> =
                pool.install(|| tuples.par_iter().map(solve).collect::<Result<_>>())?;
            Ok(results.into_iter().fold(None, better))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::check_certificate;
    use crate::rational::{int, rat};

    #[test]
    fn triangle_edges() {
        let t = Polytope::standard_simplex(2);
        let bary = Point::new(vec![rat(1, 3); 3]);
        let r = max_weight_probe(&t, &bary, &[1, 1], 0).unwrap().unwrap();
        assert_eq!(r.value, rat(2, 3));
        assert_eq!(r.weights.iter().sum::<Rational>(), int(1));
        let sys = assemble_probe(&t, &r.faces, 0, &bary).unwrap();
        assert!(check_certificate(&sys, &r.mu).unwrap());
    }

    #[test]
    fn whole_polytope_probe_is_one() {
        let t = Polytope::standard_simplex(2);
        let p = Point::new(vec![rat(1, 2), rat(1, 4), rat(1, 4)]);
        assert_eq!(max_weight_probe(&t, &p, &[2], 0).unwrap().unwrap().value, int(1));
    }

    #[test]
    fn no_tuple_when_every_face_misses() {
        // A single vertex can never average to an interior point.
        let t = Polytope::standard_simplex(2);
        let bary = Point::new(vec![rat(1, 3); 3]);
        assert_eq!(max_weight_probe(&t, &bary, &[0], 0).unwrap(), None);
    }

    #[test]
    fn errors() {
        let t = Polytope::standard_simplex(2);
        let bary = Point::new(vec![rat(1, 3); 3]);
        assert!(max_weight_probe(&t, &bary, &[1, 1], 2).is_err());
        assert!(matches!(
            max_weight_probe(&t, &Point::from_ints(&[2, -1, 0]), &[1, 1], 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn parallel_probe_matches() {
        let t = Polytope::standard_simplex(3);
        let bary = Point::new(vec![rat(1, 4); 4]);
        let seq = max_weight_probe(&t, &bary, &[1, 1, 1], 0).unwrap().unwrap();
        let par = max_weight_probe_with(&t, &bary, &[1, 1, 1], 0, SearchMode::Parallel { jobs: 3 }).unwrap().unwrap();
        assert_eq!(seq.value, rat(1, 2));
        assert_eq!(seq.value, par.value);
    }
}
