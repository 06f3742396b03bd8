use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::problem::DecompositionProblem;
use super::tuples::{symmetric_tuple_count, IndexTuples};
use crate::error::{Error, Result};
use crate::geometry::{Face, Point};
use crate::lp::{assemble_fixed, check_certificate, lp_solve, BarycenterSystem, LpOutcome};
use crate::rational::{format_rational, Rational};

/// How tuples are scanned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SearchMode {
    /// Sequential scan; returns the lexicographically first feasible tuple.
    #[default]
    Deterministic,
    /// Concurrent scan on `jobs` threads (0 = all cores); any feasible tuple may win.
    Parallel { jobs: usize },
}

/// Points in capped faces whose weighted combination is the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    problem: DecompositionProblem,
    faces: Vec<Face>,
    mu: Vec<Vec<Rational>>,
    points: Vec<Point>,
    order_independent: bool,
}

impl Certificate {
    /// Assembles a certificate from a face assignment and convex coefficients.
    /// The result is not checked; call [`Certificate::verify`].
    pub fn new(problem: DecompositionProblem, faces: Vec<Face>, mu: Vec<Vec<Rational>>) -> Result<Self> {
        let system = assemble_fixed(problem.polytope(), &faces, problem.weights(), problem.target())?;
        let points = system.realized_points(&mu)?;
        Ok(Self { problem, faces, mu, points, order_independent: false })
    }

    pub fn problem(&self) -> &DecompositionProblem {
        &self.problem
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn mu(&self) -> &[Vec<Rational>] {
        &self.mu
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Set when the certificate came from a parallel scan, where any feasible tuple may win.
    pub fn order_independent(&self) -> bool {
        self.order_independent
    }

    pub fn system(&self) -> Result<BarycenterSystem> {
        assemble_fixed(self.problem.polytope(), &self.faces, self.problem.weights(), self.problem.target())
    }

    /// Face caps hold, each face really is a face of the polytope, and the
    /// coefficients pass [`check_certificate`].
    pub fn verify(&self) -> bool {
        let polytope = self.problem.polytope();
        let caps_ok = self.faces.iter().zip(self.problem.dims()).all(|(f, &k)| {
            f.dim() <= k
                && polytope
                    .faces_of_dim(f.dim())
                    .is_ok_and(|list| list.binary_search(f).is_ok())
        });
        if !caps_ok || self.faces.len() != self.problem.num_points() {
            return false;
        }
        let Ok(system) = self.system() else { return false };
        let points_ok = system.realized_points(&self.mu).is_ok_and(|p| p == self.points);
        points_ok && check_certificate(&system, &self.mu).unwrap_or(false)
    }
}

/// The Farkas witness refuting one face tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleWitness {
    /// Per position, the index into that position's face list.
    pub tuple: Vec<usize>,
    pub farkas: Vec<Rational>,
}

/// Exhaustive proof that no face tuple admits a solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    tuple_count: u64,
    witnesses: Vec<TupleWitness>,
    face_counts: BTreeMap<usize, usize>,
}

impl Refutation {
    pub fn tuple_count(&self) -> u64 {
        self.tuple_count
    }

    pub fn witnesses(&self) -> &[TupleWitness] {
        &self.witnesses
    }

    /// Completeness record: number of faces of each searched dimension.
    pub fn face_counts(&self) -> &BTreeMap<usize, usize> {
        &self.face_counts
    }

    /// Re-enumerates the tuples of `problem` and checks, by arithmetic only,
    /// that each one carries a valid Farkas witness.
    pub fn verify(&self, problem: &DecompositionProblem) -> bool {
        let lists = problem.face_lists();
        let sizes: Vec<usize> = lists.iter().map(|l| l.len()).collect();
        let groups = problem.symmetry_groups();
        if symmetric_tuple_count(&sizes, &groups) != u128::from(self.tuple_count)
            || self.witnesses.len() as u64 != self.tuple_count
            || face_counts(problem) != self.face_counts
        {
            return false;
        }
        IndexTuples::new(sizes, &groups).zip(&self.witnesses).all(|(t, w)| {
            if t != w.tuple {
                return false;
            }
            let faces: Vec<Face> = t.iter().zip(&lists).map(|(&i, l)| l[i].clone()).collect();
            assemble_fixed(problem.polytope(), &faces, problem.weights(), problem.target())
                .is_ok_and(|s| s.to_lp().is_farkas_witness(&w.farkas))
        })
    }

    /// SHA-256 over the canonical text of every tuple and witness.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        for w in &self.witnesses {
            let tuple: Vec<String> = w.tuple.iter().map(usize::to_string).collect();
            let farkas: Vec<String> = w.farkas.iter().map(format_rational).collect();
            hasher.update(format!("{}:{}\n", tuple.join(","), farkas.join(",")).as_bytes());
        }
        hex::encode(hasher.finalize())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Certificate(Certificate),
    Refutation(Refutation),
}

impl Decomposition {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Decomposition::Certificate(c) => Some(c),
            Decomposition::Refutation(_) => None,
        }
    }

    pub fn refutation(&self) -> Option<&Refutation> {
        match self {
            Decomposition::Refutation(r) => Some(r),
            Decomposition::Certificate(_) => None,
        }
    }

    pub fn is_certificate(&self) -> bool {
        matches!(self, Decomposition::Certificate(_))
    }
}

fn face_counts(problem: &DecompositionProblem) -> BTreeMap<usize, usize> {
    problem
        .dims()
        .iter()
        .map(|&k| (k, problem.polytope().faces_of_dim(k).map_or(0, <[Face]>::len)))
        .collect()
}

enum TupleOutcome {
    Feasible(Vec<Vec<Rational>>),
    Infeasible(Vec<Rational>),
    Skipped,
}

fn evaluate(problem: &DecompositionProblem, faces: &[Face]) -> Result<TupleOutcome> {
    let system = assemble_fixed(problem.polytope(), faces, problem.weights(), problem.target())?;
    match lp_solve(&system.to_lp())? {
        LpOutcome::Optimal { values, .. } => Ok(TupleOutcome::Feasible(system.mu_from_values(&values))),
        LpOutcome::Infeasible { farkas } => Ok(TupleOutcome::Infeasible(farkas)),
        LpOutcome::Unbounded { .. } => Err(Error::Internal("feasibility program reported unbounded".into())),
    }
}

/// Decides the problem with a sequential scan.
pub fn decompose(problem: &DecompositionProblem) -> Result<Decomposition> {
    decompose_with(problem, SearchMode::Deterministic)
}

/// Searches every face tuple (positions range over faces of dimension exactly
/// their cap, which suffices because lower-dimensional faces nest inside
/// them). Returns a certificate for a feasible tuple, or a refutation holding
/// one Farkas witness per tuple.
pub fn decompose_with(problem: &DecompositionProblem, mode: SearchMode) -> Result<Decomposition> {
    let lists = problem.face_lists();
    let sizes: Vec<usize> = lists.iter().map(|l| l.len()).collect();
    let groups = problem.symmetry_groups();
    let resolve = |t: &[usize]| -> Vec<Face> { t.iter().zip(&lists).map(|(&i, l)| l[i].clone()).collect() };
    let tuples = IndexTuples::new(sizes, &groups);

    let certificate = |t: &[usize], mu: Vec<Vec<Rational>>, order_independent: bool| -> Result<Decomposition> {
        let mut cert = Certificate::new(problem.clone(), resolve(t), mu)?;
        cert.order_independent = order_independent;
        log::debug!("feasible tuple {t:?}");
        Ok(Decomposition::Certificate(cert))
    };

    let mut witnesses = Vec::new();
    match mode {
        SearchMode::Deterministic => {
            for t in tuples {
                match evaluate(problem, &resolve(&t))? {
                    TupleOutcome::Feasible(mu) => return certificate(&t, mu, false),
                    TupleOutcome::Infeasible(farkas) => witnesses.push(TupleWitness { tuple: t, farkas }),
                    TupleOutcome::Skipped => unreachable!(),
                }
            }
        }
        SearchMode::Parallel { jobs } => {
            let all: Vec<Vec<usize>> = tuples.collect();
            let found = AtomicBool::new(false);
            let run = || -> Result<Vec<TupleOutcome>> {
                all.par_iter()
                    .map(|t| {
                        if found.load(Ordering::Relaxed) {
                            return Ok(TupleOutcome::Skipped);
                        }
                        let out = evaluate(problem, &resolve(t))?;
                        if matches!(out, TupleOutcome::Feasible(_)) {
                            found.store(true, Ordering::Relaxed);
                        }
                        Ok(out)
                    })
                    .collect()
            };
            let outcomes = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
                .install(run)?;
            let mut outcomes: Vec<(Vec<usize>, TupleOutcome)> = all.into_iter().zip(outcomes).collect();
            if let Some(pos) = outcomes.iter().position(|(_, o)| matches!(o, TupleOutcome::Feasible(_))) {
                let (t, o) = outcomes.swap_remove(pos);
                let TupleOutcome::Feasible(mu) = o else { unreachable!() };
                return certificate(&t, mu, true);
            }
            for (t, o) in outcomes {
                match o {
                    TupleOutcome::Infeasible(farkas) => witnesses.push(TupleWitness { tuple: t, farkas }),
                    _ => return Err(Error::Internal("tuple skipped without a feasible result".into())),
                }
            }
        }
    }
    log::debug!("refuted {} tuples", witnesses.len());
    Ok(Decomposition::Refutation(Refutation {
        tuple_count: witnesses.len() as u64,
        witnesses,
        face_counts: face_counts(problem),
    }))
}
