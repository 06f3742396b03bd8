//! JSON problem and report files.
//!
//! Every rational travels as a string (`"3/7"`, `"-2"`), never as a JSON
//! number. Face vertex indices in reports refer to the canonical vertex order
//! of the problem's polytope, which is what [`ProblemFile::from_problem`] writes.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{argument, Error, Result};
use crate::geometry::{Face, Point, Polytope};
use crate::lp::{assemble_fixed, check_certificate};
use crate::rational::{format_all, parse_all, Rational};
use crate::search::{
    equal_weights, symmetric_tuple_count, Decomposition, DecompositionProblem, ProbeResult, SearchMode,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Decompose,
    Probe,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<String>>,
    pub target: Vec<String>,
    pub dims: Vec<usize>,
    /// Empty means equal weights.
    #[serde(default)]
    pub weights: Vec<String>,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe_index: Option<usize>,
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files serialize")
    }

    pub fn from_problem(problem: &DecompositionProblem) -> Self {
        let polytope = problem.polytope();
        Self {
            ambient_dim: polytope.ambient_dim(),
            vertices: polytope.vertices().iter().map(Point::to_strings).collect(),
            target: problem.target().to_strings(),
            dims: problem.requested_dims().to_vec(),
            weights: format_all(problem.weights()),
            mode: Mode::Decompose,
            probe_index: None,
        }
    }

    /// A probe request over the given polytope, target and caps.
    pub fn probe(polytope: &Polytope, target: &Point, dims: &[usize], probe_index: usize) -> Self {
        Self {
            ambient_dim: polytope.ambient_dim(),
            vertices: polytope.vertices().iter().map(Point::to_strings).collect(),
            target: target.to_strings(),
            dims: dims.to_vec(),
            weights: Vec::new(),
            mode: Mode::Probe,
            probe_index: Some(probe_index),
        }
    }

    /// Parses and canonicalizes the vertices and parses the target.
    pub fn geometry(&self) -> Result<(Polytope, Point)> {
        if self.vertices.is_empty() {
            return Err(argument("vertex list is empty"));
        }
        let mut points = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            if v.len() != self.ambient_dim {
                return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
            }
            points.push(Point::new(parse_all(v)?));
        }
        if self.target.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: self.target.len() });
        }
        let target = Point::new(parse_all(&self.target)?);
        Ok((Polytope::canonicalize(&points)?, target))
    }

    pub fn parsed_weights(&self) -> Result<Vec<Rational>> {
        if self.weights.is_empty() {
            Ok(equal_weights(self.dims.len()))
        } else {
            parse_all(&self.weights)
        }
    }

    pub fn to_problem(&self) -> Result<DecompositionProblem> {
        let (polytope, target) = self.geometry()?;
        DecompositionProblem::new(polytope, target, self.dims.clone(), self.parsed_weights()?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Certificate,
    Refutation,
    Probe,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    /// Vertex indices of each point's face.
    pub faces: Vec<Vec<usize>>,
    pub face_dims: Vec<usize>,
    pub mu: Vec<Vec<String>>,
    pub points: Vec<Vec<String>>,
    pub weights: Vec<String>,
    pub order_independent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationReport {
    pub tuple_count: u64,
    pub witness_digest: String,
    /// Number of faces of each searched dimension.
    pub face_counts: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub index: usize,
    /// `None` when no tuple admits any weights.
    pub value: Option<String>,
    pub faces: Vec<Vec<usize>>,
    pub weights: Vec<String>,
    pub tuples_examined: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub outcome: Outcome,
    pub tool_version: String,
    pub deterministic: bool,
    pub timing_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refutation: Option<RefutationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeReport>,
}

fn face_indices(faces: &[Face]) -> Vec<Vec<usize>> {
    faces.iter().map(|f| f.vertex_indices().to_vec()).collect()
}

impl ReportFile {
    fn base(outcome: Outcome, mode: SearchMode, elapsed: Duration) -> Self {
        Self {
            outcome,
            tool_version: crate::VERSION.to_string(),
            deterministic: mode == SearchMode::Deterministic,
            timing_ms: elapsed.as_millis().try_into().unwrap_or(u64::MAX),
            certificate: None,
            refutation: None,
            probe: None,
        }
    }

    pub fn from_decomposition(result: &Decomposition, mode: SearchMode, elapsed: Duration) -> Self {
        match result {
            Decomposition::Certificate(c) => {
                let mut report = Self::base(Outcome::Certificate, mode, elapsed);
                report.certificate = Some(CertificateReport {
                    faces: face_indices(c.faces()),
                    face_dims: c.faces().iter().map(Face::dim).collect(),
                    mu: c.mu().iter().map(|m| format_all(m)).collect(),
                    points: c.points().iter().map(Point::to_strings).collect(),
                    weights: format_all(c.problem().weights()),
                    order_independent: c.order_independent(),
                });
                report
            }
            Decomposition::Refutation(r) => {
                let mut report = Self::base(Outcome::Refutation, mode, elapsed);
                report.refutation = Some(RefutationReport {
                    tuple_count: r.tuple_count(),
                    witness_digest: r.digest(),
                    face_counts: r.face_counts().clone(),
                });
                report
            }
        }
    }

    pub fn from_probe(index: usize, result: Option<&ProbeResult>, mode: SearchMode, elapsed: Duration) -> Self {
        let mut report = Self::base(Outcome::Probe, mode, elapsed);
        report.probe = Some(match result {
            Some(p) => ProbeReport {
                index,
                value: Some(p.value.to_string()),
                faces: face_indices(&p.faces),
                weights: format_all(&p.weights),
                tuples_examined: p.tuples_examined,
            },
            None => ProbeReport { index, value: None, faces: Vec::new(), weights: Vec::new(), tuples_examined: 0 },
        });
        report
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn lookup_face(polytope: &Polytope, indices: &[usize], dim: usize) -> Option<Face> {
    let list = polytope.faces_of_dim(dim).ok()?;
    list.iter().find(|f| f.vertex_indices() == indices).cloned()
}

/// Re-checks a report against its problem by arithmetic alone.
///
/// Certificates: every face is a face of the stated dimension within its cap,
/// the weights match, the stated points are the `μ` combinations and
/// [`check_certificate`] accepts. Refutations: the tuple count and face
/// counts match the problem's enumeration. Probe reports are not checked.
pub fn validate_report(problem: &DecompositionProblem, report: &ReportFile) -> Result<bool> {
    match report.outcome {
        Outcome::Certificate => {
            let Some(c) = &report.certificate else { return Ok(false) };
            let n = problem.num_points();
            if c.faces.len() != n || c.face_dims.len() != n || c.mu.len() != n || c.points.len() != n {
                return Ok(false);
            }
            if parse_all(&c.weights)? != problem.weights() {
                return Ok(false);
            }
            let mut faces = Vec::with_capacity(n);
            for ((indices, &dim), &cap) in c.faces.iter().zip(&c.face_dims).zip(problem.dims()) {
                match lookup_face(problem.polytope(), indices, dim) {
                    Some(f) if dim <= cap => faces.push(f),
                    _ => return Ok(false),
                }
            }
            let mu: Vec<Vec<Rational>> = c.mu.iter().map(|m| parse_all(m)).collect::<Result<_>>()?;
            let system = assemble_fixed(problem.polytope(), &faces, problem.weights(), problem.target())?;
            if !check_certificate(&system, &mu)? {
                return Ok(false);
            }
            let points: Vec<Point> = c.points.iter().map(|p| parse_all(p).map(Point::new)).collect::<Result<_>>()?;
            Ok(system.realized_points(&mu)? == points)
        }
        Outcome::Refutation => {
            let Some(r) = &report.refutation else { return Ok(false) };
            let sizes: Vec<usize> = problem.face_lists().iter().map(|l| l.len()).collect();
            let expected_counts: BTreeMap<usize, usize> =
                problem.dims().iter().zip(&sizes).map(|(&k, &s)| (k, s)).collect();
            Ok(symmetric_tuple_count(&sizes, &problem.symmetry_groups()) == u128::from(r.tuple_count)
                && expected_counts == r.face_counts)
        }
        Outcome::Probe => Ok(report.probe.is_some()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::search::decompose;

    fn square_file() -> ProblemFile {
        ProblemFile::from_json(
            r#"{
                "ambient_dim": 2,
                "vertices": [["0","0"],["1","0"],["0","1"],["1","1"],["1/2","1/2"]],
                "target": ["1/2","1/2"],
                "dims": [1, 1],
                "weights": ["1/2","1/2"],
                "mode": "decompose"
            }"#,
        )
        .unwrap()
    }

    #[test]
    fn problem_file_parses_and_canonicalizes() {
        let problem = square_file().to_problem().unwrap();
        assert_eq!(problem.polytope().num_vertices(), 4);
        assert_eq!(problem.weights(), &[rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn problem_round_trip_is_lossless() {
        let problem = square_file().to_problem().unwrap();
        let file = ProblemFile::from_problem(&problem);
        let back = ProblemFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_problem().unwrap(), problem);
    }

    #[test]
    fn rejects_bad_tokens_and_fields() {
        let mut file = square_file();
        file.target = vec!["0.5".into(), "1/2".into()];
        assert!(matches!(file.to_problem(), Err(Error::Parse(_))));
        assert!(ProblemFile::from_json(r#"{"ambient_dim":1,"vertices":[["0"]],"target":[0],"dims":[0]}"#).is_err());
        assert!(ProblemFile::from_json(r#"{"ambient_dim":1,"vertices":[["0"]],"target":["0"],"dims":[0],"extra":1}"#).is_err());
        let mut file = square_file();
        file.weights = vec!["1/2".into(), "2/5".into()];
        assert!(matches!(file.to_problem(), Err(Error::Argument(_))));
    }

    #[test]
    fn certificate_report_revalidates() {
        let problem = square_file().to_problem().unwrap();
        let result = decompose(&problem).unwrap();
        let report = ReportFile::from_decomposition(&result, SearchMode::Deterministic, Duration::ZERO);
        let reloaded = ReportFile::from_json(&report.to_json()).unwrap();
        assert_eq!(reloaded, report);
        assert!(validate_report(&problem, &reloaded).unwrap());

        let mut tampered = reloaded.clone();
        tampered.certificate.as_mut().unwrap().mu[0][0] = "1/3".into();
        assert!(!validate_report(&problem, &tampered).unwrap());
    }
}
