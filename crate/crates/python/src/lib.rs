//! Python bindings.
//!
//! Rationals cross the boundary as strings (`"3/7"`); inputs may also be
//! Python ints or `fractions.Fraction` values. Face tuples are lists of
//! vertex-index lists into `Polytope.vertices()`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use skelsum::instances::{self, Schedule, WeightVector};
use skelsum::io::{validate_report, ProblemFile, ReportFile};
use skelsum::rational::{format_all, int, parse_rational};
use skelsum::reproduce::{run_all, Scale};
use skelsum::search::{self, Decomposition, DecompositionProblem, SearchMode};
use skelsum::{Point, Rational};

fn py_err(e: skelsum::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_rational(value: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(s) = value.extract::<String>() {
        return parse_rational(&s).map_err(py_err);
    }
    if let Ok(i) = value.extract::<i64>() {
        return Ok(int(i));
    }
    if let (Ok(n), Ok(d)) = (value.getattr("numerator"), value.getattr("denominator")) {
        let text = format!("{}/{}", n.str()?, d.str()?);
        return parse_rational(&text).map_err(py_err);
    }
    Err(PyValueError::new_err("expected a rational: str, int or Fraction"))
}

fn to_point(values: &Bound<'_, PyAny>) -> PyResult<Point> {
    let coords = values.try_iter()?.map(|v| to_rational(&v?)).collect::<PyResult<Vec<_>>>()?;
    Ok(Point::new(coords))
}

fn to_rationals(values: &Bound<'_, PyAny>) -> PyResult<Vec<Rational>> {
    Ok(to_point(values)?.into_coords())
}

fn search_mode(jobs: Option<usize>) -> SearchMode {
    jobs.map_or(SearchMode::Deterministic, |jobs| SearchMode::Parallel { jobs })
}

/// A polytope given by its extreme vertices, with its face lattice.
#[pyclass(name = "Polytope", module = "skelsum", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPolytope {
    inner: skelsum::Polytope,
}

#[pymethods]
impl PyPolytope {
    /// Convex hull of the given points; non-extreme points are dropped.
    #[staticmethod]
    fn from_points(points: &Bound<'_, PyAny>) -> PyResult<Self> {
        let pts = points.try_iter()?.map(|p| to_point(&p?)).collect::<PyResult<Vec<_>>>()?;
        Ok(Self { inner: skelsum::Polytope::canonicalize(&pts).map_err(py_err)? })
    }

    /// The standard d-simplex in d+1 coordinates.
    #[staticmethod]
    fn simplex(d: usize) -> Self {
        Self { inner: skelsum::Polytope::standard_simplex(d) }
    }

    /// m exact rational points on the unit circle.
    #[staticmethod]
    #[pyo3(signature = (m, symmetric = true))]
    fn circle_polygon(m: usize, symmetric: bool) -> PyResult<Self> {
        Ok(Self { inner: skelsum::Polytope::rational_circle_polygon(m, symmetric).map_err(py_err)? })
    }

    fn product(&self, other: &PyPolytope) -> Self {
        Self { inner: self.inner.product(&other.inner) }
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    fn vertices(&self) -> Vec<Vec<String>> {
        self.inner.vertices().iter().map(Point::to_strings).collect()
    }

    fn facets(&self) -> Vec<Vec<usize>> {
        self.inner.facets().to_vec()
    }

    /// Vertex-index sets of all faces of dimension exactly k.
    fn faces(&self, k: usize) -> PyResult<Vec<Vec<usize>>> {
        let faces = self.inner.faces_of_dim(k).map_err(py_err)?;
        Ok(faces.iter().map(|f| f.vertex_indices().to_vec()).collect())
    }

    fn f_vector(&self) -> Vec<usize> {
        self.inner.f_vector()
    }

    fn contains(&self, point: &Bound<'_, PyAny>) -> PyResult<bool> {
        self.inner.contains(&to_point(point)?).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Polytope(dim={}, ambient_dim={}, vertices={})",
            self.inner.dim(),
            self.inner.ambient_dim(),
            self.inner.num_vertices()
        )
    }
}

fn decomposition_dict<'py>(py: Python<'py>, result: &Decomposition) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    match result {
        Decomposition::Certificate(c) => {
            out.set_item("outcome", "certificate")?;
            let faces: Vec<Vec<usize>> = c.faces().iter().map(|f| f.vertex_indices().to_vec()).collect();
            let mu: Vec<Vec<String>> = c.mu().iter().map(|m| format_all(m)).collect();
            let points: Vec<Vec<String>> = c.points().iter().map(Point::to_strings).collect();
            out.set_item("faces", faces)?;
            out.set_item("mu", mu)?;
            out.set_item("points", points)?;
            out.set_item("verified", c.verify())?;
        }
        Decomposition::Refutation(r) => {
            out.set_item("outcome", "refutation")?;
            out.set_item("tuple_count", r.tuple_count())?;
            out.set_item("witness_digest", r.digest())?;
        }
    }
    Ok(out)
}

/// Points in faces of dimension at most `dims[i]` with `Σ weights[i] x_i = target`,
/// or an exhaustive refutation. Weights default to equal.
#[pyfunction]
#[pyo3(signature = (polytope, target, dims, weights = None, jobs = None))]
fn decompose<'py>(
    py: Python<'py>,
    polytope: &PyPolytope,
    target: &Bound<'py, PyAny>,
    dims: Vec<usize>,
    weights: Option<&Bound<'py, PyAny>>,
    jobs: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let weights = match weights {
        Some(w) => to_rationals(w)?,
        None => search::equal_weights(dims.len()),
    };
    let problem = DecompositionProblem::new(polytope.inner.clone(), to_point(target)?, dims, weights).map_err(py_err)?;
    let result = search::decompose_with(&problem, search_mode(jobs)).map_err(py_err)?;
    decomposition_dict(py, &result)
}

/// The largest weight point `index` can carry over all face tuples, or None.
#[pyfunction]
#[pyo3(signature = (polytope, target, dims, index = 0, jobs = None))]
fn max_weight_probe(
    polytope: &PyPolytope,
    target: &Bound<'_, PyAny>,
    dims: Vec<usize>,
    index: usize,
    jobs: Option<usize>,
) -> PyResult<Option<String>> {
    let result = search::max_weight_probe_with(&polytope.inner, &to_point(target)?, &dims, index, search_mode(jobs))
        .map_err(py_err)?;
    Ok(result.map(|p| p.value.to_string()))
}

/// Runs a problem file (JSON text) and returns the report as JSON text.
#[pyfunction]
fn decompose_json(problem: &str) -> PyResult<String> {
    let problem = ProblemFile::from_json(problem).and_then(|f| f.to_problem()).map_err(py_err)?;
    let start = std::time::Instant::now();
    let result = search::decompose(&problem).map_err(py_err)?;
    Ok(ReportFile::from_decomposition(&result, SearchMode::Deterministic, start.elapsed()).to_json())
}

/// Re-checks a report against its problem file without solving.
#[pyfunction]
fn validate_report_json(problem: &str, report: &str) -> PyResult<bool> {
    let problem = ProblemFile::from_json(problem).and_then(|f| f.to_problem()).map_err(py_err)?;
    let report = ReportFile::from_json(report).map_err(py_err)?;
    validate_report(&problem, &report).map_err(py_err)
}

#[pyfunction]
fn lemma_target(d: usize, n: usize) -> PyResult<Vec<String>> {
    Ok(instances::lemma_target(d, n).map_err(py_err)?.to_strings())
}

#[pyfunction]
fn simplex_barycenter(d: usize) -> Vec<String> {
    instances::simplex_barycenter(d).to_strings()
}

#[pyfunction]
fn weight_family(s: usize, t: usize, k: usize) -> PyResult<Vec<String>> {
    Ok(format_all(instances::weight_family(s, t, k).map_err(py_err)?.entries()))
}

#[pyfunction]
fn coeff_bound(n: usize, k: usize) -> String {
    instances::coeff_bound(n, k).to_string()
}

/// First k at which the largest weight exceeds (k+1)/(nk+1); None for balanced weights.
#[pyfunction]
fn balanced_limit_schedule(weights: &Bound<'_, PyAny>) -> PyResult<Option<usize>> {
    let weights = WeightVector::new(to_rationals(weights)?).map_err(py_err)?;
    Ok(match instances::balanced_limit_schedule(&weights) {
        Schedule::Balanced => None,
        Schedule::ExcludedFrom(k) => Some(k),
    })
}

fn problem_tuple(problem: DecompositionProblem) -> ProblemTuple {
    (
        PyPolytope { inner: problem.polytope().clone() },
        problem.target().to_strings(),
        problem.requested_dims().to_vec(),
        format_all(problem.weights()),
    )
}

type ProblemTuple = (PyPolytope, Vec<String>, Vec<usize>, Vec<String>);

/// `(polytope, target, dims, weights)` for the low-face simplex counterexample.
#[pyfunction]
fn prop_a_instance(n: usize, k: usize, d: usize) -> PyResult<ProblemTuple> {
    Ok(problem_tuple(instances::prop_a_instance(n, k, d).map_err(py_err)?))
}

/// `(polytope, target, dims, weights)` for the product-of-simplices counterexample.
#[pyfunction]
fn prop_b_instance(n: usize, k: usize, r: usize) -> PyResult<ProblemTuple> {
    Ok(problem_tuple(instances::prop_b_instance(n, k, r).map_err(py_err)?))
}

/// Mixed k/(k+1) certificate through the product lift.
#[pyfunction]
fn lifted_decompose<'py>(
    py: Python<'py>,
    polytope: &PyPolytope,
    target: &Bound<'py, PyAny>,
    n: usize,
    k: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let cert = instances::lifted_decompose(&polytope.inner, &to_point(target)?, n, k).map_err(py_err)?;
    decomposition_dict(py, &Decomposition::Certificate(cert))
}

/// 1-skeleton certificate for the two-level weight family.
#[pyfunction]
fn edge_split_certificate<'py>(
    py: Python<'py>,
    polytope: &PyPolytope,
    target: &Bound<'py, PyAny>,
    s: usize,
    t: usize,
    k: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let cert = instances::edge_split_certificate(&polytope.inner, &to_point(target)?, s, t, k).map_err(py_err)?;
    decomposition_dict(py, &Decomposition::Certificate(cert))
}

/// Runs the reproducibility suite; one dict per check.
#[pyfunction]
#[pyo3(signature = (smoke = true))]
fn verify_paper<'py>(py: Python<'py>, smoke: bool) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let scale = if smoke { Scale::Smoke } else { Scale::Full };
    run_all(scale)
        .into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("id", r.id)?;
            d.set_item("name", r.name)?;
            d.set_item("expected", &r.expected)?;
            d.set_item("observed", &r.observed)?;
            d.set_item("passed", r.passed())?;
            d.set_item("runtime", r.runtime.as_secs_f64())?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
#[pyo3(name = "skelsum")]
fn skelsum_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", skelsum::VERSION)?;
    m.add_class::<PyPolytope>()?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(max_weight_probe, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_json, m)?)?;
    m.add_function(wrap_pyfunction!(validate_report_json, m)?)?;
    m.add_function(wrap_pyfunction!(lemma_target, m)?)?;
    m.add_function(wrap_pyfunction!(simplex_barycenter, m)?)?;
    m.add_function(wrap_pyfunction!(weight_family, m)?)?;
    m.add_function(wrap_pyfunction!(coeff_bound, m)?)?;
    m.add_function(wrap_pyfunction!(balanced_limit_schedule, m)?)?;
    m.add_function(wrap_pyfunction!(prop_a_instance, m)?)?;
    m.add_function(wrap_pyfunction!(prop_b_instance, m)?)?;
    m.add_function(wrap_pyfunction!(lifted_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(edge_split_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(verify_paper, m)?)?;
    Ok(())
}
