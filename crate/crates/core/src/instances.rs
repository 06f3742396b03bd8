//! Concrete constructions around skeleton barycenters.
//!
//! Target points that defeat vertex-heavy assignments, the simplex
//! counterexamples showing the face dimensions are tight, the product lift
//! `Q = P × Δ^s` that turns a uniform skeleton result into a mixed
//! `k`/`(k+1)` one, the two-level weight family realized on the 1-skeleton,
//! and the coefficient bound `(k+1)/(nk+1)` with its dual-functional proof.

use num_traits::{One, Zero};

use crate::error::{argument, Error, Result};
use crate::geometry::{DualFunctional, Face, Point, Polytope};
use crate::rational::{int, rat, Rational};
use crate::search::{
    decompose, decompose_with, equal_weights, symmetric_tuple_count, Certificate, Decomposition,
    DecompositionProblem, SearchMode,
};

/// Sorted non-increasing weights summing to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(mut entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(argument("weight vector must be nonempty"));
        }
        if entries.iter().any(|w| w < &Rational::zero()) {
            return Err(argument("weights must be nonnegative"));
        }
        if entries.iter().sum::<Rational>() != Rational::one() {
            return Err(argument("weights must sum to 1"));
        }
        entries.sort_by(|a, b| b.cmp(a));
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_balanced(&self) -> bool {
        let n = int(self.0.len() as i64);
        self.0.iter().all(|w| w * &n == Rational::one())
    }
}

/// The point of `Δ^d` with `d` coordinates `(d − 1/2)/(dn)` and last
/// coordinate `(n − d + 1/2)/n`. No `n` points of `Δ^d`, `n − d + 1` of them
/// vertices, have it as their barycenter.
pub fn lemma_target(d: usize, n: usize) -> Result<Point> {
    if d < 1 || d >= n {
        return Err(argument(format!("need 1 <= d < n, got d={d}, n={n}")));
    }
    let (d, n) = (d as i64, n as i64);
    let head = rat(2 * d - 1, 2 * d * n);
    let tail = rat(2 * (n - d) + 1, 2 * n);
    let mut coords = vec![head; d as usize];
    coords.push(tail);
    Ok(Point::new(coords))
}

pub fn simplex_barycenter(d: usize) -> Point {
    Point::new(vec![rat(1, d as i64 + 1); d + 1])
}

/// `Δ^d` with its barycenter and caps `(k−1, d, …, d)`: one point confined
/// to a `(k−1)`-face already makes the barycenter unreachable when `d ≥ nk`.
pub fn prop_a_instance(n: usize, k: usize, d: usize) -> Result<DecompositionProblem> {
    if n < 2 || k < 1 {
        return Err(argument(format!("need n >= 2 and k >= 1, got n={n}, k={k}")));
    }
    if d < n * k {
        return Err(argument(format!("need d >= nk = {}, got d={d}", n * k)));
    }
    let mut dims = vec![d; n];
    dims[0] = k - 1;
    DecompositionProblem::with_equal_weights(Polytope::standard_simplex(d), simplex_barycenter(d), dims)
}

/// `(Δ^n)^k × Δ^r` of dimension `nk + r`, with target the product of the
/// `Δ^n` barycenters and `lemma_target(r, n)`; `n − r + 1` points capped at
/// `k`, the other `r − 1` uncapped. Unsolvable.
pub fn prop_b_instance(n: usize, k: usize, r: usize) -> Result<DecompositionProblem> {
    if n < 2 || k < 1 {
        return Err(argument(format!("need n >= 2 and k >= 1, got n={n}, k={k}")));
    }
    if r < 1 || r >= n {
        return Err(argument(format!("need 1 <= r <= n-1, got r={r}, n={n}")));
    }
    let simplex = Polytope::standard_simplex(n);
    let mut polytope = simplex.clone();
    let mut target = simplex_barycenter(n);
    for _ in 1..k {
        polytope = polytope.product(&simplex);
        target = target.concat(&simplex_barycenter(n));
    }
    polytope = polytope.product(&Polytope::standard_simplex(r));
    target = target.concat(&lemma_target(r, n)?);
    let d = n * k + r;
    let mut dims = vec![k; n - r + 1];
    dims.extend(std::iter::repeat_n(d, r - 1));
    DecompositionProblem::with_equal_weights(polytope, target, dims)
}

/// The lift of a `(nk + r)`-polytope.
#[derive(Clone, Debug)]
pub struct Lift {
    /// `P × Δ^s` with `s = n − r`, or `P` itself when `r = 0`.
    pub polytope: Polytope,
    /// The `Δ^s` component of the lifted target (`lemma_target(s, n)`); empty when `r = 0`.
    pub simplex_target: Point,
    pub r: usize,
    pub s: usize,
}

fn split_dimension(dim: usize, n: usize, k: usize) -> Result<usize> {
    if n < 2 {
        return Err(argument(format!("need n >= 2, got {n}")));
    }
    match dim.checked_sub(n * k) {
        Some(r) if r < n => Ok(r),
        _ => Err(argument(format!(
            "dimension {dim} is not nk + r with n={n}, k={k}, 0 <= r < n"
        ))),
    }
}

/// `Q = P × Δ^{n−r}` together with the `Δ^{n−r}` target; `dim Q = n(k+1)`.
pub fn lift_instance(polytope: &Polytope, n: usize, k: usize, r: usize) -> Result<Lift> {
    let actual = split_dimension(polytope.dim(), n, k)?;
    if actual != r {
        return Err(Error::DimensionMismatch { expected: n * k + r, found: polytope.dim() });
    }
    if r == 0 {
        return Ok(Lift { polytope: polytope.clone(), simplex_target: Point::new(vec![]), r, s: n });
    }
    let s = n - r;
    Ok(Lift {
        polytope: polytope.product(&Polytope::standard_simplex(s)),
        simplex_target: lemma_target(s, n)?,
        r,
        s,
    })
}

/// `n` points averaging to `p`, at least `n − r` of them in `k`-faces and the
/// rest in `(k+1)`-faces, where `dim P = nk + r`.
///
/// Solves the uniform problem on the lift with caps `k + 1`, projects back to
/// `P`, and classifies each point by the smallest face containing it. Points
/// are returned ordered by that face dimension, so the certificate's caps are
/// `(k, …, k, k+1, …, k+1)` with `n − r` copies of `k`.
pub fn lifted_decompose(polytope: &Polytope, p: &Point, n: usize, k: usize) -> Result<Certificate> {
    lifted_decompose_with(polytope, p, n, k, SearchMode::Deterministic)
}

pub fn lifted_decompose_with(
    polytope: &Polytope,
    p: &Point,
    n: usize,
    k: usize,
    mode: SearchMode,
) -> Result<Certificate> {
    let r = split_dimension(polytope.dim(), n, k)?;
    if r == 0 {
        let problem = DecompositionProblem::with_equal_weights(polytope.clone(), p.clone(), vec![k; n])?;
        return match decompose_with(&problem, mode)? {
            Decomposition::Certificate(c) => Ok(c),
            Decomposition::Refutation(_) => Err(Error::Internal(format!(
                "no skeleton barycenter on a {}-polytope with n={n}, k={k}",
                polytope.dim()
            ))),
        };
    }
    let lift = lift_instance(polytope, n, k, r)?;
    let lifted_target = p.concat(&lift.simplex_target);
    let lifted = DecompositionProblem::with_equal_weights(lift.polytope.clone(), lifted_target, vec![k + 1; n])?;
    let lifted_cert = match decompose_with(&lifted, mode)? {
        Decomposition::Certificate(c) => c,
        Decomposition::Refutation(_) => {
            return Err(Error::Internal(format!("lifted {}-polytope admits no solution", lift.polytope.dim())))
        }
    };

    // Lifted vertex a·m + b projects to vertex a of P.
    let m = lift.s + 1;
    let mut projected: Vec<(Face, Vec<Rational>)> = Vec::with_capacity(n);
    for (face, coeffs) in lifted_cert.faces().iter().zip(lifted_cert.mu()) {
        let mut weights = vec![Rational::zero(); polytope.num_vertices()];
        for (&q, c) in face.vertex_indices().iter().zip(coeffs) {
            weights[q / m] += c;
        }
        let support: Vec<usize> = (0..weights.len()).filter(|&a| !weights[a].is_zero()).collect();
        let minimal = polytope.smallest_face_containing(&support);
        let mu: Vec<Rational> = minimal.vertex_indices().iter().map(|&a| weights[a].clone()).collect();
        projected.push((minimal, mu));
    }
    projected.sort_by_key(|(f, _)| f.dim());

    let low = projected.iter().filter(|(f, _)| f.dim() <= k).count();
    if low < n - r || projected.iter().any(|(f, _)| f.dim() > k + 1) {
        return Err(Error::Internal(format!(
            "projected points miss the mixed caps: {low} of {n} in {k}-faces, need {}",
            n - r
        )));
    }
    let mut dims = vec![k; n - r];
    dims.extend(std::iter::repeat_n(k + 1, r));
    let problem = DecompositionProblem::with_equal_weights(polytope.clone(), p.clone(), dims)?;
    let (faces, mu): (Vec<Face>, Vec<Vec<Rational>>) = projected.into_iter().unzip();
    let cert = Certificate::new(problem, faces, mu)?;
    if !cert.verify() {
        return Err(Error::Internal("projected certificate does not verify".into()));
    }
    Ok(cert)
}

/// `sk` entries `1/((s+t)k)` followed by `t(k+1)` entries `1/((s+t)(k+1))`.
pub fn weight_family(s: usize, t: usize, k: usize) -> Result<WeightVector> {
    if s < 1 || t < 1 || k < 1 {
        return Err(argument(format!("need s, t, k >= 1, got s={s}, t={t}, k={k}")));
    }
    let (si, ti, ki) = (s as i64, t as i64, k as i64);
    let mut entries = vec![rat(1, (si + ti) * ki); s * k];
    entries.extend(std::iter::repeat_n(rat(1, (si + ti) * (ki + 1)), t * (k + 1)));
    WeightVector::new(entries)
}

/// Realizes [`weight_family`]`(s, t, k)` on the 1-skeleton of an
/// `(sk + t(k+1))`-polytope.
///
/// First `s + t` points average to `p` with `s` of them in `k`-faces and `t`
/// in `(k+1)`-faces ([`lifted_decompose`]); then each point is split inside
/// its own face into `k` (resp. `k+1`) edge points averaging to it.
pub fn edge_split_certificate(polytope: &Polytope, p: &Point, s: usize, t: usize, k: usize) -> Result<Certificate> {
    let weights = weight_family(s, t, k)?;
    let n = s * k + t * (k + 1);
    if polytope.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: polytope.dim() });
    }
    let coarse = lifted_decompose(polytope, p, s + t, k)?;

    let mut faces = Vec::with_capacity(n);
    let mut mu = Vec::with_capacity(n);
    for (i, (face, x)) in coarse.faces().iter().zip(coarse.points()).enumerate() {
        let parts = if i < s { k } else { k + 1 };
        let sub = polytope.face_polytope(face);
        let split = DecompositionProblem::with_equal_weights(sub.clone(), x.clone(), vec![1; parts])?;
        let cert = match decompose(&split)? {
            Decomposition::Certificate(c) => c,
            Decomposition::Refutation(_) => {
                return Err(Error::Internal(format!(
                    "no {parts} edge points average to a point of a {}-face",
                    face.dim()
                )))
            }
        };
        for (local, coeffs) in cert.faces().iter().zip(cert.mu()) {
            let global: Vec<usize> = local.vertex_indices().iter().map(|&j| face.vertex_indices()[j]).collect();
            let g = polytope.smallest_face_containing(&global);
            if g.vertex_indices() != global.as_slice() {
                return Err(Error::Internal("face of a face is not a face".into()));
            }
            faces.push(g);
            mu.push(coeffs.clone());
        }
    }
    let problem = DecompositionProblem::new(polytope.clone(), p.clone(), vec![1; n], weights.entries().to_vec())?;
    let cert = Certificate::new(problem, faces, mu)?;
    if !cert.verify() {
        return Err(Error::Internal("edge-split certificate does not verify".into()));
    }
    Ok(cert)
}

/// `(k+1)/(nk+1)`: no weight of a vector that works for every
/// `nk`-polytope can exceed this.
pub fn coeff_bound(n: usize, k: usize) -> Rational {
    rat(k as i64 + 1, (n * k) as i64 + 1)
}

/// The dual functional behind [`coeff_bound`] on `Δ^{nk}`.
#[derive(Clone, Debug)]
pub struct BoundCertificateData {
    pub n: usize,
    pub k: usize,
    pub bound: Rational,
    pub simplex: Polytope,
    /// `conv{e_1, …, e_{k+1}}`.
    pub face: Face,
    /// `φ = e_1^* + … + e_{k+1}^*`.
    pub functional: DualFunctional,
}

impl BoundCertificateData {
    /// `φ` is 1 on the face's vertices, 0 on every other vertex, and
    /// `(k+1)/(nk+1)` at the barycenter. Since `φ ≥ 0` on the simplex,
    /// `λ_1 = φ(λ_1 x_1) ≤ φ(p)` for any `x_1` in the face. Every `k`-face is
    /// the image of this one under a coordinate permutation, so one face suffices.
    pub fn validate(&self) -> Result<bool> {
        for (i, v) in self.simplex.vertices().iter().enumerate() {
            let expected = if self.face.contains_vertex(i) { Rational::one() } else { Rational::zero() };
            if self.functional.evaluate(v)? != expected {
                return Ok(false);
            }
        }
        let at_barycenter = self.functional.evaluate(&simplex_barycenter(self.n * self.k))?;
        Ok(self.face.dim() == self.k && at_barycenter == self.bound && self.bound == coeff_bound(self.n, self.k))
    }
}

pub fn bound_certificate(n: usize, k: usize) -> Result<BoundCertificateData> {
    if n < 2 || k < 1 {
        return Err(argument(format!("need n >= 2 and k >= 1, got n={n}, k={k}")));
    }
    let d = n * k;
    let simplex = Polytope::standard_simplex(d);
    let coords: Vec<usize> = (0..=k).collect();
    let mut idx: Vec<usize> = coords
        .iter()
        .map(|&c| simplex.vertex_index(&Point::unit(d + 1, c)).expect("unit vertex"))
        .collect();
    idx.sort_unstable();
    let face = simplex.smallest_face_containing(&idx);
    Ok(BoundCertificateData {
        n,
        k,
        bound: coeff_bound(n, k),
        functional: DualFunctional::sum_of_duals(d + 1, &coords),
        simplex,
        face,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Schedule {
    Balanced,
    /// The first `k` at which the largest weight exceeds `(k+1)/(nk+1)`.
    ExcludedFrom(usize),
}

/// The first `k` for which the coefficient bound rules `weights` out, or
/// `Balanced` for the uniform vector, which is never ruled out.
pub fn balanced_limit_schedule(weights: &WeightVector) -> Schedule {
    if weights.is_balanced() {
        return Schedule::Balanced;
    }
    let n = weights.len();
    let top = &weights.entries()[0];
    // top > (k+1)/(nk+1)  ⇔  k (n·top − 1) > 1 − top, and n·top > 1 when unbalanced.
    let slack = (Rational::one() - top) / (int(n as i64) * top - Rational::one());
    let k = slack.floor().to_integer() + 1u8;
    let k: usize = k.try_into().expect("schedule fits in usize");
    Schedule::ExcludedFrom(k.max(1))
}

/// Exhaustive confirmation of a scheduled exclusion: `decompose` on
/// `Δ^{nk}` at its barycenter with caps `k` and the given weights. Skipped
/// (returns `None`) when the tuple count exceeds `max_tuples`.
pub fn schedule_refutation(
    weights: &WeightVector,
    k: usize,
    max_tuples: u128,
) -> Result<Option<Decomposition>> {
    let n = weights.len();
    let d = n * k;
    let problem = DecompositionProblem::new(
        Polytope::standard_simplex(d),
        simplex_barycenter(d),
        vec![k; n],
        weights.entries().to_vec(),
    )?;
    let faces = problem.polytope().faces_of_dim(k)?.len();
    let groups: Vec<usize> = (0..n)
        .map(|i| (0..i).find(|&j| weights.entries()[j] == weights.entries()[i]).unwrap_or(i))
        .collect();
    if symmetric_tuple_count(&vec![faces; n], &groups) > max_tuples {
        return Ok(None);
    }
    decompose(&problem).map(Some)
}

pub fn equal_weight_vector(n: usize) -> Result<WeightVector> {
    WeightVector::new(equal_weights(n))
}
