use proptest::prelude::*;
use skelsum::generators::{forward_feasible_instance, random_interior_point, random_polytope, rng};
use skelsum::instances::simplex_barycenter;
use skelsum::lp::{assemble_fixed, check_certificate};
use skelsum::rational::{rat, Rational};
use skelsum::search::{
    decompose, decompose_with, enumerate_face_tuples, equal_weights, max_weight_probe, max_weight_probe_with,
    verify_external, Decomposition, DecompositionProblem, SearchMode,
};
use skelsum::{Error, Point, Polytope};

fn unit_square() -> Polytope {
    Polytope::canonicalize(&[
        Point::from_ints(&[0, 0]),
        Point::from_ints(&[1, 0]),
        Point::from_ints(&[0, 1]),
        Point::from_ints(&[1, 1]),
    ])
    .unwrap()
}

fn center() -> Point {
    Point::new(vec![rat(1, 2), rat(1, 2)])
}

#[test]
fn triangle_edges_reach_the_barycenter() {
    let problem =
        DecompositionProblem::with_equal_weights(Polytope::standard_simplex(2), simplex_barycenter(2), vec![1, 1])
            .unwrap();
    let cert = decompose(&problem).unwrap().certificate().cloned().unwrap();
    assert!(cert.verify());
    assert!(verify_external(&problem, cert.points()).unwrap());
}

#[test]
fn vertex_plus_triangle_is_refuted() {
    let problem =
        DecompositionProblem::with_equal_weights(Polytope::standard_simplex(2), simplex_barycenter(2), vec![0, 2])
            .unwrap();
    let refutation = decompose(&problem).unwrap().refutation().cloned().unwrap();
    assert_eq!(refutation.tuple_count(), 3);
    assert!(refutation.verify(&problem));
    assert_eq!(refutation.digest().len(), 64);
}

#[test]
fn target_outside_is_a_precondition_error() {
    let err = DecompositionProblem::with_equal_weights(unit_square(), Point::from_ints(&[2, 0]), vec![1]).unwrap_err();
    assert!(matches!(err, Error::Precondition(_)));
}

#[test]
fn tuple_counts_follow_the_symmetry_quotient() {
    let sq = DecompositionProblem::with_equal_weights(unit_square(), center(), vec![1, 1]).unwrap();
    assert_eq!(enumerate_face_tuples(&sq).count(), 10);
    let s3 = DecompositionProblem::with_equal_weights(Polytope::standard_simplex(3), simplex_barycenter(3), vec![1, 2])
        .unwrap();
    assert_eq!(enumerate_face_tuples(&s3).count(), 24);
    let s4 = DecompositionProblem::with_equal_weights(Polytope::standard_simplex(4), simplex_barycenter(4), vec![2, 2])
        .unwrap();
    assert_eq!(enumerate_face_tuples(&s4).count(), 55);
    let unequal = DecompositionProblem::new(
        Polytope::standard_simplex(4),
        simplex_barycenter(4),
        vec![2, 2],
        vec![rat(2, 3), rat(1, 3)],
    )
    .unwrap();
    assert_eq!(enumerate_face_tuples(&unequal).count(), 100);
}

#[test]
fn quotient_stream_covers_every_raw_tuple() {
    let problem = DecompositionProblem::with_equal_weights(unit_square(), center(), vec![1, 1, 1]).unwrap();
    let edges = problem.polytope().faces_of_dim(1).unwrap();
    let mut emitted: Vec<Vec<usize>> = enumerate_face_tuples(&problem)
        .map(|t| t.iter().map(|f| edges.binary_search(f).unwrap()).collect())
        .collect();
    for t in &emitted {
        assert!(t.windows(2).all(|w| w[0] <= w[1]));
    }
    emitted.sort();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let mut raw = vec![a, b, c];
                raw.sort();
                assert!(emitted.binary_search(&raw).is_ok());
            }
        }
    }
}

#[test]
fn external_verification_examples() {
    let problem = DecompositionProblem::with_equal_weights(unit_square(), center(), vec![1, 1]).unwrap();
    let left = Point::new(vec![rat(0, 1), rat(1, 2)]);
    let right = Point::new(vec![rat(1, 1), rat(1, 2)]);
    assert!(verify_external(&problem, &[left.clone(), right.clone()]).unwrap());
    let inner = Point::new(vec![rat(1, 4), rat(1, 2)]);
    let partner = Point::new(vec![rat(3, 4), rat(1, 2)]);
    assert!(!verify_external(&problem, &[inner, partner]).unwrap());
    assert!(verify_external(&problem, &[left]).is_err());
}

#[test]
fn probe_examples() {
    let tri = max_weight_probe(&Polytope::standard_simplex(2), &simplex_barycenter(2), &[1, 1], 0).unwrap().unwrap();
    assert_eq!(tri.value, rat(2, 3));
    let s4 = max_weight_probe(&Polytope::standard_simplex(4), &simplex_barycenter(4), &[2, 2], 0).unwrap().unwrap();
    assert_eq!(s4.value, rat(3, 5));
    let whole = max_weight_probe(&unit_square(), &Point::new(vec![rat(1, 3), rat(2, 3)]), &[2], 0).unwrap().unwrap();
    assert_eq!(whole.value, rat(1, 1));
    assert!(max_weight_probe(&unit_square(), &center(), &[1, 1], 2).is_err());
}

#[test]
fn symmetric_polygon_probes_split_evenly() {
    for m in [4, 6, 8] {
        let poly = Polytope::rational_circle_polygon(m, true).unwrap();
        let probe = max_weight_probe(&poly, &Point::origin(2), &[1, 1], 0).unwrap().unwrap();
        assert_eq!(probe.value, rat(1, 2), "m={m}");
    }
}

#[test]
fn probe_consistency_with_fixed_weights() {
    let simplex = Polytope::standard_simplex(2);
    let target = simplex_barycenter(2);
    let best = max_weight_probe(&simplex, &target, &[1, 1], 0).unwrap().unwrap().value;
    let at = |w: Rational| {
        let rest = rat(1, 1) - &w;
        DecompositionProblem::new(simplex.clone(), target.clone(), vec![1, 1], vec![w, rest]).unwrap()
    };
    assert!(decompose(&at(best.clone())).unwrap().is_certificate());
    assert!(!decompose(&at(best + rat(1, 100))).unwrap().is_certificate());
}

#[test]
fn probe_dominates_fixed_weight_solutions() {
    let mut r = rng(21);
    for _ in 0..10 {
        let inst = forward_feasible_instance(&mut r);
        let problem = &inst.problem;
        let Decomposition::Certificate(cert) = decompose(problem).unwrap() else { panic!("refuted") };
        let probe =
            max_weight_probe(problem.polytope(), problem.target(), problem.requested_dims(), 0).unwrap().unwrap();
        assert!(probe.value >= problem.weights()[0], "{} < {}", probe.value, problem.weights()[0]);
        assert!(cert.verify());
    }
}

#[test]
fn parallel_mode_agrees_on_outcome() {
    let mut r = rng(22);
    for _ in 0..15 {
        let inst = forward_feasible_instance(&mut r);
        let seq = decompose(&inst.problem).unwrap();
        let par = decompose_with(&inst.problem, SearchMode::Parallel { jobs: 4 }).unwrap();
        assert!(seq.is_certificate() && par.is_certificate());
        assert!(par.certificate().unwrap().verify());
        assert!(par.certificate().unwrap().order_independent());
    }
    let refuted =
        DecompositionProblem::with_equal_weights(Polytope::standard_simplex(4), simplex_barycenter(4), vec![1, 4])
            .unwrap();
    assert_eq!(decompose(&refuted).unwrap(), decompose_with(&refuted, SearchMode::Parallel { jobs: 3 }).unwrap());
    let tri = simplex_barycenter(2);
    let s2 = Polytope::standard_simplex(2);
    assert_eq!(
        max_weight_probe(&s2, &tri, &[1, 1], 0).unwrap().unwrap().value,
        max_weight_probe_with(&s2, &tri, &[1, 1], 0, SearchMode::Parallel { jobs: 2 }).unwrap().unwrap().value
    );
}

#[test]
fn deterministic_mode_is_reproducible() {
    let problem =
        DecompositionProblem::with_equal_weights(Polytope::standard_simplex(4), simplex_barycenter(4), vec![2, 2])
            .unwrap();
    assert_eq!(decompose(&problem).unwrap(), decompose(&problem).unwrap());
}

#[test]
fn uniform_caps_on_random_polytopes_always_succeed() {
    let mut r = rng(23);
    for (n, k) in [(2, 1), (3, 1), (1, 2)] {
        for _ in 0..4 {
            let polytope = random_polytope(&mut r, n * k, 7);
            let target = random_interior_point(&mut r, &polytope);
            let problem = DecompositionProblem::with_equal_weights(polytope, target, vec![k; n]).unwrap();
            let cert = decompose(&problem).unwrap().certificate().cloned().expect("uniform caps are always solvable");
            assert!(cert.verify());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn forward_instances_are_solved_and_sound(seed in 0u64..100_000) {
        let inst = forward_feasible_instance(&mut rng(seed));
        prop_assert!(verify_external(&inst.problem, &inst.points).unwrap());
        let result = decompose(&inst.problem).unwrap();
        let cert = result.certificate().expect("forward instance refuted");
        prop_assert!(cert.verify());
        let system = assemble_fixed(inst.problem.polytope(), cert.faces(), inst.problem.weights(), inst.problem.target()).unwrap();
        prop_assert!(check_certificate(&system, cert.mu()).unwrap());
        prop_assert!(verify_external(&inst.problem, cert.points()).unwrap());
    }

    #[test]
    fn raising_caps_keeps_solutions(seed in 0u64..100_000, bump in 0usize..3) {
        let inst = forward_feasible_instance(&mut rng(seed));
        let p = &inst.problem;
        let mut dims = p.dims().to_vec();
        let i = bump % dims.len();
        dims[i] += 1;
        let raised = DecompositionProblem::new(p.polytope().clone(), p.target().clone(), dims, p.weights().to_vec()).unwrap();
        prop_assert!(decompose(&raised).unwrap().is_certificate());
    }

    #[test]
    fn grouped_solutions_survive_permutation(seed in 0u64..100_000) {
        let mut r = rng(seed);
        let polytope = random_polytope(&mut r, 2, 5);
        let target = random_interior_point(&mut r, &polytope);
        let grouped = DecompositionProblem::new(polytope.clone(), target.clone(), vec![0, 0, 0], equal_weights(3)).unwrap();
        // Positions with equal caps and weights are interchangeable.
        let found = decompose(&grouped).unwrap().certificate().cloned();
        if let Some(cert) = found {
            let points = cert.points().to_vec();
            let mut permuted = points.clone();
            permuted.rotate_left(1);
            prop_assert!(verify_external(&grouped, &permuted).unwrap());
        }
    }
}
