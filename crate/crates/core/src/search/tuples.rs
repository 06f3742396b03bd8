//! Lexicographic enumeration of face tuples modulo interchangeable positions.

use crate::geometry::Face;

use super::problem::DecompositionProblem;

/// Index tuples `(t_1, …, t_n)` with `t_i < sizes[i]`, in lexicographic order.
///
/// Positions sharing a group id are interchangeable, so only tuples that are
/// non-decreasing within each group are produced. Every raw tuple is a
/// permutation (within groups) of exactly one emitted tuple.
#[derive(Clone, Debug)]
pub struct IndexTuples {
    sizes: Vec<usize>,
    prev_same: Vec<Option<usize>>,
    current: Option<Vec<usize>>,
}

impl IndexTuples {
    pub fn new(sizes: Vec<usize>, groups: &[usize]) -> Self {
        assert_eq!(sizes.len(), groups.len());
        let prev_same: Vec<Option<usize>> = (0..groups.len())
            .map(|i| (0..i).rev().find(|&j| groups[j] == groups[i]))
            .collect();
        let current = if sizes.contains(&0) {
            None
        } else {
            let mut start = vec![0; sizes.len()];
            reset_tail(&mut start, &prev_same, 0);
            Some(start)
        };
        Self { sizes, prev_same, current }
    }
}

fn reset_tail(t: &mut [usize], prev_same: &[Option<usize>], from: usize) {
    for q in from..t.len() {
        t[q] = prev_same[q].map_or(0, |p| t[p]);
    }
}

impl Iterator for IndexTuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let t = self.current.as_mut().expect("checked above");
        let mut advanced = false;
        for p in (0..t.len()).rev() {
            if t[p] + 1 < self.sizes[p] {
                t[p] += 1;
                reset_tail(t, &self.prev_same, p + 1);
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.current = None;
        }
        Some(out)
    }
}

/// Number of tuples [`IndexTuples`] emits: a multiset count per group.
pub fn symmetric_tuple_count(sizes: &[usize], groups: &[usize]) -> u128 {
    let mut total: u128 = 1;
    let mut seen: Vec<usize> = Vec::new();
    for (i, &g) in groups.iter().enumerate() {
        if seen.contains(&g) {
            continue;
        }
        seen.push(g);
        let members = groups.iter().filter(|&&h| h == g).count() as u128;
        let n = sizes[i] as u128;
        // C(n + members - 1, members)
        let mut c: u128 = 1;
        for j in 0..members {
            c = c * (n + j) / (j + 1);
        }
        total *= c;
    }
    total
}

/// The face tuples searched for `problem`: each position ranges over the faces
/// of dimension exactly its clamped cap, quotiented by interchangeable positions.
pub fn enumerate_face_tuples(problem: &DecompositionProblem) -> impl Iterator<Item = Vec<Face>> + '_ {
    let lists = problem.face_lists();
    let sizes = lists.iter().map(|l| l.len()).collect();
    IndexTuples::new(sizes, &problem.symmetry_groups())
        .map(move |t| t.iter().zip(&lists).map(|(&i, l)| l[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Point, Polytope};
    use crate::rational::rat;
    use crate::search::problem::equal_weights;

    #[test]
    fn square_edge_pairs_with_equal_weights() {
        let pts: Vec<Point> = [[0, 0], [1, 0], [0, 1], [1, 1]].iter().map(|c| Point::from_ints(c)).collect();
        let sq = Polytope::canonicalize(&pts).unwrap();
        let p = DecompositionProblem::with_equal_weights(sq, Point::new(vec![rat(1, 2), rat(1, 2)]), vec![1, 1]).unwrap();
        assert_eq!(enumerate_face_tuples(&p).count(), 10);
    }

    #[test]
    fn distinct_caps_have_no_quotient() {
        let s = Polytope::standard_simplex(3);
        let p = DecompositionProblem::new(s, Point::new(vec![rat(1, 4); 4]), vec![1, 2], vec![rat(1, 3), rat(2, 3)]).unwrap();
        assert_eq!(enumerate_face_tuples(&p).count(), 24);
    }

    #[test]
    fn simplex_triangle_pairs() {
        let s = Polytope::standard_simplex(4);
        let p = DecompositionProblem::with_equal_weights(s.clone(), Point::new(vec![rat(1, 5); 5]), vec![2, 2]).unwrap();
        assert_eq!(enumerate_face_tuples(&p).count(), 55);
        let q = DecompositionProblem::new(s, Point::new(vec![rat(1, 5); 5]), vec![2, 2], vec![rat(2, 3), rat(1, 3)]).unwrap();
        assert_eq!(enumerate_face_tuples(&q).count(), 100);
        assert_eq!(equal_weights(2).len(), 2);
    }

    #[test]
    fn empty_list_yields_nothing() {
        assert_eq!(IndexTuples::new(vec![3, 0], &[0, 1]).count(), 0);
    }

    proptest::proptest! {
        #[test]
        fn emitted_tuples_cover_raw_tuples(
            sizes_groups in proptest::collection::vec((1usize..4, 0usize..3), 1..5)
        ) {
            // Members of one group must share a list size.
            let groups: Vec<usize> = sizes_groups.iter().map(|&(_, g)| g).collect();
            let sizes: Vec<usize> = groups.iter().map(|&g| sizes_groups.iter().find(|&&(_, h)| h == g).unwrap().0).collect();
            let emitted: Vec<Vec<usize>> = IndexTuples::new(sizes.clone(), &groups).collect();
            proptest::prop_assert_eq!(emitted.len() as u128, symmetric_tuple_count(&sizes, &groups));
            let mut sorted = emitted.clone();
            sorted.sort();
            sorted.dedup();
            proptest::prop_assert_eq!(&sorted, &emitted);

            // Every raw tuple's canonical form (sorted within groups) is emitted.
            let mut raw = vec![vec![]];
            for &s in &sizes {
                raw = raw.into_iter().flat_map(|t: Vec<usize>| (0..s).map(move |v| { let mut u = t.clone(); u.push(v); u })).collect();
            }
            for t in raw {
                let mut canon = t.clone();
                for g in 0..3 {
                    let pos: Vec<usize> = (0..groups.len()).filter(|&i| groups[i] == g).collect();
                    let mut vals: Vec<usize> = pos.iter().map(|&i| t[i]).collect();
                    vals.sort();
                    for (i, v) in pos.into_iter().zip(vals) {
                        canon[i] = v;
                    }
                }
                proptest::prop_assert!(emitted.binary_search(&canon).is_ok());
            }
        }
    }
}
