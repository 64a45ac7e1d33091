//! Cross-checks of the solvers against the enumeration oracles and the
//! classical k = 2 / bipartite specializations.

use num::BigRational;
use rand::Rng;

use mmx_core::assign::{assignment_cost, brute_force_assign, reduction_bound, solve_axial_map};
use mmx_core::det::{find_nonzero_monomial, multideterminant};
use mmx_core::friendship::{
    check_friendship, clique_decomposition, hall_condition, verify_decomposition, FriendshipVerdict,
};
use mmx_core::gen::{instance_rng, random_multimatrix};
use mmx_core::graph::PartitionedGraph;
use mmx_core::matrix::{BinaryMultimatrix, CostMultimatrix};
use mmx_core::menger::{check_cover_matching, check_separator_paths, DualityVerdict};
use mmx_core::minimax::{
    duality_gap, max_line_matching, max_rplane_matching, min_line_cover, min_rplane_cover,
    verify_rplane_cover, verify_rplane_matching,
};
use mmx_core::oracle::{
    decomposition_exists_brute, hall_condition_brute, leibniz_determinant, max_matching_size_brute,
    min_cover_size_brute, perfect_matching_exists_brute,
};
use mmx_core::perm::all_tuples;
use mmx_core::shape::Shape;
use mmx_core::textio::parse_rational;

const BUDGET: usize = 1 << 12;

fn shape(n: usize, k: usize) -> Shape {
    Shape::new(n, k).unwrap()
}

/// Bipartite graph on parts {1..k} and {k+1..2k} from an edge bitmask.
fn bipartite_from_bits(k: usize, bits: u32) -> PartitionedGraph {
    let parts = vec![(1..=k).collect(), (k + 1..=2 * k).collect()];
    let mut edges = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if bits >> (a * k + b) & 1 == 1 {
                edges.push((a + 1, k + b + 1));
            }
        }
    }
    PartitionedGraph::new(parts, edges).unwrap()
}

/// Tripartite graph on three parts of size 2 from a 12-bit edge mask.
fn tripartite_k2_from_bits(bits: u32) -> PartitionedGraph {
    let parts = vec![vec![1, 2], vec![3, 4], vec![5, 6]];
    let pairs: Vec<(usize, usize)> = [(1, 3), (1, 4), (2, 3), (2, 4)]
        .into_iter()
        .chain([(1, 5), (1, 6), (2, 5), (2, 6)])
        .chain([(3, 5), (3, 6), (4, 5), (4, 6)])
        .collect();
    let edges = pairs
        .into_iter()
        .enumerate()
        .filter(|(i, _)| bits >> i & 1 == 1)
        .map(|(_, e)| e);
    PartitionedGraph::new(parts, edges).unwrap()
}

#[test]
fn multideterminant_equals_leibniz_on_square_matrices() {
    let mut rng = instance_rng(41, 0);
    for _ in 0..300 {
        let k = rng.random_range(1..=5);
        let s = shape(2, k);
        let m = random_multimatrix(s, 0.5, &mut rng);
        let rows: Vec<Vec<i64>> = (1..=k)
            .map(|i| {
                (1..=k)
                    .map(|j| i64::from(m.get(&s.coord(&[i, j]).unwrap())))
                    .collect()
            })
            .collect();
        assert_eq!(
            multideterminant(&m, 1 << 20).unwrap(),
            leibniz_determinant(&rows)
        );
    }
}

#[test]
fn decomposition_matches_monomial_search_bipartite_k2() {
    for bits in 0u32..1 << 4 {
        let g = bipartite_from_bits(2, bits);
        let monomial = find_nonzero_monomial(&mmx_core::friendship::tensorize(&g).unwrap());
        let decomposition = clique_decomposition(&g).unwrap();
        assert_eq!(
            monomial.is_some(),
            decomposition.is_some(),
            "bits {bits:04b}"
        );
        assert_eq!(
            decomposition.is_some(),
            decomposition_exists_brute(&g),
            "bits {bits:04b}"
        );
        if let Some(d) = decomposition {
            verify_decomposition(&g, &d).unwrap();
        }
    }
}

#[test]
fn decomposition_matches_monomial_search_tripartite_k2() {
    let mut decomposable = 0u32;
    for bits in 0u32..1 << 12 {
        let g = tripartite_k2_from_bits(bits);
        let monomial = find_nonzero_monomial(&mmx_core::friendship::tensorize(&g).unwrap());
        let decomposition = clique_decomposition(&g).unwrap();
        assert_eq!(monomial.is_some(), decomposition.is_some());
        assert_eq!(decomposition.is_some(), decomposition_exists_brute(&g));
        if let Some(d) = decomposition {
            verify_decomposition(&g, &d).unwrap();
            // necessity: a decomposition hands every subset its friends
            assert!(hall_condition(&g).unwrap().holds, "bits {bits:012b}");
            decomposable += 1;
        }
    }
    assert!(decomposable > 0);
}

#[test]
fn friendship_verdict_is_consistent_on_ten_thousand_bipartite_instances() {
    let verdicts: Vec<FriendshipVerdict> = (0..10_000u64)
        .map(|i| {
            let mut rng = instance_rng(51, i);
            let k = rng.random_range(1..=4);
            let g = mmx_core::gen::random_partitioned_graph(&[k, k], 0.5, false, &mut rng).unwrap();
            check_friendship(&g).unwrap().verdict
        })
        .collect();
    assert!(verdicts.iter().all(|v| *v == FriendshipVerdict::Consistent));
}

#[test]
fn hall_matches_subset_enumeration() {
    let mut rng = instance_rng(42, 0);
    for _ in 0..400 {
        let n = rng.random_range(2..=3);
        let k = rng.random_range(1..=3);
        let sizes = vec![k; n];
        let g = mmx_core::gen::random_partitioned_graph(&sizes, 0.5, false, &mut rng).unwrap();
        let report = hall_condition(&g).unwrap();
        assert_eq!(report.holds, hall_condition_brute(&g));
        if let Some(w) = report.witness {
            // the witness is a genuine violation
            let joint = g.parts()[w.to_part - 1]
                .iter()
                .filter(|&&b| w.subset.iter().any(|&a| g.adjacent(a, b)))
                .count();
            assert!(joint < w.subset.len());
            assert_eq!(joint, w.neighborhood.len());
        }
    }
}

#[test]
fn hall_at_n2_is_perfect_matching_existence() {
    let mut rng = instance_rng(43, 0);
    for _ in 0..500 {
        let k = rng.random_range(1..=4);
        let bits: u32 = rng.random_range(0..1u32 << (k * k));
        let g = bipartite_from_bits(k, bits);
        let adj: Vec<Vec<bool>> = (0..k)
            .map(|a| (0..k).map(|b| bits >> (a * k + b) & 1 == 1).collect())
            .collect();
        assert_eq!(
            hall_condition(&g).unwrap().holds,
            perfect_matching_exists_brute(&adj)
        );
        assert_eq!(
            check_friendship(&g).unwrap().verdict,
            FriendshipVerdict::Consistent
        );
    }
}

#[test]
fn konig_equality_exhaustive_2x2_and_3x3() {
    for k in [2usize, 3] {
        let s = shape(2, k);
        for bits in 0u32..1 << (k * k) {
            let cells: Vec<bool> = (0..k * k).map(|i| bits >> i & 1 == 1).collect();
            let m = BinaryMultimatrix::from_dense(s, cells).unwrap();
            let report = duality_gap(&m, 1, BUDGET).unwrap();
            assert_eq!(report.gap(), 0, "k={k} bits={bits:b}");
        }
    }
}

#[test]
fn konig_equality_random_k_up_to_4() {
    let mut rng = instance_rng(44, 0);
    for _ in 0..10_000 {
        let k = rng.random_range(1..=4);
        let m = random_multimatrix(shape(2, k), 0.4, &mut rng);
        let report = duality_gap(&m, 1, BUDGET).unwrap();
        assert_eq!(report.gap(), 0);
    }
}

#[test]
fn solvers_match_brute_force_on_all_2x2x2_instances() {
    let s = shape(3, 2);
    for r in 1..=3 {
        for bits in 0u32..256 {
            let cells: Vec<bool> = (0..8).map(|i| bits >> i & 1 == 1).collect();
            let m = BinaryMultimatrix::from_dense(s, cells).unwrap();
            let cover = min_rplane_cover(&m, r, BUDGET).unwrap();
            let matching = max_rplane_matching(&m, r, BUDGET).unwrap();
            assert_eq!(
                cover.size(),
                min_cover_size_brute(&m, r),
                "r={r} bits={bits}"
            );
            assert_eq!(
                matching.size(),
                max_matching_size_brute(&m, r),
                "r={r} bits={bits}"
            );
            verify_rplane_cover(&m, r, &cover.planes).unwrap();
            verify_rplane_matching(&m, r, &matching.cells).unwrap();
        }
    }
}

#[test]
fn r1_equals_the_line_solvers() {
    let mut rng = instance_rng(45, 0);
    for _ in 0..50 {
        let m = random_multimatrix(shape(3, 2), 0.5, &mut rng);
        let lines = min_line_cover(&m, BUDGET).unwrap();
        let planes = min_rplane_cover(&m, 1, BUDGET).unwrap();
        assert_eq!(lines.size(), planes.size());
        let line_matching = max_line_matching(&m, BUDGET).unwrap();
        let plane_matching = max_rplane_matching(&m, 1, BUDGET).unwrap();
        assert_eq!(line_matching.cells, plane_matching.cells);
    }
}

#[test]
fn adding_ones_never_shrinks_either_optimum() {
    let mut rng = instance_rng(46, 0);
    for _ in 0..5 {
        let s = shape(3, 2);
        let mut m = BinaryMultimatrix::zeros(s);
        let mut last = duality_gap(&m, 1, BUDGET).unwrap();
        for _ in 0..20 {
            let idx = rng.random_range(0..s.cell_count());
            m = m.with_cell(&s.coord_at(idx), true);
            let next = duality_gap(&m, 1, BUDGET).unwrap();
            assert!(next.alpha >= last.alpha);
            assert!(next.beta >= last.beta);
            last = next;
        }
    }
}

#[test]
fn optima_shrink_as_planes_grow() {
    let mut rng = instance_rng(47, 0);
    for _ in 0..20 {
        let n = rng.random_range(2..=3);
        let m = random_multimatrix(shape(n, 2), 0.6, &mut rng);
        let mut last_alpha = usize::MAX;
        let mut last_beta = usize::MAX;
        for r in 1..=n {
            let report = duality_gap(&m, r, BUDGET).unwrap();
            assert!(report.alpha <= last_alpha, "alpha not monotone at r={r}");
            assert!(report.beta <= last_beta, "beta not monotone at r={r}");
            last_alpha = report.alpha;
            last_beta = report.beta;
        }
    }
}

#[test]
fn assignment_solver_agrees_with_enumeration() {
    let mut rng = instance_rng(48, 0);
    for _ in 0..100 {
        let s = shape(3, 3);
        let values: Vec<BigRational> = (0..s.cell_count())
            .map(|_| BigRational::from_integer(rng.random_range(-50i64..=50).into()))
            .collect();
        let c = CostMultimatrix::from_dense(s, values).unwrap();
        let oracle = brute_force_assign(&c, 1 << 20).unwrap();
        let (got, _) = solve_axial_map(&c);
        assert_eq!(got, oracle);
    }
}

#[test]
fn slice_shift_preserves_argmin_set() {
    let mut rng = instance_rng(49, 0);
    let s = shape(3, 2);
    for _ in 0..40 {
        let values: Vec<BigRational> = (0..s.cell_count())
            .map(|_| BigRational::from_integer(rng.random_range(-9i64..=9).into()))
            .collect();
        let c = CostMultimatrix::from_dense(s, values.clone()).unwrap();
        // add a constant to the (n−1)-plane {axis 2 = 1}
        let delta = BigRational::from_integer(7.into());
        let shifted_values: Vec<BigRational> = (0..s.cell_count())
            .map(|i| {
                let coord = s.coord_at(i);
                if coord.indices()[1] == 1 {
                    values[i].clone() + delta.clone()
                } else {
                    values[i].clone()
                }
            })
            .collect();
        let shifted = CostMultimatrix::from_dense(s, shifted_values).unwrap();

        let base_best = brute_force_assign(&c, 1 << 20).unwrap();
        let argmin: Vec<_> = all_tuples(s)
            .filter(|t| assignment_cost(&c, t).unwrap() == base_best.cost)
            .collect();
        let shifted_best = brute_force_assign(&shifted, 1 << 20).unwrap();
        let shifted_argmin: Vec<_> = all_tuples(s)
            .filter(|t| assignment_cost(&shifted, t).unwrap() == shifted_best.cost)
            .collect();
        assert_eq!(argmin, shifted_argmin);
        assert_eq!(shifted_best.cost, base_best.cost + delta);
    }
}

#[test]
fn reduction_bound_is_tight_exactly_when_a_zero_assignment_survives() {
    use num::Zero;
    let mut rng = instance_rng(50, 0);
    let mut tight = 0;
    let mut slack = 0;
    for _ in 0..200 {
        let n = rng.random_range(2..=3);
        let k = rng.random_range(1..=3);
        let s = shape(n, k);
        let values: Vec<BigRational> = (0..s.cell_count())
            .map(|_| BigRational::from_integer(rng.random_range(0i64..=6).into()))
            .collect();
        let c = CostMultimatrix::from_dense(s, values).unwrap();
        let (bound, reduced) = reduction_bound(&c);
        let optimum = brute_force_assign(&c, 1 << 20).unwrap().cost;
        assert!(bound <= optimum);
        let zero_pattern: Vec<bool> = reduced.values().iter().map(|v| v.is_zero()).collect();
        let zeros = BinaryMultimatrix::from_dense(s, zero_pattern).unwrap();
        let has_zero_assignment = find_nonzero_monomial(&zeros).is_some();
        assert_eq!(bound == optimum, has_zero_assignment);
        if bound == optimum {
            tight += 1;
        } else {
            slack += 1;
        }
    }
    assert!(
        tight > 0 && slack > 0,
        "both cases should occur: {tight}/{slack}"
    );
}

#[test]
fn bipartite_cover_matching_has_no_gap_small_exhaustive() {
    // all edge subsets of the 2+3 bipartite shell
    let parts = vec![vec![1, 2], vec![3, 4, 5]];
    let pairs = [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)];
    for bits in 0u32..1 << 6 {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &e)| e);
        let g = PartitionedGraph::new(parts.clone(), edges).unwrap();
        let report = check_cover_matching(&g, 14).unwrap();
        assert_eq!(report.verdict, DualityVerdict::Equal, "bits {bits:06b}");
    }
}

#[test]
fn two_part_separator_duality_holds_up_to_five_vertices() {
    // exhaustive over split partitions and edge subsets
    for total in 2usize..=5 {
        let pair_list: Vec<(usize, usize)> = (1..=total)
            .flat_map(|u| (u + 1..=total).map(move |v| (u, v)))
            .collect();
        for split in 1..total {
            let parts = vec![
                (1..=split).collect::<Vec<_>>(),
                (split + 1..=total).collect::<Vec<_>>(),
            ];
            for bits in 0u32..1 << pair_list.len() {
                let edges = pair_list
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .map(|(_, &e)| e);
                let g = PartitionedGraph::new(parts.clone(), edges).unwrap();
                let report = check_separator_paths(&g, 14).unwrap();
                assert_eq!(
                    report.verdict,
                    DualityVerdict::Equal,
                    "total={total} split={split} bits={bits:b}"
                );
            }
        }
    }
}

#[test]
fn costs_stay_exact_through_parsing() {
    // a deliberately awkward rational instance keeps exact comparisons
    let s = shape(2, 2);
    let values = ["1/3", "1/3", "1/3", "0.999999999999999"]
        .iter()
        .map(|t| parse_rational(t).unwrap())
        .collect();
    let c = CostMultimatrix::from_dense(s, values).unwrap();
    let best = brute_force_assign(&c, 100).unwrap();
    // 1/3 + 0.999999999999999 < 1/3 + 1/3 is false: 2/3 is smaller
    assert_eq!(best.cost, parse_rational("2/3").unwrap());
}

#[test]
fn solvers_match_brute_force_on_larger_shapes() {
    // sparse instances keep the subset-enumeration oracles tractable
    let mut rng = instance_rng(52, 0);
    for (n, k, r_max) in [(4usize, 2usize, 4usize), (3, 3, 3), (2, 4, 2)] {
        let s = shape(n, k);
        for trial in 0..25 {
            let m = random_multimatrix(s, 0.25, &mut rng);
            if m.count_ones() > 12 {
                continue;
            }
            let r = trial % r_max + 1;
            let report = duality_gap(&m, r, BUDGET).unwrap();
            assert_eq!(
                report.alpha,
                min_cover_size_brute(&m, r),
                "cover n={n} k={k} r={r} trial={trial}"
            );
            assert_eq!(
                report.beta,
                max_matching_size_brute(&m, r),
                "matching n={n} k={k} r={r} trial={trial}"
            );
        }
    }
}

/// Oracle over ALL simple cross-part paths (no chordless restriction),
/// validating the solver's restriction to chordless candidates.
fn max_disjoint_paths_brute(g: &PartitionedGraph) -> usize {
    fn extend(
        g: &PartitionedGraph,
        path: &mut Vec<usize>,
        visited: u64,
        out: &mut Vec<(u64, usize)>,
    ) {
        let last = *path.last().unwrap();
        for w in 1..=g.vertex_count() {
            if visited & 1 << (w - 1) != 0 || !g.adjacent(last, w) {
                continue;
            }
            path.push(w);
            if path[0] < w && g.part_of(path[0]) != g.part_of(w) {
                out.push((visited | 1 << (w - 1), path.len()));
            }
            extend(g, path, visited | 1 << (w - 1), out);
            path.pop();
        }
    }
    let mut paths: Vec<(u64, usize)> = Vec::new();
    for start in 1..=g.vertex_count() {
        let mut path = vec![start];
        extend(g, &mut path, 1 << (start - 1), &mut paths);
    }
    fn best(paths: &[(u64, usize)], idx: usize, used: u64, count: usize) -> usize {
        if idx == paths.len() {
            return count;
        }
        let mut out = best(paths, idx + 1, used, count);
        if paths[idx].0 & used == 0 {
            out = out.max(best(paths, idx + 1, used | paths[idx].0, count + 1));
        }
        out
    }
    best(&paths, 0, 0, 0)
}

#[test]
fn path_system_solver_matches_the_all_paths_oracle() {
    use mmx_core::menger::max_disjoint_paths;
    let mut rng = instance_rng(53, 0);
    for trial in 0..300 {
        let nparts = rng.random_range(2..=3);
        let sizes: Vec<usize> = (0..nparts).map(|_| rng.random_range(1..=2)).collect();
        let intra = trial % 2 == 0;
        let g = mmx_core::gen::random_partitioned_graph(&sizes, 0.5, intra, &mut rng).unwrap();
        let got = max_disjoint_paths(&g, 14).unwrap().size();
        assert_eq!(got, max_disjoint_paths_brute(&g), "trial {trial}: {g:?}");
    }
    // plus exhaustive over all 3-part one-vertex graphs and 2+2+2 samples
    for bits in 0u32..8 {
        let edges = [(1, 2), (1, 3), (2, 3)]
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &e)| e);
        let g = PartitionedGraph::new(vec![vec![1], vec![2], vec![3]], edges).unwrap();
        assert_eq!(
            max_disjoint_paths(&g, 14).unwrap().size(),
            max_disjoint_paths_brute(&g)
        );
    }
}
