//! Exact axial multidimensional assignment: pick k cells, one per index
//! value on every axis, minimizing total rational cost.
//!
//! The feasible selections are exactly the permutation-tuple supports.
//! [`brute_force_assign`] enumerates them; [`solve_axial_map`] runs a
//! branch and bound whose lower bound subtracts per-slice minima the way
//! row/column reduction does for k×k matrices, and both break ties
//! toward the lexicographically least tuple.

use num::BigRational;
use num::Zero;

use crate::error::{Error, Result};
use crate::matrix::CostMultimatrix;
use crate::perm::{all_tuples, support_of, tuple_count, Permutation, PermutationTuple};
use crate::shape::Shape;

/// One feasible selection and its total cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub tuple: PermutationTuple,
    pub cost: BigRational,
}

/// Search counters for a [`solve_axial_map`] run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub root_bound: BigRational,
}

/// Total cost of a tuple's support on this instance.
pub fn assignment_cost(c: &CostMultimatrix, tuple: &PermutationTuple) -> Result<BigRational> {
    let support = support_of(c.shape(), tuple)?;
    Ok(support.iter().map(|cell| c.get(cell)).sum())
}

/// Global optimum by full enumeration of all `(k!)^(n−1)` tuples;
/// ties go to the lexicographically least tuple.
pub fn brute_force_assign(c: &CostMultimatrix, tuple_budget: u128) -> Result<Assignment> {
    let shape = c.shape();
    let required = tuple_count(shape).unwrap_or(u128::MAX);
    if required > tuple_budget {
        return Err(Error::Budget {
            what: "assignment enumeration",
            required,
            limit: tuple_budget,
        });
    }
    let mut best: Option<Assignment> = None;
    for tuple in all_tuples(shape) {
        let cost = assignment_cost(c, &tuple)?;
        if best.as_ref().is_none_or(|b| cost < b.cost) {
            best = Some(Assignment { tuple, cost });
        }
    }
    Ok(best.expect("every shape admits at least one tuple"))
}

/// Subtracts, axis by axis, the minimum of every (n−1)-plane
/// `{coordinate_axis = t}` from its cells. Returns the sum of the
/// subtracted minima and the reduced instance, which is non-negative
/// with a zero in every slice. Every feasible assignment costs exactly
/// `bound + (its cost on the reduced instance)`.
pub fn reduction_bound(c: &CostMultimatrix) -> (BigRational, CostMultimatrix) {
    let shape = c.shape();
    let mut reduced = c.clone();
    let mut bound = BigRational::zero();
    for axis in 0..shape.n() {
        let mut minima: Vec<Option<BigRational>> = vec![None; shape.k()];
        for idx in 0..shape.cell_count() {
            let t = axis_value(shape, idx, axis);
            let v = reduced.get_linear(idx);
            if minima[t].as_ref().is_none_or(|m| v < m) {
                minima[t] = Some(v.clone());
            }
        }
        for idx in 0..shape.cell_count() {
            let t = axis_value(shape, idx, axis);
            let m = minima[t].as_ref().expect("every slice has cells");
            let v = reduced.get_linear(idx) - m;
            reduced.set_linear(idx, v);
        }
        for m in minima {
            bound += m.expect("every slice has cells");
        }
    }
    (bound, reduced)
}

/// 0-based value of `axis` in the cell at dense position `idx`.
fn axis_value(shape: Shape, idx: usize, axis: usize) -> usize {
    let below = shape.k().pow((shape.n() - 1 - axis) as u32);
    idx / below % shape.k()
}

/// Exact optimum by branch and bound; agrees with
/// [`brute_force_assign`] including the lexicographic tie-break.
pub fn solve_axial_map(c: &CostMultimatrix) -> (Assignment, SolveStats) {
    let shape = c.shape();
    let (root_bound, reduced) = reduction_bound(c);
    let mut search = Search {
        c,
        reduced: &reduced,
        shape,
        nodes: 0,
    };

    let mut best: Option<BigRational> = None;
    let no_constraints = vec![vec![None; shape.k()]; shape.n() - 1];
    let mut used = vec![vec![false; shape.k() + 1]; shape.n() - 1];
    search.descend(
        0,
        BigRational::zero(),
        &no_constraints,
        &mut used,
        &mut Goal::Minimize(&mut best),
    );
    let optimum = best.expect("search visits at least one leaf");

    // recover the least optimal tuple by fixing positions in tuple
    // order against the decision search
    let mut fixed: Vec<Vec<Option<usize>>> = vec![vec![None; shape.k()]; shape.n() - 1];
    for axis in 0..shape.n() - 1 {
        for j in 0..shape.k() {
            for v in 1..=shape.k() {
                if fixed[axis][..j].contains(&Some(v)) {
                    continue;
                }
                fixed[axis][j] = Some(v);
                let mut hit = false;
                let mut used = vec![vec![false; shape.k() + 1]; shape.n() - 1];
                search.descend(
                    0,
                    BigRational::zero(),
                    &fixed,
                    &mut used,
                    &mut Goal::Achieve(&optimum, &mut hit),
                );
                if hit {
                    break;
                }
                fixed[axis][j] = None;
            }
            assert!(
                fixed[axis][j].is_some(),
                "optimal prefix lost its completion"
            );
        }
    }
    let perms = fixed
        .into_iter()
        .map(|images| Permutation::new(images.into_iter().map(Option::unwrap).collect()).unwrap())
        .collect();
    let tuple = PermutationTuple::new(perms).unwrap();
    debug_assert_eq!(assignment_cost(c, &tuple).unwrap(), optimum);
    (
        Assignment {
            tuple,
            cost: optimum,
        },
        SolveStats {
            nodes: search.nodes,
            root_bound,
        },
    )
}

enum Goal<'a> {
    /// Track the best complete cost seen.
    Minimize(&'a mut Option<BigRational>),
    /// Stop as soon as some completion matches the target cost.
    Achieve(&'a BigRational, &'a mut bool),
}

struct Search<'a> {
    c: &'a CostMultimatrix,
    reduced: &'a CostMultimatrix,
    shape: Shape,
    nodes: u64,
}

impl Search<'_> {
    /// Branches on the axis-1 index `row` (0-based), assigning one cell
    /// per row; candidates come in root-reduced-cost order.
    fn descend(
        &mut self,
        row: usize,
        cost: BigRational,
        fixed: &[Vec<Option<usize>>],
        used: &mut Vec<Vec<bool>>,
        goal: &mut Goal<'_>,
    ) {
        self.nodes += 1;
        let k = self.shape.k();
        if row == k {
            match goal {
                Goal::Minimize(best) => {
                    if best.as_ref().is_none_or(|b| &cost < b) {
                        **best = Some(cost);
                    }
                }
                Goal::Achieve(target, hit) => {
                    debug_assert!(&cost >= target);
                    if &&cost == target {
                        **hit = true;
                    }
                }
            }
            return;
        }
        let bound = cost.clone() + self.residual_bound(row, used);
        match goal {
            Goal::Minimize(best) => {
                if best.as_ref().is_some_and(|b| &bound >= b) {
                    return;
                }
            }
            Goal::Achieve(target, hit) => {
                if **hit || &&bound > target {
                    return;
                }
            }
        }

        let mut candidates = self.row_candidates(row, fixed, used);
        candidates.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        for (_, suffix) in candidates {
            for (axis, &v) in suffix.iter().enumerate() {
                used[axis][v] = true;
            }
            let cell_cost = self.cell_cost(self.c, row, &suffix);
            self.descend(row + 1, cost.clone() + cell_cost, fixed, used, goal);
            for (axis, &v) in suffix.iter().enumerate() {
                used[axis][v] = false;
            }
            if let Goal::Achieve(_, hit) = goal {
                if **hit {
                    return;
                }
            }
        }
    }

    /// All admissible (n−1)-suffixes for a row with their root-reduced
    /// cost, unsorted.
    fn row_candidates(
        &self,
        row: usize,
        fixed: &[Vec<Option<usize>>],
        used: &[Vec<bool>],
    ) -> Vec<(BigRational, Vec<usize>)> {
        let k = self.shape.k();
        let slots = self.shape.n() - 1;
        let mut out = Vec::new();
        let mut suffix = vec![0usize; slots];
        self.collect_suffixes(row, 0, &mut suffix, fixed, used, &mut out, k, slots);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn collect_suffixes(
        &self,
        row: usize,
        axis: usize,
        suffix: &mut Vec<usize>,
        fixed: &[Vec<Option<usize>>],
        used: &[Vec<bool>],
        out: &mut Vec<(BigRational, Vec<usize>)>,
        k: usize,
        slots: usize,
    ) {
        if axis == slots {
            let cost = self.cell_cost(self.reduced, row, suffix);
            out.push((cost, suffix.clone()));
            return;
        }
        for v in 1..=k {
            if used[axis][v] || fixed[axis][row].is_some_and(|want| want != v) {
                continue;
            }
            suffix[axis] = v;
            self.collect_suffixes(row, axis + 1, suffix, fixed, used, out, k, slots);
        }
    }

    fn cell_cost(&self, m: &CostMultimatrix, row: usize, suffix: &[usize]) -> BigRational {
        let mut indices = Vec::with_capacity(self.shape.n());
        indices.push(row + 1);
        indices.extend_from_slice(suffix);
        let coord = self
            .shape
            .coord(&indices)
            .expect("in-range by construction");
        m.get(&coord).clone()
    }

    /// Reduction bound of the sub-instance on rows `row..` and the
    /// still-unused values of the later axes.
    fn residual_bound(&self, row: usize, used: &[Vec<bool>]) -> BigRational {
        let k = self.shape.k();
        let k_rest = k - row;
        if k_rest == 0 {
            return BigRational::zero();
        }
        let free_values: Vec<Vec<usize>> = used
            .iter()
            .map(|u| (1..=k).filter(|&v| !u[v]).collect())
            .collect();
        if k_rest == 1 {
            // single remaining cell
            let suffix: Vec<usize> = free_values.iter().map(|f| f[0]).collect();
            return self.cell_cost(self.c, row, &suffix);
        }
        let sub_shape = Shape::new(self.shape.n(), k_rest).expect("valid residual shape");
        let mut values = Vec::with_capacity(sub_shape.cell_count());
        let mut picks = vec![0usize; self.shape.n()];
        loop {
            let mut indices = Vec::with_capacity(self.shape.n());
            indices.push(row + picks[0] + 1);
            for (axis, &p) in picks[1..].iter().enumerate() {
                indices.push(free_values[axis][p]);
            }
            let coord = self
                .shape
                .coord(&indices)
                .expect("in-range by construction");
            values.push(self.c.get(&coord).clone());
            let mut slot = self.shape.n();
            loop {
                if slot == 0 {
                    let sub = CostMultimatrix::from_dense(sub_shape, values)
                        .expect("dense data sized by shape");
                    return reduction_bound(&sub).0;
                }
                slot -= 1;
                picks[slot] += 1;
                if picks[slot] < k_rest {
                    break;
                }
                picks[slot] = 0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse_rational;
    use num::Signed;

    fn rational(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn cost_matrix(n: usize, k: usize, values: &[&str]) -> CostMultimatrix {
        let shape = Shape::new(n, k).unwrap();
        CostMultimatrix::from_dense(shape, values.iter().map(|v| rational(v)).collect()).unwrap()
    }

    #[test]
    fn k1_is_the_single_cell() {
        let c = cost_matrix(2, 1, &["7/2"]);
        let a = brute_force_assign(&c, 10).unwrap();
        assert_eq!(a.cost, rational("7/2"));
        let (b, _) = solve_axial_map(&c);
        assert_eq!(a, b);
    }

    #[test]
    fn two_by_two_prefers_the_cheap_diagonal() {
        let c = cost_matrix(2, 2, &["1", "2", "2", "1"]);
        let a = brute_force_assign(&c, 10).unwrap();
        assert_eq!(a.cost, rational("2"));
        assert_eq!(a.tuple, PermutationTuple::identity(c.shape()));
        let (b, _) = solve_axial_map(&c);
        assert_eq!(a, b);
    }

    #[test]
    fn uniform_shift_moves_cost_not_argmin() {
        let c = cost_matrix(2, 2, &["1", "2", "2", "1"]);
        let shifted = cost_matrix(2, 2, &["6", "7", "7", "6"]);
        let a = brute_force_assign(&c, 10).unwrap();
        let b = brute_force_assign(&shifted, 10).unwrap();
        assert_eq!(a.tuple, b.tuple);
        assert_eq!(b.cost, a.cost + rational("10"));
    }

    #[test]
    fn all_equal_costs_pick_the_least_tuple() {
        let c = cost_matrix(3, 2, &["3", "3", "3", "3", "3", "3", "3", "3"]);
        let (a, _) = solve_axial_map(&c);
        assert_eq!(a.cost, rational("6"));
        assert_eq!(a.tuple, PermutationTuple::identity(c.shape()));
        let (bound, reduced) = reduction_bound(&c);
        assert_eq!(bound, rational("6"));
        assert!(reduced.values().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn identity_diagonal_costs_zero() {
        let shape = Shape::new(3, 2).unwrap();
        let diag = support_of(shape, &PermutationTuple::identity(shape)).unwrap();
        let values: Vec<BigRational> = (0..shape.cell_count())
            .map(|i| {
                if diag.iter().any(|c| shape.linear_index(c) == i) {
                    BigRational::zero()
                } else {
                    rational("1")
                }
            })
            .collect();
        let c = CostMultimatrix::from_dense(shape, values).unwrap();
        let (a, _) = solve_axial_map(&c);
        assert!(a.cost.is_zero());
        assert_eq!(a.tuple, PermutationTuple::identity(shape));
    }

    #[test]
    fn reduction_is_an_exact_accounting_identity() {
        // classical row/column reduction at n=2
        let c = cost_matrix(2, 2, &["4", "6", "3", "7"]);
        let (bound, reduced) = reduction_bound(&c);
        assert!(reduced.values().iter().all(|v| !v.is_negative()));
        for tuple in all_tuples(c.shape()) {
            let full = assignment_cost(&c, &tuple).unwrap();
            let rest = assignment_cost(&reduced, &tuple).unwrap();
            assert_eq!(full, bound.clone() + rest);
        }
    }

    #[test]
    fn reduction_identity_on_a_3d_instance() {
        let c = cost_matrix(3, 2, &["5", "-1", "2", "0", "4", "4", "-3", "1"]);
        let (bound, reduced) = reduction_bound(&c);
        assert!(reduced.values().iter().all(|v| !v.is_negative()));
        for tuple in all_tuples(c.shape()) {
            let full = assignment_cost(&c, &tuple).unwrap();
            let rest = assignment_cost(&reduced, &tuple).unwrap();
            assert_eq!(full, bound.clone() + rest);
        }
    }

    #[test]
    fn budget_error_reports_the_required_count() {
        let c = cost_matrix(
            3,
            3,
            &[
                "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1",
                "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1",
            ],
        );
        let err = brute_force_assign(&c, 35).unwrap_err();
        assert_eq!(
            err,
            Error::Budget {
                what: "assignment enumeration",
                required: 36,
                limit: 35
            }
        );
    }

    #[test]
    fn solver_matches_enumeration_on_seeded_instances() {
        use rand::Rng;
        let mut rng = crate::gen::instance_rng(11, 0);
        for n in 2..=3 {
            for k in 1..=3 {
                let shape = Shape::new(n, k).unwrap();
                for _ in 0..25 {
                    let values: Vec<BigRational> = (0..shape.cell_count())
                        .map(|_| BigRational::from_integer(rng.random_range(-9i64..=9).into()))
                        .collect();
                    let c = CostMultimatrix::from_dense(shape, values).unwrap();
                    let oracle = brute_force_assign(&c, 1 << 20).unwrap();
                    let (got, stats) = solve_axial_map(&c);
                    assert_eq!(got, oracle, "n={n} k={k}");
                    assert!(stats.root_bound <= oracle.cost);
                }
            }
        }
    }
}
