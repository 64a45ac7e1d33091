//! The multideterminant of a binary multimatrix and exact search over
//! its monomials.
//!
//! A monomial is selected by an (n−1)-tuple of permutations; it is
//! nonzero exactly when all k cells of the tuple's support are 1. The
//! full expansion has `(k!)^(n−1)` terms, so [`multideterminant`] takes
//! a term budget; the searches below backtrack instead of enumerating.

use crate::error::{Error, Result};
use crate::matrix::BinaryMultimatrix;
use crate::perm::{all_permutations, tuple_count, Permutation, PermutationTuple};

/// Exact signed sum over all `(k!)^(n−1)` monomials.
pub fn multideterminant(m: &BinaryMultimatrix, term_limit: u128) -> Result<i64> {
    let shape = m.shape();
    let required = tuple_count(shape).unwrap_or(u128::MAX);
    if required > term_limit {
        return Err(Error::Budget {
            what: "multideterminant expansion",
            required,
            limit: term_limit,
        });
    }
    let perms = all_permutations(shape.k());
    let signs: Vec<i64> = perms.iter().map(Permutation::signature).collect();
    let slots = shape.n() - 1;

    let mut total: i64 = 0;
    let mut picks = vec![0usize; slots];
    loop {
        let mut sign = 1i64;
        let mut value = true;
        for j in 1..=shape.k() {
            let mut indices = Vec::with_capacity(shape.n());
            indices.push(j);
            for &p in &picks {
                indices.push(perms[p].apply(j));
            }
            let coord = shape.coord(&indices)?;
            if !m.get(&coord) {
                value = false;
                break;
            }
        }
        if value {
            for &p in &picks {
                sign *= signs[p];
            }
            total += sign;
        }
        // odometer over the permutation indices, last slot fastest
        let mut slot = slots;
        loop {
            if slot == 0 {
                return Ok(total);
            }
            slot -= 1;
            picks[slot] += 1;
            if picks[slot] < perms.len() {
                break;
            }
            picks[slot] = 0;
        }
    }
}

/// Result of a capped monomial count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialCount {
    Exact(u64),
    AtLeast(u64),
}

impl MonomialCount {
    pub fn is_positive(&self) -> bool {
        match self {
            MonomialCount::Exact(c) => *c > 0,
            MonomialCount::AtLeast(_) => true,
        }
    }
}

/// Exact number of nonzero monomials, stopping early at `cap`.
pub fn count_nonzero_monomials(m: &BinaryMultimatrix, cap: u64) -> MonomialCount {
    let search = SupportSearch::new(m);
    let fixed = search.empty_constraints();
    let mut counted = 0u64;
    let capped = search.count(&fixed, cap, &mut counted);
    if capped {
        MonomialCount::AtLeast(counted)
    } else {
        MonomialCount::Exact(counted)
    }
}

/// The lexicographically least tuple whose support lies on 1-cells, or
/// `None` when the instance has no nonzero monomial. Complete
/// backtracking search, no truncation.
pub fn find_nonzero_monomial(m: &BinaryMultimatrix) -> Option<PermutationTuple> {
    let shape = m.shape();
    let search = SupportSearch::new(m);
    let mut fixed = search.empty_constraints();
    if !search.exists(&fixed) {
        return None;
    }
    // Fix positions in tuple order (permutation 1 first, then its image
    // positions) to the least value that still admits a completion; the
    // filled-in constraint matrix is then the least qualifying tuple.
    for axis in 0..shape.n() - 1 {
        for j in 0..shape.k() {
            for v in 1..=shape.k() {
                if fixed[axis][..j].contains(&Some(v)) {
                    continue;
                }
                fixed[axis][j] = Some(v);
                if search.exists(&fixed) {
                    break;
                }
                fixed[axis][j] = None;
            }
            assert!(
                fixed[axis][j].is_some(),
                "extendable prefix lost its completion"
            );
        }
    }
    let perms = fixed
        .into_iter()
        .map(|images| Permutation::new(images.into_iter().map(Option::unwrap).collect()).unwrap())
        .collect();
    Some(PermutationTuple::new(perms).unwrap())
}

/// Per-position constraints: `fixed[axis][j]` pins `λ_{axis+1}(j+1)`.
type Constraints = Vec<Vec<Option<usize>>>;

/// Backtracking search for diagonal supports on 1-cells. Rows are the
/// axis-1 index values; row `j` must pick a 1-cell `(j, i_2, …, i_n)`
/// whose later indices are unused on their axes.
struct SupportSearch {
    n: usize,
    k: usize,
    /// rows[j-1] = suffixes (values for axes 2..n) of the 1-cells with
    /// first index j, in lexicographic order.
    rows: Vec<Vec<Vec<usize>>>,
}

impl SupportSearch {
    fn new(m: &BinaryMultimatrix) -> SupportSearch {
        let shape = m.shape();
        let mut rows = vec![Vec::new(); shape.k()];
        for coord in m.ones() {
            let indices = coord.indices();
            rows[indices[0] - 1].push(indices[1..].to_vec());
        }
        SupportSearch {
            n: shape.n(),
            k: shape.k(),
            rows,
        }
    }

    fn empty_constraints(&self) -> Constraints {
        vec![vec![None; self.k]; self.n - 1]
    }

    fn exists(&self, fixed: &Constraints) -> bool {
        let mut used = vec![vec![false; self.k + 1]; self.n - 1];
        self.dfs_exists(0, fixed, &mut used)
    }

    fn dfs_exists(&self, row: usize, fixed: &Constraints, used: &mut Vec<Vec<bool>>) -> bool {
        if row == self.k {
            return true;
        }
        'next: for suffix in &self.rows[row] {
            for axis in 0..self.n - 1 {
                let v = suffix[axis];
                if used[axis][v] || fixed[axis][row].is_some_and(|want| want != v) {
                    continue 'next;
                }
            }
            for axis in 0..self.n - 1 {
                used[axis][suffix[axis]] = true;
            }
            if self.dfs_exists(row + 1, fixed, used) {
                return true;
            }
            for axis in 0..self.n - 1 {
                used[axis][suffix[axis]] = false;
            }
        }
        false
    }

    /// Counts completions; returns true when the cap cut the count short.
    fn count(&self, fixed: &Constraints, cap: u64, counted: &mut u64) -> bool {
        let mut used = vec![vec![false; self.k + 1]; self.n - 1];
        self.dfs_count(0, fixed, &mut used, cap, counted)
    }

    fn dfs_count(
        &self,
        row: usize,
        fixed: &Constraints,
        used: &mut Vec<Vec<bool>>,
        cap: u64,
        counted: &mut u64,
    ) -> bool {
        if *counted >= cap {
            return true;
        }
        if row == self.k {
            *counted += 1;
            return *counted >= cap;
        }
        'next: for suffix in &self.rows[row] {
            for axis in 0..self.n - 1 {
                let v = suffix[axis];
                if used[axis][v] || fixed[axis][row].is_some_and(|want| want != v) {
                    continue 'next;
                }
            }
            for axis in 0..self.n - 1 {
                used[axis][suffix[axis]] = true;
            }
            let capped = self.dfs_count(row + 1, fixed, used, cap, counted);
            for axis in 0..self.n - 1 {
                used[axis][suffix[axis]] = false;
            }
            if capped {
                return true;
            }
        }
        false
    }
}
