//! Permutations on {1..k} and the (n−1)-tuples of them that select one
//! multideterminantal monomial.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::shape::{Coord, Shape};

/// Bijection on {1..k}, stored as its image tuple: position `j` maps to
/// `image[j-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Permutation> {
        let k = image.len();
        if k == 0 {
            return Err(Error::input("permutation cannot be empty".to_string()));
        }
        let mut seen = vec![false; k + 1];
        for &v in &image {
            if v < 1 || v > k {
                return Err(Error::input(format!(
                    "permutation value {v} not in 1..={k}"
                )));
            }
            if seen[v] {
                return Err(Error::input(format!("permutation repeats value {v}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(k: usize) -> Permutation {
        Permutation {
            image: (1..=k).collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.image.len()
    }

    /// 1-based application.
    pub fn apply(&self, j: usize) -> usize {
        self.image[j - 1]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `(self ∘ other)(j) = self(other(j))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.k(), other.k());
        Permutation {
            image: (1..=self.k()).map(|j| self.apply(other.apply(j))).collect(),
        }
    }

    /// Parity of the permutation: +1 for even, −1 for odd.
    pub fn signature(&self) -> i64 {
        let mut inversions = 0usize;
        for i in 0..self.image.len() {
            for j in i + 1..self.image.len() {
                if self.image[i] > self.image[j] {
                    inversions += 1;
                }
            }
        }
        if inversions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// The n−1 permutations (for axes 2..n) that pick one diagonal of cells:
/// index value `j` on axis 1 selects cell `(j, λ₁(j), …, λₙ₋₁(j))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermutationTuple {
    perms: Vec<Permutation>,
}

impl PermutationTuple {
    pub fn new(perms: Vec<Permutation>) -> Result<PermutationTuple> {
        if perms.is_empty() {
            return Err(Error::input(
                "tuple needs at least one permutation".to_string(),
            ));
        }
        let k = perms[0].k();
        if perms.iter().any(|p| p.k() != k) {
            return Err(Error::input(
                "tuple permutations must share one k".to_string(),
            ));
        }
        Ok(PermutationTuple { perms })
    }

    pub fn identity(shape: Shape) -> PermutationTuple {
        PermutationTuple {
            perms: vec![Permutation::identity(shape.k()); shape.n() - 1],
        }
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn matches(&self, shape: Shape) -> bool {
        self.perms.len() == shape.n() - 1 && self.perms[0].k() == shape.k()
    }

    /// Product of the member signatures.
    pub fn sign(&self) -> i64 {
        self.perms.iter().map(Permutation::signature).product()
    }
}

/// The k cells selected by a tuple: `(j, λ₁(j), …, λₙ₋₁(j))` for
/// `j = 1..k`. Pairwise they differ in every position.
pub fn support_of(shape: Shape, tuple: &PermutationTuple) -> Result<Vec<Coord>> {
    if !tuple.matches(shape) {
        return Err(Error::input(format!(
            "tuple with {} permutations on {} symbols does not fit shape {shape}",
            tuple.perms.len(),
            tuple.perms[0].k()
        )));
    }
    let mut out = Vec::with_capacity(shape.k());
    for j in 1..=shape.k() {
        let mut indices = Vec::with_capacity(shape.n());
        indices.push(j);
        for p in &tuple.perms {
            indices.push(p.apply(j));
        }
        out.push(shape.coord(&indices)?);
    }
    Ok(out)
}

/// All permutations of {1..k} in lexicographic image order.
pub fn all_permutations(k: usize) -> Vec<Permutation> {
    (1..=k)
        .permutations(k)
        .map(|image| Permutation { image })
        .collect()
}

/// Number of monomials, `(k!)^(n−1)`, or `None` on overflow.
pub fn tuple_count(shape: Shape) -> Option<u128> {
    let mut factorial: u128 = 1;
    for i in 2..=shape.k() as u128 {
        factorial = factorial.checked_mul(i)?;
    }
    let mut total: u128 = 1;
    for _ in 0..shape.n() - 1 {
        total = total.checked_mul(factorial)?;
    }
    Some(total)
}

/// All `(k!)^(n−1)` tuples for a shape, lexicographically (first
/// permutation most significant).
pub fn all_tuples(shape: Shape) -> impl Iterator<Item = PermutationTuple> {
    let perms = all_permutations(shape.k());
    let slots = shape.n() - 1;
    let total = perms.len().pow(slots as u32);
    (0..total).map(move |mut idx| {
        let mut picks = vec![0usize; slots];
        for slot in picks.iter_mut().rev() {
            *slot = idx % perms.len();
            idx /= perms.len();
        }
        PermutationTuple {
            perms: picks.iter().map(|&i| perms[i].clone()).collect(),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_of_basic_permutations() {
        assert_eq!(Permutation::identity(3).signature(), 1);
        assert_eq!(Permutation::new(vec![2, 1]).unwrap().signature(), -1);
        // the 3-cycle (2,3,1) is two transpositions
        assert_eq!(Permutation::new(vec![2, 3, 1]).unwrap().signature(), 1);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!(Permutation::new(vec![]).is_err());
    }

    #[test]
    fn support_of_identity_is_the_main_diagonal() {
        let s = Shape::new(2, 3).unwrap();
        let support = support_of(s, &PermutationTuple::identity(s)).unwrap();
        assert_eq!(
            support,
            vec![
                s.coord(&[1, 1]).unwrap(),
                s.coord(&[2, 2]).unwrap(),
                s.coord(&[3, 3]).unwrap()
            ]
        );
    }

    #[test]
    fn support_of_mixed_tuple() {
        let s = Shape::new(3, 2).unwrap();
        let tuple = PermutationTuple::new(vec![
            Permutation::new(vec![2, 1]).unwrap(),
            Permutation::identity(2),
        ])
        .unwrap();
        let support = support_of(s, &tuple).unwrap();
        assert_eq!(
            support,
            vec![s.coord(&[1, 2, 1]).unwrap(), s.coord(&[2, 1, 2]).unwrap()]
        );
    }

    #[test]
    fn support_cells_differ_in_every_axis() {
        let s = Shape::new(3, 3).unwrap();
        for tuple in all_tuples(s) {
            let support = support_of(s, &tuple).unwrap();
            assert_eq!(support.len(), 3);
            for a in 0..support.len() {
                for b in a + 1..support.len() {
                    assert_eq!(support[a].agreement(&support[b]), 0);
                }
            }
            // each axis sees every value once
            for axis in 0..s.n() {
                let mut values: Vec<usize> = support.iter().map(|c| c.indices()[axis]).collect();
                values.sort_unstable();
                assert_eq!(values, vec![1, 2, 3]);
            }
        }
    }

    #[test]
    fn tuple_census_matches_formula() {
        for (n, k, want) in [(2usize, 3usize, 6u128), (3, 2, 4), (3, 3, 36), (4, 2, 8)] {
            let s = Shape::new(n, k).unwrap();
            assert_eq!(tuple_count(s), Some(want));
            assert_eq!(all_tuples(s).count() as u128, want);
        }
    }

    #[test]
    fn tuples_come_out_in_lexicographic_order() {
        let s = Shape::new(3, 2).unwrap();
        let tuples: Vec<PermutationTuple> = all_tuples(s).collect();
        let mut sorted = tuples.clone();
        sorted.sort();
        assert_eq!(tuples, sorted);
        assert_eq!(tuples[0], PermutationTuple::identity(s));
    }
}
