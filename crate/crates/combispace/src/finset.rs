//! Finite subsets of the positive integers, stored as strictly increasing
//! lists.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FinSetError {
    #[error("elements must be >= 1, got {0}")]
    NonPositive(u32),
    #[error("elements must be strictly increasing, got {0} after {1}")]
    NotIncreasing(u32, u32),
    #[error("duplicate element {0}")]
    Duplicate(u32),
}

/// A finite subset of `{1, 2, 3, ...}`.
///
/// The derived `Ord` is lexicographic on the sorted element lists, which is
/// the enumeration and witness order used throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FinSet {
    elements: Vec<u32>,
}

impl FinSet {
    pub fn empty() -> Self {
        FinSet::default()
    }

    pub fn singleton(n: u32) -> Self {
        debug_assert!(n >= 1);
        FinSet { elements: vec![n] }
    }

    /// Builds a set from an already strictly increasing list.
    pub fn new(elements: Vec<u32>) -> Result<Self, FinSetError> {
        for (i, &e) in elements.iter().enumerate() {
            if e < 1 {
                return Err(FinSetError::NonPositive(e));
            }
            if i > 0 && elements[i - 1] >= e {
                return Err(FinSetError::NotIncreasing(e, elements[i - 1]));
            }
        }
        Ok(FinSet { elements })
    }

    /// Builds a set from arbitrary order, rejecting duplicates.
    pub fn from_unsorted(mut elements: Vec<u32>) -> Result<Self, FinSetError> {
        elements.sort_unstable();
        for (i, &e) in elements.iter().enumerate() {
            if e < 1 {
                return Err(FinSetError::NonPositive(e));
            }
            if i > 0 && elements[i - 1] == e {
                return Err(FinSetError::Duplicate(e));
            }
        }
        Ok(FinSet { elements })
    }

    /// The window `{1, ..., m}`.
    pub fn window(m: u32) -> Self {
        FinSet { elements: (1..=m).collect() }
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.elements.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Smallest element; named to avoid clashing with `Ord::min`.
    pub fn min_elem(&self) -> Option<u32> {
        self.elements.first().copied()
    }

    /// Largest element; named to avoid clashing with `Ord::max`.
    pub fn max_elem(&self) -> Option<u32> {
        self.elements.last().copied()
    }

    pub fn contains(&self, n: u32) -> bool {
        self.elements.binary_search(&n).is_ok()
    }

    pub fn is_subset_of(&self, other: &FinSet) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }

    /// A new set with `n` adjoined; `None` if `n` is already present.
    pub fn with_element(&self, n: u32) -> Option<FinSet> {
        match self.elements.binary_search(&n) {
            Ok(_) => None,
            Err(pos) => {
                let mut elements = self.elements.clone();
                elements.insert(pos, n);
                Some(FinSet { elements })
            }
        }
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &FinSet) -> FinSet {
        FinSet {
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|&e| !other.contains(e))
                .collect(),
        }
    }

    /// Union of disjoint sets; panics on overlap (callers guarantee it).
    pub fn union_disjoint(&self, other: &FinSet) -> FinSet {
        let mut elements = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.elements.len() || j < other.elements.len() {
            match (self.elements.get(i), other.elements.get(j)) {
                (Some(&a), Some(&b)) => {
                    assert_ne!(a, b, "sets are not disjoint");
                    if a < b {
                        elements.push(a);
                        i += 1;
                    } else {
                        elements.push(b);
                        j += 1;
                    }
                }
                (Some(&a), None) => {
                    elements.push(a);
                    i += 1;
                }
                (None, Some(&b)) => {
                    elements.push(b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        FinSet { elements }
    }

    /// Image under a pointwise map, re-sorted. Fails only if the map is not
    /// injective on the elements.
    pub fn map(&self, f: impl Fn(u32) -> u32) -> Result<FinSet, FinSetError> {
        FinSet::from_unsorted(self.elements.iter().map(|&e| f(e)).collect())
    }

    /// All subsets, in lexicographic order (the empty set first).
    pub fn subsets(&self) -> Vec<FinSet> {
        fn rec(elements: &[u32], idx: usize, current: &mut Vec<u32>, out: &mut Vec<FinSet>) {
            out.push(FinSet { elements: current.clone() });
            for i in idx..elements.len() {
                current.push(elements[i]);
                rec(elements, i + 1, current, out);
                current.pop();
            }
        }
        let mut out = Vec::with_capacity(1 << self.len().min(24));
        let mut current = Vec::new();
        rec(&self.elements, 0, &mut current, &mut out);
        out
    }
}

/// Whether `f` is a spreading of `e`: equal sizes and the i-th smallest
/// element of `f` dominates the i-th smallest element of `e`.
pub fn is_spreading_of(e: &FinSet, f: &FinSet) -> bool {
    e.len() == f.len()
        && e.elements()
            .iter()
            .zip(f.elements())
            .all(|(a, b)| b >= a)
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl From<FinSet> for Vec<u32> {
    fn from(s: FinSet) -> Vec<u32> {
        s.elements
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(v: &[u32]) -> FinSet {
        FinSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(FinSet::new(vec![1, 2, 5]).is_ok());
        assert!(FinSet::new(vec![0, 1]).is_err());
        assert!(FinSet::new(vec![2, 2]).is_err());
        assert!(FinSet::new(vec![3, 2]).is_err());
        assert!(FinSet::from_unsorted(vec![3, 1, 2]).is_ok());
        assert!(FinSet::from_unsorted(vec![3, 3]).is_err());
    }

    #[test]
    fn spreading_examples() {
        assert!(is_spreading_of(&fs(&[2, 3]), &fs(&[2, 5])));
        assert!(is_spreading_of(&fs(&[2, 3]), &fs(&[3, 4])));
        assert!(!is_spreading_of(&fs(&[2, 3, 4]), &fs(&[2, 3])));
        assert!(!is_spreading_of(&fs(&[2, 3]), &fs(&[1, 5])));
        assert!(is_spreading_of(&FinSet::empty(), &FinSet::empty()));
    }

    #[test]
    fn subsets_are_lexicographic() {
        let subs = fs(&[1, 2, 3]).subsets();
        let expect: Vec<FinSet> = vec![
            FinSet::empty(),
            fs(&[1]),
            fs(&[1, 2]),
            fs(&[1, 2, 3]),
            fs(&[1, 3]),
            fs(&[2]),
            fs(&[2, 3]),
            fs(&[3]),
        ];
        assert_eq!(subs, expect);
        let mut sorted = subs.clone();
        sorted.sort();
        assert_eq!(subs, sorted);
    }

    #[test]
    fn lex_order_matches_derive() {
        assert!(FinSet::empty() < fs(&[1]));
        assert!(fs(&[1]) < fs(&[1, 2]));
        assert!(fs(&[1, 2]) < fs(&[2]));
        assert!(fs(&[3, 5, 6, 7]) < fs(&[4, 5, 6, 7]));
    }

    #[test]
    fn union_and_difference() {
        let a = fs(&[1, 4]);
        let b = fs(&[2, 3]);
        assert_eq!(a.union_disjoint(&b), fs(&[1, 2, 3, 4]));
        assert_eq!(a.difference(&fs(&[4])), fs(&[1]));
    }
}
