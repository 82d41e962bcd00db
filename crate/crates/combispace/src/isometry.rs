//! Signed permutations acting on dual functionals, window verification of
//! membership transport, exhaustive isometry search, and the doubling
//! operator.
//!
//! A signed permutation sends the coordinate functional at `i` to a sign
//! times the functional at `pi(i)`. Whether such a map could be an
//! isometry between two combinatorial spaces is, on a finite window, the
//! question whether `pi` transports members to members both ways; the
//! checker and the search below decide exactly that. A window-verified
//! permutation is a candidate only: no finite check certifies the infinite
//! statement, but rejection is sound.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::families::{self, Family, FamilyError, Limits};
use crate::finset::FinSet;
use crate::norms::SparseVec;
use crate::scalars::Scalar;

#[derive(Debug, Error)]
pub enum IsometryError {
    #[error("invalid signed permutation: {0}")]
    Config(String),
    #[error("window {m} is smaller than the permutation support {window}")]
    WindowTooSmall { window: u32, m: u32 },
    #[error("{what} {size} exceeds the configured bound {bound}")]
    BoundExceeded { what: &'static str, size: usize, bound: usize },
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// A finitely supported signed permutation: a bijection of `[1, window]`
/// extended by the identity, with a sign per index (default 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPermutation {
    window: u32,
    perm: Vec<u32>,
    signs: BTreeMap<u32, Scalar>,
}

impl SignedPermutation {
    pub fn new(
        window: u32,
        perm: Vec<u32>,
        signs: BTreeMap<u32, Scalar>,
    ) -> Result<Self, IsometryError> {
        if perm.len() != window as usize {
            return Err(IsometryError::Config(format!(
                "permutation lists {} images for window {window}",
                perm.len()
            )));
        }
        let mut seen = vec![false; window as usize];
        for &image in &perm {
            if image < 1 || image > window {
                return Err(IsometryError::Config(format!(
                    "image {image} outside [1,{window}]"
                )));
            }
            if seen[(image - 1) as usize] {
                return Err(IsometryError::Config(format!("image {image} repeated")));
            }
            seen[(image - 1) as usize] = true;
        }
        for (&i, sign) in &signs {
            if i < 1 {
                return Err(IsometryError::Config("sign indices start at 1".into()));
            }
            if !sign.is_sign() {
                return Err(IsometryError::Config(format!(
                    "sign at {i} has modulus != 1"
                )));
            }
        }
        Ok(SignedPermutation { window, perm, signs })
    }

    pub fn identity(window: u32) -> Self {
        SignedPermutation {
            window,
            perm: (1..=window).collect(),
            signs: BTreeMap::new(),
        }
    }

    /// Permutation from images only, all signs 1.
    pub fn from_images(images: Vec<u32>) -> Result<Self, IsometryError> {
        let window = images.len() as u32;
        SignedPermutation::new(window, images, BTreeMap::new())
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn images(&self) -> &[u32] {
        &self.perm
    }

    pub fn signs(&self) -> &BTreeMap<u32, Scalar> {
        &self.signs
    }

    pub fn image_of(&self, i: u32) -> u32 {
        if i >= 1 && i <= self.window {
            self.perm[(i - 1) as usize]
        } else {
            i
        }
    }

    pub fn sign_at(&self, i: u32) -> Scalar {
        self.signs.get(&i).cloned().unwrap_or_else(Scalar::one)
    }

    pub fn is_identity_permutation(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &v)| v == k as u32 + 1)
    }

    /// Setwise image of a finite set.
    pub fn map_set(&self, f: &FinSet) -> FinSet {
        f.map(|i| self.image_of(i)).expect("bijection is injective")
    }

    /// The inverse signed permutation: if this sends `i` to `theta_i` times
    /// the functional at `pi(i)`, the inverse carries the conjugate sign.
    pub fn inverse(&self) -> SignedPermutation {
        let mut perm = vec![0; self.window as usize];
        for (k, &image) in self.perm.iter().enumerate() {
            perm[(image - 1) as usize] = k as u32 + 1;
        }
        let mut signs = BTreeMap::new();
        for (&i, sign) in &self.signs {
            if sign != &Scalar::one() {
                signs.insert(self.image_of(i), sign.conj());
            }
        }
        SignedPermutation { window: self.window, perm, signs }
    }

    /// Function composition `self after first`.
    pub fn compose(&self, first: &SignedPermutation) -> SignedPermutation {
        let window = self.window.max(first.window);
        let perm = (1..=window)
            .map(|i| self.image_of(first.image_of(i)))
            .collect();
        let mut signs = BTreeMap::new();
        let first_inverse = first.inverse();
        let sign_indices: HashSet<u32> = self
            .signs
            .keys()
            .map(|&j| first_inverse.image_of(j))
            .chain(first.signs.keys().copied())
            .collect();
        for i in sign_indices {
            let combined = first.sign_at(i).mul(&self.sign_at(first.image_of(i)));
            if combined != Scalar::one() {
                signs.insert(i, combined);
            }
        }
        SignedPermutation { window, perm, signs }
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity_permutation() && self.signs.is_empty() {
            return write!(f, "identity");
        }
        write!(f, "[")?;
        for (k, image) in self.perm.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{image}")?;
        }
        write!(f, "]")?;
        if !self.signs.is_empty() {
            write!(f, " signs{{")?;
            for (k, (i, s)) in self.signs.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{i}:{s}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// Applies the signed permutation to a functional: the output entry at
/// `pi(i)` is `theta_i` times the input entry at `i`.
pub fn apply_signed_perm(p: &SignedPermutation, f: &SparseVec) -> SparseVec {
    let mut out = SparseVec::zero();
    for (i, s) in f.iter() {
        out.set(p.image_of(i), p.sign_at(i).mul(s));
    }
    out
}

/// Result of the window transport check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowPreservation {
    pub holds: bool,
    /// Lexicographically first set witnessing a failure: a set whose
    /// membership differs from its image's membership.
    pub counterexample: Option<FinSet>,
}

/// Checks that for every `F` inside `[1,m]`, `F` belongs to the source
/// family iff `pi(F)` belongs to the target family.
///
/// Only members of the source family and preimages of members of the
/// target family are enumerated (hereditary DFS both times); sets outside
/// both families agree vacuously.
pub fn check_window_preservation(
    p: &SignedPermutation,
    fam_f: &Family,
    fam_g: &Family,
    m: u32,
    limits: &Limits,
) -> Result<WindowPreservation, IsometryError> {
    if p.window > m {
        return Err(IsometryError::WindowTooSmall { window: p.window, m });
    }
    if m as usize > limits.window {
        return Err(IsometryError::BoundExceeded {
            what: "preservation window",
            size: m as usize,
            bound: limits.window,
        });
    }
    let mut enum_limits = limits.clone();
    enum_limits.enum_support = enum_limits.enum_support.max(m as usize);
    let window = FinSet::window(m);
    let inverse = p.inverse();

    let mut worst: Option<FinSet> = None;
    let mut note = |candidate: FinSet| {
        if worst.as_ref().is_none_or(|w| candidate < *w) {
            worst = Some(candidate);
        }
    };
    for f in families::enumerate_members(fam_f, &window, &enum_limits)? {
        if !families::is_member(fam_g, &p.map_set(&f)) {
            note(f);
        }
    }
    for g in families::enumerate_members(fam_g, &window, &enum_limits)? {
        let preimage = inverse.map_set(&g);
        if !families::is_member(fam_f, &preimage) {
            note(preimage);
        }
    }
    Ok(WindowPreservation { holds: worst.is_none(), counterexample: worst })
}

/// All permutations of `[1,n]` (extended by the identity) that transport
/// membership both ways on the window `[1,m]`, in lexicographic order.
///
/// Outputs are window-verified candidates: rejection is sound, acceptance
/// certifies the window only.
pub fn search_window_isometries(
    fam_f: &Family,
    fam_g: &Family,
    n: u32,
    m: u32,
    limits: &Limits,
) -> Result<Vec<Vec<u32>>, IsometryError> {
    if n as usize > limits.search_support {
        return Err(IsometryError::BoundExceeded {
            what: "search support",
            size: n as usize,
            bound: limits.search_support,
        });
    }
    if n > m {
        return Err(IsometryError::WindowTooSmall { window: n, m });
    }
    if m as usize > limits.window {
        return Err(IsometryError::BoundExceeded {
            what: "search window",
            size: m as usize,
            bound: limits.window,
        });
    }
    let mut enum_limits = limits.clone();
    enum_limits.enum_support = enum_limits.enum_support.max(m as usize);
    let window = FinSet::window(m);
    let members_f = families::enumerate_members(fam_f, &window, &enum_limits)?;
    let members_g = families::enumerate_members(fam_g, &window, &enum_limits)?;
    let set_f: HashSet<&FinSet> = members_f.iter().collect();
    let set_g: HashSet<&FinSet> = members_g.iter().collect();

    let image = |perm: &[u32], i: u32| -> u32 {
        if (i as usize) <= perm.len() {
            perm[(i - 1) as usize]
        } else {
            i
        }
    };
    let transports = |perm: &[u32]| -> bool {
        let map = |set: &FinSet, forward: bool| -> FinSet {
            set.map(|i| {
                if forward {
                    image(perm, i)
                } else if (i as usize) <= perm.len() {
                    perm.iter().position(|&v| v == i).expect("bijection") as u32 + 1
                } else {
                    i
                }
            })
            .expect("bijection is injective")
        };
        members_f.iter().all(|f| set_g.contains(&map(f, true)))
            && members_g.iter().all(|g| set_f.contains(&map(g, false)))
    };

    let mut results = Vec::new();
    let mut current: Vec<u32> = Vec::with_capacity(n as usize);
    let mut used = vec![false; n as usize];
    fn rec(
        n: u32,
        current: &mut Vec<u32>,
        used: &mut Vec<bool>,
        accept: &impl Fn(&[u32]) -> bool,
        results: &mut Vec<Vec<u32>>,
    ) {
        if current.len() == n as usize {
            if accept(current) {
                results.push(current.clone());
            }
            return;
        }
        for v in 1..=n {
            if !used[(v - 1) as usize] {
                used[(v - 1) as usize] = true;
                current.push(v);
                rec(n, current, used, accept, results);
                current.pop();
                used[(v - 1) as usize] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &transports, &mut results);
    Ok(results)
}

/// The linear extension of `e_n* -> e_(2n)* + e_(2n+1)*`.
pub fn doubling_image(f: &SparseVec) -> SparseVec {
    let mut out = SparseVec::zero();
    for (i, s) in f.iter() {
        let low = i.checked_mul(2).expect("index overflow");
        out.set(low, s.clone());
        out.set(low + 1, s.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_family;
    use crate::families::FamilyConfig;
    use crate::norms::{dual_norm, enumerate_extreme_supports, is_extreme};
    use crate::ordinals::parse_ordinal;
    use crate::scalars::{parse_scalar, SignGroup};

    fn fs(v: &[u32]) -> FinSet {
        FinSet::new(v.to_vec()).unwrap()
    }

    fn schreier(alpha: &str) -> Family {
        Family::schreier(parse_ordinal(alpha).unwrap()).unwrap()
    }

    fn vec_of(entries: &[(u32, &str)]) -> SparseVec {
        SparseVec::from_entries(
            entries
                .iter()
                .map(|&(i, s)| (i, parse_scalar(s).unwrap())),
        )
    }

    #[test]
    fn apply_examples() {
        let mut signs = BTreeMap::new();
        signs.insert(2, Scalar::minus_one());
        let flip = SignedPermutation::new(3, vec![1, 2, 3], signs).unwrap();
        assert_eq!(
            apply_signed_perm(&flip, &SparseVec::unit(2)),
            vec_of(&[(2, "-1")])
        );

        let swap = SignedPermutation::from_images(vec![1, 3, 2]).unwrap();
        let f = vec_of(&[(2, "1"), (3, "1")]);
        assert_eq!(apply_signed_perm(&swap, &f), f);

        let swap12 = SignedPermutation::from_images(vec![2, 1]).unwrap();
        assert_eq!(
            apply_signed_perm(&swap12, &SparseVec::unit(1)),
            SparseVec::unit(2)
        );
    }

    #[test]
    fn validation_rejects_bad_input() {
        assert!(SignedPermutation::from_images(vec![1, 1]).is_err());
        assert!(SignedPermutation::from_images(vec![0, 1]).is_err());
        assert!(SignedPermutation::from_images(vec![3, 1]).is_err());
        let mut signs = BTreeMap::new();
        signs.insert(1, parse_scalar("1/2").unwrap());
        assert!(SignedPermutation::new(2, vec![1, 2], signs).is_err());
    }

    #[test]
    fn inverse_and_compose_are_group_operations() {
        let mut signs = BTreeMap::new();
        signs.insert(1, Scalar::i_unit());
        signs.insert(3, Scalar::minus_one());
        let p = SignedPermutation::new(4, vec![3, 1, 4, 2], signs).unwrap();
        let q = p.inverse();
        let id = p.compose(&q);
        let f = vec_of(&[(1, "1"), (2, "i"), (3, "-1/2"), (4, "2/3")]);
        assert_eq!(apply_signed_perm(&id, &f), f);
        // compose applies its argument first
        let r = SignedPermutation::from_images(vec![2, 1]).unwrap();
        let rp = r.compose(&p);
        for i in 1..=4 {
            assert_eq!(rp.image_of(i), r.image_of(p.image_of(i)));
        }
        let g = apply_signed_perm(&r, &apply_signed_perm(&p, &f));
        assert_eq!(apply_signed_perm(&rp, &f), g);
    }

    #[test]
    fn preservation_identity_holds() {
        let s1 = schreier("1");
        let limits = Limits::default();
        let outcome = check_window_preservation(
            &SignedPermutation::identity(4),
            &s1,
            &s1,
            12,
            &limits,
        )
        .unwrap();
        assert!(outcome.holds);
        assert_eq!(outcome.counterexample, None);
    }

    #[test]
    fn preservation_detects_schreier_violation() {
        let s1 = schreier("1");
        let limits = Limits::default();
        let swap34 = SignedPermutation::from_images(vec![1, 2, 4, 3, 5]).unwrap();
        let outcome = check_window_preservation(&swap34, &s1, &s1, 10, &limits).unwrap();
        assert!(!outcome.holds);
        // {3,5,6,7} is not a member while its image {4,5,6,7} is; it is the
        // lexicographically first failing set.
        assert_eq!(outcome.counterexample, Some(fs(&[3, 5, 6, 7])));
    }

    #[test]
    fn preservation_cardinality_is_permutation_invariant() {
        let card2 = Family::cardinality(2).unwrap();
        let limits = Limits::default();
        let swap12 = SignedPermutation::from_images(vec![2, 1]).unwrap();
        let outcome = check_window_preservation(&swap12, &card2, &card2, 8, &limits).unwrap();
        assert!(outcome.holds);
    }

    #[test]
    fn search_small_schreier_window_is_rigid() {
        let s1 = schreier("1");
        let limits = Limits::default();
        let result = search_window_isometries(&s1, &s1, 3, 10, &limits).unwrap();
        assert_eq!(result, vec![vec![1, 2, 3]]);
    }

    #[test]
    fn search_cardinality_allows_everything() {
        let card2 = Family::cardinality(2).unwrap();
        let limits = Limits::default();
        let result = search_window_isometries(&card2, &card2, 3, 10, &limits).unwrap();
        assert_eq!(result.len(), 6);
        assert_eq!(result[0], vec![1, 2, 3]);
    }

    #[test]
    fn search_results_form_a_group() {
        let limits = Limits::default();
        let interval = build_family(&FamilyConfig::Interval {
            ks_prefix: vec![0, 2, 5],
            tail_step: 3,
        })
        .unwrap();
        for fam in [
            &interval,
            &Family::cardinality(2).unwrap(),
            &schreier("1"),
            &schreier("2"),
        ] {
            let perms = search_window_isometries(fam, fam, 4, 12, &limits).unwrap();
            assert!(!perms.is_empty(), "identity is always window-verified");
            let contains = |p: &Vec<u32>| perms.contains(p);
            for a in &perms {
                let inv: Vec<u32> = (1..=a.len() as u32)
                    .map(|i| a.iter().position(|&v| v == i).unwrap() as u32 + 1)
                    .collect();
                assert!(contains(&inv), "inverse of {a:?}");
                for b in &perms {
                    let composed: Vec<u32> =
                        b.iter().map(|&i| a[(i - 1) as usize]).collect();
                    assert!(contains(&composed), "{a:?} after {b:?}");
                }
            }
        }
    }

    #[test]
    fn transport_preserves_dual_norm_and_extremes() {
        let card2 = Family::cardinality(2).unwrap();
        let limits = Limits::default();
        let p = SignedPermutation::from_images(vec![3, 1, 2]).unwrap();
        assert!(check_window_preservation(&p, &card2, &card2, 10, &limits)
            .unwrap()
            .holds);
        for f in [
            vec_of(&[(1, "1"), (2, "-1")]),
            vec_of(&[(1, "1/2"), (3, "i")]),
            vec_of(&[(2, "3/5+4/5i"), (3, "2")]),
        ] {
            let image = apply_signed_perm(&p, &f);
            assert_eq!(
                dual_norm(&card2, &f, &limits).unwrap().value,
                dual_norm(&card2, &image, &limits).unwrap().value
            );
            assert_eq!(is_extreme(&card2, &f), is_extreme(&card2, &image));
        }
    }

    #[test]
    fn sign_irrelevance_on_extreme_points() {
        let s1 = schreier("1");
        let limits = Limits::default();
        for support in enumerate_extreme_supports(&s1, 6, &limits).unwrap() {
            let f = SparseVec::from_entries(support.iter().map(|i| (i, Scalar::one())));
            for sign in SignGroup::Complex.elements() {
                let mut signs = BTreeMap::new();
                for i in support.iter() {
                    signs.insert(i, sign.clone());
                }
                let p = SignedPermutation::new(6, (1..=6).collect(), signs).unwrap();
                assert!(is_extreme(&s1, &apply_signed_perm(&p, &f)));
            }
        }
    }

    #[test]
    fn doubling_examples() {
        assert_eq!(
            doubling_image(&SparseVec::unit(1)),
            vec_of(&[(2, "1"), (3, "1")])
        );
        assert_eq!(
            doubling_image(&vec_of(&[(2, "1"), (3, "1")])),
            vec_of(&[(4, "1"), (5, "1"), (6, "1"), (7, "1")])
        );
        assert_eq!(doubling_image(&SparseVec::zero()), SparseVec::zero());
    }

    #[test]
    fn doubling_is_not_a_signed_permutation() {
        assert_eq!(doubling_image(&SparseVec::unit(1)).support().len(), 2);
    }

    #[test]
    fn doubling_preserves_extremes_small() {
        let s1 = schreier("1");
        let limits = Limits::default();
        for support in enumerate_extreme_supports(&s1, 6, &limits).unwrap() {
            for sign in SignGroup::Real.elements() {
                let f = SparseVec::from_entries(support.iter().map(|i| (i, sign.clone())));
                assert!(is_extreme(&s1, &doubling_image(&f)), "{f}");
            }
        }
    }
}
