//! Membership for the transfinite Schreier hierarchy `S_alpha`.
//!
//! `S_1` is the base family `{F : |F| <= min F}`. At a successor the
//! members are unions of consecutive blocks, each a member one level down,
//! with the block count admissible (at most `min F`); the decision runs a
//! dynamic program for the minimum block count. At a limit the membership
//! dispatches through the fixed fundamental sequence: `F` belongs to
//! `S_alpha` iff it belongs to `S_(alpha_n)` for some `n <= min F`. Every
//! `n` is tried, since the hierarchy need not be monotone in `n`.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use thiserror::Error;

use crate::families::{self, Family, FamilyError, Limits};
use crate::finset::{is_spreading_of, FinSet};
use crate::ordinals::{OrdinalClass, OrdinalCnf};

#[derive(Debug, Error)]
pub enum SchreierError {
    #[error("schreier order must be >= 1")]
    OrderZero,
    #[error("empty set has no block partition")]
    EmptySet,
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Shared cache of `(alpha, set) -> membership` results.
///
/// Purely an accelerator: results are immutable facts, so concurrent
/// readers and writers can never disagree.
#[derive(Debug, Default)]
pub struct MemberMemo {
    table: RwLock<HashMap<(OrdinalCnf, FinSet), bool>>,
}

impl MemberMemo {
    fn get(&self, alpha: &OrdinalCnf, f: &FinSet) -> Option<bool> {
        self.table
            .read()
            .expect("memo lock")
            .get(&(alpha.clone(), f.clone()))
            .copied()
    }

    fn insert(&self, alpha: &OrdinalCnf, f: &FinSet, value: bool) {
        self.table
            .write()
            .expect("memo lock")
            .insert((alpha.clone(), f.clone()), value);
    }
}

/// Decides `F ∈ S_alpha` for `alpha >= 1`.
pub fn schreier_member(alpha: &OrdinalCnf, f: &FinSet) -> Result<bool, SchreierError> {
    if alpha.is_zero() {
        return Err(SchreierError::OrderZero);
    }
    Ok(member_with_memo(alpha, f, &MemberMemo::default()))
}

/// Memoized membership; `alpha >= 1` is the caller's invariant.
pub(crate) fn member_with_memo(alpha: &OrdinalCnf, f: &FinSet, memo: &MemberMemo) -> bool {
    debug_assert!(!alpha.is_zero());
    if f.is_empty() {
        return true;
    }
    let min = f.min_elem().expect("nonempty");
    if alpha.is_one() {
        return f.len() as u64 <= u64::from(min);
    }
    if let Some(hit) = memo.get(alpha, f) {
        return hit;
    }
    let result = match alpha.classify() {
        OrdinalClass::Zero => unreachable!("alpha >= 1"),
        OrdinalClass::Successor(beta) => {
            min_block_count(&beta, f, memo).is_some_and(|k| k as u64 <= u64::from(min))
        }
        OrdinalClass::Limit => (1..=min).any(|n| {
            let alpha_n = alpha.fundamental_sequence(n).expect("limit ordinal, n >= 1");
            member_with_memo(&alpha_n, f, memo)
        }),
    };
    memo.insert(alpha, f, result);
    result
}

fn segment(f: &FinSet, from: usize, to: usize) -> FinSet {
    FinSet::new(f.elements()[from..to].to_vec()).expect("slice of increasing list")
}

/// Minimum number of consecutive blocks covering `f` with every block in
/// `S_beta`; `None` when no split works (impossible for `beta >= 1`).
fn min_block_count(beta: &OrdinalCnf, f: &FinSet, memo: &MemberMemo) -> Option<usize> {
    let k = f.len();
    let mut dp: Vec<Option<usize>> = vec![None; k + 1];
    dp[0] = Some(0);
    for i in 1..=k {
        for j in 0..i {
            let Some(prev) = dp[j] else { continue };
            let candidate = prev + 1;
            if dp[i].is_some_and(|best| best <= candidate) {
                continue;
            }
            if member_with_memo(beta, &segment(f, j, i), memo) {
                dp[i] = Some(candidate);
            }
        }
    }
    dp[k]
}

/// A partition of a set into consecutive nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    blocks: Vec<FinSet>,
}

impl BlockPartition {
    pub fn new(blocks: Vec<FinSet>) -> Result<Self, SchreierError> {
        if blocks.iter().any(FinSet::is_empty) {
            return Err(SchreierError::EmptySet);
        }
        for pair in blocks.windows(2) {
            let left_max = pair[0].max_elem().expect("nonempty");
            let right_min = pair[1].min_elem().expect("nonempty");
            if left_max >= right_min {
                return Err(SchreierError::Family(FamilyError::Config(format!(
                    "blocks are not consecutive: {} then {}",
                    pair[0], pair[1]
                ))));
            }
        }
        Ok(BlockPartition { blocks })
    }

    pub fn blocks(&self) -> &[FinSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

impl fmt::Display for BlockPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}

/// A minimum-count partition of `f` into consecutive blocks each in
/// `S_beta`, or `None` when no partition exists.
///
/// Among minimum-count partitions the first block is chosen as long as
/// possible, then the second, and so on, which makes the witness
/// deterministic.
pub fn min_block_partition(
    beta: &OrdinalCnf,
    f: &FinSet,
) -> Result<Option<BlockPartition>, SchreierError> {
    if beta.is_zero() {
        return Err(SchreierError::OrderZero);
    }
    if f.is_empty() {
        return Err(SchreierError::EmptySet);
    }
    let memo = MemberMemo::default();
    let k = f.len();
    // suffix[i]: minimum blocks covering elements[i..].
    let mut suffix: Vec<Option<usize>> = vec![None; k + 1];
    suffix[k] = Some(0);
    for i in (0..k).rev() {
        for j in (i + 1)..=k {
            let Some(rest) = suffix[j] else { continue };
            let candidate = rest + 1;
            if suffix[i].is_some_and(|best| best <= candidate) {
                continue;
            }
            if member_with_memo(beta, &segment(f, i, j), &memo) {
                suffix[i] = Some(candidate);
            }
        }
    }
    let Some(total) = suffix[0] else {
        return Ok(None);
    };
    let mut blocks = Vec::with_capacity(total);
    let mut i = 0;
    let mut budget = total;
    while i < k {
        let mut chosen = None;
        for j in ((i + 1)..=k).rev() {
            if suffix[j] == Some(budget - 1)
                && member_with_memo(beta, &segment(f, i, j), &memo)
            {
                chosen = Some(j);
                break;
            }
        }
        let j = chosen.expect("suffix table admits a continuation");
        blocks.push(segment(f, i, j));
        i = j;
        budget -= 1;
    }
    Ok(Some(BlockPartition { blocks }))
}

/// Outcome of the exhaustive min-preservation check: among maximal members
/// of `S_alpha` inside `[1,m]`, every spreading pair must share its
/// minimum.
#[derive(Debug, Clone)]
pub struct MinPreservationReport {
    pub alpha: OrdinalCnf,
    pub window: u32,
    pub maximal_count: usize,
    pub pairs_checked: u64,
    /// `(E, F)` pairs with `F` a spreading of `E` and `min E != min F`.
    pub violations: Vec<(FinSet, FinSet)>,
}

impl MinPreservationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for MinPreservationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "S_{} on [1,{}]: {} maximal sets, {} spreading pairs, {} violations",
            self.alpha,
            self.window,
            self.maximal_count,
            self.pairs_checked,
            self.violations.len()
        )?;
        for (e, v) in &self.violations {
            write!(f, "\n  {e} spreads to {v} but minima differ")?;
        }
        Ok(())
    }
}

/// Enumerates all maximal members of `S_alpha` inside `[1,m]` and checks
/// every spreading pair for min preservation.
pub fn check_min_preservation(
    alpha: &OrdinalCnf,
    m: u32,
    limits: &Limits,
) -> Result<MinPreservationReport, SchreierError> {
    if alpha.is_zero() {
        return Err(SchreierError::OrderZero);
    }
    if m as usize > limits.min_preservation_window {
        return Err(SchreierError::Family(FamilyError::BoundExceeded {
            what: "min-preservation window",
            size: m as usize,
            bound: limits.min_preservation_window,
        }));
    }
    let fam = Family::schreier(alpha.clone())?;
    let mut enum_limits = limits.clone();
    enum_limits.enum_support = enum_limits.enum_support.max(m as usize);
    let members = families::enumerate_members(&fam, &FinSet::window(m), &enum_limits)?;
    let mut maximal = Vec::new();
    for f in members {
        if !f.is_empty() && families::is_maximal(&fam, &f)? {
            maximal.push(f);
        }
    }
    let mut report = MinPreservationReport {
        alpha: alpha.clone(),
        window: m,
        maximal_count: maximal.len(),
        pairs_checked: 0,
        violations: Vec::new(),
    };
    for e in &maximal {
        for f in &maximal {
            if is_spreading_of(e, f) {
                report.pairs_checked += 1;
                if e.min_elem() != f.min_elem() {
                    report.violations.push((e.clone(), f.clone()));
                }
            }
        }
    }
    Ok(report)
}
