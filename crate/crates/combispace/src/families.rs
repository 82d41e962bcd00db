//! Regular families of finite sets: constructors, membership and
//! maximality decisions, constructive right-extension, member enumeration,
//! and exhaustive window regularity checks.
//!
//! A regular family is hereditary (closed under subsets), spreading
//! (closed under moving elements rightward, injectively), and compact. It
//! contains the empty set and every singleton. Four kinds are supported:
//!
//! * `Cardinality(n)` - all sets of size at most n;
//! * `Schreier(alpha)` - the transfinite Schreier hierarchy (see
//!   [`crate::schreier`]);
//! * `Interval(ks)` - given `0 = k_0 < k_1 < ...`, a set F is a member iff
//!   `|F| <= n` for the unique n >= 1 with `k_(n-1) <= min F < k_n`;
//! * `Explicit` - the hereditary closure of finitely many sets inside a
//!   finite universe, used to exercise the regularity checker.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finset::FinSet;
pub use crate::finset::is_spreading_of;
use crate::ordinals::{parse_ordinal, OrdinalCnf};
use crate::schreier::{self, MemberMemo};

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("invalid family config: {0}")]
    Config(String),
    #[error("regularity failure in explicit family: {0}")]
    Regularity(String),
    #[error("{0} is not a member of the family")]
    NotMember(FinSet),
    #[error("{{{0}}} is already a maximal member; no extension sequence exists")]
    SingletonMaximal(u32),
    #[error("cannot extend {set} to a maximal member inside the given tail rule")]
    ExtensionStuck { set: FinSet },
    #[error("size {size} exceeds the configured bound {bound} for {what}")]
    BoundExceeded { what: &'static str, size: usize, bound: usize },
    #[error("enumeration exceeded the global cell cap {cap}")]
    CellCapExceeded { cap: u64 },
    #[error(transparent)]
    Ordinal(#[from] crate::ordinals::OrdinalError),
    #[error(transparent)]
    FinSet(#[from] crate::finset::FinSetError),
}

/// Resource guardrails for the exhaustive operations, with the crate's
/// default bounds. `COMBI_MAX_CELLS` caps enumeration sizes globally when
/// limits are constructed through [`Limits::from_env`].
#[derive(Debug, Clone)]
pub struct Limits {
    /// Max support size for subset enumeration and primal norms.
    pub enum_support: usize,
    /// Max support size for the dual-norm LP.
    pub dual_support: usize,
    /// Max window for membership-preservation checks and searches.
    pub window: usize,
    /// Max window for the exhaustive regularity check.
    pub regularity_window: usize,
    /// Max window for the min-preservation check.
    pub min_preservation_window: usize,
    /// Max permutation support for isometry search.
    pub search_support: usize,
    /// Cap on sets visited by any single enumeration.
    pub max_cells: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enum_support: 20,
            dual_support: 12,
            window: 20,
            regularity_window: 16,
            min_preservation_window: 14,
            search_support: 8,
            max_cells: 1 << 22,
        }
    }
}

impl Limits {
    /// Defaults with the `COMBI_MAX_CELLS` environment override applied.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Ok(cap) = std::env::var("COMBI_MAX_CELLS") {
            if let Ok(cap) = cap.parse::<u64>() {
                limits.max_cells = cap;
            }
        }
        limits
    }
}

/// A computable infinite subset of the positive integers, used as the pool
/// of elements adjoined during right-extension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailRule {
    /// `{start, start+1, start+2, ...}`
    AllFrom { start: u32 },
    /// `{first, first+step, first+2*step, ...}`
    ArithmeticProgression { first: u32, step: u32 },
    /// The listed prefix, then steps of `step` beyond its last element.
    ExplicitThenStep { prefix: Vec<u32>, step: u32 },
}

impl TailRule {
    pub fn validate(&self) -> Result<(), FamilyError> {
        let bad = |msg: &str| Err(FamilyError::Config(msg.into()));
        match self {
            TailRule::AllFrom { start } if *start >= 1 => Ok(()),
            TailRule::AllFrom { .. } => bad("all_from start must be >= 1"),
            TailRule::ArithmeticProgression { first, step } if *first >= 1 && *step >= 1 => Ok(()),
            TailRule::ArithmeticProgression { .. } => {
                bad("arithmetic_progression needs first >= 1 and step >= 1")
            }
            TailRule::ExplicitThenStep { prefix, step } => {
                if prefix.is_empty() || *step < 1 {
                    return bad("explicit_then_step needs a nonempty prefix and step >= 1");
                }
                if prefix[0] < 1 || prefix.windows(2).any(|w| w[0] >= w[1]) {
                    return bad("explicit_then_step prefix must be strictly increasing and >= 1");
                }
                Ok(())
            }
        }
    }

    /// The smallest element of the set strictly greater than `m`.
    pub fn next_after(&self, m: u32) -> u32 {
        match self {
            TailRule::AllFrom { start } => (*start).max(m + 1),
            TailRule::ArithmeticProgression { first, step } => {
                if m < *first {
                    *first
                } else {
                    first + step * ((m - first) / step + 1)
                }
            }
            TailRule::ExplicitThenStep { prefix, step } => {
                if let Some(&p) = prefix.iter().find(|&&p| p > m) {
                    return p;
                }
                let last = *prefix.last().expect("validated nonempty");
                if m < last {
                    last
                } else {
                    last + step * ((m - last) / step + 1)
                }
            }
        }
    }

    pub fn contains(&self, j: u32) -> bool {
        match self {
            TailRule::AllFrom { start } => j >= *start,
            TailRule::ArithmeticProgression { first, step } => {
                j >= *first && (j - first).is_multiple_of(*step)
            }
            TailRule::ExplicitThenStep { prefix, step } => {
                let last = *prefix.last().expect("validated nonempty");
                prefix.binary_search(&j).is_ok() || (j > last && (j - last).is_multiple_of(*step))
            }
        }
    }
}

/// The increasing sequence `(k_n)` of an interval family: an explicit
/// prefix starting at `k_0 = 0`, continued by a fixed step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalRule {
    prefix: Vec<u32>,
    tail_step: u32,
}

impl IntervalRule {
    pub fn new(prefix: Vec<u32>, tail_step: u32) -> Result<Self, FamilyError> {
        if prefix.first() != Some(&0) {
            return Err(FamilyError::Config("interval ks_prefix must start at 0".into()));
        }
        if prefix.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FamilyError::Config(
                "interval ks_prefix must be strictly increasing".into(),
            ));
        }
        if tail_step < 1 {
            return Err(FamilyError::Config("interval tail_step must be >= 1".into()));
        }
        Ok(IntervalRule { prefix, tail_step })
    }

    /// `k_n` of the sequence.
    pub fn k(&self, n: usize) -> u64 {
        if n < self.prefix.len() {
            u64::from(self.prefix[n])
        } else {
            u64::from(*self.prefix.last().expect("prefix nonempty"))
                + u64::from(self.tail_step) * (n - self.prefix.len() + 1) as u64
        }
    }

    /// The unique `n >= 1` with `k_(n-1) <= min < k_n`, i.e. the size limit
    /// for members whose minimum is `min`.
    pub fn size_limit(&self, min: u32) -> usize {
        let mut n = 1;
        while self.k(n) <= u64::from(min) {
            n += 1;
        }
        n
    }
}

/// Family description as read from JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FamilyConfig {
    Cardinality { n: usize },
    Schreier { alpha: String },
    Interval { ks_prefix: Vec<u32>, tail_step: u32 },
    Explicit { universe: u32, sets: Vec<Vec<u32>> },
}

#[derive(Debug)]
pub enum FamilyKind {
    Cardinality(usize),
    Schreier(OrdinalCnf),
    Interval(IntervalRule),
    Explicit { universe: u32, sets: Vec<FinSet> },
}

/// A regular family with a total membership decision procedure.
///
/// Immutable after construction; the internal memo only caches Schreier
/// membership results and is semantically invisible.
#[derive(Debug)]
pub struct Family {
    kind: FamilyKind,
    memo: MemberMemo,
}

impl Family {
    pub fn cardinality(n: usize) -> Result<Family, FamilyError> {
        if n < 1 {
            return Err(FamilyError::Config(
                "cardinality bound must be >= 1 (singletons must be members)".into(),
            ));
        }
        Ok(Family { kind: FamilyKind::Cardinality(n), memo: MemberMemo::default() })
    }

    pub fn schreier(alpha: OrdinalCnf) -> Result<Family, FamilyError> {
        if alpha.is_zero() {
            return Err(FamilyError::Config("schreier order must be >= 1".into()));
        }
        Ok(Family { kind: FamilyKind::Schreier(alpha), memo: MemberMemo::default() })
    }

    pub fn interval(rule: IntervalRule) -> Result<Family, FamilyError> {
        Ok(Family { kind: FamilyKind::Interval(rule), memo: MemberMemo::default() })
    }

    /// Explicit family without the regularity gate; membership is the
    /// hereditary closure of the listed sets. Used by the window checker,
    /// which exists to report exactly the violations this skips.
    pub fn explicit_unchecked(universe: u32, sets: Vec<FinSet>) -> Result<Family, FamilyError> {
        if universe < 1 {
            return Err(FamilyError::Config("universe must be >= 1".into()));
        }
        for s in &sets {
            if s.max_elem().is_some_and(|m| m > universe) {
                return Err(FamilyError::Config(format!(
                    "set {s} exceeds the universe [1,{universe}]"
                )));
            }
        }
        Ok(Family {
            kind: FamilyKind::Explicit { universe, sets },
            memo: MemberMemo::default(),
        })
    }

    /// Explicit family with the full regularity gate: singleton coverage
    /// and spreading closure inside the universe are required.
    pub fn explicit(universe: u32, sets: Vec<FinSet>) -> Result<Family, FamilyError> {
        let fam = Family::explicit_unchecked(universe, sets)?;
        let mut limits = Limits::default();
        limits.regularity_window = limits.regularity_window.max(universe as usize);
        let report = check_regularity_window(&fam, universe, &limits)?;
        if let Some(violation) = report.first_violation() {
            return Err(FamilyError::Regularity(violation));
        }
        Ok(fam)
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub(crate) fn memo(&self) -> &MemberMemo {
        &self.memo
    }
}

/// Builds a family from its JSON-level description, enforcing the
/// regularity gate on explicit families.
pub fn build_family(config: &FamilyConfig) -> Result<Family, FamilyError> {
    build_family_inner(config, true)
}

/// As [`build_family`], but skips the regularity gate on explicit families
/// so that the window checker can report the violations instead.
pub fn build_family_unchecked(config: &FamilyConfig) -> Result<Family, FamilyError> {
    build_family_inner(config, false)
}

fn build_family_inner(config: &FamilyConfig, strict: bool) -> Result<Family, FamilyError> {
    match config {
        FamilyConfig::Cardinality { n } => Family::cardinality(*n),
        FamilyConfig::Schreier { alpha } => Family::schreier(parse_ordinal(alpha)?),
        FamilyConfig::Interval { ks_prefix, tail_step } => {
            Family::interval(IntervalRule::new(ks_prefix.clone(), *tail_step)?)
        }
        FamilyConfig::Explicit { universe, sets } => {
            let sets = sets
                .iter()
                .map(|s| FinSet::from_unsorted(s.clone()))
                .collect::<Result<Vec<_>, _>>()?;
            if strict {
                Family::explicit(*universe, sets)
            } else {
                Family::explicit_unchecked(*universe, sets)
            }
        }
    }
}

/// Total membership decision. The empty set is a member of every family.
pub fn is_member(fam: &Family, f: &FinSet) -> bool {
    match &fam.kind {
        FamilyKind::Cardinality(n) => f.len() <= *n,
        FamilyKind::Schreier(alpha) => {
            f.is_empty() || schreier::member_with_memo(alpha, f, fam.memo())
        }
        FamilyKind::Interval(rule) => match f.min_elem() {
            None => true,
            Some(min) => f.len() <= rule.size_limit(min),
        },
        FamilyKind::Explicit { sets, .. } => {
            f.is_empty() || sets.iter().any(|s| f.is_subset_of(s))
        }
    }
}

/// Whether a member is maximal in the full (infinite) family.
///
/// For the built-in spreading families on all of the positive integers,
/// the single extension by `max F + 1` decides this. An explicit family
/// lives inside a finite universe, where that shortcut is unsound, so
/// every in-universe extension is tried instead.
pub fn is_maximal(fam: &Family, f: &FinSet) -> Result<bool, FamilyError> {
    if !is_member(fam, f) {
        return Err(FamilyError::NotMember(f.clone()));
    }
    let Some(max) = f.max_elem() else {
        // Singletons are always members, so the empty set never is maximal.
        return Ok(false);
    };
    match &fam.kind {
        FamilyKind::Explicit { universe, .. } => {
            for j in 1..=*universe {
                if let Some(extended) = f.with_element(j) {
                    if is_member(fam, &extended) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        _ => {
            let extended = f.with_element(max + 1).expect("max+1 is fresh");
            Ok(!is_member(fam, &extended))
        }
    }
}

const EXTENSION_ITERATION_CAP: usize = 100_000;

/// Extends a member to the right into a maximal member, adjoining only
/// elements of the tail rule.
///
/// Greedy: while not maximal, adjoin the smallest tail element above the
/// current maximum. Spreading makes every such step stay inside the
/// family, and compactness terminates the loop.
pub fn extend_to_maximal(fam: &Family, f: &FinSet, tail: &TailRule) -> Result<FinSet, FamilyError> {
    tail.validate()?;
    if !is_member(fam, f) {
        return Err(FamilyError::NotMember(f.clone()));
    }
    let mut current = f.clone();
    for _ in 0..EXTENSION_ITERATION_CAP {
        if is_maximal(fam, &current)? {
            return Ok(current);
        }
        let next = tail.next_after(current.max_elem().unwrap_or(0));
        let extended = current.with_element(next).expect("next is above max");
        if !is_member(fam, &extended) {
            // Possible only for finite-universe explicit families, whose
            // extensions need not lie in the tail rule.
            return Err(FamilyError::ExtensionStuck { set: current });
        }
        current = extended;
    }
    Err(FamilyError::ExtensionStuck { set: current })
}

/// Builds successively translated finite sets `G_1 < G_2 < ...` with
/// `n < G_1`, sizes nondecreasing, and every `G_i ∪ {n}` maximal.
///
/// `G_1` comes from extending `{n}` rightward to a maximal member; each
/// subsequent stage spreads the previous non-`n` part past its own
/// maximum and fills up to a maximal member again.
pub fn max_extension_sequence(
    fam: &Family,
    n: u32,
    count: usize,
) -> Result<Vec<FinSet>, FamilyError> {
    let singleton = FinSet::singleton(n);
    if !is_member(fam, &singleton) {
        return Err(FamilyError::NotMember(singleton));
    }
    if is_maximal(fam, &singleton)? {
        return Err(FamilyError::SingletonMaximal(n));
    }
    let mut out = Vec::with_capacity(count);
    let first = extend_to_maximal(fam, &singleton, &TailRule::AllFrom { start: n + 1 })?;
    out.push(first.difference(&singleton));
    while out.len() < count {
        let prev = out.last().expect("nonempty");
        let prev_max = prev.max_elem().expect("G_i contains at least one element");
        let prev_min = prev.min_elem().expect("nonempty");
        // Spread the previous block just past its own maximum, keeping n
        // fixed; gaps are preserved so this is a coordinatewise domination.
        let shift = prev_max + 1 - prev_min;
        let spread = prev.map(|e| e + shift)?;
        let seed = singleton.union_disjoint(&spread);
        debug_assert!(is_member(fam, &seed), "spreading must preserve membership");
        let filled = extend_to_maximal(
            fam,
            &seed,
            &TailRule::AllFrom { start: seed.max_elem().expect("nonempty") + 1 },
        )?;
        out.push(filled.difference(&singleton));
    }
    out.truncate(count);
    Ok(out)
}

struct EnumState<'a> {
    fam: &'a Family,
    pool: &'a [u32],
    cells: u64,
    cap: u64,
}

fn enumerate_rec(
    state: &mut EnumState<'_>,
    current: &FinSet,
    start: usize,
    out: &mut Vec<FinSet>,
) -> Result<(), FamilyError> {
    state.cells += 1;
    if state.cells > state.cap {
        return Err(FamilyError::CellCapExceeded { cap: state.cap });
    }
    out.push(current.clone());
    for i in start..state.pool.len() {
        let extended = current.with_element(state.pool[i]).expect("pool is increasing");
        // Hereditary pruning: every prefix of a member is a member.
        if is_member(state.fam, &extended) {
            enumerate_rec(state, &extended, i + 1, out)?;
        }
    }
    Ok(())
}

/// All members contained in `a`, in lexicographic order.
pub fn enumerate_members(
    fam: &Family,
    a: &FinSet,
    limits: &Limits,
) -> Result<Vec<FinSet>, FamilyError> {
    if a.len() > limits.enum_support {
        return Err(FamilyError::BoundExceeded {
            what: "member enumeration",
            size: a.len(),
            bound: limits.enum_support,
        });
    }
    let mut out = Vec::new();
    let mut state = EnumState { fam, pool: a.elements(), cells: 0, cap: limits.max_cells };
    enumerate_rec(&mut state, &FinSet::empty(), 0, &mut out)?;
    Ok(out)
}

/// Members of `a` that are maximal relative to `a`: no element of
/// `a \ F` can be adjoined without leaving the family.
pub fn enumerate_maximal_within(
    fam: &Family,
    a: &FinSet,
    limits: &Limits,
) -> Result<Vec<FinSet>, FamilyError> {
    let members = enumerate_members(fam, a, limits)?;
    Ok(members
        .into_iter()
        .filter(|f| {
            a.iter()
                .filter(|&j| !f.contains(j))
                .all(|j| !is_member(fam, &f.with_element(j).expect("fresh")))
        })
        .collect())
}

/// Outcome of the exhaustive window regularity check.
#[derive(Debug, Clone)]
pub struct RegularityReport {
    pub window: u32,
    /// `(member, subset)` pairs where the subset fails membership.
    pub hereditary_violations: Vec<(FinSet, FinSet)>,
    /// `(member, spread)` pairs where the coordinatewise-dominating set
    /// fails membership.
    pub spreading_violations: Vec<(FinSet, FinSet)>,
    /// Singletons inside the window that fail membership.
    pub singleton_violations: Vec<u32>,
    /// How compactness is accounted for; it is not window-checkable.
    pub compactness: &'static str,
}

impl RegularityReport {
    pub fn is_ok(&self) -> bool {
        self.hereditary_violations.is_empty()
            && self.spreading_violations.is_empty()
            && self.singleton_violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<String> {
        if let Some(n) = self.singleton_violations.first() {
            return Some(format!("singleton {{{n}}} is not a member"));
        }
        if let Some((f, sub)) = self.hereditary_violations.first() {
            return Some(format!("hereditary fails: {f} is a member but its subset {sub} is not"));
        }
        if let Some((f, g)) = self.spreading_violations.first() {
            return Some(format!("spreading fails: {f} is a member but its spread {g} is not"));
        }
        None
    }
}

impl std::fmt::Display for RegularityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_ok() {
            writeln!(f, "regular on [1,{}]: no violations", self.window)?;
        } else {
            for n in &self.singleton_violations {
                writeln!(f, "singleton violation: {{{n}}} not a member")?;
            }
            for (m, sub) in &self.hereditary_violations {
                writeln!(f, "hereditary violation: {m} member, subset {sub} not")?;
            }
            for (m, g) in &self.spreading_violations {
                writeln!(f, "spreading violation: {m} member, spread {g} not")?;
            }
        }
        write!(f, "compactness: {}", self.compactness)
    }
}

/// Enumerates all same-size coordinatewise dominations of `f` inside
/// `[1,m]` and applies `visit` to each (including `f` itself).
fn for_each_spread(
    f: &FinSet,
    m: u32,
    visit: &mut impl FnMut(&FinSet),
) {
    fn rec(
        base: &[u32],
        idx: usize,
        m: u32,
        current: &mut Vec<u32>,
        visit: &mut impl FnMut(&FinSet),
    ) {
        if idx == base.len() {
            visit(&FinSet::new(current.clone()).expect("constructed increasing"));
            return;
        }
        let lower = base[idx].max(current.last().map_or(0, |&l| l + 1));
        for g in lower..=m {
            current.push(g);
            rec(base, idx + 1, m, current, visit);
            current.pop();
        }
    }
    let mut current = Vec::with_capacity(f.len());
    rec(f.elements(), 0, m, &mut current, visit);
}

/// Exhaustively verifies heredity, spreading, and singleton membership for
/// all members inside `[1,m]`, reporting every violation with witnesses.
pub fn check_regularity_window(
    fam: &Family,
    m: u32,
    limits: &Limits,
) -> Result<RegularityReport, FamilyError> {
    if m as usize > limits.regularity_window {
        return Err(FamilyError::BoundExceeded {
            what: "regularity window",
            size: m as usize,
            bound: limits.regularity_window,
        });
    }
    let mut enum_limits = limits.clone();
    enum_limits.enum_support = enum_limits.enum_support.max(m as usize);
    let members = enumerate_members(fam, &FinSet::window(m), &enum_limits)?;
    let mut report = RegularityReport {
        window: m,
        hereditary_violations: Vec::new(),
        spreading_violations: Vec::new(),
        singleton_violations: Vec::new(),
        compactness: match fam.kind() {
            FamilyKind::Explicit { .. } => "not applicable (finite universe)",
            _ => "holds analytically (member sizes are bounded in terms of the minimum)",
        },
    };
    for n in 1..=m {
        if !is_member(fam, &FinSet::singleton(n)) {
            report.singleton_violations.push(n);
        }
    }
    for f in &members {
        for sub in f.subsets() {
            if !is_member(fam, &sub) {
                report.hereditary_violations.push((f.clone(), sub));
            }
        }
        let mut bad = Vec::new();
        for_each_spread(f, m, &mut |g| {
            if !is_member(fam, g) {
                bad.push((f.clone(), g.clone()));
            }
        });
        report.spreading_violations.extend(bad);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinals::parse_ordinal;

    fn fs(v: &[u32]) -> FinSet {
        FinSet::new(v.to_vec()).unwrap()
    }

    fn schreier(alpha: &str) -> Family {
        Family::schreier(parse_ordinal(alpha).unwrap()).unwrap()
    }

    #[test]
    fn build_family_examples() {
        let card = build_family(&FamilyConfig::Cardinality { n: 2 }).unwrap();
        assert!(is_member(&card, &fs(&[5, 9])));
        assert!(!is_member(&card, &fs(&[1, 2, 3])));

        let interval = build_family(&FamilyConfig::Interval {
            ks_prefix: vec![0, 2, 5],
            tail_step: 3,
        })
        .unwrap();
        assert!(is_member(&interval, &fs(&[3, 7])));
        assert!(!is_member(&interval, &fs(&[3, 7, 9])));

        let err = build_family(&FamilyConfig::Explicit {
            universe: 3,
            sets: vec![vec![1], vec![2], vec![3], vec![1, 2]],
        });
        assert!(matches!(err, Err(FamilyError::Regularity(_))), "{err:?}");
    }

    #[test]
    fn schreier_membership_examples() {
        let s1 = schreier("1");
        assert!(is_member(&s1, &fs(&[2, 3])));
        assert!(!is_member(&s1, &fs(&[1, 2])));
        let card3 = Family::cardinality(3).unwrap();
        assert!(is_member(&card3, &FinSet::empty()));
    }

    #[test]
    fn maximality_examples() {
        let s1 = schreier("1");
        assert!(is_maximal(&s1, &fs(&[3, 4, 5])).unwrap());
        assert!(!is_maximal(&s1, &fs(&[2])).unwrap());
        assert!(!is_maximal(&s1, &FinSet::empty()).unwrap());
        assert!(is_maximal(&s1, &fs(&[1, 2])).is_err());
    }

    #[test]
    fn explicit_families_require_singleton_coverage() {
        let err = Family::explicit(3, vec![fs(&[1]), fs(&[2])]);
        assert!(matches!(err, Err(FamilyError::Regularity(_))));
        // the lenient constructor admits it, and the checker reports it
        let fam = Family::explicit_unchecked(3, vec![fs(&[1]), fs(&[2])]).unwrap();
        let report = check_regularity_window(&fam, 3, &Limits::default()).unwrap();
        assert_eq!(report.singleton_violations, vec![3]);
    }

    #[test]
    fn maximality_in_explicit_families_scans_the_universe() {
        // {1,4} is a member, {1,2} is not: the max+1 shortcut would wrongly
        // call {1} maximal.
        let sets = vec![fs(&[1, 4]), fs(&[2, 4]), fs(&[3, 4])];
        let fam = Family::explicit(4, sets).unwrap();
        assert!(!is_maximal(&fam, &fs(&[1])).unwrap());
        assert!(is_maximal(&fam, &fs(&[1, 4])).unwrap());
    }

    #[test]
    fn extend_to_maximal_examples() {
        let s1 = schreier("1");
        let evens = TailRule::ArithmeticProgression { first: 2, step: 2 };
        assert_eq!(extend_to_maximal(&s1, &fs(&[3]), &evens).unwrap(), fs(&[3, 4, 6]));
        assert_eq!(
            extend_to_maximal(&s1, &fs(&[2, 3]), &TailRule::AllFrom { start: 1 }).unwrap(),
            fs(&[2, 3])
        );
        let card2 = Family::cardinality(2).unwrap();
        assert_eq!(
            extend_to_maximal(&card2, &fs(&[5]), &TailRule::AllFrom { start: 6 }).unwrap(),
            fs(&[5, 6])
        );
    }

    #[test]
    fn max_extension_sequence_examples() {
        let s1 = schreier("1");
        assert_eq!(
            max_extension_sequence(&s1, 2, 3).unwrap(),
            vec![fs(&[3]), fs(&[4]), fs(&[5])]
        );
        let s2 = schreier("2");
        assert_eq!(
            max_extension_sequence(&s2, 2, 1).unwrap(),
            vec![fs(&[3, 4, 5, 6, 7])]
        );
        assert!(matches!(
            max_extension_sequence(&s1, 1, 1),
            Err(FamilyError::SingletonMaximal(1))
        ));
    }

    #[test]
    fn enumerate_members_examples() {
        let s1 = schreier("1");
        let limits = Limits::default();
        assert_eq!(
            enumerate_members(&s1, &fs(&[1, 2, 3]), &limits).unwrap(),
            vec![FinSet::empty(), fs(&[1]), fs(&[2]), fs(&[2, 3]), fs(&[3])]
        );
        let card1 = Family::cardinality(1).unwrap();
        assert_eq!(
            enumerate_members(&card1, &fs(&[4, 7]), &limits).unwrap(),
            vec![FinSet::empty(), fs(&[4]), fs(&[7])]
        );
        assert_eq!(
            enumerate_members(&s1, &FinSet::empty(), &limits).unwrap(),
            vec![FinSet::empty()]
        );
    }

    #[test]
    fn enumerate_maximal_within_examples() {
        let s1 = schreier("1");
        let limits = Limits::default();
        assert_eq!(
            enumerate_maximal_within(&s1, &fs(&[1, 2, 3]), &limits).unwrap(),
            vec![fs(&[1]), fs(&[2, 3])]
        );
        assert_eq!(
            enumerate_maximal_within(&s1, &fs(&[2, 3, 4]), &limits).unwrap(),
            vec![fs(&[2, 3]), fs(&[2, 4]), fs(&[3, 4])]
        );
        let card2 = Family::cardinality(2).unwrap();
        assert_eq!(
            enumerate_maximal_within(&card2, &fs(&[1, 2, 3]), &limits).unwrap(),
            vec![fs(&[1, 2]), fs(&[1, 3]), fs(&[2, 3])]
        );
    }

    #[test]
    fn interval_family_maximality_is_exact_size() {
        let interval = build_family(&FamilyConfig::Interval {
            ks_prefix: vec![0, 2, 5],
            tail_step: 3,
        })
        .unwrap();
        let limits = Limits::default();
        for f in enumerate_members(&interval, &FinSet::window(10), &limits).unwrap() {
            let Some(min) = f.min_elem() else { continue };
            let rule = match interval.kind() {
                FamilyKind::Interval(rule) => rule,
                _ => unreachable!(),
            };
            let expected = f.len() == rule.size_limit(min);
            assert_eq!(is_maximal(&interval, &f).unwrap(), expected, "{f}");
        }
    }

    #[test]
    fn regularity_window_examples() {
        let limits = Limits::default();
        let s2 = schreier("2");
        assert!(check_regularity_window(&s2, 10, &limits).unwrap().is_ok());

        let card3 = Family::cardinality(3).unwrap();
        assert!(check_regularity_window(&card3, 8, &limits).unwrap().is_ok());

        let seeded = Family::explicit_unchecked(
            3,
            vec![fs(&[1]), fs(&[2]), fs(&[3]), fs(&[1, 2])],
        )
        .unwrap();
        let report = check_regularity_window(&seeded, 3, &limits).unwrap();
        assert!(!report.is_ok());
        assert!(report
            .spreading_violations
            .contains(&(fs(&[1, 2]), fs(&[1, 3]))));
        assert!(report.hereditary_violations.is_empty());
    }

    #[test]
    fn tail_rules_generate_and_test() {
        let evens = TailRule::ArithmeticProgression { first: 2, step: 2 };
        assert_eq!(evens.next_after(0), 2);
        assert_eq!(evens.next_after(3), 4);
        assert_eq!(evens.next_after(4), 6);
        assert!(evens.contains(8));
        assert!(!evens.contains(7));

        let mixed = TailRule::ExplicitThenStep { prefix: vec![3, 5], step: 4 };
        assert_eq!(mixed.next_after(0), 3);
        assert_eq!(mixed.next_after(3), 5);
        assert_eq!(mixed.next_after(5), 9);
        assert_eq!(mixed.next_after(10), 13);
        assert!(mixed.contains(3));
        assert!(mixed.contains(13));
        assert!(!mixed.contains(4));
    }

    #[test]
    fn families_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Family>();

        let s2 = std::sync::Arc::new(schreier("2"));
        let handles: Vec<_> = (0..4)
            .map(|k| {
                let fam = s2.clone();
                std::thread::spawn(move || {
                    let f = fs(&[2 + k, 3 + k, 4 + k, 5 + k, 6 + k]);
                    is_member(&fam, &f)
                })
            })
            .collect();
        for handle in handles {
            assert!(handle.join().unwrap());
        }
    }

    #[test]
    fn memoization_is_invisible() {
        let s2 = schreier("2");
        let f = fs(&[2, 3, 4, 5, 6]);
        assert!(is_member(&s2, &f));
        assert!(is_member(&s2, &f));
        assert!(!is_member(&s2, &fs(&[2, 3, 4, 5, 6, 7, 8])));
    }
}
