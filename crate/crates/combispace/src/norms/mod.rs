//! Norms of the combinatorial space and its dual, and extreme points of
//! the dual ball.
//!
//! For a finitely supported vector the norm is the largest sum of entry
//! moduli over member sets; only sets that are maximal relative to the
//! support matter. The dual norm of a functional is a fractional set
//! packing: maximize the modulus-weighted mass of `u >= 0` subject to
//! `sum over G of u_i <= 1` for every relatively maximal member `G` of the
//! support. Phases are absorbed by alignment, so both sides stay rational
//! and every comparison is exact.
//!
//! Extreme points of the dual ball are exactly the sign vectors supported
//! on maximal members; [`is_extreme`] decides that formula directly, while
//! [`extreme_oracle_small`] independently verifies vertexhood of the
//! finite-dimensional ball by convex-hull membership LPs.

pub mod lp;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::families::{self, Family, FamilyError, Limits};
use crate::finset::FinSet;
use crate::scalars::{parse_scalar, GaussRational, Rational, Scalar, ScalarError};
use lp::{in_convex_hull, simplex_max, LpError, LpResult, PackingLp};

#[derive(Debug, Error)]
pub enum NormError {
    #[error("support size {size} exceeds the configured bound {bound} for {what}")]
    BoundExceeded { what: &'static str, size: usize, bound: usize },
    #[error("the extreme-point oracle handles windows up to 4, got {0}")]
    OracleWindowTooLarge(u32),
    #[error("support {support} is not contained in [1,{window}]")]
    SupportOutsideWindow { support: FinSet, window: u32 },
    #[error("the extreme-point oracle requires real entries (phase +-1)")]
    NotReal,
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A finitely supported sequence of scalars, usable as a vector of the
/// space or a functional on it. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: BTreeMap<u32, Scalar>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec::default()
    }

    /// The coordinate functional / unit vector at index `i`.
    pub fn unit(i: u32) -> Self {
        let mut v = SparseVec::default();
        v.set(i, Scalar::one());
        v
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (u32, Scalar)>) -> Self {
        let mut v = SparseVec::default();
        for (i, s) in entries {
            v.set(i, s);
        }
        v
    }

    /// Parses `(index, scalar-literal)` pairs, the JSON object form.
    pub fn from_literal_entries<'a>(
        entries: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, NormError> {
        let mut v = SparseVec::default();
        for (key, literal) in entries {
            let index: u32 = key.trim().parse().map_err(|_| {
                NormError::Scalar(ScalarError::Parse(format!("bad index {key:?}")))
            })?;
            if index < 1 {
                return Err(NormError::Scalar(ScalarError::Parse(
                    "indices start at 1".into(),
                )));
            }
            v.set(index, parse_scalar(literal)?);
        }
        Ok(v)
    }

    /// Sets the entry at `i`, removing it when the scalar is zero.
    pub fn set(&mut self, i: u32, value: Scalar) {
        debug_assert!(i >= 1);
        if value.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, value);
        }
    }

    pub fn get(&self, i: u32) -> Option<&Scalar> {
        self.entries.get(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.entries.iter().map(|(&i, s)| (i, s))
    }

    pub fn support(&self) -> FinSet {
        FinSet::new(self.entries.keys().copied().collect()).expect("BTreeMap keys are increasing")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.entries.values().all(Scalar::is_real)
    }

    /// The pairing `sum of f(i) * x(i)` as an exact Gaussian rational.
    pub fn pairing(&self, x: &SparseVec) -> GaussRational {
        let mut total = GaussRational::zero();
        for (i, s) in self.iter() {
            if let Some(t) = x.get(i) {
                total = &total + &s.mul(t).as_gauss();
            }
        }
        total
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, s)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "\"{i}\":\"{s}\"")?;
        }
        write!(f, "}}")
    }
}

/// The exact norm `max over members F of sum over F of |x(i)|`.
pub fn norm(fam: &Family, x: &SparseVec, limits: &Limits) -> Result<Rational, NormError> {
    let support = x.support();
    if support.len() > limits.enum_support {
        return Err(NormError::BoundExceeded {
            what: "norm",
            size: support.len(),
            bound: limits.enum_support,
        });
    }
    let mut best = Rational::zero();
    for set in families::enumerate_maximal_within(fam, &support, limits)? {
        let total: Rational = set
            .iter()
            .map(|i| x.get(i).expect("set within support").modulus().clone())
            .sum();
        if total > best {
            best = total;
        }
    }
    Ok(best)
}

/// Dual-norm optimum with its certificates.
#[derive(Debug, Clone)]
pub struct DualNormResult {
    pub value: Rational,
    /// Optimal packing weights, one per support index.
    pub weights: Vec<(u32, Rational)>,
    /// Norm-one vector attaining the value: `x_i = u_i * conj(phase_i)`.
    pub certificate: SparseVec,
    /// Final simplex basis, for reproducibility checks.
    pub basis: Vec<usize>,
}

/// The exact dual norm of a functional, solved as a fractional packing LP
/// over the relatively maximal members of the support.
pub fn dual_norm(fam: &Family, f: &SparseVec, limits: &Limits) -> Result<DualNormResult, NormError> {
    let support = f.support();
    if support.len() > limits.dual_support {
        return Err(NormError::BoundExceeded {
            what: "dual norm",
            size: support.len(),
            bound: limits.dual_support,
        });
    }
    if f.is_empty() {
        return Ok(DualNormResult {
            value: Rational::zero(),
            weights: Vec::new(),
            certificate: SparseVec::zero(),
            basis: Vec::new(),
        });
    }
    let variables: Vec<u32> = support.iter().collect();
    let index_of: BTreeMap<u32, usize> =
        variables.iter().enumerate().map(|(j, &i)| (i, j)).collect();
    let constraints: Vec<Vec<usize>> = families::enumerate_maximal_within(fam, &support, limits)?
        .into_iter()
        .map(|set| set.iter().map(|i| index_of[&i]).collect())
        .collect();
    let objective: Vec<Rational> = variables
        .iter()
        .map(|&i| f.get(i).expect("support index").modulus().clone())
        .collect();
    let lp = PackingLp { objective, constraints };
    let result: LpResult = simplex_max(&lp)?;
    let mut certificate = SparseVec::zero();
    let mut weights = Vec::with_capacity(variables.len());
    for (j, &i) in variables.iter().enumerate() {
        let u = result.solution[j].clone();
        weights.push((i, u.clone()));
        let phase = f.get(i).expect("support index").phase().conj();
        certificate.set(i, Scalar::new(u, phase)?);
    }
    Ok(DualNormResult {
        value: result.value,
        weights,
        certificate,
        basis: result.basis,
    })
}

/// Decides the extreme-point formula for the dual ball: every entry a
/// sign, and the support a maximal member.
pub fn is_extreme(fam: &Family, f: &SparseVec) -> bool {
    if f.is_empty() {
        return false;
    }
    if !f.iter().all(|(_, s)| s.is_sign()) {
        return false;
    }
    let support = f.support();
    families::is_member(fam, &support)
        && families::is_maximal(fam, &support).expect("membership just checked")
}

/// Supports of extreme points inside `[1,m]`: the members maximal in the
/// full family, in lexicographic order. Sign patterns are not
/// materialized; every sign choice over such a support is extreme.
pub fn enumerate_extreme_supports(
    fam: &Family,
    m: u32,
    limits: &Limits,
) -> Result<Vec<FinSet>, NormError> {
    if m as usize > limits.window {
        return Err(NormError::BoundExceeded {
            what: "extreme-support window",
            size: m as usize,
            bound: limits.window,
        });
    }
    let mut enum_limits = limits.clone();
    enum_limits.enum_support = enum_limits.enum_support.max(m as usize);
    let mut out = Vec::new();
    for set in families::enumerate_members(fam, &FinSet::window(m), &enum_limits)? {
        if !set.is_empty() && families::is_maximal(fam, &set)? {
            out.push(set);
        }
    }
    Ok(out)
}

/// Independent extreme-point test in the real finite-dimensional space on
/// `[1,n]`, `n <= 4`.
///
/// There the dual ball is the convex hull of all signed indicator vectors
/// of members, so `f` is extreme iff it is one of those candidates and is
/// not a convex combination of the others. Both conditions are exact LP
/// feasibility questions.
pub fn extreme_oracle_small(fam: &Family, f: &SparseVec, n: u32) -> Result<bool, NormError> {
    if n > 4 {
        return Err(NormError::OracleWindowTooLarge(n));
    }
    let support = f.support();
    if support.max_elem().is_some_and(|max| max > n) {
        return Err(NormError::SupportOutsideWindow { support, window: n });
    }
    if !f.is_real() {
        return Err(NormError::NotReal);
    }
    let target: Vec<Rational> = (1..=n)
        .map(|i| match f.get(i) {
            Some(s) => s.as_gauss().re,
            None => Rational::zero(),
        })
        .collect();

    let mut candidates: Vec<Vec<Rational>> = Vec::new();
    for member in families::enumerate_members(fam, &FinSet::window(n), &Limits::default())? {
        let indices: Vec<u32> = member.iter().collect();
        let patterns = 1u32 << indices.len();
        for mask in 0..patterns {
            let mut point = vec![Rational::zero(); n as usize];
            for (bit, &i) in indices.iter().enumerate() {
                let value = if mask & (1 << bit) == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                point[(i - 1) as usize] = value;
            }
            if !candidates.contains(&point) {
                candidates.push(point);
            }
        }
    }

    if !candidates.contains(&target) {
        // Extreme points of a polytope are among its generators.
        return Ok(false);
    }
    let others: Vec<Vec<Rational>> = candidates.into_iter().filter(|p| *p != target).collect();
    Ok(!in_convex_hull(&others, &target)?)
}
