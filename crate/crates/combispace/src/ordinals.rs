//! Ordinals below `w^w` in Cantor normal form.
//!
//! These index the transfinite Schreier hierarchy. The representation is a
//! list of `(exponent, coefficient)` terms with strictly decreasing
//! exponents, encoding `sum of w^e * c`; the empty list is 0. Limit
//! ordinals come with a fixed fundamental sequence (the standard Cantor
//! assignment), which is part of the library contract: the hierarchy
//! depends on this choice, so it is frozen here for reproducibility.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Default ceiling on parsed exponents and coefficients.
pub const DEFAULT_PARSE_BOUND: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrdinalError {
    #[error("ordinal parse error: {0}")]
    Parse(String),
    #[error("{what} {value} exceeds the configured bound {bound}")]
    Overflow { what: &'static str, value: u64, bound: u32 },
    #[error("fundamental sequence requires a limit ordinal, got {0}")]
    NotLimit(String),
    #[error("fundamental sequence index must be >= 1")]
    IndexOutOfRange,
}

/// An ordinal below `w^w` in Cantor normal form.
///
/// The derived `Ord` is the true ordinal order: term lists with strictly
/// decreasing exponents compare lexicographically on `(exponent,
/// coefficient)` pairs, with a proper prefix smaller than its extension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrdinalCnf {
    terms: Vec<(u32, u32)>,
}

/// Classification driving the hierarchy recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrdinalClass {
    Zero,
    Successor(OrdinalCnf),
    Limit,
}

impl OrdinalCnf {
    pub fn zero() -> Self {
        OrdinalCnf { terms: Vec::new() }
    }

    pub fn one() -> Self {
        OrdinalCnf::from_nat(1)
    }

    pub fn from_nat(n: u32) -> Self {
        if n == 0 {
            OrdinalCnf::zero()
        } else {
            OrdinalCnf { terms: vec![(0, n)] }
        }
    }

    pub fn omega() -> Self {
        OrdinalCnf { terms: vec![(1, 1)] }
    }

    /// `w^exp * coeff + rest`-style constructor from raw terms.
    pub fn from_terms(terms: Vec<(u32, u32)>) -> Result<Self, OrdinalError> {
        for window in terms.windows(2) {
            if window[0].0 <= window[1].0 {
                return Err(OrdinalError::Parse(
                    "exponents must be strictly decreasing".into(),
                ));
            }
        }
        if terms.iter().any(|&(_, c)| c == 0) {
            return Err(OrdinalError::Parse("zero coefficient".into()));
        }
        Ok(OrdinalCnf { terms })
    }

    pub fn terms(&self) -> &[(u32, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms == [(0, 1)]
    }

    /// If this ordinal is a natural number, returns it.
    pub fn as_nat(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(0, c)] => Some(*c),
            _ => None,
        }
    }

    pub fn classify(&self) -> OrdinalClass {
        match self.terms.last() {
            None => OrdinalClass::Zero,
            Some(&(0, c)) => {
                let mut pred = self.terms.clone();
                pred.pop();
                if c > 1 {
                    pred.push((0, c - 1));
                }
                OrdinalClass::Successor(OrdinalCnf { terms: pred })
            }
            Some(_) => OrdinalClass::Limit,
        }
    }

    /// The n-th element of the fixed fundamental sequence of a limit
    /// ordinal.
    ///
    /// Writing the ordinal as `g + w^k * c` with final term `w^k * c`
    /// (k >= 1), the assignment is
    /// `fs(g + w^k * c, n) = g + w^k * (c-1) + w^(k-1) * n`.
    /// The sequence is strictly increasing in n and converges to the
    /// ordinal from below.
    pub fn fundamental_sequence(&self, n: u32) -> Result<OrdinalCnf, OrdinalError> {
        if n == 0 {
            return Err(OrdinalError::IndexOutOfRange);
        }
        match self.terms.last() {
            Some(&(k, c)) if k >= 1 => {
                let mut terms = self.terms.clone();
                terms.pop();
                if c > 1 {
                    terms.push((k, c - 1));
                }
                terms.push((k - 1, n));
                Ok(OrdinalCnf { terms })
            }
            _ => Err(OrdinalError::NotLimit(self.to_string())),
        }
    }
}

/// Total order on ordinals; identical to `Ord` and exposed by name.
pub fn compare(a: &OrdinalCnf, b: &OrdinalCnf) -> Ordering {
    a.cmp(b)
}

/// Parses the grammar `TERM := "w" ["^" NAT] ["*" POSNAT] | NAT`,
/// `EXPR := TERM ("+" TERM)*`, with exponents strictly decreasing left to
/// right, using the default bound on exponents and coefficients.
pub fn parse_ordinal(text: &str) -> Result<OrdinalCnf, OrdinalError> {
    parse_ordinal_with_bound(text, DEFAULT_PARSE_BOUND)
}

pub fn parse_ordinal_with_bound(text: &str, bound: u32) -> Result<OrdinalCnf, OrdinalError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(OrdinalError::Parse("empty ordinal expression".into()));
    }
    if s == "0" {
        return Ok(OrdinalCnf::zero());
    }
    let mut terms = Vec::new();
    for part in s.split('+') {
        terms.push(parse_term(part, bound)?);
    }
    for window in terms.windows(2) {
        if window[0].0 <= window[1].0 {
            return Err(OrdinalError::Parse(format!(
                "non-canonical exponent order in {text:?}"
            )));
        }
    }
    Ok(OrdinalCnf { terms })
}

fn parse_nat(s: &str, what: &'static str, bound: u32) -> Result<u32, OrdinalError> {
    if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit()) {
        return Err(OrdinalError::Parse(format!("bad natural {s:?}")));
    }
    let value: u64 = s
        .parse()
        .map_err(|_| OrdinalError::Overflow { what, value: u64::MAX, bound })?;
    if value > u64::from(bound) {
        return Err(OrdinalError::Overflow { what, value, bound });
    }
    Ok(value as u32)
}

fn parse_term(part: &str, bound: u32) -> Result<(u32, u32), OrdinalError> {
    if let Some(rest) = part.strip_prefix('w') {
        let (exp_str, coeff_str) = match rest.split_once('*') {
            Some((e, c)) => (e, Some(c)),
            None => (rest, None),
        };
        let exponent = match exp_str.strip_prefix('^') {
            Some(e) => parse_nat(e, "exponent", bound)?,
            None if exp_str.is_empty() => 1,
            None => {
                return Err(OrdinalError::Parse(format!("bad term {part:?}")));
            }
        };
        let coefficient = match coeff_str {
            Some(c) => {
                let c = parse_nat(c, "coefficient", bound)?;
                if c == 0 {
                    return Err(OrdinalError::Parse("zero coefficient".into()));
                }
                c
            }
            None => 1,
        };
        Ok((exponent, coefficient))
    } else {
        let n = parse_nat(part, "coefficient", bound)?;
        if n == 0 {
            return Err(OrdinalError::Parse(
                "zero summand is only allowed as the whole expression".into(),
            ));
        }
        Ok((0, n))
    }
}

impl fmt::Display for OrdinalCnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for &(e, c) in &self.terms {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "w")?,
                (1, c) => write!(f, "w*{c}")?,
                (e, 1) => write!(f, "w^{e}")?,
                (e, c) => write!(f, "w^{e}*{c}")?,
            }
        }
        Ok(())
    }
}
