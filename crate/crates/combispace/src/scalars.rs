//! Exact scalar arithmetic: rationals, Gaussian rationals, and
//! modulus-phase scalars.
//!
//! Every norm and extremality comparison in this crate reduces to comparing
//! rationals, so scalars are kept in a form where those comparisons are
//! decidable with zero tolerance. A scalar is stored as a nonnegative
//! rational modulus times a unit-modulus Gaussian-rational phase; the phase
//! condition `re^2 + im^2 = 1` is testable exactly. Scalars of modulus 1
//! play the role of signs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

/// Shorthand rational constructor. Panics on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer-valued rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("scalar parse error: {0}")]
    Parse(String),
    #[error("phase is not unit-modulus: {0}")]
    NonUnitPhase(String),
    #[error("gaussian rational has irrational modulus: {0}")]
    IrrationalModulus(String),
}

/// Exact square root of a nonnegative rational, when it is again rational.
///
/// A reduced fraction p/q has a rational square root iff both p and q are
/// perfect squares.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Rational::new(ns, ds))
    } else {
        None
    }
}

/// A Gaussian rational `re + im*i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn zero() -> Self {
        GaussRational::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        GaussRational::new(Rational::one(), Rational::zero())
    }

    pub fn i_unit() -> Self {
        GaussRational::new(Rational::zero(), Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        GaussRational::new(r, Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`, the exact squared modulus.
    pub fn modulus_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussRational::new(&self.re * r, &self.im * r)
    }
}

impl Add for &GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re.clone(), -self.im.clone())
    }
}

/// Exact componentwise sum of Gaussian rationals. Empty input sums to 0.
pub fn gauss_sum<'a>(values: impl IntoIterator<Item = &'a GaussRational>) -> GaussRational {
    values
        .into_iter()
        .fold(GaussRational::zero(), |acc, v| &acc + v)
}

/// Exact squared modulus; `|z| ∈ {0, 1}` is decided by comparing to 0 or 1.
pub fn modulus_sq(z: &GaussRational) -> Rational {
    z.modulus_sq()
}

/// An exact scalar stored as `modulus * phase` with a unit-modulus phase.
///
/// The factored form is what the norm machinery needs: norms sum moduli,
/// and the modulus of a general Gaussian rational is irrational. The zero
/// scalar is canonicalized to phase 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    modulus: Rational,
    phase: GaussRational,
}

impl Scalar {
    /// Builds a scalar, folding a negative modulus into the phase and
    /// canonicalizing zero. Fails if the phase is not unit-modulus.
    pub fn new(modulus: Rational, phase: GaussRational) -> Result<Self, ScalarError> {
        if !phase.modulus_sq().is_one() {
            return Err(ScalarError::NonUnitPhase(format!("{}", GaussDisplay(&phase))));
        }
        if modulus.is_zero() {
            return Ok(Scalar::zero());
        }
        if modulus.is_negative() {
            Ok(Scalar {
                modulus: -modulus,
                phase: -&phase,
            })
        } else {
            Ok(Scalar { modulus, phase })
        }
    }

    /// A sign: a scalar of modulus exactly 1.
    pub fn sign(phase: GaussRational) -> Result<Self, ScalarError> {
        Scalar::new(Rational::one(), phase)
    }

    pub fn zero() -> Self {
        Scalar {
            modulus: Rational::zero(),
            phase: GaussRational::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            modulus: Rational::one(),
            phase: GaussRational::one(),
        }
    }

    pub fn minus_one() -> Self {
        Scalar {
            modulus: Rational::one(),
            phase: -&GaussRational::one(),
        }
    }

    pub fn i_unit() -> Self {
        Scalar {
            modulus: Rational::one(),
            phase: GaussRational::i_unit(),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        if r.is_negative() {
            Scalar {
                modulus: -r,
                phase: -&GaussRational::one(),
            }
        } else if r.is_zero() {
            Scalar::zero()
        } else {
            Scalar {
                modulus: r,
                phase: GaussRational::one(),
            }
        }
    }

    /// Recovers the factored form of a Gaussian rational, when its modulus
    /// is rational (e.g. `3+4i` becomes modulus 5, phase `3/5+4/5i`).
    pub fn try_from_gauss(z: &GaussRational) -> Result<Self, ScalarError> {
        if z.is_zero() {
            return Ok(Scalar::zero());
        }
        let m = rational_sqrt(&z.modulus_sq())
            .ok_or_else(|| ScalarError::IrrationalModulus(format!("{}", GaussDisplay(z))))?;
        let inv = Rational::one() / &m;
        Ok(Scalar {
            modulus: m,
            phase: z.scale(&inv),
        })
    }

    pub fn modulus(&self) -> &Rational {
        &self.modulus
    }

    pub fn phase(&self) -> &GaussRational {
        &self.phase
    }

    pub fn is_zero(&self) -> bool {
        self.modulus.is_zero()
    }

    /// Whether this scalar is a sign (modulus exactly 1).
    pub fn is_sign(&self) -> bool {
        self.modulus.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.phase.is_real()
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            modulus: &self.modulus * &other.modulus,
            phase: &self.phase * &other.phase,
        }
    }

    pub fn conj(&self) -> Scalar {
        Scalar {
            modulus: self.modulus.clone(),
            phase: self.phase.conj(),
        }
    }

    /// The scalar as a plain Gaussian rational, `modulus * phase`.
    pub fn as_gauss(&self) -> GaussRational {
        self.phase.scale(&self.modulus)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        if self.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            modulus: self.modulus.clone(),
            phase: -&self.phase,
        }
    }
}

/// The sign group enumerated when tests loop over sign patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignGroup {
    /// `{1, -1}`
    Real,
    /// `{1, i, -1, -i}`
    Complex,
}

impl SignGroup {
    pub fn elements(self) -> Vec<Scalar> {
        match self {
            SignGroup::Real => vec![Scalar::one(), Scalar::minus_one()],
            SignGroup::Complex => vec![
                Scalar::one(),
                Scalar::i_unit(),
                Scalar::minus_one(),
                -&Scalar::i_unit(),
            ],
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing
//
// Grammar (whitespace-insensitive):
//   RATIONAL := INT | INT "/" POSINT
//   GAUSS    := RATIONAL | [RATIONAL] [("+"|"-") [RATIONAL]] "i"
//   SCALAR   := GAUSS | RATIONAL "*" "(" GAUSS ")"
// A bare coefficient before "i" may be omitted, meaning 1.
// ---------------------------------------------------------------------------

pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    parse_rational_clean(&s)
}

fn parse_int(s: &str) -> Result<BigInt, ScalarError> {
    let body = s.strip_prefix('-').unwrap_or(s);
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit()) {
        return Err(ScalarError::Parse(format!("bad integer {s:?}")));
    }
    s.parse::<BigInt>()
        .map_err(|e| ScalarError::Parse(format!("bad integer {s:?}: {e}")))
}

fn parse_rational_clean(s: &str) -> Result<Rational, ScalarError> {
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let numer = parse_int(n)?;
            if d.starts_with('-') {
                return Err(ScalarError::Parse(format!("denominator must be positive in {s:?}")));
            }
            let denom = parse_int(d)?;
            if denom.is_zero() {
                return Err(ScalarError::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

pub fn parse_gauss(text: &str) -> Result<GaussRational, ScalarError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    parse_gauss_clean(&s)
}

fn parse_gauss_clean(s: &str) -> Result<GaussRational, ScalarError> {
    if s.is_empty() {
        return Err(ScalarError::Parse("empty scalar literal".into()));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(GaussRational::from_rational(parse_rational_clean(s)?));
    };
    if body.contains('i') {
        return Err(ScalarError::Parse(format!("stray 'i' in {s:?}")));
    }
    // Split body into real part and imaginary coefficient at the last
    // interior sign; rationals carry signs only in leading position.
    let split = body
        .char_indices()
        .rev()
        .find(|&(idx, c)| idx > 0 && (c == '+' || c == '-'));
    match split {
        Some((idx, sign_char)) => {
            let re = parse_rational_clean(&body[..idx])?;
            let mag = &body[idx + 1..];
            let mut im = if mag.is_empty() {
                Rational::one()
            } else {
                parse_rational_clean(mag)?
            };
            if sign_char == '-' {
                im = -im;
            }
            Ok(GaussRational::new(re, im))
        }
        None => {
            let im = match body {
                "" => Rational::one(),
                "-" => -Rational::one(),
                _ => parse_rational_clean(body)?,
            };
            Ok(GaussRational::new(Rational::zero(), im))
        }
    }
}

/// Parses a scalar literal such as `2/3`, `-1`, `i`, `3/5+4/5i`, or
/// `1/2*(3/5-4/5i)`.
///
/// In the `modulus*(phase)` form the phase must be unit-modulus exactly.
/// A bare Gaussian literal is accepted whenever its modulus is rational.
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(star) = s.find('*') {
        let (m_part, rest) = s.split_at(star);
        let rest = &rest[1..];
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| ScalarError::Parse(format!("expected (gauss) after '*' in {text:?}")))?;
        let modulus = parse_rational_clean(m_part)?;
        let phase = parse_gauss_clean(inner)?;
        if !phase.modulus_sq().is_one() {
            return Err(ScalarError::NonUnitPhase(format!("{}", GaussDisplay(&phase))));
        }
        Scalar::new(modulus, phase)
    } else {
        Scalar::try_from_gauss(&parse_gauss_clean(&s)?)
    }
}

// ---------------------------------------------------------------------------
// Canonical formatting. `parse_scalar` is a left inverse of this formatter.
// ---------------------------------------------------------------------------

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

struct GaussDisplay<'a>(&'a GaussRational);

impl fmt::Display for GaussDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.0;
        if z.is_zero() {
            return write!(f, "0");
        }
        if z.im.is_zero() {
            return write!(f, "{}", fmt_rational(&z.re));
        }
        let im_mag = z.im.abs();
        let im_body = if im_mag.is_one() {
            String::new()
        } else {
            fmt_rational(&im_mag)
        };
        if z.re.is_zero() {
            let sign = if z.im.is_negative() { "-" } else { "" };
            write!(f, "{sign}{im_body}i")
        } else {
            let sign = if z.im.is_negative() { "-" } else { "+" };
            write!(f, "{}{sign}{im_body}i", fmt_rational(&z.re))
        }
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", GaussDisplay(self))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.phase == GaussRational::one() {
            return write!(f, "{}", fmt_rational(&self.modulus));
        }
        if self.phase == -&GaussRational::one() {
            return write!(f, "{}", fmt_rational(&(-self.modulus.clone())));
        }
        if self.modulus.is_one() {
            return write!(f, "{}", GaussDisplay(&self.phase));
        }
        write!(
            f,
            "{}*({})",
            fmt_rational(&self.modulus),
            GaussDisplay(&self.phase)
        )
    }
}
