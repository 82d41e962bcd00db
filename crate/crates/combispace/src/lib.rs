//! Exact computation in combinatorial Banach spaces.
//!
//! A regular family of finite subsets of the positive integers (hereditary,
//! compact, spreading) induces a norm on finitely supported sequences:
//! the supremum over member sets of the sum of entry moduli. This crate
//! works with such spaces entirely in exact rational arithmetic:
//!
//! * [`families`] builds the families (cardinality caps, the transfinite
//!   Schreier hierarchy, interval families, explicit finite families) and
//!   decides membership, maximality, and window regularity;
//! * [`schreier`] implements the hierarchy recursion and the
//!   min-preservation check for maximal spreading pairs;
//! * [`norms`] computes primal norms, dual norms by a fractional packing
//!   LP over exact rationals, and extreme points of the dual ball;
//! * [`isometry`] applies signed permutations to functionals, verifies
//!   membership transport on finite windows, searches for window-verified
//!   isometry candidates, and provides the doubling operator;
//! * [`scalars`] and [`ordinals`] supply the exact scalar and ordinal
//!   arithmetic underneath.
//!
//! Everything is decided with zero tolerance: moduli are rationals, phases
//! are unit Gaussian rationals, and all optimization runs an exact
//! simplex.

pub mod families;
pub mod finset;
pub mod isometry;
pub mod norms;
pub mod ordinals;
pub mod scalars;
pub mod schreier;

pub use families::{build_family, build_family_unchecked, Family, FamilyConfig, Limits, TailRule};
pub use finset::FinSet;
pub use isometry::SignedPermutation;
pub use norms::SparseVec;
pub use ordinals::OrdinalCnf;
pub use scalars::{GaussRational, Rational, Scalar};
