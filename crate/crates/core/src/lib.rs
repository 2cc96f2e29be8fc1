//! Exact invariants of spherical space forms.
//!
//! A finite subgroup of SO(4) acting freely on the unit sphere in R^4 gives a
//! space form S^3/Gamma. This crate enumerates the groups that arise inside
//! U(2) (and their orientation reverses), and computes the invariants that
//! control self-dual and scalar-flat Kahler geometry on the associated
//! 4-manifolds:
//!
//! - eta invariants of the signature complex, by closed form, by brute
//!   cotangent sum over the enumerated group, and through the singularities of
//!   the orbifold compactification (all three routes must agree);
//! - the correction term `N(Gamma)` for the index of the self-dual deformation
//!   complex on ALE spaces, with an independent oracle through the orbifold
//!   index formula;
//! - dimensions of self-dual deformation spaces and the scalar-flat Kahler
//!   deformation bound `d_max`;
//! - the ALE Hitchin-Thorpe inequality, evaluated in exact rational
//!   arithmetic;
//! - the bookkeeping of signatures and gluing data for the connected-sum
//!   constructions built from these spaces.
//!
//! All rational quantities use arbitrary-precision arithmetic; floating point
//! appears only in the brute-force routes, which exist to cross-check the
//! exact ones.

pub mod exactnum;
pub mod hj;
pub mod groups;
pub mod topology;
pub mod eta;
pub mod index;
pub mod moduli;
pub mod ricci;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Parameters outside an operation's domain (invalid coprimality,
    /// degenerate families, reversed specs where an orientation is fixed).
    #[error("{0}")]
    Domain(String),
    /// A congruence-class table has no row for these parameters.
    #[error("no table entry: {0}")]
    TableMiss(String),
    /// Generator closure escaped the expected group order; signals a
    /// generator bug rather than bad user input.
    #[error("group closure exceeded {cap} elements")]
    ClosureOverflow { cap: usize },
    /// A character average that must be a (real) integer came out too far
    /// from one.
    #[error("character average {value} is not within {tol} of an integer")]
    NonIntegralCharacterSum { value: f64, tol: f64 },
    /// A malformed spec string.
    #[error("cannot parse group spec: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
