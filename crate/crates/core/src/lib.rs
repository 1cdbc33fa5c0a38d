//! Chow polynomials of boolean and uniform matroids.
//!
//! Three independent routes compute the same Hilbert series:
//!
//! * [`boolean`] enumerates the normal monomials of the quadratic Gröbner basis
//!   of the simplicial presentation and transports them to permutations;
//! * [`rewrite`] multiplies normal monomials by the top generator directly on
//!   inversion sequences and derives uniform Chow polynomials from the result;
//! * [`oracle`] builds the Chow ring of any small loopless matroid from its
//!   flats and computes graded dimensions by exact linear algebra.
//!
//! [`poly`] carries the exact polynomial arithmetic together with the
//! real-rootedness and interlacing checks used by [`experiments`].

pub mod boolean;
pub mod experiments;
pub mod ground;
pub mod oracle;
pub mod poly;
pub mod rewrite;

pub use boolean::NormalMonomial;
pub use ground::{GroundSet, InversionSequence, Permutation, Subset};
pub use poly::IntPolynomial;
pub use rewrite::{DSet, RewriteResult};

/// Largest `n` any exhaustive enumeration in this crate accepts.
pub const ENUMERATION_LIMIT: usize = 13;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid ground set: {0}")]
    InvalidGroundSet(String),
    #[error("label {0} is outside the supported range 0..=63")]
    LabelOutOfRange(u32),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid inversion sequence: {0}")]
    InvalidInversionSequence(String),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("statistic requires the canonical ground set [n]")]
    NonCanonicalGround,
    #[error("subset {0} has fewer than two elements")]
    SubsetTooSmall(String),
    #[error("monomial {0} is not normal")]
    NotNormal(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid lattice of flats: {0}")]
    InvalidLattice(String),
    #[error("{0} is not a nonempty flat")]
    NotAFlat(String),
    #[error("expression is not homogeneous")]
    Inhomogeneous,
    #[error("{what} exceeds the configured limit {limit}")]
    TooLarge { what: String, limit: usize },
    #[error("polynomial {0} is not palindromic")]
    NotPalindromic(String),
    #[error("polynomial {0} is not real-rooted")]
    NotRealRooted(String),
    #[error("sequence {seq} in D^{k}_{n} has only {asc} ascents")]
    AscentBelowFloor {
        n: usize,
        k: usize,
        seq: String,
        asc: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_enumeration_size(what: &str, n: usize) -> Result<()> {
    if n > ENUMERATION_LIMIT {
        Err(Error::TooLarge {
            what: format!("{what} with n = {n}"),
            limit: ENUMERATION_LIMIT,
        })
    } else {
        Ok(())
    }
}
