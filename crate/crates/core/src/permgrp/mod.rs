//! Brute-force permutation groups: closure enumeration, subgroups, normal
//! subgroup lattices, quotients and solvability predicates.

mod file;
mod group;
mod perm;
mod quotient;
mod subgroup;

use thiserror::Error;

pub use file::GroupSpec;
pub use group::{ElemId, PermutationGroup, DEFAULT_SIZE_CAP};
pub use perm::{Permutation, Point};
pub use quotient::QuotientGroup;
pub use subgroup::Subgroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("group too large: more than {cap} elements")]
    TooLarge { cap: usize },
    #[error("images do not form a bijection")]
    NotBijection,
    #[error("unsupported degree {0}")]
    Degree(usize),
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("point {point} outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated in cycle notation")]
    RepeatedPoint(usize),
    #[error("cannot parse {0:?} as cycle notation")]
    Syntax(String),
    #[error("line {line}: {message} (at {token:?})")]
    File { line: usize, token: String, message: String },
    #[error("{0} is not an element of the group")]
    NotMember(String),
    #[error("subgroup is not normal: conjugating {n} by {g} leaves it")]
    NotNormal { g: String, n: String },
}
