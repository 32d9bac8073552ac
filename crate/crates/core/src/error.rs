use thiserror::Error;

/// Errors raised by the group, graph and census layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("image table is not a bijection on 0..{degree}")]
    NotABijection { degree: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("element is not a member of the group")]
    NotInGroup,

    #[error("set is not invariant under the group")]
    NotInvariant,

    #[error("group is not transitive")]
    Intransitive,

    #[error("graph is not connected")]
    Disconnected,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("arc element lies in the vertex stabilizer")]
    ArcElementInSubgroup,

    #[error("square of the arc element is not in the vertex stabilizer")]
    ArcElementSquareNotInSubgroup,

    #[error("subgroup and arc element do not generate the group")]
    NotGenerating,

    /// A configured resource cap was hit; the answer is unknown, not negative.
    #[error("undecided: {0}")]
    Undecided(String),
}

pub type Result<T> = std::result::Result<T, Error>;
