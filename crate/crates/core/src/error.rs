use thiserror::Error;

use crate::oracles::CaseReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe size {n} out of range (1..={max})")]
    UniverseOutOfRange { n: u32, max: u32 },

    #[error("the empty set cannot be a member of a family")]
    EmptySetPresent,

    #[error("universe [{n}] is not a member of the family")]
    UniverseMissing { n: u32 },

    #[error("mask {mask:#b} does not fit universe [{n}]")]
    MaskOutOfRange { mask: u32, n: u32 },

    #[error("operation needs universe size at most {max}, got {n}")]
    UniverseTooLarge { n: u32, max: u32 },

    #[error("isomorphism canonical form enumerates n! relabelings and is limited to n <= {max}, got {n}")]
    UniverseTooLargeForIso { n: u32, max: u32 },

    #[error("exhaustive enumeration is limited to n <= {max} (got {n}); n = 5 needs the long-run flag")]
    UniverseTooLargeForEnumeration { n: u32, max: u32 },

    #[error("universe [{n}] too small: need n >= {min}")]
    UniverseTooSmall { n: u32, min: u32 },

    #[error("families live over different universes ([{left}] vs [{right}])")]
    UniverseMismatch { left: u32, right: u32 },

    #[error("family is not union-closed: {a:?} and {b:?} are members but their union is not")]
    NotUnionClosed { a: Vec<u32>, b: Vec<u32> },

    #[error("{set:?} is not a member of the family")]
    NotAMember { set: Vec<u32> },

    #[error("{set:?} belongs to the subfamily but not to the ambient family")]
    NotSubfamily { set: Vec<u32> },

    #[error("generator {set:?} is not a member of the family")]
    GeneratorNotMember { set: Vec<u32> },

    #[error("generator list is empty")]
    EmptyGeneratorList,

    #[error("family is not 1-dense (it must be an up-set different from the power set)")]
    NotOneDense,

    #[error("closure-cover criterion disagrees with the direct closure (direct={direct}, criterion={criterion})")]
    CriterionMismatch { direct: bool, criterion: bool },

    #[error("family has {size} members, more than the cap of {cap}")]
    FamilyTooLarge { size: usize, cap: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("level {level} out of range 1..={max}")]
    LevelOutOfRange { level: u32, max: u32 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("predicted and computed membership disagree: {0}")]
    DisagreementFound(Box<CaseReport>),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("no union-closed family over [{n}] has density {k}")]
    NoFamilyWithDensity { k: u32, n: u32 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
