use alloc::string::String;

use crate::corpus::ReferenceSetKey;

/// Why a single input record was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecordFault {
    NegativeCitations(i64),
    NonPositiveMultiplicity(i64),
    EmptyCategory,
}

impl core::fmt::Display for RecordFault {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            RecordFault::NegativeCitations(c) => write!(f, "negative citation count {c}"),
            RecordFault::NonPositiveMultiplicity(m) => write!(f, "multiplicity must be at least 1, got {m}"),
            RecordFault::EmptyCategory => f.write_str("empty category"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("row {row}: {fault}")]
    MalformedRecord { row: usize, fault: RecordFault },

    #[error("reference set is empty")]
    EmptyReferenceSet,

    #[error("unknown reference set {0}")]
    UnknownReferenceSet(ReferenceSetKey),

    #[error("citation count {citations} does not occur in the reference set")]
    NotAMember { citations: u64 },

    #[error("orientation conversion is undefined for a hypothetical (non-member) profile")]
    NonMemberConversion,

    #[error("invalid threshold scheme: {0}")]
    InvalidScheme(&'static str),

    #[error("portfolio item {index}: {source}")]
    PortfolioItem {
        index: usize,
        #[source]
        source: alloc::boxed::Box<Error>,
    },

    #[error("portfolio item {0} has no reference set keys")]
    EmptyItemKeys(usize),

    #[error("table row {key} with {citations} citations: {source}")]
    TableRow {
        key: ReferenceSetKey,
        citations: u64,
        #[source]
        source: alloc::boxed::Box<Error>,
    },

    #[error("portfolio is empty")]
    EmptyPortfolio,

    #[error("journal list is empty")]
    EmptyJournalList,

    #[error("journal {0} has no categories")]
    EmptyJournalKeys(String),

    #[error("median series have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("no matching row for year {year}, {citations} citations")]
    UnmatchedRow { year: i32, citations: u64 },

    #[error("nothing to compare")]
    EmptyComparison,

    #[error("a median of zero cannot be a denominator")]
    ZeroMedian,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
