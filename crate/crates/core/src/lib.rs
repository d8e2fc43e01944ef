//! Percentile-rank indicators for citation counts.
//!
//! A reference set holds every paper of one subject category and one
//! publication year. Within it, papers are sorted by decreasing citations
//! and a citation count is located by the range of ranks its tied papers
//! occupy. From that range follow the percentage range, its midpoint, point
//! percentiles under a tie rule, and (fractional) percentile rank classes.
//!
//! Everything here is exact rational arithmetic over [`Exact`]; decimals
//! only appear through [`exact::round_half_up`].
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod classes;
pub mod compare;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod exact;
pub mod plots;

pub use classes::{
    averaged_percentage, class_weights, class_weights_in, top_share, top_share_in, Attribution, ClassWeights,
    PortfolioItem, ThresholdScheme,
};
pub use compare::{
    comparison_table, improvement_factor, what_if_ranking, ComparisonRow, ImprovementFactor, Journal, MedianSeries,
};
pub use corpus::{
    ingest_records, summarize, CitationHistogram, CitationRecord, Provenance, RawRecord, ReferenceSetKey,
    ReferenceStore, SetSummary,
};
pub use engine::{
    p100, percentile_profile, point_percentage, tie_group, to_standard, Orientation, PercentileProfile, TieGroup,
    TieRule,
};
pub use error::{Error, RecordFault, Result};
pub use exact::Exact;
pub use plots::{ccdf_series, normalized_series, profile_series, AxisScale, StepMode, StepPoint, StepSeries};
