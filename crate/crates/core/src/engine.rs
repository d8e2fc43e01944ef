//! Tie groups, rank ranges and percentage ranges within a reference set.
//!
//! Papers are ranked by decreasing citations ("inverted" percentiles), so a
//! percentage of x means the paper sits in the top x%. A tie group of `T`
//! papers with `G` papers above it occupies ranks `G+1 ..= G+T` and the
//! percentage range `100(G+1)/N ..= 100(G+T)/N`.

use num_bigint::BigInt;

use crate::corpus::CitationHistogram;
use crate::error::{Error, Result};
use crate::exact::{integer, ratio, Exact};

/// Position of one citation value in a reference set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TieGroup {
    /// Papers ranked ahead of the group (strictly more citations, in the
    /// inverted orientation).
    pub above: u64,
    /// Papers with exactly this citation count.
    pub ties: u64,
    /// Size of the reference set.
    pub total: u64,
}

impl TieGroup {
    pub fn is_member(&self) -> bool {
        self.ties >= 1
    }

    /// Papers ranked after the group.
    pub fn below(&self) -> u64 {
        self.total - self.above - self.ties
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Sorted by decreasing citations; low percentage = highly cited.
    Inverted,
    /// Sorted by increasing citations.
    Standard,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Inverted => Orientation::Standard,
            Orientation::Standard => Orientation::Inverted,
        }
    }
}

/// How a single percentage is picked out of a tie group's range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TieRule {
    /// Lower end of the range.
    BestRank,
    /// Upper end of the range.
    WorstRank,
    /// Midpoint of the range.
    MidRank,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PercentileProfile {
    pub group: TieGroup,
    pub rank_lo: u64,
    pub rank_hi: u64,
    pub pct_lo: Exact,
    pub pct_hi: Exact,
    pub median: Exact,
    /// False for a hypothetical insertion of a value that does not occur.
    pub member: bool,
    pub orientation: Orientation,
}

impl PercentileProfile {
    /// Profile of a group, hypothetical insertion included.
    pub fn from_group(group: TieGroup, orientation: Orientation) -> Self {
        if group.is_member() {
            let rank_lo = group.above + 1;
            let rank_hi = group.above + group.ties;
            let pct_lo = ratio(100 * rank_lo, group.total);
            let pct_hi = ratio(100 * rank_hi, group.total);
            // mean of 100 r / N over r = rank_lo..=rank_hi
            let median = ratio(50 * (rank_lo + rank_hi), group.total);
            Self {
                group,
                rank_lo,
                rank_hi,
                pct_lo,
                pct_hi,
                median,
                member: true,
                orientation,
            }
        } else {
            let rank = group.above + 1;
            let pct = ratio(100 * rank, group.total + 1);
            Self {
                group,
                rank_lo: rank,
                rank_hi: rank,
                pct_lo: pct.clone(),
                pct_hi: pct.clone(),
                median: pct,
                member: false,
                orientation,
            }
        }
    }

    /// Denominator of the percentages: N, or N+1 for a hypothetical insertion.
    pub fn denominator(&self) -> u64 {
        if self.member {
            self.group.total
        } else {
            self.group.total + 1
        }
    }

    pub fn point(&self, rule: TieRule) -> &Exact {
        match rule {
            TieRule::BestRank => &self.pct_lo,
            TieRule::WorstRank => &self.pct_hi,
            TieRule::MidRank => &self.median,
        }
    }

    /// The same tie group seen from the other sorting direction.
    pub fn flipped(&self) -> Result<Self> {
        if !self.member {
            return Err(Error::NonMemberConversion);
        }
        let group = TieGroup {
            above: self.group.below(),
            ..self.group
        };
        Ok(Self::from_group(group, self.orientation.flipped()))
    }
}

fn non_empty(refset: &CitationHistogram) -> Result<()> {
    if refset.is_empty() {
        Err(Error::EmptyReferenceSet)
    } else {
        Ok(())
    }
}

pub fn tie_group(refset: &CitationHistogram, citations: u64) -> Result<TieGroup> {
    non_empty(refset)?;
    Ok(TieGroup {
        above: refset.count_above(citations),
        ties: refset.count_at(citations),
        total: refset.total(),
    })
}

/// Inverted-orientation profile of `citations` within `refset`. Values that
/// do not occur are placed by hypothetical insertion: rank `G+1` out of
/// `N+1`, with a degenerate percentage range.
pub fn percentile_profile(refset: &CitationHistogram, citations: u64) -> Result<PercentileProfile> {
    Ok(PercentileProfile::from_group(
        tie_group(refset, citations)?,
        Orientation::Inverted,
    ))
}

/// Like [`percentile_profile`], but a value that does not occur is an error.
pub fn member_profile(refset: &CitationHistogram, citations: u64) -> Result<PercentileProfile> {
    let profile = percentile_profile(refset, citations)?;
    if !profile.member {
        return Err(Error::NotAMember { citations });
    }
    Ok(profile)
}

pub fn point_percentage(profile: &PercentileProfile, rule: TieRule) -> Exact {
    profile.point(rule).clone()
}

/// Converts between inverted and standard orientation. Converting twice
/// gives back the original profile.
pub fn to_standard(profile: &PercentileProfile) -> Result<PercentileProfile> {
    profile.flipped()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P100Score {
    pub score: Exact,
    /// Set when the reference set has a single distinct value.
    pub degenerate: bool,
}

/// Rank of `citations` among the distinct citation values of `refset`,
/// scaled so the lowest value scores 0 and the highest 100.
pub fn p100(refset: &CitationHistogram, citations: u64) -> Result<P100Score> {
    non_empty(refset)?;
    let index = refset.unique_index(citations).ok_or(Error::NotAMember { citations })?;
    let steps = refset.distinct_values() as u64 - 1;
    if steps == 0 {
        return Ok(P100Score {
            score: integer(0),
            degenerate: true,
        });
    }
    Ok(P100Score {
        score: ratio(100 * index as u64, steps),
        degenerate: false,
    })
}

/// Exact check of `pct * N == 100 * rank` at both ends of the range.
pub fn endpoint_consistent(profile: &PercentileProfile) -> bool {
    let n = Exact::from_integer(BigInt::from(profile.denominator()));
    profile.pct_lo.clone() * n.clone() == integer(100 * profile.rank_lo)
        && profile.pct_hi.clone() * n == integer(100 * profile.rank_hi)
}
