//! Comparison of the same citation counts across reference sets.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use crate::classes::{averaged_percentage, PortfolioItem};
use crate::corpus::{ReferenceSetKey, ReferenceStore};
use crate::engine::{member_profile, Orientation, PercentileProfile, TieGroup, TieRule};
use crate::error::{Error, Result};
use crate::exact::{integer, round_half_up_value, Exact};

/// One table line: where `citations` sits in the set for `key`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    pub key: ReferenceSetKey,
    pub citations: u64,
    pub rank_lo: u64,
    pub rank_hi: u64,
    pub total: u64,
    pub pct_lo: Exact,
    pub pct_hi: Exact,
    pub median: Exact,
}

impl ComparisonRow {
    pub fn from_profile(key: ReferenceSetKey, citations: u64, profile: &PercentileProfile) -> Self {
        Self {
            key,
            citations,
            rank_lo: profile.rank_lo,
            rank_hi: profile.rank_hi,
            total: profile.group.total,
            pct_lo: profile.pct_lo.clone(),
            pct_hi: profile.pct_hi.clone(),
            median: profile.median.clone(),
        }
    }

    /// The same row in standard orientation (sorted by increasing citations).
    pub fn to_standard(&self) -> Self {
        let group = TieGroup {
            above: self.rank_lo - 1,
            ties: self.rank_hi + 1 - self.rank_lo,
            total: self.total,
        };
        let flipped = PercentileProfile::from_group(
            TieGroup {
                above: group.below(),
                ..group
            },
            Orientation::Standard,
        );
        Self::from_profile(self.key.clone(), self.citations, &flipped)
    }

    pub fn year(&self) -> i32 {
        self.key.year
    }
}

/// A (publication year, citations) pair to look up.
pub type TableItem = (i32, u64);

/// One row per (item, category), items outermost. Only citation counts that
/// occur in the set are accepted.
pub fn comparison_table<S: AsRef<str>>(
    items: &[TableItem],
    store: &ReferenceStore,
    categories: &[S],
) -> Result<Vec<ComparisonRow>> {
    let mut rows = Vec::with_capacity(items.len() * categories.len());
    for &(year, citations) in items {
        for category in categories {
            let key = ReferenceSetKey::new(category.as_ref(), year);
            let profile = store
                .get(&key)
                .and_then(|refset| member_profile(refset, citations))
                .map_err(|source| Error::TableRow {
                    key: key.clone(),
                    citations,
                    source: Box::new(source),
                })?;
            rows.push(ComparisonRow::from_profile(key, citations, &profile));
        }
    }
    Ok(rows)
}

/// Medians of a labelled series of table items; several categories can be
/// averaged into one series for journals listed under more than one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MedianSeries {
    pub label: String,
    pub entries: Vec<(TableItem, Exact)>,
}

impl MedianSeries {
    pub fn from_rows(label: impl Into<String>, rows: &[ComparisonRow]) -> Self {
        Self {
            label: label.into(),
            entries: rows
                .iter()
                .map(|r| ((r.key.year, r.citations), r.median.clone()))
                .collect(),
        }
    }

    /// The same series with every median rounded half-up to `places`
    /// decimals, as printed in a table.
    pub fn rounded(&self, places: usize) -> Self {
        Self {
            label: self.label.clone(),
            entries: self
                .entries
                .iter()
                .map(|(item, m)| (*item, round_half_up_value(m, places)))
                .collect(),
        }
    }

    /// Item-wise mean of several series.
    pub fn average(label: impl Into<String>, parts: &[MedianSeries]) -> Result<Self> {
        let (first, rest) = parts.split_first().ok_or(Error::EmptyComparison)?;
        let mut entries = first.entries.clone();
        for part in rest {
            if part.entries.len() != entries.len() {
                return Err(Error::LengthMismatch {
                    left: entries.len(),
                    right: part.entries.len(),
                });
            }
            for (item, sum) in entries.iter_mut() {
                *sum += part.median_of(*item)?;
            }
        }
        let n = integer(parts.len() as u64);
        for (_, sum) in entries.iter_mut() {
            *sum = sum.clone() / n.clone();
        }
        Ok(Self {
            label: label.into(),
            entries,
        })
    }

    pub fn median_of(&self, item: TableItem) -> Result<&Exact> {
        self.entries
            .iter()
            .find(|(i, _)| *i == item)
            .map(|(_, m)| m)
            .ok_or(Error::UnmatchedRow {
                year: item.0,
                citations: item.1,
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImprovementFactor {
    pub numerator_label: String,
    pub denominator_label: String,
    /// Mean over matched items of `median_numerator / median_denominator`.
    pub factor: Exact,
    pub rows: usize,
}

/// Mean of per-item median ratios. A factor above one means the numerator
/// series sits at higher (worse) percentages.
pub fn improvement_factor(numerator: &MedianSeries, denominator: &MedianSeries) -> Result<ImprovementFactor> {
    if numerator.entries.len() != denominator.entries.len() {
        return Err(Error::LengthMismatch {
            left: numerator.entries.len(),
            right: denominator.entries.len(),
        });
    }
    if numerator.entries.is_empty() {
        return Err(Error::EmptyComparison);
    }
    let mut sum = integer(0);
    for (item, median) in &numerator.entries {
        let other = denominator.median_of(*item)?;
        if *other == integer(0) {
            return Err(Error::ZeroMedian);
        }
        sum += median.clone() / other.clone();
    }
    let rows = numerator.entries.len();
    Ok(ImprovementFactor {
        numerator_label: numerator.label.clone(),
        denominator_label: denominator.label.clone(),
        factor: sum / integer(rows as u64),
        rows,
    })
}

/// A candidate journal: its label and the categories it is listed under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Journal {
    pub label: String,
    pub categories: Vec<String>,
}

impl Journal {
    pub fn new<S: Into<String>>(label: impl Into<String>, categories: impl IntoIterator<Item = S>) -> Self {
        Self {
            label: label.into(),
            categories: categories.into_iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhatIfEntry {
    pub label: String,
    pub percentage: Exact,
    /// False when the citation count had to be inserted hypothetically in at
    /// least one category.
    pub member: bool,
}

/// Journals ordered from best (lowest averaged percentage) to worst, ties
/// broken by label. Assumes the paper would collect the same citations in
/// every journal.
pub fn what_if_ranking(
    citations: u64,
    year: i32,
    journals: &[Journal],
    store: &ReferenceStore,
    rule: TieRule,
) -> Result<Vec<WhatIfEntry>> {
    if journals.is_empty() {
        return Err(Error::EmptyJournalList);
    }
    let mut ranking = Vec::with_capacity(journals.len());
    for journal in journals {
        if journal.categories.is_empty() {
            return Err(Error::EmptyJournalKeys(journal.label.clone()));
        }
        let keys = journal
            .categories
            .iter()
            .map(|c| ReferenceSetKey::new(c.as_str(), year))
            .collect();
        let averaged = averaged_percentage(&PortfolioItem::new(keys, citations), store, rule)?;
        ranking.push(WhatIfEntry {
            label: journal.label.clone(),
            percentage: averaged.value,
            member: averaged.member,
        });
    }
    ranking.sort_by(|a, b| a.percentage.cmp(&b.percentage).then_with(|| a.label.cmp(&b.label)));
    Ok(ranking)
}
