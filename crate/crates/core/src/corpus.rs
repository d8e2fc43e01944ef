//! Reference sets: citation histograms keyed by (subject category, year).

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, RecordFault, Result};

/// One ingested row. `multiplicity` lets pre-binned histograms share the
/// per-paper format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CitationRecord {
    category: String,
    year: i32,
    citations: u64,
    multiplicity: u64,
}

impl CitationRecord {
    pub fn new(category: &str, year: i32, citations: i64, multiplicity: i64) -> Result<Self, RecordFault> {
        let category = category.trim();
        if category.is_empty() {
            return Err(RecordFault::EmptyCategory);
        }
        if citations < 0 {
            return Err(RecordFault::NegativeCitations(citations));
        }
        if multiplicity < 1 {
            return Err(RecordFault::NonPositiveMultiplicity(multiplicity));
        }
        Ok(Self {
            category: category.to_string(),
            year,
            citations: citations as u64,
            multiplicity: multiplicity as u64,
        })
    }

    pub fn single(category: &str, year: i32, citations: u64) -> Result<Self, RecordFault> {
        Self::new(category, year, citations as i64, 1)
    }

    pub fn category(&self) -> &str {
        &self.category
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn citations(&self) -> u64 {
        self.citations
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn key(&self) -> ReferenceSetKey {
        ReferenceSetKey::new(self.category.clone(), self.year)
    }
}

/// Unvalidated row, as read from a file or built by a caller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRecord {
    pub category: String,
    pub year: i32,
    pub citations: i64,
    pub multiplicity: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReferenceSetKey {
    pub category: String,
    pub year: i32,
}

impl ReferenceSetKey {
    pub fn new(category: impl Into<String>, year: i32) -> Self {
        Self {
            category: category.into(),
            year,
        }
    }
}

impl fmt::Display for ReferenceSetKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.category, self.year)
    }
}

/// Multiset of citation counts for one reference set.
///
/// Only positive counts are stored, so `total` always equals the sum of the
/// map values.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CitationHistogram {
    counts: BTreeMap<u64, u64>,
    total: u64,
}

impl CitationHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a histogram from `(citation value, papers)` pairs. Repeated
    /// values add up; zero counts are dropped.
    pub fn from_counts<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Self {
        let mut histogram = Self::new();
        for (value, papers) in pairs {
            histogram.add(value, papers);
        }
        histogram
    }

    /// Histogram of an explicit list of per-paper citation counts.
    pub fn from_papers<I: IntoIterator<Item = u64>>(papers: I) -> Self {
        Self::from_counts(papers.into_iter().map(|c| (c, 1)))
    }

    pub fn add(&mut self, value: u64, papers: u64) {
        if papers == 0 {
            return;
        }
        *self.counts.entry(value).or_insert(0) += papers;
        self.total += papers;
    }

    pub fn merge(&mut self, other: &CitationHistogram) {
        for (&value, &papers) in &other.counts {
            self.add(value, papers);
        }
    }

    /// N, the number of papers in the set.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn count_at(&self, value: u64) -> u64 {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    /// Number of papers with strictly more than `value` citations.
    pub fn count_above(&self, value: u64) -> u64 {
        match value.checked_add(1) {
            Some(next) => self.counts.range(next..).map(|(_, &n)| n).sum(),
            None => 0,
        }
    }

    pub fn max_value(&self) -> Option<u64> {
        self.counts.keys().next_back().copied()
    }

    /// Papers with at least one citation.
    pub fn cited(&self) -> u64 {
        self.total - self.count_at(0)
    }

    pub fn distinct_values(&self) -> usize {
        self.counts.len()
    }

    /// `(value, papers)` pairs, most cited first.
    pub fn iter_desc(&self) -> core::iter::Rev<btree_map::Iter<'_, u64, u64>> {
        self.counts.iter().rev()
    }

    /// `(value, papers)` pairs, least cited first.
    pub fn iter_asc(&self) -> btree_map::Iter<'_, u64, u64> {
        self.counts.iter()
    }

    /// Position of `value` among the distinct occurring values, ascending.
    pub fn unique_index(&self, value: u64) -> Option<usize> {
        if !self.counts.contains_key(&value) {
            return None;
        }
        Some(self.counts.range(..value).count())
    }

    /// Every count multiplied by `factor`.
    pub fn scaled(&self, factor: u64) -> Self {
        Self::from_counts(self.counts.iter().map(|(&v, &n)| (v, n * factor)))
    }
}

/// Where a reference set came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Provenance {
    pub source: String,
    /// Seconds since the Unix epoch, if known.
    pub ingested_unix: Option<i64>,
}

impl Provenance {
    pub fn new(source: impl Into<String>, ingested_unix: Option<i64>) -> Self {
        Self {
            source: source.into(),
            ingested_unix,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceSet {
    pub histogram: CitationHistogram,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReferenceStore {
    sets: BTreeMap<ReferenceSetKey, ReferenceSet>,
}

/// One line of [`summarize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSummary {
    pub key: ReferenceSetKey,
    pub total: u64,
    pub max_citations: u64,
    pub cited: u64,
}

impl ReferenceStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Adds papers to the set for `key`, creating it with `provenance` if new.
    pub fn add(&mut self, key: ReferenceSetKey, value: u64, papers: u64, provenance: &Provenance) {
        self.sets
            .entry(key)
            .or_insert_with(|| ReferenceSet {
                histogram: CitationHistogram::new(),
                provenance: provenance.clone(),
            })
            .histogram
            .add(value, papers);
    }

    /// Inserts or replaces a whole set. Empty histograms are not stored.
    pub fn insert(&mut self, key: ReferenceSetKey, histogram: CitationHistogram, provenance: Provenance) {
        if histogram.is_empty() {
            return;
        }
        self.sets.insert(key, ReferenceSet { histogram, provenance });
    }

    /// Folds another store in by adding counts. A set fed by several sources
    /// lists them all, separated by `"; "`, and keeps the earliest timestamp.
    pub fn merge(&mut self, other: &ReferenceStore) {
        for (key, set) in &other.sets {
            match self.sets.get_mut(key) {
                Some(existing) => {
                    existing.histogram.merge(&set.histogram);
                    let prov = &mut existing.provenance;
                    if !set.provenance.source.is_empty() && !prov.source.split("; ").any(|s| s == set.provenance.source)
                    {
                        if !prov.source.is_empty() {
                            prov.source.push_str("; ");
                        }
                        prov.source.push_str(&set.provenance.source);
                    }
                    prov.ingested_unix = match (prov.ingested_unix, set.provenance.ingested_unix) {
                        (Some(a), Some(b)) => Some(a.min(b)),
                        (a, b) => a.or(b),
                    };
                }
                None => {
                    self.sets.insert(key.clone(), set.clone());
                }
            }
        }
    }

    pub fn get(&self, key: &ReferenceSetKey) -> Result<&CitationHistogram> {
        self.sets
            .get(key)
            .map(|set| &set.histogram)
            .ok_or_else(|| Error::UnknownReferenceSet(key.clone()))
    }

    pub fn lookup(&self, category: &str, year: i32) -> Result<&CitationHistogram> {
        self.get(&ReferenceSetKey::new(category, year))
    }

    pub fn provenance(&self, key: &ReferenceSetKey) -> Option<&Provenance> {
        self.sets.get(key).map(|set| &set.provenance)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, ReferenceSetKey, ReferenceSet> {
        self.sets.iter()
    }
}

/// Builds a store from unvalidated rows. Row numbers in errors are 1-based
/// positions in `rows`.
pub fn ingest_records<I>(rows: I, provenance: &Provenance) -> Result<ReferenceStore>
where
    I: IntoIterator<Item = RawRecord>,
{
    let mut store = ReferenceStore::new();
    for (index, raw) in rows.into_iter().enumerate() {
        let record = CitationRecord::new(&raw.category, raw.year, raw.citations, raw.multiplicity)
            .map_err(|fault| Error::MalformedRecord { row: index + 1, fault })?;
        store.add(record.key(), record.citations, record.multiplicity, provenance);
    }
    Ok(store)
}

/// Builds a store from already validated records.
pub fn ingest_valid<'a, I>(records: I, provenance: &Provenance) -> ReferenceStore
where
    I: IntoIterator<Item = &'a CitationRecord>,
{
    let mut store = ReferenceStore::new();
    for record in records {
        store.add(record.key(), record.citations, record.multiplicity, provenance);
    }
    store
}

pub fn get_reference_set<'a>(store: &'a ReferenceStore, key: &ReferenceSetKey) -> Result<&'a CitationHistogram> {
    store.get(key)
}

/// One row per set, ordered by category then year.
pub fn summarize(store: &ReferenceStore) -> Vec<SetSummary> {
    store
        .iter()
        .map(|(key, set)| SetSummary {
            key: key.clone(),
            total: set.histogram.total(),
            max_citations: set.histogram.max_value().unwrap_or(0),
            cited: set.histogram.cited(),
        })
        .collect()
}
