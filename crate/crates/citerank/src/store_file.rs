//! Reference store documents.
//!
//! A store is written as one JSON document. Each set lists its key, its
//! provenance, the total number of papers and a sparse `"value:count"` list
//! ordered by descending citation value:
//!
//! ```json
//! {
//!   "format": "citerank-store",
//!   "version": 1,
//!   "sets": [
//!     {
//!       "category": "PhyMu",
//!       "year": 2007,
//!       "source": "records.csv",
//!       "ingested_unix": 1404259200,
//!       "total": 3,
//!       "counts": ["26:2", "0:1"]
//!     }
//!   ]
//! }
//! ```

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use citerank_core::{CitationHistogram, Provenance, ReferenceSetKey, ReferenceStore};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const FORMAT: &str = "citerank-store";
pub const VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StoreDocument {
    format: String,
    version: u32,
    sets: Vec<SetDocument>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetDocument {
    category: String,
    year: i32,
    source: String,
    ingested_unix: Option<i64>,
    total: u64,
    counts: Vec<String>,
}

pub fn to_string(store: &ReferenceStore) -> String {
    let sets = store
        .iter()
        .map(|(key, set)| SetDocument {
            category: key.category.clone(),
            year: key.year,
            source: set.provenance.source.clone(),
            ingested_unix: set.provenance.ingested_unix,
            total: set.histogram.total(),
            counts: set
                .histogram
                .iter_desc()
                .map(|(value, papers)| format!("{value}:{papers}"))
                .collect(),
        })
        .collect();
    let doc = StoreDocument {
        format: FORMAT.into(),
        version: VERSION,
        sets,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("store documents always serialize");
    text.push('\n');
    text
}

pub fn from_str(text: &str, source_name: &str) -> Result<ReferenceStore> {
    let doc: StoreDocument = serde_json::from_str(text).map_err(|e| Error::format(source_name, e))?;
    if doc.format != FORMAT || doc.version != VERSION {
        return Err(Error::format(
            source_name,
            format!("unsupported store format `{}` version {}", doc.format, doc.version),
        ));
    }
    let mut seen = BTreeSet::new();
    let mut store = ReferenceStore::new();
    for set in doc.sets {
        let key = ReferenceSetKey::new(set.category.clone(), set.year);
        let bad = |message: String| Error::format(source_name, format!("set {key}: {message}"));
        if set.category.trim().is_empty() || set.category.trim() != set.category {
            return Err(bad("category must be non-empty and trimmed".into()));
        }
        if !seen.insert(key.clone()) {
            return Err(bad("duplicate set".into()));
        }
        let mut histogram = CitationHistogram::new();
        let mut previous: Option<u64> = None;
        for entry in &set.counts {
            let parsed = entry
                .split_once(':')
                .and_then(|(v, n)| Some((v.parse::<u64>().ok()?, n.parse::<u64>().ok()?)));
            let (value, papers) = parsed.ok_or_else(|| bad(format!("malformed entry `{entry}`")))?;
            if papers == 0 {
                return Err(bad(format!("zero count in `{entry}`")));
            }
            if previous.is_some_and(|p| p <= value) {
                return Err(bad("counts must be sorted by strictly descending value".into()));
            }
            previous = Some(value);
            histogram.add(value, papers);
        }
        if histogram.total() != set.total {
            return Err(bad(format!(
                "total {} does not match the counts ({})",
                set.total,
                histogram.total()
            )));
        }
        if histogram.is_empty() {
            return Err(bad("empty set".into()));
        }
        store.insert(key, histogram, Provenance::new(set.source, set.ingested_unix));
    }
    Ok(store)
}

pub fn save(store: &ReferenceStore, path: &Path) -> Result<()> {
    fs::write(path, to_string(store)).map_err(|e| Error::io(path, e))
}

pub fn load(path: &Path) -> Result<ReferenceStore> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    from_str(&text, &path.display().to_string())
}
