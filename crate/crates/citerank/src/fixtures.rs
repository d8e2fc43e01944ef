//! Synthetic reference sets pinned to published anchors.
//!
//! Full field-wide citation distributions are not public. What is known for
//! each (category, year) set is its size, the rank ranges of a few citation
//! counts and, for two sets, the number of uncited, singly and doubly cited
//! papers and the most cited paper. [`build_anchored`] produces a histogram
//! that reproduces every such anchor exactly and spreads the remaining
//! papers over the free citation values with a decreasing, heavy-tailed
//! profile.

use citerank_core::{CitationHistogram, Provenance, ReferenceSetKey, ReferenceStore};

use crate::error::{Error, Result};

/// Source label recorded in the provenance of fixture sets.
pub const FIXTURE_SOURCE: &str = "synthetic fixture";

/// A citation value whose tie group is known: `above` papers have more
/// citations and `ties` papers have exactly `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pin {
    pub value: u64,
    pub above: u64,
    pub ties: u64,
}

impl Pin {
    /// From an inclusive range of ranks.
    pub fn from_ranks(value: u64, rank_lo: u64, rank_hi: u64) -> Self {
        Self {
            value,
            above: rank_lo - 1,
            ties: rank_hi + 1 - rank_lo,
        }
    }
}

/// One row of the published comparison tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedRow {
    pub category: &'static str,
    pub year: i32,
    pub citations: u64,
    pub rank_lo: u64,
    pub rank_hi: u64,
    pub total: u64,
    /// Printed percentage range, e.g. `"15.98 - 16.70"`.
    pub range: &'static str,
    /// Printed median, e.g. `"16.3"`.
    pub median: &'static str,
}

#[allow(clippy::too_many_arguments)]
const fn row(
    category: &'static str,
    year: i32,
    citations: u64,
    rank_lo: u64,
    rank_hi: u64,
    total: u64,
    range: &'static str,
    median: &'static str,
) -> PublishedRow {
    PublishedRow {
        category,
        year,
        citations,
        rank_lo,
        rank_hi,
        total,
        range,
        median,
    }
}

pub const CATEGORIES: [&str; 4] = ["PhyMu", "InfScLibSc", "ComScInfSy", "ComScIntAp"];

/// The five (year, citations) items evaluated in every category.
pub const ITEMS: [(i32, u64); 5] = [(2007, 26), (2007, 45), (2008, 31), (2009, 13), (2010, 18)];

/// Rows of the four per-category tables, in category then item order.
pub const CATEGORY_TABLES: [PublishedRow; 20] = [
    row("PhyMu", 2007, 26, 6058, 6333, 37918, "15.98 - 16.70", "16.3"),
    row("PhyMu", 2007, 45, 3163, 3261, 37918, "8.34 - 8.60", "8.5"),
    row("PhyMu", 2008, 31, 4627, 4812, 41679, "11.10 - 11.55", "11.3"),
    row("PhyMu", 2009, 13, 9725, 10424, 40367, "24.09 - 25.82", "25.0"),
    row("PhyMu", 2010, 18, 5938, 6321, 39865, "14.90 - 15.86", "15.4"),
    row("InfScLibSc", 2007, 26, 224, 244, 2732, "8.20 - 8.93", "8.6"),
    row("InfScLibSc", 2007, 45, 85, 86, 2732, "3.11 - 3.15", "3.1"),
    row("InfScLibSc", 2008, 31, 141, 150, 2869, "4.91 - 5.23", "5.1"),
    row("InfScLibSc", 2009, 13, 408, 448, 3079, "13.25 - 14.55", "13.9"),
    row("InfScLibSc", 2010, 18, 167, 184, 3225, "5.18 - 5.71", "5.4"),
    row("ComScInfSy", 2007, 26, 759, 797, 7402, "10.25 - 10.77", "10.5"),
    row("ComScInfSy", 2007, 45, 298, 305, 7402, "4.03 - 4.12", "4.1"),
    row("ComScInfSy", 2008, 31, 421, 437, 8040, "5.24 - 5.44", "5.3"),
    row("ComScInfSy", 2009, 13, 1210, 1332, 8458, "14.31 - 15.75", "15.0"),
    row("ComScInfSy", 2010, 18, 523, 562, 8972, "5.83 - 6.26", "6.0"),
    row("ComScIntAp", 2007, 26, 1174, 1251, 9029, "13.00 - 13.86", "13.4"),
    row("ComScIntAp", 2007, 45, 455, 475, 9029, "5.04 - 5.26", "5.2"),
    row("ComScIntAp", 2008, 31, 726, 761, 10061, "7.22 - 7.56", "7.4"),
    row("ComScIntAp", 2009, 13, 2211, 2447, 10825, "20.42 - 22.61", "21.5"),
    row("ComScIntAp", 2010, 18, 1007, 1108, 11006, "9.15 - 10.07", "9.6"),
];

/// 32 citations in 2008, across the four categories.
pub const CROSS_CATEGORY_TABLE: [PublishedRow; 4] = [
    row("PhyMu", 2008, 32, 4470, 4626, 41679, "10.72 - 11.10", "10.9"),
    row("InfScLibSc", 2008, 32, 127, 140, 2869, "4.43 - 4.88", "4.7"),
    row("ComScInfSy", 2008, 32, 387, 420, 8040, "4.81 - 5.22", "5.0"),
    row("ComScIntAp", 2008, 32, 680, 725, 10061, "6.76 - 7.21", "7.0"),
];

/// Low-end and maximum anchors of the 2007 citation curves: papers with
/// more than 0, 1 and 2 citations, and the most cited paper.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveAnchors {
    pub category: &'static str,
    pub year: i32,
    pub more_than: [u64; 3],
    pub max: u64,
}

pub const CURVE_ANCHORS: [CurveAnchors; 2] = [
    CurveAnchors {
        category: "PhyMu",
        year: 2007,
        more_than: [33058, 29340, 26257],
        max: 9966,
    },
    CurveAnchors {
        category: "InfScLibSc",
        year: 2007,
        more_than: [2101, 1786, 1550],
        max: 315,
    },
];

/// Spreads `mass` papers over `values` in proportion to `weight`, with
/// largest-remainder rounding.
fn apportion(values: &[u64], mass: u64, weight: impl Fn(u64) -> f64, into: &mut CitationHistogram) {
    if mass == 0 || values.is_empty() {
        return;
    }
    let weights: Vec<f64> = values.iter().map(|&v| weight(v)).collect();
    let sum: f64 = weights.iter().sum();
    let mut shares: Vec<(u64, f64, usize)> = weights
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let quota = mass as f64 * w / sum;
            (quota.floor() as u64, quota - quota.floor(), i)
        })
        .collect();
    let assigned: u64 = shares.iter().map(|s| s.0).sum();
    let mut left = mass.saturating_sub(assigned);
    let mut order: Vec<usize> = (0..shares.len()).collect();
    order.sort_by(|&a, &b| shares[b].1.total_cmp(&shares[a].1).then(a.cmp(&b)));
    for &i in order.iter().cycle() {
        if left == 0 {
            break;
        }
        shares[i].0 += 1;
        left -= 1;
    }
    for (count, _, i) in shares {
        into.add(values[i], count);
    }
}

fn tail_weight(v: u64) -> f64 {
    let v = (v + 1) as f64;
    1.0 / (v * v)
}

fn low_weight(v: u64) -> f64 {
    1.0 / (v + 1) as f64
}

/// Histogram of `total` papers honouring every pin exactly.
///
/// Pins may come in any order. Papers above the highest pin are spread over
/// the values up to `max_value` (default: eight times the highest pin),
/// papers between two pins over the values strictly between them, and the
/// rest over the values below the lowest pin.
pub fn build_anchored(total: u64, pins: &[Pin], max_value: Option<u64>) -> Result<CitationHistogram> {
    let bad = |message: String| Error::Internal(format!("inconsistent anchors: {message}"));
    let mut pins = pins.to_vec();
    pins.sort_by_key(|pin| std::cmp::Reverse(pin.value));
    pins.dedup();
    if pins.windows(2).any(|w| w[0].value == w[1].value) {
        return Err(bad("conflicting pins for one value".into()));
    }
    let Some(top) = pins.first().copied() else {
        return Err(bad("no pins".into()));
    };

    let mut histogram = CitationHistogram::new();
    for pin in &pins {
        histogram.add(pin.value, pin.ties);
    }

    // above the highest pin
    if top.above > 0 {
        let cap = max_value.unwrap_or(top.value.saturating_mul(8).max(top.value + 1));
        if cap <= top.value {
            return Err(bad(format!("{} papers above the maximum {}", top.above, top.value)));
        }
        let values: Vec<u64> = (top.value + 1..=cap).collect();
        // the cap itself is the most cited paper
        histogram.add(cap, 1);
        apportion(&values[..values.len() - 1], top.above - 1, tail_weight, &mut histogram);
        if values.len() == 1 && top.above > 1 {
            histogram.add(cap, top.above - 1);
        }
    }

    for w in pins.windows(2) {
        let (upper, lower) = (w[0], w[1]);
        let reached = upper.above + upper.ties;
        if lower.above < reached {
            return Err(bad(format!("pin {} overlaps pin {}", lower.value, upper.value)));
        }
        let gap = lower.above - reached;
        let values: Vec<u64> = (lower.value + 1..upper.value).collect();
        if gap > 0 && values.is_empty() {
            return Err(bad(format!(
                "{gap} papers must fit strictly between {} and {}",
                lower.value, upper.value
            )));
        }
        apportion(&values, gap, tail_weight, &mut histogram);
    }

    let bottom = pins.last().copied().unwrap_or(top);
    let reached = bottom.above + bottom.ties;
    if reached > total {
        return Err(bad(format!("pins account for {reached} papers, more than {total}")));
    }
    let rest = total - reached;
    if rest > 0 && bottom.value == 0 {
        return Err(bad(format!("{rest} papers left below zero citations")));
    }
    let values: Vec<u64> = (0..bottom.value).collect();
    apportion(&values, rest, low_weight, &mut histogram);

    debug_assert_eq!(histogram.total(), total);
    Ok(histogram)
}

/// All pins known for one set.
pub fn pins_for(category: &str, year: i32) -> (u64, Vec<Pin>, Option<u64>) {
    let mut total = 0;
    let mut pins = Vec::new();
    for r in CATEGORY_TABLES.iter().chain(CROSS_CATEGORY_TABLE.iter()) {
        if r.category == category && r.year == year {
            total = r.total;
            pins.push(Pin::from_ranks(r.citations, r.rank_lo, r.rank_hi));
        }
    }
    let mut max = None;
    if let Some(curve) = CURVE_ANCHORS.iter().find(|c| c.category == category && c.year == year) {
        let [gt0, gt1, gt2] = curve.more_than;
        pins.push(Pin {
            value: 0,
            above: gt0,
            ties: total - gt0,
        });
        pins.push(Pin {
            value: 1,
            above: gt1,
            ties: gt0 - gt1,
        });
        pins.push(Pin {
            value: 2,
            above: gt2,
            ties: gt1 - gt2,
        });
        pins.push(Pin {
            value: curve.max,
            above: 0,
            ties: 1,
        });
        max = Some(curve.max);
    }
    (total, pins, max)
}

/// The sixteen reference sets (four categories, 2007 to 2010).
pub fn paper_store() -> ReferenceStore {
    let mut store = ReferenceStore::new();
    for category in CATEGORIES {
        for year in 2007..=2010 {
            let (total, pins, max) = pins_for(category, year);
            let histogram = build_anchored(total, &pins, max).expect("published anchors are consistent");
            store.insert(
                ReferenceSetKey::new(category, year),
                histogram,
                Provenance::new(FIXTURE_SOURCE, None),
            );
        }
    }
    store
}
