//! Brute-force reference implementation over explicitly expanded paper
//! lists. Nothing here reuses the library's counting code.

use citerank_core::exact::{integer, ratio};
use citerank_core::{CitationHistogram, Exact};

/// Every paper's citation count, most cited first.
pub fn expand(refset: &CitationHistogram) -> Vec<u64> {
    let mut papers = Vec::new();
    for (&value, &count) in refset.iter_asc() {
        for _ in 0..count {
            papers.push(value);
        }
    }
    papers.sort_unstable_by(|a, b| b.cmp(a));
    papers
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleProfile {
    pub above: u64,
    pub ties: u64,
    pub total: u64,
    pub rank_lo: u64,
    pub rank_hi: u64,
    pub pct_lo: Exact,
    pub pct_hi: Exact,
    pub median: Exact,
    pub member: bool,
}

/// Ranks of the papers with exactly `c` citations, by scanning.
pub fn tied_ranks(papers: &[u64], c: u64) -> Vec<u64> {
    papers
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == c)
        .map(|(i, _)| i as u64 + 1)
        .collect()
}

/// Members: the tied papers' rank range, each paper at `100 r / N`, median as
/// the mean of those percentages. Non-members: the list with one more paper
/// of `c` citations inserted after every better cited one.
pub fn profile(papers: &[u64], c: u64) -> OracleProfile {
    let n = papers.len() as u64;
    let above = papers.iter().filter(|&&v| v > c).count() as u64;
    let ranks = tied_ranks(papers, c);
    if ranks.is_empty() {
        let mut inserted = papers.to_vec();
        inserted.insert(above as usize, c);
        let rank = tied_ranks(&inserted, c)[0];
        let pct = ratio(100 * rank, n + 1);
        return OracleProfile {
            above,
            ties: 0,
            total: n,
            rank_lo: rank,
            rank_hi: rank,
            pct_lo: pct.clone(),
            pct_hi: pct.clone(),
            median: pct,
            member: false,
        };
    }
    let mut sum = integer(0);
    for &r in &ranks {
        sum += ratio(100 * r, n);
    }
    let ties = ranks.len() as u64;
    OracleProfile {
        above,
        ties,
        total: n,
        rank_lo: ranks[0],
        rank_hi: *ranks.last().unwrap(),
        pct_lo: ratio(100 * ranks[0], n),
        pct_hi: ratio(100 * ranks.last().unwrap(), n),
        median: sum / integer(ties),
        member: true,
    }
}

fn min(a: Exact, b: Exact) -> Exact {
    if a < b {
        a
    } else {
        b
    }
}

fn max(a: Exact, b: Exact) -> Exact {
    if a > b {
        a
    } else {
        b
    }
}

/// Each tied paper at rank `r` owns the slot `(100(r-1)/N, 100r/N]`; its
/// weight in a class is the slot length inside the class, normalised by the
/// total slot length of the group.
pub fn fractional_weights(papers: &[u64], c: u64, thresholds: &[Exact]) -> Vec<Exact> {
    let n = papers.len() as u64;
    let mut bounds = vec![integer(0)];
    bounds.extend(thresholds.iter().cloned());
    bounds.push(integer(100));
    let ranks = tied_ranks(papers, c);
    let mut weights = vec![integer(0); bounds.len() - 1];
    for &r in &ranks {
        let (lo, hi) = (ratio(100 * (r - 1), n), ratio(100 * r, n));
        for (j, w) in weights.iter_mut().enumerate() {
            let overlap = min(hi.clone(), bounds[j + 1].clone()) - max(lo.clone(), bounds[j].clone());
            if overlap > integer(0) {
                *w += overlap;
            }
        }
    }
    let width = ratio(100 * ranks.len() as u64, n);
    weights.into_iter().map(|w| w / width.clone()).collect()
}

/// Class index of a point percentage: the first threshold at or above it.
pub fn point_class(p: &Exact, thresholds: &[Exact]) -> usize {
    for (j, x) in thresholds.iter().enumerate() {
        if p <= x {
            return j;
        }
    }
    thresholds.len()
}

/// `(x_to, height)` pieces obtained by walking the papers one slot at a time
/// and merging neighbours of equal height.
pub fn profile_pieces(papers: &[u64]) -> Vec<(Exact, Exact)> {
    let n = papers.len() as u64;
    let mut pieces: Vec<(Exact, u64)> = Vec::new();
    for (i, &v) in papers.iter().enumerate() {
        let x = ratio(100 * (i as u64 + 1), n);
        match pieces.last_mut() {
            Some(last) if last.1 == v => last.0 = x,
            _ => pieces.push((x, v)),
        }
    }
    pieces.into_iter().map(|(x, v)| (x, integer(v))).collect()
}

/// Papers with more than `c` citations for `c = 0 ..= max`.
pub fn ccdf(papers: &[u64]) -> Vec<u64> {
    let max = papers.iter().copied().max().unwrap_or(0);
    (0..=max)
        .map(|c| papers.iter().filter(|&&v| v > c).count() as u64)
        .collect()
}
