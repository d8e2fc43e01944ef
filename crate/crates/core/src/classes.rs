//! Percentile rank classes and class attribution, point-wise or fractional.
//!
//! A scheme with thresholds `x_1 < ... < x_k` splits (0, 100] into the
//! classes `(x_j, x_{j+1}]`, with `x_0 = 0` and `x_{k+1} = 100`. Class 0 holds
//! the most cited papers. A point that lands exactly on a threshold belongs
//! to the better class.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::corpus::{CitationHistogram, ReferenceSetKey, ReferenceStore};
use crate::engine::{member_profile, percentile_profile, TieGroup, TieRule};
use crate::error::{Error, Result};
use crate::exact::{integer, max, min, Exact, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdScheme {
    thresholds: Vec<Exact>,
}

impl ThresholdScheme {
    pub fn new(thresholds: Vec<Exact>) -> Result<Self> {
        if thresholds.is_empty() {
            return Err(Error::InvalidScheme("at least one threshold is required"));
        }
        let (zero, hundred) = (integer(0), integer(100));
        if thresholds.iter().any(|x| *x <= zero || *x >= hundred) {
            return Err(Error::InvalidScheme("thresholds must lie strictly between 0 and 100"));
        }
        if thresholds.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidScheme("thresholds must be strictly increasing"));
        }
        Ok(Self { thresholds })
    }

    /// Two classes: the top `x`% and the rest.
    pub fn top(x: Exact) -> Result<Self> {
        Self::new(vec![x])
    }

    pub fn thresholds(&self) -> &[Exact] {
        &self.thresholds
    }

    pub fn class_count(&self) -> usize {
        self.thresholds.len() + 1
    }

    /// Class boundaries `0, x_1, ..., x_k, 100`.
    pub fn boundaries(&self) -> Vec<Exact> {
        let mut bounds = Vec::with_capacity(self.thresholds.len() + 2);
        bounds.push(integer(0));
        bounds.extend(self.thresholds.iter().cloned());
        bounds.push(integer(100));
        bounds
    }

    /// Class containing percentage `p`; thresholds go to the better class.
    pub fn class_of(&self, p: &Exact) -> usize {
        self.thresholds
            .iter()
            .position(|x| p <= x)
            .unwrap_or(self.thresholds.len())
    }
}

/// Membership weights, one per class, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassWeights<S = Exact> {
    pub weights: Vec<S>,
}

impl<S: Scalar> ClassWeights<S> {
    pub fn point(classes: usize, class: usize) -> Self {
        let mut weights = vec![S::zero(); classes];
        weights[class] = S::one();
        Self { weights }
    }

    pub fn sum(&self) -> S {
        self.weights.iter().cloned().fold(S::zero(), |acc, w| acc + w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Attribution {
    /// The whole paper goes to the class of one point of its range.
    Point(TieRule),
    /// The paper is split in proportion to its range's overlap with each class.
    Fractional,
}

/// Overlap of the tie group's interval `(100G/N, 100(G+T)/N]` with each class,
/// divided by the interval's width.
pub fn fractional_weights<S: Scalar>(group: &TieGroup, scheme: &ThresholdScheme) -> ClassWeights<S> {
    let lo = S::from_ratio(100 * group.above, group.total);
    let hi = S::from_ratio(100 * (group.above + group.ties), group.total);
    let width = hi.clone() - lo.clone();
    let bounds: Vec<S> = scheme.boundaries().iter().map(S::from_exact).collect();
    let weights = bounds
        .windows(2)
        .map(|b| {
            let overlap = min(hi.clone(), b[1].clone()) - max(lo.clone(), b[0].clone());
            max(S::zero(), overlap) / width.clone()
        })
        .collect();
    ClassWeights { weights }
}

pub fn class_weights(
    refset: &CitationHistogram,
    citations: u64,
    scheme: &ThresholdScheme,
    attribution: Attribution,
) -> Result<ClassWeights> {
    class_weights_in(refset, citations, scheme, attribution)
}

/// [`class_weights`] evaluated with the numeric backend `S`.
pub fn class_weights_in<S: Scalar>(
    refset: &CitationHistogram,
    citations: u64,
    scheme: &ThresholdScheme,
    attribution: Attribution,
) -> Result<ClassWeights<S>> {
    let profile = member_profile(refset, citations)?;
    Ok(match attribution {
        Attribution::Fractional => fractional_weights(&profile.group, scheme),
        Attribution::Point(rule) => ClassWeights::point(scheme.class_count(), scheme.class_of(profile.point(rule))),
    })
}

/// One evaluated publication. Several keys stand for a journal listed in
/// several subject categories.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PortfolioItem {
    pub keys: Vec<ReferenceSetKey>,
    pub citations: u64,
}

impl PortfolioItem {
    pub fn new(keys: Vec<ReferenceSetKey>, citations: u64) -> Self {
        Self { keys, citations }
    }

    pub fn single(key: ReferenceSetKey, citations: u64) -> Self {
        Self {
            keys: vec![key],
            citations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AveragedPercentage {
    pub value: Exact,
    /// False if any of the reference sets needed hypothetical insertion.
    pub member: bool,
}

/// Mean over the item's reference sets of the point percentage under `rule`.
pub fn averaged_percentage(item: &PortfolioItem, store: &ReferenceStore, rule: TieRule) -> Result<AveragedPercentage> {
    if item.keys.is_empty() {
        return Err(Error::EmptyItemKeys(0));
    }
    let mut sum = integer(0);
    let mut member = true;
    for key in &item.keys {
        let profile = percentile_profile(store.get(key)?, item.citations)?;
        member &= profile.member;
        sum += profile.point(rule);
    }
    Ok(AveragedPercentage {
        value: sum / integer(item.keys.len() as u64),
        member,
    })
}

fn item_weights<S: Scalar>(
    item: &PortfolioItem,
    store: &ReferenceStore,
    scheme: &ThresholdScheme,
    attribution: Attribution,
) -> Result<ClassWeights<S>> {
    if item.keys.is_empty() {
        return Err(Error::EmptyItemKeys(0));
    }
    match attribution {
        Attribution::Point(rule) => {
            let averaged = averaged_percentage(item, store, rule)?;
            Ok(ClassWeights::point(
                scheme.class_count(),
                scheme.class_of(&averaged.value),
            ))
        }
        Attribution::Fractional => {
            let mut sum = vec![S::zero(); scheme.class_count()];
            for key in &item.keys {
                let weights: ClassWeights<S> = class_weights_in(store.get(key)?, item.citations, scheme, attribution)?;
                for (acc, w) in sum.iter_mut().zip(weights.weights) {
                    *acc = acc.clone() + w;
                }
            }
            let keys = S::from_ratio(item.keys.len() as u64, 1);
            Ok(ClassWeights {
                weights: sum.into_iter().map(|w| w / keys.clone()).collect(),
            })
        }
    }
}

/// Mean class weights over a portfolio.
pub fn portfolio_weights_in<S: Scalar>(
    portfolio: &[PortfolioItem],
    store: &ReferenceStore,
    scheme: &ThresholdScheme,
    attribution: Attribution,
) -> Result<ClassWeights<S>> {
    if portfolio.is_empty() {
        return Err(Error::EmptyPortfolio);
    }
    // identical items share one evaluation
    let mut distinct: BTreeMap<&PortfolioItem, (usize, u64)> = BTreeMap::new();
    for (index, item) in portfolio.iter().enumerate() {
        distinct.entry(item).or_insert((index, 0)).1 += 1;
    }
    let mut distinct: Vec<(&PortfolioItem, (usize, u64))> = distinct.into_iter().collect();
    distinct.sort_by_key(|(_, (index, _))| *index);
    let mut sum = vec![S::zero(); scheme.class_count()];
    for (item, (index, copies)) in distinct {
        if item.keys.is_empty() {
            return Err(Error::EmptyItemKeys(index + 1));
        }
        let weights: ClassWeights<S> =
            item_weights(item, store, scheme, attribution).map_err(|source| Error::PortfolioItem {
                index: index + 1,
                source: Box::new(source),
            })?;
        let copies = S::from_ratio(copies, 1);
        for (acc, w) in sum.iter_mut().zip(weights.weights) {
            *acc = acc.clone() + w * copies.clone();
        }
    }
    let n = S::from_ratio(portfolio.len() as u64, 1);
    Ok(ClassWeights {
        weights: sum.into_iter().map(|w| w / n.clone()).collect(),
    })
}

/// Share of the portfolio in the top `x`% of its reference sets.
pub fn top_share(
    portfolio: &[PortfolioItem],
    store: &ReferenceStore,
    x: &Exact,
    attribution: Attribution,
) -> Result<Exact> {
    top_share_in(portfolio, store, x, attribution)
}

/// [`top_share`] evaluated with the numeric backend `S`.
pub fn top_share_in<S: Scalar>(
    portfolio: &[PortfolioItem],
    store: &ReferenceStore,
    x: &Exact,
    attribution: Attribution,
) -> Result<S> {
    let scheme = ThresholdScheme::top(x.clone())?;
    let weights: ClassWeights<S> = portfolio_weights_in(portfolio, store, &scheme, attribution)?;
    Ok(weights.weights[0].clone())
}

/// Portfolio made of every paper in one reference set, each listed once.
pub fn whole_set_portfolio(key: &ReferenceSetKey, refset: &CitationHistogram) -> Vec<PortfolioItem> {
    refset
        .iter_desc()
        .flat_map(|(&value, &papers)| core::iter::repeat_n(PortfolioItem::single(key.clone(), value), papers as usize))
        .collect()
}

/// Weight of the top class of a threshold `x` expressed in percent, for a
/// group of an explicit size; convenience for callers holding only ranks.
pub fn top_weight_from_ranks(rank_lo: u64, rank_hi: u64, total: u64, x: &Exact) -> Result<Exact> {
    let scheme = ThresholdScheme::top(x.clone())?;
    let group = TieGroup {
        above: rank_lo - 1,
        ties: rank_hi + 1 - rank_lo,
        total,
    };
    let weights: ClassWeights<Exact> = fractional_weights(&group, &scheme);
    Ok(weights.weights[0].clone())
}
