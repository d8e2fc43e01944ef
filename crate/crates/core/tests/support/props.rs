//! Property checks, each run with a fixed seed so failures reproduce.
//! Every check returns `Err` with the shrunk counterexample on failure.

use citerank_core::classes::{fractional_weights, portfolio_weights_in, whole_set_portfolio};
use citerank_core::exact::{integer, ratio, to_f64};
use citerank_core::{
    class_weights, improvement_factor, ingest_records, p100, percentile_profile, profile_series, tie_group,
    to_standard, top_share, top_share_in, what_if_ranking, Attribution, CitationHistogram, ClassWeights, Exact,
    Journal, MedianSeries, Orientation, Provenance, RawRecord, ReferenceSetKey, ReferenceStore, ThresholdScheme,
    TieRule,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use super::oracle;

pub type Outcome = Result<(), String>;

fn check<S>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome
where
    S: Strategy,
    S::Value: std::fmt::Debug,
{
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn fail(message: String) -> TestCaseError {
    TestCaseError::fail(message)
}

/// Citation counts with a power-law tail: most papers are cited a few times,
/// a handful hundreds or thousands of times.
pub fn heavy_value() -> impl Strategy<Value = u64> {
    prop_oneof![
        2 => 0u64..4,
        3 => (1u32..=1_000_000).prop_map(|k| (1e6 / f64::from(k)).powf(0.6) as u64 - 1),
    ]
}

/// Papers of one reference set, as a histogram.
pub fn histogram(max_papers: usize) -> impl Strategy<Value = CitationHistogram> {
    prop::collection::vec(heavy_value(), 1..=max_papers).prop_map(CitationHistogram::from_papers)
}

/// A valid threshold scheme with up to four thresholds on a 0.1 grid.
pub fn scheme() -> impl Strategy<Value = ThresholdScheme> {
    prop::collection::btree_set(1u64..1000, 1..=4)
        .prop_map(|set| ThresholdScheme::new(set.into_iter().map(|t| ratio(t, 10)).collect()).unwrap())
}

fn present(refset: &CitationHistogram) -> Vec<u64> {
    refset.iter_desc().map(|(&v, _)| v).collect()
}

/// The tie intervals `(100G/N, 100(G+T)/N]` of the occurring values tile
/// `(0, 100]` without gaps or overlaps, most cited first.
pub fn interval_partition(cases: u32) -> Outcome {
    check(cases, histogram(400), |refset| {
        let mut reached = integer(0);
        for c in present(&refset) {
            let g = tie_group(&refset, c).unwrap();
            let lo = ratio(100 * g.above, g.total);
            prop_assert_eq!(&lo, &reached, "gap or overlap before {}", c);
            prop_assert!(g.ties > 0);
            reached = ratio(100 * (g.above + g.ties), g.total);
        }
        prop_assert_eq!(reached, integer(100));
        Ok(())
    })
}

/// More citations always mean strictly better (lower) percentages.
pub fn strict_monotonicity(cases: u32) -> Outcome {
    check(cases, histogram(400), |refset| {
        let values = present(&refset);
        for pair in values.windows(2) {
            let (better, worse) = (
                percentile_profile(&refset, pair[0]).unwrap(),
                percentile_profile(&refset, pair[1]).unwrap(),
            );
            prop_assert!(better.pct_hi < worse.pct_lo, "{} vs {}", pair[0], pair[1]);
            for rule in [TieRule::BestRank, TieRule::MidRank, TieRule::WorstRank] {
                prop_assert!(better.point(rule) < worse.point(rule));
            }
        }
        Ok(())
    })
}

/// best <= mid <= worst for occurring and hypothetical values alike.
pub fn rule_ordering(cases: u32) -> Outcome {
    check(cases, (histogram(300), 0u64..3000), |(refset, extra)| {
        for c in present(&refset).into_iter().chain([extra]) {
            let p = percentile_profile(&refset, c).unwrap();
            let (best, mid, worst) = (
                p.point(TieRule::BestRank),
                p.point(TieRule::MidRank),
                p.point(TieRule::WorstRank),
            );
            prop_assert!(best <= mid && mid <= worst, "c = {}", c);
            prop_assert!(*best > integer(0) && *worst <= integer(100));
        }
        Ok(())
    })
}

/// Converting to standard orientation mirrors the range and is its own
/// inverse.
pub fn standard_involution(cases: u32) -> Outcome {
    check(cases, histogram(300), |refset| {
        let n = refset.total();
        for c in present(&refset) {
            let p = percentile_profile(&refset, c).unwrap();
            let s = to_standard(&p).unwrap();
            prop_assert_eq!(s.orientation, Orientation::Standard);
            let step = ratio(100, n);
            prop_assert_eq!(&s.pct_lo, &(integer(100) - p.pct_hi.clone() + step.clone()));
            prop_assert_eq!(&s.pct_hi, &(integer(100) - p.pct_lo.clone() + step));
            let below = refset.total() - refset.count_above(c) - refset.count_at(c);
            prop_assert_eq!(s.rank_lo, below + 1);
            prop_assert_eq!(to_standard(&s).unwrap(), p);
        }
        Ok(())
    })
}

/// Repeating every paper `k` times keeps each group's upper percentage and
/// its fractional class weights.
pub fn duplication_invariance(cases: u32) -> Outcome {
    check(cases, (histogram(150), 2u64..6, scheme()), |(refset, k, scheme)| {
        let scaled = refset.scaled(k);
        for c in present(&refset) {
            let (a, b) = (
                percentile_profile(&refset, c).unwrap(),
                percentile_profile(&scaled, c).unwrap(),
            );
            prop_assert_eq!(&a.pct_hi, &b.pct_hi);
            let wa = class_weights(&refset, c, &scheme, Attribution::Fractional).unwrap();
            let wb = class_weights(&scaled, c, &scheme, Attribution::Fractional).unwrap();
            prop_assert_eq!(wa, wb);
        }
        Ok(())
    })
}

/// Higher citation values score strictly higher, from 0 to 100.
pub fn p100_monotonicity(cases: u32) -> Outcome {
    check(cases, histogram(300), |refset| {
        let mut values = present(&refset);
        values.reverse();
        let scores: Vec<Exact> = values.iter().map(|&c| p100(&refset, c).unwrap().score).collect();
        prop_assert!(scores.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(&scores[0], &integer(0));
        if values.len() > 1 {
            prop_assert_eq!(scores.last().unwrap(), &integer(100));
        } else {
            prop_assert!(p100(&refset, values[0]).unwrap().degenerate);
        }
        Ok(())
    })
}

/// Class weights are non-negative and sum to one under every attribution.
pub fn weights_sum_to_one(cases: u32) -> Outcome {
    check(cases, (histogram(300), scheme()), |(refset, scheme)| {
        for c in present(&refset) {
            for attribution in [
                Attribution::Fractional,
                Attribution::Point(TieRule::BestRank),
                Attribution::Point(TieRule::MidRank),
                Attribution::Point(TieRule::WorstRank),
            ] {
                let w = class_weights(&refset, c, &scheme, attribution).unwrap();
                prop_assert_eq!(w.sum(), integer(1));
                prop_assert!(w.weights.iter().all(|x| *x >= integer(0)));
            }
        }
        Ok(())
    })
}

/// Fractional weights from the interval overlap agree with the sum of the
/// tied papers' individual slots.
pub fn overlap_matches_slots(cases: u32) -> Outcome {
    check(cases, (histogram(300), scheme()), |(refset, scheme)| {
        let papers = oracle::expand(&refset);
        for c in present(&refset) {
            let group = tie_group(&refset, c).unwrap();
            let w: ClassWeights = fractional_weights(&group, &scheme);
            prop_assert_eq!(w.weights, oracle::fractional_weights(&papers, c, scheme.thresholds()));
        }
        Ok(())
    })
}

/// The whole reference set, scored fractionally, puts exactly `x`% of its
/// papers in the top `x`%.
pub fn whole_set_top_share(cases: u32) -> Outcome {
    check(cases, (histogram(400), 1u64..1000), |(refset, t)| {
        let key = ReferenceSetKey::new("S", 2000);
        let mut store = ReferenceStore::new();
        store.insert(key.clone(), refset.clone(), Provenance::default());
        let portfolio = whole_set_portfolio(&key, &refset);
        let x = ratio(t, 10);
        let share = top_share(&portfolio, &store, &x, Attribution::Fractional).unwrap();
        prop_assert_eq!(share, x.clone() / integer(100));
        let approx: f64 = top_share_in(&portfolio, &store, &x, Attribution::Fractional).unwrap();
        prop_assert!((approx - to_f64(&x) / 100.0).abs() < 1e-9);
        Ok(())
    })
}

fn records() -> impl Strategy<Value = Vec<(usize, i32, i64, i64)>> {
    prop::collection::vec((0usize..3, 2007i32..2010, 0i64..60, 1i64..5), 1..80)
}

fn raw(rows: &[(usize, i32, i64, i64)]) -> Vec<RawRecord> {
    const CATS: [&str; 3] = ["A", "B", "C"];
    rows.iter()
        .map(|&(cat, year, citations, multiplicity)| RawRecord {
            category: CATS[cat].into(),
            year,
            citations,
            multiplicity,
        })
        .collect()
}

/// Record order and splitting a counted record into single papers do not
/// change the store.
pub fn ingest_invariance(cases: u32) -> Outcome {
    let strategy = records().prop_flat_map(|rows| {
        let shuffled = Just(rows.clone()).prop_shuffle();
        (Just(rows), shuffled)
    });
    check(cases, strategy, |(rows, shuffled)| {
        let provenance = Provenance::new("r", Some(0));
        let base = ingest_records(raw(&rows), &provenance).unwrap();
        prop_assert_eq!(&ingest_records(raw(&shuffled), &provenance).unwrap(), &base);
        let split: Vec<_> = rows
            .iter()
            .flat_map(|&(c, y, n, m)| std::iter::repeat_n((c, y, n, 1), m as usize))
            .collect();
        prop_assert_eq!(&ingest_records(raw(&split), &provenance).unwrap(), &base);
        let papers: u64 = rows.iter().map(|r| r.3 as u64).sum();
        let stored: u64 = base.iter().map(|(_, set)| set.histogram.total()).sum();
        prop_assert_eq!(papers, stored);
        Ok(())
    })
}

fn series(label: &str, medians: &[Exact]) -> MedianSeries {
    MedianSeries {
        label: label.into(),
        entries: medians
            .iter()
            .enumerate()
            .map(|(i, m)| ((2000 + i as i32, 1), m.clone()))
            .collect(),
    }
}

/// The factor is the arithmetic mean of the per-item ratios: one for equal
/// series, `k` for series scaled by `k`, never below the geometric mean, and
/// at least one when multiplied by the reverse factor.
pub fn improvement_factor_means(cases: u32) -> Outcome {
    let pair = (1u64..10_000, 1u64..10_000);
    check(cases, (prop::collection::vec(pair, 1..8), 1u64..20), |(values, k)| {
        let num: Vec<Exact> = values.iter().map(|&(a, _)| ratio(a, 100)).collect();
        let den: Vec<Exact> = values.iter().map(|&(_, b)| ratio(b, 100)).collect();
        let same = improvement_factor(&series("a", &num), &series("a", &num)).unwrap();
        prop_assert_eq!(same.factor, integer(1));
        let scaled: Vec<Exact> = num.iter().map(|m| m.clone() * integer(k)).collect();
        prop_assert_eq!(
            improvement_factor(&series("k", &scaled), &series("a", &num))
                .unwrap()
                .factor,
            integer(k)
        );
        let f = improvement_factor(&series("n", &num), &series("d", &den)).unwrap();
        let log_mean = values.iter().map(|&(a, b)| (a as f64 / b as f64).ln()).sum::<f64>() / values.len() as f64;
        prop_assert!(to_f64(&f.factor) >= log_mean.exp() * (1.0 - 1e-12));
        let back = improvement_factor(&series("d", &den), &series("n", &num)).unwrap();
        prop_assert!(f.factor.clone() * back.factor >= integer(1));
        Ok(())
    })
}

fn journals_and_store() -> impl Strategy<Value = (ReferenceStore, Vec<Journal>, u64)> {
    let sets = prop::collection::vec(histogram(120), 4);
    let journals = prop::collection::vec(prop::collection::btree_set(0usize..4, 1..=3), 2..7);
    (sets, journals, heavy_value()).prop_map(|(sets, journals, citations)| {
        let mut store = ReferenceStore::new();
        for (i, h) in sets.into_iter().enumerate() {
            store.insert(ReferenceSetKey::new(format!("C{i}"), 2008), h, Provenance::default());
        }
        let journals = journals
            .into_iter()
            .enumerate()
            .map(|(i, cats)| Journal::new(format!("J{i}"), cats.into_iter().map(|c| format!("C{c}"))))
            .collect();
        (store, journals, citations)
    })
}

/// The what-if ranking ignores the order journals are listed in, and
/// dropping a journal keeps the others in the same relative order.
pub fn what_if_permutation_and_stability(cases: u32) -> Outcome {
    let strategy = journals_and_store().prop_flat_map(|(store, journals, c)| {
        let n = journals.len();
        (
            Just(store),
            Just(journals.clone()),
            Just(journals).prop_shuffle(),
            Just(c),
            0..n,
        )
    });
    check(cases, strategy, |(store, journals, shuffled, c, drop)| {
        for rule in [TieRule::BestRank, TieRule::MidRank, TieRule::WorstRank] {
            let base = what_if_ranking(c, 2008, &journals, &store, rule).unwrap();
            prop_assert_eq!(&what_if_ranking(c, 2008, &shuffled, &store, rule).unwrap(), &base);
            prop_assert!(base.windows(2).all(|w| w[0].percentage <= w[1].percentage));
            let mut fewer = journals.clone();
            let dropped = fewer.remove(drop).label;
            let reduced = what_if_ranking(c, 2008, &fewer, &store, rule).unwrap();
            let expected: Vec<_> = base.iter().filter(|e| e.label != dropped).cloned().collect();
            prop_assert_eq!(reduced, expected);
        }
        Ok(())
    })
}

/// Mean class weights of a portfolio do not depend on item order.
pub fn portfolio_order_invariance(cases: u32) -> Outcome {
    let strategy = (histogram(200), prop::collection::vec(0usize..64, 1..30), scheme()).prop_flat_map(
        |(refset, picks, scheme)| {
            let values = present(&refset);
            let items: Vec<u64> = picks.iter().map(|i| values[i % values.len()]).collect();
            (
                Just(refset),
                Just(items.clone()),
                Just(items).prop_shuffle(),
                Just(scheme),
            )
        },
    );
    check(cases, strategy, |(refset, items, shuffled, scheme)| {
        let key = ReferenceSetKey::new("S", 2000);
        let mut store = ReferenceStore::new();
        store.insert(key.clone(), refset, Provenance::default());
        let portfolio = |cs: &[u64]| -> Vec<_> {
            cs.iter()
                .map(|&c| citerank_core::PortfolioItem::single(key.clone(), c))
                .collect()
        };
        for attribution in [Attribution::Fractional, Attribution::Point(TieRule::MidRank)] {
            let a: ClassWeights = portfolio_weights_in(&portfolio(&items), &store, &scheme, attribution).unwrap();
            let b: ClassWeights = portfolio_weights_in(&portfolio(&shuffled), &store, &scheme, attribution).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a.sum(), integer(1));
        }
        Ok(())
    })
}

/// tie_group, percentile_profile, fractional class weights and the profile
/// series against the expansion oracle.
pub fn oracle_equivalence(cases: u32, max_papers: usize) -> Outcome {
    check(
        cases,
        (histogram(max_papers), scheme(), 0u64..5000),
        |(refset, scheme, extra)| {
            let papers = oracle::expand(&refset);
            for c in present(&refset).into_iter().chain([extra]) {
                let want = oracle::profile(&papers, c);
                let group = tie_group(&refset, c).unwrap();
                prop_assert_eq!(
                    (group.above, group.ties, group.total),
                    (want.above, want.ties, want.total)
                );
                let p = percentile_profile(&refset, c).unwrap();
                let got = oracle::OracleProfile {
                    above: p.group.above,
                    ties: p.group.ties,
                    total: p.group.total,
                    rank_lo: p.rank_lo,
                    rank_hi: p.rank_hi,
                    pct_lo: p.pct_lo.clone(),
                    pct_hi: p.pct_hi.clone(),
                    median: p.median.clone(),
                    member: p.member,
                };
                prop_assert_eq!(&got, &want, "c = {}", c);
                if want.member {
                    let w = class_weights(&refset, c, &scheme, Attribution::Fractional).unwrap();
                    prop_assert_eq!(w.weights, oracle::fractional_weights(&papers, c, scheme.thresholds()));
                    for rule in [TieRule::BestRank, TieRule::MidRank, TieRule::WorstRank] {
                        let w = class_weights(&refset, c, &scheme, Attribution::Point(rule)).unwrap();
                        let class = oracle::point_class(p.point(rule), scheme.thresholds());
                        prop_assert_eq!(&w.weights[class], &integer(1));
                    }
                } else if class_weights(&refset, c, &scheme, Attribution::Fractional).is_ok() {
                    return Err(fail(format!("fractional weights accepted a non-member {c}")));
                }
            }
            let series = profile_series(&refset, "s").unwrap();
            let pieces: Vec<(Exact, Exact)> = series.points.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
            prop_assert_eq!(pieces, oracle::profile_pieces(&papers));
            Ok(())
        },
    )
}

/// Drops of the citation curve are the tie counts, and the normalised curve
/// is the raw one scaled by `100/N`.
pub fn ccdf_consistency(cases: u32) -> Outcome {
    check(cases, histogram(300), |refset| {
        let papers = oracle::expand(&refset);
        let raw = citerank_core::ccdf_series(&refset, "r").unwrap();
        let norm = citerank_core::normalized_series(&refset, "n").unwrap();
        let want = oracle::ccdf(&papers);
        let got: Vec<Exact> = raw.points.iter().map(|p| p.y.clone()).collect();
        prop_assert_eq!(got, want.iter().map(|&f| integer(f)).collect::<Vec<_>>());
        let n = refset.total();
        for (c, (r, s)) in raw.points.iter().zip(&norm.points).enumerate() {
            prop_assert_eq!(&s.y, &(r.y.clone() * ratio(100, n)));
            if c >= 1 {
                let drop = raw.points[c - 1].y.clone() - r.y.clone();
                prop_assert_eq!(drop, integer(refset.count_at(c as u64)));
            }
        }
        let total_drop = raw.points[0].y.clone() - raw.points.last().unwrap().y.clone();
        prop_assert_eq!(total_drop, integer(refset.cited()));
        prop_assert!(raw.is_staircase());
        Ok(())
    })
}

/// Every suite with its default case count, by name.
pub type Suite = (&'static str, fn() -> Outcome);

pub fn all() -> Vec<Suite> {
    vec![
        ("interval partition of (0,100]", || interval_partition(256)),
        ("strict monotonicity", || strict_monotonicity(256)),
        ("rule ordering best <= mid <= worst", || rule_ordering(256)),
        ("standard orientation involution", || standard_involution(256)),
        ("duplication invariance of pct_hi", || duplication_invariance(128)),
        ("P100 monotonicity", || p100_monotonicity(256)),
        ("class weights sum to one", || weights_sum_to_one(128)),
        ("overlap equals slot measure", || overlap_matches_slots(128)),
        ("whole-set top share", || whole_set_top_share(128)),
        ("ingest permutation and splitting", || ingest_invariance(128)),
        ("improvement factor means", || improvement_factor_means(256)),
        ("what-if permutation and stability", || {
            what_if_permutation_and_stability(128)
        }),
        ("portfolio order invariance", || portfolio_order_invariance(128)),
        ("CCDF consistency", || ccdf_consistency(128)),
        ("oracle equivalence", || oracle_equivalence(128, 300)),
    ]
}
