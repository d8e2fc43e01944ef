//! Staircase series behind the distribution charts.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::corpus::CitationHistogram;
use crate::error::{Error, Result};
use crate::exact::{integer, ratio, Exact};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxisScale {
    Linear,
    Log,
}

/// Which side of a point its value covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepMode {
    /// `y` holds from `x` up to the next point's `x`.
    After,
    /// `y` holds from the previous point's `x` (or 0) up to `x`.
    Before,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepPoint {
    pub x: Exact,
    pub y: Exact,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepSeries {
    pub label: String,
    pub points: Vec<StepPoint>,
    pub x_scale: AxisScale,
    pub y_scale: AxisScale,
    pub mode: StepMode,
}

impl StepSeries {
    /// Strictly increasing `x` and non-increasing `y`.
    pub fn is_staircase(&self) -> bool {
        self.points.windows(2).all(|w| w[0].x < w[1].x && w[0].y >= w[1].y)
    }

    /// Rows for a `label,c,y` table, citation value first and ascending.
    /// For profile series (`Before` mode) `c` is the plotted height and `y` the
    /// upper percentage of its piece.
    pub fn table_rows(&self) -> Vec<(Exact, Exact)> {
        let mut rows: Vec<(Exact, Exact)> = match self.mode {
            StepMode::After => self.points.iter().map(|p| (p.x.clone(), p.y.clone())).collect(),
            StepMode::Before => self.points.iter().map(|p| (p.y.clone(), p.x.clone())).collect(),
        };
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        rows
    }

    /// Horizontal pieces `(x_from, x_to, y)` of the staircase. The last piece
    /// of an `After` series has zero width.
    pub fn segments(&self) -> Vec<(Exact, Exact, Exact)> {
        match self.mode {
            StepMode::Before => {
                let mut from = integer(0);
                self.points
                    .iter()
                    .map(|p| {
                        let seg = (from.clone(), p.x.clone(), p.y.clone());
                        from = p.x.clone();
                        seg
                    })
                    .collect()
            }
            StepMode::After => self
                .points
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let to = self
                        .points
                        .get(i + 1)
                        .map_or_else(|| p.x.clone(), |next| next.x.clone());
                    (p.x.clone(), to, p.y.clone())
                })
                .collect(),
        }
    }
}

fn non_empty(refset: &CitationHistogram) -> Result<()> {
    if refset.is_empty() {
        Err(Error::EmptyReferenceSet)
    } else {
        Ok(())
    }
}

/// Number of papers with more than `c` citations for each integer `c`
/// from 0 up to the most cited paper.
fn ccdf_counts(refset: &CitationHistogram) -> Vec<u64> {
    let max = refset.max_value().unwrap_or(0) as usize;
    let mut above = vec![0u64; max + 1];
    let mut running = 0;
    for c in (0..=max).rev() {
        above[c] = running;
        running += refset.count_at(c as u64);
    }
    above
}

/// `(c, F(c))` for `c = 0 ..= max`, with `F(c)` the number of papers cited
/// more than `c` times. The drop at `c` is the tie count at `c`.
pub fn ccdf_series(refset: &CitationHistogram, label: impl Into<String>) -> Result<StepSeries> {
    non_empty(refset)?;
    let points = ccdf_counts(refset)
        .into_iter()
        .enumerate()
        .map(|(c, above)| StepPoint {
            x: integer(c as u64),
            y: integer(above),
        })
        .collect();
    Ok(StepSeries {
        label: label.into(),
        points,
        x_scale: AxisScale::Log,
        y_scale: AxisScale::Log,
        mode: StepMode::After,
    })
}

/// [`ccdf_series`] as a percentage of the set size.
pub fn normalized_series(refset: &CitationHistogram, label: impl Into<String>) -> Result<StepSeries> {
    non_empty(refset)?;
    let total = refset.total();
    let points = ccdf_counts(refset)
        .into_iter()
        .enumerate()
        .map(|(c, above)| StepPoint {
            x: integer(c as u64),
            y: ratio(100 * above, total),
        })
        .collect();
    Ok(StepSeries {
        label: label.into(),
        points,
        x_scale: AxisScale::Log,
        y_scale: AxisScale::Log,
        mode: StepMode::After,
    })
}

/// Citation count against percentage: each occurring value `c` covers
/// `(100G/N, 100(G+T)/N]` at height `c`, most cited first.
pub fn profile_series(refset: &CitationHistogram, label: impl Into<String>) -> Result<StepSeries> {
    non_empty(refset)?;
    let total = refset.total();
    let mut above = 0;
    let points = refset
        .iter_desc()
        .map(|(&value, &ties)| {
            above += ties;
            StepPoint {
                x: ratio(100 * above, total),
                y: integer(value),
            }
        })
        .collect();
    Ok(StepSeries {
        label: label.into(),
        points,
        x_scale: AxisScale::Linear,
        y_scale: AxisScale::Linear,
        mode: StepMode::Before,
    })
}
