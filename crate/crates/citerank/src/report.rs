//! Plain-text and tab-delimited reports.

use citerank_core::exact::round_half_up;
use citerank_core::{ComparisonRow, Exact, TieRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    /// Percentages to 2 decimals, medians to 1, half-up.
    Paper,
    /// Four decimals everywhere.
    Fine,
}

impl Rounding {
    pub fn percentage(self, value: &Exact) -> String {
        match self {
            Rounding::Paper => round_half_up(value, 2),
            Rounding::Fine => round_half_up(value, 4),
        }
    }

    pub fn median(self, value: &Exact) -> String {
        match self {
            Rounding::Paper => round_half_up(value, 1),
            Rounding::Fine => round_half_up(value, 4),
        }
    }

    /// Ratios such as improvement factors.
    pub fn factor(self, value: &Exact) -> String {
        match self {
            Rounding::Paper => round_half_up(value, 2),
            Rounding::Fine => round_half_up(value, 4),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    /// Space-aligned columns.
    Text,
    /// Tab-separated columns.
    Tsv,
}

/// Lays out a header and rows in the chosen format.
pub fn layout(header: &[String], rows: &[Vec<String>], format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Tsv => {
            for line in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
                out.push_str(&line.join("\t"));
                out.push('\n');
            }
        }
        OutputFormat::Text => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
            for row in rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            for line in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
                let cells: Vec<String> = line
                    .iter()
                    .zip(&widths)
                    .map(|(cell, &w)| format!("{cell:<w$}"))
                    .collect();
                out.push_str(cells.join("  ").trim_end());
                out.push('\n');
            }
        }
    }
    out
}

/// Which identifying columns a comparison table carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableLayout {
    /// One category, several (year, citations) items.
    ByItem,
    /// One item across several categories.
    ByCategory,
    /// Everything.
    Full,
}

impl TableLayout {
    pub fn for_query(items: usize, categories: usize) -> Self {
        if categories == 1 {
            TableLayout::ByItem
        } else if items == 1 {
            TableLayout::ByCategory
        } else {
            TableLayout::Full
        }
    }
}

pub fn comparison_table(
    rows: &[ComparisonRow],
    table: TableLayout,
    rounding: Rounding,
    format: OutputFormat,
    point: Option<TieRule>,
) -> String {
    let mut header: Vec<String> = match table {
        TableLayout::ByItem => vec!["Year".into(), "No.cits.".into()],
        TableLayout::ByCategory => vec!["Subject category".into()],
        TableLayout::Full => vec!["Subject category".into(), "Year".into(), "No.cits.".into()],
    };
    header.extend(["Range of ranks", "No.arts.", "Percentage range", "Median"].map(String::from));
    if let Some(rule) = point {
        header.push(format!("Point ({})", rule_name(rule)));
    }
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            let mut cells = match table {
                TableLayout::ByItem => vec![row.key.year.to_string(), row.citations.to_string()],
                TableLayout::ByCategory => vec![row.key.category.clone()],
                TableLayout::Full => vec![
                    row.key.category.clone(),
                    row.key.year.to_string(),
                    row.citations.to_string(),
                ],
            };
            cells.push(format!("{} - {}", row.rank_lo, row.rank_hi));
            cells.push(row.total.to_string());
            cells.push(format!(
                "{} - {}",
                rounding.percentage(&row.pct_lo),
                rounding.percentage(&row.pct_hi)
            ));
            cells.push(rounding.median(&row.median));
            if let Some(rule) = point {
                let value = match rule {
                    TieRule::BestRank => &row.pct_lo,
                    TieRule::WorstRank => &row.pct_hi,
                    TieRule::MidRank => &row.median,
                };
                cells.push(rounding.percentage(value));
            }
            cells
        })
        .collect();
    layout(&header, &body, format)
}

pub fn rule_name(rule: TieRule) -> &'static str {
    match rule {
        TieRule::BestRank => "best",
        TieRule::WorstRank => "worst",
        TieRule::MidRank => "mid",
    }
}
