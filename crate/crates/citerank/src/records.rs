//! Readers for citation records.
//!
//! Two inputs are supported: a comma-separated record file with the header
//! `category,year,citations[,count]`, and tab-delimited bibliographic
//! exports where configurable columns hold the times-cited count, the
//! publication year and the subject categories.

use std::io::Read;

use citerank_core::CitationRecord;

use crate::error::{Error, Result};

const RECORD_HEADER: [&str; 3] = ["category", "year", "citations"];

fn parse_int(text: &str) -> Option<i64> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// Reads a record file. Line numbers in errors count the header as line 1.
pub fn read_records<R: Read>(reader: R, source_name: &str) -> Result<Vec<CitationRecord>> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows = csv.records();

    let header = match rows.next() {
        Some(row) => row.map_err(|e| Error::format(source_name, e))?,
        None => return Err(Error::format(source_name, "missing header row")),
    };
    let columns: Vec<&str> = header.iter().collect();
    let with_count = match columns.as_slice() {
        [c, y, n] if [*c, *y, *n] == RECORD_HEADER => false,
        [c, y, n, "count"] if [*c, *y, *n] == RECORD_HEADER => true,
        _ => {
            return Err(Error::malformed(
                source_name,
                1,
                format!(
                    "expected header `category,year,citations[,count]`, found `{}`",
                    columns.join(",")
                ),
            ))
        }
    };

    let mut records = Vec::new();
    for row in rows {
        let row = row.map_err(|e| Error::format(source_name, e))?;
        let line = row.position().map_or(0, |p| p.line());
        let expected = if with_count { 4 } else { 3 };
        if row.len() != expected {
            return Err(Error::malformed(
                source_name,
                line,
                format!("expected {expected} fields, found {}", row.len()),
            ));
        }
        let year = row[1]
            .parse::<i32>()
            .ok()
            .filter(|_| parse_int(&row[1]).is_some())
            .ok_or_else(|| Error::malformed(source_name, line, format!("invalid year `{}`", &row[1])))?;
        let citations = parse_int(&row[2])
            .ok_or_else(|| Error::malformed(source_name, line, format!("invalid citation count `{}`", &row[2])))?;
        let count = if with_count {
            parse_int(&row[3])
                .ok_or_else(|| Error::malformed(source_name, line, format!("invalid count `{}`", &row[3])))?
        } else {
            1
        };
        let record = CitationRecord::new(&row[0], year, citations, count)
            .map_err(|fault| Error::malformed(source_name, line, fault.to_string()))?;
        records.push(record);
    }
    Ok(records)
}

/// Where an export row's subject category comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategorySource {
    /// A column holding one or more `;`-separated categories; the paper is
    /// counted in each of them.
    Column(String),
    /// Every row belongs to this category.
    Fixed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExportColumns {
    pub citations: String,
    pub year: String,
    pub category: CategorySource,
}

impl Default for ExportColumns {
    fn default() -> Self {
        Self {
            citations: "TC".into(),
            year: "PY".into(),
            category: CategorySource::Column("WC".into()),
        }
    }
}

/// Reads a tab-delimited export. Columns other than the mapped ones are
/// ignored.
pub fn read_export<R: Read>(reader: R, source_name: &str, columns: &ExportColumns) -> Result<Vec<CitationRecord>> {
    let mut tsv = csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .quoting(false)
        .flexible(true)
        .has_headers(false)
        .from_reader(reader);
    let mut rows = tsv.records();

    let header = match rows.next() {
        Some(row) => row.map_err(|e| Error::format(source_name, e))?,
        None => return Err(Error::format(source_name, "missing header row")),
    };
    let find = |name: &str| {
        header
            .iter()
            .position(|h| h.trim_start_matches('\u{feff}').trim() == name)
            .ok_or_else(|| Error::malformed(source_name, 1, format!("no column named `{name}`")))
    };
    let cites_at = find(&columns.citations)?;
    let year_at = find(&columns.year)?;
    let category_at = match &columns.category {
        CategorySource::Column(name) => Some(find(name)?),
        CategorySource::Fixed(_) => None,
    };

    let mut records = Vec::new();
    for row in rows {
        let row = row.map_err(|e| Error::format(source_name, e))?;
        let line = row.position().map_or(0, |p| p.line());
        if row.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        let field = |at: usize| row.get(at).unwrap_or("").trim();
        let citations = parse_int(field(cites_at)).ok_or_else(|| {
            Error::malformed(
                source_name,
                line,
                format!("invalid times-cited value `{}`", field(cites_at)),
            )
        })?;
        let year = parse_int(field(year_at))
            .and_then(|y| i32::try_from(y).ok())
            .ok_or_else(|| Error::malformed(source_name, line, format!("invalid year `{}`", field(year_at))))?;
        let categories: Vec<&str> = match (&columns.category, category_at) {
            (CategorySource::Fixed(label), _) => vec![label.as_str()],
            (_, Some(at)) => field(at).split(';').map(str::trim).filter(|c| !c.is_empty()).collect(),
            _ => unreachable!(),
        };
        if categories.is_empty() {
            return Err(Error::malformed(source_name, line, "empty category"));
        }
        for category in categories {
            let record = CitationRecord::new(category, year, citations, 1)
                .map_err(|fault| Error::malformed(source_name, line, fault.to_string()))?;
            records.push(record);
        }
    }
    Ok(records)
}
