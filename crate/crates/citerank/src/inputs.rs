//! Portfolio, journal and table-item files.

use std::collections::BTreeMap;
use std::io::Read;

use citerank_core::compare::TableItem;
use citerank_core::{Journal, PortfolioItem, ReferenceSetKey};

use crate::error::{Error, Result};

fn read_rows<R: Read>(reader: R, delimiter: u8, source_name: &str, header: &[&str]) -> Result<Vec<(u64, Vec<String>)>> {
    let mut csv = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows = csv.records();
    let first = match rows.next() {
        Some(row) => row.map_err(|e| Error::format(source_name, e))?,
        None => return Err(Error::format(source_name, "missing header row")),
    };
    if first.iter().collect::<Vec<_>>() != header {
        let sep = char::from(delimiter).to_string();
        return Err(Error::malformed(
            source_name,
            1,
            format!("expected header `{}`", header.join(&sep)),
        ));
    }
    let mut out = Vec::new();
    for row in rows {
        let row = row.map_err(|e| Error::format(source_name, e))?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != header.len() {
            return Err(Error::malformed(
                source_name,
                line,
                format!("expected {} fields", header.len()),
            ));
        }
        out.push((line, row.iter().map(str::to_string).collect()));
    }
    Ok(out)
}

fn number<T: std::str::FromStr>(text: &str, what: &str, source_name: &str, line: u64) -> Result<T> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::malformed(source_name, line, format!("invalid {what} `{text}`")));
    }
    text.parse()
        .map_err(|_| Error::malformed(source_name, line, format!("invalid {what} `{text}`")))
}

/// Reads `categories|year|citations` rows; `categories` is a `;`-separated
/// list of subject categories.
pub fn read_portfolio<R: Read>(reader: R, source_name: &str) -> Result<Vec<PortfolioItem>> {
    read_rows(reader, b'|', source_name, &["categories", "year", "citations"])?
        .into_iter()
        .map(|(line, fields)| {
            let year: i32 = number(&fields[1], "year", source_name, line)?;
            let citations: u64 = number(&fields[2], "citation count", source_name, line)?;
            let keys: Vec<ReferenceSetKey> = fields[0]
                .split(';')
                .map(str::trim)
                .filter(|c| !c.is_empty())
                .map(|c| ReferenceSetKey::new(c, year))
                .collect();
            if keys.is_empty() {
                return Err(Error::malformed(source_name, line, "no categories"));
            }
            Ok(PortfolioItem::new(keys, citations))
        })
        .collect()
}

/// Reads `year,citations` rows.
pub fn read_items<R: Read>(reader: R, source_name: &str) -> Result<Vec<TableItem>> {
    read_rows(reader, b',', source_name, &["year", "citations"])?
        .into_iter()
        .map(|(line, fields)| {
            Ok((
                number(&fields[0], "year", source_name, line)?,
                number(&fields[1], "citation count", source_name, line)?,
            ))
        })
        .collect()
}

/// Parses `YEAR:CITATIONS`.
pub fn parse_item(text: &str) -> Result<TableItem> {
    let bad = || Error::Usage(format!("invalid item `{text}`, expected YEAR:CITATIONS"));
    let (year, cites) = text.split_once(':').ok_or_else(bad)?;
    Ok((
        number(year, "year", "", 0).map_err(|_| bad())?,
        number(cites, "citations", "", 0).map_err(|_| bad())?,
    ))
}

/// Reads a JSON object mapping journal labels to category lists, e.g.
/// `{"JASIST": ["InfScLibSc", "ComScInfSy"]}`. Journals come back ordered by
/// label.
pub fn read_journals(text: &str, source_name: &str) -> Result<Vec<Journal>> {
    let map: BTreeMap<String, Vec<String>> = serde_json::from_str(text).map_err(|e| Error::format(source_name, e))?;
    map.into_iter()
        .map(|(label, categories)| {
            let categories: Vec<String> = categories.iter().map(|c| c.trim().to_string()).collect();
            if categories.is_empty() || categories.iter().any(String::is_empty) {
                return Err(Error::format(
                    source_name,
                    format!("journal `{label}` needs non-empty categories"),
                ));
            }
            Ok(Journal::new(label, categories))
        })
        .collect()
}
