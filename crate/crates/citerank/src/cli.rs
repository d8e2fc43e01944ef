//! Command-line surface: argument parsing into a [`RunPlan`] and its
//! execution.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::UNIX_EPOCH;

use clap::{Args, Parser, Subcommand, ValueEnum};

use citerank_core::classes::portfolio_weights_in;
use citerank_core::compare::TableItem;
use citerank_core::corpus::ingest_valid;
use citerank_core::engine::p100;
use citerank_core::exact::{parse_decimal, to_f64};
use citerank_core::{
    ccdf_series, normalized_series, percentile_profile, profile_series, summarize, to_standard, what_if_ranking,
    Attribution, ClassWeights, Exact, MedianSeries, Orientation, Provenance, ReferenceSetKey, ReferenceStore,
    StepSeries, ThresholdScheme, TieRule,
};

use crate::chart::{render_chart, series_table, ChartOptions};
use crate::error::{exit, Error, Result};
use crate::records::{read_export, read_records, CategorySource, ExportColumns};
use crate::report::{self, layout, OutputFormat, Rounding, TableLayout};
use crate::{fixtures, inputs, store_file};

/// Drawing multiplier for singly cited papers when `--jitter` has no value.
pub const DEFAULT_JITTER: f64 = 1.05;

const SAME_CITATIONS_NOTE: &str =
    "Note: assumes the paper would receive the same number of citations in every journal.";

#[derive(Debug, Parser)]
#[command(
    name = "citerank",
    version,
    about = "Percentile ranks of citation counts within reference sets"
)]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RuleArg {
    Best,
    Worst,
    Mid,
    Fractional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrientationArg {
    Inverted,
    Standard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Tsv,
}

/// Kind of chart drawn by `plot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    /// Papers with more than c citations, log-log.
    Ccdf,
    /// The same as a percentage of the set, log-log.
    Normalized,
    /// Citations against inverted percentage, linear.
    Profile,
}

#[derive(Debug, Args)]
struct Output {
    /// Write data here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Round percentages to 2 decimals and medians to 1, half-up.
    #[arg(long)]
    paper_rounding: bool,
}

#[derive(Debug, Subcommand)]
enum CommandArgs {
    /// Build a reference store from record files or exports.
    BuildRef {
        /// CSV with header `category,year,citations[,count]`.
        #[arg(long = "records")]
        records: Vec<PathBuf>,
        /// Tab-delimited bibliographic export.
        #[arg(long = "export")]
        exports: Vec<PathBuf>,
        #[arg(long, default_value = "TC")]
        citations_column: String,
        #[arg(long, default_value = "PY")]
        year_column: String,
        /// Column with `;`-separated subject categories.
        #[arg(long, default_value = "WC", conflicts_with = "category")]
        category_column: String,
        /// Assign every export row to this category.
        #[arg(long)]
        category: Option<String>,
        /// Include the sixteen synthetic sets pinned to the published tables.
        #[arg(long)]
        fixtures: bool,
        /// Store file to write.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Percentile profile of one citation count.
    Rank {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        category: String,
        #[arg(long)]
        year: i32,
        #[arg(long)]
        citations: u64,
        #[arg(long, value_enum)]
        rule: Option<RuleArg>,
        #[arg(long, value_enum, default_value_t = OrientationArg::Inverted)]
        orientation: OrientationArg,
        #[command(flatten)]
        output: Output,
    },
    /// Comparison table of (year, citations) items across categories.
    Table {
        #[arg(long)]
        store: PathBuf,
        /// Comma-separated subject categories.
        #[arg(long, value_delimiter = ',', required = true)]
        categories: Vec<String>,
        /// CSV with header `year,citations`.
        #[arg(long, conflicts_with = "item")]
        items: Option<PathBuf>,
        /// Inline item `YEAR:CITATIONS`; repeatable.
        #[arg(long)]
        item: Vec<String>,
        /// Adds a point-percentile column under this rule.
        #[arg(long, value_enum)]
        rule: Option<RuleArg>,
        #[arg(long, value_enum, default_value_t = OrientationArg::Inverted)]
        orientation: OrientationArg,
        #[command(flatten)]
        output: Output,
    },
    /// Improvement factor between the medians of two category groups.
    Factors {
        #[arg(long)]
        store: PathBuf,
        #[arg(long, conflicts_with = "item")]
        items: Option<PathBuf>,
        #[arg(long)]
        item: Vec<String>,
        /// Comma-separated categories; several are averaged into one series.
        #[arg(long, value_delimiter = ',', required = true)]
        numerator: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        denominator: Vec<String>,
        /// Divide medians as printed in a table (one decimal, half-up)
        /// instead of unrounded medians.
        #[arg(long)]
        printed_medians: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Ranks candidate journals for one citation count.
    Whatif {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        citations: u64,
        #[arg(long)]
        year: i32,
        /// JSON object mapping journal labels to category lists.
        #[arg(long)]
        journals: PathBuf,
        #[arg(long, value_enum)]
        rule: Option<RuleArg>,
        #[command(flatten)]
        output: Output,
    },
    /// Shares of a portfolio in percentile rank classes.
    Topshare {
        #[arg(long)]
        store: PathBuf,
        /// File with header `categories|year|citations`.
        #[arg(long)]
        portfolio: PathBuf,
        /// Comma-separated percentage thresholds, e.g. `10,25,50`.
        #[arg(long, default_value = "10")]
        thresholds: String,
        #[arg(long, value_enum)]
        rule: Option<RuleArg>,
        /// Evaluate in floating point instead of exact rationals.
        #[arg(long)]
        float: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Staircase chart of one or more reference sets.
    Plot {
        #[arg(long)]
        store: PathBuf,
        /// Reference set `CATEGORY:YEAR`; repeatable.
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
        #[arg(long, value_enum, default_value_t = PlotKind::Ccdf)]
        kind: PlotKind,
        /// Chart file to write.
        #[arg(long)]
        out: PathBuf,
        /// Series table file; standard output when absent.
        #[arg(long)]
        series_out: Option<PathBuf>,
        /// Shift singly cited points right by this factor when drawing.
        #[arg(long, num_args = 0..=1, default_missing_value = "1.05")]
        jitter: Option<f64>,
        #[arg(long)]
        title: Option<String>,
    },
}

/// Where table items come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ItemSource {
    File(PathBuf),
    Inline(Vec<TableItem>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    BuildRef {
        records: Vec<PathBuf>,
        exports: Vec<PathBuf>,
        columns: ExportColumns,
        fixtures: bool,
    },
    Rank {
        store: PathBuf,
        key: ReferenceSetKey,
        citations: u64,
    },
    Table {
        store: PathBuf,
        items: ItemSource,
        categories: Vec<String>,
    },
    Factors {
        store: PathBuf,
        items: ItemSource,
        numerator: Vec<String>,
        denominator: Vec<String>,
        printed_medians: bool,
    },
    WhatIf {
        store: PathBuf,
        citations: u64,
        year: i32,
        journals: PathBuf,
    },
    TopShare {
        store: PathBuf,
        portfolio: PathBuf,
        float: bool,
    },
    Plot {
        store: PathBuf,
        sets: Vec<ReferenceSetKey>,
        kind: PlotKind,
        series_out: Option<PathBuf>,
        jitter: Option<f64>,
        title: Option<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::BuildRef { .. } => "build-ref",
            Command::Rank { .. } => "rank",
            Command::Table { .. } => "table",
            Command::Factors { .. } => "factors",
            Command::WhatIf { .. } => "whatif",
            Command::TopShare { .. } => "topshare",
            Command::Plot { .. } => "plot",
        }
    }
}

/// A fully resolved invocation. Every path is absolute and every default is
/// spelled out.
#[derive(Debug, Clone, PartialEq)]
pub struct RunPlan {
    pub command: Command,
    pub attribution: Attribution,
    /// Whether `--rule` was given; `table` only adds a point column then.
    pub rule_explicit: bool,
    pub orientation: Orientation,
    pub thresholds: ThresholdScheme,
    pub rounding: Rounding,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

/// Outcome of argument parsing.
#[derive(Debug)]
pub enum Invocation {
    Run(RunPlan),
    /// Help or version text for standard output.
    Info(String),
}

fn absolute(path: PathBuf) -> Result<PathBuf> {
    std::path::absolute(&path).map_err(|e| Error::io(path, e))
}

fn apply_output(plan: &mut RunPlan, output: Output) -> Result<()> {
    plan.out = output.out.map(absolute).transpose()?;
    plan.format = format(output.format);
    plan.rounding = if output.paper_rounding {
        Rounding::Paper
    } else {
        Rounding::Fine
    };
    Ok(())
}

fn absolute_all(paths: Vec<PathBuf>) -> Result<Vec<PathBuf>> {
    paths.into_iter().map(absolute).collect()
}

fn point_rule(rule: Option<RuleArg>, command: &str) -> Result<Attribution> {
    match rule.unwrap_or(RuleArg::Mid) {
        RuleArg::Best => Ok(Attribution::Point(TieRule::BestRank)),
        RuleArg::Worst => Ok(Attribution::Point(TieRule::WorstRank)),
        RuleArg::Mid => Ok(Attribution::Point(TieRule::MidRank)),
        RuleArg::Fractional => Err(Error::Usage(format!(
            "`--rule fractional` is not a point percentile and is not accepted by `{command}`"
        ))),
    }
}

fn any_rule(rule: Option<RuleArg>) -> Attribution {
    match rule {
        Some(RuleArg::Fractional) => Attribution::Fractional,
        other => point_rule(other, "").expect("point rules always convert"),
    }
}

fn orientation(arg: OrientationArg) -> Orientation {
    match arg {
        OrientationArg::Inverted => Orientation::Inverted,
        OrientationArg::Standard => Orientation::Standard,
    }
}

fn format(arg: FormatArg) -> OutputFormat {
    match arg {
        FormatArg::Text => OutputFormat::Text,
        FormatArg::Tsv => OutputFormat::Tsv,
    }
}

/// Parses `10,25,50` into a validated scheme.
pub fn parse_thresholds(text: &str) -> Result<ThresholdScheme> {
    let values = text
        .split(',')
        .map(|part| {
            parse_decimal(part.trim()).ok_or_else(|| Error::Usage(format!("invalid threshold `{}`", part.trim())))
        })
        .collect::<Result<Vec<Exact>>>()?;
    ThresholdScheme::new(values).map_err(|e| Error::Usage(e.to_string()))
}

fn parse_set(text: &str) -> Result<ReferenceSetKey> {
    let bad = || Error::Usage(format!("invalid set `{text}`, expected CATEGORY:YEAR"));
    let (category, year) = text.rsplit_once(':').ok_or_else(bad)?;
    let category = category.trim();
    if category.is_empty() {
        return Err(bad());
    }
    let year: i32 = year.trim().parse().map_err(|_| bad())?;
    Ok(ReferenceSetKey::new(category, year))
}

fn item_source(file: Option<PathBuf>, inline: Vec<String>) -> Result<ItemSource> {
    match file {
        Some(path) => Ok(ItemSource::File(absolute(path)?)),
        None if inline.is_empty() => Err(Error::Usage(
            "give `--items FILE` or at least one `--item YEAR:CITATIONS`".into(),
        )),
        None => Ok(ItemSource::Inline(
            inline.iter().map(|s| inputs::parse_item(s)).collect::<Result<_>>()?,
        )),
    }
}

fn categories(list: Vec<String>, flag: &str) -> Result<Vec<String>> {
    let list: Vec<String> = list.iter().map(|c| c.trim().to_string()).collect();
    if list.is_empty() || list.iter().any(String::is_empty) {
        return Err(Error::Usage(format!("`--{flag}` needs non-empty category names")));
    }
    Ok(list)
}

/// Parses a full argument vector, program name first.
pub fn parse_invocation<I, T>(argv: I) -> Result<Invocation>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(Invocation::Info(err.to_string())),
                _ => Err(Error::Usage(err.to_string().trim_end().to_string())),
            };
        }
    };

    let mut plan = RunPlan {
        command: Command::Rank {
            store: PathBuf::new(),
            key: ReferenceSetKey::new("", 0),
            citations: 0,
        },
        attribution: Attribution::Point(TieRule::MidRank),
        rule_explicit: false,
        orientation: Orientation::Inverted,
        thresholds: ThresholdScheme::top(Exact::from_integer(10.into())).expect("10 is a valid threshold"),
        rounding: Rounding::Fine,
        format: OutputFormat::Text,
        out: None,
    };

    plan.command = match cli.command {
        CommandArgs::BuildRef {
            records,
            exports,
            citations_column,
            year_column,
            category_column,
            category,
            fixtures,
            out,
            format: fmt,
        } => {
            if records.is_empty() && exports.is_empty() && !fixtures {
                return Err(Error::Usage("give `--records`, `--export` or `--fixtures`".into()));
            }
            plan.out = Some(absolute(out)?);
            plan.format = format(fmt);
            let category = match category {
                Some(fixed) => CategorySource::Fixed(fixed),
                None => CategorySource::Column(category_column),
            };
            Command::BuildRef {
                records: absolute_all(records)?,
                exports: absolute_all(exports)?,
                columns: ExportColumns {
                    citations: citations_column,
                    year: year_column,
                    category,
                },
                fixtures,
            }
        }
        CommandArgs::Rank {
            store,
            category,
            year,
            citations,
            rule,
            orientation: o,
            output,
        } => {
            plan.attribution = point_rule(rule, "rank")?;
            plan.rule_explicit = rule.is_some();
            plan.orientation = orientation(o);
            apply_output(&mut plan, output)?;
            let category = category.trim().to_string();
            if category.is_empty() {
                return Err(Error::Usage("`--category` must not be empty".into()));
            }
            Command::Rank {
                store: absolute(store)?,
                key: ReferenceSetKey::new(category, year),
                citations,
            }
        }
        CommandArgs::Table {
            store,
            categories: cats,
            items,
            item,
            rule,
            orientation: o,
            output,
        } => {
            plan.attribution = point_rule(rule, "table")?;
            plan.rule_explicit = rule.is_some();
            plan.orientation = orientation(o);
            apply_output(&mut plan, output)?;
            Command::Table {
                store: absolute(store)?,
                items: item_source(items, item)?,
                categories: categories(cats, "categories")?,
            }
        }
        CommandArgs::Factors {
            store,
            items,
            item,
            numerator,
            denominator,
            printed_medians,
            output,
        } => {
            apply_output(&mut plan, output)?;
            Command::Factors {
                store: absolute(store)?,
                items: item_source(items, item)?,
                numerator: categories(numerator, "numerator")?,
                denominator: categories(denominator, "denominator")?,
                printed_medians,
            }
        }
        CommandArgs::Whatif {
            store,
            citations,
            year,
            journals,
            rule,
            output,
        } => {
            plan.attribution = point_rule(rule, "whatif")?;
            plan.rule_explicit = rule.is_some();
            apply_output(&mut plan, output)?;
            Command::WhatIf {
                store: absolute(store)?,
                citations,
                year,
                journals: absolute(journals)?,
            }
        }
        CommandArgs::Topshare {
            store,
            portfolio,
            thresholds,
            rule,
            float,
            output,
        } => {
            plan.attribution = any_rule(rule);
            plan.rule_explicit = rule.is_some();
            plan.thresholds = parse_thresholds(&thresholds)?;
            apply_output(&mut plan, output)?;
            Command::TopShare {
                store: absolute(store)?,
                portfolio: absolute(portfolio)?,
                float,
            }
        }
        CommandArgs::Plot {
            store,
            sets,
            kind,
            out,
            series_out,
            jitter,
            title,
        } => {
            if let Some(factor) = jitter {
                if kind == PlotKind::Profile {
                    return Err(Error::Usage(
                        "`--jitter` applies to ccdf and normalized charts only".into(),
                    ));
                }
                if !(factor.is_finite() && factor > 0.0) {
                    return Err(Error::Usage(format!("jitter factor must be positive, got {factor}")));
                }
            }
            plan.out = Some(absolute(out)?);
            Command::Plot {
                store: absolute(store)?,
                sets: sets.iter().map(|s| parse_set(s)).collect::<Result<_>>()?,
                kind,
                series_out: series_out.map(absolute).transpose()?,
                jitter,
                title,
            }
        }
    };
    Ok(Invocation::Run(plan))
}

/// Entry point for the binary: parses, runs, reports and returns the exit
/// status.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_invocation(argv).and_then(|invocation| match invocation {
        Invocation::Info(text) => {
            print!("{text}");
            Ok(exit::OK)
        }
        Invocation::Run(plan) => execute(&plan).map(|()| exit::OK),
    });
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("citerank: {err}");
            err.exit_code()
        }
    }
}

/// Runs a plan. Data goes to standard output or the named files, notes to
/// standard error.
pub fn execute(plan: &RunPlan) -> Result<()> {
    match &plan.command {
        Command::BuildRef {
            records,
            exports,
            columns,
            fixtures,
        } => build_ref(plan, records, exports, columns, *fixtures),
        Command::Rank { store, key, citations } => rank(plan, &store_file::load(store)?, key, *citations),
        Command::Table {
            store,
            items,
            categories,
        } => {
            let items = load_items(items)?;
            table(plan, &store_file::load(store)?, &items, categories)
        }
        Command::Factors {
            store,
            items,
            numerator,
            denominator,
            printed_medians,
        } => {
            let items = load_items(items)?;
            let store = store_file::load(store)?;
            factors(plan, &store, &items, numerator, denominator, *printed_medians)
        }
        Command::WhatIf {
            store,
            citations,
            year,
            journals,
        } => {
            let text = fs::read_to_string(journals).map_err(|e| Error::io(journals, e))?;
            let journals = inputs::read_journals(&text, &display(journals))?;
            whatif(plan, &store_file::load(store)?, *citations, *year, &journals)
        }
        Command::TopShare {
            store,
            portfolio,
            float,
        } => {
            let file = File::open(portfolio).map_err(|e| Error::io(portfolio, e))?;
            let items = inputs::read_portfolio(BufReader::new(file), &display(portfolio))?;
            topshare(plan, &store_file::load(store)?, &items, *float)
        }
        Command::Plot {
            store,
            sets,
            kind,
            series_out,
            jitter,
            title,
        } => plot(
            plan,
            &store_file::load(store)?,
            sets,
            *kind,
            series_out.as_deref(),
            *jitter,
            title.clone(),
        ),
    }
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

fn file_label(path: &Path) -> String {
    path.file_name()
        .map_or_else(|| display(path), |name| name.to_string_lossy().into_owned())
}

fn load_items(source: &ItemSource) -> Result<Vec<TableItem>> {
    match source {
        ItemSource::Inline(items) => Ok(items.clone()),
        ItemSource::File(path) => {
            let file = File::open(path).map_err(|e| Error::io(path, e))?;
            inputs::read_items(BufReader::new(file), &display(path))
        }
    }
}

fn emit(plan: &RunPlan, text: &str) -> Result<()> {
    match &plan.out {
        Some(path) => fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => write_stdout(text),
    }
}

fn write_stdout(text: &str) -> Result<()> {
    let mut stdout = io::stdout().lock();
    stdout
        .write_all(text.as_bytes())
        .and_then(|()| stdout.flush())
        .map_err(|e| Error::io("<stdout>", e))
}

fn modified_unix(path: &Path) -> Result<Option<i64>> {
    let meta = fs::metadata(path).map_err(|e| Error::io(path, e))?;
    Ok(meta
        .modified()
        .ok()
        .and_then(|t| t.duration_since(UNIX_EPOCH).ok())
        .and_then(|d| i64::try_from(d.as_secs()).ok()))
}

fn build_ref(
    plan: &RunPlan,
    records: &[PathBuf],
    exports: &[PathBuf],
    columns: &ExportColumns,
    with_fixtures: bool,
) -> Result<()> {
    let mut store = ReferenceStore::new();
    if with_fixtures {
        store.merge(&fixtures::paper_store());
    }
    for path in records {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let rows = read_records(BufReader::new(file), &display(path))?;
        let provenance = Provenance::new(file_label(path), modified_unix(path)?);
        store.merge(&ingest_valid(&rows, &provenance));
    }
    for path in exports {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let rows = read_export(BufReader::new(file), &display(path), columns)?;
        let provenance = Provenance::new(file_label(path), modified_unix(path)?);
        store.merge(&ingest_valid(&rows, &provenance));
    }
    let out = plan
        .out
        .as_ref()
        .ok_or_else(|| Error::Internal("build-ref without an output path".into()))?;
    store_file::save(&store, out)?;

    let header = ["Subject category", "Year", "No.arts.", "Max. cits.", "Cited"].map(String::from);
    let rows: Vec<Vec<String>> = summarize(&store)
        .into_iter()
        .map(|s| {
            vec![
                s.key.category,
                s.key.year.to_string(),
                s.total.to_string(),
                s.max_citations.to_string(),
                s.cited.to_string(),
            ]
        })
        .collect();
    write_stdout(&layout(&header, &rows, plan.format))
}

fn rule_of(plan: &RunPlan) -> TieRule {
    match plan.attribution {
        Attribution::Point(rule) => rule,
        Attribution::Fractional => TieRule::MidRank,
    }
}

fn orientation_name(orientation: Orientation) -> &'static str {
    match orientation {
        Orientation::Inverted => "inverted",
        Orientation::Standard => "standard",
    }
}

fn rank(plan: &RunPlan, store: &ReferenceStore, key: &ReferenceSetKey, citations: u64) -> Result<()> {
    let refset = store.get(key)?;
    let mut profile = percentile_profile(refset, citations)?;
    if plan.orientation == Orientation::Standard {
        profile = to_standard(&profile)?;
    }
    let rule = rule_of(plan);
    let r = plan.rounding;
    let mut rows = vec![
        vec!["Reference set".into(), key.to_string()],
        vec!["Orientation".into(), orientation_name(profile.orientation).into()],
        vec!["No.cits.".into(), citations.to_string()],
        vec!["No.arts.".into(), refset.total().to_string()],
        vec![
            "Member".into(),
            if profile.member {
                "yes".into()
            } else {
                "no (hypothetical insertion)".into()
            },
        ],
        vec![
            "Range of ranks".into(),
            format!("{} - {}", profile.rank_lo, profile.rank_hi),
        ],
        vec![
            "Percentage range".into(),
            format!("{} - {}", r.percentage(&profile.pct_lo), r.percentage(&profile.pct_hi)),
        ],
        vec!["Median".into(), r.median(&profile.median)],
        vec![
            format!("Point ({})", report::rule_name(rule)),
            r.percentage(profile.point(rule)),
        ],
    ];
    if profile.member {
        let score = p100(refset, citations)?;
        let mut text = r.percentage(&score.score);
        if score.degenerate {
            text.push_str(" (single distinct value)");
        }
        rows.push(vec!["P100".into(), text]);
    }
    let header = ["Quantity", "Value"].map(String::from);
    emit(plan, &layout(&header, &rows, plan.format))
}

fn table(plan: &RunPlan, store: &ReferenceStore, items: &[TableItem], categories: &[String]) -> Result<()> {
    let mut rows = citerank_core::comparison_table(items, store, categories)?;
    if plan.orientation == Orientation::Standard {
        rows = rows.iter().map(|row| row.to_standard()).collect();
    }
    let shape = TableLayout::for_query(items.len(), categories.len());
    let point = plan.rule_explicit.then(|| rule_of(plan));
    emit(
        plan,
        &report::comparison_table(&rows, shape, plan.rounding, plan.format, point),
    )
}

/// Medians printed in a table carry one decimal.
const PRINTED_MEDIAN_PLACES: usize = 1;

/// One median series per category group; a group of several categories is
/// their item-wise mean.
fn series_for(
    store: &ReferenceStore,
    items: &[TableItem],
    categories: &[String],
    printed: bool,
) -> Result<MedianSeries> {
    let label = categories.join("+");
    let parts = categories
        .iter()
        .map(|category| {
            let rows = citerank_core::comparison_table(items, store, std::slice::from_ref(category))?;
            let series = MedianSeries::from_rows(category.clone(), &rows);
            Ok(if printed {
                series.rounded(PRINTED_MEDIAN_PLACES)
            } else {
                series
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if parts.len() == 1 {
        let mut only = parts.into_iter().next().expect("one part");
        only.label = label;
        return Ok(only);
    }
    Ok(MedianSeries::average(label, &parts)?)
}

fn factors(
    plan: &RunPlan,
    store: &ReferenceStore,
    items: &[TableItem],
    numerator: &[String],
    denominator: &[String],
    printed_medians: bool,
) -> Result<()> {
    let num = series_for(store, items, numerator, printed_medians)?;
    let den = series_for(store, items, denominator, printed_medians)?;
    let factor = citerank_core::improvement_factor(&num, &den)?;
    let header = ["Numerator", "Denominator", "Items", "Factor"].map(String::from);
    let rows = vec![vec![
        factor.numerator_label.clone(),
        factor.denominator_label.clone(),
        factor.rows.to_string(),
        plan.rounding.factor(&factor.factor),
    ]];
    emit(plan, &layout(&header, &rows, plan.format))
}

fn whatif(
    plan: &RunPlan,
    store: &ReferenceStore,
    citations: u64,
    year: i32,
    journals: &[citerank_core::Journal],
) -> Result<()> {
    let ranking = what_if_ranking(citations, year, journals, store, rule_of(plan))?;
    let header = ["Rank", "Journal", "Averaged percentage", "Member"].map(String::from);
    let rows: Vec<Vec<String>> = ranking
        .iter()
        .enumerate()
        .map(|(i, entry)| {
            vec![
                (i + 1).to_string(),
                entry.label.clone(),
                plan.rounding.percentage(&entry.percentage),
                if entry.member {
                    "yes".into()
                } else {
                    "no (hypothetical insertion)".into()
                },
            ]
        })
        .collect();
    let mut text = layout(&header, &rows, plan.format);
    match plan.format {
        OutputFormat::Text => {
            text.push('\n');
            text.push_str(SAME_CITATIONS_NOTE);
            text.push('\n');
        }
        OutputFormat::Tsv => eprintln!("{SAME_CITATIONS_NOTE}"),
    }
    emit(plan, &text)
}

fn topshare(plan: &RunPlan, store: &ReferenceStore, items: &[citerank_core::PortfolioItem], float: bool) -> Result<()> {
    let scheme = &plan.thresholds;
    let shares: Vec<String> = if float {
        let weights: ClassWeights<f64> = portfolio_weights_in(items, store, scheme, plan.attribution)?;
        let places = match plan.rounding {
            Rounding::Paper => 2,
            Rounding::Fine => 4,
        };
        weights.weights.iter().map(|w| format!("{w:.places$}")).collect()
    } else {
        let weights: ClassWeights<Exact> = portfolio_weights_in(items, store, scheme, plan.attribution)?;
        weights.weights.iter().map(|w| plan.rounding.factor(w)).collect()
    };
    let bounds = scheme.boundaries();
    let header = ["Class", "Percentages", "Share"].map(String::from);
    let rows: Vec<Vec<String>> = shares
        .into_iter()
        .enumerate()
        .map(|(i, share)| {
            let (lo, hi) = (&bounds[i], &bounds[i + 1]);
            vec![
                (i + 1).to_string(),
                format!("({}, {}]", decimal(lo), decimal(hi)),
                share,
            ]
        })
        .collect();
    emit(plan, &layout(&header, &rows, plan.format))
}

fn decimal(value: &Exact) -> String {
    if value.is_integer() {
        value.to_integer().to_string()
    } else {
        to_f64(value).to_string()
    }
}

fn plot(
    plan: &RunPlan,
    store: &ReferenceStore,
    sets: &[ReferenceSetKey],
    kind: PlotKind,
    series_out: Option<&Path>,
    jitter: Option<f64>,
    title: Option<String>,
) -> Result<()> {
    let series = sets
        .iter()
        .map(|key| {
            let refset = store.get(key)?;
            let label = format!("{} {}", key.category, key.year);
            Ok(match kind {
                PlotKind::Ccdf => ccdf_series(refset, label)?,
                PlotKind::Normalized => normalized_series(refset, label)?,
                PlotKind::Profile => profile_series(refset, label)?,
            })
        })
        .collect::<Result<Vec<StepSeries>>>()?;
    let (x_label, y_label) = match kind {
        PlotKind::Ccdf => ("citations", "papers with more citations"),
        PlotKind::Normalized => ("citations", "percentage of papers with more citations"),
        PlotKind::Profile => ("percentage (inverted)", "citations"),
    };
    let options = ChartOptions {
        title,
        x_label: x_label.into(),
        y_label: y_label.into(),
        jitter,
        ..ChartOptions::default()
    };
    let chart = render_chart(&series, &options)?;
    debug_assert_eq!(chart.table, series_table(&series));
    let out = plan
        .out
        .as_ref()
        .ok_or_else(|| Error::Internal("plot without an output path".into()))?;
    fs::write(out, &chart.svg).map_err(|e| Error::io(out, e))?;
    match series_out {
        Some(path) => fs::write(path, &chart.table).map_err(|e| Error::io(path, e)),
        None => write_stdout(&chart.table),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plan(args: &[&str]) -> Result<RunPlan> {
        let argv = std::iter::once("citerank").chain(args.iter().copied());
        match parse_invocation(argv)? {
            Invocation::Run(plan) => Ok(plan),
            Invocation::Info(text) => panic!("unexpected info: {text}"),
        }
    }

    #[test]
    fn rank_defaults() {
        let p = plan(&[
            "rank",
            "--store",
            "s",
            "--category",
            "PhyMu",
            "--year",
            "2007",
            "--citations",
            "26",
        ])
        .unwrap();
        assert_eq!(p.attribution, Attribution::Point(TieRule::MidRank));
        assert_eq!(p.orientation, Orientation::Inverted);
        assert_eq!(p.rounding, Rounding::Fine);
        assert!(!p.rule_explicit);
        match p.command {
            Command::Rank { store, key, citations } => {
                assert!(store.is_absolute());
                assert_eq!(key, ReferenceSetKey::new("PhyMu", 2007));
                assert_eq!(citations, 26);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn repeated_rule_conflicts() {
        let err = plan(&[
            "rank",
            "--store",
            "s",
            "--category",
            "A",
            "--year",
            "1",
            "--citations",
            "1",
            "--rule",
            "best",
            "--rule",
            "worst",
        ])
        .unwrap_err();
        assert_eq!(err.exit_code(), exit::MALFORMED_INPUT);
    }

    #[test]
    fn fractional_only_where_weights_are_produced() {
        assert!(plan(&[
            "rank",
            "--store",
            "s",
            "--category",
            "A",
            "--year",
            "1",
            "--citations",
            "1",
            "--rule",
            "fractional"
        ])
        .is_err());
        assert!(plan(&[
            "table",
            "--store",
            "s",
            "--categories",
            "A",
            "--item",
            "1:1",
            "--rule",
            "fractional"
        ])
        .is_err());
        let p = plan(&[
            "topshare",
            "--store",
            "s",
            "--portfolio",
            "p",
            "--rule",
            "fractional",
            "--thresholds",
            "10,25,50",
        ])
        .unwrap();
        assert_eq!(p.attribution, Attribution::Fractional);
        assert_eq!(p.thresholds.class_count(), 4);
    }

    #[test]
    fn whatif_plan() {
        let p = plan(&[
            "whatif",
            "--citations",
            "32",
            "--year",
            "2008",
            "--journals",
            "j.json",
            "--store",
            "s",
        ])
        .unwrap();
        assert_eq!(p.command.name(), "whatif");
    }

    #[test]
    fn unknown_and_malformed_flags() {
        assert!(plan(&["rank", "--bogus"]).is_err());
        assert!(plan(&["topshare", "--store", "s", "--portfolio", "p", "--thresholds", "50,10"]).is_err());
        assert!(plan(&["table", "--store", "s", "--categories", "A"]).is_err());
        assert!(plan(&["plot", "--store", "s", "--set", "A-2007", "--out", "o.svg"]).is_err());
        assert!(
            plan(&["plot", "--store", "s", "--set", "A:2007", "--out", "o.svg", "--kind", "profile", "--jitter"])
                .is_err()
        );
        assert!(plan(&[]).is_err());
    }

    #[test]
    fn jitter_default_and_value() {
        let p = plan(&["plot", "--store", "s", "--set", "A:2007", "--out", "o.svg", "--jitter"]).unwrap();
        assert!(matches!(p.command, Command::Plot { jitter: Some(j), .. } if j == DEFAULT_JITTER));
        let p = plan(&[
            "plot", "--store", "s", "--set", "A:2007", "--out", "o.svg", "--jitter", "1.2",
        ])
        .unwrap();
        assert!(matches!(p.command, Command::Plot { jitter: Some(j), .. } if j == 1.2));
    }

    #[test]
    fn help_is_information() {
        assert!(matches!(
            parse_invocation(["citerank", "--help"]).unwrap(),
            Invocation::Info(_)
        ));
    }
}
