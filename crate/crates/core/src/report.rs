//! Configuration-driven sweeps: slice the corpus, merge phrases, train
//! (or reuse cached) embeddings, run every configured association test,
//! and write CSV, JSON, and SVG reports.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::chart::{self, ChartRow, Grouping};
use crate::corpus::{self, Corpus, CorpusSlice};
use crate::embedding::{train_streams, Embedding, Hyperparams};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::phrases::{extract_passes, PhraseConfig};
use crate::weat::{run_test, WeatOptions, WeatResult, WordList};

pub use crate::fixtures::bundled_lists as bundled_fixtures;

fn default_iterations() -> u32 {
    1000
}

/// Resampling settings for standard errors.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BootstrapConfig {
    pub iterations: u32,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        BootstrapConfig {
            iterations: default_iterations(),
        }
    }
}

fn default_true() -> bool {
    true
}

/// Which sub-corpora to train on. Every temporal cutoff produces a
/// window from that year through `end_year` (latest document year when
/// unset), so earlier cutoffs give supersets.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SliceConfig {
    pub full: bool,
    pub temporal_cutoffs: Vec<i32>,
    pub end_year: Option<i32>,
    pub topical: Vec<String>,
}

impl Default for SliceConfig {
    fn default() -> Self {
        SliceConfig {
            full: true,
            temporal_cutoffs: Vec::new(),
            end_year: None,
            topical: Vec::new(),
        }
    }
}

/// Where a named word list comes from: exactly one of a bundled list
/// name or a file path (one term per line).
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ListSource {
    pub bundled: Option<String>,
    pub path: Option<PathBuf>,
}

/// One association test over four named lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestSpec {
    pub id: String,
    pub target_x: String,
    pub target_y: String,
    pub attr_a: String,
    pub attr_b: String,
    #[serde(default = "default_true")]
    pub balance_targets: bool,
}

fn default_jobs() -> usize {
    1
}

/// A whole sweep, deserialized from one TOML file.
///
/// List names referenced by tests resolve through the `[lists]` table
/// first (a `bundled` catalog name or a file `path`), then fall back to
/// the bundled catalog directly.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub corpus: PathBuf,
    pub output_dir: PathBuf,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_jobs")]
    pub jobs: usize,
    /// Documents dated after this year are rejected at ingestion;
    /// defaults to the current year.
    #[serde(default)]
    pub max_year: Option<i32>,
    #[serde(default)]
    pub hyperparams: Hyperparams,
    #[serde(default)]
    pub phrases: PhraseConfig,
    #[serde(default)]
    pub bootstrap: BootstrapConfig,
    #[serde(default)]
    pub slices: SliceConfig,
    #[serde(default)]
    pub lists: BTreeMap<String, ListSource>,
    #[serde(default)]
    pub tests: Vec<TestSpec>,
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<RunConfig> {
        toml::from_str(text).map_err(|e| Error::Config(format!("config parse error: {e}")))
    }

    /// Reads a config file; relative paths inside it are taken relative
    /// to the file's directory.
    pub fn from_path(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config = RunConfig::from_toml_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        config.anchor_paths(base);
        Ok(config)
    }

    fn anchor_paths(&mut self, base: &Path) {
        let anchor = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&p);
            }
        };
        anchor(&mut self.corpus);
        anchor(&mut self.output_dir);
        for source in self.lists.values_mut() {
            if let Some(p) = &mut source.path {
                anchor(p);
            }
        }
    }

    fn resolve_list(&self, name: &str) -> Result<WordList> {
        if let Some(source) = self.lists.get(name) {
            return match (&source.bundled, &source.path) {
                (Some(bundled), None) => {
                    let list = fixtures::bundled(bundled).ok_or_else(|| {
                        Error::Config(format!(
                            "list {name:?} references unknown bundled list {bundled:?}"
                        ))
                    })?;
                    Ok(WordList::new(name, list.terms().iter().cloned()))
                }
                (None, Some(path)) => {
                    let text =
                        std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                    let list = WordList::from_lines(name, &text);
                    if list.is_empty() {
                        return Err(Error::Config(format!(
                            "list file {} has no terms",
                            path.display()
                        )));
                    }
                    Ok(list)
                }
                _ => Err(Error::Config(format!(
                    "list {name:?} must set exactly one of `bundled` or `path`"
                ))),
            };
        }
        fixtures::bundled(name).ok_or_else(|| {
            Error::Config(format!(
                "test references list {name:?}, which is neither configured nor bundled"
            ))
        })
    }

    /// Checks invariants and materializes every referenced list.
    pub fn resolve(&self) -> Result<BTreeMap<String, WordList>> {
        self.hyperparams.validate()?;
        if self.bootstrap.iterations == 0 {
            return Err(Error::Config("bootstrap iterations must be positive".into()));
        }
        if self.tests.is_empty() {
            return Err(Error::Config("no tests configured".into()));
        }
        if !self.slices.full
            && self.slices.temporal_cutoffs.is_empty()
            && self.slices.topical.is_empty()
        {
            return Err(Error::Config("no slices configured".into()));
        }
        let mut ids = BTreeSet::new();
        for test in &self.tests {
            if !ids.insert(test.id.as_str()) {
                return Err(Error::Config(format!("duplicate test id {:?}", test.id)));
            }
        }
        let mut lists = BTreeMap::new();
        for test in &self.tests {
            for name in [&test.target_x, &test.target_y, &test.attr_a, &test.attr_b] {
                if !lists.contains_key(name.as_str()) {
                    lists.insert(name.clone(), self.resolve_list(name)?);
                }
            }
        }
        Ok(lists)
    }
}

/// One CSV line: a test result or a structured failure.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub test_id: String,
    pub slice_label: String,
    pub target_x: String,
    pub target_y: String,
    pub attr_a: String,
    pub attr_b: String,
    pub result: Option<WeatResult>,
    pub error: Option<String>,
}

pub const CSV_COLUMNS: [&str; 14] = [
    "test_id",
    "slice_label",
    "target_x",
    "target_y",
    "attr_a",
    "attr_b",
    "d",
    "se",
    "n_x",
    "n_y",
    "n_a",
    "n_b",
    "dropped_count",
    "error",
];

/// Renders rows to CSV text with a fixed column set.
pub fn rows_to_csv(rows: &[ReportRow]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Config(format!("csv encoding: {e}"));
    writer.write_record(CSV_COLUMNS).map_err(csv_err)?;
    for row in rows {
        let mut record = vec![
            row.test_id.clone(),
            row.slice_label.clone(),
            row.target_x.clone(),
            row.target_y.clone(),
            row.attr_a.clone(),
            row.attr_b.clone(),
        ];
        match &row.result {
            Some(r) => record.extend([
                r.d.to_string(),
                r.se.to_string(),
                r.n_x.to_string(),
                r.n_y.to_string(),
                r.n_a.to_string(),
                r.n_b.to_string(),
                r.dropped.to_string(),
                String::new(),
            ]),
            None => {
                record.extend(std::iter::repeat_n(String::new(), 7));
                record.push(row.error.clone().unwrap_or_default());
            }
        }
        writer.write_record(&record).map_err(csv_err)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Config(format!("csv encoding: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(format!("csv encoding: {e}")))
}

/// Reads the plottable rows back out of a `report.csv`; error rows have
/// no effect size and are skipped.
pub fn chart_rows_from_csv(text: &str) -> Result<Vec<ChartRow>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let csv_err = |e: csv::Error| Error::Config(format!("report csv: {e}"));
    let headers = reader.headers().map_err(csv_err)?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Config(format!("report csv lacks column {name:?}")))
    };
    let (test_i, slice_i, d_i, se_i) = (
        column("test_id")?,
        column("slice_label")?,
        column("d")?,
        column("se")?,
    );
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_err)?;
        let field = |i: usize| record.get(i).unwrap_or("");
        if field(d_i).is_empty() {
            continue;
        }
        let number = |i: usize| {
            field(i)
                .parse::<f64>()
                .map_err(|e| Error::Config(format!("report csv value {:?}: {e}", field(i))))
        };
        rows.push(ChartRow {
            test_id: field(test_i).to_string(),
            slice_label: field(slice_i).to_string(),
            d: number(d_i)?,
            se: number(se_i)?,
        });
    }
    Ok(rows)
}

#[derive(Serialize)]
struct SliceInfo {
    label: String,
    selection: String,
    documents: usize,
}

#[derive(Serialize)]
struct Provenance<'a> {
    corpus: &'a Path,
    corpus_sha256: &'a str,
    seed: u64,
    jobs: usize,
    hyperparams: &'a Hyperparams,
    phrases: &'a PhraseConfig,
    bootstrap: &'a BootstrapConfig,
    slices: &'a [SliceInfo],
    lists: BTreeMap<&'a str, usize>,
    rows: &'a [ReportRow],
}

/// Paths written by a completed sweep.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub rows: Vec<ReportRow>,
    pub csv_path: PathBuf,
    pub json_path: PathBuf,
    /// Absent when every row failed.
    pub chart_path: Option<PathBuf>,
}

fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(hex(&Sha256::digest(&bytes)))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn cache_key(
    corpus_sha: &str,
    slice: &CorpusSlice,
    phrases: &PhraseConfig,
    hp: &Hyperparams,
    seed: u64,
) -> String {
    let mut hasher = Sha256::new();
    for part in [
        corpus_sha,
        &slice.label,
        &slice.selection,
        &serde_json::to_string(phrases).expect("serializable config"),
        &serde_json::to_string(hp).expect("serializable config"),
        &seed.to_string(),
    ] {
        hasher.update(part.as_bytes());
        hasher.update([0]);
    }
    hex(&hasher.finalize())[..32].to_string()
}

/// Trains the slice embedding or loads it from the on-disk cache. The
/// text format round-trips every component bit, so hits and misses are
/// interchangeable downstream.
fn slice_embedding(
    slice: &CorpusSlice,
    config: &RunConfig,
    corpus_sha: &str,
    cache_dir: &Path,
) -> Result<Embedding> {
    let key = cache_key(
        corpus_sha,
        slice,
        &config.phrases,
        &config.hyperparams,
        config.seed,
    );
    let cached = cache_dir.join(format!("{key}.vec"));
    if cached.exists() {
        if let Ok(emb) = Embedding::load_path(&cached) {
            return Ok(emb);
        }
    }
    let streams = slice.token_streams();
    let (merged, _) = extract_passes(&streams, &config.phrases);
    let emb = train_streams(&merged, &config.hyperparams, config.seed, 1, &slice.label)?;
    emb.save_path(&cached)?;
    Ok(emb)
}

fn build_slices<'a>(corpus: &'a Corpus, config: &SliceConfig) -> Result<Vec<CorpusSlice<'a>>> {
    let end_year = config.end_year.unwrap_or_else(|| {
        corpus
            .documents()
            .iter()
            .map(|d| d.year)
            .max()
            .unwrap_or(corpus::MIN_YEAR)
    });
    let mut slices = Vec::new();
    if config.full {
        slices.push(corpus::slice_full(corpus));
    }
    for &cutoff in &config.temporal_cutoffs {
        slices.push(corpus::slice_temporal(corpus, cutoff, end_year)?);
    }
    for division in &config.topical {
        slices.push(corpus::slice_topical(corpus, division, true)?);
    }
    let mut labels = BTreeSet::new();
    for slice in &slices {
        if !labels.insert(slice.label.as_str()) {
            return Err(Error::Config(format!(
                "duplicate slice label {:?}",
                slice.label
            )));
        }
    }
    Ok(slices)
}

/// Runs the whole sweep and writes `report.csv`, `report.json`, and
/// `report.svg` under the configured output directory.
///
/// Per-test failures become error rows; only corpus and configuration
/// problems abort. Each row's bootstrap seed is `seed + row_index`, so
/// results do not depend on scheduling.
pub fn run_suite(config: &RunConfig) -> Result<SuiteReport> {
    let lists = config.resolve()?;
    let max_year = config.max_year.unwrap_or_else(corpus::current_year);
    let corpus = Corpus::from_path(&config.corpus, max_year)?;
    let corpus_sha = sha256_file(&config.corpus)?;
    let slices = build_slices(&corpus, &config.slices)?;

    let cache_dir = config.output_dir.join("cache");
    std::fs::create_dir_all(&cache_dir).map_err(|e| Error::io(&cache_dir, e))?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;

    let mut rows = Vec::with_capacity(slices.len() * config.tests.len());
    let mut slice_infos = Vec::with_capacity(slices.len());
    for (si, slice) in slices.iter().enumerate() {
        slice_infos.push(SliceInfo {
            label: slice.label.clone(),
            selection: slice.selection.clone(),
            documents: slice.len(),
        });
        let emb = slice_embedding(slice, config, &corpus_sha, &cache_dir)?;
        let slice_rows: Vec<ReportRow> = pool.install(|| {
            config
                .tests
                .par_iter()
                .enumerate()
                .map(|(ti, test)| {
                    let row_index = (si * config.tests.len() + ti) as u64;
                    let opts = WeatOptions {
                        iterations: config.bootstrap.iterations,
                        seed: config.seed.wrapping_add(row_index),
                        balance_targets: test.balance_targets,
                    };
                    let outcome = run_test(
                        &emb,
                        &lists[&test.target_x],
                        &lists[&test.target_y],
                        &lists[&test.attr_a],
                        &lists[&test.attr_b],
                        &slice.label,
                        &opts,
                    );
                    let (result, error) = match outcome {
                        Ok(r) => (Some(r), None),
                        Err(e) => (None, Some(e.to_string())),
                    };
                    ReportRow {
                        test_id: test.id.clone(),
                        slice_label: slice.label.clone(),
                        target_x: test.target_x.clone(),
                        target_y: test.target_y.clone(),
                        attr_a: test.attr_a.clone(),
                        attr_b: test.attr_b.clone(),
                        result,
                        error,
                    }
                })
                .collect()
        });
        rows.extend(slice_rows);
    }

    let csv_path = config.output_dir.join("report.csv");
    std::fs::write(&csv_path, rows_to_csv(&rows)?).map_err(|e| Error::io(&csv_path, e))?;

    let provenance = Provenance {
        corpus: &config.corpus,
        corpus_sha256: &corpus_sha,
        seed: config.seed,
        jobs: config.jobs,
        hyperparams: &config.hyperparams,
        phrases: &config.phrases,
        bootstrap: &config.bootstrap,
        slices: &slice_infos,
        lists: lists.iter().map(|(k, v)| (k.as_str(), v.len())).collect(),
        rows: &rows,
    };
    let json_path = config.output_dir.join("report.json");
    let mut json = serde_json::to_string_pretty(&provenance)
        .map_err(|e| Error::Config(format!("provenance encoding: {e}")))?;
    json.push('\n');
    std::fs::write(&json_path, json).map_err(|e| Error::io(&json_path, e))?;

    let chart_rows: Vec<ChartRow> = rows
        .iter()
        .filter_map(|row| {
            row.result.as_ref().map(|r| ChartRow {
                test_id: row.test_id.clone(),
                slice_label: row.slice_label.clone(),
                d: r.d,
                se: r.se,
            })
        })
        .collect();
    let chart_path = if chart_rows.is_empty() {
        None
    } else {
        let path = config.output_dir.join("report.svg");
        chart::write_chart_path(
            &path,
            &chart_rows,
            Grouping::BySlice,
            "Association effect sizes (d, whiskers are one bootstrap SE)",
        )?;
        Some(path)
    };

    Ok(SuiteReport {
        rows,
        csv_path,
        json_path,
        chart_path,
    })
}
