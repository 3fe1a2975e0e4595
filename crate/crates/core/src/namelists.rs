//! Demographic proxy name lists: census surnames by race, judge given
//! names by gender, and fixed gendered-term lists.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::TokenStream;
use crate::embedding::{cosine, Embedding};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::phrases::PhraseDictionary;
use crate::weat::WordList;

/// Census race and ethnicity groupings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RaceGroup {
    European,
    AfricanAmerican,
    AsianPacificIslander,
    NativeAmerican,
    TwoOrMoreRaces,
    Hispanic,
}

impl FromStr for RaceGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<RaceGroup> {
        match s.to_ascii_lowercase().replace(['-', ' '], "_").as_str() {
            "european" | "white" => Ok(RaceGroup::European),
            "african_american" | "black" => Ok(RaceGroup::AfricanAmerican),
            "asian_pacific_islander" | "api" => Ok(RaceGroup::AsianPacificIslander),
            "native_american" | "aian" | "native_american_alaskan" => {
                Ok(RaceGroup::NativeAmerican)
            }
            "two_or_more_races" | "two_race" | "2prace" => Ok(RaceGroup::TwoOrMoreRaces),
            "hispanic" => Ok(RaceGroup::Hispanic),
            other => Err(Error::Config(format!("unknown race group {other:?}"))),
        }
    }
}

/// One surname row from the decennial census surname file.
#[derive(Debug, Clone, PartialEq)]
pub struct CensusRow {
    pub surname: String,
    pub count: u64,
    pub pct_white: Option<f64>,
    pub pct_black: Option<f64>,
    pub pct_api: Option<f64>,
    pub pct_aian: Option<f64>,
    pub pct_two_race: Option<f64>,
    pub pct_hispanic: Option<f64>,
}

impl CensusRow {
    /// Percentage of holders in `group`, if not suppressed.
    pub fn pct(&self, group: RaceGroup) -> Option<f64> {
        match group {
            RaceGroup::European => self.pct_white,
            RaceGroup::AfricanAmerican => self.pct_black,
            RaceGroup::AsianPacificIslander => self.pct_api,
            RaceGroup::NativeAmerican => self.pct_aian,
            RaceGroup::TwoOrMoreRaces => self.pct_two_race,
            RaceGroup::Hispanic => self.pct_hispanic,
        }
    }
}

/// One judicial biography row.
#[derive(Debug, Clone, PartialEq)]
pub struct JudgeRow {
    pub given_name: String,
    pub gender: String,
    pub race: Option<String>,
}

fn csv_error(path: &Path, record: usize, message: String) -> Error {
    Error::MalformedCsv {
        path: path.to_path_buf(),
        record: record as u64,
        message,
    }
}

/// Parses a percentage cell: `(S)` and empty cells are suppressed values.
fn parse_pct(field: &str, path: &Path, record: usize) -> Result<Option<f64>> {
    let field = field.trim();
    if field.is_empty() || field == "(S)" {
        return Ok(None);
    }
    let v: f64 = field
        .parse()
        .map_err(|e| csv_error(path, record, format!("bad percentage {field:?}: {e}")))?;
    if !(0.0..=100.0).contains(&v) {
        return Err(csv_error(
            path,
            record,
            format!("percentage {v} outside [0, 100]"),
        ));
    }
    Ok(Some(v))
}

fn header_index(headers: &csv::StringRecord, name: &str, path: &Path) -> Result<usize> {
    headers
        .iter()
        .position(|h| h.trim().eq_ignore_ascii_case(name))
        .ok_or_else(|| csv_error(path, 0, format!("missing column {name:?}")))
}

/// Reads the census surname CSV (columns as in the public 2010 file:
/// `name, count, pctwhite, pctblack, pctapi, pctaian, pct2prace,
/// pcthispanic`, extra columns ignored).
pub fn read_census_csv<R: std::io::Read>(reader: R, path: &Path) -> Result<Vec<CensusRow>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| csv_error(path, 0, e.to_string()))?
        .clone();
    let name_i = header_index(&headers, "name", path)?;
    let count_i = header_index(&headers, "count", path)?;
    let pct_i = [
        header_index(&headers, "pctwhite", path)?,
        header_index(&headers, "pctblack", path)?,
        header_index(&headers, "pctapi", path)?,
        header_index(&headers, "pctaian", path)?,
        header_index(&headers, "pct2prace", path)?,
        header_index(&headers, "pcthispanic", path)?,
    ];
    let mut rows = Vec::new();
    for (idx, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| csv_error(path, idx + 1, e.to_string()))?;
        let field = |i: usize| record.get(i).unwrap_or("").trim();
        let surname = field(name_i).to_string();
        if surname.is_empty() {
            return Err(csv_error(path, idx + 1, "empty surname".into()));
        }
        let count: u64 = field(count_i)
            .parse()
            .map_err(|e| csv_error(path, idx + 1, format!("bad count: {e}")))?;
        let pct = |slot: usize| parse_pct(field(pct_i[slot]), path, idx + 1);
        rows.push(CensusRow {
            surname,
            count,
            pct_white: pct(0)?,
            pct_black: pct(1)?,
            pct_api: pct(2)?,
            pct_aian: pct(3)?,
            pct_two_race: pct(4)?,
            pct_hispanic: pct(5)?,
        });
    }
    Ok(rows)
}

pub fn read_census_path(path: &Path) -> Result<Vec<CensusRow>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_census_csv(std::io::BufReader::new(file), path)
}

/// Reads judge biographies (columns `given_name, gender`; optional
/// `race`).
pub fn read_judges_csv<R: std::io::Read>(reader: R, path: &Path) -> Result<Vec<JudgeRow>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| csv_error(path, 0, e.to_string()))?
        .clone();
    let name_i = header_index(&headers, "given_name", path)?;
    let gender_i = header_index(&headers, "gender", path)?;
    let race_i = headers
        .iter()
        .position(|h| h.trim().eq_ignore_ascii_case("race"));
    let mut rows = Vec::new();
    for (idx, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| csv_error(path, idx + 1, e.to_string()))?;
        let given_name = record.get(name_i).unwrap_or("").trim().to_string();
        if given_name.is_empty() {
            return Err(csv_error(path, idx + 1, "empty given name".into()));
        }
        let gender = record.get(gender_i).unwrap_or("").trim().to_string();
        let race = race_i
            .and_then(|i| record.get(i))
            .map(|r| r.trim().to_string())
            .filter(|r| !r.is_empty());
        rows.push(JudgeRow {
            given_name,
            gender,
            race,
        });
    }
    Ok(rows)
}

pub fn read_judges_path(path: &Path) -> Result<Vec<JudgeRow>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_judges_csv(std::io::BufReader::new(file), path)
}

/// `SMITH` → `Smith`; the casing used for corpus matching.
pub fn title_case(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars.flat_map(char::to_lowercase)).collect(),
        None => String::new(),
    }
}

/// One removed name with a machine-readable reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dropped {
    pub name: String,
    pub reason: String,
}

/// The outcome of one pipeline stage.
#[derive(Debug, Clone, Serialize)]
pub struct StageOutcome {
    pub stage: String,
    pub kept: Vec<String>,
    pub dropped: Vec<Dropped>,
}

fn stage(name: &str, kept: Vec<String>, dropped: Vec<Dropped>) -> StageOutcome {
    StageOutcome {
        stage: name.to_string(),
        kept,
        dropped,
    }
}

/// Surnames whose percentage for `group` strictly exceeds
/// `min_prob * 100`; suppressed cells never qualify. Output title-cased.
pub fn select_by_race(rows: &[CensusRow], group: RaceGroup, min_prob: f64) -> StageOutcome {
    let threshold = min_prob * 100.0;
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for row in rows {
        let name = title_case(&row.surname);
        match row.pct(group) {
            None => dropped.push(Dropped {
                name,
                reason: "suppressed".into(),
            }),
            Some(pct) if pct > threshold => kept.push(name),
            Some(pct) => dropped.push(Dropped {
                name,
                reason: format!("below-threshold:{pct}"),
            }),
        }
    }
    stage("select_by_race", kept, dropped)
}

/// Given names used at least `min_prob` of the time for `gender`
/// (inclusive), proportions computed over biography rows. Names with a
/// single supporting row are kept but flagged `low-support` in the
/// outcome's drop list companion (they appear in `kept`).
pub fn select_by_gender(
    rows: &[JudgeRow],
    gender: &str,
    min_prob: f64,
) -> Result<(StageOutcome, Vec<String>)> {
    if rows.is_empty() {
        return Err(Error::Config("judge biographical input is empty".into()));
    }
    let mut by_name: BTreeMap<String, (u64, u64)> = BTreeMap::new();
    for row in rows {
        let entry = by_name.entry(title_case(&row.given_name)).or_insert((0, 0));
        entry.1 += 1;
        if row.gender.eq_ignore_ascii_case(gender) {
            entry.0 += 1;
        }
    }
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    let mut low_support = Vec::new();
    for (name, (matching, total)) in by_name {
        let proportion = matching as f64 / total as f64;
        if proportion >= min_prob {
            if total == 1 {
                low_support.push(name.clone());
            }
            kept.push(name);
        } else {
            dropped.push(Dropped {
                name,
                reason: format!("proportion:{proportion:.4}"),
            });
        }
    }
    Ok((stage("select_by_gender", kept, dropped), low_support))
}

/// Documents containing each token at least once, over merged streams.
pub fn document_frequency(streams: &[TokenStream]) -> HashMap<String, u64> {
    let mut df: HashMap<String, u64> = HashMap::new();
    for stream in streams {
        let distinct: HashSet<&String> = stream.iter().collect();
        for token in distinct {
            *df.entry(token.clone()).or_insert(0) += 1;
        }
    }
    df
}

/// Keeps names found in at least `min_docs` distinct documents.
pub fn frequency_filter(
    names: &[String],
    doc_freq: &HashMap<String, u64>,
    min_docs: u64,
) -> StageOutcome {
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for name in names {
        let df = doc_freq.get(name).copied().unwrap_or(0);
        if df >= min_docs {
            kept.push(name.clone());
        } else {
            dropped.push(Dropped {
                name: name.clone(),
                reason: format!("document-frequency:{df}"),
            });
        }
    }
    stage("frequency_filter", kept, dropped)
}

/// Drops names that occur as a component of any multi-token merged
/// phrase, the stand-in for place and institution references such as a
/// state mentioned as a government party.
pub fn phrase_exclude(names: &[String], dict: &PhraseDictionary) -> StageOutcome {
    let mut component_of: HashMap<&str, &str> = HashMap::new();
    for entry in dict.entries() {
        for part in entry.merged.split('-') {
            component_of.entry(part).or_insert(&entry.merged);
        }
    }
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for name in names {
        match component_of.get(name.as_str()) {
            Some(merged) => dropped.push(Dropped {
                name: name.clone(),
                reason: format!("phrase:{merged}"),
            }),
            None => kept.push(name.clone()),
        }
    }
    stage("phrase_exclude", kept, dropped)
}

/// Ranks candidates by cosine to the pool centroid and removes the
/// `ceil(drop_frac * n)` least similar, ties broken by name. The pool is
/// every in-vocabulary name of the population the candidates came from.
pub fn centroid_filter(
    names: &[String],
    emb: &Embedding,
    drop_frac: f64,
    centroid_pool: &[String],
) -> Result<StageOutcome> {
    let dim = emb.dim();
    let mut centroid = vec![0.0f64; dim];
    let mut pool_hits = 0usize;
    for name in centroid_pool {
        if let Some(v) = emb.vector(name) {
            pool_hits += 1;
            for (acc, c) in centroid.iter_mut().zip(v) {
                *acc += c;
            }
        }
    }
    if pool_hits == 0 {
        return Err(Error::EmptyStage {
            stage: "centroid-pool".into(),
            list: "centroid_pool".into(),
        });
    }
    for c in &mut centroid {
        *c /= pool_hits as f64;
    }

    let mut dropped = Vec::new();
    let mut scored: Vec<(String, f64)> = Vec::new();
    for name in names {
        match emb.vector(name) {
            Some(v) => scored.push((name.clone(), cosine(&centroid, v)?)),
            None => dropped.push(Dropped {
                name: name.clone(),
                reason: "out-of-vocabulary".into(),
            }),
        }
    }
    let remove = (drop_frac * scored.len() as f64).ceil() as usize;
    // Ascending by similarity, ties by name: the removal order.
    let mut order: Vec<usize> = (0..scored.len()).collect();
    order.sort_by(|&i, &j| {
        scored[i]
            .1
            .partial_cmp(&scored[j].1)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| scored[i].0.cmp(&scored[j].0))
    });
    let removed: HashSet<usize> = order.into_iter().take(remove).collect();
    let mut kept = Vec::new();
    for (i, (name, score)) in scored.into_iter().enumerate() {
        if removed.contains(&i) {
            dropped.push(Dropped {
                name,
                reason: format!("far-from-centroid:{score:.6}"),
            });
        } else {
            kept.push(name);
        }
    }
    Ok(stage("centroid_filter", kept, dropped))
}

/// Selection and filtering thresholds for one constructed list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NameListSpec {
    /// Name given to the resulting list.
    pub label: String,
    /// Membership probability floor (race strict, gender inclusive).
    pub min_prob: f64,
    /// Sample size to draw after filtering.
    pub target_size: usize,
    /// Document-frequency floor.
    pub min_docs: u64,
    /// Fraction removed by the centroid filter.
    pub drop_frac: f64,
}

impl NameListSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.min_prob > 0.0 && self.min_prob <= 1.0) {
            return Err(Error::Config("min_prob must be in (0, 1]".into()));
        }
        if !(0.0..1.0).contains(&self.drop_frac) {
            return Err(Error::Config("drop_frac must be in [0, 1)".into()));
        }
        if self.target_size == 0 {
            return Err(Error::Config("target_size must be positive".into()));
        }
        Ok(())
    }
}

/// Where candidate names come from.
pub enum NameSource<'a> {
    Census {
        rows: &'a [CensusRow],
        group: RaceGroup,
    },
    Judges {
        rows: &'a [JudgeRow],
        gender: &'a str,
    },
}

/// Full provenance for one constructed list.
#[derive(Debug, Clone, Serialize)]
pub struct BuildReport {
    pub label: String,
    pub seed: u64,
    pub stages: Vec<StageOutcome>,
    /// Names kept on a single supporting biography row.
    pub low_support: Vec<String>,
    /// Set when fewer names survived than the target size.
    pub shortfall: bool,
    pub final_size: usize,
}

/// Runs the whole construction pipeline: select, phrase-exclude,
/// frequency-filter, centroid-filter, then a seeded uniform sample down
/// to the target size. Fewer survivors than the target keeps them all
/// and sets the shortfall flag.
pub fn build_list(
    spec: &NameListSpec,
    source: &NameSource,
    emb: &Embedding,
    dict: &PhraseDictionary,
    doc_freq: &HashMap<String, u64>,
    seed: u64,
) -> Result<(WordList, BuildReport)> {
    spec.validate()?;
    let mut stages = Vec::new();
    let mut low_support = Vec::new();

    let (selected, pool): (StageOutcome, Vec<String>) = match source {
        NameSource::Census { rows, group } => {
            let outcome = select_by_race(rows, *group, spec.min_prob);
            let pool = rows.iter().map(|r| title_case(&r.surname)).collect();
            (outcome, pool)
        }
        NameSource::Judges { rows, gender } => {
            let (outcome, low) = select_by_gender(rows, gender, spec.min_prob)?;
            low_support = low;
            let pool = rows.iter().map(|r| title_case(&r.given_name)).collect();
            (outcome, pool)
        }
    };
    let empty_stage = |stage: &str| Error::EmptyStage {
        stage: stage.to_string(),
        list: spec.label.clone(),
    };
    if selected.kept.is_empty() {
        return Err(empty_stage(&selected.stage));
    }
    stages.push(selected);

    let excluded = phrase_exclude(&stages.last().unwrap().kept, dict);
    if excluded.kept.is_empty() {
        return Err(empty_stage(&excluded.stage));
    }
    stages.push(excluded);

    let frequent = frequency_filter(&stages.last().unwrap().kept, doc_freq, spec.min_docs);
    if frequent.kept.is_empty() {
        return Err(empty_stage(&frequent.stage));
    }
    stages.push(frequent);

    let central = centroid_filter(&stages.last().unwrap().kept, emb, spec.drop_frac, &pool)?;
    if central.kept.is_empty() {
        return Err(empty_stage(&central.stage));
    }
    stages.push(central);

    let survivors = stages.last().unwrap().kept.clone();
    let shortfall = survivors.len() < spec.target_size;
    let sampled = if shortfall {
        stage("sample", survivors, Vec::new())
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut picked =
            rand::seq::index::sample(&mut rng, survivors.len(), spec.target_size).into_vec();
        picked.sort_unstable();
        let picked_set: HashSet<usize> = picked.iter().copied().collect();
        let kept: Vec<String> = picked.iter().map(|&i| survivors[i].clone()).collect();
        let dropped = survivors
            .iter()
            .enumerate()
            .filter(|(i, _)| !picked_set.contains(i))
            .map(|(_, name)| Dropped {
                name: name.clone(),
                reason: "sampled-out".into(),
            })
            .collect();
        stage("sample", kept, dropped)
    };
    stages.push(sampled);

    let final_names = stages.last().unwrap().kept.clone();
    let report = BuildReport {
        label: spec.label.clone(),
        seed,
        final_size: final_names.len(),
        shortfall,
        low_support,
        stages,
    };
    Ok((WordList::new(&spec.label, final_names), report))
}

/// The fixed ten-term gendered word lists.
pub fn static_gender_terms() -> (WordList, WordList) {
    (
        fixtures::bundled("male_terms").expect("bundled list exists"),
        fixtures::bundled("female_terms").expect("bundled list exists"),
    )
}
