//! Document ingestion, tokenization, and sub-corpus selection.

use std::collections::{BTreeSet, HashMap};
use std::io::BufRead;
use std::path::Path;

use chrono::Datelike;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Oldest publication year accepted at ingestion.
pub const MIN_YEAR: i32 = 1650;

/// The seven top-level topical divisions of law.
pub const DIVISIONS: [&str; 7] = [
    "contracts",
    "crimes",
    "government",
    "persons",
    "property",
    "remedies",
    "torts",
];

/// One text unit with its metadata; the corpus atom.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub year: i32,
    pub jurisdiction: String,
    #[serde(default)]
    pub topics: BTreeSet<String>,
}

/// Ordered, case-preserving token sequence for one document.
pub type TokenStream = Vec<String>;

/// An immutable collection of documents with unique ids.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    documents: Vec<Document>,
}

impl Corpus {
    /// Builds a corpus from records, validating years and id uniqueness.
    /// `max_year` is the newest acceptable year (see [`current_year`]).
    pub fn ingest<I>(records: I, max_year: i32) -> Result<Corpus>
    where
        I: IntoIterator<Item = Document>,
    {
        let mut documents = Vec::new();
        let mut seen: HashMap<String, usize> = HashMap::new();
        for doc in records {
            if doc.year < MIN_YEAR || doc.year > max_year {
                return Err(Error::YearOutOfRange {
                    id: doc.id,
                    year: doc.year,
                    min: MIN_YEAR,
                    max: max_year,
                });
            }
            if seen.insert(doc.id.clone(), documents.len()).is_some() {
                return Err(Error::DuplicateDocumentId(doc.id));
            }
            documents.push(doc);
        }
        Ok(Corpus { documents })
    }

    /// Reads newline-delimited JSON, one document object per line.
    /// Blank lines are skipped; parse failures carry the 1-based line number.
    pub fn read_ndjson<R: BufRead>(reader: R, max_year: i32) -> Result<Corpus> {
        let mut documents = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::MalformedRecord {
                line: idx + 1,
                message: e.to_string(),
            })?;
            if line.trim().is_empty() {
                continue;
            }
            let doc: Document =
                serde_json::from_str(&line).map_err(|e| Error::MalformedRecord {
                    line: idx + 1,
                    message: e.to_string(),
                })?;
            documents.push(doc);
        }
        Corpus::ingest(documents, max_year)
    }

    pub fn from_path(path: &Path, max_year: i32) -> Result<Corpus> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Corpus::read_ndjson(std::io::BufReader::new(file), max_year)
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Document> {
        self.documents.iter().find(|d| d.id == id)
    }
}

/// The current calendar year (UTC); the default ingestion ceiling.
pub fn current_year() -> i32 {
    chrono::Utc::now().year()
}

/// Splits text on whitespace and punctuation boundaries, preserving case.
///
/// Hyphens and apostrophes are kept when flanked by alphanumerics on both
/// sides, so `Bostock's` and merged phrase tokens like `pro-hac-vice`
/// survive as single tokens. Leading and trailing punctuation is stripped.
pub fn tokenize(text: &str) -> TokenStream {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut current = String::new();
    for (i, &c) in chars.iter().enumerate() {
        let joiner = (c == '-' || c == '\'')
            && !current.is_empty()
            && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric());
        if c.is_alphanumeric() || joiner {
            current.push(c);
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

/// A labeled selection of documents from a corpus.
#[derive(Debug, Clone)]
pub struct CorpusSlice<'a> {
    pub label: String,
    /// Human-readable description of the selection predicate.
    pub selection: String,
    documents: Vec<&'a Document>,
    /// Set when the selection matched nothing.
    pub empty_warning: bool,
}

impl<'a> CorpusSlice<'a> {
    fn new(label: String, selection: String, documents: Vec<&'a Document>) -> Self {
        let empty_warning = documents.is_empty();
        CorpusSlice {
            label,
            selection,
            documents,
            empty_warning,
        }
    }

    pub fn documents(&self) -> &[&'a Document] {
        &self.documents
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// Tokenizes every document in the slice.
    pub fn token_streams(&self) -> Vec<TokenStream> {
        self.documents.iter().map(|d| tokenize(&d.text)).collect()
    }
}

/// The whole corpus as a slice labeled `full`.
pub fn slice_full(corpus: &Corpus) -> CorpusSlice<'_> {
    CorpusSlice::new(
        "full".to_string(),
        "all documents".to_string(),
        corpus.documents().iter().collect(),
    )
}

/// Documents with `cutoff_year <= year <= end_year`, both ends inclusive.
pub fn slice_temporal(corpus: &Corpus, cutoff_year: i32, end_year: i32) -> Result<CorpusSlice<'_>> {
    if cutoff_year > end_year {
        return Err(Error::Config(format!(
            "temporal slice: cutoff year {cutoff_year} is after end year {end_year}"
        )));
    }
    let documents = corpus
        .documents()
        .iter()
        .filter(|d| d.year >= cutoff_year && d.year <= end_year)
        .collect();
    Ok(CorpusSlice::new(
        format!("{cutoff_year}-{end_year}"),
        format!("year in {cutoff_year}..={end_year}"),
        documents,
    ))
}

/// Documents whose topic set contains `division`.
///
/// With `strict` set, labels outside the seven standard divisions are
/// rejected; otherwise any user-defined label selects.
pub fn slice_topical<'a>(
    corpus: &'a Corpus,
    division: &str,
    strict: bool,
) -> Result<CorpusSlice<'a>> {
    if strict && !DIVISIONS.contains(&division) {
        return Err(Error::UnknownDivision(division.to_string()));
    }
    let documents = corpus
        .documents()
        .iter()
        .filter(|d| d.topics.contains(division))
        .collect();
    Ok(CorpusSlice::new(
        division.to_string(),
        format!("topics contain {division:?}"),
        documents,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(id: &str, text: &str, year: i32, topics: &[&str]) -> Document {
        Document {
            id: id.to_string(),
            text: text.to_string(),
            year,
            jurisdiction: "US".to_string(),
            topics: topics.iter().map(|t| t.to_string()).collect(),
        }
    }

    #[test]
    fn ingest_preserves_count() {
        let corpus = Corpus::ingest(
            vec![
                doc("a", "one", 1900, &[]),
                doc("b", "two", 1950, &[]),
                doc("c", "three", 2000, &[]),
            ],
            2020,
        )
        .unwrap();
        assert_eq!(corpus.len(), 3);
    }

    #[test]
    fn ingest_rejects_year_below_floor() {
        let err = Corpus::ingest(vec![doc("a", "x", 1500, &[])], 2020).unwrap_err();
        match err {
            Error::YearOutOfRange { year, min, .. } => {
                assert_eq!(year, 1500);
                assert_eq!(min, MIN_YEAR);
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn ingest_rejects_future_year() {
        assert!(Corpus::ingest(vec![doc("a", "x", 2021, &[])], 2020).is_err());
        assert!(Corpus::ingest(vec![doc("a", "x", 2020, &[])], 2020).is_ok());
    }

    #[test]
    fn ingest_rejects_duplicate_id() {
        let err = Corpus::ingest(
            vec![doc("A", "x", 1900, &[]), doc("A", "y", 1901, &[])],
            2020,
        )
        .unwrap_err();
        match err {
            Error::DuplicateDocumentId(id) => assert_eq!(id, "A"),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn ndjson_reports_line_numbers() {
        let data = "{\"id\":\"a\",\"text\":\"x\",\"year\":1900,\"jurisdiction\":\"US\"}\nnot json\n";
        let err = Corpus::read_ndjson(data.as_bytes(), 2020).unwrap_err();
        match err {
            Error::MalformedRecord { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn ndjson_round_trip() {
        let data = concat!(
            "{\"id\":\"a\",\"text\":\"the court held\",\"year\":1900,\"jurisdiction\":\"US\",\"topics\":[\"crimes\"]}\n",
            "\n",
            "{\"id\":\"b\",\"text\":\"motion denied\",\"year\":1999,\"jurisdiction\":\"NY\",\"topics\":[]}\n",
        );
        let corpus = Corpus::read_ndjson(data.as_bytes(), 2020).unwrap();
        assert_eq!(corpus.len(), 2);
        assert!(corpus.get("a").unwrap().topics.contains("crimes"));
    }

    #[test]
    fn tokenize_strips_punctuation_preserves_case() {
        assert_eq!(
            tokenize("Mr. Bostock's league."),
            vec!["Mr", "Bostock's", "league"]
        );
    }

    #[test]
    fn tokenize_empty() {
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn tokenize_plain_words() {
        assert_eq!(tokenize("pro hac vice"), vec!["pro", "hac", "vice"]);
    }

    #[test]
    fn tokenize_keeps_internal_hyphens() {
        assert_eq!(tokenize("state-of-the-art (sic)"), vec!["state-of-the-art", "sic"]);
        assert_eq!(tokenize("don't--stop"), vec!["don't", "stop"]);
    }

    #[test]
    fn tokenize_idempotent_on_joined_output() {
        let first = tokenize("The State of Washington; appellee's brief, pro hac vice.");
        let second = tokenize(&first.join(" "));
        assert_eq!(first, second);
    }

    #[test]
    fn temporal_boundaries_inclusive() {
        let corpus = Corpus::ingest(
            vec![
                doc("a", "x", 1954, &[]),
                doc("b", "x", 1950, &[]),
                doc("c", "x", 2020, &[]),
            ],
            2020,
        )
        .unwrap();
        let slice = slice_temporal(&corpus, 1954, 2020).unwrap();
        let ids: Vec<&str> = slice.documents().iter().map(|d| d.id.as_str()).collect();
        assert_eq!(ids, vec!["a", "c"]);
        assert_eq!(slice.label, "1954-2020");
    }

    #[test]
    fn temporal_rejects_inverted_range() {
        let corpus = Corpus::ingest(vec![doc("a", "x", 1954, &[])], 2020).unwrap();
        assert!(slice_temporal(&corpus, 2000, 1990).is_err());
    }

    #[test]
    fn standard_cutoff_sweep() {
        let corpus = Corpus::ingest(
            (0..20)
                .map(|i| doc(&format!("d{i}"), "x", 1860 + i * 8, &[]))
                .collect::<Vec<_>>(),
            2020,
        )
        .unwrap();
        let cutoffs = [2000, 1980, 1968, 1954, 1930, 1896, 1865];
        let slices: Vec<_> = cutoffs
            .iter()
            .map(|&c| slice_temporal(&corpus, c, 2020).unwrap())
            .collect();
        assert_eq!(slices.len(), 7);
        // Earlier cutoffs never contain fewer documents.
        for pair in slices.windows(2) {
            assert!(pair[0].len() <= pair[1].len());
        }
    }

    #[test]
    fn topical_membership() {
        let corpus = Corpus::ingest(
            vec![
                doc("a", "x", 1900, &["crimes"]),
                doc("b", "x", 1900, &["torts"]),
            ],
            2020,
        )
        .unwrap();
        let slice = slice_topical(&corpus, "crimes", true).unwrap();
        assert_eq!(slice.len(), 1);
        assert_eq!(slice.documents()[0].id, "a");
    }

    #[test]
    fn topical_empty_slice_warns() {
        let corpus = Corpus::ingest(vec![doc("a", "x", 1900, &["crimes"])], 2020).unwrap();
        let slice = slice_topical(&corpus, "property", true).unwrap();
        assert!(slice.is_empty());
        assert!(slice.empty_warning);
    }

    #[test]
    fn topical_strict_rejects_unknown_division() {
        let corpus = Corpus::ingest(vec![doc("a", "x", 1900, &[])], 2020).unwrap();
        assert!(slice_topical(&corpus, "admiralty", true).is_err());
        assert!(slice_topical(&corpus, "admiralty", false).is_ok());
    }

    #[test]
    fn seven_division_sweep() {
        let corpus = Corpus::ingest(
            DIVISIONS
                .iter()
                .enumerate()
                .map(|(i, d)| doc(&format!("d{i}"), "x", 1900, &[d]))
                .collect::<Vec<_>>(),
            2020,
        )
        .unwrap();
        let slices: Vec<_> = DIVISIONS
            .iter()
            .map(|d| slice_topical(&corpus, d, true).unwrap())
            .collect();
        assert_eq!(slices.len(), 7);
        assert!(slices.iter().all(|s| s.len() == 1));
    }

    #[test]
    fn multi_label_documents_appear_in_each_slice() {
        let corpus = Corpus::ingest(
            vec![doc("a", "x", 1900, &["crimes", "torts"])],
            2020,
        )
        .unwrap();
        assert_eq!(slice_topical(&corpus, "crimes", true).unwrap().len(), 1);
        assert_eq!(slice_topical(&corpus, "torts", true).unwrap().len(), 1);
    }
}
