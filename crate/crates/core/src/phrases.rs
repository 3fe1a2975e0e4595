//! Collocation mining: NPMI scoring, phrase dictionaries, and merging.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::corpus::TokenStream;
use crate::error::{Error, Result};

/// Joins the two halves of a merged phrase token.
pub const MERGE_DELIMITER: char = '-';

/// Thresholds for one extraction pass.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct PhraseConfig {
    /// Minimum NPMI score for a bigram to become a phrase.
    pub min_npmi: f64,
    /// Minimum bigram occurrence count.
    pub min_count: u64,
    /// Number of extraction passes; two captures trigrams such as
    /// `pro-hac-vice` as a second-round bigram.
    pub passes: u32,
}

impl Default for PhraseConfig {
    fn default() -> Self {
        PhraseConfig {
            min_npmi: 0.5,
            min_count: 30,
            passes: 2,
        }
    }
}

/// Unigram and adjacent-bigram occurrence counts over token streams.
#[derive(Debug, Clone, Default)]
pub struct BigramCounts {
    pub unigrams: HashMap<String, u64>,
    pub bigrams: HashMap<(String, String), u64>,
    /// Total token count; the common normalizer for every probability.
    pub total: u64,
}

impl BigramCounts {
    /// Tallies counts; bigrams never span document boundaries.
    pub fn count<'a, I>(streams: I) -> BigramCounts
    where
        I: IntoIterator<Item = &'a TokenStream>,
    {
        let mut counts = BigramCounts::default();
        for stream in streams {
            for token in stream {
                *counts.unigrams.entry(token.clone()).or_insert(0) += 1;
                counts.total += 1;
            }
            for pair in stream.windows(2) {
                *counts
                    .bigrams
                    .entry((pair[0].clone(), pair[1].clone()))
                    .or_insert(0) += 1;
            }
        }
        counts
    }

    /// Normalized pointwise mutual information of the pair, in [-1, 1].
    ///
    /// All three probabilities share the unigram total as normalizer, so
    /// the score cannot leave its bounds. An unseen pair scores -1 and a
    /// pair that exhausts both words' occurrences scores 1.
    pub fn npmi(&self, left: &str, right: &str) -> f64 {
        let c_xy = self
            .bigrams
            .get(&(left.to_string(), right.to_string()))
            .copied()
            .unwrap_or(0);
        if c_xy == 0 || self.total == 0 {
            return -1.0;
        }
        let c_x = self.unigrams.get(left).copied().unwrap_or(0);
        let c_y = self.unigrams.get(right).copied().unwrap_or(0);
        if c_x == 0 || c_y == 0 {
            return -1.0;
        }
        let n = self.total as f64;
        let p_xy = c_xy as f64 / n;
        let p_x = c_x as f64 / n;
        let p_y = c_y as f64 / n;
        if p_xy >= 1.0 {
            // A single repeated bigram; maximal association by convention.
            return 1.0;
        }
        (p_xy / (p_x * p_y)).ln() / -p_xy.ln()
    }
}

/// One accepted collocation.
#[derive(Debug, Clone, PartialEq)]
pub struct PhraseEntry {
    pub left: String,
    pub right: String,
    pub merged: String,
    pub npmi: f64,
    pub count: u64,
}

/// Scored bigrams accepted as single tokens.
#[derive(Debug, Clone, Default)]
pub struct PhraseDictionary {
    entries: Vec<PhraseEntry>,
    index: HashMap<(String, String), usize>,
}

impl PhraseDictionary {
    pub fn new(mut entries: Vec<PhraseEntry>) -> PhraseDictionary {
        entries.sort_by(|a, b| {
            b.npmi
                .partial_cmp(&a.npmi)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then_with(|| a.merged.cmp(&b.merged))
        });
        let index = entries
            .iter()
            .enumerate()
            .map(|(i, e)| ((e.left.clone(), e.right.clone()), i))
            .collect();
        PhraseDictionary { entries, index }
    }

    pub fn entries(&self) -> &[PhraseEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, left: &str, right: &str) -> bool {
        self.index.contains_key(&(left.to_string(), right.to_string()))
    }

    pub fn get(&self, left: &str, right: &str) -> Option<&PhraseEntry> {
        self.index
            .get(&(left.to_string(), right.to_string()))
            .map(|&i| &self.entries[i])
    }

    /// Writes tab-separated `left right merged npmi count` rows.
    pub fn write_tsv<W: Write>(&self, mut writer: W) -> std::io::Result<()> {
        writeln!(writer, "left\tright\tmerged\tnpmi\tcount")?;
        for e in &self.entries {
            writeln!(writer, "{}\t{}\t{}\t{}\t{}", e.left, e.right, e.merged, e.npmi, e.count)?;
        }
        Ok(())
    }

    pub fn write_tsv_path(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_tsv(std::io::BufWriter::new(file))
            .map_err(|e| Error::io(path, e))
    }

    pub fn read_tsv<R: BufRead>(reader: R, path: &Path) -> Result<PhraseDictionary> {
        let mut entries = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::io(path, e))?;
            if idx == 0 || line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 5 {
                return Err(Error::MalformedDictionary {
                    path: path.to_path_buf(),
                    line: idx + 1,
                    message: format!("expected 5 tab-separated fields, got {}", fields.len()),
                });
            }
            let npmi = fields[3].parse().map_err(|e| Error::MalformedDictionary {
                path: path.to_path_buf(),
                line: idx + 1,
                message: format!("bad npmi: {e}"),
            })?;
            let count = fields[4].parse().map_err(|e| Error::MalformedDictionary {
                path: path.to_path_buf(),
                line: idx + 1,
                message: format!("bad count: {e}"),
            })?;
            entries.push(PhraseEntry {
                left: fields[0].to_string(),
                right: fields[1].to_string(),
                merged: fields[2].to_string(),
                npmi,
                count,
            });
        }
        Ok(PhraseDictionary::new(entries))
    }

    pub fn read_tsv_path(path: &Path) -> Result<PhraseDictionary> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        PhraseDictionary::read_tsv(std::io::BufReader::new(file), path)
    }
}

/// Scores every adjacent bigram and keeps those over both thresholds.
pub fn extract_phrases(counts: &BigramCounts, config: &PhraseConfig) -> PhraseDictionary {
    let mut entries = Vec::new();
    for ((left, right), &count) in &counts.bigrams {
        if count < config.min_count {
            continue;
        }
        let npmi = counts.npmi(left, right);
        if npmi < config.min_npmi {
            continue;
        }
        entries.push(PhraseEntry {
            left: left.clone(),
            right: right.clone(),
            merged: format!("{left}{MERGE_DELIMITER}{right}"),
            npmi,
            count,
        });
    }
    PhraseDictionary::new(entries)
}

/// Rewrites a token stream, merging dictionary bigrams greedily from the
/// left; a token consumed by one merge cannot start another.
pub fn apply_phrases(stream: &TokenStream, dictionary: &PhraseDictionary) -> TokenStream {
    let mut out = Vec::with_capacity(stream.len());
    let mut i = 0;
    while i < stream.len() {
        if i + 1 < stream.len() {
            if let Some(entry) = dictionary.get(&stream[i], &stream[i + 1]) {
                out.push(entry.merged.clone());
                i += 2;
                continue;
            }
        }
        out.push(stream[i].clone());
        i += 1;
    }
    out
}

/// Runs `config.passes` rounds of count, extract, and merge.
///
/// Returns the rewritten streams and the dictionary from each pass in
/// order. Later passes see the merged tokens of earlier ones, so trigram
/// collocations surface as bigrams whose left half is already merged.
pub fn extract_passes(
    streams: &[TokenStream],
    config: &PhraseConfig,
) -> (Vec<TokenStream>, Vec<PhraseDictionary>) {
    let mut current: Vec<TokenStream> = streams.to_vec();
    let mut dictionaries = Vec::new();
    for _ in 0..config.passes {
        let counts = BigramCounts::count(&current);
        let dictionary = extract_phrases(&counts, config);
        current = current
            .iter()
            .map(|s| apply_phrases(s, &dictionary))
            .collect();
        dictionaries.push(dictionary);
    }
    (current, dictionaries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::tokenize;
    use approx::assert_relative_eq;

    fn streams(texts: &[&str]) -> Vec<TokenStream> {
        texts.iter().map(|t| tokenize(t)).collect()
    }

    #[test]
    fn npmi_worked_example() {
        // 100 tokens total; "of" 20 times, "counsel" 10 times, adjacent 5.
        let mut counts = BigramCounts {
            total: 100,
            ..BigramCounts::default()
        };
        counts.unigrams.insert("of".into(), 20);
        counts.unigrams.insert("counsel".into(), 10);
        counts
            .bigrams
            .insert(("of".into(), "counsel".into()), 5);
        assert_relative_eq!(counts.npmi("of", "counsel"), 0.30587, epsilon = 1e-5);
    }

    #[test]
    fn npmi_unseen_pair_is_minus_one() {
        let counts = BigramCounts::count(&streams(&["a b", "c d"]));
        assert_eq!(counts.npmi("a", "d"), -1.0);
        assert_eq!(counts.npmi("zz", "qq"), -1.0);
    }

    #[test]
    fn npmi_bounded_on_random_streams() {
        let texts: Vec<String> = (0..50)
            .map(|i| format!("w{} w{} w{} w{}", i % 7, (i * 3) % 5, i % 2, (i * 11) % 13))
            .collect();
        let refs: Vec<&str> = texts.iter().map(|s| s.as_str()).collect();
        let counts = BigramCounts::count(&streams(&refs));
        for (left, right) in counts.bigrams.keys() {
            let score = counts.npmi(left, right);
            assert!((-1.0..=1.0).contains(&score), "{left} {right} -> {score}");
        }
    }

    #[test]
    fn bigrams_do_not_cross_documents() {
        let counts = BigramCounts::count(&streams(&["summary judgment", "judgment entered"]));
        assert_eq!(
            counts
                .bigrams
                .get(&("judgment".into(), "judgment".into())),
            None
        );
        assert_eq!(
            counts
                .bigrams
                .get(&("summary".into(), "judgment".into()))
                .copied(),
            Some(1)
        );
    }

    #[test]
    fn extraction_thresholds() {
        // "habeas corpus" x4 is a tight pair; "the court" is frequent but loose.
        let mut texts = vec!["habeas corpus"; 4];
        texts.extend(["the court", "the witness", "the clerk", "court adjourned"]);
        let counts = BigramCounts::count(&streams(&texts));
        let config = PhraseConfig {
            min_npmi: 0.5,
            min_count: 3,
            passes: 1,
        };
        let dict = extract_phrases(&counts, &config);
        assert!(dict.contains("habeas", "corpus"));
        assert!(!dict.contains("the", "court"));
        let entry = dict.get("habeas", "corpus").unwrap();
        assert_eq!(entry.merged, "habeas-corpus");
        assert_eq!(entry.count, 4);
    }

    #[test]
    fn greedy_merge_is_left_to_right() {
        let dict = PhraseDictionary::new(vec![
            PhraseEntry {
                left: "a".into(),
                right: "b".into(),
                merged: "a-b".into(),
                npmi: 0.9,
                count: 10,
            },
            PhraseEntry {
                left: "b".into(),
                right: "c".into(),
                merged: "b-c".into(),
                npmi: 0.9,
                count: 10,
            },
        ]);
        // "a b c": the left merge wins and consumes b.
        assert_eq!(
            apply_phrases(&tokenize("a b c"), &dict),
            vec!["a-b".to_string(), "c".to_string()]
        );
    }

    #[test]
    fn two_passes_capture_trigram() {
        let texts = vec!["pro hac vice"; 5];
        let config = PhraseConfig {
            min_npmi: 0.5,
            min_count: 3,
            passes: 2,
        };
        let (merged, dicts) = extract_passes(&streams(&texts), &config);
        assert_eq!(dicts.len(), 2);
        assert!(merged.iter().all(|s| s == &vec!["pro-hac-vice".to_string()]));
    }

    #[test]
    fn exclusive_pair_scores_one() {
        // Tokens that only ever occur inside the pair: by this scorer's
        // shared normalizer, npmi("pro", "hac") on a pure corpus is 1.
        let texts = vec!["pro hac"; 6];
        let counts = BigramCounts::count(&streams(&texts));
        assert_relative_eq!(counts.npmi("pro", "hac"), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn tsv_round_trip() {
        let dict = PhraseDictionary::new(vec![PhraseEntry {
            left: "habeas".into(),
            right: "corpus".into(),
            merged: "habeas-corpus".into(),
            npmi: 0.8123456789,
            count: 42,
        }]);
        let mut buf = Vec::new();
        dict.write_tsv(&mut buf).unwrap();
        let back =
            PhraseDictionary::read_tsv(buf.as_slice(), Path::new("mem")).unwrap();
        assert_eq!(back.len(), 1);
        let e = back.get("habeas", "corpus").unwrap();
        assert_eq!(e.merged, "habeas-corpus");
        assert_eq!(e.npmi, 0.8123456789);
        assert_eq!(e.count, 42);
    }

    #[test]
    fn malformed_tsv_reports_line() {
        let data = "left\tright\tmerged\tnpmi\tcount\nonly three\tfields\n";
        let err =
            PhraseDictionary::read_tsv(data.as_bytes(), Path::new("mem")).unwrap_err();
        match err {
            Error::MalformedDictionary { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn merged_tokens_survive_tokenizer() {
        // Hyphen-merged phrases must round-trip through tokenization.
        let merged = "pro-hac-vice appearance";
        assert_eq!(tokenize(merged), vec!["pro-hac-vice", "appearance"]);
    }
}
