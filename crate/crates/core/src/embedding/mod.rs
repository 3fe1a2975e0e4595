//! Word vectors: type, geometry, persistence, and training.

mod train;

pub use train::{train, train_streams};

use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Skip-gram training settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Hyperparams {
    /// Vector dimensionality.
    pub dim: usize,
    /// Words rarer than this are dropped from the vocabulary.
    pub min_count: u64,
    /// Frequent-word subsampling threshold.
    pub sample: f64,
    /// Initial learning rate, decayed linearly over training.
    pub learning_rate: f64,
    /// Maximum skip-gram context radius.
    pub window: usize,
    /// Negative samples drawn per positive pair.
    pub negatives: usize,
    /// Full passes over the corpus.
    pub epochs: u32,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Hyperparams {
            dim: 300,
            min_count: 30,
            sample: 1e-4,
            learning_rate: 0.05,
            window: 10,
            negatives: 10,
            epochs: 5,
        }
    }
}

impl Hyperparams {
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Config("dim must be positive".into()));
        }
        if self.window == 0 {
            return Err(Error::Config("window must be positive".into()));
        }
        if self.epochs == 0 {
            return Err(Error::Config("epochs must be positive".into()));
        }
        if self.learning_rate <= 0.0 || self.learning_rate.is_nan() {
            return Err(Error::Config("learning_rate must be positive".into()));
        }
        if self.sample < 0.0 {
            return Err(Error::Config("sample must be non-negative".into()));
        }
        Ok(())
    }
}

/// Provenance and vocabulary statistics stored beside the vectors.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct EmbeddingMeta {
    /// Corpus occurrence count per vocabulary term.
    pub frequency: BTreeMap<String, u64>,
    /// Label of the corpus slice the vectors were trained on.
    pub slice_label: String,
    /// Settings used in training, when known.
    pub hyperparams: Option<Hyperparams>,
}

/// A vocabulary of terms with one dense vector each.
#[derive(Debug, Clone)]
pub struct Embedding {
    terms: Vec<String>,
    index: HashMap<String, usize>,
    matrix: Vec<f64>,
    dim: usize,
    pub meta: EmbeddingMeta,
}

impl Embedding {
    /// Builds an embedding from parallel term and vector lists.
    pub fn from_vectors(pairs: Vec<(String, Vec<f64>)>, meta: EmbeddingMeta) -> Result<Embedding> {
        let dim = pairs.first().map(|(_, v)| v.len()).unwrap_or(0);
        let mut terms = Vec::with_capacity(pairs.len());
        let mut index = HashMap::with_capacity(pairs.len());
        let mut matrix = Vec::with_capacity(pairs.len() * dim);
        for (term, vector) in pairs {
            if vector.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: vector.len(),
                });
            }
            index.insert(term.clone(), terms.len());
            terms.push(term);
            matrix.extend_from_slice(&vector);
        }
        Ok(Embedding {
            terms,
            index,
            matrix,
            dim,
            meta,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn contains(&self, term: &str) -> bool {
        self.index.contains_key(term)
    }

    pub fn vector(&self, term: &str) -> Option<&[f64]> {
        self.index
            .get(term)
            .map(|&i| &self.matrix[i * self.dim..(i + 1) * self.dim])
    }

    /// The vector for `term`, or an out-of-vocabulary error.
    pub fn require(&self, term: &str) -> Result<&[f64]> {
        self.vector(term)
            .ok_or_else(|| Error::OutOfVocabulary(term.to_string()))
    }

    /// Terms most similar to `term` by cosine, the query itself excluded.
    pub fn nearest(&self, term: &str, k: usize) -> Result<Vec<(String, f64)>> {
        let query = self.require(term)?;
        let mut scored: Vec<(String, f64)> = Vec::with_capacity(self.terms.len());
        for (i, other) in self.terms.iter().enumerate() {
            if other == term {
                continue;
            }
            let row = &self.matrix[i * self.dim..(i + 1) * self.dim];
            if let Ok(score) = cosine(query, row) {
                scored.push((other.clone(), score));
            }
        }
        scored.sort_by(|a, b| {
            b.1.partial_cmp(&a.1)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then_with(|| a.0.cmp(&b.0))
        });
        scored.truncate(k);
        Ok(scored)
    }

    /// Writes the `V dim` header line and one `term c1 .. cd` row per word.
    /// Components print with the shortest representation that reloads to
    /// the identical bits, so save and load round-trips exactly.
    pub fn save<W: Write>(&self, mut writer: W) -> std::io::Result<()> {
        writeln!(writer, "{} {}", self.terms.len(), self.dim)?;
        let mut row = String::new();
        for (i, term) in self.terms.iter().enumerate() {
            row.clear();
            row.push_str(term);
            for v in &self.matrix[i * self.dim..(i + 1) * self.dim] {
                row.push(' ');
                row.push_str(&v.to_string());
            }
            writeln!(writer, "{row}")?;
        }
        Ok(())
    }

    /// Saves vectors to `path` and metadata to `path.meta.json`.
    pub fn save_path(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.save(std::io::BufWriter::new(file))
            .map_err(|e| Error::io(path, e))?;
        let meta_path = sidecar_path(path);
        let json = serde_json::to_string_pretty(&self.meta)
            .map_err(|e| Error::Config(format!("cannot encode metadata: {e}")))?;
        std::fs::write(&meta_path, json).map_err(|e| Error::io(&meta_path, e))?;
        Ok(())
    }

    /// Parses the text format; errors carry the byte offset of the fault.
    pub fn load<R: BufRead>(reader: R, path: &Path) -> Result<Embedding> {
        let mut offset: u64 = 0;
        let mut lines = reader.lines();
        let header = match lines.next() {
            Some(line) => line.map_err(|e| Error::io(path, e))?,
            None => {
                return Err(Error::MalformedEmbedding {
                    path: path.to_path_buf(),
                    offset: 0,
                    message: "empty file".into(),
                })
            }
        };
        let mut parts = header.split_whitespace();
        let malformed_header = |message: String| Error::MalformedEmbedding {
            path: path.to_path_buf(),
            offset: 0,
            message,
        };
        let count: usize = parts
            .next()
            .ok_or_else(|| malformed_header("missing vocabulary size".into()))?
            .parse()
            .map_err(|e| malformed_header(format!("bad vocabulary size: {e}")))?;
        let dim: usize = parts
            .next()
            .ok_or_else(|| malformed_header("missing dimension".into()))?
            .parse()
            .map_err(|e| malformed_header(format!("bad dimension: {e}")))?;
        if parts.next().is_some() {
            return Err(malformed_header("trailing fields in header".into()));
        }
        offset += header.len() as u64 + 1;

        let mut pairs = Vec::with_capacity(count);
        for _ in 0..count {
            let line = match lines.next() {
                Some(line) => line.map_err(|e| Error::io(path, e))?,
                None => {
                    return Err(Error::MalformedEmbedding {
                        path: path.to_path_buf(),
                        offset,
                        message: format!(
                            "header promised {count} rows, file has {}",
                            pairs.len()
                        ),
                    })
                }
            };
            let mut fields = line.split(' ');
            let term = fields.next().unwrap_or("");
            if term.is_empty() {
                return Err(Error::MalformedEmbedding {
                    path: path.to_path_buf(),
                    offset,
                    message: "row with empty term".into(),
                });
            }
            let mut vector = Vec::with_capacity(dim);
            for field in fields {
                let v: f64 = field.parse().map_err(|e| Error::MalformedEmbedding {
                    path: path.to_path_buf(),
                    offset,
                    message: format!("bad component {field:?}: {e}"),
                })?;
                vector.push(v);
            }
            if vector.len() != dim {
                return Err(Error::MalformedEmbedding {
                    path: path.to_path_buf(),
                    offset,
                    message: format!("expected {dim} components, got {}", vector.len()),
                });
            }
            offset += line.len() as u64 + 1;
            pairs.push((term.to_string(), vector));
        }
        Embedding::from_vectors(pairs, EmbeddingMeta::default())
    }

    /// Loads vectors from `path`, plus `path.meta.json` when present.
    pub fn load_path(path: &Path) -> Result<Embedding> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let mut embedding = Embedding::load(std::io::BufReader::new(file), path)?;
        let meta_path = sidecar_path(path);
        if meta_path.exists() {
            let raw = std::fs::read_to_string(&meta_path).map_err(|e| Error::io(&meta_path, e))?;
            embedding.meta =
                serde_json::from_str(&raw).map_err(|e| Error::MalformedEmbedding {
                    path: meta_path.clone(),
                    offset: 0,
                    message: format!("bad metadata: {e}"),
                })?;
        }
        Ok(embedding)
    }
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    path.with_file_name(name)
}

/// Cosine similarity; errors when either vector is all zeros.
pub fn cosine(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let mut dot = 0.0;
    let mut na = 0.0;
    let mut nb = 0.0;
    for (x, y) in a.iter().zip(b) {
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(dot / (na.sqrt() * nb.sqrt()))
}
