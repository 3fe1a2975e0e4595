//! Seed-lexicon expansion along an axis in embedding space.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;

use crate::embedding::{cosine, Embedding};
use crate::error::{Error, Result};
use crate::weat::WordList;

/// A pair of opposed seed lists defining an axis, with expansion settings.
#[derive(Debug, Clone)]
pub struct SeedPair {
    pub positive_seeds: WordList,
    pub negative_seeds: WordList,
    /// Expansion size per pole.
    pub k: usize,
    /// Terms banned from the output, the file-based stand-in for manual
    /// review.
    pub exclusions: BTreeSet<String>,
}

impl SeedPair {
    pub fn new(
        positive_seeds: WordList,
        negative_seeds: WordList,
        k: usize,
        exclusions: BTreeSet<String>,
    ) -> Result<SeedPair> {
        if k == 0 {
            return Err(Error::Config("expansion size k must be at least 1".into()));
        }
        if let Some(shared) = positive_seeds
            .terms()
            .iter()
            .find(|t| negative_seeds.terms().contains(t))
        {
            return Err(Error::Config(format!(
                "seed lists must be disjoint; {shared:?} appears in both"
            )));
        }
        Ok(SeedPair {
            positive_seeds,
            negative_seeds,
            k,
            exclusions,
        })
    }
}

/// An axis vector plus the seeds that had to be skipped as out of
/// vocabulary.
#[derive(Debug, Clone)]
pub struct Axis {
    pub vector: Vec<f64>,
    pub skipped: Vec<String>,
}

/// Sums positive seed vectors and subtracts the negative sum.
///
/// Vectors enter the sum as stored; with `normalize` each seed is scaled
/// to unit length first. Out-of-vocabulary seeds are skipped and listed,
/// but a list with no in-vocabulary seed at all is an error. Swapping the
/// two lists negates every component exactly.
pub fn axis_vector(
    plus: &WordList,
    minus: &WordList,
    emb: &Embedding,
    normalize: bool,
) -> Result<Axis> {
    let mut vector = vec![0.0f64; emb.dim()];
    let mut skipped = Vec::new();
    let mut accumulate = |list: &WordList, sign: f64| -> Result<()> {
        let mut found = 0usize;
        for term in list.terms() {
            let Some(v) = emb.vector(term) else {
                skipped.push(term.clone());
                continue;
            };
            found += 1;
            let scale = if normalize {
                let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                if norm == 0.0 {
                    return Err(Error::ZeroVector);
                }
                sign / norm
            } else {
                sign
            };
            for (acc, c) in vector.iter_mut().zip(v) {
                *acc += scale * c;
            }
        }
        if found == 0 {
            return Err(Error::AllSeedsOutOfVocabulary(list.name.clone()));
        }
        Ok(())
    };
    accumulate(plus, 1.0)?;
    accumulate(minus, -1.0)?;
    Ok(Axis { vector, skipped })
}

/// One expanded pole: terms with their cosine scores, best first.
pub type ScoredTerms = Vec<(String, f64)>;

/// Both poles of an expansion.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub positive: ScoredTerms,
    pub negative: ScoredTerms,
    /// Seeds skipped as out of vocabulary while building the axis.
    pub skipped_seeds: Vec<String>,
}

fn top_k(emb: &Embedding, axis: &[f64], k: usize, banned: &BTreeSet<&str>) -> Result<ScoredTerms> {
    let mut scored: ScoredTerms = Vec::new();
    for term in emb.terms() {
        if banned.contains(term.as_str()) {
            continue;
        }
        let score = cosine(axis, emb.vector(term).expect("term comes from the embedding"))?;
        scored.push((term.clone(), score));
    }
    scored.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.0.cmp(&b.0))
    });
    scored.truncate(k);
    Ok(scored)
}

/// Expands both poles: the k vocabulary terms most similar to the axis,
/// and the k most similar to its negation. Seeds of either list and
/// excluded terms never appear in the output.
pub fn expand(pair: &SeedPair, emb: &Embedding, normalize: bool) -> Result<Expansion> {
    let axis = axis_vector(&pair.positive_seeds, &pair.negative_seeds, emb, normalize)?;
    let banned: BTreeSet<&str> = pair
        .positive_seeds
        .terms()
        .iter()
        .chain(pair.negative_seeds.terms())
        .map(String::as_str)
        .chain(pair.exclusions.iter().map(String::as_str))
        .collect();
    let negated: Vec<f64> = axis.vector.iter().map(|c| -c).collect();
    Ok(Expansion {
        positive: top_k(emb, &axis.vector, pair.k, &banned)?,
        negative: top_k(emb, &negated, pair.k, &banned)?,
        skipped_seeds: axis.skipped,
    })
}

/// Writes both poles as tab-separated `term score pole` rows.
pub fn write_expansion_tsv<W: Write>(expansion: &Expansion, mut writer: W) -> std::io::Result<()> {
    writeln!(writer, "term\tscore\tpole")?;
    for (term, score) in &expansion.positive {
        writeln!(writer, "{term}\t{score}\tpositive")?;
    }
    for (term, score) in &expansion.negative {
        writeln!(writer, "{term}\t{score}\tnegative")?;
    }
    Ok(())
}

pub fn write_expansion_path(expansion: &Expansion, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_expansion_tsv(expansion, std::io::BufWriter::new(file)).map_err(|e| Error::io(path, e))
}
