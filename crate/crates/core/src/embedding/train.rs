//! Skip-gram training with negative sampling.
//!
//! The update loop follows the classic formulation: for each position in a
//! subsampled sentence, each word inside a randomly shrunk window is the
//! input, the position's word plus `negatives` noise draws are the outputs,
//! and both layers move by the logistic gradient. Input vectors become the
//! published embedding.
//!
//! Both weight layers live in shared atomic cells. With one thread the run
//! is exactly reproducible for a given seed; with more, workers update
//! without locks and occasionally overwrite each other, which costs
//! nothing in practice but gives up bitwise reproducibility.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{CorpusSlice, TokenStream};
use crate::error::{Error, Result};

use super::{Embedding, EmbeddingMeta, Hyperparams};

/// Exponent flattening the noise distribution over word counts.
const NOISE_POWER: f64 = 0.75;

/// The learning rate never decays below this fraction of its start.
const LR_FLOOR_FRACTION: f64 = 1e-4;

struct Vocab {
    terms: Vec<String>,
    counts: Vec<u64>,
    index: HashMap<String, usize>,
    /// Total surviving-token count, the denominator for progress and
    /// subsampling.
    train_words: u64,
}

fn build_vocab(streams: &[TokenStream], min_count: u64) -> Result<Vocab> {
    let mut raw: HashMap<&str, u64> = HashMap::new();
    for stream in streams {
        for token in stream {
            *raw.entry(token.as_str()).or_insert(0) += 1;
        }
    }
    let mut kept: Vec<(&str, u64)> = raw
        .into_iter()
        .filter(|&(_, c)| c >= min_count)
        .collect();
    if kept.is_empty() {
        return Err(Error::EmptyVocabulary(min_count));
    }
    kept.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let mut vocab = Vocab {
        terms: Vec::with_capacity(kept.len()),
        counts: Vec::with_capacity(kept.len()),
        index: HashMap::with_capacity(kept.len()),
        train_words: 0,
    };
    for (term, count) in kept {
        vocab.index.insert(term.to_string(), vocab.terms.len());
        vocab.terms.push(term.to_string());
        vocab.counts.push(count);
        vocab.train_words += count;
    }
    Ok(vocab)
}

/// Probability that one occurrence of a word with count `cn` is kept.
/// Values above one mean the word is never dropped.
fn keep_probability(cn: u64, train_words: u64, sample: f64) -> f64 {
    if sample <= 0.0 {
        return 1.0;
    }
    let threshold = sample * train_words as f64;
    let cn = cn as f64;
    ((cn / threshold).sqrt().recip() + threshold / cn).min(2.0)
}

/// Cumulative noise weights for negative sampling by binary search.
fn noise_table(counts: &[u64]) -> Vec<f64> {
    let mut cumulative = Vec::with_capacity(counts.len());
    let mut total = 0.0;
    for &c in counts {
        total += (c as f64).powf(NOISE_POWER);
        cumulative.push(total);
    }
    cumulative
}

fn draw_noise(table: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let total = *table.last().expect("noise table is never empty");
    let u = rng.gen_range(0.0..total);
    table.partition_point(|&c| c <= u)
}

#[inline]
fn cell_get(cells: &[AtomicU64], i: usize) -> f64 {
    f64::from_bits(cells[i].load(Ordering::Relaxed))
}

#[inline]
fn cell_set(cells: &[AtomicU64], i: usize, v: f64) {
    cells[i].store(v.to_bits(), Ordering::Relaxed);
}

#[inline]
fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

fn shard_rng(seed: u64, worker: usize, epoch: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Stream 0 is reserved for weight initialization.
    rng.set_stream(((worker as u64) << 32) | (epoch as u64 + 1));
    rng
}

struct Shared<'a> {
    vocab: &'a Vocab,
    hp: &'a Hyperparams,
    noise: Vec<f64>,
    syn0: Vec<AtomicU64>,
    syn1: Vec<AtomicU64>,
    /// In-vocabulary tokens consumed so far, across all workers.
    progress: AtomicU64,
    total_words: u64,
}

fn train_document(doc: &[usize], shared: &Shared, alpha: f64, rng: &mut ChaCha8Rng) {
    let dim = shared.hp.dim;
    let negatives = shared.hp.negatives;
    let mut gradient = vec![0.0f64; dim];
    // Subsample frequent words before windowing, so dropped occurrences
    // also stop separating their neighbors.
    let sentence: Vec<usize> = doc
        .iter()
        .copied()
        .filter(|&w| {
            let p = keep_probability(
                shared.vocab.counts[w],
                shared.vocab.train_words,
                shared.hp.sample,
            );
            p >= 1.0 || rng.gen::<f64>() < p
        })
        .collect();
    for (pos, &word) in sentence.iter().enumerate() {
        let reach = rng.gen_range(1..=shared.hp.window);
        let lo = pos.saturating_sub(reach);
        let hi = (pos + reach + 1).min(sentence.len());
        for (ctx_pos, &ctx_word) in sentence.iter().enumerate().take(hi).skip(lo) {
            if ctx_pos == pos {
                continue;
            }
            let input = ctx_word * dim;
            gradient.iter_mut().for_each(|g| *g = 0.0);
            for d in 0..=negatives {
                let (target, label) = if d == 0 {
                    (word, 1.0)
                } else {
                    let noise = draw_noise(&shared.noise, rng);
                    if noise == word {
                        continue;
                    }
                    (noise, 0.0)
                };
                let out = target * dim;
                let mut f = 0.0;
                for c in 0..dim {
                    f += cell_get(&shared.syn0, input + c) * cell_get(&shared.syn1, out + c);
                }
                let g = (label - sigmoid(f)) * alpha;
                for (c, slot) in gradient.iter_mut().enumerate() {
                    let out_v = cell_get(&shared.syn1, out + c);
                    *slot += g * out_v;
                    cell_set(
                        &shared.syn1,
                        out + c,
                        out_v + g * cell_get(&shared.syn0, input + c),
                    );
                }
            }
            for (c, &g) in gradient.iter().enumerate() {
                cell_set(
                    &shared.syn0,
                    input + c,
                    cell_get(&shared.syn0, input + c) + g,
                );
            }
        }
    }
}

fn run_worker(shared: &Shared, docs: &[Vec<usize>], worker: usize, threads: usize, seed: u64) {
    let lr0 = shared.hp.learning_rate;
    let floor = lr0 * LR_FLOOR_FRACTION;
    let span = shared.hp.epochs as u64 * shared.total_words + 1;
    for epoch in 0..shared.hp.epochs {
        let mut rng = shard_rng(seed, worker, epoch);
        for doc in docs.iter().skip(worker).step_by(threads) {
            let done = shared.progress.load(Ordering::Relaxed);
            let alpha = (lr0 * (1.0 - done as f64 / span as f64)).max(floor);
            train_document(doc, shared, alpha, &mut rng);
            shared
                .progress
                .fetch_add(doc.len() as u64, Ordering::Relaxed);
        }
    }
}

/// Trains vectors over pre-tokenized (and phrase-merged) documents.
///
/// `threads` of one reproduces bitwise for a fixed seed; zero means one.
pub fn train_streams(
    streams: &[TokenStream],
    hp: &Hyperparams,
    seed: u64,
    threads: usize,
    slice_label: &str,
) -> Result<Embedding> {
    hp.validate()?;
    let vocab = build_vocab(streams, hp.min_count)?;
    let threads = threads.max(1);

    // Documents as in-vocabulary id sequences; rare words vanish here.
    let docs: Vec<Vec<usize>> = streams
        .iter()
        .map(|s| {
            s.iter()
                .filter_map(|t| vocab.index.get(t.as_str()).copied())
                .collect()
        })
        .collect();
    let total_words: u64 = docs.iter().map(|d| d.len() as u64).sum();

    let dim = hp.dim;
    let mut init = ChaCha8Rng::seed_from_u64(seed);
    let spread = 0.5 / dim as f64;
    let syn0: Vec<AtomicU64> = (0..vocab.terms.len() * dim)
        .map(|_| AtomicU64::new(init.gen_range(-spread..spread).to_bits()))
        .collect();
    let syn1: Vec<AtomicU64> = (0..vocab.terms.len() * dim)
        .map(|_| AtomicU64::new(0.0f64.to_bits()))
        .collect();

    let shared = Shared {
        vocab: &vocab,
        hp,
        noise: noise_table(&vocab.counts),
        syn0,
        syn1,
        progress: AtomicU64::new(0),
        total_words,
    };

    if threads == 1 {
        run_worker(&shared, &docs, 0, 1, seed);
    } else {
        std::thread::scope(|scope| {
            for worker in 0..threads {
                let shared = &shared;
                let docs = &docs;
                scope.spawn(move || run_worker(shared, docs, worker, threads, seed));
            }
        });
    }

    let pairs: Vec<(String, Vec<f64>)> = vocab
        .terms
        .iter()
        .enumerate()
        .map(|(i, term)| {
            let row = (0..dim).map(|c| cell_get(&shared.syn0, i * dim + c)).collect();
            (term.clone(), row)
        })
        .collect();
    let meta = EmbeddingMeta {
        frequency: vocab
            .terms
            .iter()
            .cloned()
            .zip(vocab.counts.iter().copied())
            .collect(),
        slice_label: slice_label.to_string(),
        hyperparams: Some(hp.clone()),
    };
    Embedding::from_vectors(pairs, meta)
}

/// Tokenizes a slice and trains on it directly, with no phrase merging.
pub fn train(slice: &CorpusSlice, hp: &Hyperparams, seed: u64, threads: usize) -> Result<Embedding> {
    train_streams(&slice.token_streams(), hp, seed, threads, &slice.label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::cosine;
    use approx::assert_relative_eq;

    fn small_hp() -> Hyperparams {
        Hyperparams {
            dim: 16,
            min_count: 1,
            sample: 0.0,
            learning_rate: 0.05,
            window: 2,
            negatives: 5,
            epochs: 10,
        }
    }

    /// alpha and beta share contexts; gamma lives elsewhere.
    fn planted_streams() -> Vec<TokenStream> {
        let mut streams = Vec::new();
        for i in 0..120 {
            let twin = if i % 2 == 0 { "alpha" } else { "beta" };
            streams.push(
                format!("filler{} near {} side close", i % 7, twin)
                    .split_whitespace()
                    .map(String::from)
                    .collect(),
            );
            streams.push(
                format!("rock gamma stone cliff ledge{}", i % 5)
                    .split_whitespace()
                    .map(String::from)
                    .collect(),
            );
        }
        streams
    }

    #[test]
    fn same_seed_reproduces_bitwise() {
        let streams = planted_streams();
        let a = train_streams(&streams, &small_hp(), 42, 1, "full").unwrap();
        let b = train_streams(&streams, &small_hp(), 42, 1, "full").unwrap();
        assert_eq!(a.terms(), b.terms());
        for term in a.terms() {
            assert_eq!(a.vector(term).unwrap(), b.vector(term).unwrap());
        }
    }

    #[test]
    fn different_seeds_differ() {
        let streams = planted_streams();
        let a = train_streams(&streams, &small_hp(), 1, 1, "full").unwrap();
        let b = train_streams(&streams, &small_hp(), 2, 1, "full").unwrap();
        assert!(a.terms().iter().any(|t| a.vector(t) != b.vector(t)));
    }

    #[test]
    fn shared_contexts_draw_words_together() {
        let streams = planted_streams();
        let emb = train_streams(&streams, &small_hp(), 7, 1, "full").unwrap();
        let twins = cosine(emb.vector("alpha").unwrap(), emb.vector("beta").unwrap()).unwrap();
        let apart = cosine(emb.vector("alpha").unwrap(), emb.vector("gamma").unwrap()).unwrap();
        assert!(
            twins > apart + 0.2,
            "alpha~beta {twins:.3} not separated from alpha~gamma {apart:.3}"
        );
    }

    #[test]
    fn multithreaded_learns_same_structure() {
        let streams = planted_streams();
        let emb = train_streams(&streams, &small_hp(), 7, 4, "full").unwrap();
        let twins = cosine(emb.vector("alpha").unwrap(), emb.vector("beta").unwrap()).unwrap();
        let apart = cosine(emb.vector("alpha").unwrap(), emb.vector("gamma").unwrap()).unwrap();
        assert!(twins > apart + 0.2);
    }

    #[test]
    fn min_count_prunes_rare_words() {
        let streams: Vec<TokenStream> = vec![
            "common common common rare".split_whitespace().map(String::from).collect(),
            "common common common".split_whitespace().map(String::from).collect(),
        ];
        let hp = Hyperparams {
            min_count: 2,
            ..small_hp()
        };
        let emb = train_streams(&streams, &hp, 0, 1, "full").unwrap();
        assert!(emb.contains("common"));
        assert!(!emb.contains("rare"));
    }

    #[test]
    fn empty_vocabulary_errors() {
        let streams: Vec<TokenStream> =
            vec!["one two three".split_whitespace().map(String::from).collect()];
        let hp = Hyperparams {
            min_count: 50,
            ..small_hp()
        };
        match train_streams(&streams, &hp, 0, 1, "full") {
            Err(Error::EmptyVocabulary(min)) => assert_eq!(min, 50),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn vocabulary_ordered_by_count_then_term() {
        let streams: Vec<TokenStream> = vec![
            "b b b a a c c zz".split_whitespace().map(String::from).collect(),
        ];
        let emb = train_streams(&streams, &small_hp(), 0, 1, "full").unwrap();
        assert_eq!(emb.terms(), &["b", "a", "c", "zz"]);
    }

    #[test]
    fn metadata_records_run() {
        let streams = planted_streams();
        let hp = small_hp();
        let emb = train_streams(&streams, &hp, 3, 1, "1954-2020").unwrap();
        assert_eq!(emb.meta.slice_label, "1954-2020");
        assert_eq!(emb.meta.hyperparams.as_ref(), Some(&hp));
        assert_eq!(emb.meta.frequency.get("alpha").copied(), Some(60));
        assert_eq!(emb.meta.frequency.get("gamma").copied(), Some(120));
    }

    #[test]
    fn keep_probability_behaves() {
        // At exactly the threshold frequency the word is always kept.
        let p = keep_probability(100, 1_000_000, 1e-4);
        assert!(p >= 1.0);
        // A word holding a tenth of the corpus is mostly dropped.
        let p = keep_probability(100_000, 1_000_000, 1e-4);
        assert_relative_eq!(p, (0.001f64).sqrt() + 0.001, epsilon = 1e-12);
        assert!(p < 0.04);
        // Subsampling off keeps everything.
        assert_eq!(keep_probability(999, 1000, 0.0), 1.0);
    }

    #[test]
    fn noise_draws_follow_counts() {
        let table = noise_table(&[800, 100, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut hits = [0u64; 3];
        for _ in 0..20_000 {
            hits[draw_noise(&table, &mut rng)] += 1;
        }
        assert!(hits[0] > hits[1]);
        assert!(hits[1] > hits[2]);
        assert!(hits[2] > 0);
        // The 0.75 power lifts the rare word above its raw share.
        let expected = 1f64.powf(0.75) / (800f64.powf(0.75) + 100f64.powf(0.75) + 1.0);
        let observed = hits[2] as f64 / 20_000.0;
        assert!(observed > expected * 0.2 && observed < expected * 5.0);
    }

    #[test]
    fn single_token_documents_are_harmless() {
        let streams: Vec<TokenStream> = vec![
            vec!["alone".to_string()],
            "pair of words pair of words".split_whitespace().map(String::from).collect(),
        ];
        let emb = train_streams(&streams, &small_hp(), 0, 1, "full").unwrap();
        assert!(emb.contains("alone"));
    }
}
