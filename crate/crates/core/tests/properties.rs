//! Property-based invariants across the pipeline stages.

use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use weatlab::chart::{render_chart, ChartRow, Grouping};
use weatlab::corpus::{slice_temporal, tokenize, Corpus, Document};
use weatlab::embedding::{Embedding, EmbeddingMeta};
use weatlab::namelists::centroid_filter;
use weatlab::phrases::{extract_passes, BigramCounts, PhraseConfig};
use weatlab::weat::{bootstrap_se, effect_size, WordList};
use weatlab::Error;

fn embedding_strategy() -> impl Strategy<Value = Embedding> {
    (2usize..=4)
        .prop_flat_map(|dim| {
            prop::collection::vec(
                prop::collection::vec(-1.0f64..1.0, dim).prop_filter("vector too small", |v| {
                    v.iter().map(|c| c * c).sum::<f64>().sqrt() > 1e-3
                }),
                8..=12,
            )
        })
        .prop_map(|vectors| {
            let pairs = vectors
                .into_iter()
                .enumerate()
                .map(|(i, v)| (format!("t{i:02}"), v))
                .collect();
            Embedding::from_vectors(pairs, EmbeddingMeta::default()).unwrap()
        })
}

/// Balanced disjoint X, Y, A, B drawn from the embedding vocabulary.
fn quadruple(emb: &Embedding, seed: u64) -> (WordList, WordList, WordList, WordList) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = emb.terms().to_vec();
    terms.shuffle(&mut r);
    let split = (terms.len() - 4) / 2;
    (
        WordList::new("x", terms[..2].iter().cloned()),
        WordList::new("y", terms[2..4].iter().cloned()),
        WordList::new("a", terms[4..4 + split].iter().cloned()),
        WordList::new("b", terms[4 + split..].iter().cloned()),
    )
}

proptest! {
    /// Tokenizing the whitespace-joined output reproduces the output.
    #[test]
    fn tokenize_is_idempotent(text in any::<String>()) {
        let tokens = tokenize(&text);
        prop_assert_eq!(tokenize(&tokens.join(" ")), tokens);
    }

    /// Tokens never carry leading, trailing, or doubled joiners.
    #[test]
    fn tokens_are_well_formed(text in any::<String>()) {
        for token in tokenize(&text) {
            prop_assert!(!token.starts_with(['-', '\'']));
            prop_assert!(!token.ends_with(['-', '\'']));
            prop_assert!(!token.contains("--"));
            prop_assert!(token.chars().any(char::is_alphanumeric));
        }
    }

    /// Scores stay inside [-1, 1] for observed and absent pairs alike.
    #[test]
    fn npmi_is_bounded(
        streams in prop::collection::vec(
            prop::collection::vec(prop::sample::select(vec!["a", "b", "c"]), 1..20)
                .prop_map(|s| s.into_iter().map(String::from).collect::<Vec<_>>()),
            1..8,
        )
    ) {
        let counts = BigramCounts::count(&streams);
        for left in ["a", "b", "c", "zz"] {
            for right in ["a", "b", "c", "zz"] {
                let score = counts.npmi(left, right);
                prop_assert!((-1.0 - 1e-9..=1.0 + 1e-9).contains(&score), "npmi {score}");
            }
        }
        prop_assert_eq!(counts.npmi("zz", "a"), -1.0);
    }

    /// Splitting merged tokens on the joiner recovers the input streams
    /// exactly, whatever the extraction settings.
    #[test]
    fn phrase_merge_is_lossless(
        streams in prop::collection::vec(
            prop::collection::vec("[a-f]{1,3}", 2..25),
            1..10,
        ),
        min_npmi in -1.0f64..1.0,
        min_count in 1u64..5,
        passes in 1u32..=3,
    ) {
        let config = PhraseConfig { min_npmi, min_count, passes };
        let (merged, dictionaries) = extract_passes(&streams, &config);
        prop_assert_eq!(dictionaries.len(), passes as usize);
        prop_assert_eq!(merged.len(), streams.len());
        for (before, after) in streams.iter().zip(&merged) {
            let recovered: Vec<&str> =
                after.iter().flat_map(|t| t.split('-')).collect();
            let original: Vec<&str> = before.iter().map(String::as_str).collect();
            prop_assert_eq!(recovered, original);
        }
    }

    /// First occurrence wins; order is preserved; nothing is lost.
    #[test]
    fn wordlist_dedups_preserving_order(terms in prop::collection::vec("[A-Za-z]{1,8}", 0..30)) {
        let list = WordList::new("probe", terms.clone());
        let mut seen = HashSet::new();
        let expected: Vec<String> =
            terms.into_iter().filter(|t| seen.insert(t.clone())).collect();
        prop_assert_eq!(list.terms(), expected.as_slice());
        prop_assert_eq!(list.is_empty(), expected.is_empty());
    }

    /// d is a set statistic: reordering terms inside each list moves it
    /// by float-sum noise at most.
    #[test]
    fn effect_size_ignores_list_order(emb in embedding_strategy(), seed in any::<u64>()) {
        let (x, y, a, b) = quadruple(&emb, seed);
        let reorder = |list: &WordList| {
            let mut terms = list.terms().to_vec();
            terms.reverse();
            WordList::new(list.name(), terms)
        };
        let forward = effect_size(&emb, &x, &y, &a, &b);
        let reordered =
            effect_size(&emb, &reorder(&x), &reorder(&y), &reorder(&a), &reorder(&b));
        match (forward, reordered) {
            (Ok(d0), Ok(d1)) => prop_assert!((d0 - d1).abs() <= 1e-12, "{d0} vs {d1}"),
            (Err(Error::DegenerateEffectSize), Err(Error::DegenerateEffectSize)) => {}
            (lhs, rhs) => prop_assert!(false, "diverged: {lhs:?} vs {rhs:?}"),
        }
    }

    /// The resampled spread is a finite nonnegative number whenever the
    /// resamples are stable enough to report.
    #[test]
    fn bootstrap_se_is_finite_and_nonnegative(
        emb in embedding_strategy(),
        seed in any::<u64>(),
        iterations in 1u32..40,
    ) {
        let (x, y, a, b) = quadruple(&emb, seed);
        match bootstrap_se(&emb, &x, &y, &a, &b, iterations, seed) {
            Ok(bs) => {
                prop_assert!(bs.se.is_finite() && bs.se >= 0.0, "se {}", bs.se);
                prop_assert!(bs.degenerate <= iterations);
            }
            Err(Error::BootstrapUnstable { .. }) => {}
            Err(other) => prop_assert!(false, "unexpected error: {other}"),
        }
    }

    /// Widening the cutoff only ever adds documents.
    #[test]
    fn temporal_slices_grow_downward(
        years in prop::collection::vec(1800i32..=2024, 1..40),
        early in 1800i32..=2024,
        late in 1800i32..=2024,
    ) {
        let (early, late) = (early.min(late), early.max(late));
        let docs = years.iter().enumerate().map(|(i, &year)| Document {
            id: format!("d{i}"),
            text: "placeholder".into(),
            year,
            jurisdiction: "US".into(),
            topics: BTreeSet::new(),
        });
        let corpus = Corpus::ingest(docs, 2024).unwrap();
        let ids = |cutoff: i32| -> BTreeSet<String> {
            slice_temporal(&corpus, cutoff, 2024)
                .unwrap()
                .documents()
                .iter()
                .map(|d| d.id.clone())
                .collect()
        };
        let wide = ids(early);
        let narrow = ids(late);
        prop_assert!(narrow.is_subset(&wide));
    }

    /// The chart is a function of the row set, not the row order.
    #[test]
    fn chart_ignores_row_order(
        rows in prop::collection::btree_map(
            ("[a-d]{1,3}", "[w-z]{1,3}"),
            (-3.0f64..3.0, 0.0f64..1.0),
            1..12,
        ),
        seed in any::<u64>(),
    ) {
        let rows: Vec<ChartRow> = rows
            .into_iter()
            .map(|((test_id, slice_label), (d, se))| ChartRow {
                test_id,
                slice_label,
                d,
                se,
            })
            .collect();
        let mut shuffled = rows.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let svg_a = render_chart(&rows, Grouping::BySlice, "t").unwrap();
        let svg_b = render_chart(&shuffled, Grouping::BySlice, "t").unwrap();
        prop_assert_eq!(svg_a, svg_b);
    }

    /// Kept plus dropped partitions the candidates, and the far-from-centroid
    /// removals number exactly ceil(drop_frac * in_vocab).
    #[test]
    fn centroid_filter_partitions_candidates(
        emb in embedding_strategy(),
        extra in prop::collection::vec("[A-Z][a-z]{2,6}", 0..6),
        drop_frac in 0.0f64..0.9,
    ) {
        let mut names = emb.terms().to_vec();
        names.extend(extra.clone());
        names.sort();
        names.dedup();
        let in_vocab = names.iter().filter(|n| emb.contains(n)).count();
        let outcome = centroid_filter(&names, &emb, drop_frac, &names).unwrap();
        prop_assert_eq!(outcome.kept.len() + outcome.dropped.len(), names.len());
        let far = outcome
            .dropped
            .iter()
            .filter(|d| d.reason.starts_with("far-from-centroid"))
            .count();
        prop_assert_eq!(far, (drop_frac * in_vocab as f64).ceil() as usize);
        let oov = outcome
            .dropped
            .iter()
            .filter(|d| d.reason == "out-of-vocabulary")
            .count();
        prop_assert_eq!(oov, names.len() - in_vocab);
    }

    /// Text persistence round-trips every vector bit for bit.
    #[test]
    fn embedding_io_round_trips(emb in embedding_strategy()) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("probe.vec");
        emb.save_path(&path).unwrap();
        let loaded = Embedding::load_path(&path).unwrap();
        prop_assert_eq!(loaded.terms(), emb.terms());
        for term in emb.terms() {
            let (u, v) = (emb.vector(term).unwrap(), loaded.vector(term).unwrap());
            prop_assert_eq!(u.len(), v.len());
            for (lhs, rhs) in u.iter().zip(v) {
                prop_assert_eq!(lhs.to_bits(), rhs.to_bits());
            }
        }
    }
}
