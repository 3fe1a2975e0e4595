//! # weatlab
//!
//! A corpus-to-report toolkit for auditing group bias encoded in word
//! embeddings. It covers the whole desk-scale pipeline:
//!
//! - [`corpus`]: document ingestion (newline-delimited JSON), tokenization,
//!   and temporal/topical sub-corpus selection.
//! - [`phrases`]: two-pass idiomatic phrase extraction with NPMI collocation
//!   scoring, merging phrases like `pro hac vice` into single tokens.
//! - [`embedding`]: a skip-gram word2vec trainer with negative sampling,
//!   cosine similarity, nearest-neighbor queries, and the word2vec text
//!   file format.
//! - [`weat`]: word embedding association tests — Cohen's d effect sizes
//!   with bootstrap standard errors over target/attribute word lists.
//! - [`lexicon`]: minimally supervised seed-list expansion along an axis in
//!   embedding space (e.g. positive/negative valence, career/family).
//! - [`namelists`]: demographic proxy target lists built from census
//!   surname data and judicial biographies, with phrase-based exclusion and
//!   centroid filtering.
//! - [`report`]: configuration-driven sweeps over embedding slices, with
//!   CSV/JSON reports and SVG charts ([`chart`]); [`fixtures`] carries the
//!   bundled target and attribute word lists.
//!
//! Everything downstream of ingestion is deterministic under a fixed seed;
//! repeated runs of the same configuration produce byte-identical outputs.

pub mod chart;
pub mod corpus;
pub mod embedding;
pub mod error;
pub mod fixtures;
pub mod lexicon;
pub mod namelists;
pub mod phrases;
pub mod report;
pub mod weat;

pub use error::{Error, Result};
