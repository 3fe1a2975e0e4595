//! Command-line front end: phrase extraction, embedding training, name
//! list construction, lexicon expansion, association tests, config
//! sweeps, and chart rendering.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use weatlab::chart::{render_chart, Grouping};
use weatlab::corpus::{self, Corpus};
use weatlab::embedding::{train_streams, Embedding, Hyperparams};
use weatlab::fixtures;
use weatlab::lexicon::{expand, write_expansion_path, SeedPair};
use weatlab::namelists::{
    build_list, document_frequency, read_census_path, read_judges_path, NameListSpec, NameSource,
    RaceGroup,
};
use weatlab::phrases::{extract_passes, PhraseConfig};
use weatlab::report::{chart_rows_from_csv, run_suite, RunConfig};
use weatlab::weat::{run_test, WeatOptions, WordList};

#[derive(Parser)]
#[command(
    name = "weatlab",
    version,
    about = "Train corpus embeddings and measure group associations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Corpus loading options shared by corpus-reading subcommands.
#[derive(Args)]
struct CorpusArgs {
    /// NDJSON corpus file, one document per line.
    #[arg(long)]
    corpus: PathBuf,
    /// Reject documents dated after this year.
    #[arg(long)]
    max_year: Option<i32>,
}

impl CorpusArgs {
    fn load(&self) -> anyhow::Result<Corpus> {
        let max_year = self.max_year.unwrap_or_else(corpus::current_year);
        Ok(Corpus::from_path(&self.corpus, max_year)?)
    }
}

/// Slice selection shared by `train`.
#[derive(Args)]
struct SliceArgs {
    /// Keep only documents from this year onward.
    #[arg(long)]
    cutoff: Option<i32>,
    /// Upper year bound for --cutoff (defaults to the newest document).
    #[arg(long)]
    end_year: Option<i32>,
    /// Keep only documents tagged with this legal division.
    #[arg(long, conflicts_with_all = ["cutoff", "end_year"])]
    division: Option<String>,
}

#[derive(Args)]
struct PhraseArgs {
    /// Minimum NPMI for a bigram to merge.
    #[arg(long, default_value_t = PhraseConfig::default().min_npmi)]
    min_npmi: f64,
    /// Minimum bigram count to merge.
    #[arg(long, default_value_t = PhraseConfig::default().min_count)]
    phrase_min_count: u64,
    /// Extraction passes (two captures three-word phrases).
    #[arg(long, default_value_t = PhraseConfig::default().passes)]
    passes: u32,
}

impl PhraseArgs {
    fn config(&self) -> PhraseConfig {
        PhraseConfig {
            min_npmi: self.min_npmi,
            min_count: self.phrase_min_count,
            passes: self.passes,
        }
    }
}

#[derive(Args)]
struct HyperparamArgs {
    #[arg(long, default_value_t = Hyperparams::default().dim)]
    dim: usize,
    /// Vocabulary frequency floor.
    #[arg(long = "min-count", default_value_t = Hyperparams::default().min_count)]
    min_count: u64,
    /// Frequent-word subsampling threshold.
    #[arg(long, default_value_t = Hyperparams::default().sample)]
    sample: f64,
    #[arg(long, default_value_t = Hyperparams::default().learning_rate)]
    learning_rate: f64,
    #[arg(long, default_value_t = Hyperparams::default().window)]
    window: usize,
    #[arg(long, default_value_t = Hyperparams::default().negatives)]
    negatives: usize,
    #[arg(long, default_value_t = Hyperparams::default().epochs)]
    epochs: u32,
}

impl HyperparamArgs {
    fn config(&self) -> Hyperparams {
        Hyperparams {
            dim: self.dim,
            min_count: self.min_count,
            sample: self.sample,
            learning_rate: self.learning_rate,
            window: self.window,
            negatives: self.negatives,
            epochs: self.epochs,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupBy {
    Slice,
    Test,
}

#[derive(Subcommand)]
enum Command {
    /// Extract collocation phrases and write one TSV per pass.
    ExtractPhrases {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        phrases: PhraseArgs,
        /// Directory for pass1.tsv, pass2.tsv, ...
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Train a skip-gram embedding and save it as text vectors.
    Train {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        slice: SliceArgs,
        #[command(flatten)]
        phrases: PhraseArgs,
        #[command(flatten)]
        hyperparams: HyperparamArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; more than one trades bit-reproducibility for
        /// speed.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Output vector file; metadata goes to a .meta.json sidecar.
        #[arg(long)]
        output: PathBuf,
    },
    /// Build a demographic name list from census or judge records.
    BuildLists {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        phrases: PhraseArgs,
        /// Census surname CSV (requires --group).
        #[arg(long, conflicts_with = "judges")]
        census: Option<PathBuf>,
        /// Race group to select from the census file.
        #[arg(long)]
        group: Option<String>,
        /// Judge biography CSV (requires --gender).
        #[arg(long)]
        judges: Option<PathBuf>,
        /// Gender label to select from the judges file.
        #[arg(long)]
        gender: Option<String>,
        /// Trained vectors for the centroid filter.
        #[arg(long)]
        embedding: PathBuf,
        /// Name of the list, used for output file names.
        #[arg(long)]
        label: String,
        #[arg(long, default_value_t = 0.90)]
        min_prob: f64,
        #[arg(long)]
        target_size: usize,
        #[arg(long, default_value_t = 300)]
        min_docs: u64,
        #[arg(long, default_value_t = 0.20)]
        drop_frac: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for <label>.txt and <label>.provenance.json.
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Expand seed lexicons along the axis between two seed lists.
    ExpandLexicon {
        /// Trained vectors.
        #[arg(long)]
        embedding: PathBuf,
        /// Positive seed list: a file path or @bundled-name.
        #[arg(long)]
        positive: String,
        /// Negative seed list: a file path or @bundled-name.
        #[arg(long)]
        negative: String,
        /// Terms admitted per pole.
        #[arg(long, default_value_t = 100)]
        k: usize,
        /// Extra exclusion list (file path or @bundled-name).
        #[arg(long)]
        exclude: Option<String>,
        /// Normalize seed vectors before summing.
        #[arg(long)]
        normalize: bool,
        /// Output TSV; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one association test and print the result as JSON.
    Weat {
        /// Trained vectors.
        #[arg(long)]
        embedding: PathBuf,
        /// Target list X (file path or @bundled-name).
        #[arg(long)]
        target_x: String,
        /// Target list Y.
        #[arg(long)]
        target_y: String,
        /// Attribute list A.
        #[arg(long)]
        attr_a: String,
        /// Attribute list B.
        #[arg(long)]
        attr_b: String,
        #[arg(long, default_value_t = 1000)]
        iterations: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Keep unequal target list sizes instead of downsampling.
        #[arg(long)]
        no_balance: bool,
    },
    /// Run a whole configured suite and write report files.
    Sweep {
        /// TOML run configuration.
        #[arg(long)]
        config: PathBuf,
    },
    /// Render a report.csv as an SVG bar chart.
    Chart {
        /// Input report.csv from a sweep.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = GroupBy::Slice)]
        group_by: GroupBy,
        #[arg(long, default_value = "Association effect sizes")]
        title: String,
    },
}

/// Resolves `@name` against the bundled catalog, anything else as a
/// file path.
fn load_list(spec: &str) -> anyhow::Result<WordList> {
    if let Some(name) = spec.strip_prefix('@') {
        return fixtures::bundled(name)
            .with_context(|| format!("no bundled list named {name:?}"));
    }
    Ok(WordList::from_path(Path::new(spec))?)
}

fn run_extract_phrases(
    corpus: &CorpusArgs,
    phrases: &PhraseArgs,
    out_dir: &Path,
) -> anyhow::Result<()> {
    let corpus = corpus.load()?;
    let slice = corpus::slice_full(&corpus);
    let (_, dictionaries) = extract_passes(&slice.token_streams(), &phrases.config());
    std::fs::create_dir_all(out_dir)?;
    for (i, dict) in dictionaries.iter().enumerate() {
        let path = out_dir.join(format!("pass{}.tsv", i + 1));
        dict.write_tsv_path(&path)?;
        println!("pass {}: {} phrases -> {}", i + 1, dict.len(), path.display());
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_train(
    corpus_args: &CorpusArgs,
    slice_args: &SliceArgs,
    phrases: &PhraseArgs,
    hyperparams: &HyperparamArgs,
    seed: u64,
    threads: usize,
    output: &Path,
) -> anyhow::Result<()> {
    let corpus = corpus_args.load()?;
    let slice = match (&slice_args.division, slice_args.cutoff) {
        (Some(division), _) => corpus::slice_topical(&corpus, division, true)?,
        (None, Some(cutoff)) => {
            let end = slice_args.end_year.unwrap_or_else(|| {
                corpus
                    .documents()
                    .iter()
                    .map(|d| d.year)
                    .max()
                    .unwrap_or(corpus::MIN_YEAR)
            });
            corpus::slice_temporal(&corpus, cutoff, end)?
        }
        (None, None) => corpus::slice_full(&corpus),
    };
    if slice.is_empty() {
        bail!("slice {:?} selected no documents", slice.label);
    }
    let (streams, _) = extract_passes(&slice.token_streams(), &phrases.config());
    let emb = train_streams(&streams, &hyperparams.config(), seed, threads, &slice.label)?;
    emb.save_path(output)?;
    println!(
        "trained {} terms x {} dims on slice {:?} -> {}",
        emb.len(),
        emb.dim(),
        slice.label,
        output.display()
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_build_lists(
    corpus_args: &CorpusArgs,
    phrases: &PhraseArgs,
    census: Option<&Path>,
    group: Option<&str>,
    judges: Option<&Path>,
    gender: Option<&str>,
    embedding: &Path,
    spec: &NameListSpec,
    seed: u64,
    out_dir: &Path,
) -> anyhow::Result<()> {
    let census_rows;
    let judge_rows;
    let source = match (census, judges) {
        (Some(census), None) => {
            let group: RaceGroup = group
                .context("--census requires --group")?
                .parse()?;
            census_rows = read_census_path(census)?;
            NameSource::Census {
                rows: &census_rows,
                group,
            }
        }
        (None, Some(judges)) => {
            let gender = gender.context("--judges requires --gender")?;
            judge_rows = read_judges_path(judges)?;
            NameSource::Judges {
                rows: &judge_rows,
                gender,
            }
        }
        _ => bail!("pass exactly one of --census or --judges"),
    };

    let corpus = corpus_args.load()?;
    let slice = corpus::slice_full(&corpus);
    let (streams, dictionaries) = extract_passes(&slice.token_streams(), &phrases.config());
    let dict = dictionaries.into_iter().next_back().unwrap_or_default();
    let doc_freq = document_frequency(&streams);
    let emb = Embedding::load_path(embedding)?;

    let (list, report) = build_list(spec, &source, &emb, &dict, &doc_freq, seed)?;
    std::fs::create_dir_all(out_dir)?;
    let list_path = out_dir.join(format!("{}.txt", spec.label));
    let mut text = list.terms().join("\n");
    text.push('\n');
    std::fs::write(&list_path, text)?;
    let prov_path = out_dir.join(format!("{}.provenance.json", spec.label));
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    std::fs::write(&prov_path, json)?;
    println!(
        "built {} names ({}shortfall) -> {}",
        list.len(),
        if report.shortfall { "" } else { "no " },
        list_path.display()
    );
    Ok(())
}

fn run_expand_lexicon(
    embedding: &Path,
    positive: &str,
    negative: &str,
    k: usize,
    exclude: Option<&str>,
    normalize: bool,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    let emb = Embedding::load_path(embedding)?;
    let exclusions: BTreeSet<String> = match exclude {
        Some(spec) => load_list(spec)?.terms().iter().cloned().collect(),
        None => BTreeSet::new(),
    };
    let pair = SeedPair::new(load_list(positive)?, load_list(negative)?, k, exclusions)?;
    let expansion = expand(&pair, &emb, normalize)?;
    match out {
        Some(path) => {
            write_expansion_path(&expansion, path)?;
            println!(
                "expanded {} + {} terms -> {}",
                expansion.positive.len(),
                expansion.negative.len(),
                path.display()
            );
        }
        None => {
            let mut buffer = Vec::new();
            weatlab::lexicon::write_expansion_tsv(&expansion, &mut buffer)?;
            print!("{}", String::from_utf8_lossy(&buffer));
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_weat(
    embedding: &Path,
    target_x: &str,
    target_y: &str,
    attr_a: &str,
    attr_b: &str,
    iterations: u32,
    seed: u64,
    no_balance: bool,
) -> anyhow::Result<()> {
    let emb = Embedding::load_path(embedding)?;
    let slice_label = emb.meta.slice_label.clone();
    let opts = WeatOptions {
        iterations,
        seed,
        balance_targets: !no_balance,
    };
    let result = run_test(
        &emb,
        &load_list(target_x)?,
        &load_list(target_y)?,
        &load_list(attr_a)?,
        &load_list(attr_b)?,
        &slice_label,
        &opts,
    )?;
    println!("{}", serde_json::to_string_pretty(&result)?);
    Ok(())
}

fn run_chart(input: &Path, output: &Path, group_by: GroupBy, title: &str) -> anyhow::Result<()> {
    let text = std::fs::read_to_string(input)
        .with_context(|| format!("reading {}", input.display()))?;
    let rows = chart_rows_from_csv(&text)?;
    let grouping = match group_by {
        GroupBy::Slice => Grouping::BySlice,
        GroupBy::Test => Grouping::ByTest,
    };
    let svg = render_chart(&rows, grouping, title)?;
    std::fs::write(output, svg)?;
    println!("chart with {} bars -> {}", rows.len(), output.display());
    Ok(())
}

fn run_sweep(config_path: &Path) -> anyhow::Result<()> {
    let config = RunConfig::from_path(config_path)?;
    std::fs::create_dir_all(&config.output_dir)?;
    let report = run_suite(&config)?;
    let failures = report.rows.iter().filter(|r| r.error.is_some()).count();
    println!(
        "{} rows ({} error rows) -> {}",
        report.rows.len(),
        failures,
        report.csv_path.display()
    );
    if let Some(chart) = &report.chart_path {
        println!("chart -> {}", chart.display());
    }
    Ok(())
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    match &cli.command {
        Command::ExtractPhrases {
            corpus,
            phrases,
            out_dir,
        } => run_extract_phrases(corpus, phrases, out_dir),
        Command::Train {
            corpus,
            slice,
            phrases,
            hyperparams,
            seed,
            threads,
            output,
        } => run_train(corpus, slice, phrases, hyperparams, *seed, *threads, output),
        Command::BuildLists {
            corpus,
            phrases,
            census,
            group,
            judges,
            gender,
            embedding,
            label,
            min_prob,
            target_size,
            min_docs,
            drop_frac,
            seed,
            out_dir,
        } => {
            let spec = NameListSpec {
                label: label.clone(),
                min_prob: *min_prob,
                target_size: *target_size,
                min_docs: *min_docs,
                drop_frac: *drop_frac,
            };
            run_build_lists(
                corpus,
                phrases,
                census.as_deref(),
                group.as_deref(),
                judges.as_deref(),
                gender.as_deref(),
                embedding,
                &spec,
                *seed,
                out_dir,
            )
        }
        Command::ExpandLexicon {
            embedding,
            positive,
            negative,
            k,
            exclude,
            normalize,
            out,
        } => run_expand_lexicon(
            embedding,
            positive,
            negative,
            *k,
            exclude.as_deref(),
            *normalize,
            out.as_deref(),
        ),
        Command::Weat {
            embedding,
            target_x,
            target_y,
            attr_a,
            attr_b,
            iterations,
            seed,
            no_balance,
        } => run_weat(
            embedding,
            target_x,
            target_y,
            attr_a,
            attr_b,
            *iterations,
            *seed,
            *no_balance,
        ),
        Command::Sweep { config } => run_sweep(config),
        Command::Chart {
            input,
            output,
            group_by,
            title,
        } => run_chart(input, output, *group_by, title),
    }
}
