//! Word-embedding association tests: effect sizes and bootstrap errors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::embedding::{cosine, Embedding};
use crate::error::{Error, Result};

/// A named, duplicate-free, order-preserving term list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordList {
    pub name: String,
    terms: Vec<String>,
}

impl WordList {
    /// Builds a list, silently dropping repeated terms but keeping first
    /// occurrence order.
    pub fn new<I, S>(name: &str, terms: I) -> WordList
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut seen = std::collections::HashSet::new();
        let terms = terms
            .into_iter()
            .map(Into::into)
            .filter(|t| seen.insert(t.clone()))
            .collect();
        WordList {
            name: name.to_string(),
            terms,
        }
    }

    /// Parses one term per line; blank lines and `#` comments are skipped.
    pub fn from_lines(name: &str, text: &str) -> WordList {
        WordList::new(
            name,
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_string),
        )
    }

    /// Reads a list file, named by its file stem.
    pub fn from_path(path: &std::path::Path) -> Result<WordList> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "list".to_string());
        Ok(WordList::from_lines(&name, &text))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Differential association of one word with attribute lists A and B:
/// its mean cosine to A minus its mean cosine to B.
pub fn association(emb: &Embedding, word: &str, a: &WordList, b: &WordList) -> Result<f64> {
    let w = emb.require(word)?;
    let mean = |list: &WordList| -> Result<f64> {
        let mut sum = 0.0;
        for term in list.terms() {
            sum += cosine(w, emb.require(term)?)?;
        }
        Ok(sum / list.len() as f64)
    };
    Ok(mean(a)? - mean(b)?)
}

/// Cosines between every target word and every attribute word, computed
/// once so resampling never touches the embedding again.
struct CosineGrid {
    /// `xa[i][j]` is cos(x_i, a_j); likewise for the other three blocks.
    xa: Vec<Vec<f64>>,
    xb: Vec<Vec<f64>>,
    ya: Vec<Vec<f64>>,
    yb: Vec<Vec<f64>>,
}

fn grid_block(emb: &Embedding, targets: &WordList, attrs: &WordList) -> Result<Vec<Vec<f64>>> {
    targets
        .terms()
        .iter()
        .map(|t| {
            let tv = emb.require(t)?;
            attrs
                .terms()
                .iter()
                .map(|a| cosine(tv, emb.require(a)?))
                .collect()
        })
        .collect()
}

impl CosineGrid {
    fn new(
        emb: &Embedding,
        x: &WordList,
        y: &WordList,
        a: &WordList,
        b: &WordList,
    ) -> Result<CosineGrid> {
        if x.is_empty() || y.is_empty() || a.is_empty() || b.is_empty() {
            return Err(Error::DegenerateEffectSize);
        }
        Ok(CosineGrid {
            xa: grid_block(emb, x, a)?,
            xb: grid_block(emb, x, b)?,
            ya: grid_block(emb, y, a)?,
            yb: grid_block(emb, y, b)?,
        })
    }

    fn association_of(row_a: &[f64], row_b: &[f64], ai: &[usize], bi: &[usize]) -> f64 {
        let ma: f64 = ai.iter().map(|&j| row_a[j]).sum::<f64>() / ai.len() as f64;
        let mb: f64 = bi.iter().map(|&j| row_b[j]).sum::<f64>() / bi.len() as f64;
        ma - mb
    }

    /// Effect size over index selections into the four lists.
    ///
    /// The pooled mean and spread are built from per-list partial sums, so
    /// swapping the two target lists (or the two attribute lists) negates
    /// the result exactly, bit for bit.
    fn effect_size(&self, xi: &[usize], yi: &[usize], ai: &[usize], bi: &[usize]) -> Result<f64> {
        let sx: Vec<f64> = xi
            .iter()
            .map(|&i| Self::association_of(&self.xa[i], &self.xb[i], ai, bi))
            .collect();
        let sy: Vec<f64> = yi
            .iter()
            .map(|&i| Self::association_of(&self.ya[i], &self.yb[i], ai, bi))
            .collect();
        let (nx, ny) = (sx.len() as f64, sy.len() as f64);
        let sum_x: f64 = sx.iter().sum();
        let sum_y: f64 = sy.iter().sum();
        let pooled_mean = (sum_x + sum_y) / (nx + ny);
        let ssd_x: f64 = sx.iter().map(|s| (s - pooled_mean) * (s - pooled_mean)).sum();
        let ssd_y: f64 = sy.iter().map(|s| (s - pooled_mean) * (s - pooled_mean)).sum();
        let variance = (ssd_x + ssd_y) / (nx + ny);
        if variance <= 0.0 || !variance.is_finite() {
            return Err(Error::DegenerateEffectSize);
        }
        Ok((sum_x / nx - sum_y / ny) / variance.sqrt())
    }
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Effect size d: the gap between the two target lists' mean differential
/// associations, in units of the pooled population deviation.
pub fn effect_size(
    emb: &Embedding,
    x: &WordList,
    y: &WordList,
    a: &WordList,
    b: &WordList,
) -> Result<f64> {
    let grid = CosineGrid::new(emb, x, y, a, b)?;
    grid.effect_size(
        &identity(x.len()),
        &identity(y.len()),
        &identity(a.len()),
        &identity(b.len()),
    )
}

/// Bootstrap outcome: spread of the effect size under list resampling.
#[derive(Debug, Clone, Copy)]
pub struct BootstrapSe {
    pub se: f64,
    /// Resamples discarded because their pooled spread collapsed.
    pub degenerate: u32,
}

/// Standard error of d by resampling all four lists with replacement.
///
/// Iteration `i` draws from a generator seeded with `seed + i` and
/// resamples X, Y, A, B in that order, each to its full length, taking
/// uniform indices into the list. The standard error is the sample
/// deviation of the surviving effect sizes; if most resamples collapse,
/// the instance is reported unstable instead.
pub fn bootstrap_se(
    emb: &Embedding,
    x: &WordList,
    y: &WordList,
    a: &WordList,
    b: &WordList,
    iterations: u32,
    seed: u64,
) -> Result<BootstrapSe> {
    if iterations == 0 {
        return Err(Error::Config("bootstrap iterations must be positive".into()));
    }
    let grid = CosineGrid::new(emb, x, y, a, b)?;
    let mut ds = Vec::with_capacity(iterations as usize);
    let mut degenerate = 0u32;
    for i in 0..iterations {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let draw = |rng: &mut ChaCha8Rng, n: usize| -> Vec<usize> {
            (0..n).map(|_| rng.gen_range(0..n)).collect()
        };
        let xi = draw(&mut rng, x.len());
        let yi = draw(&mut rng, y.len());
        let ai = draw(&mut rng, a.len());
        let bi = draw(&mut rng, b.len());
        match grid.effect_size(&xi, &yi, &ai, &bi) {
            Ok(d) => ds.push(d),
            Err(Error::DegenerateEffectSize) => degenerate += 1,
            Err(e) => return Err(e),
        }
    }
    if ds.len() < (iterations as usize).div_ceil(2) {
        return Err(Error::BootstrapUnstable {
            degenerate: degenerate as usize,
            iterations: iterations as usize,
        });
    }
    let n = ds.len() as f64;
    let mean = ds.iter().sum::<f64>() / n;
    let se = if ds.len() < 2 {
        0.0
    } else {
        (ds.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / (n - 1.0)).sqrt()
    };
    Ok(BootstrapSe { se, degenerate })
}

/// Drops terms absent from the embedding, preserving order; errors when
/// nothing survives. Returns the kept list and the dropped count.
pub fn filter_to_vocab(
    emb: &Embedding,
    list: &WordList,
    slice_label: &str,
) -> Result<(WordList, usize)> {
    let kept = WordList::new(
        &list.name,
        list.terms().iter().filter(|t| emb.contains(t)).cloned(),
    );
    let dropped = list.len() - kept.len();
    if kept.is_empty() {
        return Err(Error::EmptyWordList {
            list: list.name.clone(),
            slice: slice_label.to_string(),
        });
    }
    Ok((kept, dropped))
}

/// Downsamples the larger list to the smaller's size with a seeded draw,
/// keeping original order. Equal sizes pass through untouched. Balanced
/// targets keep the effect size inside [-2, 2].
pub fn balance_pair(x: &WordList, y: &WordList, seed: u64) -> (WordList, WordList) {
    let target = x.len().min(y.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shrink = |list: &WordList| -> WordList {
        if list.len() == target {
            return list.clone();
        }
        let mut picked = rand::seq::index::sample(&mut rng, list.len(), target).into_vec();
        picked.sort_unstable();
        WordList::new(
            &list.name,
            picked.into_iter().map(|i| list.terms()[i].clone()),
        )
    };
    (shrink(x), shrink(y))
}

/// Settings for one full test evaluation.
#[derive(Debug, Clone)]
pub struct WeatOptions {
    pub iterations: u32,
    pub seed: u64,
    /// Downsample the larger target list to match the smaller.
    pub balance_targets: bool,
}

impl Default for WeatOptions {
    fn default() -> Self {
        WeatOptions {
            iterations: 1000,
            seed: 0,
            balance_targets: true,
        }
    }
}

/// One evaluated test instance.
#[derive(Debug, Clone, Serialize)]
pub struct WeatResult {
    pub d: f64,
    pub se: f64,
    pub n_x: usize,
    pub n_y: usize,
    pub n_a: usize,
    pub n_b: usize,
    /// Terms lost to vocabulary filtering across all four lists.
    pub dropped: usize,
    pub degenerate_resamples: u32,
}

/// Filters, optionally balances, and evaluates one test on an embedding.
/// The balancing draw is seeded with `seed - 1`, outside the bootstrap's
/// `seed + i` family.
pub fn run_test(
    emb: &Embedding,
    x: &WordList,
    y: &WordList,
    a: &WordList,
    b: &WordList,
    slice_label: &str,
    opts: &WeatOptions,
) -> Result<WeatResult> {
    let (x, dx) = filter_to_vocab(emb, x, slice_label)?;
    let (y, dy) = filter_to_vocab(emb, y, slice_label)?;
    let (a, da) = filter_to_vocab(emb, a, slice_label)?;
    let (b, db) = filter_to_vocab(emb, b, slice_label)?;
    let (x, y) = if opts.balance_targets {
        balance_pair(&x, &y, opts.seed.wrapping_sub(1))
    } else {
        (x, y)
    };
    let d = effect_size(emb, &x, &y, &a, &b)?;
    let boot = bootstrap_se(emb, &x, &y, &a, &b, opts.iterations, opts.seed)?;
    Ok(WeatResult {
        d,
        se: boot.se,
        n_x: x.len(),
        n_y: y.len(),
        n_a: a.len(),
        n_b: b.len(),
        dropped: dx + dy + da + db,
        degenerate_resamples: boot.degenerate,
    })
}
