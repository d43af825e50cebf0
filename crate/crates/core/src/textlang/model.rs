use std::collections::BTreeMap;
use std::fs::File;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{jaccard, SynonymItem, Vocabulary};
use crate::error::{param, Error, Result};
use crate::tensor::{
    self, DimensionSpec, ElementKind, Mode, NriSpec, NriTensor, Value, DEFAULT_MEMORY_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    Identity,
    Sqrt,
    Log1p,
}

impl Transform {
    pub fn apply(self, count: u64) -> f64 {
        let c = count as f64;
        match self {
            Transform::Identity => c,
            Transform::Sqrt => c.sqrt(),
            Transform::Log1p => c.ln_1p(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TextMode {
    /// Random context dimension, direct target dimension.
    OneWay,
    TwoWay,
    /// Both dimensions direct: exact co-occurrence counts.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EncodePolicy {
    /// Every co-occurrence is encoded as +1 when seen.
    IncrementalRaw,
    /// Exact counts are kept and `transform(count)` is encoded by
    /// [`CoocModel::finalize`].
    BatchTransformed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Jaccard index of the top lists.
    Jaccard,
    /// Cosine of the context vectors.
    Cosine,
}

macro_rules! parse_names {
    ($ty:ty, $($name:literal => $v:expr),+ $(,)?) => {
        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.replace('-', "_").as_str() {
                    $($name => Ok($v),)+
                    _ => param(format!("unknown {} {s:?}", stringify!($ty))),
                }
            }
        }
    };
}

parse_names!(Transform, "identity" => Transform::Identity, "sqrt" => Transform::Sqrt, "log1p" => Transform::Log1p);
parse_names!(TextMode, "one_way" => TextMode::OneWay, "two_way" => TextMode::TwoWay, "direct" => TextMode::Direct);
parse_names!(EncodePolicy, "incremental_raw" => EncodePolicy::IncrementalRaw, "batch_transformed" => EncodePolicy::BatchTransformed);
parse_names!(Method, "jaccard" => Method::Jaccard, "jaccard_toplist" => Method::Jaccard, "cosine" => Method::Cosine);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoocConfig {
    /// Neighbours counted on each side of a token.
    pub window: usize,
    pub transform: Transform,
    pub mode: TextMode,
    pub policy: EncodePolicy,
    /// Index-vector length of the random dimensions.
    pub state_size: usize,
    pub chi: usize,
    pub seed: u64,
    /// Component range allocated up front; grows by doubling.
    pub initial_capacity: usize,
    pub memory_cap: u64,
}

impl Default for CoocConfig {
    fn default() -> Self {
        Self {
            window: 2,
            transform: Transform::Identity,
            mode: TextMode::OneWay,
            policy: EncodePolicy::IncrementalRaw,
            state_size: 1000,
            chi: 8,
            seed: 0,
            initial_capacity: 256,
            memory_cap: DEFAULT_MEMORY_CAP,
        }
    }
}

impl CoocConfig {
    pub fn element_kind(&self) -> ElementKind {
        match self.transform {
            Transform::Identity => ElementKind::Int64,
            _ => ElementKind::Float64,
        }
    }

    fn dimension(&self, mode: Mode, range: usize) -> DimensionSpec {
        match mode {
            Mode::Random => DimensionSpec::random(range, self.state_size, self.chi),
            Mode::Direct => DimensionSpec::direct(range),
        }
    }

    fn modes(&self) -> [Mode; 2] {
        match self.mode {
            TextMode::OneWay => [Mode::Random, Mode::Direct],
            TextMode::TwoWay => [Mode::Random, Mode::Random],
            TextMode::Direct => [Mode::Direct, Mode::Direct],
        }
    }

    /// Random dimensions need at least `state_size` components.
    fn initial_range(&self) -> usize {
        match self.mode {
            TextMode::Direct => self.initial_capacity,
            _ => self.initial_capacity.max(self.state_size),
        }
    }

    fn spec(&self, range: usize) -> NriSpec {
        let dims = self.modes().map(|m| self.dimension(m, range)).to_vec();
        NriSpec::new(dims, self.seed).with_kind(self.element_kind())
    }

    pub fn validate(&self) -> Result<()> {
        if self.window == 0 {
            return param("window half-width must be at least 1");
        }
        if self.transform != Transform::Identity && self.policy == EncodePolicy::IncrementalRaw {
            return param("a frequency transform needs the batch_transformed policy");
        }
        if self.initial_capacity == 0 {
            return param("initial capacity must be positive");
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Meta {
    config: CoocConfig,
    vocabulary: Vocabulary,
}

/// Path of the JSON file that accompanies a saved model.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

/// Co-occurrence model. Ingest is single-writer; queries take `&self`.
pub struct CoocModel {
    config: CoocConfig,
    vocab: Vocabulary,
    tensor: NriTensor,
    /// Exact `(context, target)` counts and the count already encoded.
    counts: BTreeMap<(usize, usize), (u64, u64)>,
    dirty: bool,
    frozen: bool,
}

impl CoocModel {
    pub fn new(config: CoocConfig) -> Result<Self> {
        config.validate()?;
        let tensor =
            NriTensor::with_memory_cap(config.spec(config.initial_range()), config.memory_cap)?;
        Ok(Self {
            config,
            vocab: Vocabulary::new(),
            tensor,
            counts: BTreeMap::new(),
            dirty: false,
            frozen: false,
        })
    }

    pub fn config(&self) -> &CoocConfig {
        &self.config
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn tensor(&self) -> &NriTensor {
        &self.tensor
    }

    fn capacity(&self) -> usize {
        self.tensor.component_range(1)
    }

    fn ensure_capacity(&mut self, needed: usize) -> Result<()> {
        let cap = self.capacity();
        if needed <= cap {
            return Ok(());
        }
        let new_range = needed.max(2 * cap);
        for (dim, mode) in self.config.modes().into_iter().enumerate() {
            match mode {
                Mode::Random => self.tensor.extend_dimension(dim, new_range)?,
                Mode::Direct => self.tensor.grow_direct(dim, new_range)?,
            }
        }
        log::debug!("vocabulary capacity grown to {new_range}");
        Ok(())
    }

    /// Adds the window co-occurrences of a token stream. Windows are cut at
    /// the ends of the stream.
    pub fn ingest<S: AsRef<str>>(&mut self, tokens: &[S]) -> Result<()> {
        if self.frozen {
            return Err(Error::Unsupported(
                "a loaded batch model has no exact counts and cannot ingest".into(),
            ));
        }
        let ids: Vec<usize> = tokens
            .iter()
            .map(|t| self.vocab.observe(t.as_ref()))
            .collect();
        self.ensure_capacity(self.vocab.len())?;
        let w = self.config.window;
        for (p, &target) in ids.iter().enumerate() {
            let lo = p.saturating_sub(w);
            let hi = (p + w).min(ids.len() - 1);
            for (q, &context) in ids.iter().enumerate().take(hi + 1).skip(lo) {
                if q == p {
                    continue;
                }
                match self.config.policy {
                    EncodePolicy::IncrementalRaw => {
                        self.tensor.encode_add(&[context, target], 1i64)?
                    }
                    EncodePolicy::BatchTransformed => {
                        self.counts.entry((context, target)).or_default().0 += 1;
                        self.dirty = true;
                    }
                }
            }
        }
        Ok(())
    }

    /// Encodes the change in `transform(count)` of every pair counted since
    /// the last call. A no-op for the incremental policy.
    pub fn finalize(&mut self) -> Result<()> {
        if !self.dirty {
            return Ok(());
        }
        let t = self.config.transform;
        for (&(c, w), (total, flushed)) in self.counts.iter_mut() {
            if total == flushed {
                continue;
            }
            let delta = match self.config.element_kind() {
                ElementKind::Int64 => Value::Int((*total - *flushed) as i64),
                ElementKind::Float64 => Value::Float(t.apply(*total) - t.apply(*flushed)),
            };
            self.tensor.encode_add(&[c, w], delta)?;
            *flushed = *total;
        }
        self.dirty = false;
        Ok(())
    }

    /// Exact `(context, target)` counts; empty under the incremental policy.
    pub fn pair_counts(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.counts.iter().map(|(&k, &(total, _))| (k, total))
    }

    fn ready(&self) -> Result<()> {
        if self.dirty {
            return param("counts are pending; call finalize first");
        }
        Ok(())
    }

    fn word_id(&self, word: &str) -> Result<usize> {
        self.vocab
            .id(word)
            .ok_or_else(|| Error::UnknownWord(word.to_string()))
    }

    /// Decoded co-occurrence of every vocabulary word as context of `word`.
    pub fn decoded_contexts(&self, word: &str) -> Result<Vec<f64>> {
        self.ready()?;
        let id = self.word_id(word)?;
        let mut v = self.tensor.decode_fiber(&[None, Some(id)])?;
        v.truncate(self.vocab.len());
        Ok(v)
    }

    fn top_ids(&self, word: &str, len: usize) -> Result<Vec<(usize, f64)>> {
        if len == 0 {
            return param("top-list length must be at least 1");
        }
        let mut ranked: Vec<(usize, f64)> = self
            .decoded_contexts(word)?
            .into_iter()
            .enumerate()
            .filter(|&(_, v)| v != 0.0)
            .collect();
        let order = |a: &(usize, f64), b: &(usize, f64)| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0));
        if len < ranked.len() {
            ranked.select_nth_unstable_by(len - 1, order);
            ranked.truncate(len);
        }
        ranked.sort_unstable_by(order);
        Ok(ranked)
    }

    /// The `len` context words with the highest decoded co-occurrence,
    /// descending. Words decoding to exactly zero are left out.
    pub fn top_correlates(&self, word: &str, len: usize) -> Result<Vec<(String, f64)>> {
        Ok(self
            .top_ids(word, len)?
            .into_iter()
            .map(|(id, v)| (self.vocab.words()[id].clone(), v))
            .collect())
    }

    /// Cosine of two context vectors (state columns). Zero if either is zero.
    pub fn cosine(&self, a: &str, b: &str) -> Result<f64> {
        self.ready()?;
        if self.config.mode == TextMode::TwoWay {
            return Err(Error::Unsupported(
                "two-way models do not store context vectors".into(),
            ));
        }
        let col = |w: &str| -> Result<Vec<f64>> {
            self.tensor.state_fiber(&[None, Some(self.word_id(w)?)])
        };
        let (x, y) = (col(a)?, col(b)?);
        let dot: f64 = x.iter().zip(&y).map(|(p, q)| p * q).sum();
        let nx = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let ny = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if nx == 0.0 || ny == 0.0 {
            return Ok(0.0);
        }
        Ok(dot / (nx * ny))
    }

    /// Similarity of `given` to each alternative; unknown alternatives score
    /// `-inf`.
    pub fn synonym_scores(
        &self,
        item: &SynonymItem,
        len: usize,
        method: Method,
    ) -> Result<[f64; 4]> {
        let given_top = match method {
            Method::Jaccard => self
                .top_ids(&item.given, len)?
                .into_iter()
                .map(|e| e.0)
                .collect(),
            Method::Cosine => {
                self.word_id(&item.given)?;
                Vec::new()
            }
        };
        let mut scores = [f64::NEG_INFINITY; 4];
        for (s, alt) in scores.iter_mut().zip(&item.alternatives) {
            if self.vocab.id(alt).is_none() {
                continue;
            }
            *s = match method {
                Method::Jaccard => {
                    let alt_top: Vec<usize> =
                        self.top_ids(alt, len)?.into_iter().map(|e| e.0).collect();
                    jaccard(&given_top, &alt_top)
                }
                Method::Cosine => self.cosine(&item.given, alt)?,
            };
        }
        Ok(scores)
    }

    /// Index of the highest-scoring alternative, ties to the lowest index.
    pub fn answer_synonym(&self, item: &SynonymItem, len: usize, method: Method) -> Result<usize> {
        let scores = self.synonym_scores(item, len, method)?;
        if scores.iter().all(|s| *s == f64::NEG_INFINITY) {
            return Err(Error::UnknownWord(item.alternatives.join(", ")));
        }
        let mut best = 0;
        for i in 1..4 {
            if scores[i] > scores[best] {
                best = i;
            }
        }
        Ok(best)
    }

    /// Fraction of items answered correctly.
    pub fn accuracy(&self, items: &[SynonymItem], len: usize, method: Method) -> Result<f64> {
        if items.is_empty() {
            return param("no items");
        }
        let mut correct = 0;
        for item in items {
            if self.answer_synonym(item, len, method)? == item.answer {
                correct += 1;
            }
        }
        Ok(correct as f64 / items.len() as f64)
    }

    /// Writes the tensor image to `path` and the configuration and vocabulary
    /// to [`sidecar_path`]`(path)`.
    pub fn save(&self, path: &Path) -> Result<()> {
        self.ready()?;
        tensor::save(&self.tensor, File::create(path)?)?;
        let meta = Meta {
            config: self.config.clone(),
            vocabulary: self.vocab.clone(),
        };
        let file = File::create(sidecar_path(path))?;
        serde_json::to_writer_pretty(file, &meta).map_err(|e| Error::Io(e.into()))?;
        Ok(())
    }

    /// Loads a saved model. Batch models come back without their exact counts
    /// and refuse further ingest.
    pub fn load(path: &Path, memory_cap: u64) -> Result<Self> {
        let file = File::open(sidecar_path(path))?;
        let mut meta: Meta = serde_json::from_reader(file)
            .map_err(|e| Error::Malformed(format!("model metadata: {e}")))?;
        let tensor = tensor::load_with_cap(File::open(path)?, memory_cap)?;
        let vocab = Vocabulary::from_parts(
            std::mem::take(&mut meta.vocabulary.words),
            std::mem::take(&mut meta.vocabulary.counts),
        )?;
        if tensor.rank() != 2 || tensor.component_range(1) < vocab.len() {
            return Err(Error::Malformed(
                "tensor does not match the model metadata".into(),
            ));
        }
        meta.config.memory_cap = memory_cap;
        Ok(Self {
            frozen: meta.config.policy == EncodePolicy::BatchTransformed,
            config: meta.config,
            vocab,
            tensor,
            counts: BTreeMap::new(),
            dirty: false,
        })
    }

    /// Builds a model from `tokens` under `config`.
    pub fn build<S: AsRef<str>>(config: CoocConfig, tokens: &[S]) -> Result<Self> {
        let mut m = Self::new(config)?;
        m.ingest(tokens)?;
        m.finalize()?;
        Ok(m)
    }
}

/// Accuracy over independent index-vector seeds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluation {
    pub seeds: Vec<u64>,
    pub accuracies: Vec<f64>,
    pub mean: f64,
    pub std: f64,
}

/// Rebuilds the model for every seed and answers all items.
pub fn evaluate<S: AsRef<str> + Sync>(
    config: &CoocConfig,
    tokens: &[S],
    items: &[SynonymItem],
    len: usize,
    method: Method,
    seeds: &[u64],
) -> Result<Evaluation> {
    if seeds.is_empty() {
        return param("no seeds");
    }
    let accuracies = seeds
        .par_iter()
        .map(|&seed| {
            let cfg = CoocConfig {
                seed,
                ..config.clone()
            };
            CoocModel::build(cfg, tokens)?.accuracy(items, len, method)
        })
        .collect::<Result<Vec<f64>>>()?;
    let n = accuracies.len() as f64;
    let mean = accuracies.iter().sum::<f64>() / n;
    let std = if accuracies.len() > 1 {
        (accuracies.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    Ok(Evaluation {
        seeds: seeds.to_vec(),
        accuracies,
        mean,
        std,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tokenize;
    use super::*;

    fn direct() -> CoocConfig {
        CoocConfig {
            mode: TextMode::Direct,
            initial_capacity: 2,
            ..CoocConfig::default()
        }
    }

    #[test]
    fn window_pairs() {
        let m = CoocModel::build(
            CoocConfig {
                policy: EncodePolicy::BatchTransformed,
                ..direct()
            },
            &["a", "b", "c"],
        )
        .unwrap();
        let pairs: Vec<_> = m.pair_counts().collect();
        let expected: Vec<((usize, usize), u64)> = [(1, 0), (2, 0), (0, 1), (2, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&p| (p, 1))
            .collect();
        let mut sorted = expected;
        sorted.sort();
        assert_eq!(pairs, sorted);
    }

    #[test]
    fn four_neighbours_give_four_increments() {
        let m = CoocModel::build(direct(), &tokenize("p q t r s")).unwrap();
        let total: f64 = m.decoded_contexts("t").unwrap().iter().sum();
        assert_eq!(total, 4.0);
    }

    #[test]
    fn vocabulary_growth_keeps_counts() {
        for mode in [TextMode::OneWay, TextMode::TwoWay, TextMode::Direct] {
            let cfg = CoocConfig {
                mode,
                initial_capacity: 2,
                state_size: 64,
                ..CoocConfig::default()
            };
            let mut grown = CoocModel::new(cfg.clone()).unwrap();
            grown.ingest(&tokenize("a b a b")).unwrap();
            grown.ingest(&tokenize("c d e f g h a b")).unwrap();
            let mut fresh = CoocModel::new(CoocConfig {
                initial_capacity: grown.capacity(),
                ..cfg
            })
            .unwrap();
            fresh.ingest(&tokenize("a b a b")).unwrap();
            fresh.ingest(&tokenize("c d e f g h a b")).unwrap();
            assert!(grown.tensor.bit_identical(&fresh.tensor), "{mode:?}");
        }
    }

    #[test]
    fn ingest_order_commutes() {
        let cfg = CoocConfig {
            state_size: 32,
            ..CoocConfig::default()
        };
        let s = tokenize("one two three two one four");
        let t = tokenize("one two three four four one");
        let mut a = CoocModel::new(cfg.clone()).unwrap();
        a.ingest(&s).unwrap();
        a.ingest(&t).unwrap();
        let mut b = CoocModel::new(cfg).unwrap();
        b.ingest(&t).unwrap();
        b.ingest(&s).unwrap();
        for w in ["one", "two", "three", "four"] {
            let (ia, ib) = (a.vocab.id(w).unwrap(), b.vocab.id(w).unwrap());
            for v in ["one", "two", "three", "four"] {
                let (ja, jb) = (a.vocab.id(v).unwrap(), b.vocab.id(v).unwrap());
                assert_eq!(
                    a.tensor.decode(&[ja, ia]).unwrap(),
                    b.tensor.decode(&[jb, ib]).unwrap()
                );
            }
        }
    }

    #[test]
    fn batch_identity_equals_incremental() {
        let tokens = tokenize("the cat sat on the mat and the cat ran off the mat");
        let cfg = CoocConfig {
            state_size: 16,
            ..CoocConfig::default()
        };
        let inc = CoocModel::build(cfg.clone(), &tokens).unwrap();
        let mut batch = CoocModel::new(CoocConfig {
            policy: EncodePolicy::BatchTransformed,
            ..cfg
        })
        .unwrap();
        batch.ingest(&tokens).unwrap();
        assert!(batch.top_correlates("cat", 3).is_err());
        batch.finalize().unwrap();
        for w in inc.vocab.words() {
            assert_eq!(
                inc.decoded_contexts(w).unwrap(),
                batch.decoded_contexts(w).unwrap()
            );
        }
    }

    #[test]
    fn symmetric_window_counts() {
        let m = CoocModel::build(
            CoocConfig {
                policy: EncodePolicy::BatchTransformed,
                window: 3,
                ..direct()
            },
            &tokenize("a b c a d b b e a c d"),
        )
        .unwrap();
        let counts: BTreeMap<_, _> = m.pair_counts().collect();
        for (&(a, b), &c) in &counts {
            assert_eq!(counts.get(&(b, a)), Some(&c));
        }
    }

    #[test]
    fn transform_needs_batch() {
        let cfg = CoocConfig {
            transform: Transform::Sqrt,
            ..CoocConfig::default()
        };
        assert!(CoocModel::new(cfg).is_err());
    }

    #[test]
    fn sqrt_applies_to_totals() {
        let cfg = CoocConfig {
            transform: Transform::Sqrt,
            policy: EncodePolicy::BatchTransformed,
            ..direct()
        };
        let mut m = CoocModel::new(cfg).unwrap();
        m.ingest(&tokenize("x y x y")).unwrap();
        m.finalize().unwrap();
        m.ingest(&tokenize("x y")).unwrap();
        m.finalize().unwrap();
        let (x, y) = (m.vocab.id("x").unwrap(), m.vocab.id("y").unwrap());
        let got = m.tensor.decode(&[x, y]).unwrap();
        assert!((got - 4f64.sqrt()).abs() < 1e-12, "{got}");
    }

    #[test]
    fn top_correlates_of_a_pair() {
        let m = CoocModel::build(CoocConfig::default(), &tokenize(&"x y ".repeat(100))).unwrap();
        assert_eq!(m.top_correlates("x", 1).unwrap()[0].0, "y");
        assert!(matches!(
            m.top_correlates("z", 1),
            Err(Error::UnknownWord(_))
        ));
    }

    #[test]
    fn lossless_top_list_is_sorted_counts() {
        let m = CoocModel::build(direct(), &tokenize("a b a c a b d")).unwrap();
        let top = m.top_correlates("a", 10).unwrap();
        assert_eq!(
            top,
            [("a", 4.0), ("b", 3.0), ("c", 2.0), ("d", 1.0)].map(|(w, v)| (w.to_string(), v))
        );
    }

    #[test]
    fn cosine_rules() {
        let m = CoocModel::build(direct(), &tokenize("a b a b c d")).unwrap();
        assert!((m.cosine("a", "a").unwrap() - 1.0).abs() < 1e-12);
        let two = CoocModel::build(
            CoocConfig {
                mode: TextMode::TwoWay,
                ..CoocConfig::default()
            },
            &["a", "b"],
        )
        .unwrap();
        assert!(matches!(two.cosine("a", "b"), Err(Error::Unsupported(_))));
        let m = CoocModel::build(direct(), &tokenize("a b x y c d")).unwrap();
        assert_eq!(m.cosine("a", "d").unwrap(), 0.0);
    }

    #[test]
    fn synonym_tie_break_and_unknowns() {
        let m = CoocModel::build(direct(), &tokenize("g x p y q z r w")).unwrap();
        let item = SynonymItem::new("g", ["p", "q", "r", "nope"], 1).unwrap();
        let scores = m.synonym_scores(&item, 5, Method::Jaccard).unwrap();
        assert_eq!(scores[3], f64::NEG_INFINITY);
        let tie = SynonymItem::new("g", ["u1", "u2", "u3", "q"], 3).unwrap();
        assert_eq!(m.answer_synonym(&tie, 5, Method::Jaccard).unwrap(), 3);
        let none = SynonymItem::new("g", ["u1", "u2", "u3", "u4"], 0).unwrap();
        assert!(m.answer_synonym(&none, 5, Method::Jaccard).is_err());
        let same = SynonymItem::new("b", ["x", "y", "z", "w"], 2).unwrap();
        let m = CoocModel::build(direct(), &tokenize("b q x q y q z q w q")).unwrap();
        assert_eq!(m.answer_synonym(&same, 1, Method::Jaccard).unwrap(), 0);
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.nrit");
        let cfg = CoocConfig {
            state_size: 32,
            ..CoocConfig::default()
        };
        let m = CoocModel::build(cfg, &tokenize("a b c a b d")).unwrap();
        m.save(&path).unwrap();
        assert!(sidecar_path(&path).exists());
        let mut l = CoocModel::load(&path, DEFAULT_MEMORY_CAP).unwrap();
        assert!(l.tensor.bit_identical(&m.tensor));
        assert_eq!(l.vocab, m.vocab);
        assert_eq!(
            l.top_correlates("a", 3).unwrap(),
            m.top_correlates("a", 3).unwrap()
        );
        l.ingest(&["e"]).unwrap();
    }
}
