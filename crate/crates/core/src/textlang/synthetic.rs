//! Synthetic corpora with planted synonym pairs.
//!
//! Pair `i` has two target words `s{i}a` and `s{i}b` and a private pool of
//! context words. Every sentence is `c c T c c` with `T` one of the pair's
//! targets and each `c` drawn from the pair's pool or, with probability
//! `1 - context_fraction`, from a shared filler pool. The two targets of a
//! pair therefore share a context distribution and nothing else does.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::SynonymItem;
use crate::error::{param, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedConfig {
    pub pairs: usize,
    pub contexts_per_pair: usize,
    pub fillers: usize,
    pub sentences_per_pair: usize,
    /// Probability that a context slot uses the pair's own pool.
    pub context_fraction: f64,
    /// Number of distinct stop tokens.
    pub stop_words: usize,
    /// Expected stop tokens inserted after each corpus token.
    pub stop_rate: f64,
    pub seed: u64,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        Self {
            pairs: 20,
            contexts_per_pair: 8,
            fillers: 200,
            sentences_per_pair: 60,
            context_fraction: 0.7,
            stop_words: 0,
            stop_rate: 0.0,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Benchmark {
    pub tokens: Vec<String>,
    /// One item per pair: `s{i}a` given, `s{i}b` among three other targets.
    pub items: Vec<SynonymItem>,
}

impl Benchmark {
    pub fn vocabulary_size(&self) -> usize {
        self.tokens.iter().collect::<HashSet<_>>().len()
    }
}

pub fn planted_corpus(cfg: &PlantedConfig) -> Result<Benchmark> {
    if cfg.pairs < 4 {
        return param("need at least 4 pairs to draw 3 distractors");
    }
    if cfg.contexts_per_pair == 0 || cfg.sentences_per_pair == 0 {
        return param("need at least one context word and one sentence per pair");
    }
    if !(0.0..=1.0).contains(&cfg.context_fraction)
        || (cfg.context_fraction < 1.0 && cfg.fillers == 0)
    {
        return param("context fraction must be in [0, 1]; fillers are needed below 1");
    }
    if cfg.stop_rate < 0.0 || (cfg.stop_rate > 0.0 && cfg.stop_words == 0) {
        return param("a positive stop rate needs stop words");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut sentences: Vec<[String; 5]> = Vec::with_capacity(cfg.pairs * cfg.sentences_per_pair);
    for i in 0..cfg.pairs {
        for _ in 0..cfg.sentences_per_pair {
            let context = |rng: &mut ChaCha8Rng| {
                if rng.gen_bool(cfg.context_fraction) {
                    format!("c{i}x{}", rng.gen_range(0..cfg.contexts_per_pair))
                } else {
                    format!("f{}", rng.gen_range(0..cfg.fillers))
                }
            };
            let target = format!("s{i}{}", if rng.gen_bool(0.5) { 'a' } else { 'b' });
            let (c0, c1) = (context(&mut rng), context(&mut rng));
            let (c3, c4) = (context(&mut rng), context(&mut rng));
            sentences.push([c0, c1, target, c3, c4]);
        }
    }
    sentences.shuffle(&mut rng);

    let mut tokens = Vec::with_capacity(sentences.len() * 5);
    for s in sentences {
        for t in s {
            tokens.push(t);
            if cfg.stop_rate > 0.0 {
                let extra = cfg.stop_rate.floor() as usize
                    + usize::from(rng.gen_bool(cfg.stop_rate.fract()));
                for _ in 0..extra {
                    tokens.push(format!("stop{}", rng.gen_range(0..cfg.stop_words)));
                }
            }
        }
    }

    let mut items = Vec::with_capacity(cfg.pairs);
    for i in 0..cfg.pairs {
        let others: Vec<usize> = (0..cfg.pairs).filter(|&j| j != i).collect();
        let mut alts: Vec<String> = others
            .choose_multiple(&mut rng, 3)
            .map(|&j| format!("s{j}{}", if rng.gen_bool(0.5) { 'a' } else { 'b' }))
            .collect();
        let answer = rng.gen_range(0..4);
        alts.insert(answer, format!("s{i}b"));
        let alternatives: [String; 4] = alts.try_into().expect("four alternatives");
        items.push(SynonymItem {
            given: format!("s{i}a"),
            alternatives,
            answer,
        });
    }
    Ok(Benchmark { tokens, items })
}

/// The same tokens in a random order, destroying all context structure.
pub fn shuffled(tokens: &[String], seed: u64) -> Vec<String> {
    let mut out = tokens.to_vec();
    out.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    out
}
