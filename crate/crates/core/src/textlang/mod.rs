//! Word co-occurrence in a sliding window, accumulated into a rank-2 NRI
//! tensor (dimension 0 = context word, dimension 1 = target word), and
//! synonym tests on the decoded top lists.
//!
//! ```
//! use nri::textlang::{tokenize, CoocConfig, CoocModel};
//!
//! let mut model = CoocModel::new(CoocConfig::default())?;
//! model.ingest(&tokenize(&"x y ".repeat(100)))?;
//! model.finalize()?;
//! let top = model.top_correlates("x", 1)?;
//! assert_eq!(top[0].0, "y");
//! # Ok::<(), nri::Error>(())
//! ```

mod model;
mod synthetic;

pub use model::{evaluate, sidecar_path, Evaluation};
pub use model::{CoocConfig, CoocModel, EncodePolicy, Method, TextMode, Transform};
pub use synthetic::{planted_corpus, shuffled, Benchmark, PlantedConfig};

use std::collections::HashMap;
use std::collections::HashSet;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

/// Lowercases and splits on every character that is not alphanumeric.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// Insertion-ordered word/id bijection with occurrence counts.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Vocabulary {
    words: Vec<String>,
    counts: Vec<u64>,
    #[serde(skip)]
    ids: HashMap<String, usize>,
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    pub(crate) fn from_parts(words: Vec<String>, counts: Vec<u64>) -> Result<Self> {
        if words.len() != counts.len() {
            return param("vocabulary words and counts differ in length");
        }
        let ids: HashMap<String, usize> = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        if ids.len() != words.len() {
            return param("vocabulary has duplicate words");
        }
        Ok(Self { words, counts, ids })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn id(&self, word: &str) -> Option<usize> {
        self.ids.get(word).copied()
    }

    pub fn word(&self, id: usize) -> Option<&str> {
        self.words.get(id).map(String::as_str)
    }

    pub fn count(&self, id: usize) -> u64 {
        self.counts[id]
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    /// Registers one occurrence of `word` and returns its id.
    pub fn observe(&mut self, word: &str) -> usize {
        match self.ids.get(word) {
            Some(&id) => {
                self.counts[id] += 1;
                id
            }
            None => {
                let id = self.words.len();
                self.ids.insert(word.to_string(), id);
                self.words.push(word.to_string());
                self.counts.push(1);
                id
            }
        }
    }
}

/// `|a ∩ b| / |a ∪ b|`, taken as 0 when both are empty.
pub fn jaccard<T: Eq + Hash>(a: &[T], b: &[T]) -> f64 {
    let a: HashSet<&T> = a.iter().collect();
    let b: HashSet<&T> = b.iter().collect();
    let union = a.union(&b).count();
    if union == 0 {
        return 0.0;
    }
    a.intersection(&b).count() as f64 / union as f64
}

/// A multiple-choice synonym question.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynonymItem {
    pub given: String,
    pub alternatives: [String; 4],
    /// Index of the correct alternative.
    pub answer: usize,
}

impl SynonymItem {
    pub fn new(given: &str, alternatives: [&str; 4], answer: usize) -> Result<Self> {
        let item = Self {
            given: given.to_string(),
            alternatives: alternatives.map(str::to_string),
            answer,
        };
        item.validate()?;
        Ok(item)
    }

    pub fn validate(&self) -> Result<()> {
        if self.answer >= 4 {
            return param(format!("answer index {} is not in 0..4", self.answer));
        }
        let words: HashSet<&String> = std::iter::once(&self.given)
            .chain(&self.alternatives)
            .collect();
        if words.len() != 5 {
            return param(format!("item for `{}` repeats a word", self.given));
        }
        Ok(())
    }
}

/// Parses tab-separated items `given alt1 alt2 alt3 alt4 answer_index`.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_items(text: &str) -> Result<Vec<SynonymItem>> {
    let mut items = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split('\t').map(str::trim).collect();
        if f.len() != 6 {
            return param(format!(
                "line {}: expected 6 tab-separated fields, got {}",
                lineno + 1,
                f.len()
            ));
        }
        let answer: usize = f[5].parse().map_err(|_| {
            crate::Error::Parameter(format!("line {}: bad answer index {:?}", lineno + 1, f[5]))
        })?;
        items.push(
            SynonymItem::new(f[0], [f[1], f[2], f[3], f[4]], answer)
                .map_err(|e| crate::Error::Parameter(format!("line {}: {e}", lineno + 1)))?,
        );
    }
    Ok(items)
}

pub fn format_items(items: &[SynonymItem]) -> String {
    items
        .iter()
        .map(|i| format!("{}\t{}\t{}\n", i.given, i.alternatives.join("\t"), i.answer))
        .collect()
}
