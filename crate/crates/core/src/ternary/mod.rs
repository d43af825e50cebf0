//! Sparse balanced-ternary index vectors and the combinatorics of their
//! near-orthogonality.
//!
//! An [`IndexVector`] of length `n` has `k` entries equal to `+1`, `k` entries
//! equal to `-1` and zeros elsewhere, so `chi = 2k` is the number of nonzero
//! trits. Only the positions of the nonzero trits are stored.
//!
//! Index vectors are never stored by the tensor. They are re-derived on demand
//! from `(master_seed, dim_id, component_index)` with a keyed generator, which
//! makes derivation a pure function and lets a dimension grow without touching
//! anything that already exists.

mod counting;
mod montecarlo;

pub use counting::{
    census_at_dot, count_at_dot, count_at_dot_hyp, count_total, hyp3f2_terminating,
    prob_dot_census, prob_dot_exact, prob_dot_series, SeriesProbability, SeriesWarning,
};
pub use montecarlo::{monte_carlo_dot, monte_carlo_dot_with_reference, DotDistribution, DotSource};

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

/// A sparse balanced-ternary vector stored by the positions of its nonzero
/// trits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexVector {
    n: usize,
    plus: Vec<usize>,
    minus: Vec<usize>,
}

impl IndexVector {
    /// Builds an index vector from explicit position lists.
    ///
    /// The lists are sorted; they must be disjoint, of equal nonzero length and
    /// in range.
    pub fn new(n: usize, mut plus: Vec<usize>, mut minus: Vec<usize>) -> Result<Self> {
        plus.sort_unstable();
        minus.sort_unstable();
        if plus.is_empty() || plus.len() != minus.len() {
            return param(format!(
                "unbalanced index vector: {} positive and {} negative trits",
                plus.len(),
                minus.len()
            ));
        }
        if plus.windows(2).any(|w| w[0] == w[1]) || minus.windows(2).any(|w| w[0] == w[1]) {
            return param("duplicate position in index vector");
        }
        if plus.iter().chain(&minus).any(|&p| p >= n) {
            return param(format!("position out of range for length {n}"));
        }
        if overlap(&plus, &minus) != 0 {
            return param("a position cannot be both positive and negative");
        }
        Ok(Self { n, plus, minus })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of nonzero trits.
    pub fn chi(&self) -> usize {
        self.plus.len() + self.minus.len()
    }

    pub fn plus_positions(&self) -> &[usize] {
        &self.plus
    }

    pub fn minus_positions(&self) -> &[usize] {
        &self.minus
    }

    /// The vector with every sign flipped.
    pub fn neg(&self) -> Self {
        Self {
            n: self.n,
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }

    /// Iterates `(position, sign)` pairs, positive trits first.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.plus
            .iter()
            .map(|&p| (p, 1))
            .chain(self.minus.iter().map(|&p| (p, -1)))
    }

    pub fn to_dense(&self) -> Vec<i8> {
        let mut v = vec![0; self.n];
        for (p, s) in self.iter() {
            v[p] = s;
        }
        v
    }

    /// Signed dot product, computed on the compact form.
    pub fn dot(&self, other: &IndexVector) -> Result<i64> {
        dot(self, other)
    }
}

/// Signed dot product of two index vectors of equal length.
pub fn dot(a: &IndexVector, b: &IndexVector) -> Result<i64> {
    if a.n != b.n {
        return param(format!("length mismatch: {} vs {}", a.n, b.n));
    }
    let same = overlap(&a.plus, &b.plus) + overlap(&a.minus, &b.minus);
    let opposite = overlap(&a.plus, &b.minus) + overlap(&a.minus, &b.plus);
    Ok(same as i64 - opposite as i64)
}

/// Size of the intersection of two sorted lists.
fn overlap(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives the generator key for one `(seed, dim, component)` triple.
pub(crate) fn derive_rng(master_seed: u64, dim_id: u64, component: u64) -> ChaCha8Rng {
    let mut h = splitmix64(master_seed);
    h = splitmix64(h ^ splitmix64(dim_id.wrapping_add(0x6e72_6964)));
    h = splitmix64(h ^ component);
    let mut key = [0u8; 32];
    for (t, chunk) in key.chunks_exact_mut(8).enumerate() {
        chunk.copy_from_slice(&splitmix64(h.wrapping_add(t as u64)).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Draws `count` distinct positions uniformly from `0..n` by a partial
/// Fisher-Yates shuffle over a virtual identity array.
///
/// Only displaced slots are remembered, so the cost is O(count^2) regardless
/// of `n`.
pub(crate) fn sample_distinct<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    count: usize,
    out: &mut Vec<usize>,
    displaced: &mut Vec<(usize, usize)>,
) {
    debug_assert!(count <= n);
    out.clear();
    displaced.clear();
    let lookup = |d: &[(usize, usize)], slot: usize| {
        d.iter()
            .rev()
            .find(|&&(s, _)| s == slot)
            .map_or(slot, |&(_, v)| v)
    };
    for t in 0..count {
        let j = rng.gen_range(t..n);
        let picked = lookup(displaced, j);
        let current = lookup(displaced, t);
        displaced.push((j, current));
        out.push(picked);
    }
}

fn check_chi(n: usize, chi: usize) -> Result<()> {
    if chi < 2 || !chi.is_multiple_of(2) {
        return param(format!("chi must be even and at least 2, got {chi}"));
    }
    if chi > n {
        return param(format!("chi = {chi} exceeds vector length {n}"));
    }
    Ok(())
}

/// Deterministically derives the index vector of `component_index` in
/// dimension `dim_id`.
///
/// The first `chi / 2` drawn positions carry `+1`, the rest `-1`.
pub fn generate_index_vector(
    master_seed: u64,
    dim_id: u64,
    component_index: u64,
    n: usize,
    chi: usize,
) -> Result<IndexVector> {
    check_chi(n, chi)?;
    let mut rng = derive_rng(master_seed, dim_id, component_index);
    let mut drawn = Vec::with_capacity(chi);
    let mut scratch = Vec::with_capacity(chi);
    sample_distinct(&mut rng, n, chi, &mut drawn, &mut scratch);
    let minus = drawn.split_off(chi / 2);
    let mut plus = drawn;
    let mut minus = minus;
    plus.sort_unstable();
    minus.sort_unstable();
    Ok(IndexVector { n, plus, minus })
}
