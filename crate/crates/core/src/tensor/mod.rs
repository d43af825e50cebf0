//! The NRI tensor: a fixed-size dense state array accessed through sparse
//! ternary index vectors.
//!
//! Adding `w` to component `(i, j, ...)` adds `w` times the outer product of
//! the components' index vectors to the state. Only `N = prod(chi_D)` cells
//! are touched, so the outer product is never materialized. Decoding projects
//! the state back on the same index vectors and divides by `N`.
//!
//! ```
//! use nri::tensor::{DimensionSpec, NriSpec, NriTensor};
//!
//! let spec = NriSpec::new(
//!     vec![DimensionSpec::random(1000, 200, 8), DimensionSpec::random(1000, 200, 8)],
//!     7,
//! );
//! let mut t = NriTensor::new(spec)?;
//! t.encode_add(&[3, 5], 40)?;
//! assert_eq!(t.decode(&[3, 5])?, 40.0);
//! # Ok::<(), nri::Error>(())
//! ```

mod element;
mod io;
mod spec;

pub use element::{FLOAT_SATURATION, INT_SATURATION};
pub use io::{load, load_with_cap, save, FORMAT_VERSION, MAGIC};
pub use spec::{DimensionSpec, ElementKind, Mode, NriSpec};

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::ternary::generate_index_vector;
use element::Element;

/// Default cap on the state allocation, 4 GiB.
pub const DEFAULT_MEMORY_CAP: u64 = 4 << 30;

/// A weight to add to a component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<i32> for Value {
    fn from(v: i32) -> Self {
        Value::Int(v as i64)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

/// Weights of a whole fiber (all components along one free dimension).
#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    Int(Vec<i64>),
    Float(Vec<f64>),
}

impl Values {
    pub fn len(&self) -> usize {
        match self {
            Values::Int(v) => v.len(),
            Values::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A batch update: `values[i]` is added to the component whose free-dimension
/// index is `i` and whose other indices are given by `fixed`.
#[derive(Debug, Clone, PartialEq)]
pub struct Fiber {
    pub fixed: Vec<Option<usize>>,
    pub values: Values,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TopEntry {
    /// Index along the free dimension.
    pub component: usize,
    pub value: f64,
}

/// Components along one free dimension ranked by decoded value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopList {
    pub free_dim: usize,
    pub fixed: Vec<Option<usize>>,
    pub requested: usize,
    /// Descending by value, ties by ascending component.
    pub entries: Vec<TopEntry>,
}

impl TopList {
    /// Full index tuple of an entry.
    pub fn indices(&self, entry: &TopEntry) -> Vec<usize> {
        self.fixed
            .iter()
            .map(|f| f.unwrap_or(entry.component))
            .collect()
    }

    pub fn components(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.component).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum State {
    Int(Vec<i64>),
    Float(Vec<f64>),
}

impl State {
    fn zeros(kind: ElementKind, len: usize) -> Self {
        match kind {
            ElementKind::Int64 => State::Int(vec![0; len]),
            ElementKind::Float64 => State::Float(vec![0.0; len]),
        }
    }

    fn len(&self) -> usize {
        match self {
            State::Int(v) => v.len(),
            State::Float(v) => v.len(),
        }
    }
}

/// Read access to the raw state array.
#[derive(Debug, Clone, Copy)]
pub enum StateView<'a> {
    Int(&'a [i64]),
    Float(&'a [f64]),
}

/// Flattened index vectors of one random dimension. Component `i` occupies
/// `positions[i * chi..(i + 1) * chi]`; the first half carries `+1`.
#[derive(Debug, Clone)]
struct IndexTable {
    chi: usize,
    positions: Vec<usize>,
}

impl IndexTable {
    fn build(
        seed: u64,
        dim: usize,
        from: usize,
        to: usize,
        n: usize,
        chi: usize,
    ) -> Result<Vec<usize>> {
        let mut positions = Vec::with_capacity((to - from) * chi);
        for i in from..to {
            let v = generate_index_vector(seed, dim as u64, i as u64, n, chi)?;
            positions.extend_from_slice(v.plus_positions());
            positions.extend_from_slice(v.minus_positions());
        }
        Ok(positions)
    }
}

#[derive(Debug, Clone)]
pub struct NriTensor {
    spec: NriSpec,
    tables: Vec<Option<IndexTable>>,
    strides: Vec<usize>,
    state: State,
    update_count: u64,
    saturated: bool,
    memory_cap: u64,
}

fn strides_of(spec: &NriSpec) -> Vec<usize> {
    let mut strides = vec![1usize; spec.rank()];
    for d in (0..spec.rank().saturating_sub(1)).rev() {
        strides[d] = strides[d + 1] * spec.dims[d + 1].state_range;
    }
    strides
}

fn check_cap(spec: &NriSpec, cap: u64) -> Result<()> {
    let requested = spec.state_bytes();
    if requested > cap as u128 || spec.state_cells() > usize::MAX as u128 {
        return Err(Error::Capacity { requested, cap });
    }
    Ok(())
}

impl NriTensor {
    /// Creates a zero-initialized tensor under [`DEFAULT_MEMORY_CAP`].
    pub fn new(spec: NriSpec) -> Result<Self> {
        Self::with_memory_cap(spec, DEFAULT_MEMORY_CAP)
    }

    pub fn with_memory_cap(spec: NriSpec, cap: u64) -> Result<Self> {
        spec.validate()?;
        check_cap(&spec, cap)?;
        if spec.is_dense() {
            log::warn!("no random dimension: the tensor is stored unreduced");
        }
        let state = State::zeros(spec.element_kind, spec.state_cells() as usize);
        Self::from_parts(spec, state, 0, false, cap)
    }

    pub(crate) fn from_parts(
        spec: NriSpec,
        state: State,
        update_count: u64,
        saturated: bool,
        memory_cap: u64,
    ) -> Result<Self> {
        let tables = spec
            .dims
            .iter()
            .enumerate()
            .map(|(d, ds)| match ds.mode {
                Mode::Direct => Ok(None),
                Mode::Random => Ok(Some(IndexTable {
                    chi: ds.chi,
                    positions: IndexTable::build(
                        spec.master_seed,
                        d,
                        0,
                        ds.component_range,
                        ds.state_range,
                        ds.chi,
                    )?,
                })),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            strides: strides_of(&spec),
            spec,
            tables,
            state,
            update_count,
            saturated,
            memory_cap,
        })
    }

    pub fn spec(&self) -> &NriSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    pub fn component_range(&self, dim: usize) -> usize {
        self.spec.dims[dim].component_range
    }

    pub fn state_range(&self, dim: usize) -> usize {
        self.spec.dims[dim].state_range
    }

    pub fn normalization(&self) -> u64 {
        self.spec.normalization()
    }

    pub fn element_kind(&self) -> ElementKind {
        self.spec.element_kind
    }

    /// Number of component updates applied so far.
    pub fn update_count(&self) -> u64 {
        self.update_count
    }

    /// Set once any cell has passed the saturation threshold; never cleared.
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn memory_cap(&self) -> u64 {
        self.memory_cap
    }

    pub fn state(&self) -> StateView<'_> {
        match &self.state {
            State::Int(v) => StateView::Int(v),
            State::Float(v) => StateView::Float(v),
        }
    }

    pub(crate) fn raw_state(&self) -> &State {
        &self.state
    }

    /// Same spec, counters and state, comparing float cells bitwise.
    pub fn bit_identical(&self, other: &NriTensor) -> bool {
        let same_state = match (&self.state, &other.state) {
            (State::Int(a), State::Int(b)) => a == b,
            (State::Float(a), State::Float(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
            }
            _ => false,
        };
        same_state
            && self.spec == other.spec
            && self.update_count == other.update_count
            && self.saturated == other.saturated
    }

    /// Nonzero state positions and signs of component `i` in dimension `dim`.
    pub fn support(&self, dim: usize, i: usize) -> impl Iterator<Item = (usize, i8)> + '_ {
        let (slice, half, direct): (&[usize], usize, Option<usize>) = match &self.tables[dim] {
            Some(t) => (&t.positions[i * t.chi..(i + 1) * t.chi], t.chi / 2, None),
            None => (&[], 0, Some(i)),
        };
        slice
            .iter()
            .enumerate()
            .map(move |(j, &p)| (p, if j < half { 1 } else { -1 }))
            .chain(direct.map(|i| (i, 1)))
    }

    fn check_index(&self, dim: usize, i: usize) -> Result<()> {
        let range = self.component_range(dim);
        if i >= range {
            return param(format!(
                "index {i} out of range for dimension {dim} with {range} components"
            ));
        }
        Ok(())
    }

    fn check_indices(&self, indices: &[usize]) -> Result<()> {
        if indices.len() != self.rank() {
            return param(format!(
                "expected {} indices, got {}",
                self.rank(),
                indices.len()
            ));
        }
        for (d, &i) in indices.iter().enumerate() {
            self.check_index(d, i)?;
        }
        Ok(())
    }

    /// The `(offset, sign)` pairs of the cells that encode a component.
    pub fn cells(&self, indices: &[usize]) -> Result<Vec<(usize, i8)>> {
        self.check_indices(indices)?;
        Ok(self.product_cells(indices.iter().enumerate().map(|(d, &i)| (d, i))))
    }

    fn product_cells(&self, picks: impl Iterator<Item = (usize, usize)>) -> Vec<(usize, i8)> {
        let mut cells = vec![(0usize, 1i8)];
        for (d, i) in picks {
            let stride = self.strides[d];
            let mut next = Vec::with_capacity(cells.len() * self.spec.dims[d].chi);
            for &(off, s) in &cells {
                for (p, t) in self.support(d, i) {
                    next.push((off + p * stride, s * t));
                }
            }
            cells = next;
        }
        cells
    }

    /// Adds `w` to the component at `indices`. Subtraction is addition of `-w`.
    pub fn encode_add(&mut self, indices: &[usize], w: impl Into<Value>) -> Result<()> {
        let w = w.into();
        let cells = self.cells(indices)?;
        let hit = match (&mut self.state, w) {
            (State::Int(s), Value::Int(w)) => scatter(s, &cells, w),
            (State::Float(s), Value::Int(w)) => scatter(s, &cells, w as f64),
            (State::Float(s), Value::Float(w)) => {
                if !w.is_finite() {
                    return param("weight must be finite");
                }
                scatter(s, &cells, w)
            }
            (State::Int(_), Value::Float(_)) => {
                return param("float weight on an int64 tensor");
            }
        };
        self.saturated |= hit;
        self.update_count += 1;
        Ok(())
    }

    /// Decoded value of the component at `indices`.
    pub fn decode(&self, indices: &[usize]) -> Result<f64> {
        let cells = self.cells(indices)?;
        let norm = self.normalization() as f64;
        Ok(match &self.state {
            State::Int(s) => gather(s, &cells) / norm,
            State::Float(s) => gather(s, &cells) / norm,
        })
    }

    fn free_dim(&self, fixed: &[Option<usize>]) -> Result<usize> {
        if fixed.len() != self.rank() {
            return param(format!(
                "expected {} index slots, got {}",
                self.rank(),
                fixed.len()
            ));
        }
        let mut free = None;
        for (d, slot) in fixed.iter().enumerate() {
            match slot {
                Some(i) => self.check_index(d, *i)?,
                None if free.is_some() => {
                    return param("exactly one free dimension is supported");
                }
                None => free = Some(d),
            }
        }
        free.ok_or_else(|| Error::Parameter("no free dimension".into()))
    }

    /// Offsets and signs contributed by the fixed dimensions of a fiber.
    fn fixed_cells(&self, fixed: &[Option<usize>]) -> Vec<(usize, i8)> {
        self.product_cells(
            fixed
                .iter()
                .enumerate()
                .filter_map(|(d, slot)| slot.map(|i| (d, i))),
        )
    }

    /// Decodes every component along the single free dimension of `fixed`.
    ///
    /// The fixed dimensions are contracted first, so the cost is
    /// `n_free * prod(chi_fixed) + N_free * chi_free` state reads.
    pub fn decode_fiber(&self, fixed: &[Option<usize>]) -> Result<Vec<f64>> {
        let free = self.free_dim(fixed)?;
        let base = self.fixed_cells(fixed);
        let norm = self.normalization() as f64;
        Ok(match &self.state {
            State::Int(s) => self.decode_fiber_with(s, free, &base, norm),
            State::Float(s) => self.decode_fiber_with(s, free, &base, norm),
        })
    }

    fn decode_fiber_with<T: Element>(
        &self,
        state: &[T],
        free: usize,
        base: &[(usize, i8)],
        norm: f64,
    ) -> Vec<f64> {
        let n_free = self.state_range(free);
        let stride = self.strides[free];
        let mut q = vec![T::Acc::default(); n_free];
        for &(off, sign) in base {
            for (alpha, acc) in q.iter_mut().enumerate() {
                let v = state[off + alpha * stride].widen();
                if sign > 0 {
                    *acc += v;
                } else {
                    *acc -= v;
                }
            }
        }
        (0..self.component_range(free))
            .map(|i| {
                let mut acc = T::Acc::default();
                for (p, s) in self.support(free, i) {
                    if s > 0 {
                        acc += q[p];
                    } else {
                        acc -= q[p];
                    }
                }
                T::acc_to_f64(acc) / norm
            })
            .collect()
    }

    /// The `len` highest decoded components along the free dimension.
    pub fn find_top(&self, fixed: &[Option<usize>], len: usize) -> Result<TopList> {
        let free = self.free_dim(fixed)?;
        let n_free = self.component_range(free);
        if len == 0 || len > n_free {
            return param(format!(
                "top-list length must be in 1..={n_free}, got {len}"
            ));
        }
        let values = self.decode_fiber(fixed)?;
        let mut entries: Vec<TopEntry> = values
            .into_iter()
            .enumerate()
            .map(|(component, value)| TopEntry { component, value })
            .collect();
        let order = |a: &TopEntry, b: &TopEntry| -> Ordering {
            b.value
                .total_cmp(&a.value)
                .then(a.component.cmp(&b.component))
        };
        if len < entries.len() {
            entries.select_nth_unstable_by(len - 1, order);
            entries.truncate(len);
        }
        entries.sort_unstable_by(order);
        Ok(TopList {
            free_dim: free,
            fixed: fixed.to_vec(),
            requested: len,
            entries,
        })
    }

    /// Raw state along the free dimension of `fixed`, for fibers whose fixed
    /// dimensions are all direct (so the fiber is a well-defined state column).
    pub fn state_fiber(&self, fixed: &[Option<usize>]) -> Result<Vec<f64>> {
        let free = self.free_dim(fixed)?;
        if fixed
            .iter()
            .enumerate()
            .any(|(d, s)| s.is_some() && self.spec.dims[d].mode != Mode::Direct)
        {
            return Err(Error::Unsupported(
                "state fibers exist only when every fixed dimension is direct".into(),
            ));
        }
        let base = self.fixed_cells(fixed);
        debug_assert_eq!(base.len(), 1);
        let (off, _) = base[0];
        let stride = self.strides[free];
        let n = self.state_range(free);
        Ok(match &self.state {
            State::Int(s) => (0..n).map(|a| s[off + a * stride] as f64).collect(),
            State::Float(s) => (0..n).map(|a| s[off + a * stride]).collect(),
        })
    }

    /// Applies a batch of fiber updates sharing one free dimension.
    ///
    /// Equivalent to calling [`encode_add`](Self::encode_add) for every
    /// nonzero value; for int64 tensors the resulting state is bit-identical.
    pub fn encode_fibers(&mut self, fibers: &[Fiber]) -> Result<()> {
        let Some(first) = fibers.first() else {
            return Ok(());
        };
        let free = self.free_dim(&first.fixed)?;
        let n_components = self.component_range(free);
        for f in fibers {
            if self.free_dim(&f.fixed)? != free {
                return param("all fibers in a batch must share the free dimension");
            }
            if f.values.len() != n_components {
                return param(format!(
                    "fiber has {} values, dimension {free} has {n_components} components",
                    f.values.len()
                ));
            }
        }
        let updates: u64 = fibers
            .iter()
            .map(|f| match &f.values {
                Values::Int(v) => v.iter().filter(|x| **x != 0).count() as u64,
                Values::Float(v) => v.iter().filter(|x| **x != 0.0).count() as u64,
            })
            .sum();
        let mut state = std::mem::replace(&mut self.state, State::Int(Vec::new()));
        let result = match &mut state {
            State::Int(s) => {
                let columns = fibers
                    .iter()
                    .map(|f| match &f.values {
                        Values::Int(v) => Ok(v.as_slice()),
                        Values::Float(_) => param("float weights on an int64 tensor"),
                    })
                    .collect::<Result<Vec<_>>>();
                columns.map(|cols| self.scatter_fibers(s, free, fibers, &cols))
            }
            State::Float(s) => {
                let converted: Vec<Vec<f64>> = fibers
                    .iter()
                    .map(|f| match &f.values {
                        Values::Int(v) => v.iter().map(|&x| x as f64).collect(),
                        Values::Float(v) => v.clone(),
                    })
                    .collect();
                if converted.iter().flatten().any(|x| !x.is_finite()) {
                    param("weights must be finite")
                } else {
                    let cols: Vec<&[f64]> = converted.iter().map(Vec::as_slice).collect();
                    Ok(self.scatter_fibers(s, free, fibers, &cols))
                }
            }
        };
        self.state = state;
        let hit = result?;
        self.saturated |= hit;
        self.update_count += updates;
        Ok(())
    }

    fn scatter_fibers<T: Element>(
        &self,
        state: &mut [T],
        free: usize,
        fibers: &[Fiber],
        columns: &[&[T]],
    ) -> bool {
        let n_free = self.state_range(free);
        // Project each fiber onto the free dimension's state positions.
        let projected: Vec<(Vec<T>, bool)> = columns
            .par_iter()
            .map(|values| {
                let mut acc = vec![T::Acc::default(); n_free];
                for (i, &v) in values.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let w = v.widen();
                    for (p, s) in self.support(free, i) {
                        if s > 0 {
                            acc[p] += w;
                        } else {
                            acc[p] -= w;
                        }
                    }
                }
                let mut clamped = false;
                let narrowed = acc
                    .into_iter()
                    .map(|a| {
                        let (x, c) = T::narrow(a);
                        clamped |= c;
                        x
                    })
                    .collect();
                (narrowed, clamped)
            })
            .collect();
        let mut hit = projected.iter().any(|(_, c)| *c);
        let bases: Vec<Vec<(usize, i8)>> =
            fibers.iter().map(|f| self.fixed_cells(&f.fixed)).collect();

        if free == 0 {
            // Each slab of the state shares one free-dimension position.
            let slab = self.strides[0];
            hit |= state
                .par_chunks_mut(slab)
                .enumerate()
                .map(|(alpha, cells)| {
                    let mut hit = false;
                    for ((p, _), base) in projected.iter().zip(&bases) {
                        let v = p[alpha];
                        if v.is_zero() {
                            continue;
                        }
                        for &(off, s) in base {
                            hit |= T::add_signed(&mut cells[off], v, s > 0);
                        }
                    }
                    hit
                })
                .reduce(|| false, |a, b| a | b);
        } else {
            let stride = self.strides[free];
            for ((p, _), base) in projected.iter().zip(&bases) {
                for &(off, s) in base {
                    for (alpha, &v) in p.iter().enumerate() {
                        if !v.is_zero() {
                            hit |= T::add_signed(&mut state[off + alpha * stride], v, s > 0);
                        }
                    }
                }
            }
        }
        hit
    }

    /// Grows a random dimension to `new_range` components. The state is not
    /// touched; index vectors for the new components are derived on the spot.
    pub fn extend_dimension(&mut self, dim: usize, new_range: usize) -> Result<()> {
        if dim >= self.rank() {
            return param(format!("no dimension {dim}"));
        }
        let ds = self.spec.dims[dim];
        if ds.mode == Mode::Direct {
            return Err(Error::Unsupported(
                "a direct dimension cannot be extended without reallocating the state".into(),
            ));
        }
        if new_range <= ds.component_range {
            return param(format!(
                "new range {new_range} must exceed current range {}",
                ds.component_range
            ));
        }
        let extra = IndexTable::build(
            self.spec.master_seed,
            dim,
            ds.component_range,
            new_range,
            ds.state_range,
            ds.chi,
        )?;
        if let Some(t) = &mut self.tables[dim] {
            t.positions.extend(extra);
        }
        self.spec.dims[dim].component_range = new_range;
        Ok(())
    }

    /// Grows a direct dimension by reallocating the state. Existing
    /// components keep their values; new ones start at zero.
    pub fn grow_direct(&mut self, dim: usize, new_range: usize) -> Result<()> {
        if dim >= self.rank() {
            return param(format!("no dimension {dim}"));
        }
        let ds = self.spec.dims[dim];
        if ds.mode != Mode::Direct {
            return param("grow_direct applies to direct dimensions; use extend_dimension");
        }
        if new_range <= ds.component_range {
            return param(format!(
                "new range {new_range} must exceed current range {}",
                ds.component_range
            ));
        }
        let mut spec = self.spec.clone();
        spec.dims[dim] = DimensionSpec::direct(new_range);
        check_cap(&spec, self.memory_cap)?;
        let new_strides = strides_of(&spec);
        let old_strides = self.strides.clone();
        let old_ranges: Vec<usize> = self.spec.dims.iter().map(|d| d.state_range).collect();
        let remap = |flat: usize| -> usize {
            let mut rest = flat;
            let mut out = 0;
            for d in 0..old_strides.len() {
                let idx = rest / old_strides[d];
                rest %= old_strides[d];
                debug_assert!(idx < old_ranges[d]);
                out += idx * new_strides[d];
            }
            out
        };
        let len = spec.state_cells() as usize;
        self.state = match &self.state {
            State::Int(old) => {
                let mut s = vec![0i64; len];
                for (flat, &v) in old.iter().enumerate() {
                    s[remap(flat)] = v;
                }
                State::Int(s)
            }
            State::Float(old) => {
                let mut s = vec![0f64; len];
                for (flat, &v) in old.iter().enumerate() {
                    s[remap(flat)] = v;
                }
                State::Float(s)
            }
        };
        self.spec = spec;
        self.strides = new_strides;
        Ok(())
    }

    /// Number of cells in the state array.
    pub fn state_cells(&self) -> usize {
        self.state.len()
    }
}

fn scatter<T: Element>(state: &mut [T], cells: &[(usize, i8)], w: T) -> bool {
    let mut hit = false;
    for &(off, s) in cells {
        hit |= T::add_signed(&mut state[off], w, s > 0);
    }
    hit
}

fn gather<T: Element>(state: &[T], cells: &[(usize, i8)]) -> f64 {
    let mut acc = T::Acc::default();
    for &(off, s) in cells {
        if s > 0 {
            acc += state[off].widen();
        } else {
            acc -= state[off].widen();
        }
    }
    T::acc_to_f64(acc)
}
