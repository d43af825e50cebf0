use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

/// How a tensor dimension maps components to state positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Each component is assigned a sparse ternary index vector.
    Random,
    /// Identity mapping: component `i` is state position `i`.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElementKind {
    Int64,
    Float64,
}

impl ElementKind {
    pub(crate) fn code(self) -> u8 {
        match self {
            ElementKind::Int64 => 0,
            ElementKind::Float64 => 1,
        }
    }

    pub(crate) fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(ElementKind::Int64),
            1 => Some(ElementKind::Float64),
            _ => None,
        }
    }
}

/// Configuration of one tensor dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DimensionSpec {
    /// Number of components, `N_D`.
    pub component_range: usize,
    /// Length of the index vectors, `n_D`.
    pub state_range: usize,
    /// Nonzero trits per index vector, `chi_D`. Always 1 for direct dimensions.
    pub chi: usize,
    pub mode: Mode,
}

impl DimensionSpec {
    pub fn random(component_range: usize, state_range: usize, chi: usize) -> Self {
        Self {
            component_range,
            state_range,
            chi,
            mode: Mode::Random,
        }
    }

    pub fn direct(component_range: usize) -> Self {
        Self {
            component_range,
            state_range: component_range,
            chi: 1,
            mode: Mode::Direct,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.mode {
            Mode::Random => {
                if self.state_range < 2 {
                    return param(format!(
                        "state range must be at least 2, got {}",
                        self.state_range
                    ));
                }
                if self.chi < 2 || !self.chi.is_multiple_of(2) {
                    return param(format!("chi must be even and at least 2, got {}", self.chi));
                }
                if self.chi > self.state_range {
                    return param(format!(
                        "chi = {} exceeds state range {}",
                        self.chi, self.state_range
                    ));
                }
                if self.state_range > self.component_range {
                    return param(format!(
                        "state range {} exceeds component range {}; expansion is not supported",
                        self.state_range, self.component_range
                    ));
                }
            }
            Mode::Direct => {
                if self.component_range == 0 {
                    return param("direct dimension needs at least one component");
                }
                if self.state_range != self.component_range || self.chi != 1 {
                    return param("direct dimension requires n = N and chi = 1");
                }
            }
        }
        Ok(())
    }
}

/// Full configuration of an NRI tensor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NriSpec {
    pub dims: Vec<DimensionSpec>,
    pub master_seed: u64,
    pub element_kind: ElementKind,
}

impl NriSpec {
    pub fn new(dims: Vec<DimensionSpec>, master_seed: u64) -> Self {
        Self {
            dims,
            master_seed,
            element_kind: ElementKind::Int64,
        }
    }

    pub fn with_kind(mut self, kind: ElementKind) -> Self {
        self.element_kind = kind;
        self
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    /// Number of state cells touched per component, the product of `chi`
    /// over random dimensions.
    pub fn normalization(&self) -> u64 {
        self.dims.iter().map(|d| d.chi as u64).product()
    }

    /// Cells in the state array; `u128` so that oversized requests can be
    /// reported instead of overflowing.
    pub fn state_cells(&self) -> u128 {
        self.dims.iter().map(|d| d.state_range as u128).product()
    }

    pub fn state_bytes(&self) -> u128 {
        self.state_cells() * 8
    }

    /// Ratio of component cells to state cells.
    pub fn reduction_ratio(&self) -> f64 {
        self.dims
            .iter()
            .map(|d| d.component_range as f64 / d.state_range as f64)
            .product()
    }

    /// True when no dimension is reduced, so the tensor is a plain dense array.
    pub fn is_dense(&self) -> bool {
        self.dims.iter().all(|d| d.mode == Mode::Direct)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return param("rank must be at least 1");
        }
        if self.dims.len() > u8::MAX as usize {
            return param("rank does not fit the image format");
        }
        for (i, d) in self.dims.iter().enumerate() {
            d.validate()
                .map_err(|e| crate::Error::Parameter(format!("dimension {i}: {e}")))?;
        }
        Ok(())
    }
}
