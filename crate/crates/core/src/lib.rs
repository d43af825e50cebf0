//! N-way random indexing.
//!
//! Incremental, fixed-memory, lossy encoding of vectors, matrices and
//! higher-order tensors in a dense state array accessed through sparse
//! balanced-ternary random index vectors.
//!
//! - [`ternary`]: index vectors and the combinatorics of their near-orthogonality.
//! - [`tensor`]: the NRI tensor with encode, decode, top-list search,
//!   dimension extension and a binary image format.
//! - [`experiments`]: the planted-feature recovery protocol and SNR formula.
//! - [`textlang`]: a sliding-window word co-occurrence pipeline on top of the tensor.

pub mod error;
pub mod experiments;
pub mod report;
pub mod tensor;
pub mod ternary;
pub mod textlang;

pub use error::{Error, Result};
pub use tensor::{DimensionSpec, ElementKind, Mode, NriSpec, NriTensor};
pub use ternary::IndexVector;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/index-vectors.md")]
    mod index_vectors {}
    #[doc = include_str!("../../../book/src/tensors.md")]
    mod tensors {}
    #[doc = include_str!("../../../book/src/top-lists.md")]
    mod top_lists {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
    #[doc = include_str!("../../../book/src/text.md")]
    mod text {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
