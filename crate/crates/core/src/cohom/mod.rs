//! Rational cohomology of `S^N` as the homological-equivalence oracle.
//!
//! Sign conventions live in one place, [`KunnethTensor::mul`]: a pure tensor
//! `a_1 ⊗ ... ⊗ a_N` stands for `pr_1^* a_1 · ... · pr_N^* a_N`, so the
//! product of two pure tensors carries `(-1)^{Σ_{i>j} |a_i| |b_j|}`. All
//! other operations (pullback, permutation, pushforward) are derived from
//! that product, which keeps the Koszul rule consistent everywhere.

mod eval;
mod model;
mod tensor;

pub use eval::{
    evaluate, graded_traces, induced_map, integral, is_cohomologically_trivial,
    trace_of_correspondence, act_on_tensor,
};
pub use model::{CohomModel, MultiplicationByN};
pub use tensor::KunnethTensor;
