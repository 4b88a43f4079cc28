// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense linear algebra on small tensor-product spaces.

mod density;
mod expm;
mod operator;
mod space;
mod superop;

#[cfg(test)]
pub(crate) mod testutil;

pub use density::{check_density, fidelity, partial_trace, DensityOperator, DensityReport, Normalization};
pub(crate) use expm::column_norm1;
pub use expm::{expm, expm_action, LinearMap};
pub use operator::{adjoint, tensor, tensor_in, Ket, Operator, C64};
pub(crate) use operator::{ONE, ZERO};
pub use space::{Factor, HilbertSpace};
pub use superop::{unvectorize, vec_trace, vectorize, Superoperator};
