// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::density::{DensityOperator, Normalization};
use super::operator::C64;
use super::space::HilbertSpace;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in the unit square centred on zero.
pub fn random_matrix(rng: &mut ChaCha8Rng, d: usize) -> DMatrix<C64> {
    DMatrix::from_fn(d, d, |_, _| {
        C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    })
}

/// `M M† / Tr(M M†)` for a random `M`.
pub fn random_density(rng: &mut ChaCha8Rng, space: &HilbertSpace) -> DensityOperator {
    let m = random_matrix(rng, space.dim());
    let rho = &m * m.adjoint();
    let tr = rho.trace();
    DensityOperator::new(space.clone(), rho / tr, Normalization::Normalized).unwrap()
}
