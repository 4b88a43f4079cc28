// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Linear maps on density operators.
//!
//! Density matrices are vectorized row-major, `vec(ρ)[i·d + j] = ρ_ij`, so the
//! map `ρ ↦ X ρ Y` has the matrix `X ⊗ Yᵀ`.

use std::ops::{Add, Sub};

use nalgebra::{DMatrix, DVector};

use super::density::{DensityOperator, Normalization};
use super::operator::{Operator, C64, ONE};
use super::space::HilbertSpace;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator {
    space: HilbertSpace,
    matrix: DMatrix<C64>,
}

impl Superoperator {
    pub fn new(space: HilbertSpace, matrix: DMatrix<C64>) -> Result<Self> {
        let d2 = space.dim() * space.dim();
        if matrix.nrows() != d2 || matrix.ncols() != d2 {
            return Err(Error::mismatch(format!(
                "{}x{} superoperator on a space of dimension {}",
                matrix.nrows(),
                matrix.ncols(),
                space.dim()
            )));
        }
        Ok(Self { space, matrix })
    }

    pub fn identity(space: &HilbertSpace) -> Self {
        let d2 = space.dim() * space.dim();
        Self {
            space: space.clone(),
            matrix: DMatrix::identity(d2, d2),
        }
    }

    pub fn zeros(space: &HilbertSpace) -> Self {
        let d2 = space.dim() * space.dim();
        Self {
            space: space.clone(),
            matrix: DMatrix::zeros(d2, d2),
        }
    }

    /// `ρ ↦ X ρ Y`.
    pub fn left_right(x: &Operator, y: &Operator) -> Self {
        assert_eq!(x.space(), y.space(), "operator spaces differ");
        Self {
            space: x.space().clone(),
            matrix: x.matrix().kronecker(&y.matrix().transpose()),
        }
    }

    /// `ρ ↦ A ρ A†`.
    pub fn sandwich(a: &Operator) -> Self {
        Self {
            space: a.space().clone(),
            matrix: a.matrix().kronecker(&a.matrix().conjugate()),
        }
    }

    /// `ρ ↦ K ρ + ρ K`.
    pub fn anticommutator(k: &Operator) -> Self {
        let id = Operator::identity(k.space());
        &Self::left_right(k, &id) + &Self::left_right(&id, k)
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn scale(&self, factor: impl Into<C64>) -> Self {
        Self {
            space: self.space.clone(),
            matrix: &self.matrix * factor.into(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Superoperator) -> Self {
        assert_eq!(self.space, other.space, "superoperator spaces differ");
        Self {
            space: self.space.clone(),
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn apply_vec(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.matrix * v
    }

    /// Applies the map to a state. The result is flagged subnormalized since
    /// a general map does not preserve the trace.
    pub fn apply(&self, rho: &DensityOperator) -> DensityOperator {
        assert_eq!(&self.space, rho.space(), "state and map live on different spaces");
        let out = self.apply_vec(&vectorize(rho.matrix()));
        DensityOperator::new(
            self.space.clone(),
            unvectorize(&out, self.space.dim()),
            Normalization::Subnormalized,
        )
        .expect("dimension preserved")
    }

    /// `max_k |Σ_i S[(i,i),k]|`: how far the map is from annihilating the
    /// trace. Zero for a trace-preserving generator.
    pub fn trace_annihilation_deviation(&self) -> f64 {
        trace_row(&self.matrix, self.space.dim())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Distance of the map from trace preservation, `max_k |Tr S(E_k) − Tr E_k|`.
    pub fn trace_preservation_deviation(&self) -> f64 {
        let d = self.space.dim();
        let row = trace_row(&self.matrix, d);
        row.iter()
            .enumerate()
            .map(|(k, z)| {
                let target = if k / d == k % d { ONE } else { C64::from(0.0) };
                (z - target).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn trace_row(m: &DMatrix<C64>, d: usize) -> Vec<C64> {
    (0..m.ncols())
        .map(|k| (0..d).map(|i| m[(i * d + i, k)]).sum())
        .collect()
}

impl Add for &Superoperator {
    type Output = Superoperator;

    fn add(self, rhs: &Superoperator) -> Superoperator {
        assert_eq!(self.space, rhs.space, "superoperator spaces differ");
        Superoperator {
            space: self.space.clone(),
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl Sub for &Superoperator {
    type Output = Superoperator;

    fn sub(self, rhs: &Superoperator) -> Superoperator {
        assert_eq!(self.space, rhs.space, "superoperator spaces differ");
        Superoperator {
            space: self.space.clone(),
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

/// Row-major vectorization.
pub fn vectorize(m: &DMatrix<C64>) -> DVector<C64> {
    let d = m.nrows();
    DVector::from_fn(d * m.ncols(), |k, _| m[(k / d, k % d)])
}

pub fn unvectorize(v: &DVector<C64>, d: usize) -> DMatrix<C64> {
    DMatrix::from_fn(d, d, |i, j| v[i * d + j])
}

/// Trace of a vectorized `d×d` matrix.
pub fn vec_trace(v: &DVector<C64>, d: usize) -> f64 {
    (0..d).map(|i| v[i * d + i].re).sum()
}
