// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Density operators, reduced states and overlaps.

use nalgebra::DMatrix;
use serde::Serialize;

use super::operator::{Ket, Operator, C64, ZERO};
use super::space::HilbertSpace;
use crate::error::{Error, Result};
use crate::tolerance::{NULL_EVENT, STRUCTURAL};

/// Whether a density operator has been divided by its event probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Normalization {
    Normalized,
    /// Conditioned but not yet renormalized; the trace is the probability of
    /// the conditioning event.
    Subnormalized,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    space: HilbertSpace,
    matrix: DMatrix<C64>,
    normalization: Normalization,
}

impl DensityOperator {
    pub fn new(space: HilbertSpace, matrix: DMatrix<C64>, normalization: Normalization) -> Result<Self> {
        let d = space.dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::mismatch(format!(
                "{}x{} matrix on a space of dimension {d}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self {
            space,
            matrix,
            normalization,
        })
    }

    /// `|ψ⟩⟨ψ|` for a normalized copy of `ket`.
    pub fn pure(ket: &Ket) -> Result<Self> {
        let psi = ket.normalized()?;
        let v = psi.amplitudes();
        Ok(Self {
            space: psi.space().clone(),
            matrix: v * v.adjoint(),
            normalization: Normalization::Normalized,
        })
    }

    pub fn basis(space: &HilbertSpace, labels: &[&str]) -> Result<Self> {
        Self::pure(&Ket::basis(space, labels)?)
    }

    pub fn maximally_mixed(space: &HilbertSpace) -> Self {
        let d = space.dim();
        Self {
            space: space.clone(),
            matrix: DMatrix::identity(d, d) / C64::from(d as f64),
            normalization: Normalization::Normalized,
        }
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Splits a subnormalized state into its probability and the
    /// normalized conditional state.
    pub fn normalized(&self) -> Result<(f64, Self)> {
        let p = self.trace();
        if !(p >= NULL_EVENT) {
            return Err(Error::NullEvent(p));
        }
        Ok((
            p,
            Self {
                space: self.space.clone(),
                matrix: &self.matrix / C64::from(p),
                normalization: Normalization::Normalized,
            },
        ))
    }

    pub fn expectation(&self, op: &Operator) -> C64 {
        assert_eq!(&self.space, op.space(), "operator and state live on different spaces");
        (op.matrix() * &self.matrix).trace()
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &Operator) -> Self {
        assert_eq!(&self.space, u.space(), "operator and state live on different spaces");
        Self {
            space: self.space.clone(),
            matrix: u.matrix() * &self.matrix * u.matrix().adjoint(),
            normalization: self.normalization,
        }
    }

    pub fn tensor(&self, other: &DensityOperator) -> Self {
        let normalization =
            if self.normalization == Normalization::Normalized && other.normalization == Normalization::Normalized {
                Normalization::Normalized
            } else {
                Normalization::Subnormalized
            };
        Self {
            space: HilbertSpace::product([&self.space, &other.space]).expect("non-empty"),
            matrix: self.matrix.kronecker(&other.matrix),
            normalization,
        }
    }

    /// Traces out every factor not listed in `keep`. The kept factors appear
    /// in ascending order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let keep = self.space.normalize_selection(keep)?;
        let reduced = self.space.subspace(&keep)?;
        let dims = self.space.dims();
        let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();
        let dk = reduced.dim();
        let dt: usize = traced.iter().map(|&k| dims[k]).product();

        // Strides of each factor in the joint row-major index.
        let mut stride = vec![1usize; dims.len()];
        for k in (0..dims.len().saturating_sub(1)).rev() {
            stride[k] = stride[k + 1] * dims[k + 1];
        }
        let offsets = |sel: &[usize], mut idx: usize| -> usize {
            let mut off = 0;
            for &k in sel.iter().rev() {
                off += (idx % dims[k]) * stride[k];
                idx /= dims[k];
            }
            off
        };
        let kept_off: Vec<usize> = (0..dk).map(|i| offsets(&keep, i)).collect();
        let traced_off: Vec<usize> = (0..dt).map(|i| offsets(&traced, i)).collect();

        let mut out = DMatrix::from_element(dk, dk, ZERO);
        for i in 0..dk {
            for j in 0..dk {
                let mut acc = ZERO;
                for &t in &traced_off {
                    acc += self.matrix[(kept_off[i] + t, kept_off[j] + t)];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(Self {
            space: reduced,
            matrix: out,
            normalization: self.normalization,
        })
    }

    /// Hermiticity, positivity and trace diagnostics.
    pub fn check(&self) -> DensityReport {
        let hermiticity_deviation = (&self.matrix - self.matrix.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let hermitian_part = (&self.matrix + self.matrix.adjoint()) * C64::from(0.5);
        let min_eigenvalue = hermitian_part
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        let trace = self.trace();
        let trace_ok = match self.normalization {
            Normalization::Normalized => (trace - 1.0).abs() <= STRUCTURAL,
            Normalization::Subnormalized => trace > 0.0 && trace <= 1.0 + STRUCTURAL,
        };
        DensityReport {
            hermiticity_deviation,
            min_eigenvalue,
            trace,
            passed: hermiticity_deviation <= STRUCTURAL && min_eigenvalue >= -STRUCTURAL && trace_ok,
        }
    }

    /// Purity `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }
}

/// Result of [`DensityOperator::check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityReport {
    pub hermiticity_deviation: f64,
    pub min_eigenvalue: f64,
    pub trace: f64,
    pub passed: bool,
}

pub fn check_density(rho: &DensityOperator) -> DensityReport {
    rho.check()
}

pub fn partial_trace(rho: &DensityOperator, keep: &[usize]) -> Result<DensityOperator> {
    rho.partial_trace(keep)
}

/// `Tr[ρ_T ρ_M]` for a pure target and a normalized state.
pub fn fidelity(target: &DensityOperator, state: &DensityOperator) -> Result<f64> {
    if target.space != state.space {
        return Err(Error::mismatch(format!(
            "target on {} but state on {}",
            target.space, state.space
        )));
    }
    let purity = target.purity();
    if (purity - 1.0).abs() > STRUCTURAL || (target.trace() - 1.0).abs() > STRUCTURAL {
        return Err(Error::NotPure(purity));
    }
    if state.normalization != Normalization::Normalized || (state.trace() - 1.0).abs() > STRUCTURAL {
        return Err(Error::NotNormalized(state.trace()));
    }
    let f = (target.matrix() * state.matrix()).trace().re;
    Ok(f.clamp(0.0, 1.0))
}
