// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Bell-diagonal states and the coefficient recurrence of one purification
//! round.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::protocols::BellState;
use crate::quantum::{DensityOperator, HilbertSpace, C64};

/// Weights on the Bell basis in the order `(Φ+, Ψ−, Ψ+, Φ−)`; `a` is the
/// fidelity with `Φ+`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellDiagonalState {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// The Bell basis in coefficient order.
pub const BELL_ORDER: [BellState; 4] = [
    BellState::PhiPlus,
    BellState::PsiMinus,
    BellState::PsiPlus,
    BellState::PhiMinus,
];

impl BellDiagonalState {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let s = Self { a, b, c, d };
        if s.coefficients().iter().any(|x| !(0.0..=1.0).contains(x)) {
            return Err(Error::invalid(format!("Bell weights {s:?} outside [0, 1]")));
        }
        if (a + b + c + d - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!("Bell weights sum to {}", a + b + c + d)));
        }
        Ok(s)
    }

    /// Fidelity `f` with `Φ+`, the rest spread evenly.
    pub fn werner(f: f64) -> Result<Self> {
        let r = (1.0 - f) / 3.0;
        Self::new(f, r, r, r)
    }

    pub fn coefficients(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn fidelity(&self) -> f64 {
        self.a
    }

    /// Diagonal of `ρ` in the Bell basis; off-diagonal parts are dropped.
    pub fn from_density(rho: &DensityOperator) -> Result<Self> {
        let mut w = [0.0; 4];
        for (slot, bell) in w.iter_mut().zip(BELL_ORDER) {
            let ket = bell.ket(rho.space())?;
            let v = ket.amplitudes();
            *slot = (v.adjoint() * rho.matrix() * v)[(0, 0)].re;
        }
        Ok(Self {
            a: w[0],
            b: w[1],
            c: w[2],
            d: w[3],
        })
    }

    pub fn to_density(&self, space: &HilbertSpace) -> Result<DensityOperator> {
        let d = space.dim();
        let mut m = nalgebra::DMatrix::from_element(d, d, C64::from(0.0));
        for (w, bell) in self.coefficients().into_iter().zip(BELL_ORDER) {
            m += bell.density(space)?.matrix() * C64::from(w);
        }
        DensityOperator::new(space.clone(), m, crate::quantum::Normalization::Normalized)
    }
}

/// One round on Bell-diagonal pairs:
///
/// ```text
/// N  = (A + B)² + (C + D)²
/// A' = (A² + B²)/N   B' = 2CD/N   C' = (C² + D²)/N   D' = 2AB/N
/// ```
pub fn recurrence_step(s: &BellDiagonalState) -> (f64, BellDiagonalState) {
    let BellDiagonalState { a, b, c, d } = *s;
    let n = (a + b).powi(2) + (c + d).powi(2);
    (
        n,
        BellDiagonalState {
            a: (a * a + b * b) / n,
            b: 2.0 * c * d / n,
            c: (c * c + d * d) / n,
            d: 2.0 * a * b / n,
        },
    )
}
