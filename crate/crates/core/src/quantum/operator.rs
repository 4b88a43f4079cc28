// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense operators and state vectors on a [`HilbertSpace`].

use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::space::HilbertSpace;
use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub(crate) const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// A square complex matrix acting on a fixed space.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    space: HilbertSpace,
    matrix: DMatrix<C64>,
}

impl Operator {
    pub fn new(space: HilbertSpace, matrix: DMatrix<C64>) -> Result<Self> {
        let d = space.dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::mismatch(format!(
                "{}x{} matrix on a space of dimension {d}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { space, matrix })
    }

    pub fn identity(space: &HilbertSpace) -> Self {
        let d = space.dim();
        Self {
            space: space.clone(),
            matrix: DMatrix::identity(d, d),
        }
    }

    pub fn zeros(space: &HilbertSpace) -> Self {
        let d = space.dim();
        Self {
            space: space.clone(),
            matrix: DMatrix::zeros(d, d),
        }
    }

    /// `|row⟩⟨col|` for basis states given by their per-factor labels.
    pub fn ket_bra(space: &HilbertSpace, row: &[&str], col: &[&str]) -> Result<Self> {
        let mut op = Self::zeros(space);
        op.matrix[(space.basis_index(row)?, space.basis_index(col)?)] = ONE;
        Ok(op)
    }

    /// Lifts `local`, defined on the single factor `factor` of `space`, to the
    /// whole space by tensoring with identities.
    pub fn embed(space: &HilbertSpace, factor: usize, local: &Operator) -> Result<Self> {
        let n = space.n_factors();
        if factor >= n {
            return Err(Error::InvalidFactor {
                index: factor,
                factors: n,
            });
        }
        if local.space.n_factors() != 1 || local.space.factors()[0] != space.factors()[factor] {
            return Err(Error::mismatch(format!(
                "cannot embed an operator on {} into factor {factor} of {space}",
                local.space
            )));
        }
        let parts: Vec<Operator> = (0..n)
            .map(|k| {
                if k == factor {
                    local.clone()
                } else {
                    Operator::identity(&HilbertSpace::single(space.factors()[k].clone()))
                }
            })
            .collect();
        tensor(&parts)
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

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self {
            space: self.space.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn scale(&self, factor: impl Into<C64>) -> Self {
        Self {
            space: self.space.clone(),
            matrix: &self.matrix * factor.into(),
        }
    }

    pub fn apply(&self, ket: &Ket) -> Ket {
        assert_eq!(self.space, ket.space, "operator and ket live on different spaces");
        Ket {
            space: self.space.clone(),
            amplitudes: &self.matrix * &ket.amplitudes,
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Kronecker product in the given factor order; the joint space is the
/// concatenation of the operands' factor lists.
pub fn tensor(ops: &[Operator]) -> Result<Operator> {
    let (first, rest) = ops
        .split_first()
        .ok_or_else(|| Error::invalid("tensor product of an empty operator list"))?;
    let space = HilbertSpace::product(ops.iter().map(|o| &o.space))?;
    let matrix = rest
        .iter()
        .fold(first.matrix.clone(), |acc, op| acc.kronecker(&op.matrix));
    Operator::new(space, matrix)
}

/// Kronecker product checked against a declared joint space.
pub fn tensor_in(space: &HilbertSpace, ops: &[Operator]) -> Result<Operator> {
    let op = tensor(ops)?;
    if op.space != *space {
        return Err(Error::mismatch(format!(
            "factors compose to {} but {space} was declared",
            op.space
        )));
    }
    Ok(op)
}

pub fn adjoint(op: &Operator) -> Operator {
    op.adjoint()
}

impl Mul for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.space, rhs.space, "operator spaces differ");
        Operator {
            space: self.space.clone(),
            matrix: &self.matrix * &rhs.matrix,
        }
    }
}

impl Add for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.space, rhs.space, "operator spaces differ");
        Operator {
            space: self.space.clone(),
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.space, rhs.space, "operator spaces differ");
        Operator {
            space: self.space.clone(),
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

/// A (not necessarily normalized) state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    space: HilbertSpace,
    amplitudes: DVector<C64>,
}

impl Ket {
    pub fn new(space: HilbertSpace, amplitudes: DVector<C64>) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::mismatch(format!(
                "{} amplitudes on a space of dimension {}",
                amplitudes.len(),
                space.dim()
            )));
        }
        Ok(Self { space, amplitudes })
    }

    pub fn basis(space: &HilbertSpace, labels: &[&str]) -> Result<Self> {
        let mut amplitudes = DVector::zeros(space.dim());
        amplitudes[space.basis_index(labels)?] = ONE;
        Ok(Self {
            space: space.clone(),
            amplitudes,
        })
    }

    /// Superposition `Σ c_k |labels_k⟩`.
    pub fn superposition(space: &HilbertSpace, terms: &[(C64, &[&str])]) -> Result<Self> {
        let mut amplitudes = DVector::zeros(space.dim());
        for (c, labels) in terms {
            amplitudes[space.basis_index(labels)?] += *c;
        }
        Ok(Self {
            space: space.clone(),
            amplitudes,
        })
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n * n < crate::tolerance::NULL_EVENT {
            return Err(Error::NullEvent(n * n));
        }
        Ok(Self {
            space: self.space.clone(),
            amplitudes: &self.amplitudes / C64::from(n),
        })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Ket) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn tensor(&self, other: &Ket) -> Ket {
        Ket {
            space: HilbertSpace::product([&self.space, &other.space]).expect("non-empty"),
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        }
    }
}
