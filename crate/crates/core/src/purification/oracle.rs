// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Brute-force simulation of one purification round on two copies of a
//! pair, and the local frame that takes `Ψ+` to `Φ+`.
//!
//! Qubits are ordered `[A1, B1, A2, B2]`: pair 1 is `(A1, B1)` and pair 2 is
//! `(A2, B2)`, with `A` held by one party and `B` by the other. Level `e` is
//! computational `|0⟩` and `g` is `|1⟩`. One round applies `R_x(π/2)` to the
//! `A` qubits and `R_x(−π/2)` to the `B` qubits, a CNOT from pair 1 onto pair
//! 2 on each side, measures `A2` and `B2` in the `e/g` basis and keeps pair 1
//! when the outcomes coincide.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::quantum::{DensityOperator, HilbertSpace, Normalization, C64};
use crate::tolerance::NULL_EVENT;

/// `R_x(θ) = cos(θ/2) I − i sin(θ/2) X`.
pub fn rx(theta: f64) -> DMatrix<C64> {
    let (c, s) = ((0.5 * theta).cos(), (0.5 * theta).sin());
    DMatrix::from_row_slice(
        2,
        2,
        &[C64::from(c), C64::new(0.0, -s), C64::new(0.0, -s), C64::from(c)],
    )
}

fn pauli_x() -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[C64::from(0.0), C64::from(1.0), C64::from(1.0), C64::from(0.0)])
}

fn require_pair(rho: &DensityOperator) -> Result<()> {
    if rho.space().dims() != [2, 2] {
        return Err(Error::mismatch(format!(
            "expected a pair of qubits, got {}",
            rho.space()
        )));
    }
    Ok(())
}

/// Permutation matrix of a CNOT on four qubits (first qubit most
/// significant).
fn cnot4(control: usize, target: usize) -> DMatrix<C64> {
    let bit = |q: usize| 1usize << (3 - q);
    let mut m = DMatrix::from_element(16, 16, C64::from(0.0));
    for i in 0..16 {
        let j = if i & bit(control) != 0 { i ^ bit(target) } else { i };
        m[(j, i)] = C64::from(1.0);
    }
    m
}

/// One purification round. Returns the probability that the outcomes
/// coincide and the normalized surviving pair.
pub fn oracle_step(rho: &DensityOperator) -> Result<(f64, DensityOperator)> {
    require_pair(rho)?;
    let (ra, rb) = (rx(std::f64::consts::FRAC_PI_2), rx(-std::f64::consts::FRAC_PI_2));
    let local = ra.kronecker(&rb);
    let rotated = &local * rho.matrix() * local.adjoint();
    let two = rotated.kronecker(&rotated);
    let gate = cnot4(1, 3) * cnot4(0, 2);
    let after = &gate * two * gate.transpose();

    // Coincident outcomes on (A2, B2): index bits 1 and 0 equal.
    let mut kept = DMatrix::from_element(4, 4, C64::from(0.0));
    for i in 0..4 {
        for j in 0..4 {
            kept[(i, j)] = after[(4 * i, 4 * j)] + after[(4 * i + 3, 4 * j + 3)];
        }
    }
    let n = kept.trace().re;
    if !(n >= NULL_EVENT) {
        return Err(Error::NullEvent(n));
    }
    let out = DensityOperator::new(rho.space().clone(), kept / C64::from(n), Normalization::Normalized)?;
    Ok((n, out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameDirection {
    /// `Ψ+ → Φ+`.
    Forward,
    /// `Φ+ → Ψ+`.
    Inverse,
}

/// The local unitary `R_x(π/4) ⊗ X R_x(−π/4)`, which maps `Ψ+` to `Φ+`.
pub fn bell_frame_unitary() -> DMatrix<C64> {
    rx(std::f64::consts::FRAC_PI_4).kronecker(&(pauli_x() * rx(-std::f64::consts::FRAC_PI_4)))
}

pub fn bell_frame_rotation(rho: &DensityOperator, direction: FrameDirection) -> Result<DensityOperator> {
    require_pair(rho)?;
    let u = match direction {
        FrameDirection::Forward => bell_frame_unitary(),
        FrameDirection::Inverse => bell_frame_unitary().adjoint(),
    };
    DensityOperator::new(
        rho.space().clone(),
        &u * rho.matrix() * u.adjoint(),
        rho.normalization(),
    )
}

/// A space of two qubits labelled `e`, `g`.
pub fn pair_space() -> HilbertSpace {
    HilbertSpace::new(vec![
        crate::quantum::Factor::two_level("atom1"),
        crate::quantum::Factor::two_level("atom2"),
    ])
    .expect("two factors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocols::BellState;
    use crate::purification::bell::{recurrence_step, BellDiagonalState};
    use crate::quantum::fidelity;

    #[test]
    fn frame_maps_psi_plus_to_phi_plus() {
        let s = pair_space();
        let psi = BellState::PsiPlus.density(&s).unwrap();
        let phi = BellState::PhiPlus.density(&s).unwrap();
        let rotated = bell_frame_rotation(&psi, FrameDirection::Forward).unwrap();
        assert!((rotated.matrix() - phi.matrix()).norm() < 1e-15);
        let back = bell_frame_rotation(&rotated, FrameDirection::Inverse).unwrap();
        assert!((back.matrix() - psi.matrix()).norm() < 1e-15);
    }

    #[test]
    fn perfect_pair_survives() {
        let phi = BellState::PhiPlus.density(&pair_space()).unwrap();
        let (n, out) = oracle_step(&phi).unwrap();
        assert!((n - 1.0).abs() < 1e-14);
        assert!((fidelity(&phi, &out).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn werner_fixture() {
        let s = pair_space();
        let w = BellDiagonalState::werner(0.85).unwrap().to_density(&s).unwrap();
        let (n, out) = oracle_step(&w).unwrap();
        assert!((n - 0.82).abs() < 1e-14);
        let got = BellDiagonalState::from_density(&out).unwrap();
        assert!((got.a - 0.884_146_341_463_414_6).abs() < 1e-12);
        assert!((got.d - 0.103_658_536_585_365_8).abs() < 1e-12);
        let (rn, rs) = recurrence_step(&BellDiagonalState::werner(0.85).unwrap());
        assert!((rn - n).abs() < 1e-12 && (rs.a - got.a).abs() < 1e-12);
    }

    #[test]
    fn maximally_mixed_input() {
        let (n, out) = oracle_step(&DensityOperator::maximally_mixed(&pair_space())).unwrap();
        assert!((n - 0.5).abs() < 1e-15);
        let phi = BellState::PhiPlus.density(&pair_space()).unwrap();
        assert!((fidelity(&phi, &out).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn rejects_wrong_dimensions() {
        let s = HilbertSpace::single(crate::quantum::Factor::lambda("x"));
        assert!(oracle_step(&DensityOperator::maximally_mixed(&s)).is_err());
    }
}
