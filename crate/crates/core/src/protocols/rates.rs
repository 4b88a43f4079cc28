// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Effective Raman rates of a continuously driven Λ atom with an extra
//! leakage level `D`.
//!
//! All rates must share one convention (angular or ordinary frequency); the
//! ratio `Ω²/Γ_r²` makes `γ′` inherit it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RamanRateParams {
    /// Rabi frequency of the drive on `e ↔ r`.
    pub omega_er: f64,
    /// Total decay rate of `r`.
    pub gamma_r: f64,
    /// Decay rate `r → g`.
    pub gamma_rg: f64,
    /// Decay rate `r → D`.
    pub gamma_rd: f64,
}

/// `(γ′, α_rg)` with `γ′ = (Ω²/Γ_r²)(Γ_rg + Γ_rD)` and
/// `α_rg = Γ_rg/(Γ_rg + Γ_rD)`.
pub fn raman_rates(p: &RamanRateParams) -> Result<(f64, f64)> {
    if [p.omega_er, p.gamma_r, p.gamma_rg, p.gamma_rd]
        .iter()
        .any(|x| !(*x >= 0.0))
    {
        return Err(Error::invalid("Raman rates must be non-negative"));
    }
    let branch = p.gamma_rg + p.gamma_rd;
    if branch == 0.0 {
        return Err(Error::invalid("gamma_rg + gamma_rd must be positive"));
    }
    if branch > p.gamma_r * (1.0 + 1e-12) {
        return Err(Error::invalid("partial decay rates exceed the total decay rate"));
    }
    let gamma_prime = (p.omega_er / p.gamma_r).powi(2) * branch;
    Ok((gamma_prime, p.gamma_rg / branch))
}

/// `p1 = α_rg (1 − e^{−γ′ T_cw})`.
pub fn p1_experimental(gamma_prime: f64, alpha_rg: f64, t_cw: f64) -> Result<f64> {
    if !(gamma_prime >= 0.0) || !(t_cw >= 0.0) || !(0.0..=1.0).contains(&alpha_rg) {
        return Err(Error::invalid("need γ′ ≥ 0, T_cw ≥ 0 and α_rg in [0, 1]"));
    }
    Ok(alpha_rg * -(-gamma_prime * t_cw).exp_m1())
}
