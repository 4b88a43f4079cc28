// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Photodetection unraveling of the emitters' master equation.
//!
//! Photonic modes never appear explicitly: emitters (and cavity occupations)
//! evolve under a Lindblad equation whose jump terms are split into detected
//! clicks, resolved by detector port, and undetected emissions. Click
//! statistics follow either from the augmented click-counting generator
//! ([`scenario_probabilities`] and friends), from literal quadrature of the
//! time-ordered integrals ([`quadrature`]), or from quantum-jump sampling
//! ([`monte_carlo`]).

mod bundle;
mod channels;
mod counting;
mod montecarlo;
pub mod quadrature;

#[cfg(test)]
mod tests;

pub use bundle::{build_bundle, no_click_propagator, SuperoperatorBundle};
pub use channels::{beam_splitter_ports, DetectorPort, JumpChannel, PortSign};
pub use counting::{
    click_number_states, conditional_state_one_click, conditional_state_two_clicks, scenario_probabilities,
    tau_independence_check, ScenarioProbabilities,
};
pub(crate) use counting::{one_click_sector, two_click_sector};
pub use montecarlo::{monte_carlo, ClickRecord, MonteCarloResult, Sampler, Trajectory};
