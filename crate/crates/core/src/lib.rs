// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Simulation and analysis of heralded entanglement between two remote
//! emitters.
//!
//! The crate has five layers:
//!
//! - [`quantum`]: dense operators, density matrices and superoperators on
//!   labelled tensor-product spaces.
//! - [`unraveling`]: the photodetection unraveling of the emitters' master
//!   equation, with deterministic click statistics, conditional states and a
//!   quantum-jump Monte Carlo sampler.
//! - [`protocols`]: the single-photon (continuous drive and cavity pulse) and
//!   two-photon schemes, as engine models and as closed forms.
//! - [`purification`]: recurrence purification of the heralded pairs.
//! - [`sweeps`]: parameter sweeps, region maps, benchmark presets and the
//!   check suites exposed by the `herald` command-line tool.

// `!(x > 0.0)` style guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod protocols;
pub mod purification;
pub mod quantum;
pub mod sweeps;
pub mod tolerance;
pub mod unraveling;

pub use error::{Error, Result};
