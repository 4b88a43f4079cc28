// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! The heralding schemes: closed-form efficiencies, engine models, and the
//! Raman-rate helpers for the driven free-space scheme.
//!
//! Emitter levels are labelled `e`, `g` (and `r` for the common excited
//! state of a Λ atom); cavity modes hold `0` or `1` photons. Rates and
//! windows are in units of the scheme's base rate unless stated otherwise.

mod models;
mod params;
mod rates;
mod validation;

pub use models::{build_model, engine_triple, BellState, Herald, HeraldOutcome, ProtocolModel};
pub use params::{
    eval_1cw, eval_1pls, eval_2ph, evaluate, BellSubset, EfficiencyTriple, Scheme, SchemeParams, SchemeParams1cw,
    SchemeParams1pls, SchemeParams2ph,
};
pub use rates::{p1_experimental, raman_rates, RamanRateParams};
pub use validation::{
    compare_point, engine_vs_analytic, grid_params, EngineComparison, GRID_EPS2, GRID_ETA, GRID_WINDOW,
};
