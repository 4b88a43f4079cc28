// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Engine against closed forms over a grid of efficiencies and windows.

use serde::Serialize;

use super::models::{build_model, engine_triple};
use super::params::{evaluate, BellSubset, Scheme, SchemeParams, SchemeParams1cw, SchemeParams1pls, SchemeParams2ph};
use crate::error::Result;
use crate::unraveling::scenario_probabilities;

pub const GRID_ETA: [f64; 5] = [0.005, 0.1, 0.31, 0.7, 1.0];
/// Windows in units of the scheme's base rate.
pub const GRID_WINDOW: [f64; 5] = [0.05, 0.162_518_929_497_775, std::f64::consts::LN_2, 1.5, 4.0];
/// Raman-transfer probability used on the cavity grid.
pub const GRID_EPS2: f64 = 0.15;

/// Parameters of one grid point.
pub fn grid_params(scheme: Scheme, eta: f64, window: f64) -> SchemeParams {
    match scheme {
        Scheme::OneCw => SchemeParams::OneCw(SchemeParams1cw {
            gamma_eg: 1.0,
            t_cw: window,
            eta,
            p1: None,
        }),
        Scheme::OnePls => SchemeParams::OnePls(SchemeParams1pls {
            eps2: GRID_EPS2,
            kappa: 1.0,
            t: window,
            eta,
        }),
        Scheme::TwoPh => SchemeParams::TwoPh(SchemeParams2ph {
            gamma: 1.0,
            t: window,
            eta,
            subset: BellSubset::Half,
        }),
    }
}

/// Worst disagreements for one scheme.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EngineComparison {
    pub points: usize,
    pub max_dp: f64,
    pub max_df: f64,
    /// Largest `|P0 + P1 + P2 − 1|`.
    pub max_completeness: f64,
}

pub fn compare_point(params: &SchemeParams) -> Result<EngineComparison> {
    let model = build_model(params)?;
    let engine = engine_triple(&model)?;
    let closed = evaluate(params)?;
    let s = scenario_probabilities(&model.bundle()?, &model.initial, model.window)?;
    Ok(EngineComparison {
        points: 1,
        max_dp: (engine.p_suc - closed.p_suc).abs(),
        max_df: (engine.fidelity - closed.fidelity).abs(),
        max_completeness: (s.total() - 1.0).abs(),
    })
}

pub fn engine_vs_analytic(scheme: Scheme) -> Result<EngineComparison> {
    let mut acc = EngineComparison {
        points: 0,
        max_dp: 0.0,
        max_df: 0.0,
        max_completeness: 0.0,
    };
    for eta in GRID_ETA {
        for window in GRID_WINDOW {
            let c = compare_point(&grid_params(scheme, eta, window))?;
            acc.points += 1;
            acc.max_dp = acc.max_dp.max(c.max_dp);
            acc.max_df = acc.max_df.max(c.max_df);
            acc.max_completeness = acc.max_completeness.max(c.max_completeness);
        }
    }
    Ok(acc)
}
