// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Invariant suites runnable from the command line.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::protocols::{build_model, engine_vs_analytic, Scheme, SchemeParams, SchemeParams1cw, SchemeParams1pls};
use crate::purification::{oracle_step, pair_space, phi_plus, recurrence_step, BellDiagonalState};
use crate::tolerance::{ENGINE, STRUCTURAL};
use crate::unraveling::tau_independence_check;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckSuite {
    /// Single-click states do not depend on the click time.
    ClickTime,
    EngineVsAnalytic,
    PurifyOracle,
}

impl CheckSuite {
    pub const ALL: [CheckSuite; 3] = [
        CheckSuite::ClickTime,
        CheckSuite::EngineVsAnalytic,
        CheckSuite::PurifyOracle,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CheckSuite::ClickTime => "appendix-a",
            CheckSuite::EngineVsAnalytic => "engine-vs-analytic",
            CheckSuite::PurifyOracle => "purify-oracle",
        }
    }
}

impl fmt::Display for CheckSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for CheckSuite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckSuite::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "check suite",
                name: s.to_string(),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
}

impl Metric {
    pub fn passed(&self) -> bool {
        self.value < self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub suite: CheckSuite,
    pub metrics: Vec<Metric>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.metrics.iter().all(Metric::passed)
    }
}

fn metric(name: impl Into<String>, value: f64, tolerance: f64) -> Metric {
    Metric {
        name: name.into(),
        value,
        tolerance,
    }
}

/// Click-time independence on 20 times for both single-photon models.
pub fn click_time_suite() -> Result<Vec<Metric>> {
    let taus: Vec<f64> = (0..20).map(|k| k as f64 / 19.0).collect();
    let mut out = Vec::new();
    for eta in [0.1, 0.5, 0.9] {
        let models = [
            SchemeParams::OneCw(SchemeParams1cw {
                gamma_eg: 1.0,
                t_cw: 1.0,
                eta,
                p1: None,
            }),
            SchemeParams::OnePls(SchemeParams1pls {
                eps2: 0.3,
                kappa: 1.0,
                t: 1.0,
                eta,
            }),
        ];
        for params in models {
            let model = build_model(&params)?;
            let dev = tau_independence_check(&model.bundle()?, &model.initial, "D+", 1.0, &taus)?;
            out.push(metric(
                format!("{} eta={eta} tau deviation", params.scheme()),
                dev,
                STRUCTURAL,
            ));
        }
    }
    Ok(out)
}

pub fn engine_suite() -> Result<Vec<Metric>> {
    let mut out = Vec::new();
    for scheme in Scheme::ALL {
        let c = engine_vs_analytic(scheme)?;
        out.push(metric(format!("{scheme} max |dP|"), c.max_dp, ENGINE));
        out.push(metric(format!("{scheme} max |dF|"), c.max_df, ENGINE));
        out.push(metric(format!("{scheme} max |P0+P1+P2-1|"), c.max_completeness, ENGINE));
    }
    Ok(out)
}

/// Largest disagreement between the recurrence and the two-pair simulation
/// over `n` seeded random Bell-diagonal states.
pub fn oracle_deviation(n: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = pair_space();
    let mut worst = 0.0f64;
    for _ in 0..n {
        let w: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>());
        let s: f64 = w.iter().sum();
        let state = BellDiagonalState::new(w[0] / s, w[1] / s, w[2] / s, w[3] / s)?;
        let (n_o, rho) = oracle_step(&state.to_density(&space)?)?;
        let (n_r, r) = recurrence_step(&state);
        let o = BellDiagonalState::from_density(&rho)?;
        worst = worst.max((n_o - n_r).abs());
        for (x, y) in o.coefficients().iter().zip(r.coefficients()) {
            worst = worst.max((x - y).abs());
        }
    }
    Ok(worst)
}

/// `|N − 1|` and `1 − F` for pure `Φ+` through one round.
pub fn fixed_point_deviation() -> Result<(f64, f64)> {
    let phi = phi_plus()?;
    let (n, out) = oracle_step(&phi)?;
    let f = crate::quantum::fidelity(&phi, &out)?;
    Ok(((n - 1.0).abs(), 1.0 - f))
}

pub fn purify_suite() -> Result<Vec<Metric>> {
    let (dn, df) = fixed_point_deviation()?;
    Ok(vec![
        metric(
            "recurrence vs oracle, 100 states",
            oracle_deviation(100, 2026)?,
            STRUCTURAL,
        ),
        metric("Phi+ fixed point |N-1|", dn, STRUCTURAL),
        metric("Phi+ fixed point 1-F", df, STRUCTURAL),
    ])
}

pub fn run_check(suite: CheckSuite) -> Result<CheckReport> {
    let metrics = match suite {
        CheckSuite::ClickTime => click_time_suite()?,
        CheckSuite::EngineVsAnalytic => engine_suite()?,
        CheckSuite::PurifyOracle => purify_suite()?,
    };
    Ok(CheckReport { suite, metrics })
}
