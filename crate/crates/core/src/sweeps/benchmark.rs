// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Presets for published trapped-ion experiments, with the figures reported
//! for them. Repetition rates are in experimental sequences per second.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::protocols::{
    evaluate, BellSubset, EfficiencyTriple, SchemeParams, SchemeParams1cw, SchemeParams1pls, SchemeParams2ph,
};
use crate::tolerance::agrees_to_digits;

/// A reported figure and the number of significant digits it was given to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Reported {
    pub value: f64,
    pub digits: u32,
}

const fn reported(value: f64, digits: u32) -> Reported {
    Reported { value, digits }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkPreset {
    pub id: &'static str,
    pub description: &'static str,
    pub params: SchemeParams,
    pub repetition_rate: f64,
    /// Fidelity measured by tomography, replacing the model value.
    pub measured_fidelity: Option<f64>,
    pub p_suc: Reported,
    pub fidelity: Reported,
    pub f_avg: Reported,
    pub events_per_second: Option<Reported>,
    pub seconds_per_event: Option<Reported>,
}

pub const PRESET_IDS: [&str; 3] = ["ca40-freespace", "ca40-cavity", "yb171-twophoton"];

pub fn preset(id: &str) -> Result<BenchmarkPreset> {
    Ok(match id {
        "ca40-freespace" => BenchmarkPreset {
            id: "ca40-freespace",
            description: "40Ca+ in free space, driven Raman emission, single-photon heralding",
            params: SchemeParams::OneCw(SchemeParams1cw::from_p1(0.15, 0.005)),
            repetition_rate: 1e5,
            measured_fidelity: None,
            p_suc: reported(1.5e-3, 2),
            fidelity: reported(0.85, 2),
            f_avg: reported(1.3e-3, 2),
            events_per_second: Some(reported(150.0, 2)),
            seconds_per_event: None,
        },
        "ca40-cavity" => BenchmarkPreset {
            id: "ca40-cavity",
            description: "40Ca+ in a high-finesse cavity, pulsed Raman transfer, single-photon heralding",
            params: SchemeParams::OnePls(SchemeParams1pls::from_p_cav(0.15, 0.1, 0.31)?),
            repetition_rate: 3.3e4,
            measured_fidelity: None,
            p_suc: reported(6.0e-2, 2),
            fidelity: reported(0.88, 2),
            f_avg: reported(5.3e-2, 2),
            events_per_second: Some(reported(2.0e3, 2)),
            seconds_per_event: None,
        },
        "yb171-twophoton" => BenchmarkPreset {
            id: "yb171-twophoton",
            description: "171Yb+ pair, polarization-entangled photons, coincidences heralding one Bell state",
            params: SchemeParams::TwoPh(SchemeParams2ph::from_p2(2.0 / 3.0, 6.7e-4, BellSubset::Quarter)),
            repetition_rate: 5.2e5,
            measured_fidelity: Some(0.81),
            p_suc: reported(4.9e-8, 2),
            fidelity: reported(0.81, 2),
            f_avg: reported(4e-8, 1),
            events_per_second: None,
            seconds_per_event: Some(reported(39.0, 2)),
        },
        _ => {
            return Err(Error::Unknown {
                kind: "benchmark preset",
                name: id.to_string(),
            })
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureCheck {
    pub name: &'static str,
    pub computed: f64,
    pub reported: Reported,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkResult {
    pub preset: &'static str,
    pub triple: EfficiencyTriple,
    pub events_per_second: f64,
    pub seconds_per_event: f64,
    pub checks: Vec<FigureCheck>,
}

impl BenchmarkResult {
    pub fn agrees(&self) -> bool {
        self.checks.iter().all(|c| c.agrees)
    }
}

pub fn benchmark(id: &str) -> Result<BenchmarkResult> {
    let p = preset(id)?;
    let mut triple = evaluate(&p.params)?;
    if let Some(f) = p.measured_fidelity {
        triple = triple.with_measured_fidelity(f);
    }
    let events = p.repetition_rate * triple.p_suc;
    let check = |name, computed: f64, r: Reported| FigureCheck {
        name,
        computed,
        reported: r,
        agrees: agrees_to_digits(computed, r.value, r.digits),
    };
    let mut checks = vec![
        check("p_suc", triple.p_suc, p.p_suc),
        check("fidelity", triple.fidelity, p.fidelity),
        check("f_avg", triple.f_avg, p.f_avg),
    ];
    if let Some(r) = p.events_per_second {
        checks.push(check("events_per_second", events, r));
    }
    if let Some(r) = p.seconds_per_event {
        checks.push(check("seconds_per_event", 1.0 / events, r));
    }
    Ok(BenchmarkResult {
        preset: p.id,
        triple,
        events_per_second: events,
        seconds_per_event: 1.0 / events,
        checks,
    })
}
