// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Scheme parameters and the closed-form efficiency expressions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The three heralding schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    /// Continuously driven single-photon scheme in free space.
    #[serde(rename = "1cw")]
    OneCw,
    /// Single-photon scheme with atom-cavity states prepared by a pulse.
    #[serde(rename = "1pls")]
    OnePls,
    /// Two-photon coincidence scheme with Λ atoms.
    #[serde(rename = "2ph")]
    TwoPh,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::OneCw, Scheme::OnePls, Scheme::TwoPh];

    pub fn id(self) -> &'static str {
        match self {
            Scheme::OneCw => "1cw",
            Scheme::OnePls => "1pls",
            Scheme::TwoPh => "2ph",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "scheme",
                name: s.to_string(),
            })
    }
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::invalid(format!("{name} = {x} outside [0, 1]")));
    }
    Ok(())
}

fn check_rate(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::invalid(format!("{name} = {x} must be positive")));
    }
    Ok(())
}

fn check_window(name: &str, x: f64) -> Result<()> {
    if !(x >= 0.0) {
        return Err(Error::invalid(format!("{name} = {x} must be non-negative")));
    }
    Ok(())
}

/// Window that makes `1 − e^{−rate·t}` equal `p`, in units of `1/rate`.
fn window_for(p: f64) -> f64 {
    -(-p).ln_1p()
}

/// Continuous-drive scheme. With `p1` set, the emission probability is taken
/// as given and `gamma_eg`, `t_cw` only fix the time scale of the engine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeParams1cw {
    pub gamma_eg: f64,
    pub t_cw: f64,
    pub eta: f64,
    pub p1: Option<f64>,
}

impl SchemeParams1cw {
    /// Unit rate, the window matching `p1`, and `p1` pinned.
    pub fn from_p1(p1: f64, eta: f64) -> Self {
        Self {
            gamma_eg: 1.0,
            t_cw: if p1 < 1.0 { window_for(p1) } else { f64::INFINITY },
            eta,
            p1: Some(p1),
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_rate("gamma_eg", self.gamma_eg)?;
        check_window("t_cw", self.t_cw)?;
        check_unit("eta", self.eta)?;
        if let Some(p1) = self.p1 {
            check_unit("p1", p1)?;
        }
        Ok(())
    }

    /// `p1 = 1 − e^{−Γ_eg T_cw}` unless given.
    pub fn p1(&self) -> f64 {
        self.p1.unwrap_or_else(|| -(-self.gamma_eg * self.t_cw).exp_m1())
    }
}

/// Pulsed scheme with atoms in cavities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeParams1pls {
    pub eps2: f64,
    pub kappa: f64,
    pub t: f64,
    pub eta: f64,
}

impl SchemeParams1pls {
    /// Unit cavity decay constant and the window at which `p_cav` is reached.
    pub fn from_p_cav(eps2: f64, p_cav: f64, eta: f64) -> Result<Self> {
        if !(0.0..=eps2).contains(&p_cav) {
            return Err(Error::invalid(format!("p_cav = {p_cav} outside [0, eps2 = {eps2}]")));
        }
        let ratio = if eps2 > 0.0 { p_cav / eps2 } else { 0.0 };
        Ok(Self {
            eps2,
            kappa: 1.0,
            t: if ratio < 1.0 { window_for(ratio) } else { f64::INFINITY },
            eta,
        })
    }

    pub fn validate(&self) -> Result<()> {
        check_unit("eps2", self.eps2)?;
        check_rate("kappa", self.kappa)?;
        check_window("t", self.t)?;
        check_unit("eta", self.eta)
    }

    /// `p_cav = ε²(1 − e^{−κT})`.
    pub fn p_cav(&self) -> f64 {
        self.eps2 * -(-self.kappa * self.t).exp_m1()
    }
}

/// Which coincidence patterns count as success in the two-photon scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BellSubset {
    /// Both heralded Bell states: half of all two-click events.
    Half,
    /// A single heralded Bell state: a quarter of all two-click events.
    Quarter,
}

impl BellSubset {
    pub fn factor(self) -> f64 {
        match self {
            BellSubset::Half => 0.5,
            BellSubset::Quarter => 0.25,
        }
    }
}

impl FromStr for BellSubset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "half" => Ok(BellSubset::Half),
            "quarter" => Ok(BellSubset::Quarter),
            _ => Err(Error::Unknown {
                kind: "Bell subset",
                name: s.to_string(),
            }),
        }
    }
}

/// Two-photon scheme; each of the four decay pathways has rate `Γ/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeParams2ph {
    pub gamma: f64,
    pub t: f64,
    pub eta: f64,
    pub subset: BellSubset,
}

impl SchemeParams2ph {
    pub fn from_p2(p2: f64, eta: f64, subset: BellSubset) -> Self {
        Self {
            gamma: 1.0,
            t: if p2 < 1.0 { window_for(p2) } else { f64::INFINITY },
            eta,
            subset,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_rate("gamma", self.gamma)?;
        check_window("t", self.t)?;
        check_unit("eta", self.eta)
    }

    /// `p2 = 1 − e^{−ΓT}`.
    pub fn p2(&self) -> f64 {
        -(-self.gamma * self.t).exp_m1()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scheme")]
pub enum SchemeParams {
    #[serde(rename = "1cw")]
    OneCw(SchemeParams1cw),
    #[serde(rename = "1pls")]
    OnePls(SchemeParams1pls),
    #[serde(rename = "2ph")]
    TwoPh(SchemeParams2ph),
}

impl SchemeParams {
    pub fn scheme(&self) -> Scheme {
        match self {
            SchemeParams::OneCw(_) => Scheme::OneCw,
            SchemeParams::OnePls(_) => Scheme::OnePls,
            SchemeParams::TwoPh(_) => Scheme::TwoPh,
        }
    }

    pub fn eta(&self) -> f64 {
        match self {
            SchemeParams::OneCw(p) => p.eta,
            SchemeParams::OnePls(p) => p.eta,
            SchemeParams::TwoPh(p) => p.eta,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SchemeParams::OneCw(p) => p.validate(),
            SchemeParams::OnePls(p) => p.validate(),
            SchemeParams::TwoPh(p) => p.validate(),
        }
    }
}

/// Success probability, conditional fidelity and their product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyTriple {
    pub p_suc: f64,
    pub fidelity: f64,
    pub f_avg: f64,
}

impl EfficiencyTriple {
    pub fn new(p_suc: f64, fidelity: f64) -> Self {
        Self {
            p_suc,
            fidelity,
            f_avg: p_suc * fidelity,
        }
    }

    /// Replaces the conditional fidelity by an externally measured value.
    pub fn with_measured_fidelity(self, fidelity: f64) -> Self {
        Self::new(self.p_suc, fidelity)
    }
}

/// `(1 − x)/(1 − ηp)` with the degenerate `η = p = 1` corner reported as 0:
/// nothing is ever heralded there.
fn single_photon_fidelity(numerator: f64, eta: f64, p: f64) -> f64 {
    let den = 1.0 - eta * p;
    if den <= 0.0 {
        0.0
    } else {
        numerator / den
    }
}

/// `P = 2ηp1(1 − ηp1)`, `F = (1 − p1)/(1 − ηp1)`.
pub fn eval_1cw(params: &SchemeParams1cw) -> Result<EfficiencyTriple> {
    params.validate()?;
    let (p1, eta) = (params.p1(), params.eta);
    let p_suc = 2.0 * eta * p1 * (1.0 - eta * p1);
    Ok(EfficiencyTriple::new(p_suc, single_photon_fidelity(1.0 - p1, eta, p1)))
}

/// `P = 2ηp_cav(1 − ηp_cav)`, `F = (1 − ε²)/(1 − ηp_cav)`.
pub fn eval_1pls(params: &SchemeParams1pls) -> Result<EfficiencyTriple> {
    params.validate()?;
    let (pc, eta) = (params.p_cav(), params.eta);
    let p_suc = 2.0 * eta * pc * (1.0 - eta * pc);
    Ok(EfficiencyTriple::new(
        p_suc,
        single_photon_fidelity(1.0 - params.eps2, eta, pc),
    ))
}

/// `P = f·η²p2²` with `f` = 1/2 or 1/4, and `F = 1`.
pub fn eval_2ph(params: &SchemeParams2ph) -> Result<EfficiencyTriple> {
    params.validate()?;
    let p2 = params.p2();
    Ok(EfficiencyTriple::new(
        params.subset.factor() * (params.eta * p2).powi(2),
        1.0,
    ))
}

pub fn evaluate(params: &SchemeParams) -> Result<EfficiencyTriple> {
    match params {
        SchemeParams::OneCw(p) => eval_1cw(p),
        SchemeParams::OnePls(p) => eval_1pls(p),
        SchemeParams::TwoPh(p) => eval_2ph(p),
    }
}
