// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

use clap::Args;

use herald_core::protocols::{BellSubset, Scheme, SchemeParams, SchemeParams1cw, SchemeParams1pls, SchemeParams2ph};

use crate::Failure;

/// Scheme selection and parameters. Rates default to 1, so windows are in
/// units of the scheme's base rate.
#[derive(Args, Debug, Clone)]
pub struct SchemeArgs {
    /// `1cw`, `1pls` or `2ph`.
    #[arg(long, default_value = "1cw")]
    pub scheme: String,
    #[arg(long)]
    pub eta: Option<f64>,
    /// Emission probability of the driven free-space scheme.
    #[arg(long)]
    pub p1: Option<f64>,
    #[arg(long)]
    pub t_cw: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub gamma_eg: f64,
    /// Raman-transfer probability of the cavity scheme.
    #[arg(long)]
    pub eps2: Option<f64>,
    #[arg(long)]
    pub p_cav: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub kappa: f64,
    /// Detection window of the cavity and two-photon schemes.
    #[arg(long)]
    pub t: Option<f64>,
    /// Emission probability of the two-photon scheme.
    #[arg(long)]
    pub p2: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// `half` or `quarter` of the Bell states heralded by coincidences.
    #[arg(long, default_value = "half")]
    pub subset: String,
}

fn need(name: &str, x: Option<f64>, fallback: Option<f64>) -> Result<f64, Failure> {
    x.or(fallback)
        .ok_or_else(|| Failure::Usage(format!("--{name} is required for this command")))
}

impl SchemeArgs {
    /// With `defaults`, missing values are filled in (window 1, η 1, ε² 0.15)
    /// so that a sweep can vary them.
    pub fn to_params(&self, defaults: bool) -> Result<SchemeParams, Failure> {
        let scheme: Scheme = self.scheme.parse()?;
        let d = |x: f64| defaults.then_some(x);
        let eta = need("eta", self.eta, d(1.0))?;
        let params = match scheme {
            Scheme::OneCw => SchemeParams::OneCw(match self.p1 {
                Some(p1) => {
                    let mut p = SchemeParams1cw::from_p1(p1, eta);
                    p.t_cw /= self.gamma_eg;
                    p.gamma_eg = self.gamma_eg;
                    p
                }
                None => SchemeParams1cw {
                    gamma_eg: self.gamma_eg,
                    t_cw: need("t-cw", self.t_cw, d(1.0))?,
                    eta,
                    p1: None,
                },
            }),
            Scheme::OnePls => {
                let eps2 = need("eps2", self.eps2, d(0.15))?;
                let mut p = match self.p_cav {
                    Some(pc) => {
                        let mut p = SchemeParams1pls::from_p_cav(eps2, pc, eta)?;
                        p.t /= self.kappa;
                        p
                    }
                    None => SchemeParams1pls {
                        eps2,
                        kappa: 1.0,
                        t: need("t", self.t, d(1.0))?,
                        eta,
                    },
                };
                p.kappa = self.kappa;
                SchemeParams::OnePls(p)
            }
            Scheme::TwoPh => {
                let subset: BellSubset = self.subset.parse()?;
                let mut p = match self.p2 {
                    Some(p2) => {
                        let mut p = SchemeParams2ph::from_p2(p2, eta, subset);
                        p.t /= self.gamma;
                        p
                    }
                    None => SchemeParams2ph {
                        gamma: 1.0,
                        t: need("t", self.t, d(1.0))?,
                        eta,
                        subset,
                    },
                };
                p.gamma = self.gamma;
                SchemeParams::TwoPh(p)
            }
        };
        params.validate()?;
        Ok(params)
    }
}
