// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::regions::linspace;
use super::table::{Table, Value};
use crate::error::{Error, Result};
use crate::protocols::{build_model, engine_triple, evaluate, SchemeParams, SchemeParams1pls, SchemeParams2ph};

/// One-dimensional scan of a scheme parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    /// Values of the parameters held fixed; also names the scheme.
    pub base: SchemeParams,
    pub parameter: String,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    /// Add columns computed by the unraveling engine.
    #[serde(default)]
    pub engine: bool,
}

/// Parameter names accepted per scheme.
pub fn sweep_parameters(params: &SchemeParams) -> &'static [&'static str] {
    match params {
        SchemeParams::OneCw(_) => &["t_cw", "p1", "eta", "gamma_eg"],
        SchemeParams::OnePls(_) => &["t", "p_cav", "eta", "eps2", "kappa"],
        SchemeParams::TwoPh(_) => &["t", "p2", "eta", "gamma"],
    }
}

/// `base` with one parameter replaced.
pub fn with_parameter(base: &SchemeParams, name: &str, value: f64) -> Result<SchemeParams> {
    let mut p = *base;
    match (&mut p, name) {
        (SchemeParams::OneCw(q), "t_cw") => {
            q.t_cw = value;
            q.p1 = None;
        }
        (SchemeParams::OneCw(q), "p1") => q.p1 = Some(value),
        (SchemeParams::OneCw(q), "eta") => q.eta = value,
        (SchemeParams::OneCw(q), "gamma_eg") => q.gamma_eg = value,
        (SchemeParams::OnePls(q), "t") => q.t = value,
        (SchemeParams::OnePls(q), "p_cav") => {
            let kappa = q.kappa;
            *q = SchemeParams1pls::from_p_cav(q.eps2, value, q.eta)?;
            q.t /= kappa;
            q.kappa = kappa;
        }
        (SchemeParams::OnePls(q), "eta") => q.eta = value,
        (SchemeParams::OnePls(q), "eps2") => q.eps2 = value,
        (SchemeParams::OnePls(q), "kappa") => q.kappa = value,
        (SchemeParams::TwoPh(q), "t") => q.t = value,
        (SchemeParams::TwoPh(q), "p2") => {
            let gamma = q.gamma;
            *q = SchemeParams2ph::from_p2(value, q.eta, q.subset);
            q.t /= gamma;
            q.gamma = gamma;
        }
        (SchemeParams::TwoPh(q), "eta") => q.eta = value,
        (SchemeParams::TwoPh(q), "gamma") => q.gamma = value,
        _ => {
            return Err(Error::Unknown {
                kind: "sweep parameter",
                name: format!("{name} for scheme {}", base.scheme()),
            })
        }
    }
    p.validate()?;
    Ok(p)
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::invalid(format!(
                "a sweep needs at least 2 steps, got {}",
                self.steps
            )));
        }
        if !(self.from < self.to) {
            return Err(Error::invalid(format!(
                "sweep range {}..{} is not ordered",
                self.from, self.to
            )));
        }
        if !sweep_parameters(&self.base).contains(&self.parameter.as_str()) {
            return Err(Error::Unknown {
                kind: "sweep parameter",
                name: format!("{} for scheme {}", self.parameter, self.base.scheme()),
            });
        }
        self.base.validate()
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.from, self.to, self.steps)
    }
}

/// One row per grid value: the parameter, then `p_suc`, `fidelity`,
/// `f_avg`, and with `engine` set, `engine_p_suc` and `engine_fidelity`.
pub fn sweep(spec: &SweepSpec) -> Result<Table> {
    spec.validate()?;
    let mut columns = vec![spec.parameter.as_str(), "p_suc", "fidelity", "f_avg"];
    if spec.engine {
        columns.extend(["engine_p_suc", "engine_fidelity"]);
    }
    let rows = spec
        .values()
        .par_iter()
        .map(|&x| {
            let params = with_parameter(&spec.base, &spec.parameter, x)?;
            let t = evaluate(&params)?;
            let mut row: Vec<Value> = vec![x.into(), t.p_suc.into(), t.fidelity.into(), t.f_avg.into()];
            if spec.engine {
                let e = engine_triple(&build_model(&params)?)?;
                row.extend([e.p_suc.into(), e.fidelity.into()]);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&columns);
    rows.into_iter().for_each(|r| table.push(r));
    Ok(table)
}
