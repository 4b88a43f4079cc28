// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Where the free-space single-photon scheme beats the coincidence scheme:
//! a fidelity above threshold, and a success probability above that of the
//! coincidence scheme at unit emission probability (`η²/2`).

use serde::{Deserialize, Serialize};

use super::table::Table;
use crate::error::{Error, Result};
use crate::protocols::{eval_1cw, eval_2ph, BellSubset, SchemeParams1cw, SchemeParams2ph};
use crate::purification::purified_region;

/// Largest `p1` for which `F_1cw > F_th`: `(1 − F_th)/(1 − η F_th)`.
pub fn region_threshold_1cw(f_th: f64, eta: f64) -> Result<f64> {
    if !(f_th > 0.0 && f_th < 1.0) {
        return Err(Error::invalid(format!("threshold fidelity {f_th} outside (0, 1)")));
    }
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::invalid(format!("eta = {eta} outside [0, 1]")));
    }
    Ok((1.0 - f_th) / (1.0 - eta * f_th))
}

/// Open interval of `p1` with `p − ηp² > η/4`. `upper` is the raw root and
/// may exceed 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DominanceInterval {
    pub lower: f64,
    pub upper: f64,
}

impl DominanceInterval {
    pub fn contains(&self, p1: f64) -> bool {
        self.lower < p1 && p1 < self.upper
    }

    /// The interval restricted to `[0, 1]`.
    pub fn clipped(&self) -> (f64, f64) {
        (self.lower.max(0.0), self.upper.min(1.0))
    }
}

/// Roots of `ηp² − p + η/4 = 0`; `None` when they coincide (`η = 1`) and no
/// `p1` qualifies.
pub fn region_success_dominance(eta: f64) -> Result<Option<DominanceInterval>> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::invalid(format!("eta = {eta} outside (0, 1]")));
    }
    let s = (1.0 - eta * eta).sqrt();
    if s == 0.0 {
        return Ok(None);
    }
    // Lower root in the form that does not cancel for small η.
    Ok(Some(DominanceInterval {
        lower: 0.5 * eta / (1.0 + s),
        upper: (1.0 + s) / (2.0 * eta),
    }))
}

/// Grid and threshold of a region map. Emission probability of the
/// coincidence scheme is fixed at 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub p1_range: (f64, f64),
    pub eta_range: (f64, f64),
    pub p1_steps: usize,
    pub eta_steps: usize,
    pub f_th: f64,
    /// Purification rounds to overlay; `J = 0` is always included.
    pub j_list: Vec<u32>,
}

impl Default for RegionSpec {
    fn default() -> Self {
        Self {
            p1_range: (0.001, 0.999),
            eta_range: (0.001, 0.999),
            p1_steps: 200,
            eta_steps: 200,
            f_th: 0.99,
            j_list: vec![0, 1, 2, 3, 4],
        }
    }
}

/// `n` points from `a` to `b`, both included.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|i| {
                if i + 1 == n {
                    b
                } else {
                    a + (b - a) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

impl RegionSpec {
    pub fn validate(&self) -> Result<()> {
        let unit = |(a, b): (f64, f64)| (0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b) && a <= b;
        if !unit(self.p1_range) || !unit(self.eta_range) {
            return Err(Error::invalid("region bounds must be ordered and lie in [0, 1]"));
        }
        if self.p1_steps == 0 || self.eta_steps == 0 {
            return Err(Error::invalid("region grid needs at least one point per axis"));
        }
        if !(self.f_th > 0.0 && self.f_th < 1.0) {
            return Err(Error::invalid(format!(
                "threshold fidelity {} outside (0, 1)",
                self.f_th
            )));
        }
        Ok(())
    }

    pub fn p1_grid(&self) -> Vec<f64> {
        linspace(self.p1_range.0, self.p1_range.1, self.p1_steps)
    }

    pub fn eta_grid(&self) -> Vec<f64> {
        linspace(self.eta_range.0, self.eta_range.1, self.eta_steps)
    }

    /// `J` values in ascending order, `0` first.
    pub fn rounds(&self) -> Vec<u32> {
        let mut js = self.j_list.clone();
        js.push(0);
        js.sort_unstable();
        js.dedup();
        js
    }
}

/// Classification of one `(p1, η, J)` grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionRow {
    pub p1: f64,
    pub eta: f64,
    pub j: u32,
    pub fidelity: f64,
    pub p_suc: f64,
    pub p_two_photon: f64,
    pub fidelity_condition: bool,
    pub success_condition: bool,
}

impl RegionRow {
    pub fn shaded(&self) -> bool {
        self.fidelity_condition && self.success_condition
    }
}

/// Rows ordered by `p1`, then `η`, then ascending `J`. At `J = 0` values
/// come from the closed forms; purified rounds run the two-pair simulation.
pub fn region_map(spec: &RegionSpec) -> Result<Vec<RegionRow>> {
    spec.validate()?;
    let (p1s, etas, js) = (spec.p1_grid(), spec.eta_grid(), spec.rounds());
    let purified: Vec<u32> = js.iter().copied().filter(|&j| j > 0).collect();
    let overlay = if purified.is_empty() {
        Vec::new()
    } else {
        purified_region(&p1s, &etas, spec.f_th, &purified)?
    };
    let mut rows = Vec::with_capacity(p1s.len() * etas.len() * js.len());
    for (i, &p1) in p1s.iter().enumerate() {
        for (k, &eta) in etas.iter().enumerate() {
            let single = eval_1cw(&SchemeParams1cw::from_p1(p1, eta))?;
            let two = eval_2ph(&SchemeParams2ph::from_p2(1.0, eta, BellSubset::Half))?.p_suc;
            rows.push(RegionRow {
                p1,
                eta,
                j: 0,
                fidelity: single.fidelity,
                p_suc: single.p_suc,
                p_two_photon: two,
                fidelity_condition: single.fidelity > spec.f_th,
                success_condition: single.p_suc > two,
            });
            let base = (i * etas.len() + k) * purified.len();
            for point in &overlay[base..base + purified.len()] {
                rows.push(RegionRow {
                    p1,
                    eta,
                    j: point.j,
                    fidelity: point.f_pur,
                    p_suc: point.p_total,
                    p_two_photon: two,
                    fidelity_condition: point.fidelity_condition,
                    success_condition: point.success_condition,
                });
            }
        }
    }
    Ok(rows)
}

pub fn region_table(rows: &[RegionRow]) -> Table {
    let mut t = Table::new(&[
        "p1",
        "eta",
        "J",
        "fidelity",
        "p_suc",
        "p_suc_2ph",
        "fidelity_condition",
        "success_condition",
        "shaded",
    ]);
    for r in rows {
        t.push(vec![
            r.p1.into(),
            r.eta.into(),
            r.j.into(),
            r.fidelity.into(),
            r.p_suc.into(),
            r.p_two_photon.into(),
            r.fidelity_condition.into(),
            r.success_condition.into(),
            r.shaded().into(),
        ]);
    }
    t
}

/// Largest grid `p1` meeting the fidelity condition, per `(η, J)`: the
/// upper edge of the fidelity region. `None` where no grid point qualifies.
pub fn fidelity_edges(spec: &RegionSpec, rows: &[RegionRow]) -> Vec<(f64, u32, Option<f64>)> {
    let (etas, js) = (spec.eta_grid(), spec.rounds());
    let mut out = Vec::new();
    for &eta in &etas {
        for &j in &js {
            let edge = rows
                .iter()
                .filter(|r| r.eta == eta && r.j == j && r.fidelity_condition)
                .map(|r| r.p1)
                .fold(None, |m: Option<f64>, p| Some(m.map_or(p, |m| m.max(p))));
            out.push((eta, j, edge));
        }
    }
    out
}
