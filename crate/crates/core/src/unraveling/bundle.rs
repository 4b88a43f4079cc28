// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! The damping, jump and click superoperators of the unraveled master
//! equation.
//!
//! With `R = rate/2` per channel:
//!
//! ```text
//! L ρ      = −R Σ (A†A ρ + ρ A†A)
//! J ρ      = 2R Σ A ρ A†
//! C        = η J
//! C_port ρ = 2R η d ρ d†
//! ```
//!
//! and evolution between clicks is generated by `L + (1 − η) J`.

use super::channels::{DetectorPort, JumpChannel};
use crate::error::{Error, Result};
use crate::quantum::{expm, HilbertSpace, Operator, Superoperator};
use crate::tolerance::STRUCTURAL;

#[derive(Debug, Clone)]
pub struct SuperoperatorBundle {
    space: HilbertSpace,
    eta: f64,
    channels: Vec<JumpChannel>,
    ports: Vec<DetectorPort>,
    damping: Superoperator,
    jump: Superoperator,
    click: Superoperator,
    port_clicks: Vec<Superoperator>,
    no_click: Superoperator,
}

pub fn build_bundle(channels: &[JumpChannel], ports: &[DetectorPort]) -> Result<SuperoperatorBundle> {
    let first = channels
        .first()
        .ok_or_else(|| Error::invalid("at least one jump channel is required"))?;
    let space = first.op.space().clone();
    if let Some(bad) = channels.iter().find(|c| c.op.space() != &space) {
        return Err(Error::mismatch(format!(
            "channel {:?} lives on {} but the model lives on {space}",
            bad.label,
            bad.op.space()
        )));
    }
    if let Some(bad) = ports.iter().find(|p| p.op.space() != &space) {
        return Err(Error::mismatch(format!(
            "port {} lives on {}",
            bad.id(),
            bad.op.space()
        )));
    }
    if let Some(bad) = channels.iter().find(|c| !(c.rate > 0.0)) {
        return Err(Error::invalid(format!("channel {:?} has rate {}", bad.label, bad.rate)));
    }
    let eta = match ports.first() {
        Some(p) => p.efficiency,
        None => 0.0,
    };
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::invalid(format!("detection efficiency {eta} outside [0, 1]")));
    }
    if ports.iter().any(|p| p.efficiency != eta) {
        return Err(Error::invalid("all detector ports must share one efficiency"));
    }

    let mut emission = Operator::zeros(&space);
    let mut damping = Superoperator::zeros(&space);
    let mut jump = Superoperator::zeros(&space);
    for ch in channels {
        let n = (&ch.op.adjoint() * &ch.op).scale(ch.rate);
        emission = &emission + &n;
        damping = &damping - &Superoperator::anticommutator(&n.scale(0.5));
        jump = &jump + &Superoperator::sandwich(&ch.op).scale(ch.rate);
    }

    let port_clicks: Vec<Superoperator> = ports
        .iter()
        .map(|p| Superoperator::sandwich(&p.op).scale(p.rate * eta))
        .collect();
    if !ports.is_empty() {
        let mut detected = Operator::zeros(&space);
        for p in ports {
            detected = &detected + &(&p.op.adjoint() * &p.op).scale(p.rate);
        }
        let dev = (&detected - &emission).max_abs();
        if dev > STRUCTURAL * emission.max_abs().max(1.0) {
            return Err(Error::invalid(format!(
                "detector ports do not account for the emitted flux (deviation {dev:e})"
            )));
        }
    }

    let click = jump.scale(eta);
    let no_click = &damping + &jump.scale(1.0 - eta);
    Ok(SuperoperatorBundle {
        space,
        eta,
        channels: channels.to_vec(),
        ports: ports.to_vec(),
        damping,
        jump,
        click,
        port_clicks,
        no_click,
    })
}

impl SuperoperatorBundle {
    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn channels(&self) -> &[JumpChannel] {
        &self.channels
    }

    pub fn ports(&self) -> &[DetectorPort] {
        &self.ports
    }

    /// `L`.
    pub fn damping(&self) -> &Superoperator {
        &self.damping
    }

    /// `J`.
    pub fn jump(&self) -> &Superoperator {
        &self.jump
    }

    /// `C = ηJ`.
    pub fn click(&self) -> &Superoperator {
        &self.click
    }

    pub fn port_click(&self, port: usize) -> &Superoperator {
        &self.port_clicks[port]
    }

    pub fn port_clicks(&self) -> &[Superoperator] {
        &self.port_clicks
    }

    /// `L + (1 − η) J`.
    pub fn no_click_generator(&self) -> &Superoperator {
        &self.no_click
    }

    /// `L + J`, the unconditioned generator.
    pub fn full_generator(&self) -> Superoperator {
        &self.damping + &self.jump
    }

    pub fn port_index(&self, id: &str) -> Result<usize> {
        self.ports
            .iter()
            .position(|p| p.id() == id)
            .ok_or_else(|| Error::Unknown {
                kind: "detector port",
                name: id.to_string(),
            })
    }

    pub fn port_ids(&self) -> Vec<String> {
        self.ports.iter().map(DetectorPort::id).collect()
    }

    /// Largest entrywise deviation of `Σ_port C_port` from `C`.
    pub fn click_decomposition_deviation(&self) -> f64 {
        let mut sum = Superoperator::zeros(&self.space);
        for c in &self.port_clicks {
            sum = &sum + c;
        }
        (&sum - &self.click).max_abs()
    }
}

/// `U(τ) = exp[(L + (1 − η) J) τ]`.
pub fn no_click_propagator(bundle: &SuperoperatorBundle, tau: f64) -> Result<Superoperator> {
    expm(bundle.no_click_generator(), tau)
}
