// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Emission channels and the detector ports behind a balanced beam splitter.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::Operator;

/// An emission pathway `A` of one emitter, damping at rate `rate` (the
/// population decay rate `2R`).
#[derive(Debug, Clone, PartialEq)]
pub struct JumpChannel {
    pub emitter: usize,
    pub label: String,
    pub op: Operator,
    pub rate: f64,
}

impl JumpChannel {
    pub fn new(emitter: usize, label: impl Into<String>, op: Operator, rate: f64) -> Result<Self> {
        if !(rate > 0.0) || !rate.is_finite() {
            return Err(Error::invalid(format!("channel rate must be positive, got {rate}")));
        }
        Ok(Self {
            emitter,
            label: label.into(),
            op,
            rate,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PortSign {
    Plus,
    Minus,
}

impl PortSign {
    pub fn factor(self) -> f64 {
        match self {
            PortSign::Plus => 1.0,
            PortSign::Minus => -1.0,
        }
    }
}

impl fmt::Display for PortSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PortSign::Plus => "+",
            PortSign::Minus => "-",
        })
    }
}

/// A detector behind one beam-splitter output, `d± = (A₁ ± A₂)/√2`, clicking
/// with efficiency `efficiency` per incident photon.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorPort {
    pub sign: PortSign,
    pub label: String,
    pub op: Operator,
    pub rate: f64,
    pub efficiency: f64,
}

impl DetectorPort {
    /// Mixes two channels of equal rate on a balanced beam splitter.
    pub fn beam_splitter(first: &JumpChannel, second: &JumpChannel, sign: PortSign, eta: f64) -> Result<Self> {
        if first.label != second.label {
            return Err(Error::invalid(format!(
                "cannot interfere channel {:?} with channel {:?}",
                first.label, second.label
            )));
        }
        if (first.rate - second.rate).abs() > 1e-12 * first.rate.max(second.rate) {
            return Err(Error::invalid("interfering channels must share one rate"));
        }
        check_efficiency(eta)?;
        let op = (&first.op + &second.op.scale(sign.factor())).scale(std::f64::consts::FRAC_1_SQRT_2);
        Ok(Self {
            sign,
            label: first.label.clone(),
            op,
            rate: first.rate,
            efficiency: eta,
        })
    }

    /// A detector watching one channel directly.
    pub fn direct(channel: &JumpChannel, eta: f64) -> Result<Self> {
        check_efficiency(eta)?;
        Ok(Self {
            sign: PortSign::Plus,
            label: channel.label.clone(),
            op: channel.op.clone(),
            rate: channel.rate,
            efficiency: eta,
        })
    }

    /// `D+`, `D-e`, ...
    pub fn id(&self) -> String {
        format!("D{}{}", self.sign, self.label)
    }
}

fn check_efficiency(eta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::invalid(format!("detection efficiency {eta} outside [0, 1]")));
    }
    Ok(())
}

/// For each channel label shared by emitters 1 and 2, the `+` and `-` ports
/// in order of first appearance.
pub fn beam_splitter_ports(channels: &[JumpChannel], eta: f64) -> Result<Vec<DetectorPort>> {
    let mut ports = Vec::new();
    let mut seen: Vec<&str> = Vec::new();
    for ch in channels {
        if seen.contains(&ch.label.as_str()) {
            continue;
        }
        seen.push(&ch.label);
        let pair: Vec<&JumpChannel> = channels.iter().filter(|c| c.label == ch.label).collect();
        let (Some(a), Some(b)) = (
            pair.iter().find(|c| c.emitter == 1),
            pair.iter().find(|c| c.emitter == 2),
        ) else {
            return Err(Error::invalid(format!(
                "channel {:?} needs one pathway on each of emitters 1 and 2",
                ch.label
            )));
        };
        if pair.len() != 2 {
            return Err(Error::invalid(format!(
                "channel {:?} appears more than twice",
                ch.label
            )));
        }
        ports.push(DetectorPort::beam_splitter(a, b, PortSign::Plus, eta)?);
        ports.push(DetectorPort::beam_splitter(a, b, PortSign::Minus, eta)?);
    }
    Ok(ports)
}
