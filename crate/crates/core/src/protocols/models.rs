// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Engine models of the three schemes: Hilbert space, initial state, emission
//! channels, detector wiring and the heralding click patterns.

use std::fmt;

use serde::Serialize;

use super::params::{BellSubset, SchemeParams, SchemeParams1cw, SchemeParams1pls, SchemeParams2ph};
use crate::error::{Error, Result};
use crate::quantum::{fidelity, DensityOperator, Factor, HilbertSpace, Ket, Operator, C64};
use crate::unraveling::{
    beam_splitter_ports, build_bundle, one_click_sector, two_click_sector, DetectorPort, JumpChannel,
    SuperoperatorBundle,
};

/// The four Bell states of two emitters over their `e`, `g` levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BellState {
    /// `(|e,e⟩ + |g,g⟩)/√2`
    PhiPlus,
    /// `(|e,e⟩ − |g,g⟩)/√2`
    PhiMinus,
    /// `(|e,g⟩ + |g,e⟩)/√2`
    PsiPlus,
    /// `(|e,g⟩ − |g,e⟩)/√2`
    PsiMinus,
}

impl BellState {
    /// The state on a two-factor space whose factors both carry `e` and `g`.
    pub fn ket(self, space: &HilbertSpace) -> Result<Ket> {
        if space.n_factors() != 2 {
            return Err(Error::mismatch(format!("Bell states need two factors, got {space}")));
        }
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let (a, b, sign): ([&str; 2], [&str; 2], f64) = match self {
            BellState::PhiPlus => (["e", "e"], ["g", "g"], 1.0),
            BellState::PhiMinus => (["e", "e"], ["g", "g"], -1.0),
            BellState::PsiPlus => (["e", "g"], ["g", "e"], 1.0),
            BellState::PsiMinus => (["e", "g"], ["g", "e"], -1.0),
        };
        Ket::superposition(space, &[(C64::from(h), &a), (C64::from(sign * h), &b)])
    }

    pub fn density(self, space: &HilbertSpace) -> Result<DensityOperator> {
        DensityOperator::pure(&self.ket(space)?)
    }
}

impl fmt::Display for BellState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BellState::PhiPlus => "Phi+",
            BellState::PhiMinus => "Phi-",
            BellState::PsiPlus => "Psi+",
            BellState::PsiMinus => "Psi-",
        })
    }
}

/// A click pattern that counts as success, and the Bell state it heralds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Herald {
    /// One port for single-photon schemes, two (unordered) for coincidences.
    pub ports: Vec<String>,
    pub target: BellState,
}

/// What a heralding pattern delivered.
#[derive(Debug, Clone)]
pub struct HeraldOutcome {
    pub herald: Herald,
    pub probability: f64,
    /// Normalized reduced state of the two emitters, if the pattern occurs.
    pub atomic_state: Option<DensityOperator>,
    pub fidelity: f64,
}

#[derive(Debug, Clone)]
pub struct ProtocolModel {
    pub params: SchemeParams,
    pub space: HilbertSpace,
    pub initial: DensityOperator,
    pub channels: Vec<JumpChannel>,
    pub ports: Vec<DetectorPort>,
    /// Detection window in the units of the channel rates.
    pub window: f64,
    /// Factor indices of the two emitters.
    pub atoms: [usize; 2],
    pub heralds: Vec<Herald>,
}

fn lowering(space: &HilbertSpace, factor: usize, to: &str, from: &str) -> Result<Operator> {
    let single = HilbertSpace::single(space.factors()[factor].clone());
    Operator::embed(space, factor, &Operator::ket_bra(&single, &[to], &[from])?)
}

fn finite_window(window: f64) -> Result<f64> {
    if !window.is_finite() {
        return Err(Error::invalid(
            "the engine needs a finite detection window (emission probability below 1)",
        ));
    }
    Ok(window)
}

fn single_photon_heralds() -> Vec<Herald> {
    vec![
        Herald {
            ports: vec!["D+".into()],
            target: BellState::PsiPlus,
        },
        Herald {
            ports: vec!["D-".into()],
            target: BellState::PsiMinus,
        },
    ]
}

fn model_1cw(p: &SchemeParams1cw) -> Result<ProtocolModel> {
    p.validate()?;
    let space = HilbertSpace::new(vec![Factor::two_level("atom1"), Factor::two_level("atom2")])?;
    // A pinned p1 fixes the window through the rate.
    let window = finite_window(match p.p1 {
        Some(p1) => -(-p1).ln_1p() / p.gamma_eg,
        None => p.t_cw,
    })?;
    let channels = (0..2)
        .map(|k| JumpChannel::new(k + 1, "", lowering(&space, k, "g", "e")?, p.gamma_eg))
        .collect::<Result<Vec<_>>>()?;
    let ports = beam_splitter_ports(&channels, p.eta)?;
    Ok(ProtocolModel {
        params: SchemeParams::OneCw(*p),
        initial: DensityOperator::basis(&space, &["e", "e"])?,
        space,
        channels,
        ports,
        window,
        atoms: [0, 1],
        heralds: single_photon_heralds(),
    })
}

fn model_1pls(p: &SchemeParams1pls) -> Result<ProtocolModel> {
    p.validate()?;
    let space = HilbertSpace::new(vec![
        Factor::two_level("atom1"),
        Factor::two_level("atom2"),
        Factor::cavity("cavity1"),
        Factor::cavity("cavity2"),
    ])?;
    // Each emitter starts in α|e,0⟩ + ε|g,1⟩.
    let (alpha, eps) = ((1.0 - p.eps2).sqrt(), p.eps2.sqrt());
    let local = [("e", "0", alpha), ("g", "1", eps)];
    let mut terms: Vec<(C64, [&str; 4])> = Vec::new();
    for &(a1, c1, x1) in &local {
        for &(a2, c2, x2) in &local {
            terms.push((C64::from(x1 * x2), [a1, a2, c1, c2]));
        }
    }
    let refs: Vec<(C64, &[&str])> = terms.iter().map(|(c, l)| (*c, &l[..])).collect();
    let initial = DensityOperator::pure(&Ket::superposition(&space, &refs)?)?;
    let channels = (0..2)
        .map(|k| JumpChannel::new(k + 1, "", lowering(&space, k + 2, "0", "1")?, p.kappa))
        .collect::<Result<Vec<_>>>()?;
    let ports = beam_splitter_ports(&channels, p.eta)?;
    Ok(ProtocolModel {
        params: SchemeParams::OnePls(*p),
        space,
        initial,
        channels,
        ports,
        window: finite_window(p.t)?,
        atoms: [0, 1],
        heralds: single_photon_heralds(),
    })
}

fn model_2ph(p: &SchemeParams2ph) -> Result<ProtocolModel> {
    p.validate()?;
    let space = HilbertSpace::new(vec![Factor::lambda("atom1"), Factor::lambda("atom2")])?;
    let mut channels = Vec::new();
    for xi in ["e", "g"] {
        for k in 0..2 {
            channels.push(JumpChannel::new(
                k + 1,
                xi,
                lowering(&space, k, xi, "r")?,
                0.5 * p.gamma,
            )?);
        }
    }
    let ports = beam_splitter_ports(&channels, p.eta)?;
    let pair = |a: &str, b: &str, target| Herald {
        ports: vec![a.to_string(), b.to_string()],
        target,
    };
    let mut heralds = vec![
        pair("D+e", "D+g", BellState::PsiPlus),
        pair("D-e", "D-g", BellState::PsiPlus),
    ];
    if p.subset == BellSubset::Half {
        heralds.push(pair("D+e", "D-g", BellState::PsiMinus));
        heralds.push(pair("D-e", "D+g", BellState::PsiMinus));
    }
    Ok(ProtocolModel {
        params: SchemeParams::TwoPh(*p),
        initial: DensityOperator::basis(&space, &["r", "r"])?,
        space,
        channels,
        ports,
        window: finite_window(p.t)?,
        atoms: [0, 1],
        heralds,
    })
}

/// Builds the engine model of a scheme.
pub fn build_model(params: &SchemeParams) -> Result<ProtocolModel> {
    match params {
        SchemeParams::OneCw(p) => model_1cw(p),
        SchemeParams::OnePls(p) => model_1pls(p),
        SchemeParams::TwoPh(p) => model_2ph(p),
    }
}

impl ProtocolModel {
    pub fn bundle(&self) -> Result<SuperoperatorBundle> {
        build_bundle(&self.channels, &self.ports)
    }

    /// Space of the two emitters alone.
    pub fn atomic_space(&self) -> Result<HilbertSpace> {
        self.space.subspace(&self.atoms)
    }

    /// Reduced state of the two emitters.
    pub fn atomic_state(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        rho.partial_trace(&self.atoms)
    }

    /// Probability and conditional state of one heralding pattern.
    pub fn herald_outcome(&self, bundle: &SuperoperatorBundle, herald: &Herald) -> Result<HeraldOutcome> {
        let index = |id: &String| bundle.port_index(id);
        let sector = match herald.ports.as_slice() {
            [a] => one_click_sector(bundle, &self.initial, index(a)?, self.window)?,
            [a, b] => two_click_sector(bundle, &self.initial, index(a)?, index(b)?, self.window)?,
            _ => return Err(Error::invalid("a herald is one or two clicks")),
        };
        let probability = sector.trace();
        let (atomic_state, fid) = match sector.normalized() {
            Ok((_, rho)) => {
                let atoms = self.atomic_state(&rho)?;
                let f = fidelity(&herald.target.density(atoms.space())?, &atoms)?;
                (Some(atoms), f)
            }
            Err(Error::NullEvent(_)) => (None, 0.0),
            Err(e) => return Err(e),
        };
        Ok(HeraldOutcome {
            herald: herald.clone(),
            probability,
            atomic_state,
            fidelity: fid,
        })
    }

    pub fn herald_outcomes(&self, bundle: &SuperoperatorBundle) -> Result<Vec<HeraldOutcome>> {
        self.heralds.iter().map(|h| self.herald_outcome(bundle, h)).collect()
    }
}

/// Success probability and conditional fidelity computed by the engine: the
/// heralding probabilities summed, and their fidelities averaged with those
/// probabilities as weights.
pub fn engine_triple(model: &ProtocolModel) -> Result<super::EfficiencyTriple> {
    let bundle = model.bundle()?;
    let outcomes = model.herald_outcomes(&bundle)?;
    let p: f64 = outcomes.iter().map(|o| o.probability).sum();
    let weighted: f64 = outcomes.iter().map(|o| o.probability * o.fidelity).sum();
    let f = if p > 0.0 { weighted / p } else { 0.0 };
    Ok(super::EfficiencyTriple::new(p, f))
}
