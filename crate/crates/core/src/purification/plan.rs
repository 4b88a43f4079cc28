// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Pair sources, purification plans over `2^J` pairs, and region
//! classification over `(p1, η)`.

use rayon::prelude::*;
use serde::Serialize;

use super::oracle::{bell_frame_rotation, oracle_step, pair_space, FrameDirection};
use crate::error::{Error, Result};
use crate::protocols::{build_model, eval_1cw, BellState, SchemeParams, SchemeParams1cw};
use crate::quantum::{fidelity, DensityOperator, Ket, C64};
use crate::tolerance::STRUCTURAL;

/// A heralded pair as delivered by one run of a single-photon scheme.
#[derive(Debug, Clone)]
pub struct PairSource {
    /// Normalized state of the two emitters, targeting `Ψ+`.
    pub state: DensityOperator,
    /// Success probability of one run, all heralding patterns included.
    pub p_suc: f64,
}

impl PairSource {
    pub fn new(state: DensityOperator, p_suc: f64) -> Result<Self> {
        if state.space().dims() != [2, 2] {
            return Err(Error::mismatch(format!(
                "a pair source holds two qubits, got {}",
                state.space()
            )));
        }
        let report = state.check();
        if !report.passed || (report.trace - 1.0).abs() > STRUCTURAL {
            return Err(Error::invalid(format!(
                "source state is not a density operator: {report:?}"
            )));
        }
        if !(0.0..=1.0).contains(&p_suc) {
            return Err(Error::invalid(format!("success probability {p_suc} outside [0, 1]")));
        }
        Ok(Self { state, p_suc })
    }

    /// The driven free-space scheme in closed form: `F Ψ+ + (1 − F)|g,g⟩`
    /// with the scheme's success probability and fidelity.
    pub fn analytic_1cw(p1: f64, eta: f64) -> Result<Self> {
        let t = eval_1cw(&SchemeParams1cw::from_p1(p1, eta))?;
        let space = pair_space();
        let psi = BellState::PsiPlus.density(&space)?;
        let gg = DensityOperator::basis(&space, &["g", "g"])?;
        let m = psi.matrix() * C64::from(t.fidelity) + gg.matrix() * C64::from(1.0 - t.fidelity);
        Self::new(
            DensityOperator::new(space, m, crate::quantum::Normalization::Normalized)?,
            t.p_suc,
        )
    }

    /// The same scheme from the unraveling engine: the state after a `D+`
    /// click, with the success probability of both detectors.
    pub fn engine_1cw(params: &SchemeParams1cw) -> Result<Self> {
        let model = build_model(&SchemeParams::OneCw(*params))?;
        let bundle = model.bundle()?;
        let outcomes = model.herald_outcomes(&bundle)?;
        let p_suc = outcomes.iter().map(|o| o.probability).sum();
        let plus = outcomes
            .iter()
            .find(|o| o.herald.target == BellState::PsiPlus)
            .and_then(|o| o.atomic_state.clone())
            .ok_or(Error::NullEvent(0.0))?;
        // Relabel onto the standard pair space so downstream factors match.
        let state = DensityOperator::new(pair_space(), plus.matrix().clone(), plus.normalization())?;
        Self::new(state, p_suc)
    }

    /// Overlap with `Ψ+`.
    pub fn fidelity(&self) -> Result<f64> {
        fidelity(&BellState::PsiPlus.density(self.state.space())?, &self.state)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PurificationPlan {
    pub j: u32,
    pub n_pairs: u64,
    /// `N_0 .. N_{J−1}`.
    pub step_probabilities: Vec<f64>,
    /// Probability that all `2^J` pairs purify into one.
    pub p_pur: f64,
    /// `P_suc · p_pur / 2^J`, per source run.
    pub p_total: f64,
    /// Overlap of the final pair with `Ψ+`.
    pub f_pur: f64,
    #[serde(skip)]
    pub final_state: Option<DensityOperator>,
}

/// `Π_{j=1..J} N_{j−1}^{2^{J−j}}`.
pub fn p_pur_from_steps(steps: &[f64]) -> f64 {
    let big_j = steps.len();
    steps
        .iter()
        .enumerate()
        .map(|(k, n)| n.powi(1 << (big_j - k - 1)))
        .product()
}

fn plan_at(source: &PairSource, steps: &[f64], frame_state: &DensityOperator) -> Result<PurificationPlan> {
    let j = steps.len() as u32;
    let n_pairs = 1u64 << j;
    let p_pur = p_pur_from_steps(steps);
    let back = bell_frame_rotation(frame_state, FrameDirection::Inverse)?;
    let f_pur = fidelity(&BellState::PsiPlus.density(back.space())?, &back)?;
    Ok(PurificationPlan {
        j,
        n_pairs,
        step_probabilities: steps.to_vec(),
        p_pur,
        p_total: source.p_suc * p_pur / n_pairs as f64,
        f_pur,
        final_state: Some(back),
    })
}

/// Plans for `J = 0, 1, ..` until `j_max` or the first null round, whose
/// probability is returned alongside.
fn plans_until_null(source: &PairSource, j_max: u32) -> Result<(Vec<PurificationPlan>, Option<f64>)> {
    let mut state = bell_frame_rotation(&source.state, FrameDirection::Forward)?;
    let mut steps = Vec::with_capacity(j_max as usize);
    let mut plans = vec![plan_at(source, &steps, &state)?];
    for _ in 0..j_max {
        let (n, next) = match oracle_step(&state) {
            Ok(step) => step,
            Err(Error::NullEvent(n)) => return Ok((plans, Some(n))),
            Err(e) => return Err(e),
        };
        steps.push(n);
        state = next;
        plans.push(plan_at(source, &steps, &state)?);
    }
    Ok((plans, None))
}

/// Plans for `J = 0 ..= j_max`, sharing the iterated state.
pub fn plan_sequence(source: &PairSource, j_max: u32) -> Result<Vec<PurificationPlan>> {
    match plans_until_null(source, j_max)? {
        (plans, None) => Ok(plans),
        (_, Some(n)) => Err(Error::NullEvent(n)),
    }
}

/// Runs `J` purification rounds on copies of the source pair.
pub fn run_plan(source: &PairSource, j: u32) -> Result<PurificationPlan> {
    Ok(plan_sequence(source, j)?.pop().expect("at least the J = 0 plan"))
}

/// Classification of one `(p1, η, J)` point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionPoint {
    pub p1: f64,
    pub eta: f64,
    pub j: u32,
    pub f_pur: f64,
    pub p_total: f64,
    /// `F_pur > F_th`.
    pub fidelity_condition: bool,
    /// `P_pur > η²/2`, the coincidence scheme at unit emission probability.
    pub success_condition: bool,
}

fn region_column(p1: f64, eta: f64, f_th: f64, j_list: &[u32]) -> Result<Vec<RegionPoint>> {
    let j_max = j_list.iter().copied().max().unwrap_or(0);
    let source = PairSource::analytic_1cw(p1, eta)?;
    // A plan that hits a null round is outside every region from there on.
    let (plans, _) = plans_until_null(&source, j_max)?;
    Ok(j_list
        .iter()
        .map(|&j| match plans.get(j as usize) {
            Some(plan) => RegionPoint {
                p1,
                eta,
                j,
                f_pur: plan.f_pur,
                p_total: plan.p_total,
                fidelity_condition: plan.f_pur > f_th,
                success_condition: plan.p_total > 0.5 * eta * eta,
            },
            None => RegionPoint {
                p1,
                eta,
                j,
                f_pur: 0.0,
                p_total: 0.0,
                fidelity_condition: false,
                success_condition: false,
            },
        })
        .collect())
}

/// Classifies every `(p1, η)` grid point for each `J` in `j_list`. Points
/// come back ordered by `p1`, then `η`, then position in `j_list`.
pub fn purified_region(p1_grid: &[f64], eta_grid: &[f64], f_th: f64, j_list: &[u32]) -> Result<Vec<RegionPoint>> {
    let in_unit = |x: &f64| (0.0..=1.0).contains(x);
    if !p1_grid.iter().all(in_unit) || !eta_grid.iter().all(in_unit) {
        return Err(Error::invalid("region grid must lie in [0, 1]²"));
    }
    if !(f_th > 0.0 && f_th < 1.0) {
        return Err(Error::invalid(format!("threshold fidelity {f_th} outside (0, 1)")));
    }
    let cells: Vec<(f64, f64)> = p1_grid
        .iter()
        .flat_map(|&p| eta_grid.iter().map(move |&e| (p, e)))
        .collect();
    let columns = cells
        .par_iter()
        .map(|&(p, e)| region_column(p, e, f_th, j_list))
        .collect::<Result<Vec<_>>>()?;
    Ok(columns.into_iter().flatten().collect())
}

/// Pure `Φ+` on the standard pair space.
pub fn phi_plus() -> Result<DensityOperator> {
    DensityOperator::pure(&Ket::superposition(
        &pair_space(),
        &[
            (C64::from(std::f64::consts::FRAC_1_SQRT_2), &["e", "e"]),
            (C64::from(std::f64::consts::FRAC_1_SQRT_2), &["g", "g"]),
        ],
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rounds_return_the_source() {
        let s = PairSource::analytic_1cw(0.15, 0.4).unwrap();
        let plan = run_plan(&s, 0).unwrap();
        assert_eq!(plan.p_pur, 1.0);
        assert_eq!(plan.n_pairs, 1);
        assert_eq!(plan.p_total, s.p_suc);
        assert!((plan.f_pur - s.fidelity().unwrap()).abs() < 1e-14);
    }

    #[test]
    fn one_round_halves_and_scales() {
        let s = PairSource::analytic_1cw(0.15, 0.4).unwrap();
        let plan = run_plan(&s, 1).unwrap();
        assert_eq!(plan.p_pur, plan.step_probabilities[0]);
        assert!((plan.p_total - s.p_suc * plan.step_probabilities[0] / 2.0).abs() < 1e-18);
    }

    #[test]
    fn two_round_pipeline_fixture() {
        let s = PairSource::analytic_1cw(0.15, 0.4).unwrap();
        let plan = run_plan(&s, 2).unwrap();
        assert!((plan.step_probabilities[0] - 0.866_695_903_123_585).abs() < 1e-12);
        assert!((plan.step_probabilities[1] - 0.899_167_077_899_346_6).abs() < 1e-12);
        assert!((plan.f_pur - 0.991_293_391_511_706_8).abs() < 1e-12);
        assert!((plan.p_total - 0.019_046_842_600_921_442).abs() < 1e-14);
        let n = &plan.step_probabilities;
        assert!((plan.p_pur - n[0] * n[0] * n[1]).abs() < 1e-15);
    }

    #[test]
    fn engine_source_matches_closed_form() {
        for (p1, eta) in [(0.15, 0.005), (0.15, 0.4), (0.6, 0.9)] {
            let a = PairSource::analytic_1cw(p1, eta).unwrap();
            let e = PairSource::engine_1cw(&SchemeParams1cw::from_p1(p1, eta)).unwrap();
            assert!((a.p_suc - e.p_suc).abs() < 1e-8);
            assert!((a.state.matrix() - e.state.matrix()).camax() < 1e-8);
        }
    }

    #[test]
    fn frame_preserves_overlap() {
        let s = PairSource::engine_1cw(&SchemeParams1cw::from_p1(0.3, 0.5)).unwrap();
        let rotated = bell_frame_rotation(&s.state, FrameDirection::Forward).unwrap();
        let f = fidelity(&phi_plus().unwrap(), &rotated).unwrap();
        assert!((f - s.fidelity().unwrap()).abs() < 1e-14);
    }

    #[test]
    fn region_rejects_bad_inputs() {
        assert!(purified_region(&[1.2], &[0.5], 0.99, &[0]).is_err());
        assert!(purified_region(&[0.2], &[0.5], 1.0, &[0]).is_err());
    }
}
