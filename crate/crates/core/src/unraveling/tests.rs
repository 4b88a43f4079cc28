// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

use super::*;
use crate::quantum::testutil::{random_density, rng};
use crate::quantum::{fidelity, DensityOperator, Factor, HilbertSpace, Ket, Operator, Superoperator, C64};

const LN2: f64 = std::f64::consts::LN_2;

fn pair_space(factor: impl Fn(&str) -> Factor) -> HilbertSpace {
    HilbertSpace::new(vec![factor("atom1"), factor("atom2")]).unwrap()
}

fn local(space: &HilbertSpace, k: usize, rows: &[&str], cols: &[&str]) -> Operator {
    let single = HilbertSpace::single(space.factors()[k].clone());
    let mut op = Operator::zeros(&single);
    for (r, c) in rows.iter().zip(cols) {
        op = &op + &Operator::ket_bra(&single, &[r], &[c]).unwrap();
    }
    Operator::embed(space, k, &op).unwrap()
}

/// Two two-level emitters decaying `e → g` at `rate`, behind a beam splitter.
fn decay_pair(eta: f64, rate: f64) -> (SuperoperatorBundle, DensityOperator) {
    let s = pair_space(|n| Factor::two_level(n));
    let channels: Vec<JumpChannel> = (0..2)
        .map(|k| JumpChannel::new(k + 1, "", local(&s, k, &["g"], &["e"]), rate).unwrap())
        .collect();
    let ports = beam_splitter_ports(&channels, eta).unwrap();
    let bundle = build_bundle(&channels, &ports).unwrap();
    (bundle, DensityOperator::basis(&s, &["e", "e"]).unwrap())
}

/// Emitters whose jump operator re-pumps: `e → m → g` through one channel.
fn cascade_pair(eta: f64) -> (SuperoperatorBundle, DensityOperator) {
    let three = |name: &str| Factor::new(name, &["e", "m", "g"]);
    let s = pair_space(three);
    let channels: Vec<JumpChannel> = (0..2)
        .map(|k| JumpChannel::new(k + 1, "", local(&s, k, &["m", "g"], &["e", "m"]), 1.0).unwrap())
        .collect();
    let ports = beam_splitter_ports(&channels, eta).unwrap();
    (
        build_bundle(&channels, &ports).unwrap(),
        DensityOperator::basis(&s, &["e", "e"]).unwrap(),
    )
}

fn bell(space: &HilbertSpace, sign: f64) -> DensityOperator {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    DensityOperator::pure(
        &Ket::superposition(
            space,
            &[(C64::from(h), &["e", "g"]), (C64::from(sign * h), &["g", "e"])],
        )
        .unwrap(),
    )
    .unwrap()
}

fn single_channel(eta: f64) -> SuperoperatorBundle {
    let s = HilbertSpace::single(Factor::two_level("atom"));
    let ch = JumpChannel::new(1, "", Operator::ket_bra(&s, &["g"], &["e"]).unwrap(), 1.0).unwrap();
    let port = DetectorPort::direct(&ch, eta).unwrap();
    build_bundle(&[ch], &[port]).unwrap()
}

#[test]
fn single_channel_efficiency_limits() {
    let b = single_channel(0.0);
    assert_eq!(b.click().max_abs(), 0.0);
    assert!(b.no_click_generator().trace_annihilation_deviation() < 1e-15);
    let b = single_channel(1.0);
    assert!((b.no_click_generator() - b.damping()).max_abs() < 1e-15);
}

#[test]
fn generator_is_trace_preserving() {
    let (b, _) = decay_pair(0.3, 1.0);
    let gen = b.full_generator();
    let mut r = rng(5);
    for _ in 0..20 {
        let rho = random_density(&mut r, b.space());
        assert!(gen.apply(&rho).trace().abs() < 1e-10);
    }
}

#[test]
fn click_decomposition_identities() {
    let (b, _) = decay_pair(0.37, 2.0);
    let recombined = b.click() + &b.jump().scale(1.0 - b.eta());
    assert!((&recombined - b.jump()).max_abs() < 1e-12);
    assert!(b.click_decomposition_deviation() < 1e-12);
}

#[test]
fn mismatched_inputs_rejected() {
    let (b, _) = decay_pair(0.5, 1.0);
    let other = HilbertSpace::single(Factor::two_level("x"));
    let stray = JumpChannel::new(1, "", Operator::ket_bra(&other, &["g"], &["e"]).unwrap(), 1.0).unwrap();
    let mut channels = b.channels().to_vec();
    channels.push(stray);
    assert!(build_bundle(&channels, b.ports()).is_err());
    assert!(beam_splitter_ports(b.channels(), 1.5).is_err());
    let mut ports = b.ports().to_vec();
    ports[0].efficiency = 0.2;
    assert!(build_bundle(b.channels(), &ports).is_err());
    assert!(JumpChannel::new(1, "", b.channels()[0].op.clone(), 0.0).is_err());
}

#[test]
fn survival_of_both_excitations() {
    // Damping alone leaves e^{-Γt} per emitter: (1 − p1)² = 1/4 at Γt = ln 2.
    let (b, rho0) = decay_pair(0.0, 1.0);
    let damped = crate::quantum::expm(b.damping(), LN2).unwrap().apply(&rho0);
    assert!((damped.trace() - 0.25).abs() < 1e-12);
    // With nothing detected the trace is kept and |e,e⟩ holds the same weight.
    let full = crate::quantum::expm(b.no_click_generator(), LN2).unwrap().apply(&rho0);
    assert!((full.trace() - 1.0).abs() < 1e-12);
    assert!((full.matrix()[(0, 0)].re - 0.25).abs() < 1e-12);
}

#[test]
fn no_click_propagator_cases() {
    let (b, rho0) = decay_pair(0.5, 1.0);
    assert!((&no_click_propagator(&b, 0.0).unwrap() - &Superoperator::identity(b.space())).max_abs() < 1e-15);
    assert!(no_click_propagator(&b, -0.1).is_err());
    let p1 = 1.0 - (-1.0f64).exp();
    let survive = no_click_propagator(&b, 1.0).unwrap().apply(&rho0).trace();
    assert!((survive - (1.0 - 0.5 * p1).powi(2)).abs() < 1e-12);
    let (b0, _) = decay_pair(0.0, 1.0);
    for tau in [0.1, 1.0, 7.0] {
        assert!((no_click_propagator(&b0, tau).unwrap().apply(&rho0).trace() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn one_photon_click_statistics() {
    for (eta, t) in [(0.005, -(0.85f64).ln()), (0.4, 0.7), (1.0, 2.0)] {
        let (b, rho0) = decay_pair(eta, 1.0);
        let p1 = 1.0 - (-t).exp();
        let s = scenario_probabilities(&b, &rho0, t).unwrap();
        assert!((s.p1 - 2.0 * eta * p1 * (1.0 - eta * p1)).abs() < 1e-12);
        assert!((s.p0 - (1.0 - eta * p1).powi(2)).abs() < 1e-12);
        assert!((s.total() - 1.0).abs() < 1e-12);
        let (pp, plus) = conditional_state_one_click(&b, &rho0, "D+", t).unwrap();
        let (pm, minus) = conditional_state_one_click(&b, &rho0, "D-", t).unwrap();
        assert!((pp - pm).abs() < 1e-12);
        let f = (1.0 - p1) / (1.0 - eta * p1);
        assert!((fidelity(&bell(b.space(), 1.0), &plus).unwrap() - f).abs() < 1e-10);
        assert!((fidelity(&bell(b.space(), -1.0), &minus).unwrap() - f).abs() < 1e-10);
        assert!(plus.check().passed && minus.check().passed);
    }
    let (b, rho0) = decay_pair(0.0, 1.0);
    let s = scenario_probabilities(&b, &rho0, 3.0).unwrap();
    assert!((s.p0 - 1.0).abs() < 1e-15 && s.p1 == 0.0 && s.p2 == 0.0);
}

#[test]
fn perfect_detection_heralds_bell_state() {
    let (b, rho0) = decay_pair(1.0, 1.0);
    let (_, rho) = conditional_state_one_click(&b, &rho0, "D+", 0.3).unwrap();
    assert!((fidelity(&bell(b.space(), 1.0), &rho).unwrap() - 1.0).abs() < 1e-10);
}

#[test]
fn double_click_leaves_ground_state() {
    let (b, rho0) = decay_pair(0.6, 1.0);
    let (p, rho) = conditional_state_two_clicks(&b, &rho0, "D+", "D+", 1.5).unwrap();
    assert!(p > 0.0);
    let gg = DensityOperator::basis(b.space(), &["g", "g"]).unwrap();
    assert!((rho.matrix() - gg.matrix()).norm() < 1e-10);
    // Two identical emitters in |e,e⟩ never split their photons over both
    // outputs.
    assert!(matches!(
        conditional_state_two_clicks(&b, &rho0, "D+", "D-", 1.5),
        Err(crate::Error::NullEvent(_))
    ));
}

#[test]
fn quadrature_agrees_with_augmentation() {
    let (b, rho0) = decay_pair(0.35, 1.0);
    let t = 1.3;
    let exact = scenario_probabilities(&b, &rho0, t).unwrap();
    let quad = quadrature::scenario_probabilities(&b, &rho0, t).unwrap();
    for (x, y) in [(exact.p0, quad.p0), (exact.p1, quad.p1), (exact.p2, quad.p2)] {
        assert!((x - y).abs() < 1e-10, "{x} vs {y}");
    }
    let a = one_click_sector(&b, &rho0, 0, t).unwrap();
    let q = quadrature::one_click_state(&b, &rho0, "D+", t).unwrap();
    assert!((a.matrix() - q.matrix()).norm() < 1e-10);
    let a = two_click_sector(&b, &rho0, 1, 1, t).unwrap();
    let q = quadrature::two_click_state(&b, &rho0, "D-", "D-", t).unwrap();
    assert!((a.matrix() - q.matrix()).norm() < 1e-10);
}

#[test]
fn tau_independence_of_single_click_state() {
    let (b, rho0) = decay_pair(0.3, 1.0);
    let taus: Vec<f64> = (0..20).map(|k| k as f64 / 19.0).collect();
    assert!(tau_independence_check(&b, &rho0, "D+", 1.0, &taus).unwrap() < 1e-10);
    assert_eq!(tau_independence_check(&b, &rho0, "D-", 1.0, &[1.0]).unwrap(), 0.0);
    assert!(tau_independence_check(&b, &rho0, "D+", 1.0, &[1.5]).is_err());
}

#[test]
fn re_pumped_emitters_break_tau_independence() {
    let (b, rho0) = cascade_pair(0.3);
    let taus: Vec<f64> = (0..20).map(|k| 2.0 * k as f64 / 19.0).collect();
    let dev = tau_independence_check(&b, &rho0, "D+", 2.0, &taus).unwrap();
    assert!(dev > 0.1, "deviation {dev}");
}

#[test]
fn monte_carlo_without_detection_never_clicks() {
    let (b, rho0) = decay_pair(0.0, 1.0);
    let mc = monte_carlo(&b, &rho0, 2.0, 2000, 1).unwrap();
    assert_eq!(mc.histogram[0], 2000);
    assert!(mc.port_clicks.iter().all(|&c| c == 0));
}

#[test]
fn monte_carlo_is_reproducible_and_consistent() {
    let (b, rho0) = decay_pair(0.5, 1.0);
    let t = 1.0;
    let a = monte_carlo(&b, &rho0, t, 20_000, 42).unwrap();
    let again = monte_carlo(&b, &rho0, t, 20_000, 42).unwrap();
    assert_eq!(a.histogram, again.histogram);
    assert_eq!(a.port_clicks, again.port_clicks);
    assert_eq!(
        a.states_by_count[1].as_ref().unwrap().matrix(),
        again.states_by_count[1].as_ref().unwrap().matrix()
    );
    let exact = scenario_probabilities(&b, &rho0, t).unwrap();
    for (n, p) in [(0, exact.p0), (1, exact.p1), (2, exact.p2)] {
        assert!((a.p(n) - p).abs() < 4.0 * a.std_error(n), "n = {n}: {} vs {p}", a.p(n));
    }
    // The averaged one-click state approaches the deterministic one.
    let (_, plus) = conditional_state_one_click(&b, &rho0, "D+", t).unwrap();
    let sampled = a.single_click_states[0].as_ref().unwrap();
    assert!((sampled.matrix() - plus.matrix()).norm() < 0.05);
}

#[test]
fn sampled_click_records_are_ordered() {
    let (b, rho0) = decay_pair(1.0, 1.0);
    let sampler = Sampler::new(&b, &rho0, 3.0).unwrap();
    for i in 0..500 {
        let tr = sampler.trajectory(9, i);
        assert!(tr.record.is_consistent());
        assert!(tr.record.clicks.len() <= 2);
    }
}
