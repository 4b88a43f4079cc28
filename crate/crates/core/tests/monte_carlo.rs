// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

use herald_core::protocols::{build_model, BellState, SchemeParams, SchemeParams1cw};
use herald_core::quantum::fidelity;
use herald_core::unraveling::{monte_carlo, scenario_probabilities};

#[test]
fn click_statistics_within_four_sigma_on_grid() {
    let n = 100_000u64;
    for eta in [0.1, 0.5, 0.9] {
        for p1 in [0.15, 0.5, 0.85] {
            let model = build_model(&SchemeParams::OneCw(SchemeParams1cw::from_p1(p1, eta))).unwrap();
            let bundle = model.bundle().unwrap();
            let exact = scenario_probabilities(&bundle, &model.initial, model.window).unwrap();
            let mc = monte_carlo(&bundle, &model.initial, model.window, n, 17).unwrap();
            for (k, p) in [(1, exact.p1), (2, exact.p2)] {
                // Standard error of the exact probability, so rare events with
                // zero counts are still judged.
                let se = (p * (1.0 - p) / n as f64).sqrt();
                let z = (mc.p(k) - p) / se;
                assert!(z.abs() < 4.0, "eta {eta} p1 {p1} n={k}: {} vs {p} (z {z:.2})", mc.p(k));
            }
        }
    }
}

#[test]
fn single_click_trajectories_average_to_heralded_state() {
    let model = build_model(&SchemeParams::OneCw(SchemeParams1cw::from_p1(0.3, 0.8))).unwrap();
    let bundle = model.bundle().unwrap();
    let mc = monte_carlo(&bundle, &model.initial, model.window, 50_000, 3).unwrap();
    let count = mc.single_click_counts[0] as f64;
    let rho = mc.single_click_states[0].clone().unwrap();
    let (_, rho) = rho.normalized().unwrap();
    let f = fidelity(&BellState::PsiPlus.density(&model.space).unwrap(), &rho).unwrap();
    let want = 0.7 / (1.0 - 0.8 * 0.3);
    // Binomial error on the Ψ+ weight among `count` samples.
    let se = (want * (1.0 - want) / count).sqrt();
    assert!((f - want).abs() < 4.0 * se, "{f} vs {want} ({count} samples)");
}
