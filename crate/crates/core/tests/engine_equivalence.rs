// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

use herald_core::protocols::*;
use herald_core::quantum::{fidelity, DensityOperator};
use herald_core::unraveling::{
    conditional_state_one_click, conditional_state_two_clicks, scenario_probabilities, tau_independence_check,
};

#[test]
fn closed_forms_match_engine_on_grid() {
    for scheme in Scheme::ALL {
        let c = engine_vs_analytic(scheme).unwrap();
        assert_eq!(c.points, 25);
        assert!(c.max_dp < 1e-8, "{scheme}: {c:?}");
        assert!(c.max_df < 1e-8, "{scheme}: {c:?}");
        assert!(c.max_completeness < 1e-8, "{scheme}: {c:?}");
    }
}

#[test]
fn free_space_conditional_fidelity_from_engine() {
    let model = build_model(&SchemeParams::OneCw(SchemeParams1cw::from_p1(0.15, 0.005))).unwrap();
    let bundle = model.bundle().unwrap();
    let (_, rho) = conditional_state_one_click(&bundle, &model.initial, "D+", model.window).unwrap();
    let f = fidelity(&BellState::PsiPlus.density(&model.space).unwrap(), &rho).unwrap();
    assert!((f - 0.85 / 0.99925).abs() < 1e-10);
    assert!((f - 0.8506).abs() < 5e-5);
    assert!(rho.check().passed);
}

#[test]
fn cavity_conditional_fidelity_from_engine() {
    let params = SchemeParams1pls::from_p_cav(0.15, 0.1, 0.31).unwrap();
    let model = build_model(&SchemeParams::OnePls(params)).unwrap();
    let bundle = model.bundle().unwrap();
    let outcome = model.herald_outcome(&bundle, &model.heralds[0]).unwrap();
    assert!((outcome.fidelity - 0.85 / 0.969).abs() < 1e-10);
    assert!((outcome.fidelity - 0.877).abs() < 5e-4);
    assert!(outcome.atomic_state.unwrap().check().passed);
}

#[test]
fn cavity_without_transfer_never_clicks() {
    let params = SchemeParams1pls {
        eps2: 0.0,
        kappa: 1.0,
        t: 3.0,
        eta: 0.8,
    };
    let model = build_model(&SchemeParams::OnePls(params)).unwrap();
    let e00 = DensityOperator::basis(&model.space, &["e", "e", "0", "0"]).unwrap();
    assert!((model.initial.matrix() - e00.matrix()).norm() < 1e-15);
    let s = scenario_probabilities(&model.bundle().unwrap(), &model.initial, model.window).unwrap();
    assert!((s.p0 - 1.0).abs() < 1e-12 && s.p1.abs() < 1e-15 && s.p2.abs() < 1e-15);
}

#[test]
fn two_photon_model_structure() {
    let model = build_model(&SchemeParams::TwoPh(SchemeParams2ph::from_p2(
        0.8,
        0.6,
        BellSubset::Half,
    )))
    .unwrap();
    assert_eq!(model.space.dims(), vec![3, 3]);
    assert_eq!(model.channels.len(), 4);
    let rr = DensityOperator::basis(&model.space, &["r", "r"]).unwrap();
    assert_eq!(model.initial.matrix(), rr.matrix());

    let bundle = model.bundle().unwrap();
    let ids = bundle.port_ids();
    let mut nonzero = 0;
    let mut total = 0.0;
    for i in 0..ids.len() {
        for j in i..ids.len() {
            match conditional_state_two_clicks(&bundle, &model.initial, &ids[i], &ids[j], model.window) {
                Ok((p, _)) => {
                    nonzero += 1;
                    total += p;
                }
                Err(herald_core::Error::NullEvent(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
    assert_eq!(nonzero, 8);
    let s = scenario_probabilities(&bundle, &model.initial, model.window).unwrap();
    assert!((total - s.p2).abs() < 1e-12);
    assert!((s.p2 - (0.6f64 * 0.8).powi(2)).abs() < 1e-12);
}

#[test]
fn coincidences_herald_perfect_bell_states() {
    for (eta, p2) in [(0.05, 0.3), (0.5, 0.9), (1.0, 0.6)] {
        let model = build_model(&SchemeParams::TwoPh(SchemeParams2ph::from_p2(
            p2,
            eta,
            BellSubset::Half,
        )))
        .unwrap();
        let bundle = model.bundle().unwrap();
        let outcomes = model.herald_outcomes(&bundle).unwrap();
        assert_eq!(outcomes.len(), 4);
        for o in &outcomes {
            assert!((o.fidelity - 1.0).abs() < 1e-10, "{:?}", o.herald);
        }
        let p: f64 = outcomes.iter().map(|o| o.probability).sum();
        assert!((p - 0.5 * (eta * p2).powi(2)).abs() < 1e-12);
    }
}

#[test]
fn single_click_state_does_not_depend_on_click_time() {
    let taus: Vec<f64> = (0..20).map(|k| k as f64 / 19.0).collect();
    for eta in [0.1, 0.5, 0.9] {
        let cw = build_model(&SchemeParams::OneCw(SchemeParams1cw {
            gamma_eg: 1.0,
            t_cw: 1.0,
            eta,
            p1: None,
        }))
        .unwrap();
        let pls = build_model(&SchemeParams::OnePls(SchemeParams1pls {
            eps2: 0.3,
            kappa: 1.0,
            t: 1.0,
            eta,
        }))
        .unwrap();
        for model in [cw, pls] {
            let dev = tau_independence_check(&model.bundle().unwrap(), &model.initial, "D+", 1.0, &taus).unwrap();
            assert!(dev < 1e-10, "eta {eta}: {dev}");
        }
    }
}

#[test]
fn detectors_are_symmetric() {
    for scheme in [Scheme::OneCw, Scheme::OnePls] {
        let model = build_model(&grid_params(scheme, 0.4, 0.9)).unwrap();
        let bundle = model.bundle().unwrap();
        let (pp, _) = conditional_state_one_click(&bundle, &model.initial, "D+", model.window).unwrap();
        let (pm, _) = conditional_state_one_click(&bundle, &model.initial, "D-", model.window).unwrap();
        assert!((pp - pm).abs() < 1e-10);
    }
}

#[test]
fn unknown_port_is_reported() {
    let model = build_model(&grid_params(Scheme::OneCw, 0.4, 0.9)).unwrap();
    let bundle = model.bundle().unwrap();
    assert!(matches!(
        conditional_state_one_click(&bundle, &model.initial, "D+x", 1.0),
        Err(herald_core::Error::Unknown { .. })
    ));
}
