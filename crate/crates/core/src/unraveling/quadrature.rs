// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Direct evaluation of the click integrals by adaptive Gauss–Kronrod
//! quadrature.
//!
//! This path integrates the time-ordered expressions literally, with the
//! no-click propagator applied at every node. It is much slower than the
//! augmented-generator evaluation and exists to cross-check it.

use nalgebra::DVector;

use super::bundle::SuperoperatorBundle;
use super::counting::{require_initial, require_time, ScenarioProbabilities};
use crate::error::{Error, Result};
use crate::quantum::{
    expm_action, unvectorize, vec_trace, vectorize, DensityOperator, Normalization, Superoperator, C64,
};

/// Relative tolerance requested from every adaptive integral.
pub const RELATIVE_TOLERANCE: f64 = 1e-9;
const ABSOLUTE_FLOOR: f64 = 1e-15;
const MAX_INTERVALS: usize = 400;

// 15-point Kronrod rule with its embedded 7-point Gauss rule on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Piece {
    a: f64,
    b: f64,
    value: DVector<C64>,
    error: f64,
}

fn kronrod<F>(f: &F, a: f64, b: f64) -> Result<Piece>
where
    F: Fn(f64) -> Result<DVector<C64>>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let centre = f(c)?;
    let mut k = &centre * C64::from(WGK[7]);
    let mut g = &centre * C64::from(WG[3]);
    for i in 0..7 {
        let x = h * XGK[i];
        let sum = f(c - x)? + f(c + x)?;
        k += &sum * C64::from(WGK[i]);
        if i % 2 == 1 {
            g += &sum * C64::from(WG[i / 2]);
        }
    }
    k *= C64::from(h);
    g *= C64::from(h);
    let error = (&k - &g).iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(Piece { a, b, value: k, error })
}

/// Globally adaptive integral of a vector-valued function over `[a, b]`.
pub fn integrate<F>(f: F, a: f64, b: f64) -> Result<DVector<C64>>
where
    F: Fn(f64) -> Result<DVector<C64>>,
{
    let mut pieces = vec![kronrod(&f, a, b)?];
    loop {
        let total: DVector<C64> = pieces
            .iter()
            .skip(1)
            .fold(pieces[0].value.clone(), |acc, p| acc + &p.value);
        let error: f64 = pieces.iter().map(|p| p.error).sum();
        let scale = total.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if error <= (RELATIVE_TOLERANCE * scale).max(ABSOLUTE_FLOOR) {
            return Ok(total);
        }
        if pieces.len() >= MAX_INTERVALS {
            return Err(Error::Quadrature {
                estimate: error,
                intervals: pieces.len(),
            });
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("non-empty");
        let p = pieces.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        pieces.push(kronrod(&f, p.a, mid)?);
        pieces.push(kronrod(&f, mid, p.b)?);
    }
}

/// `∫₀ᵗ U(t−τ) S U(τ) v dτ`.
fn single_click_integral(g: &Superoperator, s: &Superoperator, v: &DVector<C64>, t: f64) -> Result<DVector<C64>> {
    if t == 0.0 {
        return Ok(DVector::zeros(v.len()));
    }
    integrate(
        |tau| expm_action(g, &s.apply_vec(&expm_action(g, v, tau)?), t - tau),
        0.0,
        t,
    )
}

fn to_state(bundle: &SuperoperatorBundle, v: &DVector<C64>) -> Result<DensityOperator> {
    let d = bundle.space().dim();
    DensityOperator::new(bundle.space().clone(), unvectorize(v, d), Normalization::Subnormalized)
}

/// Subnormalized one-click state at `port`, by quadrature.
pub fn one_click_state(
    bundle: &SuperoperatorBundle,
    rho0: &DensityOperator,
    port: &str,
    t: f64,
) -> Result<DensityOperator> {
    require_initial(bundle, rho0)?;
    require_time(t)?;
    let c = bundle.port_click(bundle.port_index(port)?);
    let v = single_click_integral(bundle.no_click_generator(), c, &vectorize(rho0.matrix()), t)?;
    to_state(bundle, &v)
}

/// Subnormalized state with one click at each of two ports (either order),
/// by nested quadrature.
pub fn two_click_state(
    bundle: &SuperoperatorBundle,
    rho0: &DensityOperator,
    port1: &str,
    port2: &str,
    t: f64,
) -> Result<DensityOperator> {
    require_initial(bundle, rho0)?;
    require_time(t)?;
    let (a, b) = (bundle.port_index(port1)?, bundle.port_index(port2)?);
    let (ca, cb) = (bundle.port_click(a), bundle.port_click(b));
    let g = bundle.no_click_generator();
    let v0 = vectorize(rho0.matrix());
    let v = pair_integral(g, ca, cb, a == b, &v0, t)?;
    to_state(bundle, &v)
}

fn pair_integral(
    g: &Superoperator,
    ca: &Superoperator,
    cb: &Superoperator,
    same: bool,
    v0: &DVector<C64>,
    t: f64,
) -> Result<DVector<C64>> {
    if t == 0.0 {
        return Ok(DVector::zeros(v0.len()));
    }
    integrate(
        |tau2| {
            let first_a = single_click_integral(g, ca, v0, tau2)?;
            let mut fed = cb.apply_vec(&first_a);
            if !same {
                let first_b = single_click_integral(g, cb, v0, tau2)?;
                fed += ca.apply_vec(&first_b);
            }
            expm_action(g, &fed, t - tau2)
        },
        0.0,
        t,
    )
}

/// `P0`, `P1`, `P2` from the literal time-ordered integrals.
pub fn scenario_probabilities(
    bundle: &SuperoperatorBundle,
    rho0: &DensityOperator,
    t: f64,
) -> Result<ScenarioProbabilities> {
    require_initial(bundle, rho0)?;
    require_time(t)?;
    let g = bundle.no_click_generator();
    let c = bundle.click();
    let d = bundle.space().dim();
    let v0 = vectorize(rho0.matrix());
    let p0 = vec_trace(&expm_action(g, &v0, t)?, d);
    let p1 = vec_trace(&single_click_integral(g, c, &v0, t)?, d);
    let p2 = vec_trace(&pair_integral(g, c, c, true, &v0, t)?, d);
    Ok(ScenarioProbabilities { p0, p1, p2 })
}
