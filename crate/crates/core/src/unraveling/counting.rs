// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Click-resolved evolution by generator augmentation.
//!
//! The time-ordered integrals over click instants are the solution of a
//! block lower-triangular linear system. Sector `k` holds the subnormalized
//! state of the trajectories that have produced a given click pattern so
//! far; it evolves under the no-click generator `G = L + (1 − η)J` and is
//! fed by click superoperators acting on the sectors one click earlier:
//!
//! ```text
//! ẋ_k = G x_k + Σ_{(j, S) ∈ feeds(k)} S x_j
//! ```
//!
//! For example the sector with exactly one click at port `p` is
//! `x₁(t) = ∫₀ᵗ U(t−τ) C_p U(τ) ρ₀ dτ`. One exponential action of the
//! augmented generator yields every sector at once, with no quadrature
//! error.

use nalgebra::DVector;
use serde::Serialize;

use super::bundle::SuperoperatorBundle;
use crate::error::{Error, Result};
use crate::quantum::{
    column_norm1, expm_action, unvectorize, vectorize, DensityOperator, LinearMap, Normalization, Superoperator, C64,
    ONE, ZERO,
};
use crate::tolerance::{NULL_EVENT, STRUCTURAL};

/// The augmented generator over click-pattern sectors.
pub(crate) struct CountingGenerator<'a> {
    generator: &'a Superoperator,
    feeds: Vec<Vec<(usize, &'a Superoperator)>>,
    block: usize,
}

impl<'a> CountingGenerator<'a> {
    /// `feeds[k]` lists the `(source sector, click map)` pairs flowing into
    /// sector `k`; sources must precede `k`.
    pub(crate) fn new(generator: &'a Superoperator, feeds: Vec<Vec<(usize, &'a Superoperator)>>) -> Self {
        for (k, f) in feeds.iter().enumerate() {
            assert!(f.iter().all(|&(j, _)| j < k), "click sectors must be ordered");
        }
        let block = generator.matrix().nrows();
        Self {
            generator,
            feeds,
            block,
        }
    }

    /// Evolves `rho0` (placed in sector 0) for time `t` and returns every
    /// sector as a subnormalized state.
    pub(crate) fn evolve(&self, rho0: &DensityOperator, t: f64) -> Result<Vec<DensityOperator>> {
        let n = self.block;
        let mut v = DVector::from_element(n * self.feeds.len(), ZERO);
        v.rows_mut(0, n).copy_from(&vectorize(rho0.matrix()));
        let out = expm_action(self, &v, t)?;
        let d = rho0.dim();
        (0..self.feeds.len())
            .map(|k| {
                DensityOperator::new(
                    rho0.space().clone(),
                    unvectorize(&out.rows(k * n, n).into_owned(), d),
                    Normalization::Subnormalized,
                )
            })
            .collect()
    }
}

impl LinearMap for CountingGenerator<'_> {
    fn dim(&self) -> usize {
        self.block * self.feeds.len()
    }

    fn apply(&self, v: &DVector<C64>, out: &mut DVector<C64>) {
        let n = self.block;
        for (k, feeds) in self.feeds.iter().enumerate() {
            let mut target = out.rows_mut(k * n, n);
            target.gemv(ONE, self.generator.matrix(), &v.rows(k * n, n), ZERO);
            for &(j, s) in feeds {
                target.gemv(ONE, s.matrix(), &v.rows(j * n, n), ONE);
            }
        }
    }

    fn norm1_bound(&self) -> f64 {
        let g = column_norm1(self.generator.matrix());
        (0..self.feeds.len())
            .map(|j| {
                g + self
                    .feeds
                    .iter()
                    .flat_map(|f| f.iter())
                    .filter(|&&(src, _)| src == j)
                    .map(|(_, s)| column_norm1(s.matrix()))
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    fn mean_diagonal(&self) -> C64 {
        self.generator.matrix().trace() / C64::from(self.block as f64)
    }
}

pub(crate) fn require_initial(bundle: &SuperoperatorBundle, rho0: &DensityOperator) -> Result<()> {
    if rho0.space() != bundle.space() {
        return Err(Error::mismatch(format!(
            "initial state on {} but the model lives on {}",
            rho0.space(),
            bundle.space()
        )));
    }
    if rho0.normalization() != Normalization::Normalized || (rho0.trace() - 1.0).abs() > STRUCTURAL {
        return Err(Error::NotNormalized(rho0.trace()));
    }
    Ok(())
}

pub(crate) fn require_time(t: f64) -> Result<()> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::NegativeTime(t));
    }
    Ok(())
}

/// Probabilities of recording zero, one and two clicks in `[0, t]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScenarioProbabilities {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
}

impl ScenarioProbabilities {
    pub fn total(&self) -> f64 {
        self.p0 + self.p1 + self.p2
    }
}

/// Subnormalized states after exactly zero, one and two clicks (any ports).
pub fn click_number_states(
    bundle: &SuperoperatorBundle,
    rho0: &DensityOperator,
    t: f64,
) -> Result<[DensityOperator; 3]> {
    require_initial(bundle, rho0)?;
    require_time(t)?;
    let c = bundle.click();
    let gen = CountingGenerator::new(bundle.no_click_generator(), vec![vec![], vec![(0, c)], vec![(1, c)]]);
    let mut sectors = gen.evolve(rho0, t)?.into_iter();
    Ok([
        sectors.next().expect("three sectors"),
        sectors.next().expect("three sectors"),
        sectors.next().expect("three sectors"),
    ])
}

pub fn scenario_probabilities(
    bundle: &SuperoperatorBundle,
    rho0: &DensityOperator,
    t: f64,
) -> Result<ScenarioProbabilities> {
    let [s0, s1, s2] = click_number_states(bundle, rho0, t)?;
    Ok(ScenarioProbabilities {
        p0: s0.trace(),
        p1: s1.trace(),
        p2: s2.trace(),
    })
}

/// Probability of exactly one click in `[0, t]`, at `port`, and the
/// normalized conditional state.
pub fn conditional_state_one_click(
    bundle: &SuperoperatorBundle,
    rho0: &DensityOperator,
    port: &str,
    t: f64,
) -> Result<(f64, DensityOperator)> {
    one_click_sector(bundle, rho0, bundle.port_index(port)?, t)?.normalized()
}

/// Subnormalized one-click state for the port at `index`.
pub(crate) fn one_click_sector(
    bundle: &SuperoperatorBundle,
    rho0: &DensityOperator,
    index: usize,
    t: f64,
) -> Result<DensityOperator> {
    require_initial(bundle, rho0)?;
    require_time(t)?;
    let gen = CountingGenerator::new(
        bundle.no_click_generator(),
        vec![vec![], vec![(0, bundle.port_click(index))]],
    );
    Ok(gen.evolve(rho0, t)?.pop().expect("two sectors"))
}

/// Probability of exactly two clicks in `[0, t]`, one at each of the given
/// ports in either order, and the normalized conditional state.
pub fn conditional_state_two_clicks(
    bundle: &SuperoperatorBundle,
    rho0: &DensityOperator,
    port1: &str,
    port2: &str,
    t: f64,
) -> Result<(f64, DensityOperator)> {
    let (a, b) = (bundle.port_index(port1)?, bundle.port_index(port2)?);
    two_click_sector(bundle, rho0, a, b, t)?.normalized()
}

pub(crate) fn two_click_sector(
    bundle: &SuperoperatorBundle,
    rho0: &DensityOperator,
    a: usize,
    b: usize,
    t: f64,
) -> Result<DensityOperator> {
    require_initial(bundle, rho0)?;
    require_time(t)?;
    let (ca, cb) = (bundle.port_click(a), bundle.port_click(b));
    let feeds = if a == b {
        vec![vec![], vec![(0, ca)], vec![(1, ca)]]
    } else {
        vec![vec![], vec![(0, ca)], vec![(0, cb)], vec![(1, cb), (2, ca)]]
    };
    let gen = CountingGenerator::new(bundle.no_click_generator(), feeds);
    Ok(gen.evolve(rho0, t)?.pop().expect("final sector"))
}

/// Largest entrywise deviation, over `taus`, of the normalized state
/// `U(t−τ) C_port U(τ) ρ₀` from its value at `τ = t`.
///
/// Grid points where the click is impossible (weight below the null-event
/// threshold) carry no conditional state and are skipped.
pub fn tau_independence_check(
    bundle: &SuperoperatorBundle,
    rho0: &DensityOperator,
    port: &str,
    t: f64,
    taus: &[f64],
) -> Result<f64> {
    require_initial(bundle, rho0)?;
    require_time(t)?;
    let index = bundle.port_index(port)?;
    if let Some(&bad) = taus.iter().find(|&&tau| !(0.0..=t).contains(&tau)) {
        return Err(Error::invalid(format!("click instant {bad} outside [0, {t}]")));
    }
    let g = bundle.no_click_generator();
    let c = bundle.port_click(index);
    let d = rho0.dim();
    let v0 = vectorize(rho0.matrix());
    let at = |tau: f64| -> Result<Option<DensityOperator>> {
        let before = expm_action(g, &v0, tau)?;
        let after = expm_action(g, &c.apply_vec(&before), t - tau)?;
        let rho = DensityOperator::new(
            rho0.space().clone(),
            unvectorize(&after, d),
            Normalization::Subnormalized,
        )?;
        if rho.trace() < NULL_EVENT {
            return Ok(None);
        }
        Ok(Some(rho.normalized()?.1))
    };
    let Some(reference) = at(t)? else {
        return Err(Error::NullEvent(0.0));
    };
    let mut worst: f64 = 0.0;
    for &tau in taus {
        if let Some(rho) = at(tau)? {
            let dev = (rho.matrix() - reference.matrix())
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            worst = worst.max(dev);
        }
    }
    Ok(worst)
}
