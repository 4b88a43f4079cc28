// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Quantum-jump (Monte Carlo wavefunction) sampling of click records.
//!
//! Between jumps a trajectory evolves under `exp(−K τ)` with the Hermitian
//! `K = Σ (rate/2) A†A`; it is propagated exactly in the eigenbasis of `K`.
//! Jump instants are found by inverting the decaying norm against a uniform
//! draw. Each jump is detected with probability `η` (one uniform draw) and is
//! then attributed to a port with weight `rate‖dψ‖²`; an undetected jump picks
//! an emission channel with weight `rate‖Aψ‖²`.
//!
//! Trajectory `i` draws from the ChaCha8 stream `i` of the master seed and
//! batches are reduced in index order, so results do not depend on how the
//! work is scheduled across threads.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::bundle::SuperoperatorBundle;
use super::counting::{require_initial, require_time};
use crate::error::{Error, Result};
use crate::quantum::{DensityOperator, Normalization, C64, ZERO};

/// Trajectories per reduction batch.
const BATCH: usize = 1024;

/// Click instants and ports recorded in one trajectory.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClickRecord {
    pub window: f64,
    /// `(time, port index)`, strictly increasing in time.
    pub clicks: Vec<(f64, usize)>,
}

impl ClickRecord {
    pub fn is_consistent(&self) -> bool {
        self.clicks.windows(2).all(|w| w[0].0 < w[1].0) && self.clicks.iter().all(|&(t, _)| t > 0.0 && t <= self.window)
    }
}

/// One sampled trajectory.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub record: ClickRecord,
    pub state: DVector<C64>,
}

/// Precomputed no-jump propagation and jump operators.
pub struct Sampler<'a> {
    bundle: &'a SuperoperatorBundle,
    decay_rates: DVector<f64>,
    eigvecs: DMatrix<C64>,
    initial_weights: Vec<f64>,
    initial_states: Vec<DVector<C64>>,
    window: f64,
}

impl<'a> Sampler<'a> {
    pub fn new(bundle: &'a SuperoperatorBundle, rho0: &DensityOperator, t: f64) -> Result<Self> {
        require_initial(bundle, rho0)?;
        require_time(t)?;
        let d = bundle.space().dim();
        let mut k = DMatrix::from_element(d, d, ZERO);
        for ch in bundle.channels() {
            k += ch.op.matrix().adjoint() * ch.op.matrix() * C64::from(0.5 * ch.rate);
        }
        let k = (&k + k.adjoint()) * C64::from(0.5);
        let eig = k.symmetric_eigen();

        let rho = (rho0.matrix() + rho0.matrix().adjoint()) * C64::from(0.5);
        let mix = rho.symmetric_eigen();
        let mut initial_weights = Vec::new();
        let mut initial_states = Vec::new();
        for (i, &w) in mix.eigenvalues.iter().enumerate() {
            if w > 1e-14 {
                initial_weights.push(w);
                initial_states.push(mix.eigenvectors.column(i).into_owned());
            }
        }
        Ok(Self {
            bundle,
            decay_rates: eig.eigenvalues,
            eigvecs: eig.eigenvectors,
            initial_weights,
            initial_states,
            window: t,
        })
    }

    fn pick(rng: &mut ChaCha8Rng, weights: &[f64]) -> usize {
        let total: f64 = weights.iter().sum();
        let mut u = rng.random::<f64>() * total;
        for (i, &w) in weights.iter().enumerate() {
            if u < w {
                return i;
            }
            u -= w;
        }
        weights.iter().rposition(|&w| w > 0.0).unwrap_or(0)
    }

    /// Samples trajectory `index` of the run seeded with `seed`.
    pub fn trajectory(&self, seed: u64, index: u64) -> Trajectory {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let eta = self.bundle.eta();
        let psi0 = &self.initial_states[Self::pick(&mut rng, &self.initial_weights)];
        // Amplitudes in the eigenbasis of K.
        let mut c = self.eigvecs.adjoint() * psi0;
        let mut elapsed = 0.0;
        let mut clicks = Vec::new();
        loop {
            let r: f64 = rng.random();
            let remaining = self.window - elapsed;
            let norm2 = |tau: f64| -> f64 {
                c.iter()
                    .zip(self.decay_rates.iter())
                    .map(|(a, &k)| a.norm_sqr() * (-2.0 * k * tau).exp())
                    .sum()
            };
            if norm2(remaining) > r {
                for (a, &k) in c.iter_mut().zip(self.decay_rates.iter()) {
                    *a *= (-k * remaining).exp();
                }
                break;
            }
            let (mut lo, mut hi) = (0.0, remaining);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if norm2(mid) > r {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo <= 1e-15 * hi.max(1e-300) {
                    break;
                }
            }
            let tau = hi;
            for (a, &k) in c.iter_mut().zip(self.decay_rates.iter()) {
                *a *= (-k * tau).exp();
            }
            elapsed += tau;
            let psi = &self.eigvecs * &c;
            let u: f64 = rng.random();
            let next = if u < eta {
                let candidates: Vec<DVector<C64>> = self.bundle.ports().iter().map(|p| p.op.matrix() * &psi).collect();
                let weights: Vec<f64> = candidates
                    .iter()
                    .zip(self.bundle.ports())
                    .map(|(v, p)| p.rate * v.norm_squared())
                    .collect();
                let port = Self::pick(&mut rng, &weights);
                if clicks.last().map_or(true, |&(t, _)| elapsed > t) {
                    clicks.push((elapsed, port));
                }
                candidates.into_iter().nth(port).expect("port exists")
            } else {
                let candidates: Vec<DVector<C64>> =
                    self.bundle.channels().iter().map(|ch| ch.op.matrix() * &psi).collect();
                let weights: Vec<f64> = candidates
                    .iter()
                    .zip(self.bundle.channels())
                    .map(|(v, ch)| ch.rate * v.norm_squared())
                    .collect();
                let channel = Self::pick(&mut rng, &weights);
                candidates.into_iter().nth(channel).expect("channel exists")
            };
            let n = next.norm();
            c = self.eigvecs.adjoint() * (next / C64::from(n));
            if elapsed >= self.window {
                break;
            }
        }
        let psi = &self.eigvecs * &c;
        let n = psi.norm();
        Trajectory {
            record: ClickRecord {
                window: self.window,
                clicks,
            },
            state: psi / C64::from(n),
        }
    }
}

/// Empirical click statistics of a Monte Carlo run.
#[derive(Debug, Clone)]
pub struct MonteCarloResult {
    pub n_traj: u64,
    pub seed: u64,
    /// `histogram[n]` trajectories recorded exactly `n` clicks.
    pub histogram: Vec<u64>,
    /// Total clicks per port, in port order.
    pub port_clicks: Vec<u64>,
    /// Trajectories with exactly one click, per port.
    pub single_click_counts: Vec<u64>,
    /// Average final state of the trajectories with exactly `n` clicks
    /// (`None` if no trajectory had `n` clicks), for `n` = 0, 1, 2.
    pub states_by_count: Vec<Option<DensityOperator>>,
    /// Average final state after exactly one click at each port.
    pub single_click_states: Vec<Option<DensityOperator>>,
}

impl MonteCarloResult {
    /// Empirical probability of exactly `n` clicks.
    pub fn p(&self, n: usize) -> f64 {
        self.histogram.get(n).copied().unwrap_or(0) as f64 / self.n_traj as f64
    }

    /// Binomial standard error of [`MonteCarloResult::p`].
    pub fn std_error(&self, n: usize) -> f64 {
        let p = self.p(n);
        (p * (1.0 - p) / self.n_traj as f64).sqrt()
    }
}

#[derive(Clone)]
struct Tally {
    histogram: Vec<u64>,
    port_clicks: Vec<u64>,
    single: Vec<u64>,
    by_count: Vec<DMatrix<C64>>,
    by_port: Vec<DMatrix<C64>>,
}

impl Tally {
    fn new(d: usize, ports: usize) -> Self {
        Self {
            histogram: vec![0; 3],
            port_clicks: vec![0; ports],
            single: vec![0; ports],
            by_count: vec![DMatrix::from_element(d, d, ZERO); 3],
            by_port: vec![DMatrix::from_element(d, d, ZERO); ports],
        }
    }

    fn add(&mut self, tr: &Trajectory) {
        let n = tr.record.clicks.len();
        if n >= self.histogram.len() {
            self.histogram.resize(n + 1, 0);
        }
        self.histogram[n] += 1;
        for &(_, p) in &tr.record.clicks {
            self.port_clicks[p] += 1;
        }
        let proj = &tr.state * tr.state.adjoint();
        if n < self.by_count.len() {
            self.by_count[n] += &proj;
        }
        if n == 1 {
            let p = tr.record.clicks[0].1;
            self.single[p] += 1;
            self.by_port[p] += &proj;
        }
    }

    fn merge(&mut self, other: Tally) {
        if other.histogram.len() > self.histogram.len() {
            self.histogram.resize(other.histogram.len(), 0);
        }
        for (a, b) in self.histogram.iter_mut().zip(other.histogram) {
            *a += b;
        }
        for (a, b) in self.port_clicks.iter_mut().zip(other.port_clicks) {
            *a += b;
        }
        for (a, b) in self.single.iter_mut().zip(other.single) {
            *a += b;
        }
        for (a, b) in self.by_count.iter_mut().zip(other.by_count) {
            *a += b;
        }
        for (a, b) in self.by_port.iter_mut().zip(other.by_port) {
            *a += b;
        }
    }
}

pub fn monte_carlo(
    bundle: &SuperoperatorBundle,
    rho0: &DensityOperator,
    t: f64,
    n_traj: u64,
    seed: u64,
) -> Result<MonteCarloResult> {
    if n_traj == 0 {
        return Err(Error::invalid("at least one trajectory is required"));
    }
    let sampler = Sampler::new(bundle, rho0, t)?;
    let d = bundle.space().dim();
    let ports = bundle.ports().len();
    let batches: Vec<u64> = (0..n_traj.div_ceil(BATCH as u64)).collect();
    let tallies: Vec<Tally> = batches
        .par_iter()
        .map(|&b| {
            let mut tally = Tally::new(d, ports);
            let start = b * BATCH as u64;
            let end = (start + BATCH as u64).min(n_traj);
            for i in start..end {
                tally.add(&sampler.trajectory(seed, i));
            }
            tally
        })
        .collect();
    let mut total = Tally::new(d, ports);
    for tally in tallies {
        total.merge(tally);
    }

    let space = bundle.space().clone();
    let average = |sum: &DMatrix<C64>, count: u64| -> Option<DensityOperator> {
        (count > 0).then(|| {
            DensityOperator::new(space.clone(), sum / C64::from(count as f64), Normalization::Normalized)
                .expect("dimension preserved")
        })
    };
    let states_by_count = (0..3)
        .map(|n| average(&total.by_count[n], total.histogram.get(n).copied().unwrap_or(0)))
        .collect();
    let single_click_states = (0..ports)
        .map(|p| average(&total.by_port[p], total.single[p]))
        .collect();
    Ok(MonteCarloResult {
        n_traj,
        seed,
        histogram: total.histogram,
        port_clicks: total.port_clicks,
        single_click_counts: total.single,
        states_by_count,
        single_click_states,
    })
}
