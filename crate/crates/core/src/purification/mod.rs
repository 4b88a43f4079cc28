// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Recurrence purification of heralded pairs.
//!
//! Pairs from a single-photon scheme target `Ψ+`; they are rotated into the
//! `Φ+` frame, purified in rounds that consume two pairs and keep at most
//! one, and rotated back. Each round is simulated on the full two-pair
//! density matrix ([`oracle_step`]); the Bell-diagonal recurrence
//! ([`recurrence_step`]) is kept as a cheaper cross-check.

mod bell;
mod oracle;
mod plan;

pub use bell::{recurrence_step, BellDiagonalState, BELL_ORDER};
pub use oracle::{bell_frame_rotation, bell_frame_unitary, oracle_step, pair_space, rx, FrameDirection};
pub use plan::{
    p_pur_from_steps, phi_plus, plan_sequence, purified_region, run_plan, PairSource, PurificationPlan, RegionPoint,
};
