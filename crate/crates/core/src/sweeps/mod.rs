// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Parameter sweeps, threshold regions, benchmark presets, invariant suites
//! and the CSV/manifest output they share.
//!
//! Grid outputs are computed in parallel but always emitted in grid order,
//! so identical inputs give byte-identical rows.

mod benchmark;
mod check;
mod manifest;
mod regions;
mod sweep;
mod table;

pub use benchmark::{benchmark, preset, BenchmarkPreset, BenchmarkResult, FigureCheck, Reported, PRESET_IDS};
pub use check::{
    click_time_suite, engine_suite, fixed_point_deviation, oracle_deviation, purify_suite, run_check, CheckReport,
    CheckSuite, Metric,
};
pub use manifest::{manifest_path, sha256_hex, write_table, write_with_manifest, RunManifest};
pub use regions::{
    fidelity_edges, linspace, region_map, region_success_dominance, region_table, region_threshold_1cw,
    DominanceInterval, RegionRow, RegionSpec,
};
pub use sweep::{sweep, sweep_parameters, with_parameter, SweepSpec};
pub use table::{Table, Value};
