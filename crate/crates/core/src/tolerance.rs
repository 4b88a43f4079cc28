// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Numerical tolerances shared across the crate.
//!
//! Three tiers are kept apart: structural invariants of matrices (pure
//! round-off), agreement between the unraveling engine and the closed-form
//! efficiency expressions (integration error), and regression against
//! published benchmark figures (which are rounded to two digits).

/// Hermiticity, positivity floor, trace bounds, superoperator identities.
pub const STRUCTURAL: f64 = 1e-10;

/// Engine against closed-form expressions.
pub const ENGINE: f64 = 1e-8;

/// Relative slack used when a published figure carries two significant digits.
pub const BENCHMARK_RELATIVE: f64 = 1e-2;

/// Probability below which conditioning is refused.
pub const NULL_EVENT: f64 = 1e-15;

/// Returns true when `value` agrees with `quoted` to the precision at which
/// `quoted` was printed: the difference is smaller than one unit in its last
/// significant digit.
///
/// `agrees_to_digits(1.499e-3, 1.5e-3, 2)` holds; so does
/// `agrees_to_digits(4.988e-8, 4.9e-8, 2)`, since printed figures are
/// sometimes truncated rather than rounded.
pub fn agrees_to_digits(value: f64, quoted: f64, digits: u32) -> bool {
    if quoted == 0.0 {
        return value == 0.0;
    }
    let exponent = quoted.abs().log10().floor() as i32;
    let unit = 10f64.powi(exponent - digits as i32 + 1);
    (value - quoted).abs() < unit
}
