// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Matrix exponentials.
//!
//! [`expm`] forms the full propagator with nalgebra's scaling-and-squaring
//! Padé exponential. [`expm_action`] computes `exp(tA)v` without forming the
//! exponential, by a truncated Taylor series on `s` substeps; it is used for
//! the block-augmented click-counting generators, whose dimension makes a
//! dense exponential wasteful.

use nalgebra::DVector;

use super::operator::C64;
use super::superop::Superoperator;
use crate::error::{Error, Result};

/// `exp(t·S)`.
pub fn expm(s: &Superoperator, t: f64) -> Result<Superoperator> {
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTime(t));
    }
    Superoperator::new(s.space().clone(), (s.matrix() * C64::from(t)).exp())
}

/// A linear operator known only through its action.
pub trait LinearMap {
    fn dim(&self) -> usize;

    /// `out = A v`.
    fn apply(&self, v: &DVector<C64>, out: &mut DVector<C64>);

    /// An upper bound on the induced 1-norm.
    fn norm1_bound(&self) -> f64;

    /// `Tr A / dim`, subtracted before the series is summed.
    fn mean_diagonal(&self) -> C64 {
        C64::from(0.0)
    }
}

impl LinearMap for Superoperator {
    fn dim(&self) -> usize {
        self.matrix().nrows()
    }

    fn apply(&self, v: &DVector<C64>, out: &mut DVector<C64>) {
        self.matrix().mul_to(v, out);
    }

    fn norm1_bound(&self) -> f64 {
        column_norm1(self.matrix())
    }

    fn mean_diagonal(&self) -> C64 {
        self.matrix().trace() / C64::from(self.dim() as f64)
    }
}

pub(crate) fn column_norm1(m: &nalgebra::DMatrix<C64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Norm of a single Taylor substep; `e^θ` bounds the growth of partial sums.
const THETA: f64 = 2.0;
const MAX_TERMS: usize = 60;
const TERM_TOL: f64 = 1e-18;

/// `exp(t·A) v` by shifted, substepped Taylor summation.
pub fn expm_action<M: LinearMap + ?Sized>(a: &M, v: &DVector<C64>, t: f64) -> Result<DVector<C64>> {
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTime(t));
    }
    if v.len() != a.dim() {
        return Err(Error::mismatch(format!(
            "vector of length {} for a map of dimension {}",
            v.len(),
            a.dim()
        )));
    }
    if t == 0.0 {
        return Ok(v.clone());
    }
    let mu = a.mean_diagonal();
    let norm = (a.norm1_bound() + mu.norm()) * t;
    let steps = ((norm / THETA).ceil() as usize).max(1);
    let h = t / steps as f64;
    let eta = (mu * C64::from(h)).exp();

    let mut f = v.clone();
    let mut term = v.clone();
    let mut scratch = DVector::zeros(v.len());
    for _ in 0..steps {
        let mut b = f.clone();
        term.copy_from(&f);
        let mut previous_small = false;
        for k in 1..=MAX_TERMS {
            a.apply(&term, &mut scratch);
            scratch.axpy(-mu, &term, ONE_C);
            term.copy_from(&scratch);
            term *= C64::from(h / k as f64);
            b += &term;
            let small = inf_norm(&term) <= TERM_TOL * inf_norm(&b);
            if small && previous_small {
                break;
            }
            previous_small = small;
        }
        f = b * eta;
    }
    Ok(f)
}

const ONE_C: C64 = C64 { re: 1.0, im: 0.0 };

fn inf_norm(v: &DVector<C64>) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::testutil::{random_matrix, rng};
    use crate::quantum::{Factor, HilbertSpace};

    fn space(d: usize) -> HilbertSpace {
        let labels: Vec<String> = (0..d).map(|k| k.to_string()).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        HilbertSpace::single(Factor::new("q", &refs))
    }

    #[test]
    fn zero_generator_gives_identity() {
        let s = Superoperator::zeros(&space(2));
        assert_eq!(expm(&s, 3.0).unwrap(), Superoperator::identity(&space(2)));
        assert!(matches!(expm(&s, -1.0), Err(Error::NegativeTime(_))));
    }

    #[test]
    fn semigroup_property() {
        let mut r = rng(11);
        for _ in 0..5 {
            let s = Superoperator::new(space(3), random_matrix(&mut r, 9)).unwrap();
            let (t1, t2) = (0.37, 1.21);
            let lhs = expm(&s, t1).unwrap().compose(&expm(&s, t2).unwrap());
            let rhs = expm(&s, t1 + t2).unwrap();
            let scale = rhs.max_abs().max(1.0);
            assert!((lhs.matrix() - rhs.matrix()).camax() / scale < 1e-10);
        }
    }

    #[test]
    fn action_matches_dense_exponential() {
        let mut r = rng(12);
        for t in [0.0, 0.3, 2.5, 9.0] {
            let s = Superoperator::new(space(3), random_matrix(&mut r, 9)).unwrap();
            let v = DVector::from_fn(9, |k, _| C64::new(k as f64, 1.0));
            let dense = expm(&s, t).unwrap().apply_vec(&v);
            let action = expm_action(&s, &v, t).unwrap();
            let scale = inf_norm(&dense).max(1.0);
            assert!(inf_norm(&(dense - action)) / scale < 1e-11, "t = {t}");
        }
    }
}
