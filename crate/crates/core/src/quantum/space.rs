// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

//! Tensor-product Hilbert spaces with labelled bases.
//!
//! A space is an ordered list of factors. Joint basis states are enumerated
//! row-major over the factors, so the first factor varies slowest: for
//! factors `[atom1: {e, g}, atom2: {e, g}]` the joint basis is
//! `|e,e⟩, |e,g⟩, |g,e⟩, |g,g⟩` with indices 0..4.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One tensor factor with a name and a label per basis state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    name: String,
    labels: Vec<String>,
}

impl Factor {
    pub fn new(name: impl Into<String>, labels: &[&str]) -> Self {
        assert!(!labels.is_empty(), "a factor needs at least one basis state");
        Self {
            name: name.into(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Effective two-level emitter: `e` (index 0), `g` (index 1).
    pub fn two_level(name: impl Into<String>) -> Self {
        Self::new(name, &["e", "g"])
    }

    /// Λ-type atom: `e`, `g` and the common excited state `r`.
    pub fn lambda(name: impl Into<String>) -> Self {
        Self::new(name, &["e", "g", "r"])
    }

    /// Cavity mode truncated to zero or one photon.
    pub fn cavity(name: impl Into<String>) -> Self {
        Self::new(name, &["0", "1"])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel {
                factor: self.name.clone(),
                label: label.to_string(),
            })
    }
}

/// Ordered tensor product of [`Factor`]s.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertSpace {
    factors: Vec<Factor>,
}

impl HilbertSpace {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::invalid("a Hilbert space needs at least one factor"));
        }
        Ok(Self { factors })
    }

    pub fn single(factor: Factor) -> Self {
        Self { factors: vec![factor] }
    }

    /// Concatenates the factor lists of several spaces, in order.
    pub fn product<'a>(spaces: impl IntoIterator<Item = &'a HilbertSpace>) -> Result<Self> {
        Self::new(spaces.into_iter().flat_map(|s| s.factors.iter().cloned()).collect())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn n_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(Factor::dim).collect()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(Factor::dim).product()
    }

    /// The space spanned by the factors at `keep`, in ascending index order.
    pub fn subspace(&self, keep: &[usize]) -> Result<Self> {
        let keep = self.normalize_selection(keep)?;
        Self::new(keep.iter().map(|&k| self.factors[k].clone()).collect())
    }

    /// Joint index of the basis state with the given per-factor labels.
    pub fn basis_index(&self, labels: &[&str]) -> Result<usize> {
        if labels.len() != self.factors.len() {
            return Err(Error::mismatch(format!(
                "{} labels given for a space with {} factors",
                labels.len(),
                self.factors.len()
            )));
        }
        let mut index = 0;
        for (factor, label) in self.factors.iter().zip(labels) {
            index = index * factor.dim() + factor.index_of(label)?;
        }
        Ok(index)
    }

    /// Per-factor digits of a joint index.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.factors.len()];
        for (slot, factor) in digits.iter_mut().zip(&self.factors).rev() {
            *slot = index % factor.dim();
            index /= factor.dim();
        }
        digits
    }

    pub fn basis_labels(&self, index: usize) -> Vec<&str> {
        self.digits(index)
            .into_iter()
            .zip(&self.factors)
            .map(|(d, f)| f.labels[d].as_str())
            .collect()
    }

    /// Sorted, de-duplicated, range-checked factor selection.
    pub(crate) fn normalize_selection(&self, keep: &[usize]) -> Result<Vec<usize>> {
        if keep.is_empty() {
            return Err(Error::invalid("factor selection must not be empty"));
        }
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&k| k >= self.factors.len()) {
            return Err(Error::InvalidFactor {
                index: bad,
                factors: self.factors.len(),
            });
        }
        Ok(keep)
    }
}

impl fmt::Display for HilbertSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|fa| format!("{}[{}]", fa.name, fa.labels.join(",")))
            .collect();
        write!(f, "{}", parts.join(" ⊗ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_atoms() -> HilbertSpace {
        HilbertSpace::new(vec![Factor::two_level("atom1"), Factor::two_level("atom2")]).unwrap()
    }

    #[test]
    fn row_major_ordering() {
        let s = two_atoms();
        assert_eq!(s.dim(), 4);
        assert_eq!(s.basis_index(&["e", "e"]).unwrap(), 0);
        assert_eq!(s.basis_index(&["e", "g"]).unwrap(), 1);
        assert_eq!(s.basis_index(&["g", "e"]).unwrap(), 2);
        assert_eq!(s.basis_labels(3), vec!["g", "g"]);
    }

    #[test]
    fn digits_roundtrip() {
        let s = HilbertSpace::new(vec![Factor::lambda("a"), Factor::cavity("c"), Factor::two_level("b")]).unwrap();
        assert_eq!(s.dim(), 12);
        for i in 0..s.dim() {
            let labels = s.basis_labels(i);
            assert_eq!(s.basis_index(&labels).unwrap(), i);
        }
    }

    #[test]
    fn selection_errors() {
        let s = two_atoms();
        assert!(matches!(s.subspace(&[2]), Err(Error::InvalidFactor { index: 2, .. })));
        assert!(s.subspace(&[]).is_err());
        assert!(s.basis_index(&["e", "x"]).is_err());
        assert_eq!(s.subspace(&[1, 1]).unwrap().dim(), 2);
    }
}
