//! Measures and functions on the finite point set `0..n`.
//!
//! Both are dense vectors of reals. A [`Measure`] may be signed; the
//! invariant-measure machinery checks [`Measure::is_nonnegative`] where it
//! needs positivity.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// A set of point indices.
pub type PointSet = BTreeSet<usize>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

fn support_of(v: &[f64], threshold: f64) -> PointSet {
    v.iter()
        .enumerate()
        .filter(|(_, x)| x.abs() > threshold)
        .map(|(i, _)| i)
        .collect()
}

/// A real (signed) measure: one weight per point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Measure {
    w: Vec<f64>,
}

impl Measure {
    pub fn new(w: Vec<f64>) -> Self {
        Self { w }
    }

    pub fn zero(n: usize) -> Self {
        Self { w: vec![0.0; n] }
    }

    /// The point mass at `s`.
    pub fn dirac(n: usize, s: usize) -> Self {
        let mut w = vec![0.0; n];
        w[s] = 1.0;
        Self { w }
    }

    pub fn uniform(n: usize) -> Self {
        Self { w: vec![1.0; n] }
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }

    pub fn into_weights(self) -> Vec<f64> {
        self.w
    }

    pub fn weight(&self, t: usize) -> f64 {
        self.w[t]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.w.iter().all(|&x| x >= 0.0)
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.w.iter().all(|&x| x > 0.0)
    }

    /// Total variation `Σ |w_t|`.
    pub fn norm(&self) -> f64 {
        self.w.iter().map(|x| x.abs()).sum()
    }

    /// Total mass `Σ w_t`, i.e. the pairing with `1_Q`.
    pub fn total(&self) -> f64 {
        self.w.iter().sum()
    }

    pub fn support(&self) -> PointSet {
        support_of(&self.w, 0.0)
    }

    /// Support with a magnitude threshold, for numerically computed measures.
    pub fn support_above(&self, threshold: f64) -> PointSet {
        support_of(&self.w, threshold)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            w: self.w.iter().map(|x| x * k).collect(),
        }
    }

    /// The measure `f µ` with weights `f(t) w_t`.
    pub fn weighted_by(&self, f: &PointFunction) -> Result<Self> {
        check_len(self.len(), f.len())?;
        Ok(Self {
            w: self.w.iter().zip(f.values()).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_len(self.len(), other.len())?;
        Ok(Self {
            w: self.w.iter().zip(&other.w).map(|(a, b)| a + b).collect(),
        })
    }

    /// Largest absolute difference between weights.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_len(self.len(), other.len())?;
        Ok(self
            .w
            .iter()
            .zip(&other.w)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

/// A real-valued function on the point set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointFunction {
    v: Vec<f64>,
}

impl PointFunction {
    pub fn new(v: Vec<f64>) -> Self {
        Self { v }
    }

    pub fn zero(n: usize) -> Self {
        Self { v: vec![0.0; n] }
    }

    /// The constant function `1_Q`.
    pub fn ones(n: usize) -> Self {
        Self { v: vec![1.0; n] }
    }

    pub fn indicator(n: usize, set: &PointSet) -> Self {
        let mut v = vec![0.0; n];
        for &t in set {
            v[t] = 1.0;
        }
        Self { v }
    }

    pub fn point_indicator(n: usize, t: usize) -> Self {
        let mut v = vec![0.0; n];
        v[t] = 1.0;
        Self { v }
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.v
    }

    pub fn into_values(self) -> Vec<f64> {
        self.v
    }

    pub fn value(&self, t: usize) -> f64 {
        self.v[t]
    }

    pub fn support(&self) -> PointSet {
        support_of(&self.v, 0.0)
    }

    /// Sup-norm `max |v_t|`.
    pub fn sup_norm(&self) -> f64 {
        self.v.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    /// Member of 𝒦₊.
    pub fn is_nonnegative(&self) -> bool {
        self.v.iter().all(|&x| x >= 0.0)
    }

    /// Member of 𝒦*₊: nonnegative and not identically zero.
    pub fn is_positive_nonzero(&self) -> bool {
        self.is_nonnegative() && self.v.iter().any(|&x| x > 0.0)
    }

    /// Nonnegative with support inside `set`.
    pub fn is_supported_in(&self, set: &PointSet) -> bool {
        self.is_nonnegative() && self.support().is_subset(set)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            v: self.v.iter().map(|x| x * k).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_len(self.len(), other.len())?;
        Ok(Self {
            v: self.v.iter().zip(&other.v).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.sup_norm())
    }
}

/// The pairing `⟨f, µ⟩ = Σ_t f(t) w_t`.
pub fn pair(f: &PointFunction, mu: &Measure) -> Result<f64> {
    check_len(f.len(), mu.len())?;
    Ok(f.values().iter().zip(mu.weights()).map(|(a, b)| a * b).sum())
}
