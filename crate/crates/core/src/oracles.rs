//! Ground truth for invariant measures, computed without the approximant
//! machinery: the closed-form discrete weights and a direct linear solve.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::hypergroup::FiniteHypergroup;
use crate::measure::{check_len, Measure};

/// Relative singular-value threshold below which a direction counts as null.
pub const NULLSPACE_GAP: f64 = 1e-8;

/// Unnormalized discrete Haar weights `1 / (ε_t ∗ ε_ť)({e})`.
pub fn jewett_haar(h: &FiniteHypergroup) -> Result<Measure> {
    let e = h.identity();
    let w = (0..h.n())
        .map(|t| {
            let mass = h.c(t, h.inv(t), e);
            if mass > 0.0 {
                Ok(1.0 / mass)
            } else {
                Err(Error::H6Violation { point: t, value: mass })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Measure::new(w))
}

/// `max_{s,u} |Σ_t c[š][t][u] χ_t − χ_u|`; zero iff `χ` is left invariant.
pub fn invariance_residual(h: &FiniteHypergroup, chi: &Measure) -> Result<f64> {
    check_len(h.n(), chi.len())?;
    let n = h.n();
    let mut worst: f64 = 0.0;
    let mut acc = vec![0.0; n];
    for s in 0..n {
        let si = h.inv(s);
        acc.copy_from_slice(chi.weights());
        acc.iter_mut().for_each(|x| *x = -*x);
        for (t, &w) in chi.weights().iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for &(u, x) in h.product_row(si, t) {
                acc[u] += x * w;
            }
        }
        worst = acc.iter().fold(worst, |m, x| m.max(x.abs()));
    }
    Ok(worst)
}

/// The operator of the invariance system: row `s*n + u` holds
/// `c[š][·][u] − δ_u`.
fn invariance_matrix(h: &FiniteHypergroup) -> DMatrix<f64> {
    let n = h.n();
    let mut a = DMatrix::zeros(n * n, n);
    for s in 0..n {
        let si = h.inv(s);
        for t in 0..n {
            for &(u, x) in h.product_row(si, t) {
                a[(s * n + u, t)] += x;
            }
        }
        for u in 0..n {
            a[(s * n + u, u)] -= 1.0;
        }
    }
    a
}

/// Invariant probability measure from the linear system
/// `Σ_t c[š][t][u] χ_t = χ_u`, with a one-dimensional null-space certificate.
pub fn solve_invariance(h: &FiniteHypergroup) -> Result<Measure> {
    let a = invariance_matrix(h);
    let svd = a.svd(false, true);
    let sv = &svd.singular_values;
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    let scale = sv.max().max(1.0);
    let null: Vec<usize> = (0..sv.len()).filter(|&i| sv[i] <= NULLSPACE_GAP * scale).collect();
    // n² ≥ n rows, so there are exactly n singular values
    if null.len() != 1 {
        return Err(Error::DegenerateNullspace { dim: null.len() });
    }
    let row = v_t.row(null[0]);
    let sum: f64 = row.iter().sum();
    if sum == 0.0 {
        return Err(Error::DegenerateNullspace { dim: 1 });
    }
    let w: Vec<f64> = row.iter().map(|x| x / sum).collect();
    let tol = h.tol();
    if let Some((point, &value)) = w.iter().enumerate().find(|(_, &x)| x < -tol) {
        return Err(Error::NegativeSolution { point, value });
    }
    Ok(Measure::new(w.into_iter().map(|x| x.max(0.0)).collect()))
}

/// Rescales to unit total mass.
pub fn normalize_total(mu: &Measure) -> Measure {
    mu.scale(1.0 / mu.total())
}
