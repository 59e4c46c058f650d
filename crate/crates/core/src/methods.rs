//! The three routes to the invariant measure behind one entry point, and a
//! pairwise comparison of their outputs.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::haar::{haar_net, ApproximantConfig, ConvergenceTrace};
use crate::hypergroup::FiniteHypergroup;
use crate::measure::{pair, Measure, PointFunction};
use crate::oracles::{invariance_residual, jewett_haar, solve_invariance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Walk the shrinking-bump chain.
    Net,
    /// Closed-form discrete weights.
    Jewett,
    /// Null space of the invariance system.
    Solve,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Net, Method::Jewett, Method::Solve];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Net => "net",
            Method::Jewett => "jewett",
            Method::Solve => "solve",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "net" => Ok(Method::Net),
            "jewett" => Ok(Method::Jewett),
            "solve" => Ok(Method::Solve),
            _ => Err(Error::InvalidConfig(format!("unknown method {s:?}"))),
        }
    }
}

/// Invariant measure by `method`, scaled so that `⟨f0, χ⟩ = 1`. The trace
/// is only produced by [`Method::Net`].
pub fn haar_measure(
    h: &FiniteHypergroup,
    method: Method,
    cfg: &ApproximantConfig,
) -> Result<(Measure, Option<ConvergenceTrace>)> {
    let (raw, trace) = match method {
        Method::Net => {
            let (chi, trace) = haar_net(h, cfg)?;
            (chi, Some(trace))
        }
        Method::Jewett => (jewett_haar(h)?, None),
        Method::Solve => (solve_invariance(h)?, None),
    };
    Ok((normalize_at(&raw, &cfg.f0)?, trace))
}

fn normalize_at(mu: &Measure, f0: &PointFunction) -> Result<Measure> {
    let z = pair(f0, mu)?;
    if z == 0.0 || !z.is_finite() {
        return Err(Error::ZeroNormalizer);
    }
    Ok(mu.scale(1.0 / z))
}

/// Largest `|a_t − b_t| / max(|a_t|, |b_t|)` over points (0 where both vanish).
pub fn max_relative_diff(a: &Measure, b: &Measure) -> Result<f64> {
    crate::measure::check_len(a.len(), b.len())?;
    Ok(a.weights()
        .iter()
        .zip(b.weights())
        .map(|(x, y)| {
            let scale = x.abs().max(y.abs());
            if scale == 0.0 {
                0.0
            } else {
                (x - y).abs() / scale
            }
        })
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodResult {
    pub method: Method,
    pub weights: Vec<f64>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairDiff {
    pub a: Method,
    pub b: Method,
    pub max_relative_diff: f64,
    pub max_abs_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub tol: f64,
    pub results: Vec<MethodResult>,
    pub pairs: Vec<PairDiff>,
    pub agree: bool,
}

/// Runs every method and compares them pairwise; `agree` iff every pair is
/// within `tol` in relative terms.
pub fn compare_methods(h: &FiniteHypergroup, cfg: &ApproximantConfig, tol: f64) -> Result<Comparison> {
    let mut results = Vec::new();
    for method in Method::ALL {
        let (chi, _) = haar_measure(h, method, cfg)?;
        results.push(MethodResult {
            method,
            residual: invariance_residual(h, &chi)?,
            weights: chi.into_weights(),
        });
    }
    let mut pairs = Vec::new();
    for i in 0..results.len() {
        for j in i + 1..results.len() {
            let a = Measure::new(results[i].weights.clone());
            let b = Measure::new(results[j].weights.clone());
            pairs.push(PairDiff {
                a: results[i].method,
                b: results[j].method,
                max_relative_diff: max_relative_diff(&a, &b)?,
                max_abs_diff: a.max_abs_diff(&b)?,
            });
        }
    }
    let agree = pairs.iter().all(|p| p.max_relative_diff <= tol);
    Ok(Comparison {
        tol,
        results,
        pairs,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family;

    #[test]
    fn methods_agree_on_s3() {
        let h = family::conjugacy_class(&family::GroupTable::symmetric(3)).unwrap();
        let cfg = ApproximantConfig::standard(&h).unwrap();
        let cmp = compare_methods(&h, &cfg, 1e-10).unwrap();
        assert!(cmp.agree, "{cmp:?}");
        assert_eq!(cmp.pairs.len(), 3);
        for r in &cmp.results {
            assert!(r.residual < 1e-12);
        }
    }

    #[test]
    fn normalization_follows_f0() {
        let h = family::theta2(0.5).unwrap();
        let cfg = ApproximantConfig::standard(&h)
            .unwrap()
            .with_f0(PointFunction::point_indicator(2, 0));
        for m in Method::ALL {
            let (chi, trace) = haar_measure(&h, m, &cfg).unwrap();
            assert!((chi.weight(0) - 1.0).abs() < 1e-14 && (chi.weight(1) - 2.0).abs() < 1e-13);
            assert_eq!(trace.is_some(), m == Method::Net);
        }
    }

    #[test]
    fn parse_methods() {
        for m in Method::ALL {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
        assert!("power".parse::<Method>().is_err());
    }

    #[test]
    fn relative_diff() {
        let a = Measure::new(vec![1.0, 0.0, 2.0]);
        let b = Measure::new(vec![1.0, 0.0, 1.0]);
        assert_eq!(max_relative_diff(&a, &b).unwrap(), 0.5);
    }
}
