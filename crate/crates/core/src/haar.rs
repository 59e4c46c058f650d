//! Invariant measures as limits of bump-function approximants.
//!
//! For a strictly positive reference measure `µ₀` and a bump `g` around the
//! identity, the approximant `χ̃_g = µ₀ / (µ₀ ∗ g)` becomes left invariant
//! as the support of `g` shrinks to `{e}`. On a finite hypergroup `{e}` is
//! itself a neighborhood, so walking a [`ShrinkingChain`] down to the
//! indicator `1_{e}` reaches the limit exactly, and every diagnostic along
//! the way (the approximate-identity gap, the sandwich ratio, the two-sided
//! bounds) can be evaluated and recorded in a [`ConvergenceTrace`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergroup::FiniteHypergroup;
use crate::measure::{check_len, pair, Measure, PointFunction, PointSet};
use crate::oracles::invariance_residual;

/// Invariance residual below which a net output is accepted.
pub const DEFAULT_CERTIFY_THRESHOLD: f64 = 1e-10;
/// Cauchy tolerance on successive probe values.
pub const DEFAULT_CONV_TOL: f64 = 1e-12;

/// `(g + ǧ) / 2`.
pub fn symmetrize(h: &FiniteHypergroup, g: &PointFunction) -> Result<PointFunction> {
    let gc = h.involute_function(g)?;
    Ok(PointFunction::new(
        g.values()
            .iter()
            .zip(gc.values())
            .map(|(a, b)| 0.5 * (a + b))
            .collect(),
    ))
}

/// `χ̃_g = µ₀ / (µ₀ ∗ g)`, weight by weight.
pub fn approximant(h: &FiniteHypergroup, mu0: &Measure, g: &PointFunction) -> Result<Measure> {
    check_len(h.n(), mu0.len())?;
    let denom = h.convolve_measure_function(mu0, g)?;
    let w = mu0
        .weights()
        .iter()
        .zip(denom.values())
        .enumerate()
        .map(|(t, (&m, &d))| {
            if d > 0.0 {
                Ok(m / d)
            } else {
                Err(Error::ZeroDenominator { point: t, value: d })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Measure::new(w))
}

/// `χ_g = χ̃_g / ⟨f0, χ̃_g⟩`, so that `χ_g(f0) = 1`.
pub fn normalized_approximant(
    h: &FiniteHypergroup,
    mu0: &Measure,
    f0: &PointFunction,
    g: &PointFunction,
) -> Result<Measure> {
    let raw = approximant(h, mu0, g)?;
    normalize_at(&raw, f0)
}

fn normalize_at(raw: &Measure, f0: &PointFunction) -> Result<Measure> {
    let z = pair(f0, raw)?;
    if z == 0.0 || !z.is_finite() {
        return Err(Error::ZeroNormalizer);
    }
    Ok(raw.scale(1.0 / z))
}

/// `‖f − (f χ̃_g) ∗ g‖`, the sup-norm defect of `g` as an approximate
/// identity against the reweighted measure.
pub fn main_identity_gap(
    h: &FiniteHypergroup,
    mu0: &Measure,
    g: &PointFunction,
    f: &PointFunction,
) -> Result<f64> {
    let chi = approximant(h, mu0, g)?;
    identity_gap_for(h, &chi, g, f)
}

fn identity_gap_for(
    h: &FiniteHypergroup,
    chi: &Measure,
    g: &PointFunction,
    f: &PointFunction,
) -> Result<f64> {
    let weighted = chi.weighted_by(f)?;
    let smoothed = h.convolve_measure_function(&weighted, g)?;
    f.max_abs_diff(&smoothed)
}

/// `⟨f, µ ∗ χ̃_g⟩ / (‖µ‖ χ̃_g(f))`; tends to 1 as the bump shrinks.
pub fn sandwich_ratio(
    h: &FiniteHypergroup,
    mu0: &Measure,
    g: &PointFunction,
    f: &PointFunction,
    mu: &Measure,
) -> Result<f64> {
    if !mu.is_nonnegative() || mu.norm() == 0.0 {
        return Err(Error::InvalidConfig("mu must be nonnegative and nonzero".into()));
    }
    let chi = approximant(h, mu0, g)?;
    sandwich_ratio_for(h, &chi, f, mu)
}

fn sandwich_ratio_for(
    h: &FiniteHypergroup,
    chi: &Measure,
    f: &PointFunction,
    mu: &Measure,
) -> Result<f64> {
    let denom = mu.norm() * pair(f, chi)?;
    if denom == 0.0 {
        return Err(Error::ZeroDenominator { point: usize::MAX, value: 0.0 });
    }
    Ok(pair(f, &h.convolve_measures(mu, chi)?)? / denom)
}

/// Two-sided bounds `a_f < χ_g(f) < b_f` from dominating measures
/// `f < µ₁ ∗ f0` and `f0 < µ₂ ∗ f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundsCertificate {
    pub a_f: f64,
    pub b_f: f64,
    pub value: f64,
    pub pass: bool,
}

/// The `g`-independent half of a bounds certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub a_f: f64,
    pub b_f: f64,
}

impl Bounds {
    pub fn new(h: &FiniteHypergroup, f: &PointFunction, f0: &PointFunction) -> Result<Self> {
        let mu1 = h.find_dominating_measure(f, f0)?;
        let mu2 = h.find_dominating_measure(f0, f)?;
        Ok(Self {
            a_f: 1.0 / (2.0 * mu2.norm()),
            b_f: 2.0 * mu1.norm(),
        })
    }

    pub fn certify(&self, value: f64) -> BoundsCertificate {
        BoundsCertificate {
            a_f: self.a_f,
            b_f: self.b_f,
            value,
            pass: self.a_f < value && value < self.b_f,
        }
    }
}

pub fn bounds_certificate(
    h: &FiniteHypergroup,
    cfg: &ApproximantConfig,
    g: &PointFunction,
    f: &PointFunction,
) -> Result<BoundsCertificate> {
    if !f.is_positive_nonzero() {
        return Err(Error::InvalidConfig("f must be nonnegative and nonzero".into()));
    }
    let bounds = Bounds::new(h, f, &cfg.f0)?;
    let chi = cfg.normalized_approximant(h, g)?;
    Ok(bounds.certify(pair(f, &chi)?))
}

/// Decreasing identity neighborhoods `U₀ ⊇ … ⊇ U_K = {e}` with symmetric
/// bumps `g_k` supported in `U_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShrinkingChain {
    neighborhoods: Vec<PointSet>,
    bumps: Vec<PointFunction>,
}

impl ShrinkingChain {
    pub fn new(
        h: &FiniteHypergroup,
        neighborhoods: Vec<PointSet>,
        bumps: Vec<PointFunction>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidChain(msg));
        let e = h.identity();
        if neighborhoods.is_empty() || neighborhoods.len() != bumps.len() {
            return bad("need one bump per neighborhood, and at least one".into());
        }
        for (k, (u, g)) in neighborhoods.iter().zip(&bumps).enumerate() {
            if !u.contains(&e) {
                return bad(format!("U_{k} misses the identity"));
            }
            if let Some(&t) = u.iter().find(|&&t| t >= h.n() || !u.contains(&h.inv(t))) {
                return bad(format!("U_{k} is not involution-stable at point {t}"));
            }
            if k > 0 && !u.is_subset(&neighborhoods[k - 1]) {
                return bad(format!("U_{k} is not contained in U_{}", k - 1));
            }
            check_len(h.n(), g.len())?;
            if !g.is_positive_nonzero() || !g.is_supported_in(u) {
                return bad(format!("g_{k} must be nonnegative, nonzero and supported in U_{k}"));
            }
            if g.value(e) <= 0.0 {
                return bad(format!("g_{k} vanishes at the identity"));
            }
            if h.involute_function(g)? != *g {
                return bad(format!("g_{k} is not symmetric"));
            }
        }
        let last = neighborhoods.last().expect("non-empty");
        if last.len() != 1 {
            return bad("final neighborhood must be {e}".into());
        }
        Ok(Self {
            neighborhoods,
            bumps,
        })
    }

    pub fn len(&self) -> usize {
        self.bumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bumps.is_empty()
    }

    pub fn neighborhoods(&self) -> &[PointSet] {
        &self.neighborhoods
    }

    pub fn bumps(&self) -> &[PointFunction] {
        &self.bumps
    }

    /// Same neighborhoods with every bump replaced by `bump(k, U_k)`,
    /// e.g. random symmetric bumps for scale-invariance checks.
    pub fn with_bumps<F>(&self, h: &FiniteHypergroup, mut bump: F) -> Result<Self>
    where
        F: FnMut(usize, &PointSet) -> PointFunction,
    {
        let bumps = self
            .neighborhoods
            .iter()
            .enumerate()
            .map(|(k, u)| bump(k, u))
            .collect();
        Self::new(h, self.neighborhoods.clone(), bumps)
    }
}

/// The default chain: start from all of `Q` and drop one involution orbit
/// `{t, ť}` at a time until only `e` is left. Without an explicit
/// `ordering` the orbits go in descending order of their smallest point;
/// with one, an orbit goes as soon as either member is listed.
pub fn canonical_chain(h: &FiniteHypergroup, ordering: Option<&[usize]>) -> Result<ShrinkingChain> {
    let n = h.n();
    let e = h.identity();
    let order: Vec<usize> = match ordering {
        Some(ord) => {
            let mut seen = vec![false; n];
            for &t in ord {
                if t >= n {
                    return Err(Error::InvalidOrdering(format!("point {t} out of range")));
                }
                if t == e {
                    return Err(Error::InvalidOrdering("ordering contains the identity".into()));
                }
                if std::mem::replace(&mut seen[t], true) {
                    return Err(Error::InvalidOrdering(format!("point {t} repeated")));
                }
            }
            if ord.len() != n - 1 {
                return Err(Error::InvalidOrdering(
                    "ordering must list every non-identity point".into(),
                ));
            }
            ord.to_vec()
        }
        None => {
            let mut reps: Vec<usize> = (0..n).filter(|&t| t != e && t <= h.inv(t)).collect();
            reps.sort_unstable_by(|a, b| b.cmp(a));
            reps
        }
    };
    let mut current: PointSet = (0..n).collect();
    let mut neighborhoods = vec![current.clone()];
    for t in order {
        if !current.contains(&t) {
            continue;
        }
        current.remove(&t);
        current.remove(&h.inv(t));
        neighborhoods.push(current.clone());
    }
    let bumps = neighborhoods
        .iter()
        .map(|u| symmetrize(h, &PointFunction::indicator(n, u)))
        .collect::<Result<Vec<_>>>()?;
    ShrinkingChain::new(h, neighborhoods, bumps)
}

/// Inputs to the approximant net.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproximantConfig {
    pub mu0: Measure,
    pub f0: PointFunction,
    pub chain: ShrinkingChain,
    pub conv_tol: f64,
    pub probes: Vec<PointFunction>,
    /// Largest invariance residual accepted for the final measure.
    pub certify_threshold: f64,
    /// Walk the whole chain instead of stopping once converged.
    pub exhaust_chain: bool,
}

/// Coordinate indicators followed by `1_Q`.
pub fn default_probes(n: usize) -> Vec<PointFunction> {
    (0..n)
        .map(|t| PointFunction::point_indicator(n, t))
        .chain(std::iter::once(PointFunction::ones(n)))
        .collect()
}

impl ApproximantConfig {
    /// Uniform `µ₀`, `f0 = 1_Q`, canonical chain and default probes.
    pub fn standard(h: &FiniteHypergroup) -> Result<Self> {
        let n = h.n();
        Ok(Self {
            mu0: Measure::uniform(n),
            f0: PointFunction::ones(n),
            chain: canonical_chain(h, None)?,
            conv_tol: DEFAULT_CONV_TOL,
            probes: default_probes(n),
            certify_threshold: DEFAULT_CERTIFY_THRESHOLD,
            exhaust_chain: false,
        })
    }

    pub fn with_mu0(mut self, mu0: Measure) -> Self {
        self.mu0 = mu0;
        self
    }

    pub fn with_f0(mut self, f0: PointFunction) -> Self {
        self.f0 = f0;
        self
    }

    pub fn exhausting(mut self) -> Self {
        self.exhaust_chain = true;
        self
    }

    pub fn check(&self, h: &FiniteHypergroup) -> Result<()> {
        let n = h.n();
        check_len(n, self.mu0.len())?;
        check_len(n, self.f0.len())?;
        if !self.mu0.is_strictly_positive() {
            return Err(Error::InvalidConfig("mu0 must be strictly positive".into()));
        }
        if !self.f0.is_positive_nonzero() {
            return Err(Error::InvalidConfig("f0 must be nonnegative and nonzero".into()));
        }
        if self.conv_tol.is_nan() || self.conv_tol <= 0.0 {
            return Err(Error::InvalidConfig("conv_tol must be positive".into()));
        }
        for p in &self.probes {
            check_len(n, p.len())?;
        }
        Ok(())
    }

    pub fn normalized_approximant(&self, h: &FiniteHypergroup, g: &PointFunction) -> Result<Measure> {
        normalized_approximant(h, &self.mu0, &self.f0, g)
    }
}

/// Diagnostics for one chain step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceStep {
    pub step: usize,
    pub neighborhood_size: usize,
    /// `χ_{g_k}(f)` per probe.
    pub probe_values: Vec<f64>,
    /// Approximate-identity gap per probe (nonnegative probes only, else NaN).
    pub gaps: Vec<f64>,
    /// Sandwich ratio furthest from 1 over probes and `µ = ε_s`.
    pub rho: f64,
    /// Bounds certificate per probe (`None` for probes outside 𝒦*₊).
    pub bounds: Vec<Option<BoundsCertificate>>,
    pub bounds_pass: bool,
    /// `max_f |χ_{g_k}(f) − χ_{g_{k−1}}(f)|`; `None` at the first step.
    pub cauchy_diff: Option<f64>,
    pub residual: f64,
}

impl TraceStep {
    pub fn max_gap(&self) -> f64 {
        self.gaps.iter().copied().filter(|x| !x.is_nan()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTrace {
    pub steps: Vec<TraceStep>,
}

impl ConvergenceTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// First step whose gap for probe `probe` is below `eps`.
    pub fn first_gap_index(&self, probe: usize, eps: f64) -> Option<usize> {
        self.steps.iter().position(|s| s.gaps[probe] < eps)
    }
}

/// Diagnostics of a single approximant against every probe.
pub fn step_diagnostics(
    h: &FiniteHypergroup,
    cfg: &ApproximantConfig,
    bounds: &[Option<Bounds>],
    step: usize,
    previous: Option<&[f64]>,
) -> Result<(Measure, TraceStep)> {
    let n = h.n();
    let g = &cfg.chain.bumps()[step];
    let raw = approximant(h, &cfg.mu0, g)?;
    let chi = normalize_at(&raw, &cfg.f0)?;

    let probe_values = cfg
        .probes
        .iter()
        .map(|f| pair(f, &chi))
        .collect::<Result<Vec<_>>>()?;
    let gaps = cfg
        .probes
        .iter()
        .map(|f| {
            if f.is_nonnegative() {
                identity_gap_for(h, &raw, g, f)
            } else {
                Ok(f64::NAN)
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let translates = (0..n)
        .map(|s| h.convolve_measures(&h.dirac(s), &raw))
        .collect::<Result<Vec<_>>>()?;
    let mut rho: f64 = 1.0;
    for f in cfg.probes.iter().filter(|f| f.is_positive_nonzero()) {
        let base = pair(f, &raw)?;
        for moved in &translates {
            let r = pair(f, moved)? / base;
            if (r - 1.0).abs() > (rho - 1.0).abs() {
                rho = r;
            }
        }
    }

    let certs: Vec<Option<BoundsCertificate>> = bounds
        .iter()
        .zip(&probe_values)
        .map(|(b, &v)| b.map(|b| b.certify(v)))
        .collect();
    let bounds_pass = certs.iter().flatten().all(|c| c.pass);

    let cauchy_diff = previous.map(|prev| {
        prev.iter()
            .zip(&probe_values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    });

    let residual = invariance_residual(h, &chi)?;
    Ok((
        chi,
        TraceStep {
            step,
            neighborhood_size: cfg.chain.neighborhoods()[step].len(),
            probe_values,
            gaps,
            rho,
            bounds: certs,
            bounds_pass,
            cauchy_diff,
            residual,
        },
    ))
}

/// Walks the chain, stopping once successive probe values agree within
/// `conv_tol` and the current measure is certified invariant (or at the
/// end of the chain). Returns the final `χ` with `χ(f0) = 1`.
pub fn haar_net(h: &FiniteHypergroup, cfg: &ApproximantConfig) -> Result<(Measure, ConvergenceTrace)> {
    cfg.check(h)?;
    let bounds = cfg
        .probes
        .iter()
        .map(|f| {
            if f.is_positive_nonzero() {
                Bounds::new(h, f, &cfg.f0).map(Some)
            } else {
                Ok(None)
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let mut steps: Vec<TraceStep> = Vec::with_capacity(cfg.chain.len());
    let mut chi = None;
    for k in 0..cfg.chain.len() {
        let previous = steps.last().map(|s| s.probe_values.as_slice());
        let (measure, step) = step_diagnostics(h, cfg, &bounds, k, previous)?;
        let done = !cfg.exhaust_chain
            && step.cauchy_diff.is_some_and(|d| d < cfg.conv_tol)
            && step.residual < cfg.certify_threshold;
        steps.push(step);
        chi = Some(measure);
        if done {
            break;
        }
    }
    let chi = chi.expect("chain is non-empty");
    let residual = steps.last().expect("chain is non-empty").residual;
    if residual.is_nan() || residual >= cfg.certify_threshold {
        return Err(Error::NotConverged {
            residual,
            threshold: cfg.certify_threshold,
        });
    }
    Ok((chi, ConvergenceTrace { steps }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family;

    fn set(v: &[usize]) -> PointSet {
        v.iter().copied().collect()
    }

    #[test]
    fn symmetrize_examples() {
        let z4 = family::cyclic(4).unwrap();
        let g = PointFunction::indicator(4, &set(&[0, 1]));
        let s = symmetrize(&z4, &g).unwrap();
        assert_eq!(s.values(), &[1.0, 0.5, 0.0, 0.5]);
        assert_eq!(symmetrize(&z4, &s).unwrap(), s);
        let th = family::theta2(0.5).unwrap();
        let g = PointFunction::new(vec![0.3, 2.0]);
        assert_eq!(symmetrize(&th, &g).unwrap(), g);
    }

    #[test]
    fn approximant_on_theta_half() {
        let h = family::theta2(0.5).unwrap();
        let chi = approximant(&h, &Measure::uniform(2), &PointFunction::point_indicator(2, 0)).unwrap();
        assert_eq!(chi.weights(), &[1.0, 2.0]);
        let g = PointFunction::new(vec![1.0, 0.7]);
        let a = approximant(&h, &Measure::new(vec![0.3, 2.0]), &g).unwrap();
        let b = approximant(&h, &Measure::new(vec![0.3, 2.0]), &g.scale(4.0)).unwrap();
        assert!(a.scale(0.25).max_abs_diff(&b).unwrap() < 1e-15);
    }

    #[test]
    fn approximant_uniform_on_cyclic() {
        let h = family::cyclic(5).unwrap();
        let chi = approximant(&h, &Measure::uniform(5), &PointFunction::point_indicator(5, 0)).unwrap();
        assert_eq!(chi.weights(), &[1.0; 5]);
    }

    #[test]
    fn approximant_rejects_vanishing_bump() {
        let h = family::theta2(0.5).unwrap();
        let err = approximant(&h, &Measure::uniform(2), &PointFunction::zero(2)).unwrap_err();
        assert!(matches!(err, Error::ZeroDenominator { .. }));
    }

    #[test]
    fn normalized_examples() {
        let h = family::theta2(0.5).unwrap();
        let g = PointFunction::point_indicator(2, 0);
        let chi = normalized_approximant(&h, &Measure::uniform(2), &PointFunction::ones(2), &g).unwrap();
        assert!((chi.weight(0) - 1.0 / 3.0).abs() < 1e-15);
        assert!((chi.weight(1) - 2.0 / 3.0).abs() < 1e-15);
        let chi = normalized_approximant(&h, &Measure::uniform(2), &PointFunction::point_indicator(2, 0), &g)
            .unwrap();
        assert_eq!(chi.weights(), &[1.0, 2.0]);
        let err = normalized_approximant(&h, &Measure::uniform(2), &PointFunction::zero(2), &g).unwrap_err();
        assert_eq!(err, Error::ZeroNormalizer);
    }

    #[test]
    fn chain_examples() {
        let th = family::theta2(0.5).unwrap();
        let chain = canonical_chain(&th, None).unwrap();
        assert_eq!(chain.neighborhoods(), &[set(&[0, 1]), set(&[0])]);
        assert_eq!(chain.bumps()[0].values(), &[1.0, 1.0]);
        assert_eq!(chain.bumps()[1].values(), &[1.0, 0.0]);

        let z4 = family::cyclic(4).unwrap();
        let chain = canonical_chain(&z4, None).unwrap();
        assert_eq!(chain.neighborhoods(), &[set(&[0, 1, 2, 3]), set(&[0, 1, 3]), set(&[0])]);

        let chain = canonical_chain(&z4, Some(&[3, 2, 1])).unwrap();
        assert_eq!(chain.neighborhoods(), &[set(&[0, 1, 2, 3]), set(&[0, 2]), set(&[0])]);
        assert_eq!(chain.bumps().last().unwrap(), &PointFunction::point_indicator(4, 0));

        assert!(canonical_chain(&z4, Some(&[3, 2])).is_err());
        assert!(canonical_chain(&z4, Some(&[3, 2, 0])).is_err());
        assert!(canonical_chain(&z4, Some(&[3, 3, 1])).is_err());
        assert!(canonical_chain(&z4, Some(&[3, 2, 9])).is_err());
    }

    #[test]
    fn chain_rejects_broken_invariants() {
        let z4 = family::cyclic(4).unwrap();
        let e = PointFunction::point_indicator(4, 0);
        // not involution-stable
        assert!(ShrinkingChain::new(&z4, vec![set(&[0, 1]), set(&[0])], vec![e.clone(), e.clone()]).is_err());
        // final neighborhood too big
        assert!(ShrinkingChain::new(&z4, vec![set(&[0, 2])], vec![e.clone()]).is_err());
        // asymmetric bump
        let g = PointFunction::new(vec![1.0, 1.0, 0.0, 0.5]);
        assert!(ShrinkingChain::new(
            &z4,
            vec![set(&[0, 1, 3]), set(&[0])],
            vec![g, e.clone()]
        )
        .is_err());
        // bump vanishing at e
        let g = PointFunction::new(vec![0.0, 1.0, 0.0, 1.0]);
        assert!(ShrinkingChain::new(&z4, vec![set(&[0, 1, 3]), set(&[0])], vec![g, e]).is_err());
    }

    #[test]
    fn identity_gap_examples() {
        let h = family::theta2(0.5).unwrap();
        let mu0 = Measure::uniform(2);
        let e = PointFunction::point_indicator(2, 0);
        for f in [PointFunction::new(vec![1.0, 0.0]), PointFunction::new(vec![0.2, 3.0])] {
            assert!(main_identity_gap(&h, &mu0, &e, &f).unwrap() < 1e-15);
        }
        assert_eq!(main_identity_gap(&h, &mu0, &PointFunction::ones(2), &PointFunction::zero(2)).unwrap(), 0.0);
    }

    #[test]
    fn sandwich_examples() {
        let h = family::cosine_grid(5).unwrap();
        let mu0 = Measure::new(vec![1.0, 0.5, 2.0, 1.0, 3.0]);
        let f = PointFunction::new(vec![0.0, 1.0, 0.0, 2.0, 0.5]);
        let g = PointFunction::ones(5);
        let r = sandwich_ratio(&h, &mu0, &g, &f, &h.dirac(0)).unwrap();
        assert!((r - 1.0).abs() < 1e-15);
        let mu = Measure::new(vec![0.0, 1.0, 0.0, 0.0, 2.0]);
        let r = sandwich_ratio(&h, &mu0, &PointFunction::point_indicator(5, 0), &f, &mu).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
        assert!(sandwich_ratio(&h, &mu0, &g, &f, &Measure::zero(5)).is_err());
    }

    #[test]
    fn bounds_for_theta() {
        let h = family::theta2(0.5).unwrap();
        let cfg = ApproximantConfig::standard(&h).unwrap();
        let g = PointFunction::point_indicator(2, 0);
        let f = PointFunction::point_indicator(2, 1);
        let cert = bounds_certificate(&h, &cfg, &g, &f).unwrap();
        assert!((cert.value - 2.0 / 3.0).abs() < 1e-15);
        assert!(cert.pass, "{cert:?}");
        let big = bounds_certificate(&h, &cfg, &g, &f.scale(10.0)).unwrap();
        assert!((big.value - 10.0 * cert.value).abs() < 1e-12);
        assert!(big.pass);
        let own = bounds_certificate(&h, &cfg, &g, &cfg.f0).unwrap();
        assert!((own.value - 1.0).abs() < 1e-15 && own.pass);
    }

    #[test]
    fn net_on_theta_and_s3() {
        let h = family::theta2(0.5).unwrap();
        let (chi, trace) = haar_net(&h, &ApproximantConfig::standard(&h).unwrap()).unwrap();
        assert!((chi.weight(0) - 1.0 / 3.0).abs() < 1e-14);
        assert!((chi.weight(1) - 2.0 / 3.0).abs() < 1e-14);
        assert_eq!(trace.len(), 2);

        let s3 = family::conjugacy_class(&family::GroupTable::symmetric(3)).unwrap();
        let (chi, _) = haar_net(&s3, &ApproximantConfig::standard(&s3).unwrap()).unwrap();
        for (a, b) in chi.weights().iter().zip([1.0 / 6.0, 0.5, 1.0 / 3.0]) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn net_stops_early_for_groups() {
        let h = family::cyclic(8).unwrap();
        let (chi, trace) = haar_net(&h, &ApproximantConfig::standard(&h).unwrap()).unwrap();
        assert!(chi.weights().iter().all(|&w| (w - 0.125).abs() < 1e-15));
        assert_eq!(trace.len(), 2);
        let full = ApproximantConfig::standard(&h).unwrap().exhausting();
        let (_, trace) = haar_net(&h, &full).unwrap();
        assert_eq!(trace.len(), full.chain.len());
    }

    #[test]
    fn net_rejects_broken_tables() {
        // H_0 breaks H6: translates of 1_{0} never reach point 1, and the
        // terminal denominator vanishes there
        let h = family::theta2_unchecked(0.0).unwrap();
        let cfg = ApproximantConfig::standard(&h).unwrap();
        assert_eq!(haar_net(&h, &cfg).unwrap_err(), Error::NoCover { point: 1 });
        let last = cfg.chain.bumps().last().unwrap();
        assert!(matches!(approximant(&h, &cfg.mu0, last), Err(Error::ZeroDenominator { point: 1, .. })));

        // a Z4 table with one leaky row: the limit exists but is not invariant
        let z4 = family::cyclic(4).unwrap();
        let mut c = z4.dense().to_vec();
        c[(4 + 1) * 4 + 2] = 0.9;
        let bad = FiniteHypergroup::from_dense(4, 0, z4.involution().to_vec(), c).unwrap();
        let cfg = ApproximantConfig::standard(&bad).unwrap();
        assert!(matches!(haar_net(&bad, &cfg), Err(Error::NotConverged { .. })));
    }

    #[test]
    fn config_checks() {
        let h = family::theta2(0.5).unwrap();
        let cfg = ApproximantConfig::standard(&h).unwrap();
        assert!(cfg.clone().with_mu0(Measure::new(vec![1.0, 0.0])).check(&h).is_err());
        assert!(cfg.clone().with_f0(PointFunction::zero(2)).check(&h).is_err());
        let mut bad = cfg.clone();
        bad.conv_tol = 0.0;
        assert!(bad.check(&h).is_err());
        assert!(cfg.check(&h).is_ok());
    }
}
