//! Seeded property suites for the convolution identities and for the
//! approximant diagnostics along a shrinking chain.
//!
//! Each suite returns a [`SuiteReport`] of named checks with the worst
//! deviation seen, so callers (tests, the CLI, the Python bindings) can
//! print or assert on them uniformly.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::family::FamilySpec;
use crate::haar::{
    approximant, canonical_chain, haar_net, normalized_approximant, step_diagnostics,
    ApproximantConfig, Bounds,
};
use crate::hypergroup::FiniteHypergroup;
use crate::measure::{pair, Measure, PointFunction, PointSet};
use crate::oracles::invariance_residual;

/// Tolerance for exact algebraic identities on unit-scale inputs.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Tolerance for invariance of the net output.
pub const INVARIANCE_TOL: f64 = 1e-10;
/// Windows `(1 − ε, 1 + ε)` swept by the sandwich suite.
pub const SANDWICH_EPSILONS: [f64; 3] = [0.5, 0.1, 0.01];
/// Scale factors for the bump scale-invariance check.
pub const BUMP_SCALES: [f64; 3] = [0.5, 2.0, 10.0];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub worst: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_string(),
            checks: Vec::new(),
        }
    }

    /// Records a deviation that must stay at or below `tol`.
    fn deviation(&mut self, name: &str, worst: f64, tol: f64) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            worst,
            tol,
            pass: worst <= tol,
        });
    }

    /// Records a yes/no property; `worst` carries a diagnostic value.
    fn flag(&mut self, name: &str, worst: f64, pass: bool) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            worst,
            tol: 0.0,
            pass,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Signed measure with `‖µ‖ = 1`.
pub fn random_signed_measure<R: Rng>(rng: &mut R, n: usize) -> Measure {
    let mu = Measure::new((0..n).map(|_| rng.random_range(-1.0..1.0)).collect());
    let norm = mu.norm();
    if norm == 0.0 {
        Measure::dirac(n, 0)
    } else {
        mu.scale(1.0 / norm)
    }
}

/// Nonnegative measure with `‖µ‖ = 1`, sometimes sparse.
pub fn random_positive_measure<R: Rng>(rng: &mut R, n: usize) -> Measure {
    let keep = rng.random_range(0.2..1.0);
    let mut w: Vec<f64> = (0..n)
        .map(|_| if rng.random::<f64>() < keep { rng.random::<f64>() } else { 0.0 })
        .collect();
    if w.iter().all(|&x| x == 0.0) {
        w[rng.random_range(0..n)] = 1.0;
    }
    let total: f64 = w.iter().sum();
    Measure::new(w.into_iter().map(|x| x / total).collect())
}

/// Function with values in `[−1, 1]`.
pub fn random_function<R: Rng>(rng: &mut R, n: usize) -> PointFunction {
    PointFunction::new((0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
}

/// Symmetric bump supported in `u`, positive at the identity.
pub fn random_bump<R: Rng>(rng: &mut R, h: &FiniteHypergroup, u: &PointSet) -> PointFunction {
    let mut v = vec![0.0; h.n()];
    for &t in u {
        let t_inv = h.inv(t);
        if t <= t_inv {
            let x = rng.random_range(0.05..2.0);
            v[t] = x;
            v[t_inv] = x;
        }
    }
    PointFunction::new(v)
}

/// Strictly positive reference measure.
pub fn random_reference<R: Rng>(rng: &mut R, n: usize) -> Measure {
    Measure::new((0..n).map(|_| rng.random_range(0.01..5.0)).collect())
}

/// A random `theta2` or two-factor product instance.
pub fn random_family<R: Rng>(rng: &mut R) -> FamilySpec {
    let theta = |rng: &mut R| FamilySpec::Theta2(rng.random_range(0.01..=1.0));
    match rng.random_range(0..3) {
        0 => theta(rng),
        1 => FamilySpec::product(theta(rng), theta(rng)),
        _ => FamilySpec::product(FamilySpec::Cyclic(rng.random_range(2..6)), theta(rng)),
    }
}

/// Involution and convolution identities on random `(µ, ν, σ, f)`:
///
/// - `(µ∗f)ˇ = f̌∗µ̌`, `(f∗µ)ˇ = µ̌∗f̌`, `⟨µ∗f, ν⟩ = ⟨ν∗f̌, µ⟩`;
/// - `⟨µ∗f, σ⟩ = ⟨f, µ̌∗σ⟩`, `⟨f∗µ, σ⟩ = ⟨f, σ∗µ̌⟩`,
///   `(µ∗ν)∗f = µ∗(ν∗f)`, `f∗(µ∗ν) = (f∗µ)∗ν`.
pub fn identity_suite<R: Rng>(h: &FiniteHypergroup, rng: &mut R, trials: usize) -> Result<SuiteReport> {
    let n = h.n();
    let mut worst = [0.0f64; 7];
    for _ in 0..trials {
        let mu = random_signed_measure(rng, n);
        let nu = random_signed_measure(rng, n);
        let sigma = random_signed_measure(rng, n);
        let f = random_function(rng, n);
        let mu_c = h.involute_measure(&mu)?;
        let f_c = h.involute_function(&f)?;
        let mu_f = h.convolve_measure_function(&mu, &f)?;
        let f_mu = h.convolve_function_measure(&f, &mu)?;

        let devs = [
            h.involute_function(&mu_f)?
                .max_abs_diff(&h.convolve_function_measure(&f_c, &mu_c)?)?,
            h.involute_function(&f_mu)?
                .max_abs_diff(&h.convolve_measure_function(&mu_c, &f_c)?)?,
            (pair(&mu_f, &nu)? - pair(&h.convolve_measure_function(&nu, &f_c)?, &mu)?).abs(),
            (pair(&mu_f, &sigma)? - pair(&f, &h.convolve_measures(&mu_c, &sigma)?)?).abs(),
            (pair(&f_mu, &sigma)? - pair(&f, &h.convolve_measures(&sigma, &mu_c)?)?).abs(),
            h.convolve_measure_function(&h.convolve_measures(&mu, &nu)?, &f)?
                .max_abs_diff(&h.convolve_measure_function(&mu, &h.convolve_measure_function(&nu, &f)?)?)?,
            h.convolve_function_measure(&f, &h.convolve_measures(&mu, &nu)?)?
                .max_abs_diff(&h.convolve_function_measure(&f_mu, &nu)?)?,
        ];
        for (w, d) in worst.iter_mut().zip(devs) {
            *w = w.max(d);
        }
    }
    let names = [
        "(mu*f)^ = f^*mu^",
        "(f*mu)^ = mu^*f^",
        "<mu*f,nu> = <nu*f^,mu>",
        "<mu*f,sigma> = <f,mu^*sigma>",
        "<f*mu,sigma> = <f,sigma*mu^>",
        "(mu*nu)*f = mu*(nu*f)",
        "f*(mu*nu) = (f*mu)*nu",
    ];
    let mut report = SuiteReport::new("convolution identities");
    for (name, w) in names.iter().zip(worst) {
        report.deviation(name, w, IDENTITY_TOL);
    }
    Ok(report)
}

/// Measure-algebra laws: associativity, `(µ∗ν)ˇ = ν̌∗µ̌`, probability
/// preservation, and support composition for nonnegative measures.
pub fn algebra_suite<R: Rng>(h: &FiniteHypergroup, rng: &mut R, trials: usize) -> Result<SuiteReport> {
    let n = h.n();
    let (mut assoc, mut anti, mut mass) = (0.0f64, 0.0f64, 0.0f64);
    let mut support_ok = true;
    for _ in 0..trials {
        let mu = random_positive_measure(rng, n);
        let nu = random_positive_measure(rng, n);
        let sigma = random_positive_measure(rng, n);
        let left = h.convolve_measures(&h.convolve_measures(&mu, &nu)?, &sigma)?;
        let right = h.convolve_measures(&mu, &h.convolve_measures(&nu, &sigma)?)?;
        assoc = assoc.max(left.max_abs_diff(&right)?);

        let prod = h.convolve_measures(&mu, &nu)?;
        let flipped = h.convolve_measures(&h.involute_measure(&nu)?, &h.involute_measure(&mu)?)?;
        anti = anti.max(h.involute_measure(&prod)?.max_abs_diff(&flipped)?);
        mass = mass.max((prod.total() - 1.0).abs());

        let composed = h.support_product(&mu.support(), &nu.support())?;
        support_ok &= prod.support_above(0.0) == composed;
    }
    let mut report = SuiteReport::new("measure algebra");
    report.deviation("associativity", assoc, n as f64 * h.tol());
    report.deviation("(mu*nu)^ = nu^*mu^", anti, IDENTITY_TOL);
    report.deviation("probability preserved", mass, IDENTITY_TOL);
    report.flag("S(mu*nu) = S(mu)S(nu)", 0.0, support_ok);
    Ok(report)
}

/// Exhaustive check that `S(µ∗f) = S(µ)·S(f)` and `S(f∗µ) = S(f)·S(µ)`
/// for nonnegative `µ`, `f`, over all point-mass `µ` and indicator `f`
/// of single points.
pub fn support_orientation(h: &FiniteHypergroup) -> Result<bool> {
    let n = h.n();
    for s in 0..n {
        let mu = h.dirac(s);
        for t in 0..n {
            let f = PointFunction::point_indicator(n, t);
            let (a, b) = (PointSet::from([s]), PointSet::from([t]));
            if h.convolve_measure_function(&mu, &f)?.support() != h.support_product(&a, &b)? {
                return Ok(false);
            }
            if h.convolve_function_measure(&f, &mu)?.support() != h.support_product(&b, &a)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn chain_config(h: &FiniteHypergroup) -> Result<ApproximantConfig> {
    Ok(ApproximantConfig::standard(h)?.exhausting())
}

/// Approximate-identity gap along the whole chain. The terminal bump
/// `1_{e}` must reproduce every probe exactly.
pub fn approximate_identity_suite(h: &FiniteHypergroup) -> Result<(SuiteReport, Vec<f64>)> {
    let cfg = chain_config(h)?;
    let (_, trace) = haar_net(h, &cfg)?;
    let gaps: Vec<f64> = trace.steps.iter().map(|s| s.max_gap()).collect();
    let terminal = *gaps.last().expect("chain is non-empty");
    let mut report = SuiteReport::new("approximate identity");
    report.deviation("terminal gap", terminal, IDENTITY_TOL);
    report.flag(
        "gap recorded per step",
        gaps.len() as f64,
        gaps.len() == cfg.chain.len(),
    );
    Ok((report, gaps))
}

/// Sandwich ratio `⟨f, µ∗χ̃_g⟩ / (‖µ‖ χ̃_g(f))`.
///
/// At the terminal bump the ratio is 1 for every nonnegative `µ`. Before
/// that, for each `ε` in [`SANDWICH_EPSILONS`], once both `f` and
/// `1_L`, `L = S(µ̌)·S(f)·U_k`, have approximate-identity gap below `ε`,
/// the ratio must stay inside `(1 − ε, 1 + ε)` from that step on.
pub fn sandwich_suite<R: Rng>(h: &FiniteHypergroup, rng: &mut R, trials: usize) -> Result<SuiteReport> {
    let n = h.n();
    let cfg = chain_config(h)?;
    let chain = &cfg.chain;
    let probes: Vec<&PointFunction> = cfg.probes.iter().filter(|f| f.is_positive_nonzero()).collect();
    let mut measures: Vec<Measure> = (0..n).map(|s| h.dirac(s)).collect();
    measures.extend((0..trials).map(|_| random_positive_measure(rng, n)));

    let raws = chain
        .bumps()
        .iter()
        .map(|g| approximant(h, &cfg.mu0, g))
        .collect::<Result<Vec<_>>>()?;
    let last = raws.len() - 1;

    let gap = |k: usize, f: &PointFunction| -> Result<f64> {
        let smoothed = h.convolve_measure_function(&raws[k].weighted_by(f)?, &chain.bumps()[k])?;
        f.max_abs_diff(&smoothed)
    };
    // pairings[k][s][p] = ⟨f_p, ε_s ∗ χ̃_k⟩, so that ⟨f_p, µ ∗ χ̃_k⟩ is linear in µ
    let pairings = raws
        .iter()
        .map(|chi| {
            (0..n)
                .map(|s| {
                    let moved = h.convolve_measures(&h.dirac(s), chi)?;
                    probes.iter().map(|f| pair(f, &moved)).collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let bases = raws
        .iter()
        .map(|chi| probes.iter().map(|f| pair(f, chi)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let probe_gaps: Vec<Vec<f64>> = probes
        .iter()
        .map(|f| (0..raws.len()).map(|k| gap(k, f)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let max_eps = SANDWICH_EPSILONS.iter().copied().fold(0.0, f64::max);
    let mut cover_cache: HashMap<(usize, Vec<usize>), f64> = HashMap::new();

    let mut terminal: f64 = 0.0;
    let mut window_worst = vec![0.0f64; SANDWICH_EPSILONS.len()];
    let mut window_ok = vec![true; SANDWICH_EPSILONS.len()];
    let mut window_hits = vec![0usize; SANDWICH_EPSILONS.len()];

    for mu in &measures {
        let mu_c_support = h.involute_measure(mu)?.support();
        let norm = mu.norm();
        for (p, f) in probes.iter().enumerate() {
            let base = h.support_product(&mu_c_support, &f.support())?;
            let ratios: Vec<f64> = (0..raws.len())
                .map(|k| {
                    let moved: f64 = mu
                        .weights()
                        .iter()
                        .enumerate()
                        .map(|(s, w)| w * pairings[k][s][p])
                        .sum();
                    moved / (norm * bases[k][p])
                })
                .collect();
            terminal = terminal.max((ratios[last] - 1.0).abs());
            let mut cover_gaps = vec![f64::INFINITY; raws.len()];
            for (k, cg) in cover_gaps.iter_mut().enumerate() {
                if probe_gaps[p][k] >= max_eps {
                    continue;
                }
                let key = (k, base.iter().copied().collect::<Vec<_>>());
                *cg = match cover_cache.get(&key) {
                    Some(&v) => v,
                    None => {
                        let l = h.support_product(&base, &chain.neighborhoods()[k])?;
                        let v = gap(k, &PointFunction::indicator(n, &l))?;
                        cover_cache.insert(key, v);
                        v
                    }
                };
            }
            for (i, &eps) in SANDWICH_EPSILONS.iter().enumerate() {
                let start = (0..raws.len()).find(|&k| probe_gaps[p][k] < eps && cover_gaps[k] < eps);
                match start {
                    Some(k0) => {
                        if k0 < last {
                            window_hits[i] += 1;
                        }
                        for r in &ratios[k0..] {
                            let dev = (r - 1.0).abs();
                            window_worst[i] = window_worst[i].max(dev);
                            window_ok[i] &= dev < eps;
                        }
                    }
                    None => window_ok[i] = false,
                }
            }
        }
    }

    let mut report = SuiteReport::new("sandwich estimate");
    report.deviation("terminal |rho - 1|", terminal, IDENTITY_TOL);
    for (i, eps) in SANDWICH_EPSILONS.iter().enumerate() {
        report.flag(
            &format!("window eps={eps} (early starts: {})", window_hits[i]),
            window_worst[i],
            window_ok[i],
        );
    }
    Ok(report)
}

/// `a_f < χ_g(f) < b_f` at every chain step for every nonnegative probe.
pub fn bounds_suite(h: &FiniteHypergroup) -> Result<SuiteReport> {
    let cfg = chain_config(h)?;
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
    let mut all_pass = true;
    let mut tightest = f64::INFINITY;
    let mut previous: Option<Vec<f64>> = None;
    for k in 0..cfg.chain.len() {
        let (_, step) = step_diagnostics(h, &cfg, &bounds, k, previous.as_deref())?;
        for cert in step.bounds.iter().flatten() {
            all_pass &= cert.pass;
            tightest = tightest.min((cert.value - cert.a_f).min(cert.b_f - cert.value));
        }
        previous = Some(step.probe_values);
    }
    let mut report = SuiteReport::new("two-sided bounds");
    report.flag("a_f < chi_g(f) < b_f at every step", tightest, all_pass);
    Ok(report)
}

/// `χ_{k·g} = χ_g` for random symmetric bumps on every chain neighborhood.
pub fn scale_invariance_suite<R: Rng>(h: &FiniteHypergroup, rng: &mut R, trials: usize) -> Result<SuiteReport> {
    let chain = canonical_chain(h, None)?;
    let mu0 = Measure::uniform(h.n());
    let f0 = PointFunction::ones(h.n());
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let random = chain.with_bumps(h, |_, u| random_bump(rng, h, u))?;
        for g in random.bumps() {
            let base = normalized_approximant(h, &mu0, &f0, g)?;
            for k in BUMP_SCALES {
                let scaled = normalized_approximant(h, &mu0, &f0, &g.scale(k))?;
                worst = worst.max(base.max_abs_diff(&scaled)?);
            }
        }
    }
    let mut report = SuiteReport::new("bump scale invariance");
    report.deviation("chi_kg = chi_g", worst, IDENTITY_TOL);
    Ok(report)
}

/// The terminal approximant is `1 / c[ť][t][e]` whatever the strictly
/// positive reference measure.
pub fn reference_independence_suite<R: Rng>(
    h: &FiniteHypergroup,
    rng: &mut R,
    trials: usize,
) -> Result<SuiteReport> {
    let n = h.n();
    let e = PointFunction::point_indicator(n, h.identity());
    let exact = Measure::new((0..n).map(|t| 1.0 / h.c(h.inv(t), t, h.identity())).collect());
    let reference = approximant(h, &Measure::uniform(n), &e)?;
    let (mut spread, mut exactness) = (0.0f64, reference.max_abs_diff(&exact)?);
    for _ in 0..trials {
        let mu0 = random_reference(rng, n);
        let chi = approximant(h, &mu0, &e)?;
        spread = spread.max(chi.max_abs_diff(&reference)?);
        exactness = exactness.max(chi.max_abs_diff(&exact)?);
    }
    let mut report = SuiteReport::new("reference independence");
    report.deviation("terminal approximant independent of mu0", spread, IDENTITY_TOL);
    report.deviation("terminal approximant = 1/c[t^][t][e]", exactness, IDENTITY_TOL);
    Ok(report)
}

/// Output of the net: left invariant, full support above the
/// coordinate-indicator lower bounds, normalized at `f0`, and its
/// involution right invariant.
pub fn theorem_suite(h: &FiniteHypergroup) -> Result<SuiteReport> {
    let n = h.n();
    let cfg = ApproximantConfig::standard(h)?;
    let (chi, _) = haar_net(h, &cfg)?;
    let residual = invariance_residual(h, &chi)?;

    let mut lower_ok = true;
    let mut margin = f64::INFINITY;
    for t in 0..n {
        let b = Bounds::new(h, &PointFunction::point_indicator(n, t), &cfg.f0)?;
        lower_ok &= chi.weight(t) >= b.a_f && b.a_f > 0.0;
        margin = margin.min(chi.weight(t) - b.a_f);
    }

    let chi_c = h.involute_measure(&chi)?;
    let mut right: f64 = 0.0;
    let mut left: f64 = 0.0;
    for f in &cfg.probes {
        let base_c = pair(f, &chi_c)?;
        let base = pair(f, &chi)?;
        for s in 0..n {
            right = right.max((pair(&h.right_translate(f, s)?, &chi_c)? - base_c).abs());
            left = left.max((pair(&h.translate(s, f)?, &chi)? - base).abs());
        }
    }

    let mut report = SuiteReport::new("invariant measure");
    report.deviation("invariance residual", residual, INVARIANCE_TOL);
    report.deviation("<e_s*f, chi> = <f, chi>", left, INVARIANCE_TOL);
    report.deviation("<f*e_s, chi^> = <f, chi^>", right, INVARIANCE_TOL);
    report.flag("full support above a_f", margin, lower_ok && chi.is_strictly_positive());
    report.deviation("chi(f0) = 1", (pair(&cfg.f0, &chi)? - 1.0).abs(), IDENTITY_TOL);
    Ok(report)
}

/// Everything above, as run by the `check-lemmas` command.
pub fn all_suites(h: &FiniteHypergroup, seed: u64, trials: usize) -> Result<Vec<SuiteReport>> {
    let mut rng = rng(seed);
    Ok(vec![
        identity_suite(h, &mut rng, trials)?,
        algebra_suite(h, &mut rng, trials)?,
        approximate_identity_suite(h)?.0,
        sandwich_suite(h, &mut rng, trials.min(50))?,
        bounds_suite(h)?,
        scale_invariance_suite(h, &mut rng, trials.clamp(1, 5))?,
        reference_independence_suite(h, &mut rng, trials.min(20))?,
        theorem_suite(h)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family;

    #[test]
    fn suites_pass_on_small_families() {
        for spec in ["theta2:0.3", "cyclic:5", "conj-class:S3", "cosine-grid:4"] {
            let h = spec.parse::<FamilySpec>().unwrap().build().unwrap();
            for report in all_suites(&h, 7, 50).unwrap() {
                assert!(report.passed(), "{spec}: {report:?}");
            }
        }
    }

    #[test]
    fn support_orientation_matches_composition() {
        for spec in family::bundled_families().into_iter().take(9) {
            let h = spec.build().unwrap();
            assert!(support_orientation(&h).unwrap(), "{spec}");
        }
    }

    #[test]
    fn involuted_orientation_fails_on_cyclic() {
        // S(ε₁ ∗ 1_{0}) is {1}, while S(ε̌₁)·S(1_{0}) = {3}
        let z4 = family::cyclic(4).unwrap();
        let out = z4
            .convolve_measure_function(&z4.dirac(1), &PointFunction::point_indicator(4, 0))
            .unwrap();
        assert_eq!(out.support(), PointSet::from([1]));
        let flipped = z4.support_product(&PointSet::from([3]), &PointSet::from([0])).unwrap();
        assert_ne!(out.support(), flipped);
    }

    #[test]
    fn suites_catch_a_broken_table() {
        let z4 = family::cyclic(4).unwrap();
        let mut c = z4.dense().to_vec();
        c[(4 + 1) * 4 + 2] = 0.9;
        let bad = FiniteHypergroup::from_dense(4, 0, z4.involution().to_vec(), c).unwrap();
        let report = algebra_suite(&bad, &mut rng(1), 20).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn random_draws_have_unit_scale() {
        let mut r = rng(3);
        for _ in 0..20 {
            assert!((random_signed_measure(&mut r, 6).norm() - 1.0).abs() < 1e-15);
            let p = random_positive_measure(&mut r, 6);
            assert!(p.is_nonnegative() && (p.total() - 1.0).abs() < 1e-15);
            assert!(random_function(&mut r, 6).sup_norm() <= 1.0);
        }
        let h = family::cyclic(6).unwrap();
        let u: PointSet = [0, 1, 5].into_iter().collect();
        let g = random_bump(&mut r, &h, &u);
        assert_eq!(h.involute_function(&g).unwrap(), g);
        assert!(g.is_supported_in(&u) && g.value(0) > 0.0);
    }
}
