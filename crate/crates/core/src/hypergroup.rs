//! Finite hypergroups given by structure constants.
//!
//! Points are `0..n`. The convolution of point masses is
//! `ε_s ∗ ε_t = Σ_u c[s][t][u] ε_u`; everything else (measure and function
//! convolutions, translates, supports) is derived from that tensor.

use crate::error::{Error, Result};
use crate::measure::{check_len, Measure, PointFunction, PointSet};

/// Default tolerance for axiom checks.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteHypergroup {
    n: usize,
    e: usize,
    inv: Vec<usize>,
    /// Dense `n*n*n` tensor, index `(s*n + t)*n + u`.
    c: Vec<f64>,
    /// Nonzero `(u, c[s][t][u])` per pair `s*n + t`.
    rows: Vec<Vec<(usize, f64)>>,
    tol: f64,
}

impl FiniteHypergroup {
    /// Builds a hypergroup from a dense `n³` tensor.
    ///
    /// Only shapes are checked here; axioms are checked by
    /// [`FiniteHypergroup::validate`] so that broken tables can still be
    /// loaded and inspected.
    pub fn from_dense(n: usize, e: usize, inv: Vec<usize>, c: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidHypergroup("empty point set".into()));
        }
        if e >= n {
            return Err(Error::IndexOutOfRange { index: e, n });
        }
        check_len(n, inv.len())?;
        check_len(n * n * n, c.len())?;
        let mut seen = vec![false; n];
        for &t in &inv {
            if t >= n {
                return Err(Error::IndexOutOfRange { index: t, n });
            }
            if std::mem::replace(&mut seen[t], true) {
                return Err(Error::InvalidHypergroup(format!(
                    "inv is not a permutation (point {t} repeated)"
                )));
            }
        }
        if c.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidHypergroup("non-finite structure constant".into()));
        }
        let rows = (0..n * n)
            .map(|st| {
                c[st * n..(st + 1) * n]
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0.0)
                    .map(|(u, &x)| (u, x))
                    .collect()
            })
            .collect();
        Ok(Self {
            n,
            e,
            inv,
            c,
            rows,
            tol: DEFAULT_TOL,
        })
    }

    /// Builds a hypergroup from sparse `(s, t, u, value)` entries; unlisted
    /// entries are zero and repeated entries are summed.
    pub fn from_entries<I>(n: usize, e: usize, inv: Vec<usize>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, f64)>,
    {
        let mut c = vec![0.0; n * n * n];
        for (s, t, u, x) in entries {
            for idx in [s, t, u] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, n });
                }
            }
            c[(s * n + t) * n + u] += x;
        }
        Self::from_dense(n, e, inv, c)
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.e
    }

    pub fn involution(&self) -> &[usize] {
        &self.inv
    }

    pub fn inv(&self, t: usize) -> usize {
        self.inv[t]
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// `c[s][t][u]`, the mass of `ε_s ∗ ε_t` at `u`.
    #[inline]
    pub fn c(&self, s: usize, t: usize, u: usize) -> f64 {
        self.c[(s * self.n + t) * self.n + u]
    }

    pub fn dense(&self) -> &[f64] {
        &self.c
    }

    /// Nonzero entries of `ε_s ∗ ε_t` as `(u, mass)`.
    #[inline]
    pub fn product_row(&self, s: usize, t: usize) -> &[(usize, f64)] {
        &self.rows[s * self.n + t]
    }

    /// Nonzero `(s, t, u, value)` entries in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, f64)> + '_ {
        (0..self.n * self.n).flat_map(move |st| {
            let (s, t) = (st / self.n, st % self.n);
            self.rows[st].iter().map(move |&(u, x)| (s, t, u, x))
        })
    }

    fn check_point(&self, t: usize) -> Result<()> {
        if t < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: t, n: self.n })
        }
    }

    pub fn dirac(&self, s: usize) -> Measure {
        Measure::dirac(self.n, s)
    }

    /// `µ ∗ ν` with weights `Σ_{s,t} µ_s ν_t c[s][t][·]`.
    pub fn convolve_measures(&self, mu: &Measure, nu: &Measure) -> Result<Measure> {
        check_len(self.n, mu.len())?;
        check_len(self.n, nu.len())?;
        let mut out = vec![0.0; self.n];
        for (s, &a) in mu.weights().iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (t, &b) in nu.weights().iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                let ab = a * b;
                for &(u, x) in self.product_row(s, t) {
                    out[u] += ab * x;
                }
            }
        }
        Ok(Measure::new(out))
    }

    /// `µ̌` with weights `w[inv[u]]`.
    pub fn involute_measure(&self, mu: &Measure) -> Result<Measure> {
        check_len(self.n, mu.len())?;
        Ok(Measure::new(
            self.inv.iter().map(|&i| mu.weight(i)).collect(),
        ))
    }

    /// `f̌(s) = f(inv[s])`.
    pub fn involute_function(&self, f: &PointFunction) -> Result<PointFunction> {
        check_len(self.n, f.len())?;
        Ok(PointFunction::new(
            self.inv.iter().map(|&i| f.value(i)).collect(),
        ))
    }

    /// `(µ ∗ f)(t) = ⟨f, µ̌ ∗ ε_t⟩ = Σ_s µ_s Σ_u c[š][t][u] f(u)`.
    pub fn convolve_measure_function(&self, mu: &Measure, f: &PointFunction) -> Result<PointFunction> {
        check_len(self.n, mu.len())?;
        check_len(self.n, f.len())?;
        let fv = f.values();
        let mut out = vec![0.0; self.n];
        for (s, &a) in mu.weights().iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let si = self.inv[s];
            for (t, o) in out.iter_mut().enumerate() {
                let acc: f64 = self.product_row(si, t).iter().map(|&(u, x)| x * fv[u]).sum();
                *o += a * acc;
            }
        }
        Ok(PointFunction::new(out))
    }

    /// `(f ∗ µ)(t) = ⟨f, ε_t ∗ µ̌⟩ = Σ_s µ_s Σ_u c[t][š][u] f(u)`.
    pub fn convolve_function_measure(&self, f: &PointFunction, mu: &Measure) -> Result<PointFunction> {
        check_len(self.n, mu.len())?;
        check_len(self.n, f.len())?;
        let fv = f.values();
        let mut out = vec![0.0; self.n];
        for (s, &a) in mu.weights().iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let si = self.inv[s];
            for (t, o) in out.iter_mut().enumerate() {
                let acc: f64 = self.product_row(t, si).iter().map(|&(u, x)| x * fv[u]).sum();
                *o += a * acc;
            }
        }
        Ok(PointFunction::new(out))
    }

    /// The left translate `ε_s ∗ f`.
    pub fn translate(&self, s: usize, f: &PointFunction) -> Result<PointFunction> {
        self.check_point(s)?;
        self.convolve_measure_function(&self.dirac(s), f)
    }

    /// The right translate `f ∗ ε_s`.
    pub fn right_translate(&self, f: &PointFunction, s: usize) -> Result<PointFunction> {
        self.check_point(s)?;
        self.convolve_function_measure(f, &self.dirac(s))
    }

    /// `A · B`, the union of `S(ε_a ∗ ε_b)` over `a ∈ A`, `b ∈ B`.
    pub fn support_product(&self, a: &PointSet, b: &PointSet) -> Result<PointSet> {
        for &t in a.iter().chain(b) {
            self.check_point(t)?;
        }
        let mut out = PointSet::new();
        for &s in a {
            for &t in b {
                out.extend(
                    self.product_row(s, t)
                        .iter()
                        .filter(|(_, x)| x.abs() > 0.0)
                        .map(|&(u, _)| u),
                );
            }
        }
        Ok(out)
    }

    /// A nonnegative measure `µ` with `f(t) < (µ ∗ f0)(t)` for every
    /// `t ∈ S(f)`.
    ///
    /// Greedy: each `t` in the support of `f` is covered by the translate
    /// `ε_s ∗ f0` that is largest at `t` (smallest `s` on ties), scaled so
    /// that it alone exceeds `f(t)` by one.
    pub fn find_dominating_measure(&self, f: &PointFunction, f0: &PointFunction) -> Result<Measure> {
        check_len(self.n, f.len())?;
        check_len(self.n, f0.len())?;
        if !f.is_nonnegative() {
            return Err(Error::InvalidConfig("f must be nonnegative".into()));
        }
        if !f0.is_positive_nonzero() {
            return Err(Error::InvalidConfig("f0 must be nonnegative and nonzero".into()));
        }
        let f0v = f0.values();
        let mut w = vec![0.0; self.n];
        for t in f.support() {
            let mut best = (0, 0.0);
            for s in 0..self.n {
                let si = self.inv[s];
                let val: f64 = self.product_row(si, t).iter().map(|&(u, x)| x * f0v[u]).sum();
                if val > best.1 {
                    best = (s, val);
                }
            }
            if best.1 <= 0.0 {
                return Err(Error::NoCover { point: t });
            }
            w[best.0] += (f.value(t) + 1.0) / best.1;
        }
        Ok(Measure::new(w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{self, FamilySpec};
    use crate::measure::pair;

    fn theta(th: f64) -> FiniteHypergroup {
        family::theta2(th).unwrap()
    }

    fn set(v: &[usize]) -> PointSet {
        v.iter().copied().collect()
    }

    #[test]
    fn s3_class_product() {
        let h = FamilySpec::ConjugacyClass(family::GroupTable::symmetric(3))
            .build()
            .unwrap();
        let out = h.convolve_measures(&h.dirac(1), &h.dirac(1)).unwrap();
        let expect = [1.0 / 3.0, 0.0, 2.0 / 3.0];
        for (a, b) in out.weights().iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn theta_product_reads_constants() {
        let h = theta(0.5);
        let out = h.convolve_measures(&h.dirac(1), &h.dirac(1)).unwrap();
        assert_eq!(out.weights(), &[0.5, 0.5]);
    }

    #[test]
    fn identity_is_unit() {
        let h = family::cyclic(5).unwrap();
        let mu = Measure::new(vec![0.1, -2.0, 0.0, 3.5, 1.0]);
        assert_eq!(h.convolve_measures(&h.dirac(0), &mu).unwrap(), mu);
        assert_eq!(h.convolve_measures(&mu, &h.dirac(0)).unwrap(), mu);
    }

    #[test]
    fn involutions() {
        let z4 = family::cyclic(4).unwrap();
        let mu = Measure::new(vec![0.0, 1.0, 0.0, 0.0]);
        assert_eq!(z4.involute_measure(&mu).unwrap().weights(), &[0.0, 0.0, 0.0, 1.0]);
        let f = PointFunction::new(vec![1.0, 2.0, 3.0, 4.0]);
        let fc = z4.involute_function(&f).unwrap();
        assert_eq!(fc.values(), &[1.0, 4.0, 3.0, 2.0]);
        assert_eq!(z4.involute_function(&fc).unwrap(), f);
        assert_eq!(z4.involute_measure(&z4.dirac(0)).unwrap(), z4.dirac(0));
        assert_eq!(
            z4.involute_function(&PointFunction::ones(4)).unwrap(),
            PointFunction::ones(4)
        );

        let h = theta(0.3);
        let mu = Measure::new(vec![0.2, 0.7]);
        assert_eq!(h.involute_measure(&mu).unwrap(), mu);
        let f = PointFunction::new(vec![3.0, -1.0]);
        assert_eq!(h.involute_function(&f).unwrap(), f);
    }

    #[test]
    fn measure_function_convolution_on_theta() {
        let h = theta(0.5);
        let f = PointFunction::new(vec![1.0, 0.0]);
        let left = h.convolve_measure_function(&h.dirac(1), &f).unwrap();
        // (ε₁∗f)(0) = c[1][0][0] = 0, (ε₁∗f)(1) = c[1][1][0] = 1/2
        assert_eq!(left.values(), &[0.0, 0.5]);
        let right = h.convolve_function_measure(&f, &h.dirac(1)).unwrap();
        assert_eq!(right.values(), &[0.0, 0.5]);
    }

    #[test]
    fn identity_translates_are_trivial() {
        let h = FamilySpec::ConjugacyClass(family::GroupTable::alternating(4))
            .build()
            .unwrap();
        let f = PointFunction::new(vec![1.0, -2.0, 0.5, 4.0]);
        assert_eq!(h.convolve_measure_function(&h.dirac(0), &f).unwrap(), f);
        assert_eq!(h.convolve_function_measure(&f, &h.dirac(0)).unwrap(), f);
    }

    #[test]
    fn cyclic_translate_shifts() {
        let z4 = family::cyclic(4).unwrap();
        let f = PointFunction::point_indicator(4, 0);
        // (ε₁∗f)(t) = f(t − 1)
        let g = z4.translate(1, &f).unwrap();
        assert_eq!(g.values(), &[0.0, 1.0, 0.0, 0.0]);
        assert!(z4.translate(4, &f).is_err());
    }

    #[test]
    fn support_products() {
        let z3 = family::cyclic(3).unwrap();
        assert_eq!(z3.support_product(&set(&[1]), &set(&[2])).unwrap(), set(&[0]));
        let h = theta(0.4);
        assert_eq!(h.support_product(&set(&[1]), &set(&[1])).unwrap(), set(&[0, 1]));
        let b = set(&[0, 2]);
        assert_eq!(z3.support_product(&set(&[0]), &b).unwrap(), b);
        assert!(z3.support_product(&set(&[3]), &b).is_err());
    }

    #[test]
    fn dominating_measure_certificates() {
        let h = theta(0.5);
        let f = PointFunction::new(vec![0.0, 1.0]);
        let f0 = PointFunction::point_indicator(2, 0);
        let mu = h.find_dominating_measure(&f, &f0).unwrap();
        assert!(mu.is_nonnegative());
        let cover = h.convolve_measure_function(&mu, &f0).unwrap();
        for t in f.support() {
            assert!(f.value(t) < cover.value(t));
        }

        let zero = h.find_dominating_measure(&PointFunction::zero(2), &f0).unwrap();
        assert_eq!(zero, Measure::zero(2));

        // translates of 1_Q are constant, so any cover dominates everywhere
        let g = PointFunction::new(vec![3.0, 0.5]);
        let mu = h.find_dominating_measure(&g, &PointFunction::ones(2)).unwrap();
        let cover = h.convolve_measure_function(&mu, &PointFunction::ones(2)).unwrap();
        assert!((0..2).all(|t| cover.value(t) > g.value(t)));
        assert!((pair(&PointFunction::ones(2), &mu).unwrap() - mu.norm()).abs() < 1e-15);
    }

    #[test]
    fn dominating_measure_reports_unreachable_points() {
        // Two disjoint copies of the trivial hypergroup glued without any
        // mixing: translates of 1_{0} never reach point 1.
        let h = FiniteHypergroup::from_entries(
            2,
            0,
            vec![0, 1],
            [(0, 0, 0, 1.0), (0, 1, 1, 1.0), (1, 0, 1, 1.0), (1, 1, 1, 1.0)],
        )
        .unwrap();
        let err = h
            .find_dominating_measure(&PointFunction::point_indicator(2, 1), &PointFunction::point_indicator(2, 0))
            .unwrap_err();
        assert_eq!(err, Error::NoCover { point: 1 });
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        assert!(FiniteHypergroup::from_dense(2, 2, vec![0, 1], vec![0.0; 8]).is_err());
        assert!(FiniteHypergroup::from_dense(2, 0, vec![0, 0], vec![0.0; 8]).is_err());
        assert!(FiniteHypergroup::from_dense(2, 0, vec![0, 1], vec![0.0; 7]).is_err());
        assert!(FiniteHypergroup::from_entries(2, 0, vec![0, 1], [(0, 0, 2, 1.0)]).is_err());
    }

    #[test]
    fn mismatched_dimensions_error() {
        let h = theta(0.5);
        assert!(h.convolve_measures(&Measure::uniform(3), &h.dirac(0)).is_err());
        assert!(h.involute_measure(&Measure::uniform(1)).is_err());
        assert!(h.convolve_measure_function(&h.dirac(0), &PointFunction::ones(3)).is_err());
    }
}
