use hyperhaar::format::{parse_hypergroup, serialize_hypergroup};
use hyperhaar::haar::ApproximantConfig;
use hyperhaar::{lemmas, FamilySpec, FiniteHypergroup, Measure, Method, PointFunction};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(hyperhaar_py, HyperhaarError, PyValueError);

fn err(e: hyperhaar::Error) -> PyErr {
    HyperhaarError::new_err(e.to_string())
}

/// A finite hypergroup given by its structure constants.
#[pyclass(name = "Hypergroup", module = "hyperhaar_py", frozen)]
struct PyHypergroup {
    inner: FiniteHypergroup,
}

impl PyHypergroup {
    fn config(&self, f0: Option<Vec<f64>>, mu0: Option<Vec<f64>>) -> PyResult<ApproximantConfig> {
        let mut cfg = ApproximantConfig::standard(&self.inner).map_err(err)?;
        if let Some(f0) = f0 {
            cfg = cfg.with_f0(PointFunction::new(f0));
        }
        if let Some(mu0) = mu0 {
            cfg = cfg.with_mu0(Measure::new(mu0));
        }
        cfg.check(&self.inner).map_err(err)?;
        Ok(cfg)
    }
}

#[pymethods]
impl PyHypergroup {
    /// Build from a family spec such as `"cyclic:5"` or `"product(cyclic:2,theta2:0.5)"`.
    #[staticmethod]
    fn family(spec: &str) -> PyResult<Self> {
        let spec: FamilySpec = spec.parse().map_err(err)?;
        Ok(Self { inner: spec.build().map_err(err)? })
    }

    /// Parse a `hypergroup v1` document. The axioms are not checked.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self { inner: parse_hypergroup(text).map_err(err)? })
    }

    /// Build from sparse `(s, t, u, value)` entries.
    #[staticmethod]
    fn from_entries(n: usize, e: usize, inv: Vec<usize>, entries: Vec<(usize, usize, usize, f64)>) -> PyResult<Self> {
        Ok(Self {
            inner: FiniteHypergroup::from_entries(n, e, inv, entries).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn identity(&self) -> usize {
        self.inner.identity()
    }

    #[getter]
    fn involution(&self) -> Vec<usize> {
        self.inner.involution().to_vec()
    }

    /// Mass of `ε_s ∗ ε_t` at `u`.
    fn c(&self, s: usize, t: usize, u: usize) -> PyResult<f64> {
        let n = self.inner.n();
        if s >= n || t >= n || u >= n {
            return Err(err(hyperhaar::Error::IndexOutOfRange { index: s.max(t).max(u), n }));
        }
        Ok(self.inner.c(s, t, u))
    }

    fn to_text(&self) -> String {
        serialize_hypergroup(&self.inner)
    }

    /// Axiom check; returns `{"passed": bool, "failures": [...], "report": str}`.
    #[pyo3(signature = (tol = None))]
    fn validate<'py>(&self, py: Python<'py>, tol: Option<f64>) -> PyResult<Bound<'py, PyDict>> {
        let report = match tol {
            Some(tol) => self.inner.validate_with_tol(tol),
            None => self.inner.validate(),
        };
        let failures: Vec<(String, Option<Vec<usize>>)> = report
            .failures()
            .map(|c| (c.axiom.label().to_string(), c.witness.clone()))
            .collect();
        let d = PyDict::new(py);
        d.set_item("passed", report.passed())?;
        d.set_item("failures", failures)?;
        d.set_item("report", report.to_string())?;
        Ok(d)
    }

    fn convolve(&self, mu: Vec<f64>, nu: Vec<f64>) -> PyResult<Vec<f64>> {
        let out = self
            .inner
            .convolve_measures(&Measure::new(mu), &Measure::new(nu))
            .map_err(err)?;
        Ok(out.into_weights())
    }

    /// Left translate `ε_s ∗ f`.
    fn translate(&self, s: usize, f: Vec<f64>) -> PyResult<Vec<f64>> {
        Ok(self.inner.translate(s, &PointFunction::new(f)).map_err(err)?.into_values())
    }

    /// Invariant weights normalized so that `⟨f0, χ⟩ = 1` (f0 defaults to all ones).
    #[pyo3(signature = (method = "net", f0 = None, mu0 = None))]
    fn haar(&self, method: &str, f0: Option<Vec<f64>>, mu0: Option<Vec<f64>>) -> PyResult<Vec<f64>> {
        let method: Method = method.parse().map_err(err)?;
        let cfg = self.config(f0, mu0)?;
        let (chi, _) = hyperhaar::haar_measure(&self.inner, method, &cfg).map_err(err)?;
        Ok(chi.into_weights())
    }

    fn invariance_residual(&self, chi: Vec<f64>) -> PyResult<f64> {
        hyperhaar::invariance_residual(&self.inner, &Measure::new(chi)).map_err(err)
    }

    /// Runs all three methods; returns `{"agree": bool, "weights": {method: [...]}, "max_relative_diff": float}`.
    #[pyo3(signature = (tol = 1e-10))]
    fn compare<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        let cfg = self.config(None, None)?;
        let cmp = hyperhaar::compare_methods(&self.inner, &cfg, tol).map_err(err)?;
        let weights = PyDict::new(py);
        for r in &cmp.results {
            weights.set_item(r.method.to_string(), r.weights.clone())?;
        }
        let d = PyDict::new(py);
        d.set_item("agree", cmp.agree)?;
        d.set_item("weights", weights)?;
        d.set_item(
            "max_relative_diff",
            cmp.pairs.iter().map(|p| p.max_relative_diff).fold(0.0, f64::max),
        )?;
        Ok(d)
    }

    /// Seeded property suites as `(suite, check, worst, passed)` rows.
    #[pyo3(signature = (seed = 0, trials = 200))]
    fn check_lemmas(&self, seed: u64, trials: usize) -> PyResult<Vec<(String, String, f64, bool)>> {
        let reports = lemmas::all_suites(&self.inner, seed, trials).map_err(err)?;
        Ok(reports
            .into_iter()
            .flat_map(|r| {
                let suite = r.suite;
                r.checks
                    .into_iter()
                    .map(move |c| (suite.clone(), c.name, c.worst, c.pass))
            })
            .collect())
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Hypergroup(n={}, e={})", self.inner.n(), self.inner.identity())
    }
}

/// Spec strings of the bundled example families.
#[pyfunction]
fn bundled_families() -> Vec<String> {
    hyperhaar::family::bundled_families()
        .iter()
        .map(ToString::to_string)
        .collect()
}

#[pymodule]
fn hyperhaar_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHypergroup>()?;
    m.add_function(wrap_pyfunction!(bundled_families, m)?)?;
    m.add("HyperhaarError", m.py().get_type::<HyperhaarError>())?;
    Ok(())
}
