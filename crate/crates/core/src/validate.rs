//! Axiom checks for finite hypergroups.
//!
//! The topological axioms (H2), (H3) and (H7) hold trivially on a finite
//! discrete point set; they appear in the report as [`Status::Automatic`].

use std::fmt;

use serde::Serialize;

use crate::hypergroup::FiniteHypergroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    Involution,
    H1RowStochastic,
    H2,
    H3,
    H4Identity,
    H5AntiHomomorphism,
    H6,
    H7,
    Associativity,
}

impl Axiom {
    pub fn label(self) -> &'static str {
        match self {
            Axiom::Involution => "involution",
            Axiom::H1RowStochastic => "H1",
            Axiom::H2 => "H2",
            Axiom::H3 => "H3",
            Axiom::H4Identity => "H4",
            Axiom::H5AntiHomomorphism => "H5",
            Axiom::H6 => "H6",
            Axiom::H7 => "H7",
            Axiom::Associativity => "associativity",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Holds for every finite discrete hypergroup; not computed.
    Automatic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub status: Status,
    /// Largest violation seen (0 when passing cleanly).
    pub worst: f64,
    /// Indices locating the worst violation, e.g. `(s, t, u)`.
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub tol: f64,
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .expect("every axiom is reported")
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Automatic => "automatic (finite discrete)",
            };
            write!(f, "{:<14} {status}", c.axiom.label())?;
            if c.status != Status::Automatic {
                write!(f, "  worst={:.3e}", c.worst)?;
            }
            if let (Status::Fail, Some(w)) = (c.status, &c.witness) {
                write!(f, "  witness={w:?}")?;
            }
            writeln!(f)?;
        }
        write!(f, "overall: {}", if self.passed() { "pass" } else { "FAIL" })
    }
}

/// Tracks the largest violation and where it occurred.
struct Worst {
    value: f64,
    witness: Option<Vec<usize>>,
    failed: bool,
}

impl Worst {
    fn new() -> Self {
        Self {
            value: 0.0,
            witness: None,
            failed: false,
        }
    }

    fn record(&mut self, value: f64, failed: bool, witness: impl FnOnce() -> Vec<usize>) {
        // a failing witness always beats a passing one
        if (failed && !self.failed) || (failed == self.failed && value > self.value) {
            self.value = value;
            self.witness = Some(witness());
            self.failed |= failed;
        }
    }

    fn finish(self, axiom: Axiom) -> AxiomCheck {
        AxiomCheck {
            axiom,
            status: if self.failed { Status::Fail } else { Status::Pass },
            worst: self.value,
            witness: if self.failed { self.witness } else { None },
        }
    }
}

impl FiniteHypergroup {
    /// Validates at the hypergroup's own tolerance.
    pub fn validate(&self) -> ValidationReport {
        self.validate_with_tol(self.tol())
    }

    pub fn validate_with_tol(&self, tol: f64) -> ValidationReport {
        let n = self.n();
        let e = self.identity();
        let inv = self.involution();

        let mut involution = Worst::new();
        for t in 0..n {
            if inv[inv[t]] != t {
                involution.record(1.0, true, || vec![t]);
            }
        }
        if inv[e] != e {
            involution.record(1.0, true, || vec![e]);
        }

        let mut h1 = Worst::new();
        for s in 0..n {
            for t in 0..n {
                let mut sum = 0.0;
                for u in 0..n {
                    let x = self.c(s, t, u);
                    if x < 0.0 {
                        h1.record(-x, -x > tol, || vec![s, t, u]);
                    }
                    sum += x;
                }
                let dev = (sum - 1.0).abs();
                h1.record(dev, dev > tol, || vec![s, t]);
            }
        }

        let mut h4 = Worst::new();
        for t in 0..n {
            for u in 0..n {
                let delta = if t == u { 1.0 } else { 0.0 };
                let left = (self.c(e, t, u) - delta).abs();
                h4.record(left, left > tol, || vec![e, t, u]);
                let right = (self.c(t, e, u) - delta).abs();
                h4.record(right, right > tol, || vec![t, e, u]);
            }
        }

        let mut h5 = Worst::new();
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    let dev = (self.c(s, t, u) - self.c(inv[t], inv[s], inv[u])).abs();
                    h5.record(dev, dev > tol, || vec![s, t, u]);
                }
            }
        }

        let mut h6 = Worst::new();
        for t in 0..n {
            for (s, &si) in inv.iter().enumerate() {
                let mass = self.c(t, si, e);
                if t == s {
                    let short = (tol - mass).max(0.0);
                    h6.record(short, mass <= tol, || vec![t, s]);
                } else {
                    h6.record(mass.abs(), mass > tol, || vec![t, s]);
                }
            }
        }

        let mut assoc = Worst::new();
        let mut left = vec![0.0; n];
        let mut right = vec![0.0; n];
        for s in 0..n {
            for t in 0..n {
                for r in 0..n {
                    left.iter_mut().for_each(|x| *x = 0.0);
                    right.iter_mut().for_each(|x| *x = 0.0);
                    for &(u, a) in self.product_row(s, t) {
                        for &(v, b) in self.product_row(u, r) {
                            left[v] += a * b;
                        }
                    }
                    for &(u, a) in self.product_row(t, r) {
                        for &(v, b) in self.product_row(s, u) {
                            right[v] += a * b;
                        }
                    }
                    for v in 0..n {
                        let dev = (left[v] - right[v]).abs();
                        if dev > 0.0 {
                            assoc.record(dev, dev > tol, || vec![s, t, r, v]);
                        }
                    }
                }
            }
        }

        let automatic = |axiom| AxiomCheck {
            axiom,
            status: Status::Automatic,
            worst: 0.0,
            witness: None,
        };

        ValidationReport {
            tol,
            checks: vec![
                involution.finish(Axiom::Involution),
                h1.finish(Axiom::H1RowStochastic),
                automatic(Axiom::H2),
                automatic(Axiom::H3),
                h4.finish(Axiom::H4Identity),
                h5.finish(Axiom::H5AntiHomomorphism),
                h6.finish(Axiom::H6),
                automatic(Axiom::H7),
                assoc.finish(Axiom::Associativity),
            ],
        }
    }
}
