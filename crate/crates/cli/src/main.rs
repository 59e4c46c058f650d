use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hyperhaar::format::{format_real, parse_hypergroup, serialize_hypergroup};
use hyperhaar::haar::{ApproximantConfig, ConvergenceTrace};
use hyperhaar::{lemmas, FamilySpec, FiniteHypergroup, GroupTable, Measure, Method, PointFunction};

#[derive(Parser)]
#[command(name = "hyperhaar", version, about = "Invariant measures on finite hypergroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the hypergroup axioms; exit 1 if any fails.
    Validate {
        file: PathBuf,
        #[arg(long, default_value_t = hyperhaar::hypergroup::DEFAULT_TOL)]
        tol: f64,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print invariant weights, normalized so that chi(f0) = 1.
    Haar {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Net)]
        method: MethodArg,
        /// `uniform` (f0 = 1_Q) or `dirac:<i>` (f0 = 1_{i}).
        #[arg(long, default_value = "uniform")]
        f0: String,
        /// `uniform` or a file of whitespace-separated positive weights.
        #[arg(long, default_value = "uniform")]
        mu0: String,
        /// Largest accepted invariance residual.
        #[arg(long, default_value_t = hyperhaar::haar::DEFAULT_CERTIFY_THRESHOLD)]
        tol: f64,
        /// Write the per-step convergence trace as CSV (net only).
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run all three methods and compare them; exit 1 unless they agree.
    Compare {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Emit a hypergroup document for a built-in family.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Family parameter. For `conj-class` a group name (S3, A4, D5, Z6)
        /// or `@path` to a multiplication table; `product` takes two
        /// family specs such as `cyclic:2` and `theta2:0.5`.
        #[arg(long, required = true, num_args = 1..)]
        param: Vec<String>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Run the seeded property suites; exit 1 unless all pass.
    CheckLemmas {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Net,
    Jewett,
    Solve,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Net => Method::Net,
            MethodArg::Jewett => Method::Jewett,
            MethodArg::Solve => Method::Solve,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Cyclic,
    Theta2,
    ConjClass,
    CosineGrid,
    Product,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<FiniteHypergroup> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_hypergroup(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run(cli: Cli) -> Result<bool> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Validate { file, tol, json } => {
            let report = load(&file)?.validate_with_tol(tol);
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            } else {
                writeln!(out, "{report}")?;
            }
            Ok(report.passed())
        }
        Command::Haar {
            file,
            method,
            f0,
            mu0,
            tol,
            trace,
            json,
        } => {
            let h = load(&file)?;
            let mut cfg = ApproximantConfig::standard(&h)?
                .with_f0(parse_f0(&f0, h.n())?)
                .with_mu0(parse_mu0(&mu0, h.n())?);
            cfg.certify_threshold = tol;
            let method = Method::from(method);
            let (chi, net_trace) = hyperhaar::haar_measure(&h, method, &cfg)?;
            if let Some(path) = trace {
                let net_trace = net_trace.ok_or_else(|| anyhow!("--trace needs --method net"))?;
                write_trace(&path, &net_trace, h.n())?;
            }
            let residual = hyperhaar::invariance_residual(&h, &chi)?;
            if json {
                let doc = serde_json::json!({
                    "method": method,
                    "weights": chi.weights(),
                    "residual": residual,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            } else {
                for (t, w) in chi.weights().iter().enumerate() {
                    writeln!(out, "{t} {}", format_real(*w))?;
                }
            }
            Ok(residual < tol)
        }
        Command::Compare { file, tol, json } => {
            let h = load(&file)?;
            let cfg = ApproximantConfig::standard(&h)?;
            let cmp = hyperhaar::compare_methods(&h, &cfg, tol)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&cmp)?)?;
            } else {
                for r in &cmp.results {
                    let w: Vec<String> = r.weights.iter().map(|x| format!("{x:.12}")).collect();
                    writeln!(out, "{:<7} residual={:.3e}  [{}]", r.method, r.residual, w.join(", "))?;
                }
                for p in &cmp.pairs {
                    writeln!(
                        out,
                        "{} vs {}: max relative diff {:.3e}",
                        p.a, p.b, p.max_relative_diff
                    )?;
                }
                writeln!(out, "agree (tol {:e}): {}", cmp.tol, cmp.agree)?;
            }
            Ok(cmp.agree)
        }
        Command::Gen {
            family,
            param,
            output,
        } => {
            let spec = family_spec(family, &param)?;
            let doc = format!("# {spec}\n{}", serialize_hypergroup(&spec.build()?));
            match output {
                Some(path) => fs::write(&path, doc).with_context(|| format!("writing {}", path.display()))?,
                None => out.write_all(doc.as_bytes())?,
            }
            Ok(true)
        }
        Command::CheckLemmas {
            file,
            seed,
            trials,
            json,
        } => {
            let h = load(&file)?;
            let reports = lemmas::all_suites(&h, seed, trials)?;
            let ok = reports.iter().all(|r| r.passed());
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
            } else {
                for r in &reports {
                    for c in &r.checks {
                        let status = if c.pass { "pass" } else { "FAIL" };
                        writeln!(out, "{status}  {:<24} {:<48} worst={:.3e}", r.suite, c.name, c.worst)?;
                    }
                }
                writeln!(out, "overall: {}", if ok { "pass" } else { "FAIL" })?;
            }
            Ok(ok)
        }
    }
}

fn parse_f0(arg: &str, n: usize) -> Result<PointFunction> {
    if arg == "uniform" {
        return Ok(PointFunction::ones(n));
    }
    let i: usize = arg
        .strip_prefix("dirac:")
        .and_then(|i| i.parse().ok())
        .ok_or_else(|| anyhow!("--f0 expects `uniform` or `dirac:<i>`, got {arg:?}"))?;
    if i >= n {
        bail!("--f0 point {i} out of range for {n} points");
    }
    Ok(PointFunction::point_indicator(n, i))
}

fn parse_mu0(arg: &str, n: usize) -> Result<Measure> {
    if arg == "uniform" {
        return Ok(Measure::uniform(n));
    }
    let text = fs::read_to_string(arg).with_context(|| format!("reading --mu0 file {arg}"))?;
    let w = text
        .split_whitespace()
        .map(|tok| tok.parse::<f64>().with_context(|| format!("bad weight {tok:?} in {arg}")))
        .collect::<Result<Vec<_>>>()?;
    if w.len() != n {
        bail!("--mu0 file has {} weights, expected {n}", w.len());
    }
    Ok(Measure::new(w))
}

fn family_spec(family: FamilyArg, params: &[String]) -> Result<FamilySpec> {
    let one = || -> Result<&str> {
        match params {
            [p] => Ok(p.as_str()),
            _ => bail!("this family takes exactly one --param"),
        }
    };
    let spec = match family {
        FamilyArg::Cyclic => FamilySpec::Cyclic(one()?.parse().context("cyclic order")?),
        FamilyArg::Theta2 => FamilySpec::Theta2(one()?.parse().context("theta")?),
        FamilyArg::CosineGrid => FamilySpec::CosineGrid(one()?.parse().context("grid size")?),
        FamilyArg::ConjClass => {
            let p = one()?;
            let group = match p.strip_prefix('@') {
                Some(path) => {
                    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
                    GroupTable::parse(path, &text)?
                }
                None => GroupTable::named(p)?,
            };
            FamilySpec::ConjugacyClass(group)
        }
        FamilyArg::Product => match params {
            [a, b] => FamilySpec::product(a.parse()?, b.parse()?),
            _ => bail!("product takes two --param values, e.g. cyclic:2 theta2:0.5"),
        },
    };
    Ok(spec)
}

fn write_trace(path: &Path, trace: &ConvergenceTrace, n: usize) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    let probes = trace.steps.first().map_or(0, |s| s.probe_values.len());
    let mut header = vec!["step".to_string(), "|U|".to_string()];
    header.extend((0..probes).map(|i| {
        if i < n {
            format!("chi(1_{{{i}}})")
        } else {
            "chi(1_Q)".to_string()
        }
    }));
    header.extend(["gap", "rho", "cauchy_diff"].map(String::from));
    w.write_record(&header)?;
    for s in &trace.steps {
        let mut row = vec![s.step.to_string(), s.neighborhood_size.to_string()];
        row.extend(s.probe_values.iter().map(|v| format_real(*v)));
        row.push(format_real(s.max_gap()));
        row.push(format_real(s.rho));
        row.push(s.cauchy_diff.map(format_real).unwrap_or_default());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
