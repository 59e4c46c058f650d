//! Plain-text hypergroup documents.
//!
//! ```text
//! hypergroup v1
//! n 2
//! e 0
//! inv 0 1
//! c 1 1 0 0.5
//! ```
//!
//! One directive per line, `#` starts a comment, and tensor entries not
//! listed are zero. Values are written with 17 significant digits so that
//! parsing a serialized document gives back the same bits.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergroup::FiniteHypergroup;

pub const HEADER: &str = "hypergroup v1";

/// Parses a document into a hypergroup without checking the axioms.
pub fn parse_hypergroup(text: &str) -> Result<FiniteHypergroup> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, l)) if l.split_whitespace().collect::<Vec<_>>() == ["hypergroup", "v1"] => {}
        Some((line, l)) => {
            return Err(Error::Syntax {
                line,
                msg: format!("expected {HEADER:?}, found {l:?}"),
            })
        }
        None => {
            return Err(Error::Syntax {
                line: 1,
                msg: "empty document".into(),
            })
        }
    }

    let mut n: Option<usize> = None;
    let mut e: Option<(usize, usize)> = None;
    let mut inv: Option<(usize, Vec<usize>)> = None;
    let mut entries = Vec::new();
    let mut seen = HashSet::new();

    let int = |line: usize, tok: &str| {
        tok.parse::<usize>().map_err(|_| Error::Syntax {
            line,
            msg: format!("expected a non-negative integer, found {tok:?}"),
        })
    };

    for (line, l) in lines {
        let mut toks = l.split_whitespace();
        let directive = toks.next().expect("line is non-empty");
        let args: Vec<&str> = toks.collect();
        let syntax = |msg: String| Error::Syntax { line, msg };
        let need_n = || n.ok_or_else(|| syntax(format!("{directive:?} before \"n\"")));
        match directive {
            "n" => {
                if n.is_some() {
                    return Err(syntax("repeated \"n\"".into()));
                }
                let [v] = args[..] else {
                    return Err(syntax("usage: n <int>".into()));
                };
                let v = int(line, v)?;
                if v == 0 {
                    return Err(syntax("n must be positive".into()));
                }
                n = Some(v);
            }
            "e" => {
                let n = need_n()?;
                let [v] = args[..] else {
                    return Err(syntax("usage: e <int>".into()));
                };
                let v = int(line, v)?;
                if v >= n {
                    return Err(Error::Range { line, what: "identity", value: v, n });
                }
                e = Some((line, v));
            }
            "inv" => {
                let n = need_n()?;
                if args.len() != n {
                    return Err(syntax(format!("inv needs {n} entries, found {}", args.len())));
                }
                let perm = args
                    .iter()
                    .map(|tok| {
                        let v = int(line, tok)?;
                        if v >= n {
                            Err(Error::Range { line, what: "involution image", value: v, n })
                        } else {
                            Ok(v)
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                inv = Some((line, perm));
            }
            "c" => {
                let n = need_n()?;
                let [s, t, u, x] = args[..] else {
                    return Err(syntax("usage: c <s> <t> <u> <value>".into()));
                };
                let (s, t, u) = (int(line, s)?, int(line, t)?, int(line, u)?);
                for v in [s, t, u] {
                    if v >= n {
                        return Err(Error::Range { line, what: "point", value: v, n });
                    }
                }
                let x: f64 = x
                    .parse()
                    .ok()
                    .filter(|x: &f64| x.is_finite())
                    .ok_or_else(|| syntax(format!("expected a finite real, found {x:?}")))?;
                if !seen.insert((s, t, u)) {
                    return Err(Error::DuplicateEntry { line, s, t, u });
                }
                entries.push((s, t, u, x));
            }
            other => return Err(syntax(format!("unknown directive {other:?}"))),
        }
    }

    let end = text.lines().count().max(1);
    let n = n.ok_or_else(|| Error::Syntax { line: end, msg: "missing \"n\"".into() })?;
    let (_, e) = e.ok_or_else(|| Error::Syntax { line: end, msg: "missing \"e\"".into() })?;
    let (inv_line, inv) = inv.ok_or_else(|| Error::Syntax { line: end, msg: "missing \"inv\"".into() })?;
    FiniteHypergroup::from_entries(n, e, inv, entries).map_err(|err| match err {
        Error::InvalidHypergroup(msg) => Error::Syntax { line: inv_line, msg },
        other => other,
    })
}

/// Writes the canonical document: entries in `(s, t, u)` order, zeros
/// omitted, values in 17-significant-digit scientific notation.
pub fn serialize_hypergroup(h: &FiniteHypergroup) -> String {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "n {}", h.n()).unwrap();
    writeln!(out, "e {}", h.identity()).unwrap();
    let inv: Vec<String> = h.involution().iter().map(usize::to_string).collect();
    writeln!(out, "inv {}", inv.join(" ")).unwrap();
    for (s, t, u, x) in h.entries() {
        writeln!(out, "c {s} {t} {u} {}", format_real(x)).unwrap();
    }
    out
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}
