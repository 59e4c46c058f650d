//! Builders for hypergroup families with known invariant measures.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hypergroup::FiniteHypergroup;

/// Multiplication table of a finite group, `table[a][b] = a·b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Checks the group axioms (closure, identity, inverses, associativity).
    pub fn new(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidGroupTable("empty table".into()));
        }
        for row in &table {
            if row.len() != order {
                return Err(Error::InvalidGroupTable("table is not square".into()));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= order) {
                return Err(Error::InvalidGroupTable(format!("entry {x} outside 0..{order}")));
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroupTable("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(order);
        for (a, row) in table.iter().enumerate() {
            let b = (0..order)
                .find(|&b| row[b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroupTable(format!("element {a} has no inverse")))?;
            inverse.push(b);
        }
        for a in 0..order {
            for b in 0..order {
                let ab = table[a][b];
                for c in 0..order {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroupTable(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            name: name.into(),
            table,
            identity,
            inverse,
        })
    }

    /// Parses whitespace-separated rows, one row per line; `#` starts a comment.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut table = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Error::Syntax {
                        line: i + 1,
                        msg: format!("expected element index, found {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        Self::new(name, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    fn from_permutations(name: String, perms: Vec<Vec<usize>>) -> Self {
        let index: HashMap<&[usize], usize> =
            perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let pq: Vec<usize> = q.iter().map(|&i| p[i]).collect();
                        index[pq.as_slice()]
                    })
                    .collect()
            })
            .collect();
        Self::new(name, table).expect("permutation groups are groups")
    }

    /// The symmetric group on `k` letters, elements in lexicographic order.
    pub fn symmetric(k: usize) -> Self {
        Self::from_permutations(format!("S{k}"), permutations(k))
    }

    /// The alternating group on `k` letters.
    pub fn alternating(k: usize) -> Self {
        let perms = permutations(k).into_iter().filter(|p| is_even(p)).collect();
        Self::from_permutations(format!("A{k}"), perms)
    }

    /// The dihedral group of order `2k`: `r^i` is `i`, `s r^i` is `k + i`.
    pub fn dihedral(k: usize) -> Self {
        let k = k.max(1);
        let table = (0..2 * k)
            .map(|a| {
                (0..2 * k)
                    .map(|b| {
                        let (fa, ra) = (a / k, a % k);
                        let (fb, rb) = (b / k, b % k);
                        // r^i s = s r^{-i}
                        let r = if fb == 0 { (ra + rb) % k } else { (k - ra % k + rb) % k };
                        (fa ^ fb) * k + r
                    })
                    .collect()
            })
            .collect();
        Self::new(format!("D{k}"), table).expect("dihedral table is a group")
    }

    pub fn cyclic(k: usize) -> Self {
        let k = k.max(1);
        let table = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
        Self::new(format!("Z{k}"), table).expect("cyclic table is a group")
    }

    /// Parses `S<k>`, `A<k>`, `D<k>` or `Z<k>`.
    pub fn named(name: &str) -> Result<Self> {
        let bad = || Error::InvalidFamily(format!("unknown group {name:?}"));
        let (kind, k) = name.split_at(name.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let k: usize = k.parse().map_err(|_| bad())?;
        match (kind, k) {
            ("S", 1..=6) => Ok(Self::symmetric(k)),
            ("A", 1..=6) => Ok(Self::alternating(k)),
            ("D", 1..=64) => Ok(Self::dihedral(k)),
            ("Z", 1..=256) => Ok(Self::cyclic(k)),
            _ => Err(bad()),
        }
    }

    /// Conjugacy classes ordered by their smallest element; the identity
    /// class comes first whenever the identity is element 0.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let order = self.order();
        let mut class_of = vec![usize::MAX; order];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..order)
                .map(|g| self.mul(self.mul(g, x), self.inverse(g)))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                class_of[y] = classes.len();
            }
            classes.push(class);
        }
        // identity first
        let id_class = class_of[self.identity];
        if id_class != 0 {
            let c = classes.remove(id_class);
            classes.insert(0, c);
        }
        classes
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn is_even(p: &[usize]) -> bool {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

/// A hypergroup family together with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    /// The cyclic group `Z_n`.
    Cyclic(usize),
    /// Two points `{0, 1}` with `ε₁ ∗ ε₁ = θ ε₀ + (1 − θ) ε₁`, `θ ∈ (0, 1]`.
    Theta2(f64),
    /// Conjugacy classes of a finite group under normalized class-sum products.
    ConjugacyClass(GroupTable),
    /// Reflection orbits of the cyclic group of order `2(m − 1)` under the
    /// dihedral action: `ε_x ∗ ε_y = ½ ε_{|x−y|} + ½ ε_{r(x+y)}`.
    CosineGrid(usize),
    Product(Box<FamilySpec>, Box<FamilySpec>),
}

impl FamilySpec {
    pub fn product(a: FamilySpec, b: FamilySpec) -> Self {
        Self::Product(Box::new(a), Box::new(b))
    }

    pub fn build(&self) -> Result<FiniteHypergroup> {
        match self {
            Self::Cyclic(n) => cyclic(*n),
            Self::Theta2(th) => theta2(*th),
            Self::ConjugacyClass(g) => conjugacy_class(g),
            Self::CosineGrid(m) => cosine_grid(*m),
            Self::Product(a, b) => product(&a.build()?, &b.build()?),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Cyclic(n) => write!(f, "cyclic:{n}"),
            Self::Theta2(th) => write!(f, "theta2:{th}"),
            Self::ConjugacyClass(g) => write!(f, "conj-class:{}", g.name()),
            Self::CosineGrid(m) => write!(f, "cosine-grid:{m}"),
            Self::Product(a, b) => write!(f, "product({a},{b})"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Grammar: `cyclic:N`, `theta2:T`, `conj-class:G`, `cosine-grid:M`,
    /// `product(SPEC,SPEC)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |why: &str| Error::InvalidFamily(format!("{s:?}: {why}"));
        if let Some(inner) = s.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            let mut depth = 0usize;
            let split = inner.char_indices().find_map(|(i, ch)| match ch {
                '(' => {
                    depth += 1;
                    None
                }
                ')' => {
                    depth = depth.saturating_sub(1);
                    None
                }
                ',' if depth == 0 => Some(i),
                _ => None,
            });
            let i = split.ok_or_else(|| bad("product needs two comma-separated factors"))?;
            return Ok(Self::product(inner[..i].parse()?, inner[i + 1..].parse()?));
        }
        let (tag, param) = s.split_once(':').ok_or_else(|| bad("expected <family>:<param>"))?;
        let int = || param.trim().parse::<usize>().map_err(|_| bad("expected an integer"));
        match tag.trim() {
            "cyclic" => Ok(Self::Cyclic(int()?)),
            "theta2" => Ok(Self::Theta2(
                param.trim().parse().map_err(|_| bad("expected a real"))?,
            )),
            "conj-class" => Ok(Self::ConjugacyClass(GroupTable::named(param.trim())?)),
            "cosine-grid" => Ok(Self::CosineGrid(int()?)),
            _ => Err(bad("unknown family")),
        }
    }
}

/// `Z_n`: `c[s][t][u] = δ_{u, s+t mod n}`, `inv[t] = −t mod n`.
pub fn cyclic(n: usize) -> Result<FiniteHypergroup> {
    if n == 0 {
        return Err(Error::InvalidFamily("cyclic order must be positive".into()));
    }
    let inv = (0..n).map(|t| (n - t) % n).collect();
    let entries = (0..n).flat_map(|s| (0..n).map(move |t| (s, t, (s + t) % n, 1.0)));
    FiniteHypergroup::from_entries(n, 0, inv, entries)
}

/// The two-point family `H_θ`, `θ ∈ (0, 1]`.
pub fn theta2(theta: f64) -> Result<FiniteHypergroup> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::InvalidFamily(format!("theta {theta} outside (0, 1]")));
    }
    theta2_unchecked(theta)
}

/// The `H_θ` table for any `θ`, including the degenerate ones that break
/// the axioms. Only useful for negative tests.
pub fn theta2_unchecked(theta: f64) -> Result<FiniteHypergroup> {
    let mut entries = vec![(0, 0, 0, 1.0), (0, 1, 1, 1.0), (1, 0, 1, 1.0), (1, 1, 0, theta)];
    if theta != 1.0 {
        entries.push((1, 1, 1, 1.0 - theta));
    }
    FiniteHypergroup::from_entries(2, 0, vec![0, 1], entries)
}

/// Class hypergroup of a finite group: `c[i][j][k]` is the fraction of pairs
/// `(x, y) ∈ K_i × K_j` with `xy ∈ K_k`.
pub fn conjugacy_class(group: &GroupTable) -> Result<FiniteHypergroup> {
    let classes = group.conjugacy_classes();
    let n = classes.len();
    let mut class_of = vec![0; group.order()];
    for (i, class) in classes.iter().enumerate() {
        for &x in class {
            class_of[x] = i;
        }
    }
    let mut entries = Vec::new();
    for (i, ki) in classes.iter().enumerate() {
        for (j, kj) in classes.iter().enumerate() {
            let mut counts = vec![0u64; n];
            for &x in ki {
                for &y in kj {
                    counts[class_of[group.mul(x, y)]] += 1;
                }
            }
            let pairs = (ki.len() * kj.len()) as u64;
            for (k, &cnt) in counts.iter().enumerate() {
                if cnt > 0 {
                    entries.push((i, j, k, cnt as f64 / pairs as f64));
                }
            }
        }
    }
    let inv = classes
        .iter()
        .map(|class| class_of[group.inverse(class[0])])
        .collect();
    FiniteHypergroup::from_entries(n, 0, inv, entries)
}

/// Class sizes in the order used by [`conjugacy_class`].
pub fn class_sizes(group: &GroupTable) -> Vec<usize> {
    group.conjugacy_classes().iter().map(Vec::len).collect()
}

/// The cosine grid with `m ≥ 2` points.
pub fn cosine_grid(m: usize) -> Result<FiniteHypergroup> {
    if m < 2 {
        return Err(Error::InvalidFamily("cosine-grid needs m >= 2".into()));
    }
    let top = 2 * (m - 1);
    let reflect = |z: usize| if z < m { z } else { top - z };
    let mut entries = Vec::with_capacity(2 * m * m);
    for x in 0..m {
        for y in 0..m {
            entries.push((x, y, x.abs_diff(y), 0.5));
            entries.push((x, y, reflect(x + y), 0.5));
        }
    }
    FiniteHypergroup::from_entries(m, 0, (0..m).collect(), entries)
}

/// Tensor product; point `(i, j)` has index `i * n_b + j`.
pub fn product(a: &FiniteHypergroup, b: &FiniteHypergroup) -> Result<FiniteHypergroup> {
    let nb = b.n();
    let n = a.n() * nb;
    let idx = |i: usize, j: usize| i * nb + j;
    let inv = (0..a.n())
        .flat_map(|i| (0..nb).map(move |j| (i, j)))
        .map(|(i, j)| idx(a.inv(i), b.inv(j)))
        .collect();
    let mut entries = Vec::new();
    for (s1, t1, u1, x1) in a.entries() {
        for (s2, t2, u2, x2) in b.entries() {
            entries.push((idx(s1, s2), idx(t1, t2), idx(u1, u2), x1 * x2));
        }
    }
    FiniteHypergroup::from_entries(n, idx(a.identity(), b.identity()), inv, entries)
}

/// The families every suite runs against.
pub fn bundled_families() -> Vec<FamilySpec> {
    use FamilySpec::*;
    vec![
        Cyclic(3),
        Cyclic(4),
        Cyclic(7),
        Theta2(0.1),
        Theta2(0.5),
        Theta2(1.0),
        ConjugacyClass(GroupTable::symmetric(3)),
        ConjugacyClass(GroupTable::alternating(4)),
        CosineGrid(3),
        CosineGrid(5),
        CosineGrid(17),
        CosineGrid(65),
        FamilySpec::product(Cyclic(2), Theta2(0.5)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_tables_are_groups() {
        assert_eq!(GroupTable::symmetric(3).order(), 6);
        assert_eq!(GroupTable::symmetric(4).order(), 24);
        assert_eq!(GroupTable::alternating(4).order(), 12);
        assert_eq!(GroupTable::dihedral(5).order(), 10);
        assert_eq!(GroupTable::cyclic(6).order(), 6);
    }

    #[test]
    fn group_table_rejects_non_groups() {
        assert!(GroupTable::new("x", vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(GroupTable::new("x", vec![vec![0, 1], vec![1]]).is_err());
        assert!(GroupTable::new("x", vec![]).is_err());
        assert!(GroupTable::parse("x", "0 1\n1 0 # Z2\n").is_ok());
        assert!(matches!(
            GroupTable::parse("x", "0 1\n1 z\n"),
            Err(Error::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn s3_classes() {
        let g = GroupTable::symmetric(3);
        assert_eq!(class_sizes(&g), vec![1, 3, 2]);
        let h = conjugacy_class(&g).unwrap();
        assert_eq!(h.n(), 3);
        let c = |s, t, u| h.c(s, t, u);
        assert_eq!((c(1, 1, 0), c(1, 1, 1), c(1, 1, 2)), (1.0 / 3.0, 0.0, 2.0 / 3.0));
        assert_eq!((c(1, 2, 0), c(1, 2, 1), c(1, 2, 2)), (0.0, 1.0, 0.0));
        assert_eq!((c(2, 2, 0), c(2, 2, 1), c(2, 2, 2)), (0.5, 0.0, 0.5));
    }

    #[test]
    fn a4_has_mutually_inverse_classes() {
        let h = conjugacy_class(&GroupTable::alternating(4)).unwrap();
        assert_eq!(h.n(), 4);
        assert!((0..4).any(|t| h.inv(t) != t));
    }

    #[test]
    fn theta_one_is_z2() {
        assert_eq!(theta2(1.0).unwrap(), cyclic(2).unwrap());
        assert!(theta2(0.0).is_err());
        assert!(theta2(1.5).is_err());
    }

    #[test]
    fn cosine_grid_3() {
        let h = cosine_grid(3).unwrap();
        assert_eq!((h.c(1, 1, 0), h.c(1, 1, 1), h.c(1, 1, 2)), (0.5, 0.0, 0.5));
        assert_eq!((h.c(2, 2, 0), h.c(2, 2, 1), h.c(2, 2, 2)), (1.0, 0.0, 0.0));
        assert!(h.validate().passed());
    }

    #[test]
    fn product_layout() {
        let h = product(&cyclic(2).unwrap(), &theta2(0.5).unwrap()).unwrap();
        assert_eq!(h.n(), 4);
        assert_eq!(h.identity(), 0);
        // (1,1)*(1,1) = (0, θ ε0 + (1-θ) ε1)
        assert_eq!(h.c(3, 3, 0), 0.5);
        assert_eq!(h.c(3, 3, 1), 0.5);
        assert!(h.validate().passed());
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "cyclic:4",
            "theta2:0.5",
            "conj-class:S3",
            "cosine-grid:17",
            "product(cyclic:2,theta2:0.5)",
            "product(product(cyclic:2,cyclic:3),conj-class:A4)",
        ] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("cyclic".parse::<FamilySpec>().is_err());
        assert!("torus:3".parse::<FamilySpec>().is_err());
        assert!("conj-class:Q8".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn bundled_families_validate_tightly() {
        for spec in bundled_families() {
            let h = spec.build().unwrap().with_tol(1e-12);
            let report = h.validate();
            assert!(report.passed(), "{spec}: {report:?}");
        }
    }
}
