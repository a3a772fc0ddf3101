//! Finite groups, Hopf quivers, and the path coalgebra of the basic cycle.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};

/// A finite group given by its Cayley table; element 0 is the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotAGroup(format!("row {a} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= order) {
                return Err(Error::NotAGroup(format!("entry {bad} out of range")));
            }
        }
        for a in 0..order {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::NotAGroup("element 0 is not the unit".into()));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(order);
        for (a, row) in table.iter().enumerate() {
            match row.iter().position(|&x| x == 0) {
                Some(b) if table[b][a] == 0 => inverses.push(b),
                _ => return Err(Error::NotAGroup(format!("element {a} has no inverse"))),
            }
        }
        Ok(FiniteGroup { table, inverses })
    }

    /// ℤ_n with element i standing for g^i.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("cyclic group of order 0".into()));
        }
        Self::from_table(
            (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
        )
    }

    /// S_3 realized as permutations of {0,1,2}, listed in lexicographic order
    /// of their images with the identity first.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("S_3 table is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Conjugacy classes, each sorted, ordered by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut classes = Vec::new();
        for a in 0..self.order() {
            if seen[a] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order())
                .map(|x| self.mul(self.mul(x, a), self.inv(x)))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&x| inside[x]).collect()
    }
}

/// Non-negative integers attached to the conjugacy classes of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationDatum {
    classes: Vec<Vec<usize>>,
    coefficients: Vec<u32>,
}

impl RamificationDatum {
    /// Zero on every class except those containing the listed representatives.
    pub fn for_group(group: &FiniteGroup, entries: &[(usize, u32)]) -> Result<Self> {
        let classes = group.conjugacy_classes();
        let mut coefficients = vec![0; classes.len()];
        for &(rep, r) in entries {
            let idx = classes
                .iter()
                .position(|c| c.contains(&rep))
                .ok_or_else(|| Error::MismatchedDatum(format!("{rep} is not a group element")))?;
            coefficients[idx] = r;
        }
        Ok(RamificationDatum {
            classes,
            coefficients,
        })
    }

    /// A datum given class by class; validated against a group by [`hopf_quiver`].
    pub fn from_classes(classes: Vec<Vec<usize>>, coefficients: Vec<u32>) -> Result<Self> {
        if classes.len() != coefficients.len() {
            return Err(Error::MismatchedDatum(
                "one coefficient per class is required".into(),
            ));
        }
        let mut classes = classes;
        for c in classes.iter_mut() {
            c.sort_unstable();
        }
        Ok(RamificationDatum {
            classes,
            coefficients,
        })
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn coefficient(&self, class_index: usize) -> u32 {
        self.coefficients[class_index]
    }

    /// Elements lying in a class with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .classes
            .iter()
            .zip(&self.coefficients)
            .filter(|(_, &r)| r > 0)
            .flat_map(|(c, _)| c.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    fn validate(&self, group: &FiniteGroup) -> Result<()> {
        let mut expected = group.conjugacy_classes();
        let mut given = self.classes.clone();
        expected.sort();
        given.sort();
        if expected != given {
            return Err(Error::MismatchedDatum(
                "datum classes are not the conjugacy classes of the group".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    /// Distinguishes parallel arrows x → cx for the same c.
    pub multiplicity: u32,
    /// The group element c with target = c·source.
    pub label: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn out_degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.target == v).count()
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertices];
        for a in &self.arrows {
            adj[a.source].push(a.target);
            adj[a.target].push(a.source);
        }
        let mut seen = vec![false; self.vertices];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }
}

/// Q(G, R): vertices G, and R_C arrows x → c·x for every x ∈ G and c ∈ C.
pub fn hopf_quiver(group: &FiniteGroup, datum: &RamificationDatum) -> Result<Quiver> {
    datum.validate(group)?;
    let mut arrows = Vec::new();
    for x in 0..group.order() {
        for (class, &r) in datum.classes.iter().zip(&datum.coefficients) {
            for &c in class {
                for m in 0..r {
                    arrows.push(Arrow {
                        source: x,
                        target: group.mul(c, x),
                        multiplicity: m,
                        label: c,
                    });
                }
            }
        }
    }
    Ok(Quiver {
        vertices: group.order(),
        arrows,
    })
}

/// Q(G, R) is connected iff the support of R generates G.
pub fn generation_criterion(group: &FiniteGroup, datum: &RamificationDatum) -> bool {
    group.generated_subgroup(&datum.support()).len() == group.order()
}

/// Connectivity of Q(G, R), computed both on the graph and by the
/// generation criterion; disagreement is reported as a structural error.
pub fn hopf_quiver_connected(group: &FiniteGroup, datum: &RamificationDatum) -> Result<bool> {
    let graph = hopf_quiver(group, datum)?.is_connected();
    let criterion = generation_criterion(group, datum);
    if graph != criterion {
        return Err(Error::Structural(format!(
            "graph connectivity {graph} disagrees with generation criterion {criterion}"
        )));
    }
    Ok(graph)
}

/// The outcome of deciding which Hopf quivers carry a finite-dimensional
/// graded Majid algebra of finite corepresentation type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiverShape {
    /// No arrows: only cosemisimple coalgebras live here.
    Arrowless,
    Disconnected,
    /// A single loop at a single vertex; its shuffle algebra is infinite-dimensional.
    Loop,
    /// The basic cycle Z^n, n ≥ 2, generated by the given central element.
    BasicCycle { n: usize, generator: usize },
    /// Some vertex has two or more outgoing arrows: contains a wild or
    /// infinite-type subquiver.
    InfiniteType,
}

impl QuiverShape {
    pub fn is_finite_type_cycle(&self) -> bool {
        matches!(self, QuiverShape::BasicCycle { .. })
    }
}

pub fn classify_hopf_quiver(group: &FiniteGroup, datum: &RamificationDatum) -> Result<QuiverShape> {
    let quiver = hopf_quiver(group, datum)?;
    if quiver.arrows.is_empty() {
        return Ok(QuiverShape::Arrowless);
    }
    if !hopf_quiver_connected(group, datum)? {
        return Ok(QuiverShape::Disconnected);
    }
    if quiver.out_degree(0) != 1 {
        return Ok(QuiverShape::InfiniteType);
    }
    let generator = quiver
        .arrows
        .iter()
        .find(|a| a.source == 0)
        .map(|a| a.label)
        .expect("out-degree one");
    if group.order() == 1 {
        return Ok(QuiverShape::Loop);
    }
    Ok(QuiverShape::BasicCycle {
        n: group.order(),
        generator,
    })
}

/// A path p_i^l on the basic cycle Z^n: source vertex g^i, length l.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    // Field order gives the basis ordering: by length, then source.
    n: u32,
    length: u32,
    source: u32,
}

impl Path {
    pub fn new(n: u32, source: i64, length: u32) -> Self {
        assert!(n > 0, "cycle of size 0");
        Path {
            n,
            length,
            source: source.rem_euclid(n as i64) as u32,
        }
    }

    /// The vertex g^i = p_i^0.
    pub fn vertex(n: u32, i: i64) -> Self {
        Self::new(n, i, 0)
    }

    /// The arrow X_i: g^{i−1} → g^i.
    pub fn arrow(n: u32, i: i64) -> Self {
        Self::new(n, i - 1, 1)
    }

    pub fn cycle_size(&self) -> u32 {
        self.n
    }

    pub fn source(&self) -> u32 {
        self.source
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn target(&self) -> u32 {
        ((self.source as u64 + self.length as u64) % self.n as u64) as u32
    }

    pub fn is_vertex(&self) -> bool {
        self.length == 0
    }

    pub fn counit(&self) -> i64 {
        i64::from(self.length == 0)
    }

    /// Deconcatenation: the l+1 pairs (p_{i+k}^{l−k}, p_i^k), k = 0..l.
    pub fn comultiply(&self) -> Vec<(Path, Path)> {
        (0..=self.length)
            .map(|k| {
                (
                    Path::new(self.n, self.source as i64 + k as i64, self.length - k),
                    Path::new(self.n, self.source as i64, k),
                )
            })
            .collect()
    }

    /// All `parts`-thin splits, one per 0/1 sequence with `length` ones.
    pub fn thin_splits(&self, parts: u32) -> Result<Vec<ThinSplit>> {
        if parts < self.length {
            return Err(Error::ThinSplit {
                length: self.length,
                parts,
            });
        }
        let mut out = Vec::new();
        let mut pattern = Vec::with_capacity(parts as usize);
        self.collect_splits(parts, self.length, &mut pattern, &mut out);
        Ok(out)
    }

    /// The thin split attached to one 0/1 pattern.
    pub fn split_by(&self, pattern: &[bool]) -> Result<ThinSplit> {
        let ones = pattern.iter().filter(|&&x| x).count() as u32;
        if ones != self.length {
            return Err(Error::ThinSplit {
                length: self.length,
                parts: pattern.len() as u32,
            });
        }
        Ok(ThinSplit::from_pattern(self, pattern.to_vec()))
    }

    fn collect_splits(&self, parts: u32, ones: u32, pattern: &mut Vec<bool>, out: &mut Vec<ThinSplit>) {
        let remaining = parts - pattern.len() as u32;
        if remaining == 0 {
            out.push(ThinSplit::from_pattern(self, pattern.clone()));
            return;
        }
        if remaining > ones {
            pattern.push(false);
            self.collect_splits(parts, ones, pattern, out);
            pattern.pop();
        }
        if ones > 0 {
            pattern.push(true);
            self.collect_splits(parts, ones - 1, pattern, out);
            pattern.pop();
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p({},{})", self.source, self.length)
    }
}

/// Parses "p(i,l)", "g^i", "g", "e" or "X_i" relative to a cycle size.
pub fn parse_path(text: &str, n: u32) -> Result<Path> {
    if n == 0 {
        return Err(Error::InvalidParameter("cycle of size 0".into()));
    }
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("unrecognized path `{text}`"));
    let int = |s: &str| s.parse::<i64>().map_err(|_| bad());
    if let Some(inner) = t.strip_prefix("p(").and_then(|s| s.strip_suffix(')')) {
        let (i, l) = inner.split_once(',').ok_or_else(bad)?;
        let l = l.parse::<u32>().map_err(|_| bad())?;
        return Ok(Path::new(n, int(i)?, l));
    }
    if let Some(i) = t.strip_prefix("g^") {
        return Ok(Path::vertex(n, int(i)?));
    }
    if let Some(i) = t.strip_prefix("X_") {
        return Ok(Path::arrow(n, int(i)?));
    }
    match t.as_str() {
        "g" => Ok(Path::vertex(n, 1)),
        "e" | "1" => Ok(Path::vertex(n, 0)),
        _ => Err(bad()),
    }
}

/// A path with its cycle size left open, as written in JSON documents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathLabel {
    pub source: i64,
    pub length: u32,
}

impl FromStr for PathLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        // Parse against a cycle large enough not to reduce the source.
        let p = parse_path(s, u32::MAX)?;
        Ok(PathLabel {
            source: p.source as i64,
            length: p.length,
        })
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PathLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One piece of a thin split: a vertex g^v or an arrow X_i.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    Vertex(u32),
    /// Arrow X_i with i ∈ 1..=n.
    Arrow(u32),
}

/// A thin split (dp)_1, …, (dp)_parts; piece 1 sits at the source end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThinSplit {
    pub pattern: Vec<bool>,
    pub pieces: Vec<Piece>,
}

impl ThinSplit {
    fn from_pattern(path: &Path, pattern: Vec<bool>) -> Self {
        let n = path.n;
        let mut v = path.source;
        let pieces = pattern
            .iter()
            .map(|&is_arrow| {
                if is_arrow {
                    v = (v + 1) % n;
                    Piece::Arrow(if v == 0 { n } else { v })
                } else {
                    Piece::Vertex(v)
                }
            })
            .collect();
        ThinSplit { pattern, pieces }
    }
}

/// A finitely supported linear combination of paths.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathVector {
    terms: BTreeMap<Path, CycloNum>,
}

impl PathVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_path(p: Path) -> Self {
        Self::term(CycloNum::one(), p)
    }

    pub fn term(coeff: CycloNum, p: Path) -> Self {
        let mut v = Self::new();
        v.add_term(coeff, p);
        v
    }

    pub fn add_term(&mut self, coeff: CycloNum, p: Path) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&p) {
            Some(old) => {
                let sum = old + coeff;
                if !sum.is_zero() {
                    self.terms.insert(p, sum);
                }
            }
            None => {
                self.terms.insert(p, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(c.clone(), *p);
        }
        out
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        let mut out = Self::new();
        for (p, x) in &self.terms {
            out.add_term(x * c, *p);
        }
        out
    }

    pub fn coefficient(&self, p: &Path) -> CycloNum {
        self.terms.get(p).cloned().unwrap_or_else(CycloNum::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Path, &CycloNum)> {
        self.terms.iter()
    }

    /// Degree if homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut lengths = self.terms.keys().map(|p| p.length);
        let first = lengths.next()?;
        lengths.all(|l| l == first).then_some(first)
    }
}

impl fmt::Display for PathVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| {
                if c.is_one() {
                    p.to_string()
                } else {
                    format!("({c})*{p}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
