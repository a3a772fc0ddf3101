//! Corepresentations of M(n,s,q), stored as representations of the cyclic
//! quiver bound by "every composite of d arrows vanishes".
//!
//! Dictionary: the vertex-i part of a module is the g^i-isotypic component of
//! the comodule, and arrows[i]: V_i → V_{i+1} is the coefficient of p(i,1) in
//! the coaction. Higher coaction components are composites of arrows.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::MajidAlgebra;
use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::Path;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleModule {
    n: u32,
    d: u32,
    dims: Vec<usize>,
    arrows: Vec<Matrix>,
}

fn vertex(n: u32, i: i64) -> usize {
    i.rem_euclid(n as i64) as usize
}

impl CycleModule {
    /// Validates shapes and the bound relation.
    pub fn new(n: u32, d: u32, dims: Vec<usize>, arrows: Vec<Matrix>) -> Result<Self> {
        if n < 1 || d < 1 {
            return Err(Error::InvalidParameter(format!("need n, d ≥ 1, got n = {n}, d = {d}")));
        }
        if dims.len() != n as usize || arrows.len() != n as usize {
            return Err(Error::InvalidParameter(format!(
                "expected {n} dimensions and {n} arrow matrices"
            )));
        }
        for (i, a) in arrows.iter().enumerate() {
            let next = dims[(i + 1) % n as usize];
            if a.rows() != next || a.cols() != dims[i] {
                return Err(Error::InvalidParameter(format!(
                    "arrow {i} is {}x{}, expected {next}x{}",
                    a.rows(),
                    a.cols(),
                    dims[i]
                )));
            }
        }
        let m = CycleModule { n, d, dims, arrows };
        for i in 0..n as i64 {
            if !m.composite(i, d as usize)?.is_zero() {
                return Err(Error::NotAComodule(format!(
                    "the composite of {d} arrows starting at vertex {i} is nonzero"
                )));
            }
        }
        Ok(m)
    }

    pub fn zero(n: u32, d: u32) -> Self {
        CycleModule {
            n,
            d,
            dims: vec![0; n as usize],
            arrows: vec![Matrix::zeros(0, 0); n as usize],
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn arrow(&self, i: i64) -> &Matrix {
        &self.arrows[vertex(self.n, i)]
    }

    pub fn arrows(&self) -> &[Matrix] {
        &self.arrows
    }

    /// A_{i+k−1} ⋯ A_{i+1} A_i : V_i → V_{i+k}.
    pub fn composite(&self, i: i64, k: usize) -> Result<Matrix> {
        let start = vertex(self.n, i);
        let mut acc = Matrix::identity(self.dims[start]);
        for step in 0..k {
            acc = self.arrows[(start + step) % self.n as usize].mul(&acc)?;
        }
        Ok(acc)
    }

    /// Grothendieck class in the basis of simples: the dimension vector.
    pub fn class(&self) -> Vec<u64> {
        self.dims.iter().map(|&x| x as u64).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(&ModuleDocument::from(self)).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ModuleDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.try_into()
    }
}

/// Matrix entries in module files: plain integers or full cyclotomic numbers.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Cyclo(CycloNum),
}

impl From<&CycloNum> for Entry {
    fn from(c: &CycloNum) -> Self {
        match c.to_rational() {
            Some(r) if r.is_integer() => match i64::try_from(r.to_integer()) {
                Ok(k) => Entry::Int(k),
                Err(_) => Entry::Cyclo(c.clone()),
            },
            _ => Entry::Cyclo(c.clone()),
        }
    }
}

impl From<Entry> for CycloNum {
    fn from(e: Entry) -> Self {
        match e {
            Entry::Int(k) => CycloNum::from_integer(k),
            Entry::Cyclo(c) => c,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ModuleDocument {
    n: u32,
    d: u32,
    dims: Vec<usize>,
    arrows: Vec<Vec<Vec<Entry>>>,
}

impl From<&CycleModule> for ModuleDocument {
    fn from(m: &CycleModule) -> Self {
        ModuleDocument {
            n: m.n,
            d: m.d,
            dims: m.dims.clone(),
            arrows: m
                .arrows
                .iter()
                .map(|a| (0..a.rows()).map(|r| a.row(r).iter().map(Entry::from).collect()).collect())
                .collect(),
        }
    }
}

impl TryFrom<ModuleDocument> for CycleModule {
    type Error = Error;
    fn try_from(doc: ModuleDocument) -> Result<Self> {
        if doc.dims.len() != doc.n as usize || doc.arrows.len() != doc.n as usize {
            return Err(Error::Parse(format!("expected {} dimensions and arrow matrices", doc.n)));
        }
        let mut arrows = Vec::with_capacity(doc.arrows.len());
        for (i, rows) in doc.arrows.into_iter().enumerate() {
            let cols = doc.dims[i];
            let rows: Vec<Vec<CycloNum>> = rows
                .into_iter()
                .map(|r| r.into_iter().map(CycloNum::from).collect())
                .collect();
            if rows.iter().any(|r| r.len() != cols) {
                return Err(Error::Parse(format!("arrow {i} has rows of the wrong length")));
            }
            let height = rows.len();
            let m = if height == 0 { Matrix::zeros(0, cols) } else { Matrix::from_rows(rows)? };
            debug_assert_eq!(m.rows(), height);
            arrows.push(m);
        }
        CycleModule::new(doc.n, doc.d, doc.dims, arrows)
    }
}

/// The uniserial module with top at vertex `top` and `length` composition factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IntervalModule {
    pub top: u32,
    pub length: u32,
}

impl IntervalModule {
    pub fn new(top: u32, length: u32) -> Self {
        IntervalModule { top, length }
    }

    pub fn dim_vector(&self, n: u32) -> Vec<usize> {
        let mut dims = vec![0; n as usize];
        for k in 0..self.length {
            dims[((self.top + k) % n) as usize] += 1;
        }
        dims
    }

    /// Explicit realization: basis e_0 … e_{ℓ−1}, e_k at vertex top + k,
    /// each arrow sending e_k to e_{k+1}.
    pub fn realize(&self, n: u32, d: u32) -> Result<CycleModule> {
        if self.length == 0 || self.length > d || self.top >= n {
            return Err(Error::InvalidParameter(format!("{self} is not an interval for n = {n}, d = {d}")));
        }
        let dims = self.dim_vector(n);
        // position of e_k inside its vertex
        let pos = |k: u32| (k / n) as usize;
        let mut arrows: Vec<Matrix> = (0..n as usize)
            .map(|v| Matrix::zeros(dims[(v + 1) % n as usize], dims[v]))
            .collect();
        for k in 0..self.length - 1 {
            let v = ((self.top + k) % n) as usize;
            arrows[v].set(pos(k + 1), pos(k), CycloNum::one());
        }
        CycleModule::new(n, d, dims, arrows)
    }
}

impl fmt::Display for IntervalModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({},{})", self.top, self.length)
    }
}

impl FromStr for IntervalModule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected I(i,l), got `{s}`"));
        let inner = s
            .trim()
            .strip_prefix("I(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (i, l) = inner.split_once(',').ok_or_else(bad)?;
        Ok(IntervalModule {
            top: i.trim().parse().map_err(|_| bad())?,
            length: l.trim().parse().map_err(|_| bad())?,
        })
    }
}

/// All n·d interval modules, ordered by length then top.
pub fn indecomposables(n: u32, d: u32) -> Vec<IntervalModule> {
    (1..=d)
        .flat_map(|l| (0..n).map(move |i| IntervalModule::new(i, l)))
        .collect()
}

/// Krull–Schmidt multiplicities from ranks of arrow composites.
pub fn decompose(m: &CycleModule) -> Result<Vec<(IntervalModule, usize)>> {
    let (n, d) = (m.n as i64, m.d as usize);
    // r[i][k] for 0 ≤ k ≤ d + 1
    let mut r = vec![vec![0usize; d + 2]; n as usize];
    for i in 0..n {
        let row = &mut r[i as usize];
        row[0] = m.dims[i as usize];
        let mut acc = Matrix::identity(m.dims[i as usize]);
        for k in 1..=d {
            acc = m.arrow(i + k as i64 - 1).mul(&acc)?;
            row[k] = acc.rank()?;
        }
        if row[d] != 0 {
            return Err(Error::NotAComodule(format!(
                "the composite of {d} arrows starting at vertex {i} is nonzero"
            )));
        }
    }
    let rank = |i: i64, k: usize| r[vertex(m.n, i)][k.min(d + 1)] as i64;
    let mut out = Vec::new();
    for l in 1..=d {
        for i in 0..n {
            let mult = (rank(i, l - 1) - rank(i, l)) - (rank(i - 1, l) - rank(i - 1, l + 1));
            if mult < 0 {
                return Err(Error::Structural(format!("negative multiplicity for I({i},{l})")));
            }
            if mult > 0 {
                out.push((IntervalModule::new(i as u32, l as u32), mult as usize));
            }
        }
    }
    let mut rebuilt = vec![0usize; n as usize];
    for (iv, k) in &out {
        for (acc, x) in rebuilt.iter_mut().zip(iv.dim_vector(m.n)) {
            *acc += k * x;
        }
    }
    if rebuilt != m.dims {
        return Err(Error::Structural("multiplicities do not reconstruct the dimension vector".into()));
    }
    Ok(out)
}

pub fn direct_sum(a: &CycleModule, b: &CycleModule) -> Result<CycleModule> {
    if (a.n, a.d) != (b.n, b.d) {
        return Err(Error::Mismatch(format!(
            "direct sum of modules over (n, d) = ({}, {}) and ({}, {})",
            a.n, a.d, b.n, b.d
        )));
    }
    let dims = a.dims.iter().zip(&b.dims).map(|(x, y)| x + y).collect();
    let arrows = a
        .arrows
        .iter()
        .zip(&b.arrows)
        .map(|(x, y)| Matrix::block_diag(&[x.clone(), y.clone()]))
        .collect();
    CycleModule::new(a.n, a.d, dims, arrows)
}

/// Direct sum of realized intervals with the given multiplicities.
pub fn from_decomposition(n: u32, d: u32, parts: &[(IntervalModule, usize)]) -> Result<CycleModule> {
    let mut acc = CycleModule::zero(n, d);
    for (iv, k) in parts {
        let piece = iv.realize(n, d)?;
        for _ in 0..*k {
            acc = direct_sum(&acc, &piece)?;
        }
    }
    Ok(acc)
}

/// A basis of Hom(X, Y); each element is one matrix per vertex.
pub fn hom_space(x: &CycleModule, y: &CycleModule) -> Result<Vec<Vec<Matrix>>> {
    if (x.n, x.d) != (y.n, y.d) {
        return Err(Error::Mismatch("hom between modules over different quivers".into()));
    }
    let n = x.n as usize;
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + y.dims[v] * x.dims[v];
    }
    let unknowns = offset[n];
    let var = |v: usize, r: usize, c: usize| offset[v] + r * x.dims[v] + c;
    let mut rows: Vec<Vec<CycloNum>> = Vec::new();
    // A^Y_v f_v − f_{v+1} A^X_v = 0, entrywise
    for v in 0..n {
        let w = (v + 1) % n;
        let (ay, ax) = (&y.arrows[v], &x.arrows[v]);
        for r in 0..y.dims[w] {
            for c in 0..x.dims[v] {
                let mut eq = vec![CycloNum::zero(); unknowns];
                for k in 0..y.dims[v] {
                    let a = ay.get(r, k);
                    if !a.is_zero() {
                        let slot = &mut eq[var(v, k, c)];
                        *slot = &*slot + a;
                    }
                }
                for k in 0..x.dims[w] {
                    let a = ax.get(k, c);
                    if !a.is_zero() {
                        let slot = &mut eq[var(w, r, k)];
                        *slot = &*slot - a;
                    }
                }
                rows.push(eq);
            }
        }
    }
    let basis = if unknowns == 0 {
        Vec::new()
    } else if rows.is_empty() {
        (0..unknowns)
            .map(|k| {
                let mut e = vec![CycloNum::zero(); unknowns];
                e[k] = CycloNum::one();
                e
            })
            .collect()
    } else {
        Matrix::from_rows(rows)?.nullspace()?
    };
    Ok(basis
        .into_iter()
        .map(|vec| {
            (0..n)
                .map(|v| {
                    let mut f = Matrix::zeros(y.dims[v], x.dims[v]);
                    for r in 0..y.dims[v] {
                        for c in 0..x.dims[v] {
                            f.set(r, c, vec[var(v, r, c)].clone());
                        }
                    }
                    f
                })
                .collect()
        })
        .collect())
}

/// True iff the radical layers are all one-dimensional (submodules form a chain).
pub fn uniserial_check(m: &CycleModule) -> Result<bool> {
    if m.total_dim() == 0 {
        return Ok(false);
    }
    let n = m.n as usize;
    let mut span: Vec<Matrix> = (0..n).map(|v| Matrix::identity(m.dims[v])).collect();
    let mut dim = m.total_dim();
    while dim > 0 {
        let next: Vec<Matrix> = (0..n)
            .map(|v| {
                let u = (v + n - 1) % n;
                m.arrows[u].mul(&span[u])
            })
            .collect::<Result<_>>()?;
        let next_dim: usize = next
            .iter()
            .map(|s| if s.rows() == 0 || s.cols() == 0 { Ok(0) } else { s.rank() })
            .sum::<Result<usize>>()?;
        if dim - next_dim != 1 {
            return Ok(false);
        }
        span = next;
        dim = next_dim;
    }
    Ok(true)
}

/// The tensor product of two comodules of M, with the reassociator values
/// that act on its group-like components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorReport {
    pub module: CycleModule,
    /// Φ(g^i, g^j, g^k) for vertices i, j in the supports of the factors and
    /// all k: the associator's scalar on (V_i ⊗ W_j) ⊗ U_k.
    pub associator: Vec<((u32, u32, u32), CycloNum)>,
}

/// X ⊗ Y with coaction x ⊗ y ↦ x₀ ⊗ y₀ ⊗ x₁y₁ evaluated through M's products.
pub fn comodule_tensor(alg: &MajidAlgebra, x: &CycleModule, y: &CycleModule) -> Result<TensorReport> {
    let (n, d) = (alg.n(), alg.d());
    for m in [x, y] {
        if (m.n, m.d) != (n, d) {
            return Err(Error::Mismatch(format!(
                "module over (n, d) = ({}, {}) but the algebra has ({n}, {d})",
                m.n, m.d
            )));
        }
    }
    let nu = n as usize;
    // layout of vertex k of the tensor: blocks (i, j = k − i) for i = 0..n
    let mut offset = vec![vec![0usize; nu]; nu];
    let mut dims = vec![0usize; nu];
    for k in 0..nu {
        for i in 0..nu {
            let j = (k + nu - i) % nu;
            offset[k][i] = dims[k];
            dims[k] += x.dims[i] * y.dims[j];
        }
    }
    // coefficient of p(i+j, 1) in a product of basis elements of M
    let coeff = |a: Path, b: Path| -> Result<CycloNum> {
        let (ia, ib) = (alg.index_of(&a), alg.index_of(&b));
        let (Some(ia), Some(ib)) = (ia, ib) else {
            return Ok(CycloNum::zero());
        };
        Ok(match alg.product(ia, ib) {
            Some((c, t)) => {
                let target = Path::new(n, a.source() as i64 + b.source() as i64, a.length() + b.length());
                if alg.basis()[t] != target {
                    return Err(Error::Structural(format!("{a} * {b} does not land on {target}")));
                }
                c.clone()
            }
            None => CycloNum::zero(),
        })
    };
    let mut arrows: Vec<Matrix> = (0..nu).map(|k| Matrix::zeros(dims[(k + 1) % nu], dims[k])).collect();
    for i in 0..nu {
        for j in 0..nu {
            let k = (i + j) % nu;
            let k1 = (k + 1) % nu;
            let (i1, j1) = ((i + 1) % nu, (j + 1) % nu);
            let (dx, dy) = (x.dims[i], y.dims[j]);
            if dx * dy == 0 {
                continue;
            }
            let c_left = coeff(Path::new(n, i as i64, 1), Path::vertex(n, j as i64))?;
            let c_right = coeff(Path::vertex(n, i as i64), Path::new(n, j as i64, 1))?;
            let arrow = &mut arrows[k];
            // (A x) ⊗ y lands in block (i+1, j)
            if !c_left.is_zero() {
                let ax = &x.arrows[i];
                for a in 0..dx {
                    for b in 0..dy {
                        for a2 in 0..x.dims[i1] {
                            let v = ax.get(a2, a);
                            if v.is_zero() {
                                continue;
                            }
                            let row = offset[k1][i1] + a2 * y.dims[j] + b;
                            let col = offset[k][i] + a * dy + b;
                            arrow.set(row, col, &(v * &c_left) + arrow.get(row, col));
                        }
                    }
                }
            }
            // x ⊗ (A y) lands in block (i, j+1)
            if !c_right.is_zero() {
                let ay = &y.arrows[j];
                for a in 0..dx {
                    for b in 0..dy {
                        for b2 in 0..y.dims[j1] {
                            let v = ay.get(b2, b);
                            if v.is_zero() {
                                continue;
                            }
                            let row = offset[k1][i] + a * y.dims[j1] + b2;
                            let col = offset[k][i] + a * dy + b;
                            arrow.set(row, col, &(v * &c_right) + arrow.get(row, col));
                        }
                    }
                }
            }
        }
    }
    let module = CycleModule::new(n, d, dims, arrows)?;
    let mut associator = Vec::new();
    for i in (0..n).filter(|&i| x.dims[i as usize] > 0) {
        for j in (0..n).filter(|&j| y.dims[j as usize] > 0) {
            for k in 0..n {
                associator.push(((i, j, k), alg.phi(i as i64, j as i64, k as i64).clone()));
            }
        }
    }
    Ok(TensorReport { module, associator })
}

/// The Grothendieck ring on the simple basis: fusion[k] is the matrix of
/// left multiplication by [V_{g^k}].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionData {
    pub n: u32,
    pub fusion: Vec<Vec<Vec<u64>>>,
}

impl FusionData {
    /// ℤ[ℤ_n]: [g^k][g^j] = [g^{k+j}].
    pub fn cyclic(n: u32) -> Self {
        let nu = n as usize;
        let fusion = (0..nu)
            .map(|k| {
                (0..nu)
                    .map(|a| (0..nu).map(|b| u64::from((k + b) % nu == a)).collect())
                    .collect()
            })
            .collect();
        FusionData { n, fusion }
    }

    /// Fusion of simples read off from actual tensor products in M.
    pub fn from_algebra(alg: &MajidAlgebra) -> Result<Self> {
        let (n, d) = (alg.n(), alg.d());
        let nu = n as usize;
        let simples: Vec<CycleModule> = (0..n)
            .map(|i| IntervalModule::new(i, 1).realize(n, d))
            .collect::<Result<_>>()?;
        let mut fusion = vec![vec![vec![0u64; nu]; nu]; nu];
        for k in 0..nu {
            for b in 0..nu {
                let t = comodule_tensor(alg, &simples[k], &simples[b])?;
                for (iv, mult) in decompose(&t.module)? {
                    if iv.length != 1 {
                        return Err(Error::Structural(format!("a tensor of simples contains {iv}")));
                    }
                    fusion[k][iv.top as usize][b] += mult as u64;
                }
            }
        }
        Ok(FusionData { n, fusion })
    }

    /// Σ_k class[k]·fusion[k].
    pub fn left_multiplication(&self, class: &[u64]) -> Result<Vec<Vec<u64>>> {
        let nu = self.n as usize;
        if class.len() != nu {
            return Err(Error::InvalidParameter(format!("a class needs {nu} coordinates")));
        }
        let mut out = vec![vec![0u64; nu]; nu];
        for (k, &c) in class.iter().enumerate() {
            for a in 0..nu {
                for b in 0..nu {
                    out[a][b] += c * self.fusion[k][a][b];
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FpDimension {
    /// Perron eigenvalue from power iteration.
    pub value: f64,
    /// Exact value when the matrix has constant row and column sums
    /// (then it is a nonnegative integer combination of permutation matrices).
    pub certificate: Option<u64>,
    pub iterations: usize,
}

pub const FP_TOLERANCE: f64 = 1e-9;

pub fn fp_dimension(fusion: &FusionData, class: &[u64]) -> Result<FpDimension> {
    let l = fusion.left_multiplication(class)?;
    let nu = l.len();
    let row_sums: Vec<u64> = l.iter().map(|r| r.iter().sum()).collect();
    let col_sums: Vec<u64> = (0..nu).map(|c| l.iter().map(|r| r[c]).sum()).collect();
    let certificate = (row_sums.iter().all(|&s| s == row_sums[0]) && col_sums.iter().all(|&s| s == row_sums[0]))
        .then_some(row_sums[0]);
    // power iteration on L + I, which is primitive whenever L is irreducible
    let mut v: Vec<f64> = (0..nu).map(|k| 0.5 + k as f64 / (2 * nu) as f64).collect();
    let mut estimate = 0.0;
    let mut iterations = 0;
    for it in 1..=1_000_000 {
        iterations = it;
        let w: Vec<f64> = (0..nu)
            .map(|a| v[a] + (0..nu).map(|b| l[a][b] as f64 * v[b]).sum::<f64>())
            .collect();
        let norm = w.iter().cloned().fold(0.0, f64::max);
        // v is normalized to max 1, so norm is the current eigenvalue estimate
        estimate = norm;
        let residual = w.iter().zip(&v).map(|(a, b)| (a - norm * b).abs()).fold(0.0, f64::max);
        v = w.into_iter().map(|x| x / norm).collect();
        if residual < FP_TOLERANCE * 1e-3 {
            break;
        }
    }
    Ok(FpDimension {
        value: estimate - 1.0,
        certificate,
        iterations,
    })
}

/// Multiplicity table keyed by interval, handy for comparisons.
pub fn multiplicities(parts: &[(IntervalModule, usize)]) -> BTreeMap<IntervalModule, usize> {
    parts.iter().map(|&(iv, k)| (iv, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::Parameters;

    #[test]
    fn intervals_realize_and_decompose() {
        for (n, d) in [(2, 2), (2, 4), (3, 3), (3, 2), (4, 4)] {
            let all = indecomposables(n, d);
            assert_eq!(all.len(), (n * d) as usize);
            for iv in &all {
                let m = iv.realize(n, d).unwrap();
                assert_eq!(decompose(&m).unwrap(), vec![(*iv, 1)]);
                assert!(uniserial_check(&m).unwrap());
            }
            let sum = from_decomposition(n, d, &all.iter().map(|&iv| (iv, 1)).collect::<Vec<_>>()).unwrap();
            let mut got = decompose(&sum).unwrap();
            got.sort();
            let mut expected: Vec<_> = all.iter().map(|&iv| (iv, 1)).collect();
            expected.sort();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn wrapping_interval() {
        let m = IntervalModule::new(1, 4).realize(2, 4).unwrap();
        assert_eq!(m.dims(), &[2, 2]);
        assert!(m.composite(1, 3).unwrap().rank().unwrap() == 1);
        assert!(m.composite(0, 3).unwrap().is_zero());
    }

    #[test]
    fn non_comodule_is_rejected() {
        let a = Matrix::from_i64(1, 1, &[1]);
        let err = CycleModule::new(2, 3, vec![1, 1], vec![a.clone(), a]).unwrap_err();
        assert!(matches!(err, Error::NotAComodule(_)));
    }

    #[test]
    fn decomposable_is_not_uniserial() {
        let s = IntervalModule::new(0, 1).realize(3, 3).unwrap();
        assert!(!uniserial_check(&direct_sum(&s, &s).unwrap()).unwrap());
    }

    #[test]
    fn hom_dimensions() {
        let p = IntervalModule::new(0, 3).realize(3, 3).unwrap();
        for iv in indecomposables(3, 3) {
            let x = iv.realize(3, 3).unwrap();
            assert_eq!(hom_space(&p, &x).unwrap().len(), x.dims()[0]);
        }
        let s = IntervalModule::new(0, 1).realize(3, 3).unwrap();
        let t = IntervalModule::new(1, 1).realize(3, 3).unwrap();
        assert_eq!(hom_space(&s, &t).unwrap().len(), 0);
        assert_eq!(hom_space(&s, &s).unwrap().len(), 1);
    }

    #[test]
    fn module_json_round_trip() {
        let m = IntervalModule::new(1, 3).realize(2, 4).unwrap();
        let text = m.to_json().unwrap();
        assert_eq!(CycleModule::from_json(&text).unwrap(), m);
        assert!("I(2,3)".parse::<IntervalModule>().unwrap() == IntervalModule::new(2, 3));
        assert!("J(2,3)".parse::<IntervalModule>().is_err());
    }

    #[test]
    fn tensor_with_simples() {
        let alg = MajidAlgebra::from_params(Parameters::new(2, 1, 1).unwrap()).unwrap();
        let (n, d) = (2, 4);
        let g = IntervalModule::new(1, 1).realize(n, d).unwrap();
        for iv in indecomposables(n, d) {
            let x = iv.realize(n, d).unwrap();
            let t = comodule_tensor(&alg, &g, &x).unwrap();
            let shifted = IntervalModule::new((iv.top + 1) % n, iv.length);
            assert_eq!(decompose(&t.module).unwrap(), vec![(shifted, 1)]);
            let unit = IntervalModule::new(0, 1).realize(n, d).unwrap();
            assert_eq!(decompose(&comodule_tensor(&alg, &unit, &x).unwrap().module).unwrap(), vec![(iv, 1)]);
        }
    }

    #[test]
    fn fusion_and_fp_dimensions() {
        let alg = MajidAlgebra::from_params(Parameters::new(3, 1, 1).unwrap()).unwrap();
        let fusion = FusionData::from_algebra(&alg).unwrap();
        assert_eq!(fusion, FusionData::cyclic(3));
        for iv in indecomposables(3, alg.d()) {
            let class = iv.realize(3, alg.d()).unwrap().class();
            let fp = fp_dimension(&fusion, &class).unwrap();
            assert_eq!(fp.certificate, Some(iv.length as u64));
            assert!((fp.value - iv.length as f64).abs() < FP_TOLERANCE, "{fp:?}");
        }
    }
}
