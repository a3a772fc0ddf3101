//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's linear algebra or decomposition code.
#![allow(dead_code)]

use mqg_core::{CycleModule, CycloNum, Matrix, RootOfUnity};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------------
// Scalars: exact rationals and a large prime field.

pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(k: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(k: i64) -> Self {
        BigRational::from_integer(BigInt::from(k))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

pub const PRIME: u64 = 2_147_483_647;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp(pub u64);

impl Scalar for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(k: i64) -> Self {
        Fp(k.rem_euclid(PRIME as i64) as u64)
    }
    fn add(&self, o: &Self) -> Self {
        Fp((self.0 + o.0) % PRIME)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(self.0 * o.0 % PRIME)
    }
    fn neg(&self) -> Self {
        Fp((PRIME - self.0) % PRIME)
    }
    fn inv(&self) -> Self {
        // Fermat
        let (mut base, mut e, mut acc) = (self.0, PRIME - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % PRIME;
            }
            base = base * base % PRIME;
            e >>= 1;
        }
        Fp(acc)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

/// Row-reduces in place; returns pivot columns.
fn row_reduce<S: Scalar>(m: &mut [Vec<S>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][c].inv();
        for x in m[row].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..m.len() {
            if r != row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..cols {
                    let v = m[row][k].mul(&f);
                    m[r][k] = m[r][k].sub(&v);
                }
            }
        }
        pivots.push(c);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank<S: Scalar>(rows: &[Vec<S>], cols: usize) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m, cols).len()
}

pub fn nullspace<S: Scalar>(rows: &[Vec<S>], cols: usize) -> Vec<Vec<S>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); cols];
            v[f] = S::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = m[r][f].neg();
            }
            v
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Quiver representations over a scalar type.

/// arrows[v][row][col] : V_v → V_{v+1}
#[derive(Clone, Debug, PartialEq)]
pub struct Rep<S> {
    pub n: usize,
    pub dims: Vec<usize>,
    pub arrows: Vec<Vec<Vec<S>>>,
}

pub type Hom<S> = Vec<Vec<Vec<S>>>;

impl<S: Scalar> Rep<S> {
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn from_module(m: &CycleModule, conv: impl Fn(&CycloNum) -> S) -> Self {
        let n = m.n() as usize;
        Rep {
            n,
            dims: m.dims().to_vec(),
            arrows: m
                .arrows()
                .iter()
                .map(|a| (0..a.rows()).map(|r| a.row(r).iter().map(&conv).collect()).collect())
                .collect(),
        }
    }

    /// The composite of k arrows out of vertex v, as a dense matrix.
    pub fn composite(&self, v: usize, k: usize) -> Vec<Vec<S>> {
        let mut acc: Vec<Vec<S>> = (0..self.dims[v])
            .map(|r| (0..self.dims[v]).map(|c| if r == c { S::one() } else { S::zero() }).collect())
            .collect();
        for step in 0..k {
            let a = &self.arrows[(v + step) % self.n];
            acc = matmul(a, &acc, self.dims[v]);
        }
        acc
    }
}

fn matmul<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>], b_cols: usize) -> Vec<Vec<S>> {
    a.iter()
        .map(|row| {
            (0..b_cols)
                .map(|c| {
                    row.iter()
                        .enumerate()
                        .fold(S::zero(), |acc, (k, x)| acc.add(&x.mul(&b[k][c])))
                })
                .collect()
        })
        .collect()
}

pub fn rat(c: &CycloNum) -> BigRational {
    c.to_rational().expect("rational entry")
}

/// Basis of Hom(X, Y) by solving A^Y f_v = f_{v+1} A^X entrywise.
pub fn hom<S: Scalar>(x: &Rep<S>, y: &Rep<S>) -> Vec<Hom<S>> {
    let n = x.n;
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + y.dims[v] * x.dims[v];
    }
    let unknowns = offset[n];
    let var = |v: usize, r: usize, c: usize| offset[v] + r * x.dims[v] + c;
    let mut rows = Vec::new();
    for v in 0..n {
        let w = (v + 1) % n;
        for r in 0..y.dims[w] {
            for c in 0..x.dims[v] {
                let mut eq = vec![S::zero(); unknowns];
                for k in 0..y.dims[v] {
                    eq[var(v, k, c)] = eq[var(v, k, c)].add(&y.arrows[v][r][k]);
                }
                for k in 0..x.dims[w] {
                    eq[var(w, r, k)] = eq[var(w, r, k)].sub(&x.arrows[v][k][c]);
                }
                rows.push(eq);
            }
        }
    }
    nullspace(&rows, unknowns)
        .into_iter()
        .map(|sol| {
            (0..n)
                .map(|v| {
                    (0..y.dims[v])
                        .map(|r| (0..x.dims[v]).map(|c| sol[var(v, r, c)].clone()).collect())
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// tr(g ∘ f) summed over vertices, for f: X → Y and g: Y → X.
fn trace_of_composite<S: Scalar>(x: &Rep<S>, y: &Rep<S>, f: &Hom<S>, g: &Hom<S>) -> S {
    let mut acc = S::zero();
    for v in 0..x.n {
        for a in 0..x.dims[v] {
            for k in 0..y.dims[v] {
                acc = acc.add(&g[v][a][k].mul(&f[v][k][a]));
            }
        }
    }
    acc
}

/// Trace-form test: X is indecomposable iff the form (φ, ψ) ↦ tr(φψ) on
/// End(X) has rank exactly 1 (End(X) local with one-dimensional top).
pub fn is_indecomposable<S: Scalar>(x: &Rep<S>) -> bool {
    if x.total() == 0 {
        return false;
    }
    let end = hom(x, x);
    let form: Vec<Vec<S>> = end
        .iter()
        .map(|a| end.iter().map(|b| trace_of_composite(x, x, b, a)).collect())
        .collect();
    rank(&form, end.len()) == 1
}

/// Multiplicity of the indecomposable X as a direct summand of M: the rank
/// of the pairing Hom(X, M) × Hom(M, X) → k, (f, g) ↦ tr(g ∘ f).
pub fn summand_multiplicity<S: Scalar>(x: &Rep<S>, m: &Rep<S>) -> usize {
    let into = hom(x, m);
    let out = hom(m, x);
    if into.is_empty() || out.is_empty() {
        return 0;
    }
    let pairing: Vec<Vec<S>> = into
        .iter()
        .map(|f| out.iter().map(|g| trace_of_composite(x, m, f, g)).collect())
        .collect();
    rank(&pairing, out.len())
}

pub fn isomorphic_indecomposables<S: Scalar>(x: &Rep<S>, y: &Rep<S>) -> bool {
    x.dims == y.dims && summand_multiplicity(x, y) == 1
}

/// Radical layers all one-dimensional.
pub fn radical_layers_are_lines<S: Scalar>(x: &Rep<S>) -> bool {
    let n = x.n;
    let mut span: Vec<Vec<Vec<S>>> = (0..n)
        .map(|v| {
            (0..x.dims[v])
                .map(|r| (0..x.dims[v]).map(|c| if r == c { S::one() } else { S::zero() }).collect())
                .collect()
        })
        .collect();
    let mut dim = x.total();
    while dim > 0 {
        let next: Vec<Vec<Vec<S>>> = (0..n)
            .map(|v| {
                let u = (v + n - 1) % n;
                let cols = span[u].first().map_or(0, |r| r.len());
                matmul(&x.arrows[u], &span[u], cols)
            })
            .collect();
        let next_dim: usize = next
            .iter()
            .map(|s| rank(s, s.first().map_or(0, |r| r.len())))
            .sum();
        if dim - next_dim != 1 {
            return false;
        }
        span = next;
        dim = next_dim;
    }
    true
}

// ---------------------------------------------------------------------------
// Brute-force enumeration of 0/1 representations over F_p.

fn dim_vectors(n: usize, max_total: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            if cur.iter().sum::<usize>() > 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=left {
            cur.push(k);
            go(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_total, &mut Vec::new(), &mut out);
    out
}

fn int_composite_is_zero(n: usize, dims: &[usize], arrows: &[Vec<Vec<i64>>], start: usize, k: usize) -> bool {
    let mut acc: Vec<Vec<i64>> = (0..dims[start])
        .map(|r| (0..dims[start]).map(|c| i64::from(r == c)).collect())
        .collect();
    for step in 0..k {
        let a = &arrows[(start + step) % n];
        acc = a
            .iter()
            .map(|row| {
                (0..dims[start])
                    .map(|c| row.iter().enumerate().map(|(j, x)| x * acc[j][c]).sum())
                    .collect()
            })
            .collect();
        if acc.iter().all(|r| r.iter().all(|&x| x == 0)) {
            return true;
        }
    }
    acc.iter().all(|r| r.iter().all(|&x| x == 0))
}

/// Representatives of the isomorphism classes of indecomposable
/// representations with 0/1 arrow matrices and total dimension ≤ max_total.
pub fn brute_force_indecomposables(n: usize, d: usize, max_total: usize) -> Vec<Rep<Fp>> {
    let mut reps: Vec<Rep<Fp>> = Vec::new();
    for dims in dim_vectors(n, max_total) {
        let shapes: Vec<(usize, usize)> = (0..n).map(|v| (dims[(v + 1) % n], dims[v])).collect();
        let bits: usize = shapes.iter().map(|(r, c)| r * c).sum();
        for mask in 0u64..(1u64 << bits) {
            let mut cursor = 0;
            let arrows: Vec<Vec<Vec<i64>>> = shapes
                .iter()
                .map(|&(r, c)| {
                    (0..r)
                        .map(|_| {
                            (0..c)
                                .map(|_| {
                                    let b = (mask >> cursor) & 1;
                                    cursor += 1;
                                    b as i64
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            if !(0..n).all(|v| int_composite_is_zero(n, &dims, &arrows, v, d)) {
                continue;
            }
            let rep = Rep {
                n,
                dims: dims.clone(),
                arrows: arrows
                    .iter()
                    .map(|a| a.iter().map(|r| r.iter().map(|&x| Fp::from_i64(x)).collect()).collect())
                    .collect(),
            };
            if !is_indecomposable(&rep) {
                continue;
            }
            if reps.iter().any(|r| isomorphic_indecomposables(r, &rep)) {
                continue;
            }
            reps.push(rep);
        }
    }
    reps
}

// ---------------------------------------------------------------------------
// Random modules.

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(density) {
                let v: i64 = *[-2, -1, 1, 1, 2, 3].get(rng.gen_range(0..6)).unwrap();
                m.set(r, c, CycloNum::from_integer(v));
            }
        }
    }
    m
}

fn random_invertible(rng: &mut ChaCha8Rng, size: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, size, size, 0.7);
        if size == 0 || m.rank().unwrap() == size {
            return m;
        }
    }
}

/// Small-integer arrow matrices drawn at random, kept only if they satisfy
/// the bound relation.
pub fn random_rejection_module(rng: &mut ChaCha8Rng, n: u32, d: u32, max_total: usize) -> Option<CycleModule> {
    for _ in 0..2000 {
        let total = rng.gen_range(1..=max_total);
        let mut dims = vec![0usize; n as usize];
        for _ in 0..total {
            dims[rng.gen_range(0..n as usize)] += 1;
        }
        let density = rng.gen_range(0.15..0.6);
        let arrows = (0..n as usize)
            .map(|v| random_matrix(rng, dims[(v + 1) % n as usize], dims[v], density))
            .collect();
        if let Ok(m) = CycleModule::new(n, d, dims, arrows) {
            return Some(m);
        }
    }
    None
}

/// A random sum of intervals, conjugated vertex-wise by random invertible
/// matrices so that no block structure is visible.
pub fn random_conjugated_module(rng: &mut ChaCha8Rng, n: u32, d: u32, max_total: usize) -> CycleModule {
    let mut dims = vec![0usize; n as usize];
    let mut blocks: Vec<Vec<Matrix>> = Vec::new();
    let mut total = 0;
    loop {
        let top = rng.gen_range(0..n);
        let len = rng.gen_range(1..=d);
        if total + len as usize > max_total {
            break;
        }
        total += len as usize;
        let m = mqg_core::IntervalModule::new(top, len).realize(n, d).unwrap();
        for (acc, x) in dims.iter_mut().zip(m.dims()) {
            *acc += x;
        }
        blocks.push(m.arrows().to_vec());
        if rng.gen_bool(0.25) {
            break;
        }
    }
    let sum: Vec<Matrix> = (0..n as usize)
        .map(|v| Matrix::block_diag(&blocks.iter().map(|b| b[v].clone()).collect::<Vec<_>>()))
        .collect();
    let change: Vec<Matrix> = dims.iter().map(|&k| random_invertible(rng, k)).collect();
    let arrows = (0..n as usize)
        .map(|v| {
            let w = (v + 1) % n as usize;
            let inv = inverse(&change[v]);
            change[w].mul(&sum[v]).unwrap().mul(&inv).unwrap()
        })
        .collect();
    CycleModule::new(n, d, dims, arrows).expect("conjugation preserves the relation")
}

fn inverse(m: &Matrix) -> Matrix {
    let k = m.rows();
    if k == 0 {
        return Matrix::zeros(0, 0);
    }
    let mut rows: Vec<Vec<BigRational>> = (0..k)
        .map(|r| {
            let mut row: Vec<BigRational> = m.row(r).iter().map(rat).collect();
            row.extend((0..k).map(|c| if c == r { <BigRational as One>::one() } else { <BigRational as Zero>::zero() }));
            row
        })
        .collect();
    row_reduce(&mut rows, 2 * k);
    let mut out = Matrix::zeros(k, k);
    for r in 0..k {
        for c in 0..k {
            let v = &rows[r][k + c];
            out.set(r, c, CycloNum::from_big_rational(v));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Gaussian binomials from the polynomial Pascal rule, evaluated at a root of unity.

/// Coefficients of the Gaussian polynomial [a choose b]_x.
pub fn gaussian_polynomial(a: usize, b: usize) -> Vec<BigInt> {
    if b > a {
        return vec![];
    }
    // rows of the Pascal triangle, [a choose b] = [a−1 choose b−1] + x^b [a−1 choose b]
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for aa in 1..=a {
        let mut next = Vec::with_capacity(aa + 1);
        for bb in 0..=aa {
            let left = if bb > 0 { row[bb - 1].clone() } else { vec![] };
            let right = if bb < aa { row[bb].clone() } else { vec![] };
            let len = left.len().max(right.len() + bb);
            let mut poly = vec![BigInt::zero(); len];
            for (k, c) in left.iter().enumerate() {
                poly[k] += c;
            }
            for (k, c) in right.iter().enumerate() {
                poly[k + bb] += c;
            }
            next.push(poly);
        }
        row = next;
    }
    row[b].clone()
}

pub fn evaluate_at(poly: &[BigInt], x: RootOfUnity) -> CycloNum {
    let mut acc = CycloNum::zero();
    for (k, c) in poly.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = x.pow(k as i64).to_cyclo();
        let coeff = CycloNum::from_big_rational(&BigRational::from_integer(c.clone()));
        acc = &acc + &(&term * &coeff);
    }
    acc
}

