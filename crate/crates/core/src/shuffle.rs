//! The graded product on ℂZ^n: the quantum shuffle product over thin
//! splits, its closed forms, and Gaussian binomials.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::bimodule::ArrowBimodule;
use crate::cyclotomic::{CycloNum, RootOfUnity};
use crate::error::{Error, Result};
use crate::quiver::{Path, PathVector, Piece};

/// Gaussian integers, factorials and binomials in a fixed base ħ.
#[derive(Clone, Debug)]
pub struct GaussScalar {
    hbar: CycloNum,
    /// Multiplicative order of ħ, when it is a root of unity.
    order: Option<u64>,
    residual: HashMap<(u64, u64), CycloNum>,
}

impl GaussScalar {
    pub fn new(hbar: CycloNum) -> Self {
        let order = hbar.mult_order();
        GaussScalar {
            hbar,
            order,
            residual: HashMap::new(),
        }
    }

    pub fn hbar(&self) -> &CycloNum {
        &self.hbar
    }

    /// l_ħ = 1 + ħ + ⋯ + ħ^{l−1}.
    pub fn integer(&self, l: u64) -> CycloNum {
        let mut acc = CycloNum::zero();
        let mut power = CycloNum::one();
        for _ in 0..l {
            acc = &acc + &power;
            power = &power * &self.hbar;
        }
        acc
    }

    /// l!_ħ = 1_ħ 2_ħ ⋯ l_ħ.
    pub fn factorial(&self, l: u64) -> CycloNum {
        (1..=l).fold(CycloNum::one(), |acc, k| &acc * &self.integer(k))
    }

    /// binom(a, b)_ħ, by q-Lucas when ħ has finite order e:
    /// binom(a, b) = C(a div e, b div e) · binom(a mod e, b mod e).
    pub fn binomial(&mut self, a: u64, b: u64) -> CycloNum {
        if b > a {
            return CycloNum::zero();
        }
        match self.order {
            Some(e) if e > 1 => {
                let outer = binomial_integer(a / e, b / e);
                if outer == BigInt::from(0) {
                    return CycloNum::zero();
                }
                let inner = self.residual_binomial(a % e, b % e);
                &inner * &CycloNum::from_big_rational(&outer.into())
            }
            Some(_) => CycloNum::from_big_rational(&binomial_integer(a, b).into()),
            None => product_binomial(&self.hbar, a, b),
        }
    }

    fn residual_binomial(&mut self, a: u64, b: u64) -> CycloNum {
        if b > a {
            return CycloNum::zero();
        }
        if let Some(v) = self.residual.get(&(a, b)) {
            return v.clone();
        }
        let v = product_binomial(&self.hbar, a, b);
        self.residual.insert((a, b), v.clone());
        v
    }
}

fn binomial_integer(a: u64, b: u64) -> BigInt {
    if b > a {
        return BigInt::from(0);
    }
    let b = b.min(a - b);
    let mut acc = BigInt::from(1);
    for k in 0..b {
        acc = acc * BigInt::from(a - k) / BigInt::from(k + 1);
    }
    acc
}

/// Π_{k=1..b} (a−b+k)_ħ / k_ħ. Only valid when no k_ħ in the denominator vanishes.
fn product_binomial(hbar: &CycloNum, a: u64, b: u64) -> CycloNum {
    let g = GaussScalar {
        hbar: hbar.clone(),
        order: None,
        residual: HashMap::new(),
    };
    let mut acc = CycloNum::one();
    for k in 1..=b {
        acc = &acc * &g.integer(a - b + k);
        acc = acc
            .checked_div(&g.integer(k))
            .expect("denominators are nonzero below the order of ħ");
    }
    acc
}

/// binom(l+m, l)_ħ for an arbitrary base ħ.
///
/// Uses the product formula when no factor vanishes and falls back to
/// q-Lucas when ħ is a root of unity of order at most l+m.
pub fn gauss_binomial(hbar: &CycloNum, l: u64, m: u64) -> CycloNum {
    match hbar.mult_order() {
        Some(e) if e <= l + m => GaussScalar::new(hbar.clone()).binomial(l + m, l),
        _ => product_binomial(hbar, l + m, l.min(m)),
    }
}

/// Table binom(a, b)_ħ for a ≤ max built with the q-Pascal rule
/// binom(a, b) = binom(a−1, b−1) + ħ^b binom(a−1, b), kept as integer
/// polynomials in ħ reduced modulo ħ^e = 1.
pub fn gauss_pascal_table(hbar: RootOfUnity, max: usize) -> Vec<Vec<CycloNum>> {
    let e = hbar.order() as usize;
    let mut rows: Vec<Vec<Vec<i128>>> = Vec::with_capacity(max + 1);
    rows.push(vec![unit_vec(e)]);
    for a in 1..=max {
        let prev = &rows[a - 1];
        let mut row = Vec::with_capacity(a + 1);
        for b in 0..=a {
            let mut v = vec![0i128; e];
            if b >= 1 {
                for (k, c) in prev[b - 1].iter().enumerate() {
                    v[k] += c;
                }
            }
            if b < a {
                for (k, c) in prev[b].iter().enumerate() {
                    v[(k + b) % e] += c;
                }
            }
            row.push(v);
        }
        rows.push(row);
    }
    // ħ = ζ_N^x has order e, so ħ^k = ζ_e^{k·(x·e/N)} after reduction.
    let base = RootOfUnity::new(e as u32, hbar.exponent() as i64 * e as i64 / hbar.conductor() as i64);
    rows.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|v| counts_to_cyclo(base, &v))
                .collect()
        })
        .collect()
}

fn unit_vec(e: usize) -> Vec<i128> {
    let mut v = vec![0; e];
    v[0] = 1;
    v
}

/// Σ_k v[k]·base^k.
fn counts_to_cyclo(base: RootOfUnity, v: &[i128]) -> CycloNum {
    let n = base.conductor();
    let mut counts = vec![0i128; n as usize];
    for (k, &c) in v.iter().enumerate() {
        let idx = (k as u64 * base.exponent() as u64 % n as u64) as usize;
        counts[idx] += c;
    }
    CycloNum::from_zeta_counts(n, &counts).expect("conductor within bounds")
}

/// ℂZ^n with the product induced by an arrow bimodule.
#[derive(Clone, Debug)]
pub struct QuiverAlgebra {
    bimodule: ArrowBimodule,
    conductor: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub left: String,
    pub right: String,
    pub shuffle: CycloNum,
    pub closed_form: CycloNum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub passed: bool,
    pub pairs_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<Discrepancy>,
}

/// Sums over all thin-split interleavings of p_i^· and p_j^·, for every
/// pair of lengths with l + m ≤ bound, kept as counts of powers of ζ_N.
///
/// Walking an interleaving one position at a time, a step that consumes
/// the r-th arrow of the left factor meets the vertex g^{j+t} of the right
/// factor (bracket X_{i+r}.g^{j+t}); a step consuming the t-th right arrow
/// meets g^{i+r} (bracket g^{i+r}.X_{j+t}). The bracket scalars depend only
/// on (r, t), so one sweep of the (r, t) grid yields every (l, m) at once.
pub struct ShuffleGrid {
    conductor: u32,
    bound: usize,
    cells: Vec<Vec<i128>>,
}

impl ShuffleGrid {
    fn index(r: usize, t: usize) -> usize {
        let s = r + t;
        s * (s + 1) / 2 + t
    }

    pub fn counts(&self, l: usize, m: usize) -> &[i128] {
        assert!(l + m <= self.bound, "outside the computed grid");
        &self.cells[Self::index(l, m)]
    }

    pub fn value(&self, l: usize, m: usize) -> CycloNum {
        CycloNum::from_zeta_counts(self.conductor, self.counts(l, m)).expect("conductor within bounds")
    }
}

impl QuiverAlgebra {
    pub fn new(bimodule: ArrowBimodule) -> Self {
        let conductor = bimodule.params().conductor();
        QuiverAlgebra {
            bimodule,
            conductor,
        }
    }

    pub fn bimodule(&self) -> &ArrowBimodule {
        &self.bimodule
    }

    pub fn n(&self) -> u32 {
        self.bimodule.n()
    }

    pub fn hbar(&self) -> RootOfUnity {
        self.bimodule.deformation()
    }

    fn exponent(&self, r: RootOfUnity) -> usize {
        r.lift(self.conductor).exponent() as usize
    }

    pub fn shuffle_grid(&self, i: i64, j: i64, bound: usize) -> Result<ShuffleGrid> {
        // The largest count is C(bound, bound/2); keep it inside i128.
        if bound > 120 {
            return Err(Error::InvalidParameter(format!(
                "shuffle grid bound {bound} too large for exact counting"
            )));
        }
        let n_cond = self.conductor as usize;
        let cells_len = (bound + 1) * (bound + 2) / 2;
        let mut cells = vec![Vec::new(); cells_len];
        cells[0] = unit_vec(n_cond);
        for total in 1..=bound {
            for t in 0..=total {
                let r = total - t;
                let mut v = vec![0i128; n_cond];
                if r >= 1 {
                    let act = self.bimodule.act_right(i + r as i64, j + t as i64);
                    let e = self.exponent(act.scalar);
                    shift_add(&mut v, &cells[ShuffleGrid::index(r - 1, t)], e);
                }
                if t >= 1 {
                    let act = self.bimodule.act_left(i + r as i64, j + t as i64);
                    let e = self.exponent(act.scalar);
                    shift_add(&mut v, &cells[ShuffleGrid::index(r, t - 1)], e);
                }
                cells[ShuffleGrid::index(r, t)] = v;
            }
        }
        Ok(ShuffleGrid {
            conductor: self.conductor,
            bound,
            cells,
        })
    }

    /// The shuffle product of two paths: the sum over all interleavings.
    pub fn shuffle_paths(&self, a: &Path, b: &Path) -> Result<PathVector> {
        let (l, m) = (a.length() as usize, b.length() as usize);
        let grid = self.shuffle_grid(a.source() as i64, b.source() as i64, l + m)?;
        let target = Path::new(self.n(), a.source() as i64 + b.source() as i64, (l + m) as u32);
        Ok(PathVector::term(grid.value(l, m), target))
    }

    /// The shuffle product written out literally: enumerate D_l^{l+m}, build
    /// both thin splits, resolve every bracket through the bimodule tables,
    /// and concatenate. Exponential; kept as an oracle.
    pub fn shuffle_paths_enumerated(&self, a: &Path, b: &Path) -> Result<PathVector> {
        let parts = a.length() + b.length();
        let n = self.n();
        let mut out = PathVector::new();
        for split in a.thin_splits(parts)? {
            let complement: Vec<bool> = split.pattern.iter().map(|x| !x).collect();
            let other = b.split_by(&complement)?;
            let mut scalar = RootOfUnity::one(self.conductor);
            let mut arrows = Vec::with_capacity(parts as usize);
            for (pa, pb) in split.pieces.iter().zip(&other.pieces) {
                let act = match (*pa, *pb) {
                    (Piece::Arrow(x), Piece::Vertex(v)) => self.bimodule.act_right(x as i64, v as i64),
                    (Piece::Vertex(v), Piece::Arrow(y)) => self.bimodule.act_left(v as i64, y as i64),
                    _ => {
                        return Err(Error::Structural(
                            "complementary thin splits must pair an arrow with a vertex".into(),
                        ))
                    }
                };
                scalar = scalar * act.scalar;
                arrows.push(act.target);
            }
            let source = (a.source() + b.source()) % n;
            for (k, &x) in arrows.iter().enumerate() {
                if (x as u64) % n as u64 != (source as u64 + k as u64 + 1) % n as u64 {
                    return Err(Error::Structural(format!(
                        "bracket {k} produced X_{x}, which does not continue the path"
                    )));
                }
            }
            out.add_term(scalar.to_cyclo(), Path::new(n, source as i64, parts));
        }
        Ok(out)
    }

    pub fn shuffle_multiply(&self, alpha: &PathVector, beta: &PathVector) -> Result<PathVector> {
        bilinear(alpha, beta, |a, b| self.shuffle_paths(a, b))
    }

    /// (scalar, target) with p_i^l · p_j^m = scalar · p_{i+j}^{l+m}:
    /// ĥ^{jl} · 𝕢^{s(i+l')⌊(m+j)/n⌋} · binom(l+m, l)_ĥ.
    pub fn closed_form_product(&self, a: &Path, b: &Path) -> (CycloNum, Path) {
        let binom = gauss_binomial(&self.hbar().to_cyclo(), a.length() as u64, b.length() as u64);
        self.closed_form_with(a, b, binom)
    }

    /// The root-of-unity part of the closed form, ĥ^{jl}·𝕢^{s(i+l')⌊(m+j)/n⌋}.
    pub fn closed_form_phase(&self, a: &Path, b: &Path) -> RootOfUnity {
        let n = self.n() as i64;
        let params = self.bimodule.params();
        let (i, l) = (a.source() as i64, a.length() as i64);
        let (j, m) = (b.source() as i64, b.length() as i64);
        let qq = params.cocycle().qq();
        let carry = (m + j).div_euclid(n);
        self.hbar().pow(j * l) * qq.pow(params.s as i64 * (i + l.rem_euclid(n)) * carry)
    }

    fn closed_form_with(&self, a: &Path, b: &Path, binom: CycloNum) -> (CycloNum, Path) {
        let phase = self.closed_form_phase(a, b).to_cyclo();
        let target = Path::new(self.n(), a.source() as i64 + b.source() as i64, a.length() + b.length());
        (&phase * &binom, target)
    }

    /// Production product: closed form, extended bilinearly.
    pub fn multiply(&self, alpha: &PathVector, beta: &PathVector) -> Result<PathVector> {
        bilinear(alpha, beta, |a, b| {
            let (c, p) = self.closed_form_product(a, b);
            Ok(PathVector::term(c, p))
        })
    }

    /// p^{⇀k} = (⋯((p·p)·p)⋯)·p.
    pub fn power_left(&self, p: &PathVector, k: u32) -> Result<PathVector> {
        if k == 0 {
            return Err(Error::InvalidParameter("powers start at 1".into()));
        }
        let mut acc = p.clone();
        for _ in 1..k {
            acc = self.multiply(&acc, p)?;
        }
        Ok(acc)
    }

    /// p^{↼k} = p·(p·(⋯(p·p)⋯)).
    pub fn power_right(&self, p: &PathVector, k: u32) -> Result<PathVector> {
        if k == 0 {
            return Err(Error::InvalidParameter("powers start at 1".into()));
        }
        let mut acc = p.clone();
        for _ in 1..k {
            acc = self.multiply(p, &acc)?;
        }
        Ok(acc)
    }

    /// Compares the shuffle sum with the closed form on every pair of paths
    /// with l + m ≤ max_total_length.
    pub fn cross_check(&self, max_total_length: usize) -> Result<CrossCheckReport> {
        let n = self.n() as i64;
        let table = gauss_pascal_table(self.hbar(), max_total_length);
        let mut pairs = 0;
        for i in 0..n {
            for j in 0..n {
                let grid = self.shuffle_grid(i, j, max_total_length)?;
                for l in 0..=max_total_length {
                    for m in 0..=(max_total_length - l) {
                        pairs += 1;
                        let a = Path::new(self.n(), i, l as u32);
                        let b = Path::new(self.n(), j, m as u32);
                        let shuffle = grid.value(l, m);
                        let (closed, _) = self.closed_form_with(&a, &b, table[l + m][l].clone());
                        if shuffle != closed {
                            return Ok(CrossCheckReport {
                                passed: false,
                                pairs_checked: pairs,
                                discrepancy: Some(Discrepancy {
                                    left: a.to_string(),
                                    right: b.to_string(),
                                    shuffle,
                                    closed_form: closed,
                                }),
                            });
                        }
                    }
                }
            }
        }
        Ok(CrossCheckReport {
            passed: true,
            pairs_checked: pairs,
            discrepancy: None,
        })
    }
}

fn shift_add(dst: &mut [i128], src: &[i128], shift: usize) {
    let n = dst.len();
    for (k, &c) in src.iter().enumerate() {
        if c != 0 {
            dst[(k + shift) % n] += c;
        }
    }
}

fn bilinear(
    alpha: &PathVector,
    beta: &PathVector,
    mut f: impl FnMut(&Path, &Path) -> Result<PathVector>,
) -> Result<PathVector> {
    let mut out = PathVector::new();
    for (a, ca) in alpha.iter() {
        for (b, cb) in beta.iter() {
            let coeff = ca.checked_mul(cb)?;
            for (p, c) in f(a, b)?.iter() {
                out.add_term(c.checked_mul(&coeff)?, *p);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::Parameters;

    fn algebra(n: u32, s: u32, q_exp: i64) -> QuiverAlgebra {
        QuiverAlgebra::new(ArrowBimodule::build(Parameters::new(n, s, q_exp).unwrap()))
    }

    #[test]
    fn gauss_binomial_examples() {
        let h = CycloNum::root_of_unity(7, 2).unwrap();
        assert_eq!(gauss_binomial(&h, 1, 1), &CycloNum::one() + &h);
        assert_eq!(gauss_binomial(&CycloNum::one(), 3, 4), CycloNum::from_integer(35));
        for d in 2..=12u32 {
            let h = CycloNum::root_of_unity(d, 1).unwrap();
            for l in 1..d as u64 {
                for m in 1..d as u64 {
                    let v = gauss_binomial(&h, l, m);
                    assert_eq!(v.is_zero(), l + m >= d as u64, "d={d} l={l} m={m}");
                }
            }
        }
    }

    #[test]
    fn non_root_base_uses_product_formula() {
        let h = CycloNum::from_integer(2);
        // binom(4,2)_2 = (1+2+4+8)(1+2+4)/((1)(1+2)) = 35
        assert_eq!(gauss_binomial(&h, 2, 2), CycloNum::from_integer(35));
    }

    #[test]
    fn pascal_table_matches_lucas() {
        let h = RootOfUnity::new(9, 3);
        let table = gauss_pascal_table(h, 10);
        let mut g = GaussScalar::new(h.to_cyclo());
        for a in 0..=10 {
            for b in 0..=a {
                assert_eq!(table[a][b], g.binomial(a as u64, b as u64), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn arrow_square() {
        for (n, s, q) in [(2, 1, 1), (3, 2, 4), (4, 0, 1)] {
            let alg = algebra(n, s, q);
            let x1 = Path::arrow(n, 1);
            let prod = alg.shuffle_paths(&x1, &x1).unwrap();
            let h = alg.hbar().to_cyclo();
            assert_eq!(prod, PathVector::term(&CycloNum::one() + &h, Path::new(n, 0, 2)));
        }
    }

    #[test]
    fn group_likes_and_unit() {
        let alg = algebra(3, 1, 1);
        let g1 = Path::vertex(3, 1);
        let g2 = Path::vertex(3, 2);
        assert_eq!(alg.shuffle_paths(&g1, &g2).unwrap(), PathVector::from_path(Path::vertex(3, 0)));
        let e = Path::vertex(3, 0);
        for l in 0..5 {
            for i in 0..3 {
                let p = Path::new(3, i, l);
                let v = PathVector::from_path(p);
                assert_eq!(alg.shuffle_paths(&e, &p).unwrap(), v);
                assert_eq!(alg.shuffle_paths(&p, &e).unwrap(), v);
            }
        }
    }

    #[test]
    fn enumeration_matches_grid() {
        for p in Parameters::families(3).unwrap() {
            let alg = QuiverAlgebra::new(ArrowBimodule::build(p));
            for i in 0..3 {
                for j in 0..3 {
                    for l in 0..4 {
                        for m in 0..4 {
                            let a = Path::new(3, i, l);
                            let b = Path::new(3, j, m);
                            assert_eq!(
                                alg.shuffle_paths(&a, &b).unwrap(),
                                alg.shuffle_paths_enumerated(&a, &b).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cross_check_examples() {
        assert!(algebra(2, 1, 1).cross_check(8).unwrap().passed);
        assert!(algebra(3, 0, 1).cross_check(9).unwrap().passed);
    }

    #[test]
    fn corrupted_bimodule_fails_cross_check() {
        let mut b = ArrowBimodule::build(Parameters::new(3, 1, 1).unwrap());
        let mut act = b.act_left(1, 3);
        act.scalar = RootOfUnity::one(9);
        b.set_left(1, 3, act);
        let report = QuiverAlgebra::new(b).cross_check(6).unwrap();
        assert!(!report.passed);
        assert!(report.discrepancy.is_some());
    }

    #[test]
    fn powers_of_the_arrow() {
        let alg = algebra(3, 1, 4);
        let x = PathVector::from_path(Path::arrow(3, 1));
        let g = GaussScalar::new(alg.hbar().to_cyclo());
        assert_eq!(alg.power_left(&x, 1).unwrap(), x);
        for l in 1..8u32 {
            let fact = g.factorial(l as u64);
            let p0l = Path::new(3, 0, l);
            assert_eq!(alg.power_left(&x, l).unwrap(), PathVector::term(fact.clone(), p0l));
            let lp = (l % 3) as i64;
            let s = 1;
            let phase = alg.bimodule().cocycle().qq().pow(s * lp * (l as i64 - lp) / 3).to_cyclo();
            assert_eq!(alg.power_right(&x, l).unwrap(), PathVector::term(&phase * &fact, p0l));
        }
    }
}
