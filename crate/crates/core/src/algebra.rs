//! The finite-dimensional Majid algebras M(n,s,q): assembly, axiom checks,
//! quasi-antipode, classification, and JSON export.
//!
//! Basis elements p_i^l (0 ≤ i < n, 0 ≤ l < d) are indexed by l·n + i.
//! The reassociator, α and β are supported on group-likes; on everything
//! else they vanish, and the checks below evaluate them that way.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bimodule::ArrowBimodule;
use crate::cocycle::Parameters;
use crate::cyclotomic::{divisors, CycloNum};
use crate::error::{Error, Result};
use crate::quiver::{parse_path, Path, PathVector};
use crate::shuffle::{gauss_pascal_table, QuiverAlgebra};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajidAlgebra {
    params: Parameters,
    d: u32,
    basis: Vec<Path>,
    mult: Vec<Option<(CycloNum, usize)>>,
    phi: Vec<CycloNum>,
    antipode: Vec<(CycloNum, usize)>,
    alpha: Vec<CycloNum>,
    beta: Vec<CycloNum>,
}

/// Outcome of one family of identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    fn from_checks(checks: Vec<CheckResult>) -> Self {
        VerificationReport {
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn merge(mut self, other: VerificationReport) -> Self {
        self.checks.extend(other.checks);
        Self::from_checks(self.checks)
    }
}

/// A sparse vector over basis indices.
type Vector = BTreeMap<usize, CycloNum>;

fn add_to(v: &mut Vector, idx: usize, c: CycloNum) {
    if c.is_zero() {
        return;
    }
    let entry = v.entry(idx).or_insert_with(CycloNum::zero);
    *entry = &*entry + &c;
    if entry.is_zero() {
        v.remove(&idx);
    }
}

fn describe(v: &Vector, basis: &[Path]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|(k, c)| format!("({c})*{}", basis[*k]))
        .collect::<Vec<_>>()
        .join(" + ")
}

struct Check {
    name: &'static str,
    checked: usize,
    witness: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            checked: 0,
            witness: None,
        }
    }

    /// Records one comparison; returns false once a witness is stored.
    fn expect(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
        self.witness.is_none()
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name.to_string(),
            passed: self.witness.is_none(),
            checked: self.checked,
            witness: self.witness,
        }
    }
}

impl MajidAlgebra {
    /// M(n, s, q) with q given explicitly.
    pub fn build(n: u32, s: u32, q: &CycloNum) -> Result<Self> {
        Self::from_params(Parameters::from_q(n, s, q)?)
    }

    pub fn from_params(params: Parameters) -> Result<Self> {
        let d = params.d();
        let mut alg = Self::structure(params, d)?;
        alg.antipode = alg.solve_antipode()?;
        Ok(alg)
    }

    /// Everything except the antipode, truncated at length `d`; fails when
    /// some product that must vanish does not.
    fn structure(params: Parameters, d: u32) -> Result<Self> {
        let n = params.n;
        let basis: Vec<Path> = (0..d)
            .flat_map(|l| (0..n).map(move |i| Path::new(n, i as i64, l)))
            .collect();
        let dim = basis.len();
        let shuffle = QuiverAlgebra::new(ArrowBimodule::build(params));
        let binom = gauss_pascal_table(params.hbar(), 2 * d as usize);
        let du = d as usize;
        for l in 1..du {
            for m in du - l..du {
                if !binom[l + m][l].is_zero() {
                    return Err(Error::InadmissibleTruncation { n, d });
                }
            }
        }
        let index = |p: &Path| (p.length() * n + p.source()) as usize;
        let mut mult = Vec::with_capacity(dim * dim);
        for a in &basis {
            for b in &basis {
                let (l, m) = (a.length() as usize, b.length() as usize);
                if l + m >= du {
                    mult.push(None);
                    continue;
                }
                let phase = shuffle.closed_form_phase(a, b).to_cyclo();
                let target = Path::new(n, a.source() as i64 + b.source() as i64, (l + m) as u32);
                mult.push(Some((&phase * &binom[l + m][l], index(&target))));
            }
        }
        let cocycle = params.cocycle();
        let ni = n as i64;
        let mut phi = Vec::with_capacity((n * n * n) as usize);
        for i in 0..ni {
            for j in 0..ni {
                for k in 0..ni {
                    phi.push(cocycle.phi_value(i, j, k));
                }
            }
        }
        let alpha = vec![CycloNum::one(); n as usize];
        let beta = (0..ni)
            .map(|i| cocycle.phi(i, -i, i).inv().to_cyclo())
            .collect();
        Ok(MajidAlgebra {
            params,
            d,
            basis,
            mult,
            phi,
            antipode: Vec::new(),
            alpha,
            beta,
        })
    }

    pub fn params(&self) -> Parameters {
        self.params
    }

    pub fn n(&self) -> u32 {
        self.params.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn is_hopf(&self) -> bool {
        self.params.s == 0
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        (p.cycle_size() == self.n() && p.length() < self.d)
            .then(|| (p.length() * self.n() + p.source()) as usize)
    }

    fn is_grouplike(&self, a: usize) -> bool {
        a < self.n() as usize
    }

    /// Product of two basis elements: None when it vanishes.
    pub fn product(&self, a: usize, b: usize) -> Option<(&CycloNum, usize)> {
        self.mult[a * self.dim() + b].as_ref().map(|(c, t)| (c, *t))
    }

    /// Mutable access to one structure constant, for negative controls.
    pub fn set_product(&mut self, a: usize, b: usize, value: Option<(CycloNum, usize)>) {
        let dim = self.dim();
        self.mult[a * dim + b] = value;
    }

    pub fn antipode_of(&self, a: usize) -> (&CycloNum, usize) {
        let (c, t) = &self.antipode[a];
        (c, *t)
    }

    pub fn alpha(&self, i: u32) -> &CycloNum {
        &self.alpha[i as usize]
    }

    pub fn beta(&self, i: u32) -> &CycloNum {
        &self.beta[i as usize]
    }

    /// Φ on group-like exponents.
    pub fn phi(&self, i: i64, j: i64, k: i64) -> &CycloNum {
        let n = self.n() as i64;
        let idx = (i.rem_euclid(n) * n + j.rem_euclid(n)) * n + k.rem_euclid(n);
        &self.phi[idx as usize]
    }

    fn phi_graded(&self, a: usize, b: usize, c: usize) -> CycloNum {
        if self.is_grouplike(a) && self.is_grouplike(b) && self.is_grouplike(c) {
            self.phi(a as i64, b as i64, c as i64).clone()
        } else {
            CycloNum::zero()
        }
    }

    /// The convolution inverse of the graded Φ: 1/Φ on group-likes, zero elsewhere.
    fn phi_inv_graded(&self, a: usize, b: usize, c: usize) -> Result<CycloNum> {
        if self.is_grouplike(a) && self.is_grouplike(b) && self.is_grouplike(c) {
            self.phi(a as i64, b as i64, c as i64).inv()
        } else {
            Ok(CycloNum::zero())
        }
    }

    fn alpha_graded(&self, a: usize) -> CycloNum {
        if self.is_grouplike(a) {
            self.alpha[a].clone()
        } else {
            CycloNum::zero()
        }
    }

    fn beta_graded(&self, a: usize) -> CycloNum {
        if self.is_grouplike(a) {
            self.beta[a].clone()
        } else {
            CycloNum::zero()
        }
    }

    fn counit(&self, a: usize) -> CycloNum {
        CycloNum::from_integer(i64::from(self.is_grouplike(a)))
    }

    /// Δ(a) as pairs of basis indices (all coefficients 1).
    pub fn coproduct(&self, a: usize) -> Vec<(usize, usize)> {
        self.basis[a]
            .comultiply()
            .iter()
            .map(|(x, y)| (self.index_of(x).unwrap(), self.index_of(y).unwrap()))
            .collect()
    }

    /// Δ^{(k)}(a): all ways to cut a into k consecutive pieces, listed
    /// target end first (a_1 ⊗ ⋯ ⊗ a_k in Sweedler order).
    fn iterated_coproduct(&self, a: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 1 {
            return vec![vec![a]];
        }
        let mut out = Vec::new();
        for (x, y) in self.coproduct(a) {
            for mut rest in self.iterated_coproduct(x, k - 1) {
                rest.push(y);
                out.push(rest);
            }
        }
        out
    }

    fn unit_index(&self) -> usize {
        0
    }

    fn mul_vec(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&a, ca) in x {
            for (&b, cb) in y {
                if let Some((c, t)) = self.product(a, b) {
                    add_to(&mut out, t, &(ca * cb) * c);
                }
            }
        }
        out
    }

    fn basis_vec(&self, a: usize, c: CycloNum) -> Vector {
        let mut v = Vector::new();
        add_to(&mut v, a, c);
        v
    }

    /// Multiplies two path vectors inside M; paths of length ≥ d are rejected.
    pub fn multiply(&self, x: &PathVector, y: &PathVector) -> Result<PathVector> {
        let to_vec = |v: &PathVector| -> Result<Vector> {
            let mut out = Vector::new();
            for (p, c) in v.iter() {
                let idx = self
                    .index_of(p)
                    .ok_or_else(|| Error::InvalidParameter(format!("{p} is not a basis element of M")))?;
                add_to(&mut out, idx, c.clone());
            }
            Ok(out)
        };
        let prod = self.mul_vec(&to_vec(x)?, &to_vec(y)?);
        let mut out = PathVector::new();
        for (k, c) in prod {
            out.add_term(c, self.basis[k]);
        }
        Ok(out)
    }

    /// Quasi-associativity, unit, pentagon and normalization on basis elements, plus Δ and ε being algebra maps.
    pub fn verify_quasi_bialgebra(&self) -> VerificationReport {
        VerificationReport::from_checks(vec![
            self.check_quasi_associativity(),
            self.check_unit(),
            self.check_pentagon(),
            self.check_normalization(),
            self.check_coproduct_multiplicative(),
            self.check_counit_multiplicative(),
        ])
    }

    /// a_1(b_1c_1)Φ(a_2,b_2,c_2) = Φ(a_1,b_1,c_1)(a_2b_2)c_2 on all basis triples.
    fn check_quasi_associativity(&self) -> CheckResult {
        let mut check = Check::new("quasi-associativity");
        let dim = self.dim();
        let legs: Vec<Vec<(usize, usize)>> = (0..dim).map(|a| self.coproduct(a)).collect();
        // Φ vanishes unless all three arguments are group-like, so only legs
        // with a group-like component can contribute.
        let right_gl: Vec<Vec<(usize, usize)>> = legs
            .iter()
            .map(|l| l.iter().copied().filter(|&(_, y)| self.is_grouplike(y)).collect())
            .collect();
        let left_gl: Vec<Vec<(usize, usize)>> = legs
            .iter()
            .map(|l| l.iter().copied().filter(|&(x, _)| self.is_grouplike(x)).collect())
            .collect();
        'outer: for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let mut lhs = Vector::new();
                    for &(a1, a2) in &right_gl[a] {
                        for &(b1, b2) in &right_gl[b] {
                            for &(c1, c2) in &right_gl[c] {
                                let phi = self.phi_graded(a2, b2, c2);
                                if phi.is_zero() {
                                    continue;
                                }
                                let bc = self.basis_vec(b1, CycloNum::one());
                                let bc = self.mul_vec(&bc, &self.basis_vec(c1, CycloNum::one()));
                                let v = self.mul_vec(&self.basis_vec(a1, phi), &bc);
                                for (k, x) in v {
                                    add_to(&mut lhs, k, x);
                                }
                            }
                        }
                    }
                    let mut rhs = Vector::new();
                    for &(a1, a2) in &left_gl[a] {
                        for &(b1, b2) in &left_gl[b] {
                            for &(c1, c2) in &left_gl[c] {
                                let phi = self.phi_graded(a1, b1, c1);
                                if phi.is_zero() {
                                    continue;
                                }
                                let ab = self.mul_vec(&self.basis_vec(a2, phi), &self.basis_vec(b2, CycloNum::one()));
                                let v = self.mul_vec(&ab, &self.basis_vec(c2, CycloNum::one()));
                                for (k, x) in v {
                                    add_to(&mut rhs, k, x);
                                }
                            }
                        }
                    }
                    let ok = check.expect(lhs == rhs, || {
                        format!(
                            "({}, {}, {}): {} vs {}",
                            self.basis[a],
                            self.basis[b],
                            self.basis[c],
                            describe(&lhs, &self.basis),
                            describe(&rhs, &self.basis)
                        )
                    });
                    if !ok {
                        break 'outer;
                    }
                }
            }
        }
        check.finish()
    }

    fn check_unit(&self) -> CheckResult {
        let mut check = Check::new("unit");
        let e = self.unit_index();
        for a in 0..self.dim() {
            let id = self.basis_vec(a, CycloNum::one());
            let left = self.mul_vec(&self.basis_vec(e, CycloNum::one()), &id);
            let right = self.mul_vec(&id, &self.basis_vec(e, CycloNum::one()));
            if !check.expect(left == id && right == id, || format!("{}", self.basis[a])) {
                break;
            }
        }
        check.finish()
    }

    /// Pentagon on group-like 4-tuples, with products taken in M.
    fn check_pentagon(&self) -> CheckResult {
        let mut check = Check::new("pentagon");
        let n = self.n() as usize;
        let phi_lin = |x: usize, y: usize, z: &Vector| -> CycloNum {
            z.iter().map(|(&k, c)| c * &self.phi_graded(x, y, k)).sum()
        };
        let phi_lin_mid = |x: usize, y: &Vector, z: usize| -> CycloNum {
            y.iter().map(|(&k, c)| c * &self.phi_graded(x, k, z)).sum()
        };
        let phi_lin_first = |x: &Vector, y: usize, z: usize| -> CycloNum {
            x.iter().map(|(&k, c)| c * &self.phi_graded(k, y, z)).sum()
        };
        'outer: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let one = CycloNum::one;
                        let cd = self.mul_vec(&self.basis_vec(c, one()), &self.basis_vec(d, one()));
                        let ab = self.mul_vec(&self.basis_vec(a, one()), &self.basis_vec(b, one()));
                        let bc = self.mul_vec(&self.basis_vec(b, one()), &self.basis_vec(c, one()));
                        let lhs = &phi_lin(a, b, &cd) * &phi_lin_first(&ab, c, d);
                        let rhs = &(&self.phi_graded(b, c, d) * &phi_lin_mid(a, &bc, d)) * &self.phi_graded(a, b, c);
                        if !check.expect(lhs == rhs, || format!("(g^{a}, g^{b}, g^{c}, g^{d})")) {
                            break 'outer;
                        }
                    }
                }
            }
        }
        check.finish()
    }

    fn check_normalization(&self) -> CheckResult {
        let mut check = Check::new("normalization");
        let e = self.unit_index();
        'outer: for a in 0..self.dim() {
            for b in 0..self.dim() {
                let lhs = self.phi_graded(a, e, b);
                let rhs = &self.counit(a) * &self.counit(b);
                if !check.expect(lhs == rhs, || format!("({}, {})", self.basis[a], self.basis[b])) {
                    break 'outer;
                }
            }
        }
        check.finish()
    }

    /// Δ(ab) = Δ(a)Δ(b) on all basis pairs.
    fn check_coproduct_multiplicative(&self) -> CheckResult {
        let mut check = Check::new("coproduct is multiplicative");
        let dim = self.dim();
        let legs: Vec<Vec<(usize, usize)>> = (0..dim).map(|a| self.coproduct(a)).collect();
        'outer: for a in 0..dim {
            for b in 0..dim {
                let mut lhs: BTreeMap<(usize, usize), CycloNum> = BTreeMap::new();
                let push = |map: &mut BTreeMap<(usize, usize), CycloNum>, key, c: CycloNum| {
                    let e = map.entry(key).or_insert_with(CycloNum::zero);
                    *e = &*e + &c;
                    if e.is_zero() {
                        map.remove(&key);
                    }
                };
                if let Some((c, t)) = self.product(a, b) {
                    for &(x, y) in &legs[t] {
                        push(&mut lhs, (x, y), c.clone());
                    }
                }
                let mut rhs = BTreeMap::new();
                for &(a1, a2) in &legs[a] {
                    for &(b1, b2) in &legs[b] {
                        if let (Some((c1, t1)), Some((c2, t2))) = (self.product(a1, b1), self.product(a2, b2)) {
                            push(&mut rhs, (t1, t2), c1 * c2);
                        }
                    }
                }
                if !check.expect(lhs == rhs, || format!("({}, {})", self.basis[a], self.basis[b])) {
                    break 'outer;
                }
            }
        }
        check.finish()
    }

    fn check_counit_multiplicative(&self) -> CheckResult {
        let mut check = Check::new("counit is multiplicative");
        'outer: for a in 0..self.dim() {
            for b in 0..self.dim() {
                let lhs: CycloNum = self
                    .product(a, b)
                    .map(|(c, t)| c * &self.counit(t))
                    .unwrap_or_else(CycloNum::zero);
                let rhs = &self.counit(a) * &self.counit(b);
                if !check.expect(lhs == rhs, || format!("({}, {})", self.basis[a], self.basis[b])) {
                    break 'outer;
                }
            }
        }
        check.finish()
    }

    /// Solves S(a_1)α(a_2)a_3 = α(a)1 degree by degree, with S(p_i^l)
    /// supported on p_{−i−l}^l (S reverses paths).
    pub fn solve_antipode(&self) -> Result<Vec<(CycloNum, usize)>> {
        let n = self.n() as i64;
        let dim = self.dim();
        let mut solved: Vec<Option<(CycloNum, usize)>> = vec![None; dim];
        for a in 0..dim {
            let p = self.basis[a];
            let image = self
                .index_of(&Path::new(self.n(), -(p.source() as i64) - p.length() as i64, p.length()))
                .expect("same length stays in the basis");
            let mut known = Vector::new();
            let mut unknown = Vector::new();
            for legs in self.iterated_coproduct(a, 3) {
                let (x, y, z) = (legs[0], legs[1], legs[2]);
                let alpha = self.alpha_graded(y);
                if alpha.is_zero() {
                    continue;
                }
                let zv = self.basis_vec(z, alpha);
                if x == a {
                    unknown = self.mul_vec(&self.basis_vec(image, CycloNum::one()), &zv);
                    continue;
                }
                let (c, t) = solved[x].clone().ok_or_else(|| {
                    Error::Structural(format!("antipode of {} needed before it is solved", self.basis[x]))
                })?;
                let v = self.mul_vec(&self.basis_vec(t, c), &zv);
                for (k, c) in v {
                    add_to(&mut known, k, c);
                }
            }
            // c·unknown + known = α(a)·1
            let mut rhs = self.basis_vec(self.unit_index(), self.alpha_graded(a));
            for (k, c) in known {
                add_to(&mut rhs, k, -c);
            }
            let (&pivot, u) = unknown.iter().next().ok_or_else(|| {
                Error::Structural(format!("antipode equation for {} has no unknown term", self.basis[a]))
            })?;
            if unknown.len() != 1 {
                return Err(Error::Structural(format!(
                    "antipode equation for {} is not a single scalar equation",
                    self.basis[a]
                )));
            }
            let c = rhs.get(&pivot).cloned().unwrap_or_else(CycloNum::zero).checked_div(u)?;
            if rhs.keys().any(|&k| k != pivot) {
                return Err(Error::Structural(format!(
                    "antipode equation for {} has no solution of the required shape",
                    self.basis[a]
                )));
            }
            if p.length() == 0 {
                debug_assert_eq!(image as i64, (-(p.source() as i64)).rem_euclid(n));
            }
            solved[a] = Some((c, image));
        }
        Ok(solved.into_iter().map(|x| x.expect("every element solved")).collect())
    }

    fn antipode_vec(&self, a: usize) -> Vector {
        let (c, t) = &self.antipode[a];
        self.basis_vec(*t, c.clone())
    }

    /// The two quasi-antipode identities and the two Φ-compatibility identities on every basis element,
    /// plus ε∘S = ε.
    pub fn verify_antipode(&self) -> VerificationReport {
        let mut first = Check::new("antipode: S(a1)alpha(a2)a3 = alpha(a)1");
        let mut second = Check::new("antipode: a1 beta(a2) S(a3) = beta(a)1");
        let mut third = Check::new("antipode: Phi(a1,S(a3),a5)beta(a2)alpha(a4) = eps(a)");
        let mut fourth = Check::new("antipode: Phi^-1(S(a1),a3,S(a5))alpha(a2)beta(a4) = eps(a)");
        let mut counit = Check::new("antipode: eps(S(a)) = eps(a)");
        if self.antipode.len() != self.dim() {
            first.expect(false, || "antipode table is incomplete".into());
            return VerificationReport::from_checks(vec![first.finish()]);
        }
        for a in 0..self.dim() {
            let name = self.basis[a].to_string();
            let mut lhs1 = Vector::new();
            let mut lhs2 = Vector::new();
            for legs in self.iterated_coproduct(a, 3) {
                let (x, y, z) = (legs[0], legs[1], legs[2]);
                let al = self.alpha_graded(y);
                if !al.is_zero() {
                    for (k, c) in self.mul_vec(&self.antipode_vec(x), &self.basis_vec(z, al)) {
                        add_to(&mut lhs1, k, c);
                    }
                }
                let be = self.beta_graded(y);
                if !be.is_zero() {
                    for (k, c) in self.mul_vec(&self.basis_vec(x, be), &self.antipode_vec(z)) {
                        add_to(&mut lhs2, k, c);
                    }
                }
            }
            let rhs1 = self.basis_vec(self.unit_index(), self.alpha_graded(a));
            let rhs2 = self.basis_vec(self.unit_index(), self.beta_graded(a));
            first.expect(lhs1 == rhs1, || name.clone());
            second.expect(lhs2 == rhs2, || name.clone());

            let mut v3 = CycloNum::zero();
            let mut v4 = CycloNum::zero();
            for legs in self.iterated_coproduct(a, 5) {
                let (c3, s3) = self.antipode_of(legs[2]);
                let w = &(&self.beta_graded(legs[1]) * &self.alpha_graded(legs[3])) * c3;
                if !w.is_zero() {
                    v3 = &v3 + &(&w * &self.phi_graded(legs[0], s3, legs[4]));
                }
                let (c1, s1) = self.antipode_of(legs[0]);
                let (c5, s5) = self.antipode_of(legs[4]);
                let w = &(&(&self.alpha_graded(legs[1]) * &self.beta_graded(legs[3])) * c1) * c5;
                if !w.is_zero() {
                    match self.phi_inv_graded(s1, legs[2], s5) {
                        Ok(inv) => v4 = &v4 + &(&w * &inv),
                        Err(_) => {
                            fourth.expect(false, || format!("{name}: Φ not invertible"));
                        }
                    }
                }
            }
            third.expect(v3 == self.counit(a), || name.clone());
            fourth.expect(v4 == self.counit(a), || name.clone());
            let (c, t) = self.antipode_of(a);
            counit.expect(c * &self.counit(t) == self.counit(a), || name.clone());
        }
        VerificationReport::from_checks(vec![
            first.finish(),
            second.finish(),
            third.finish(),
            fourth.finish(),
            counit.finish(),
        ])
    }

    /// m(S⊗id)Δ = ηε = m(id⊗S)Δ; expected to hold exactly when s = 0.
    pub fn verify_hopf_antipode(&self) -> CheckResult {
        let mut check = Check::new("Hopf antipode identity");
        for a in 0..self.dim() {
            let mut left = Vector::new();
            let mut right = Vector::new();
            for (x, y) in self.coproduct(a) {
                for (k, c) in self.mul_vec(&self.antipode_vec(x), &self.basis_vec(y, CycloNum::one())) {
                    add_to(&mut left, k, c);
                }
                for (k, c) in self.mul_vec(&self.basis_vec(x, CycloNum::one()), &self.antipode_vec(y)) {
                    add_to(&mut right, k, c);
                }
            }
            let unit = self.basis_vec(self.unit_index(), self.counit(a));
            if !check.expect(left == unit && right == unit, || self.basis[a].to_string()) {
                break;
            }
        }
        check.finish()
    }

    /// Strict associativity (ab)c = a(bc) on all basis triples.
    pub fn is_associative(&self) -> bool {
        let dim = self.dim();
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let one = CycloNum::one;
                    let ab = self.mul_vec(&self.basis_vec(a, one()), &self.basis_vec(b, one()));
                    let bc = self.mul_vec(&self.basis_vec(b, one()), &self.basis_vec(c, one()));
                    if self.mul_vec(&ab, &self.basis_vec(c, one())) != self.mul_vec(&self.basis_vec(a, one()), &bc) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Number of basis elements reached by iterated products of g and X_1.
    pub fn span_of_generators(&self) -> usize {
        let n = self.n() as usize;
        let g = 1 % n;
        let x1 = n; // p_0^1
        let mut reached = BTreeSet::from([self.unit_index(), g]);
        if self.d > 1 {
            reached.insert(x1);
        }
        let gens: Vec<usize> = reached.iter().copied().collect();
        let mut frontier: Vec<usize> = gens.clone();
        while let Some(a) = frontier.pop() {
            for &h in &gens {
                for (x, y) in [(a, h), (h, a)] {
                    if let Some((c, t)) = self.product(x, y) {
                        if !c.is_zero() && reached.insert(t) {
                            frontier.push(t);
                        }
                    }
                }
            }
        }
        reached.len()
    }

    pub fn export(&self, format: ExportFormat) -> Result<String> {
        match format {
            ExportFormat::Json => {
                let doc = self.to_document();
                serde_json::to_string_pretty(&doc).map_err(|e| Error::Parse(e.to_string()))
            }
        }
    }

    fn to_document(&self) -> AlgebraDocument {
        let label = |k: usize| self.basis[k].to_string();
        let mut mult = Vec::with_capacity(self.mult.len());
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let (c, coeff) = match self.product(a, b) {
                    Some((coeff, t)) => (Some(label(t)), coeff.clone()),
                    None => (None, CycloNum::zero()),
                };
                mult.push(MultEntry {
                    a: label(a),
                    b: label(b),
                    c,
                    coeff,
                });
            }
        }
        let n = self.n() as i64;
        let mut phi = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    phi.push(PhiEntry {
                        i: i as u32,
                        j: j as u32,
                        k: k as u32,
                        value: self.phi(i, j, k).clone(),
                    });
                }
            }
        }
        AlgebraDocument {
            n: self.params.n,
            s: self.params.s,
            q_exp: self.params.q_exp,
            conductor: self.params.conductor(),
            d: self.d,
            dim: self.dim(),
            basis: (0..self.dim()).map(label).collect(),
            mult,
            antipode: self
                .antipode
                .iter()
                .enumerate()
                .map(|(a, (c, t))| AntipodeEntry {
                    a: label(a),
                    image: label(*t),
                    coeff: c.clone(),
                })
                .collect(),
            alpha: self.functional_entries(&self.alpha),
            beta: self.functional_entries(&self.beta),
            phi_s_on_grouplikes: phi,
        }
    }

    fn functional_entries(&self, values: &[CycloNum]) -> Vec<FunctionalEntry> {
        values
            .iter()
            .enumerate()
            .map(|(i, v)| FunctionalEntry {
                g: self.basis[i].to_string(),
                value: v.clone(),
            })
            .collect()
    }

    /// Reads an exported document back without recomputing anything.
    pub fn import(text: &str, format: ExportFormat) -> Result<Self> {
        match format {
            ExportFormat::Json => {
                let doc: AlgebraDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
                Self::from_document(doc)
            }
        }
    }

    fn from_document(doc: AlgebraDocument) -> Result<Self> {
        let params = Parameters::new(doc.n, doc.s, doc.q_exp as i64)?;
        let bad = |m: String| Err(Error::Parse(m));
        if params.q_exp != doc.q_exp {
            return bad(format!("q_exp {} is not reduced", doc.q_exp));
        }
        if doc.conductor != params.conductor() {
            return bad(format!("conductor {} does not match parameters", doc.conductor));
        }
        let n = doc.n;
        if doc.d == 0 || doc.dim != (n * doc.d) as usize {
            return bad(format!("dimension {} is not n·d", doc.dim));
        }
        let basis: Vec<Path> = (0..doc.d)
            .flat_map(|l| (0..n).map(move |i| Path::new(n, i as i64, l)))
            .collect();
        let listed = doc
            .basis
            .iter()
            .map(|s| parse_path(s, n))
            .collect::<Result<Vec<_>>>()?;
        if listed != basis {
            return bad("basis is not listed in canonical order".into());
        }
        let dim = basis.len();
        let index = |s: &str| -> Result<usize> {
            let p = parse_path(s, n)?;
            if p.length() >= doc.d {
                return Err(Error::Parse(format!("{s} is not a basis element")));
            }
            Ok((p.length() * n + p.source()) as usize)
        };
        if doc.mult.len() != dim * dim {
            return bad(format!("expected {} products, found {}", dim * dim, doc.mult.len()));
        }
        let mut mult = vec![None; dim * dim];
        let mut seen = vec![false; dim * dim];
        for e in doc.mult {
            let slot = index(&e.a)? * dim + index(&e.b)?;
            if std::mem::replace(&mut seen[slot], true) {
                return bad(format!("duplicate product {} * {}", e.a, e.b));
            }
            mult[slot] = match e.c {
                Some(c) => Some((e.coeff, index(&c)?)),
                None => {
                    if !e.coeff.is_zero() {
                        return bad(format!("product {} * {} has no target but a nonzero coefficient", e.a, e.b));
                    }
                    None
                }
            };
        }
        if doc.antipode.len() != dim {
            return bad("antipode table is incomplete".into());
        }
        let mut antipode = vec![None; dim];
        for e in doc.antipode {
            antipode[index(&e.a)?] = Some((e.coeff, index(&e.image)?));
        }
        let antipode = antipode
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse("antipode table has gaps".into()))?;
        let functional = |entries: Vec<FunctionalEntry>, what: &str| -> Result<Vec<CycloNum>> {
            if entries.len() != n as usize {
                return Err(Error::Parse(format!("{what} needs one value per group-like")));
            }
            let mut out = vec![None; n as usize];
            for e in entries {
                let k = index(&e.g)?;
                if k >= n as usize {
                    return Err(Error::Parse(format!("{what} is only defined on group-likes")));
                }
                out[k] = Some(e.value);
            }
            out.into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Parse(format!("{what} has gaps")))
        };
        let alpha = functional(doc.alpha, "alpha")?;
        let beta = functional(doc.beta, "beta")?;
        let nn = n as usize;
        if doc.phi_s_on_grouplikes.len() != nn * nn * nn {
            return bad("reassociator table is incomplete".into());
        }
        let mut phi = vec![None; nn * nn * nn];
        for e in doc.phi_s_on_grouplikes {
            if e.i >= n || e.j >= n || e.k >= n {
                return bad("reassociator index out of range".into());
            }
            phi[((e.i * n + e.j) * n + e.k) as usize] = Some(e.value);
        }
        let phi = phi
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse("reassociator table has gaps".into()))?;
        Ok(MajidAlgebra {
            params,
            d: doc.d,
            basis,
            mult,
            phi,
            antipode,
            alpha,
            beta,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MultEntry {
    a: String,
    b: String,
    c: Option<String>,
    coeff: CycloNum,
}

#[derive(Serialize, Deserialize)]
struct AntipodeEntry {
    a: String,
    image: String,
    coeff: CycloNum,
}

#[derive(Serialize, Deserialize)]
struct FunctionalEntry {
    g: String,
    value: CycloNum,
}

#[derive(Serialize, Deserialize)]
struct PhiEntry {
    i: u32,
    j: u32,
    k: u32,
    value: CycloNum,
}

#[derive(Serialize, Deserialize)]
struct AlgebraDocument {
    n: u32,
    s: u32,
    q_exp: u32,
    conductor: u32,
    d: u32,
    dim: usize,
    basis: Vec<String>,
    mult: Vec<MultEntry>,
    antipode: Vec<AntipodeEntry>,
    alpha: Vec<FunctionalEntry>,
    beta: Vec<FunctionalEntry>,
    phi_s_on_grouplikes: Vec<PhiEntry>,
}

/// One (s, q) family of M(n, s, q).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationEntry {
    pub n: u32,
    pub s: u32,
    pub q_exp: u32,
    pub conductor: u32,
    pub d: u32,
    pub dim: u32,
    pub is_hopf: bool,
    /// d = 1: only the group algebra remains.
    pub trivial_coradical: bool,
}

/// Every (s, q) for the given n with its truncation length and dimension.
pub fn classify(n: u32) -> Result<Vec<ClassificationEntry>> {
    Ok(Parameters::families(n)?
        .into_iter()
        .map(|p| {
            let d = p.d();
            ClassificationEntry {
                n,
                s: p.s,
                q_exp: p.q_exp,
                conductor: p.conductor(),
                d,
                dim: n * d,
                is_hopf: p.s == 0,
                trivial_coradical: d == 1,
            }
        })
        .collect())
}

/// Whether some M(n, s, q) truncates at length d: d ≥ 2 and either d | n
/// or d = n²/gcd(s, n²) for some 1 ≤ s ≤ n − 1.
pub fn truncation_criterion(n: u32, d: u32) -> bool {
    if d < 2 {
        return false;
    }
    if n.is_multiple_of(d) {
        return true;
    }
    let nn = n * n;
    (1..n).any(|s| nn / num_integer::gcd(s, nn) == d)
}

/// The set of admissible truncation lengths for n, by the criterion.
pub fn admissible_lengths(n: u32) -> BTreeSet<u32> {
    let mut out: BTreeSet<u32> = divisors(n as u64).into_iter().map(|d| d as u32).filter(|&d| d >= 2).collect();
    let nn = n * n;
    out.extend((1..n).map(|s| nn / num_integer::gcd(s, nn)));
    out
}

/// Attempts to build a structure-constant table on the d-truncated path
/// coalgebra for every (s, q); returns the families that close up.
pub fn try_truncation(n: u32, d: u32) -> Result<Vec<Parameters>> {
    if d < 2 {
        return Err(Error::InadmissibleTruncation { n, d });
    }
    let mut ok = Vec::new();
    for p in Parameters::families(n)? {
        match MajidAlgebra::structure(p, d) {
            Ok(_) => ok.push(p),
            Err(Error::InadmissibleTruncation { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if ok.is_empty() {
        return Err(Error::InadmissibleTruncation { n, d });
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: u32, s: u32, q_exp: i64) -> MajidAlgebra {
        MajidAlgebra::from_params(Parameters::new(n, s, q_exp).unwrap()).unwrap()
    }

    #[test]
    fn dimensions() {
        let alg = MajidAlgebra::build(2, 1, &CycloNum::root_of_unity(4, 1).unwrap()).unwrap();
        assert_eq!((alg.d(), alg.dim()), (4, 8));
        let taft = m(3, 0, 1);
        assert_eq!(taft.dim(), 9);
        let sweedler = m(2, 0, 1);
        assert_eq!((sweedler.d(), sweedler.dim()), (2, 4));
        assert!(MajidAlgebra::build(1, 0, &CycloNum::one()).is_err());
        assert!(matches!(
            MajidAlgebra::build(3, 1, &CycloNum::root_of_unity(9, 2).unwrap()),
            Err(Error::IllegalQ { .. })
        ));
    }

    #[test]
    fn axioms_on_small_cases() {
        for (n, s, q) in [(2, 1, 1), (2, 1, 3), (2, 0, 1), (3, 1, 1), (3, 2, 7), (3, 0, 2)] {
            let alg = m(n, s, q);
            let r = alg.verify_quasi_bialgebra();
            assert!(r.passed, "{:?}", r.first_failure());
            let r = alg.verify_antipode();
            assert!(r.passed, "{:?}", r.first_failure());
            assert_eq!(alg.span_of_generators(), alg.dim());
        }
    }

    #[test]
    fn untwisted_case_is_a_hopf_algebra() {
        let alg = m(3, 0, 1);
        assert!(alg.is_associative());
        assert!(alg.verify_hopf_antipode().passed);
        // Taft-type S(X_1) = −g^{−1}X_1 up to the bimodule scalar: its image is p(n−1, 1).
        let x1 = alg.index_of(&Path::arrow(3, 1)).unwrap();
        let (c, t) = alg.antipode_of(x1);
        assert_eq!(alg.basis()[t], Path::new(3, 2, 1));
        assert_eq!(c, &CycloNum::from_integer(-1));
    }

    #[test]
    fn mutated_constant_is_caught() {
        let mut alg = m(2, 1, 1);
        let x1 = alg.index_of(&Path::arrow(2, 1)).unwrap();
        let (c, t) = alg.product(x1, x1).map(|(c, t)| (c.clone(), t)).unwrap();
        alg.set_product(x1, x1, Some((c.scale(2), t)));
        let r = alg.verify_quasi_bialgebra();
        assert!(!r.passed);
        assert!(r.first_failure().unwrap().witness.is_some());
    }

    #[test]
    fn beta_and_group_antipode() {
        let alg = m(4, 3, 1);
        for i in 0..4u32 {
            let (c, t) = alg.antipode_of(i as usize);
            assert!(c.is_one());
            assert_eq!(t as i64, (-(i as i64)).rem_euclid(4));
            let expected = CycloNum::root_of_unity(4, -3 * i as i64).unwrap();
            assert_eq!(alg.beta(i), &expected);
        }
    }

    #[test]
    fn export_round_trip_is_byte_stable() {
        let alg = m(2, 1, 1);
        let text = alg.export(ExportFormat::Json).unwrap();
        let back = MajidAlgebra::import(&text, ExportFormat::Json).unwrap();
        assert_eq!(back, alg);
        assert_eq!(back.export(ExportFormat::Json).unwrap(), text);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["dim"], 8);
        let hbar = alg.params().hbar().to_cyclo();
        let x1x1 = v["mult"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["a"] == "p(0,1)" && e["b"] == "p(0,1)")
            .unwrap();
        assert_eq!(x1x1["c"], "p(0,2)");
        assert_eq!(x1x1["coeff"], serde_json::to_value(&CycloNum::one() + &hbar).unwrap());
        assert!(matches!("xml".parse::<ExportFormat>(), Err(Error::UnknownFormat(_))));
    }

    #[test]
    fn classification_of_two() {
        let entries = classify(2).unwrap();
        assert_eq!(entries.len(), 4);
        let ds: BTreeSet<u32> = entries.iter().filter(|e| e.s == 0).map(|e| e.d).collect();
        assert_eq!(ds, BTreeSet::from([1, 2]));
        assert!(entries.iter().filter(|e| e.s == 1).all(|e| e.d == 4 && e.dim == 8 && !e.is_hopf));
        assert!(entries.iter().any(|e| e.trivial_coradical));
    }

    #[test]
    fn truncations() {
        assert_eq!(admissible_lengths(4), BTreeSet::from([2, 4, 8, 16]));
        assert!(try_truncation(2, 4).is_ok());
        assert!(try_truncation(2, 3).is_err());
        assert!(try_truncation(3, 1).is_err());
        assert!(!truncation_criterion(6, 5));
    }
}
