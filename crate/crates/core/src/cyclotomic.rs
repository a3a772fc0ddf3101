//! Exact arithmetic in cyclotomic fields.
//!
//! A [`CycloNum`] is an element of ℚ(ζ_N) stored as a polynomial in ζ_N of
//! degree below φ(N), reduced modulo the N-th cyclotomic polynomial, with a
//! single positive common denominator. Values whose coefficients fit in `i64`
//! use a machine-word representation; everything else spills to `BigInt`.
//! The choice is canonical (a value is small iff all its reduced coefficients
//! fit), so structural equality of two values at the same conductor is field
//! equality.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_CONDUCTOR: u64 = 10_000;
pub const MAX_CONDUCTOR_ENV: &str = "MQG_MAX_CONDUCTOR";

static MAX_CONDUCTOR: AtomicU64 = AtomicU64::new(0);

/// Upper bound on conductors produced by arithmetic. Read once from
/// `MQG_MAX_CONDUCTOR`, falling back to [`DEFAULT_MAX_CONDUCTOR`].
pub fn max_conductor() -> u64 {
    let cur = MAX_CONDUCTOR.load(Ordering::Relaxed);
    if cur != 0 {
        return cur;
    }
    let from_env = std::env::var(MAX_CONDUCTOR_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_MAX_CONDUCTOR);
    MAX_CONDUCTOR.store(from_env, Ordering::Relaxed);
    from_env
}

pub fn set_max_conductor(bound: u64) {
    MAX_CONDUCTOR.store(bound.max(1), Ordering::Relaxed);
}

fn check_conductor(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::InvalidConductor(0));
    }
    let max = max_conductor();
    if n > max {
        return Err(Error::ConductorOverflow { requested: n, max });
    }
    Ok(n as u32)
}

pub fn euler_totient(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn mobius(n: u64) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// The monic cyclotomic polynomial Φ_N with a sparse view of its lower terms.
#[derive(Debug)]
struct CycloPoly {
    degree: usize,
    coeffs: Vec<i64>,
    lower: Vec<(usize, i64)>,
}

/// Φ_N = Π_{d | N} (x^d − 1)^{μ(N/d)}: multiply the positive factors first,
/// then divide out the negative ones exactly.
fn compute_cyclotomic(n: u64) -> Vec<i64> {
    let mut poly: Vec<i64> = vec![1];
    let divs = divisors(n);
    for &d in &divs {
        if mobius(n / d) == 1 {
            let d = d as usize;
            let mut next = vec![0i64; poly.len() + d];
            for (k, &c) in poly.iter().enumerate() {
                next[k + d] += c;
                next[k] -= c;
            }
            poly = next;
        }
    }
    for &d in &divs {
        if mobius(n / d) == -1 {
            let d = d as usize;
            let qlen = poly.len() - d;
            let mut q = vec![0i64; qlen];
            for k in 0..qlen {
                let prev = if k >= d { q[k - d] } else { 0 };
                q[k] = prev - poly[k];
            }
            poly = q;
        }
    }
    poly
}

thread_local! {
    static CYCLO_CACHE: RefCell<HashMap<u32, Rc<CycloPoly>>> = RefCell::new(HashMap::new());
}

fn cyclo_poly(n: u32) -> Rc<CycloPoly> {
    CYCLO_CACHE.with(|cache| {
        if let Some(p) = cache.borrow().get(&n) {
            return Rc::clone(p);
        }
        let coeffs = compute_cyclotomic(n as u64);
        let degree = coeffs.len() - 1;
        let lower = coeffs[..degree]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        let p = Rc::new(CycloPoly {
            degree,
            coeffs,
            lower,
        });
        cache.borrow_mut().insert(n, Rc::clone(&p));
        p
    })
}

/// Coefficients of Φ_N, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Result<Vec<i64>> {
    if n == 0 {
        return Err(Error::InvalidConductor(0));
    }
    Ok(cyclo_poly(n).coeffs.clone())
}

trait Coef: Clone + PartialEq + Zero {
    fn c_add(&self, o: &Self) -> Option<Self>;
    fn c_sub(&self, o: &Self) -> Option<Self>;
    fn c_mul(&self, o: &Self) -> Option<Self>;
    fn c_mul_small(&self, k: i64) -> Option<Self>;
}

impl Coef for i64 {
    fn c_add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn c_sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn c_mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn c_mul_small(&self, k: i64) -> Option<Self> {
        self.checked_mul(k)
    }
}

impl Coef for i128 {
    fn c_add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn c_sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn c_mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn c_mul_small(&self, k: i64) -> Option<Self> {
        self.checked_mul(k as i128)
    }
}

impl Coef for BigInt {
    fn c_add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn c_sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn c_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn c_mul_small(&self, k: i64) -> Option<Self> {
        Some(self * k)
    }
}

/// Reduce `p` modulo the monic Φ in place, leaving exactly `degree` coefficients.
fn reduce_mod<T: Coef>(mut p: Vec<T>, phi: &CycloPoly) -> Option<Vec<T>> {
    let deg = phi.degree;
    if p.len() < deg {
        p.resize(deg, T::zero());
        return Some(p);
    }
    for k in (deg..p.len()).rev() {
        if p[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut p[k], T::zero());
        let base = k - deg;
        for &(t, coef) in &phi.lower {
            let sub = c.c_mul_small(coef)?;
            p[base + t] = p[base + t].c_sub(&sub)?;
        }
    }
    p.truncate(deg);
    Some(p)
}

fn poly_mul<T: Coef>(a: &[T], b: &[T]) -> Option<Vec<T>> {
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].c_add(&x.c_mul(y)?)?;
        }
    }
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Small { num: Vec<i64>, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

impl Repr {
    fn to_big(&self) -> (Vec<BigInt>, BigInt) {
        match self {
            Repr::Small { num, den } => (
                num.iter().map(|&x| BigInt::from(x)).collect(),
                BigInt::from(*den),
            ),
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Repr::Small { num, .. } => num.iter().all(|&x| x == 0),
            Repr::Big { num, .. } => num.iter().all(Zero::is_zero),
        }
    }
}

fn normalize_small(mut num: Vec<i64>, mut den: i64) -> Option<Repr> {
    if den == 0 {
        return None;
    }
    if num.iter().all(|&x| x == 0) {
        return Some(Repr::Small { num, den: 1 });
    }
    if den < 0 {
        den = den.checked_neg()?;
        for x in num.iter_mut() {
            *x = x.checked_neg()?;
        }
    }
    if den != 1 {
        let mut g = den;
        for &x in &num {
            if g == 1 {
                break;
            }
            g = g.gcd(&x);
        }
        if g > 1 {
            den /= g;
            for x in num.iter_mut() {
                *x /= g;
            }
        }
    }
    Some(Repr::Small { num, den })
}

fn normalize_big(mut num: Vec<BigInt>, mut den: BigInt) -> Repr {
    assert!(!den.is_zero(), "zero denominator in cyclotomic value");
    if num.iter().all(Zero::is_zero) {
        return Repr::Small {
            num: vec![0; num.len()],
            den: 1,
        };
    }
    if den.is_negative() {
        den = -den;
        for x in num.iter_mut() {
            *x = -std::mem::take(x);
        }
    }
    let mut g = den.clone();
    for x in &num {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    if !g.is_one() {
        den /= &g;
        for x in num.iter_mut() {
            *x /= &g;
        }
    }
    let small_den = den.to_i64();
    let small_num: Option<Vec<i64>> = num.iter().map(|x| x.to_i64()).collect();
    match (small_num, small_den) {
        (Some(num), Some(den)) => Repr::Small { num, den },
        _ => Repr::Big { num, den },
    }
}

/// An exact element of ℚ(ζ_N).
#[derive(Clone)]
pub struct CycloNum {
    conductor: u32,
    repr: Repr,
}

impl CycloNum {
    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(value: i64) -> Self {
        CycloNum {
            conductor: 1,
            repr: Repr::Small {
                num: vec![value],
                den: 1,
            },
        }
    }

    pub fn from_big_rational(value: &BigRational) -> Self {
        CycloNum {
            conductor: 1,
            repr: normalize_big(vec![value.numer().clone()], value.denom().clone()),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(CycloNum {
            conductor: 1,
            repr: normalize_big(vec![BigInt::from(num)], BigInt::from(den)),
        })
    }

    /// The zero of ℚ(ζ_N), carrying the conductor explicitly.
    pub fn zero_in(conductor: u32) -> Result<Self> {
        let n = check_conductor(conductor as u64)?;
        let deg = cyclo_poly(n).degree;
        Ok(CycloNum {
            conductor: n,
            repr: Repr::Small {
                num: vec![0; deg],
                den: 1,
            },
        })
    }

    /// Builds Σ num[k] ζ_N^k / den, reducing modulo Φ_N. `num` may have any length.
    pub fn from_coefficients(conductor: u32, num: Vec<BigInt>, den: BigInt) -> Result<Self> {
        let n = check_conductor(conductor as u64)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi = cyclo_poly(n);
        let mut num = num;
        if num.is_empty() {
            num.push(BigInt::zero());
        }
        let reduced = reduce_mod(num, &phi).expect("bigint reduction is infallible");
        Ok(CycloNum {
            conductor: n,
            repr: normalize_big(reduced, den),
        })
    }

    /// ζ_N^e, for any integer e.
    pub fn root_of_unity(conductor: u32, e: i64) -> Result<Self> {
        let n = check_conductor(conductor as u64)?;
        let phi = cyclo_poly(n);
        let e = e.rem_euclid(n as i64) as usize;
        let mut num = vec![0i64; (e + 1).max(phi.degree)];
        num[e] = 1;
        let num = reduce_mod(num, &phi).expect("powers of ζ have small coefficients");
        Ok(CycloNum {
            conductor: n,
            repr: Repr::Small { num, den: 1 },
        })
    }

    /// Σ_k counts[k] ζ_N^k for a group-ring vector indexed by exponent.
    pub fn from_zeta_counts(conductor: u32, counts: &[i128]) -> Result<Self> {
        let n = check_conductor(conductor as u64)?;
        let phi = cyclo_poly(n);
        let mut folded = vec![0i128; n as usize];
        for (k, &c) in counts.iter().enumerate() {
            let slot = k % n as usize;
            folded[slot] = folded[slot]
                .checked_add(c)
                .ok_or_else(|| Error::InvalidParameter("group-ring count overflow".into()))?;
        }
        let small = reduce_mod(folded.clone(), &phi).and_then(|v| {
            v.into_iter()
                .map(|x| i64::try_from(x).ok())
                .collect::<Option<Vec<i64>>>()
        });
        let repr = match small {
            Some(num) => Repr::Small { num, den: 1 },
            None => {
                let big: Vec<BigInt> = folded.into_iter().map(BigInt::from).collect();
                let reduced = reduce_mod(big, &phi).expect("bigint reduction is infallible");
                normalize_big(reduced, BigInt::one())
            }
        };
        Ok(CycloNum {
            conductor: n,
            repr,
        })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// φ(N): the length of the coefficient vector.
    pub fn degree(&self) -> usize {
        match &self.repr {
            Repr::Small { num, .. } => num.len(),
            Repr::Big { num, .. } => num.len(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small { num, den } => {
                *den == 1 && num[0] == 1 && num[1..].iter().all(|&x| x == 0)
            }
            Repr::Big { .. } => false,
        }
    }

    /// Numerator coefficients (degree 0 first) and the positive common denominator.
    pub fn numerators(&self) -> (Vec<BigInt>, BigInt) {
        self.repr.to_big()
    }

    pub fn coefficients(&self) -> Vec<BigRational> {
        let (num, den) = self.repr.to_big();
        num.into_iter()
            .map(|x| BigRational::new(x, den.clone()))
            .collect()
    }

    /// The value as a rational number, if it lies in ℚ.
    pub fn to_rational(&self) -> Option<BigRational> {
        let coeffs = self.coefficients();
        if coeffs[1..].iter().all(Zero::is_zero) {
            Some(coeffs[0].clone())
        } else {
            None
        }
    }

    /// Embeds into ℚ(ζ_M) for a multiple M of the conductor.
    pub fn lift(&self, target: u32) -> Result<Self> {
        if target == 0 || !target.is_multiple_of(self.conductor) {
            return Err(Error::InvalidParameter(format!(
                "cannot embed conductor {} into {}",
                self.conductor, target
            )));
        }
        check_conductor(target as u64)?;
        Ok(self.lift_unchecked(target))
    }

    fn lift_unchecked(&self, target: u32) -> Self {
        if target == self.conductor {
            return self.clone();
        }
        let k = (target / self.conductor) as usize;
        let phi = cyclo_poly(target);
        let repr = match &self.repr {
            Repr::Small { num, den } => {
                let mut spread = vec![0i64; (num.len() - 1) * k + 1];
                for (i, &c) in num.iter().enumerate() {
                    spread[i * k] = c;
                }
                match reduce_mod(spread, &phi) {
                    Some(v) => Repr::Small { num: v, den: *den },
                    None => self.lift_big(k, &phi),
                }
            }
            Repr::Big { .. } => self.lift_big(k, &phi),
        };
        CycloNum {
            conductor: target,
            repr,
        }
    }

    fn lift_big(&self, k: usize, phi: &CycloPoly) -> Repr {
        let (num, den) = self.repr.to_big();
        let mut spread = vec![BigInt::zero(); (num.len() - 1) * k + 1];
        for (i, c) in num.into_iter().enumerate() {
            spread[i * k] = c;
        }
        let reduced = reduce_mod(spread, phi).expect("bigint reduction is infallible");
        normalize_big(reduced, den)
    }

    fn unify(&self, other: &Self) -> Result<(Self, Self)> {
        if self.conductor == other.conductor {
            return Ok((self.clone(), other.clone()));
        }
        let l = (self.conductor as u64).lcm(&(other.conductor as u64));
        let l = check_conductor(l)?;
        Ok((self.lift_unchecked(l), other.lift_unchecked(l)))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.add_sub(other, false)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.add_sub(other, true)
    }

    fn add_sub(&self, other: &Self, subtract: bool) -> Result<Self> {
        let (a, b) = self.unify(other)?;
        let conductor = a.conductor;
        if let (Repr::Small { num: x, den: dx }, Repr::Small { num: y, den: dy }) =
            (&a.repr, &b.repr)
        {
            if let Some(repr) = small_add(x, *dx, y, *dy, subtract) {
                return Ok(CycloNum { conductor, repr });
            }
        }
        let (x, dx) = a.repr.to_big();
        let (y, dy) = b.repr.to_big();
        let num = x
            .iter()
            .zip(&y)
            .map(|(p, q)| {
                let lhs = p * &dy;
                let rhs = q * &dx;
                if subtract {
                    lhs - rhs
                } else {
                    lhs + rhs
                }
            })
            .collect();
        Ok(CycloNum {
            conductor,
            repr: normalize_big(num, dx * dy),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.unify(other)?;
        let conductor = a.conductor;
        let phi = cyclo_poly(conductor);
        if let (Repr::Small { num: x, den: dx }, Repr::Small { num: y, den: dy }) =
            (&a.repr, &b.repr)
        {
            let attempt = poly_mul(x, y)
                .and_then(|p| reduce_mod(p, &phi))
                .and_then(|p| dx.checked_mul(*dy).and_then(|d| normalize_small(p, d)));
            if let Some(repr) = attempt {
                return Ok(CycloNum { conductor, repr });
            }
        }
        let (x, dx) = a.repr.to_big();
        let (y, dy) = b.repr.to_big();
        let prod = poly_mul(&x, &y).expect("bigint multiplication is infallible");
        let reduced = reduce_mod(prod, &phi).expect("bigint reduction is infallible");
        Ok(CycloNum {
            conductor,
            repr: normalize_big(reduced, dx * dy),
        })
    }

    /// Multiplies by ζ_N^e where N is this value's conductor.
    pub fn mul_zeta(&self, e: i64) -> Self {
        let n = self.conductor as usize;
        let e = e.rem_euclid(n as i64) as usize;
        if e == 0 {
            return self.clone();
        }
        let phi = cyclo_poly(self.conductor);
        let repr = match &self.repr {
            Repr::Small { num, den } => {
                let mut shifted = vec![0i64; num.len() + e];
                shifted[e..].copy_from_slice(num);
                match reduce_mod(shifted, &phi) {
                    Some(v) => Repr::Small { num: v, den: *den },
                    None => self.mul_zeta_big(e, &phi),
                }
            }
            Repr::Big { .. } => self.mul_zeta_big(e, &phi),
        };
        CycloNum {
            conductor: self.conductor,
            repr,
        }
    }

    fn mul_zeta_big(&self, e: usize, phi: &CycloPoly) -> Repr {
        let (num, den) = self.repr.to_big();
        let mut shifted = vec![BigInt::zero(); e];
        shifted.extend(num);
        let reduced = reduce_mod(shifted, phi).expect("bigint reduction is infallible");
        normalize_big(reduced, den)
    }

    pub fn scale(&self, k: i64) -> Self {
        self * &CycloNum::from_integer(k)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm modulo Φ_N.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi = cyclo_poly(self.conductor);
        let modulus: Vec<BigRational> = phi
            .coeffs
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let value = trim(self.coefficients());
        let (mut r0, mut r1) = (modulus, value);
        let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul_q(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant because Φ_N is irreducible.
        let c = r1[0].clone();
        if c.is_zero() {
            return Err(Error::Structural(
                "extended Euclid did not terminate in a unit".into(),
            ));
        }
        let coeffs: Vec<BigRational> = s1.into_iter().map(|x| x / &c).collect();
        Ok(Self::from_rational_coeffs(self.conductor, coeffs))
    }

    fn from_rational_coeffs(conductor: u32, coeffs: Vec<BigRational>) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let phi = cyclo_poly(conductor);
        let reduced = reduce_mod(num, &phi).expect("bigint reduction is infallible");
        CycloNum {
            conductor,
            repr: normalize_big(reduced, den),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = CycloNum::one().lift_unchecked(self.conductor);
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Smallest k ≥ 1 with a^k = 1, or `None` when a is not a root of unity.
    ///
    /// The roots of unity in ℚ(ζ_N) are exactly the lcm(2, N)-th roots, so only
    /// divisors of that exponent are scanned.
    pub fn mult_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let m = (self.conductor as u64).lcm(&2);
        if !self.pow(m as i64).ok()?.is_one() {
            return None;
        }
        divisors(m)
            .into_iter()
            .find(|&k| self.pow(k as i64).map(|x| x.is_one()).unwrap_or(false))
    }

    /// Numerical value, for display and floating-point cross-checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let (num, den) = self.repr.to_big();
        let den = den.to_f64().unwrap_or(f64::INFINITY);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in num.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN) / den;
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += c * angle.cos();
            im += c * angle.sin();
        }
        (re, im)
    }
}

fn small_add(x: &[i64], dx: i64, y: &[i64], dy: i64, subtract: bool) -> Option<Repr> {
    let (fx, fy, den) = if dx == dy {
        (1, 1, dx)
    } else {
        let l = dx.checked_mul(dy / dx.gcd(&dy))?;
        (l / dx, l / dy, l)
    };
    let mut num = Vec::with_capacity(x.len());
    for (a, b) in x.iter().zip(y) {
        let a = a.checked_mul(fx)?;
        let b = b.checked_mul(fy)?;
        num.push(if subtract {
            a.checked_sub(b)?
        } else {
            a.checked_add(b)?
        });
    }
    normalize_small(num, den)
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().map(Zero::is_zero).unwrap_or(false) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    let zero = BigRational::zero();
    let out = (0..len)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim(out)
}

fn poly_mul_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (vec![BigRational::zero()], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = &rem[k] / &lead;
        for (t, bc) in b.iter().enumerate() {
            let idx = k - db + t;
            rem[idx] -= &c * bc;
        }
        quot[k - db] = c;
    }
    rem.truncate(db.max(1));
    (trim(quot), trim(rem))
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.repr == other.repr;
        }
        let l = (self.conductor as u64).lcm(&(other.conductor as u64)) as u32;
        self.lift_unchecked(l).repr == other.lift_unchecked(l).repr
    }
}

impl Eq for CycloNum {}

impl Default for CycloNum {
    fn default() -> Self {
        Self::zero()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a CycloNum> for &'a CycloNum {
            type Output = CycloNum;
            /// Panics if the unified conductor exceeds the configured bound;
            /// use the `checked_*` form to handle that case.
            fn $method(self, rhs: &'a CycloNum) -> CycloNum {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &'a CycloNum) -> CycloNum {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        let repr = match &self.repr {
            Repr::Small { num, den } => {
                match num.iter().map(|x| x.checked_neg()).collect::<Option<Vec<_>>>() {
                    Some(num) => Repr::Small { num, den: *den },
                    None => {
                        let (num, den) = self.repr.to_big();
                        normalize_big(num.into_iter().map(|x| -x).collect(), den)
                    }
                }
            }
            Repr::Big { num, den } => {
                normalize_big(num.iter().map(|x| -x).collect(), den.clone())
            }
        };
        CycloNum {
            conductor: self.conductor,
            repr,
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl std::iter::Sum for CycloNum {
    fn sum<I: Iterator<Item = CycloNum>>(iter: I) -> Self {
        iter.fold(CycloNum::zero(), |acc, x| acc + x)
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[{}]({})", self.conductor, self)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coefficients();
        let mut first = true;
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            let zeta = match k {
                0 => String::new(),
                1 => format!("z{}", self.conductor),
                _ => format!("z{}^{}", self.conductor, k),
            };
            if zeta.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{zeta}")?;
            } else {
                write!(f, "{mag}*{zeta}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(x.to_string()),
        }
    }
}

impl JsonInt {
    fn to_big(&self) -> std::result::Result<BigInt, String> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.parse().map_err(|_| format!("bad integer `{s}`")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycloJson {
    conductor: u32,
    num: Vec<JsonInt>,
    den: JsonInt,
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let (num, den) = self.repr.to_big();
        CycloJson {
            conductor: self.conductor,
            num: num.iter().map(JsonInt::from).collect(),
            den: JsonInt::from(&den),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CycloJson::deserialize(deserializer)?;
        let num = raw
            .num
            .iter()
            .map(JsonInt::to_big)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        let den = raw.den.to_big().map_err(D::Error::custom)?;
        CycloNum::from_coefficients(raw.conductor, num, den).map_err(D::Error::custom)
    }
}

/// A root of unity ζ_N^e held by its exponent.
///
/// Every action scalar of the arrow bimodule and every reassociator value is
/// of this form, so the combinatorial sums run in exponent space and only
/// the final totals are converted to [`CycloNum`].
///
/// Equality is equality of complex numbers: ζ_4^2 = ζ_2^1.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RootOfUnity {
    conductor: u32,
    exponent: u32,
}

impl RootOfUnity {
    pub fn new(conductor: u32, exponent: i64) -> Self {
        assert!(conductor > 0, "root of unity with zero conductor");
        RootOfUnity {
            conductor,
            exponent: exponent.rem_euclid(conductor as i64) as u32,
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::new(conductor, 0)
    }

    pub fn conductor(self) -> u32 {
        self.conductor
    }

    pub fn exponent(self) -> u32 {
        self.exponent
    }

    pub fn is_one(self) -> bool {
        self.exponent == 0
    }

    pub fn lift(self, target: u32) -> Self {
        assert!(
            target.is_multiple_of(self.conductor),
            "cannot lift conductor {} to {}",
            self.conductor,
            target
        );
        Self::new(
            target,
            self.exponent as i64 * (target / self.conductor) as i64,
        )
    }

    fn unify(self, other: Self) -> (Self, Self) {
        if self.conductor == other.conductor {
            return (self, other);
        }
        let l = (self.conductor as u64).lcm(&(other.conductor as u64)) as u32;
        (self.lift(l), other.lift(l))
    }

    pub fn pow(self, e: i64) -> Self {
        let n = self.conductor as i64;
        let e = e.rem_euclid(n);
        Self::new(self.conductor, (self.exponent as i64 * e) % n)
    }

    pub fn inv(self) -> Self {
        Self::new(self.conductor, -(self.exponent as i64))
    }

    pub fn order(self) -> u64 {
        let n = self.conductor as u64;
        n / n.gcd(&(self.exponent as u64))
    }

    pub fn to_cyclo(self) -> CycloNum {
        CycloNum::root_of_unity(self.conductor, self.exponent as i64)
            .unwrap_or_else(|e| panic!("{e}"))
    }

    /// Finds e with x = ζ_N^e, if x is such a root.
    pub fn from_cyclo(x: &CycloNum, conductor: u32) -> Option<Self> {
        if x.is_zero() || conductor == 0 {
            return None;
        }
        let target = x.lift(conductor).ok()?;
        let one = CycloNum::one().lift(conductor).ok()?;
        (0..conductor as i64)
            .find(|&e| one.mul_zeta(e) == target)
            .map(|e| Self::new(conductor, e))
    }
}

impl PartialEq for RootOfUnity {
    fn eq(&self, other: &Self) -> bool {
        self.exponent as u64 * other.conductor as u64 == other.exponent as u64 * self.conductor as u64
    }
}

impl Eq for RootOfUnity {}

impl std::hash::Hash for RootOfUnity {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let g = (self.exponent as u64).gcd(&(self.conductor as u64));
        (self.exponent as u64 / g, self.conductor as u64 / g).hash(state);
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;
    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        let (a, b) = self.unify(rhs);
        Self::new(a.conductor, a.exponent as i64 + b.exponent as i64)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}^{}", self.conductor, self.exponent)
    }
}
