//! Exact scalars: integer Laurent polynomials in one variable and numbers in a
//! cyclotomic field `Q(zeta_N)`.
//!
//! The Hecke algebra uses the variable `v` with `q = v^2`, `Q = v`. The blob
//! algebra reuses the same type with the variable read as `q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest conductor accepted by [`CycloField::new`].
pub const MAX_CONDUCTOR: u32 = 120;

/// A Laurent polynomial `sum c_k v^k` with integer coefficients.
///
/// Stored densely from the lowest nonzero exponent; the zero polynomial has an
/// empty coefficient vector. Leading and trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^exp`.
    pub fn monomial(c: i64, exp: i32) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self { low: exp, coeffs: vec![c] }
    }

    /// The variable itself.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut map: BTreeMap<i32, i64> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert(0) += c;
        }
        map.retain(|_, c| *c != 0);
        let (Some((&lo, _)), Some((&hi, _))) = (map.first_key_value(), map.last_key_value()) else {
            return Self::zero();
        };
        let mut coeffs = vec![0; (hi - lo + 1) as usize];
        for (e, c) in map {
            coeffs[(e - lo) as usize] = c;
        }
        Self { low: lo, coeffs }
    }

    fn normalize(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| **c == 0).count();
        if lead == self.coeffs.len() {
            return Self::zero();
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs == [1]
    }

    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        let k = exp - self.low;
        if k < 0 {
            return 0;
        }
        self.coeffs.get(k as usize).copied().unwrap_or(0)
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(move |(k, c)| (self.low + k as i32, *c))
    }

    /// If `self = c * v^e`, returns `(c, e)`.
    pub fn as_monomial(&self) -> Option<(i64, i32)> {
        (self.coeffs.len() == 1).then(|| (self.coeffs[0], self.low))
    }

    /// The ring automorphism `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self { low: -self.max_exp().unwrap(), coeffs }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    fn filter_exps(&self, keep: impl Fn(i32) -> bool) -> Self {
        Self::from_terms(self.terms().filter(|(e, _)| keep(*e)))
    }

    /// Terms with strictly positive exponent.
    pub fn positive_part(&self) -> Self {
        self.filter_exps(|e| e > 0)
    }

    /// Terms with strictly negative exponent.
    pub fn negative_part(&self) -> Self {
        self.filter_exps(|e| e < 0)
    }

    pub fn constant_term(&self) -> i64 {
        self.coeff(0)
    }

    /// True iff every term has strictly positive exponent.
    pub fn in_positive_span(&self) -> bool {
        self.min_exp().is_none_or(|e| e > 0)
    }

    /// The unique bar-invariant `a` with `self - a` in the positive span.
    pub fn bar_symmetric_correction(&self) -> Self {
        let mut terms = Vec::new();
        for (e, c) in self.terms() {
            match e {
                0 => terms.push((0, c)),
                e if e < 0 => {
                    terms.push((e, c));
                    terms.push((-e, c));
                }
                _ => {}
            }
        }
        Self::from_terms(terms)
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitution `v -> v^k` (k may be negative).
    pub fn substitute_power(&self, k: i32) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c)))
    }

    /// Exact division; `None` if `divisor` does not divide `self` in `Z[v, v^{-1}]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Work with ordinary polynomials in v, highest degree first.
        let d_lead = *divisor.coeffs.last().unwrap();
        let d_len = divisor.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < d_len {
            return None;
        }
        let q_len = rem.len() - d_len + 1;
        let mut quot = vec![0i64; q_len];
        for k in (0..q_len).rev() {
            let top = rem[k + d_len - 1];
            if top % d_lead != 0 {
                return None;
            }
            let c = top / d_lead;
            quot[k] = c;
            if c != 0 {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= c * d;
                }
            }
        }
        if rem.iter().any(|c| *c != 0) {
            return None;
        }
        Some(Self { low: self.low - divisor.low, coeffs: quot }.normalize())
    }

    /// Evaluation at an element of a cyclotomic field.
    pub fn eval_cyclo(&self, x: &CycloNumber) -> CycloNumber {
        let mut acc = x.field().zero();
        if self.is_zero() {
            return acc;
        }
        let xinv = x.inv().expect("evaluation point must be a unit");
        // Horner on v^low * p(v) with p an honest polynomial.
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &x.field().from_int(*c);
        }
        let shift = if self.low >= 0 { x.pow(self.low as u32) } else { xinv.pow((-self.low) as u32) };
        &acc * &shift
    }

    /// Evaluation at a nonzero rational number.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(BigInt::from(*c));
        }
        let base = if self.low >= 0 { x.clone() } else { x.recip() };
        let mut s = BigRational::one();
        for _ in 0..self.low.unsigned_abs() {
            s *= &base;
        }
        acc * s
    }
}

/// The balanced Gaussian integer `[n]_x = x^{n-1} + x^{n-3} + ... + x^{1-n}` with `x = v^k`.
pub fn gauss(n: i64, k: i32) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::NegativeN(n));
    }
    let n = n as i32;
    Ok(LaurentPoly::from_terms((0..n).map(|j| ((n - 1 - 2 * j) * k, 1))))
}

/// The quantum integer `[m] = (v^m - v^{-m}) / (v - v^{-1})` for any integer `m`.
pub fn quantum_int(m: i64) -> LaurentPoly {
    let p = gauss(m.abs(), 1).expect("nonnegative");
    if m < 0 {
        -p
    } else {
        p
    }
}

/// `[a]! = [1][2]...[a]` in the variable `v`.
pub fn quantum_factorial(a: u32) -> LaurentPoly {
    (1..=a as i64).fold(LaurentPoly::one(), |acc, j| &acc * &quantum_int(j))
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (e, abs) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => write!(f, "v")?,
                (1, a) => write!(f, "{a}v")?,
                (e, 1) => write!(f, "v^{e}")?,
                (e, a) => write!(f, "{a}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, i64> = self.terms().map(|(e, c)| (e.to_string(), c)).collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<String, i64>::deserialize(d)?;
        let mut terms = Vec::with_capacity(map.len());
        for (k, c) in map {
            let e: i32 = k.parse().map_err(serde::de::Error::custom)?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

fn add_into(a: &LaurentPoly, b: &LaurentPoly, sign: i64) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return b.scale(sign);
    }
    let lo = a.low.min(b.low);
    let hi = a.max_exp().unwrap().max(b.max_exp().unwrap());
    let mut coeffs = vec![0i64; (hi - lo + 1) as usize];
    for (k, c) in a.coeffs.iter().enumerate() {
        coeffs[(a.low - lo) as usize + k] += c;
    }
    for (k, c) in b.coeffs.iter().enumerate() {
        coeffs[(b.low - lo) as usize + k] += sign * c;
    }
    LaurentPoly { low: lo, coeffs }.normalize()
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_into(self, rhs, 1)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_into(self, rhs, -1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly { low: self.low + rhs.low, coeffs }.normalize()
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $t:ty) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add, LaurentPoly);
forward_owned!(Sub, sub, LaurentPoly);
forward_owned!(Mul, mul, LaurentPoly);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self - rhs;
    }
}

// ---------------------------------------------------------------------------
// Cyclotomic fields
// ---------------------------------------------------------------------------

fn poly_trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Exact division of integer polynomials with monic divisor (low degree first).
fn poly_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let ql = rem.len() + 1 - dl;
    let mut quot = vec![BigInt::zero(); ql];
    for k in (0..ql).rev() {
        let c = rem[k + dl - 1].clone();
        if !c.is_zero() {
            for (j, d) in den.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// The `n`-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_monic(&p, &cyclotomic_polynomial(d));
        }
    }
    poly_trim(&mut p);
    p
}

/// The field `Q(zeta_N)`, presented as `Q[x] / Phi_N(x)` with `x = zeta_N = exp(2 pi i / N)`.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    conductor: u32,
    modulus: Vec<BigRational>,
}

impl CycloField {
    pub fn new(conductor: u32) -> Result<Arc<Self>> {
        if conductor == 0 || conductor > MAX_CONDUCTOR {
            return Err(Error::ConductorOverflow { conductor, bound: MAX_CONDUCTOR });
        }
        let modulus = cyclotomic_polynomial(conductor)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        Ok(Arc::new(Self { conductor, modulus }))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `phi(N)`, the degree of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

/// Convenience accessors on a shared field handle.
pub trait CycloFieldExt {
    fn zero(&self) -> CycloNumber;
    fn one(&self) -> CycloNumber;
    fn from_int(&self, c: i64) -> CycloNumber;
    fn from_rational(&self, c: BigRational) -> CycloNumber;
    /// `zeta_N^k` for any integer `k`.
    fn zeta_pow(&self, k: i64) -> CycloNumber;
}

impl CycloFieldExt for Arc<CycloField> {
    fn zero(&self) -> CycloNumber {
        CycloNumber { field: self.clone(), coeffs: vec![BigRational::zero(); self.degree()] }
    }

    fn one(&self) -> CycloNumber {
        self.from_int(1)
    }

    fn from_int(&self, c: i64) -> CycloNumber {
        self.from_rational(BigRational::from_integer(BigInt::from(c)))
    }

    fn from_rational(&self, c: BigRational) -> CycloNumber {
        let mut z = self.zero();
        z.coeffs[0] = c;
        z
    }

    fn zeta_pow(&self, k: i64) -> CycloNumber {
        let k = k.rem_euclid(self.conductor as i64) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        CycloNumber::reduce(self.clone(), raw)
    }
}

/// An element of `Q(zeta_N)`: a polynomial of degree `< phi(N)` in `zeta_N`.
#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    coeffs: Vec<BigRational>,
}

impl CycloNumber {
    fn reduce(field: Arc<CycloField>, mut raw: Vec<BigRational>) -> Self {
        let d = field.degree();
        // Reduce modulo the monic modulus from the top down.
        while raw.len() > d {
            let top = raw.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let off = raw.len() - d;
            for (j, m) in field.modulus[..d].iter().enumerate() {
                raw[off + j] -= &top * m;
            }
        }
        raw.resize(d, BigRational::zero());
        Self { field, coeffs: raw }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.field.one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // Invariant: s_i * self = r_i (mod modulus).
        let mut r0: Vec<BigRational> = self.field.modulus.clone();
        let mut r1 = self.coeffs.clone();
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        trim_q(&mut r1);
        while !r1.is_empty() {
            let (q, r) = divmod_q(&r0, &r1);
            let s2 = sub_q(&s0, &mul_q(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is the gcd, a nonzero constant since the modulus is irreducible.
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].recip();
        let s: Vec<BigRational> = s0.into_iter().map(|x| x * &c).collect();
        Some(Self::reduce(self.field.clone(), s))
    }

    /// Complex conjugate, i.e. the Galois automorphism `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.field.conductor as i64;
        let mut acc = self.field.zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(&self.field.zeta_pow(n - k as i64) * &self.field.from_rational(c.clone()));
            }
        }
        acc
    }

    fn check_field(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field.conductor == other.field.conductor,
            "cyclotomic numbers from different fields"
        );
    }
}

fn trim_q(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn sub_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(k).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim_q(&mut out);
    out
}

fn mul_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_q(&mut out);
    out
}

fn divmod_q(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim_q(&mut rem);
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let lead = b.last().unwrap();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let k = rem.len() - b.len();
        let c = rem.last().unwrap() / lead;
        for (j, y) in b.iter().enumerate() {
            rem[k + j] -= &c * y;
        }
        quot[k] = c;
        rem.pop();
        trim_q(&mut rem);
    }
    (quot, rem)
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let zeta = format!("z{}", self.field.conductor);
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        write!(f, "{zeta}")?;
                    } else {
                        write!(f, "{zeta}^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_field(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        CycloNumber { field: self.field.clone(), coeffs }
    }
}

impl Sub for &CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_field(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        CycloNumber { field: self.field.clone(), coeffs }
    }
}

impl Mul for &CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_field(rhs);
        let d = self.coeffs.len();
        let mut raw = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        CycloNumber::reduce(self.field.clone(), raw)
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

forward_owned!(Add, add, CycloNumber);
forward_owned!(Sub, sub, CycloNumber);
forward_owned!(Mul, mul, CycloNumber);

/// An assignment `v -> zeta_N^k` used to specialize Laurent polynomials.
#[derive(Clone, Debug)]
pub struct Specialization {
    field: Arc<CycloField>,
    exponent: i64,
}

impl Specialization {
    pub fn new(conductor: u32, exponent: i64) -> Result<Self> {
        Ok(Self { field: CycloField::new(conductor)?, exponent })
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// The image of `v`.
    pub fn image_of_v(&self) -> CycloNumber {
        self.field.zeta_pow(self.exponent)
    }

    pub fn apply(&self, p: &LaurentPoly) -> CycloNumber {
        let mut acc = self.field.zero();
        for (e, c) in p.terms() {
            let t = &self.field.zeta_pow(self.exponent * e as i64) * &self.field.from_int(c);
            acc = &acc + &t;
        }
        acc
    }
}

/// Evaluation homomorphism `Z[v, v^{-1}] -> Q(zeta_N)`.
pub fn specialize(p: &LaurentPoly, target: &Specialization) -> CycloNumber {
    target.apply(p)
}
