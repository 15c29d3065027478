//! Elements of cyclotomic fields `Q(zeta_N)`, stored as canonical
//! representatives of `Q[x] / (Phi_N(x))` in the power basis.
//!
//! Rational values are always stored with conductor 1, so a rational computed
//! in `Q(zeta_4)` compares equal to the same rational built directly. Binary
//! operators on mismatched conductors embed both sides into the lcm
//! conductor; [`Cyclotomic::checked_mul`] is the strict variant.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ArithmeticError, Rational};

/// Returns the integer coefficients of `Phi_n`, lowest degree first.
///
/// Computed by dividing `x^n - 1` by every `Phi_d` with `d | n`, `d < n`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Exact division by a monic polynomial; panics on a nonzero remainder.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// Precomputed data for one conductor.
#[derive(Debug)]
struct FieldData {
    phi: usize,
    /// `powers[k]` = coefficients of `x^k mod Phi_N` for `0 <= k < max(N, 2*phi - 1)`.
    powers: Vec<Vec<i64>>,
}

impl FieldData {
    fn build(n: u32) -> Self {
        let phi_poly: Vec<i64> = cyclotomic_polynomial(n)
            .iter()
            .map(|c| c.to_i64().expect("cyclotomic coefficient exceeds i64"))
            .collect();
        let phi = phi_poly.len() - 1;
        let count = (n as usize).max(2 * phi);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i64; phi];
        if phi > 0 {
            cur[0] = 1;
        }
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x and reduce with x^phi = -sum phi_poly[j] x^j
            let top = cur[phi - 1];
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..phi {
                    cur[j] = cur[j]
                        .checked_sub(top.checked_mul(phi_poly[j]).expect("overflow in field table"))
                        .expect("overflow in field table");
                }
            }
        }
        FieldData { phi, powers }
    }
}

fn field(n: u32) -> Arc<FieldData> {
    static FIELDS: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    let cache = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = cache.read().expect("field cache poisoned").get(&n) {
        return f.clone();
    }
    let built = Arc::new(FieldData::build(n));
    cache
        .write()
        .expect("field cache poisoned")
        .entry(n)
        .or_insert(built)
        .clone()
}

/// An exact element of `Q(zeta_N)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let f = field(n);
        let coeffs = f.powers[e].iter().map(|&c| Rational::from_int(c)).collect();
        Cyclotomic { conductor: n, coeffs }.demote()
    }

    pub fn zeta(n: u32) -> Self {
        Self::root_of_unity(n, 1)
    }

    /// Builds an element from canonical coefficients (length `phi(N)`).
    pub fn new(conductor: u32, coeffs: Vec<Rational>) -> Result<Self, ArithmeticError> {
        if conductor == 0 {
            return Err(ArithmeticError::BadConductor(0));
        }
        let phi = euler_phi(conductor) as usize;
        if coeffs.len() != phi {
            return Err(ArithmeticError::CoefficientLength {
                conductor,
                expected: phi,
                found: coeffs.len(),
            });
        }
        Ok(Cyclotomic { conductor, coeffs }.demote())
    }

    /// Reduces an arbitrary polynomial in `zeta_N` (lowest degree first) to
    /// canonical form.
    pub fn normalize(conductor: u32, raw: &[Rational]) -> Self {
        let f = field(conductor);
        let mut out = vec![Rational::zero(); f.phi];
        for (k, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = power_row(&f, conductor, k);
            for (o, &p) in out.iter_mut().zip(row.iter()) {
                if p != 0 {
                    *o = &*o + &(c * &Rational::from_int(p));
                }
            }
        }
        Cyclotomic {
            conductor,
            coeffs: out,
        }
        .demote()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Canonical coefficients in this element's own conductor.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.conductor == 1).then(|| &self.coeffs[0])
    }

    /// The value as an `i64` when it is a rational integer.
    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational().and_then(|q| q.to_i64())
    }

    fn demote(mut self) -> Self {
        if self.conductor != 1 && self.coeffs[1..].iter().all(|c| c.is_zero()) {
            self.coeffs.truncate(1);
            self.conductor = 1;
        }
        self
    }

    /// Canonical coefficients after embedding into `Q(zeta_n)`, where the
    /// conductor must divide `n`.
    pub fn embed(&self, n: u32) -> Result<Vec<Rational>, ArithmeticError> {
        if n == 0 || !n.is_multiple_of(self.conductor) {
            return Err(ArithmeticError::ConductorMismatch(self.conductor, n));
        }
        if n == self.conductor {
            return Ok(self.coeffs.clone());
        }
        let scale = (n / self.conductor) as usize;
        let mut raw = vec![Rational::zero(); (self.coeffs.len() - 1) * scale + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[k * scale] = c.clone();
        }
        let f = field(n);
        let mut out = vec![Rational::zero(); f.phi];
        for (k, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(power_row(&f, n, k).iter()) {
                if p != 0 {
                    *o = &*o + &(c * &Rational::from_int(p));
                }
            }
        }
        Ok(out)
    }

    fn lift(&self, n: u32) -> Cyclotomic {
        Cyclotomic {
            conductor: n,
            coeffs: self.embed(n).expect("lift into a multiple conductor"),
        }
    }

    fn common(a: &Self, b: &Self) -> u32 {
        if a.conductor == b.conductor || b.conductor == 1 {
            a.conductor
        } else if a.conductor == 1 {
            b.conductor
        } else {
            a.conductor.lcm(&b.conductor)
        }
    }

    /// Product that refuses to embed: both operands must share a conductor.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithmeticError> {
        if self.conductor != other.conductor {
            return Err(ArithmeticError::ConductorMismatch(self.conductor, other.conductor));
        }
        Ok(self * other)
    }

    /// Image under the Galois automorphism `zeta_N -> zeta_N^k`, `gcd(k, N) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        if self.conductor == 1 {
            return self.clone();
        }
        let n = self.conductor;
        let f = field(n);
        let mut out = vec![Rational::zero(); f.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ((j as i64) * k).rem_euclid(n as i64) as usize;
            for (o, &p) in out.iter_mut().zip(f.powers[e].iter()) {
                if p != 0 {
                    *o = &*o + &(c * &Rational::from_int(p));
                }
            }
        }
        Cyclotomic {
            conductor: n,
            coeffs: out,
        }
        .demote()
    }

    /// Complex conjugation, `zeta_N -> zeta_N^{-1}`.
    pub fn conjugate(&self) -> Self {
        self.galois(-1)
    }

    /// Multiplicative inverse via the product of the nontrivial Galois
    /// conjugates divided by the (rational) norm.
    pub fn inverse(&self) -> Result<Self, ArithmeticError> {
        if self.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Cyclotomic::from_rational(q.recip()?));
        }
        let n = self.conductor as i64;
        let mut others = Cyclotomic::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                others = &others * &self.galois(k);
            }
        }
        let norm = self * &others;
        let q = norm
            .as_rational()
            .expect("field norm must be rational")
            .recip()?;
        Ok(&others * &Cyclotomic::from_rational(q))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Cyclotomic::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

fn power_row(f: &FieldData, n: u32, k: usize) -> Vec<i64> {
    if k < f.powers.len() {
        f.powers[k].clone()
    } else {
        // x^n = 1 in the field
        f.powers[k % n as usize].clone()
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Cyclotomic::zero()
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Cyclotomic::from_rational(q)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_int(n)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        let n = Cyclotomic::common(self, rhs);
        if self.conductor == n && rhs.conductor == n {
            let coeffs = self
                .coeffs
                .iter()
                .zip(rhs.coeffs.iter())
                .map(|(a, b)| a + b)
                .collect();
            return Cyclotomic { conductor: n, coeffs }.demote();
        }
        if rhs.conductor == 1 && self.conductor == n {
            let mut out = self.clone();
            out.coeffs[0] = &out.coeffs[0] + &rhs.coeffs[0];
            return out.demote();
        }
        if self.conductor == 1 && rhs.conductor == n {
            return rhs + self;
        }
        &self.lift(n) + &rhs.lift(n)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero();
        }
        if let Some(q) = rhs.as_rational() {
            return Cyclotomic {
                conductor: self.conductor,
                coeffs: self.coeffs.iter().map(|c| c * q).collect(),
            }
            .demote();
        }
        if self.conductor == 1 {
            return rhs * self;
        }
        let n = Cyclotomic::common(self, rhs);
        if self.conductor != n || rhs.conductor != n {
            return &self.lift(n) * &rhs.lift(n);
        }
        let f = field(n);
        let phi = f.phi;
        let mut prod = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] = &prod[i + j] + &(a * b);
                }
            }
        }
        let mut out: Vec<Rational> = prod[..phi].to_vec();
        for (k, c) in prod.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(f.powers[k].iter()) {
                if p != 0 {
                    *o = &*o + &(c * &Rational::from_int(p));
                }
            }
        }
        Cyclotomic {
            conductor: n,
            coeffs: out,
        }
        .demote()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Cyclotomic {
    /// Human-readable form, e.g. `1/2 - 3*z12^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let z = match k {
                0 => String::new(),
                1 => format!("z{}", self.conductor),
                _ => format!("z{}^{}", self.conductor, k),
            };
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{z}")?,
                _ => write!(f, "{mag}*{z}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Literal form used in scenario and report files.
#[derive(Serialize, Deserialize)]
struct Literal {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Literal {
            conductor: self.conductor,
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Either {
            Lit(Literal),
            Plain(Rational),
        }
        match Either::deserialize(d)? {
            Either::Lit(l) => Cyclotomic::new(l.conductor, l.coeffs).map_err(serde::de::Error::custom),
            Either::Plain(q) => Ok(Cyclotomic::from_rational(q)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn divisor_product_is_x_n_minus_one() {
        for n in [1u32, 2, 3, 4, 6, 8, 12, 15, 30] {
            let mut prod = ints(&[1]);
            for d in 1..=n {
                if n % d == 0 {
                    prod = poly_mul(&prod, &cyclotomic_polynomial(d));
                }
            }
            let mut expect = vec![BigInt::zero(); n as usize + 1];
            expect[0] = BigInt::from(-1);
            expect[n as usize] = BigInt::one();
            assert_eq!(prod, expect, "n = {n}");
        }
    }

    #[test]
    fn gaussian_products() {
        let i = Cyclotomic::zeta(4);
        assert_eq!(&i * &i, Cyclotomic::from_int(-1));
        let one4 = Cyclotomic::normalize(4, &[q(1)]);
        assert_eq!(i.checked_mul(&i).unwrap(), Cyclotomic::from_int(-1));
        assert_eq!(&i * &one4, i);
    }

    #[test]
    fn zeta12_squared_squared() {
        let z2 = Cyclotomic::root_of_unity(12, 2);
        let prod = &z2 * &z2;
        // x^4 = x^2 - 1 mod x^4 - x^2 + 1
        assert_eq!(prod.coeffs(), &[q(-1), q(0), q(1), q(0)]);
        assert_eq!(prod, Cyclotomic::root_of_unity(12, 4));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(Cyclotomic::normalize(4, &[q(0), q(0), q(1)]), Cyclotomic::from_int(-1));
        assert!(Cyclotomic::normalize(4, &[]).is_zero());
        assert!(Cyclotomic::normalize(4, &[q(0), q(1), q(0), q(1)]).is_zero());
    }

    #[test]
    fn conjugation_examples() {
        let i = Cyclotomic::zeta(4);
        assert_eq!(i.conjugate(), -&i);
        let half = Cyclotomic::from_rational(Rational::new(3, 2).unwrap());
        assert_eq!(half.conjugate(), half);
        let z = Cyclotomic::zeta(12);
        assert_eq!(z.conjugate(), Cyclotomic::root_of_unity(12, 11));
        // zeta_12^11 = -x^3 + x in the power basis
        assert_eq!(z.conjugate().coeffs(), &[q(0), q(1), q(0), q(-1)]);
    }

    #[test]
    fn zeta_n_to_the_n_is_one() {
        for n in [3u32, 4, 5, 6, 12] {
            assert!(Cyclotomic::zeta(n).pow(n).is_one(), "n = {n}");
        }
    }

    #[test]
    fn phi_vanishes_at_zeta() {
        for n in [3u32, 4, 8, 12] {
            let z = Cyclotomic::zeta(n);
            let mut acc = Cyclotomic::zero();
            for (k, c) in cyclotomic_polynomial(n).iter().enumerate() {
                let c = Cyclotomic::from_rational(Rational::from_bigint(c.clone()));
                acc = &acc + &(&c * &z.pow(k as u32));
            }
            assert!(acc.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn mixed_conductors_embed() {
        let i = Cyclotomic::zeta(4);
        let w = Cyclotomic::zeta(3);
        let p = &i * &w;
        assert_eq!(p.conductor(), 12);
        // i * w = zeta12^3 * zeta12^4
        assert_eq!(p, Cyclotomic::root_of_unity(12, 7));
        assert!(i.checked_mul(&w).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = &Cyclotomic::from_int(2) + &Cyclotomic::root_of_unity(12, 5);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
        assert!(Cyclotomic::zero().inverse().is_err());
    }

    #[test]
    fn literal_roundtrip() {
        let a = &Cyclotomic::from_rational(Rational::new(1, 2).unwrap()) + &Cyclotomic::zeta(4);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"conductor":4,"coeffs":["1/2","1"]}"#);
        let back: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<Cyclotomic>(r#"{"conductor":4,"coeffs":["1"]}"#).is_err());
    }

    #[test]
    fn display() {
        let a = &Cyclotomic::from_int(1) - &(&Cyclotomic::from_int(3) * &Cyclotomic::root_of_unity(12, 2));
        assert_eq!(a.to_string(), "1 - 3*z12^2");
        assert_eq!(Cyclotomic::zeta(4).to_string(), "z4");
    }
}
