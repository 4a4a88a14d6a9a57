//! Finite fields `F_q = F_p[t]/(m(t))`.
//!
//! Elements are packed base `p` into a `u64`: the element `c_0 + c_1 t + ...`
//! is stored as `c_0 + c_1 p + c_2 p^2 + ...`. Prime fields therefore store
//! their residues directly. Small extension fields get log/antilog tables.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};

/// Largest characteristic accepted from user input.
pub const MAX_P: u32 = 31;
/// Largest extension degree accepted from user input.
pub const MAX_SPEC_DEGREE: usize = 4;

const MAX_DIGITS: usize = 64;
const TABLE_LIMIT: u64 = 1 << 16;

/// User-facing description of a base field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    /// Monic irreducible modulus in `t`, coefficients ascending (last = 1).
    pub ext_modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        let spec = FieldSpec { p, ext_modulus: None };
        spec.validate()?;
        Ok(spec)
    }

    pub fn extension(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let spec = FieldSpec { p, ext_modulus: Some(modulus) };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p as u64) {
            return Err(Error::InvalidField(format!("p = {} is not prime", self.p)));
        }
        if self.p > MAX_P {
            return Err(Error::InvalidField(format!("p = {} exceeds the cap {}", self.p, MAX_P)));
        }
        if let Some(m) = &self.ext_modulus {
            let deg = m.len().saturating_sub(1);
            if m.len() < 2 || m[deg] != 1 {
                return Err(Error::InvalidField("extension modulus must be monic of degree >= 1".into()));
            }
            if deg > MAX_SPEC_DEGREE {
                return Err(Error::InvalidField(format!(
                    "extension degree {deg} exceeds the cap {MAX_SPEC_DEGREE}"
                )));
            }
            if m.iter().any(|&c| c >= self.p) {
                return Err(Error::InvalidField("modulus coefficient out of range".into()));
            }
            if !is_irreducible_trial(self.p, m) {
                return Err(Error::InvalidField("extension modulus is reducible".into()));
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.ext_modulus.as_ref().map_or(1, |m| m.len() - 1)
    }
}

/// An element of a finite field, packed base `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fq(pub u64);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct FieldData {
    p: u32,
    degree: usize,
    /// Monic modulus, ascending; `[0, 1]` for a prime field.
    modulus: Vec<u32>,
    order: u64,
    pow_p: Vec<u64>,
    inv_p: Vec<u32>,
    tables: Option<Tables>,
}

/// A finite field context. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.degree == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.degree, self.0.modulus)
        }
    }
}

impl Field {
    pub fn new(spec: &FieldSpec) -> Result<Field> {
        spec.validate()?;
        match &spec.ext_modulus {
            None => Ok(Field::build(spec.p, vec![0, 1])),
            Some(m) => Ok(Field::build(spec.p, m.clone())),
        }
    }

    /// The prime field `F_p`. Panics if `p` is not a prime.
    pub fn prime(p: u32) -> Field {
        assert!(is_prime(p as u64), "{p} is not prime");
        Field::build(p, vec![0, 1])
    }

    /// Builds `F_p[t]/(modulus)` without the user-facing caps. The modulus must
    /// be monic irreducible; only the size of the packed representation is checked.
    pub(crate) fn from_modulus(p: u32, modulus: Vec<u32>) -> Result<Field> {
        let deg = modulus.len() - 1;
        if checked_pow(p as u64, deg as u32).is_none() || deg >= MAX_DIGITS {
            return Err(Error::FieldTooLarge { p, degree: deg });
        }
        Ok(Field::build(p, modulus))
    }

    fn build(p: u32, modulus: Vec<u32>) -> Field {
        let degree = modulus.len() - 1;
        let order = (p as u64).pow(degree as u32);
        let pow_p: Vec<u64> = (0..=degree).map(|i| (p as u64).pow(i as u32)).collect();
        let mut inv_p = vec![0u32; p as usize];
        for a in 1..p {
            inv_p[a as usize] = pow_mod(a as u64, (p - 2) as u64, p as u64) as u32;
        }
        let mut data = FieldData { p, degree, modulus, order, pow_p, inv_p, tables: None };
        if degree > 1 && order <= TABLE_LIMIT {
            data.tables = Some(build_tables(&data));
        }
        Field(Arc::new(data))
    }

    pub fn spec(&self) -> FieldSpec {
        if self.0.degree == 1 && self.0.modulus == [0, 1] {
            FieldSpec { p: self.0.p, ext_modulus: None }
        } else {
            FieldSpec { p: self.0.p, ext_modulus: Some(self.0.modulus.clone()) }
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    fn is_prime_field(&self) -> bool {
        self.0.degree == 1
    }

    pub fn zero(&self) -> Fq {
        Fq::ZERO
    }

    pub fn one(&self) -> Fq {
        Fq::ONE
    }

    pub fn from_int(&self, n: i64) -> Fq {
        let p = self.0.p as i64;
        Fq(n.rem_euclid(p) as u64)
    }

    /// The generator `t` of the extension (or `None` for a prime field).
    pub fn generator(&self) -> Option<Fq> {
        if self.is_prime_field() {
            None
        } else {
            Some(self.reduce_digits(&[0, 1]))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.0.order).map(Fq)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        Fq(rng.gen_range(0..self.0.order))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        Fq(rng.gen_range(1..self.0.order))
    }

    /// Base-`p` digits (the coefficients in `t`), length = degree.
    pub fn digits(&self, a: Fq) -> Vec<u32> {
        let mut out = vec![0u32; self.0.degree];
        let mut v = a.0;
        let p = self.0.p as u64;
        for d in out.iter_mut() {
            *d = (v % p) as u32;
            v /= p;
        }
        out
    }

    /// Reduces a `t`-polynomial (ascending, any length) into the field.
    pub fn reduce_digits(&self, digits: &[u32]) -> Fq {
        let p = self.0.p;
        let mut buf: Vec<u32> = digits.iter().map(|&d| d % p).collect();
        self.reduce_in_place(&mut buf);
        self.pack(&buf)
    }

    fn pack(&self, digits: &[u32]) -> Fq {
        let mut v = 0u64;
        for (i, &d) in digits.iter().enumerate().take(self.0.degree) {
            v += d as u64 * self.0.pow_p[i];
        }
        Fq(v)
    }

    fn reduce_in_place(&self, buf: &mut Vec<u32>) {
        let d = self.0.degree;
        let p = self.0.p;
        let m = &self.0.modulus;
        while buf.len() > d {
            let top = buf.pop().unwrap();
            if top != 0 {
                let shift = buf.len() - d;
                for i in 0..d {
                    let sub = (top as u64 * m[i] as u64 % p as u64) as u32;
                    buf[shift + i] = (buf[shift + i] + p - sub) % p;
                }
            }
        }
    }

    fn unpack(&self, a: Fq, out: &mut [u32; MAX_DIGITS]) {
        let p = self.0.p as u64;
        let mut v = a.0;
        for d in out.iter_mut().take(self.0.degree) {
            *d = (v % p) as u32;
            v /= p;
        }
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let p = self.0.p as u64;
        if self.is_prime_field() {
            let s = a.0 + b.0;
            return Fq(if s >= p { s - p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        for i in 0..self.0.degree {
            let s = (x % p + y % p) % p;
            out += s * self.0.pow_p[i];
            x /= p;
            y /= p;
        }
        Fq(out)
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        let p = self.0.p as u64;
        if self.is_prime_field() {
            return Fq(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0u64;
        for i in 0..self.0.degree {
            let d = x % p;
            out += ((p - d) % p) * self.0.pow_p[i];
            x /= p;
        }
        Fq(out)
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        if self.is_prime_field() {
            let p = self.0.p as u64;
            return Fq(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + p - b.0 });
        }
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if self.is_prime_field() {
            return Fq(a.0 * b.0 % self.0.p as u64);
        }
        if a.is_zero() || b.is_zero() {
            return Fq::ZERO;
        }
        if let Some(t) = &self.0.tables {
            let n = self.0.order - 1;
            let e = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % n;
            return Fq(t.exp[e as usize] as u64);
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: Fq, b: Fq) -> Fq {
        let d = self.0.degree;
        let p = self.0.p as u64;
        let mut x = [0u32; MAX_DIGITS];
        let mut y = [0u32; MAX_DIGITS];
        self.unpack(a, &mut x);
        self.unpack(b, &mut y);
        let mut prod = vec![0u64; 2 * d - 1];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] += x[i] as u64 * y[j] as u64;
            }
        }
        let mut buf: Vec<u32> = prod.iter().map(|&c| (c % p) as u32).collect();
        self.reduce_in_place(&mut buf);
        self.pack(&buf)
    }

    pub fn scale_int(&self, a: Fq, n: i64) -> Fq {
        self.mul(a, self.from_int(n))
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Absolute Frobenius `a -> a^p`.
    pub fn frob(&self, a: Fq) -> Fq {
        if self.is_prime_field() {
            a
        } else {
            self.pow(a, self.0.p as u64)
        }
    }

    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.is_zero() {
            return None;
        }
        if self.is_prime_field() {
            return Some(Fq(self.0.inv_p[a.0 as usize] as u64));
        }
        if let Some(t) = &self.0.tables {
            let n = self.0.order - 1;
            let e = (n - t.log[a.0 as usize] as u64) % n;
            return Some(Fq(t.exp[e as usize] as u64));
        }
        Some(self.pow(a, self.0.order - 2))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Option<Fq> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// Image of an element of the prime subfield as an integer, if it lies there.
    pub fn as_prime_int(&self, a: Fq) -> Option<u32> {
        if a.0 < self.0.p as u64 {
            Some(a.0 as u32)
        } else {
            None
        }
    }
}

fn build_tables(data: &FieldData) -> Tables {
    // Local field handle without tables for the search.
    let tmp = Field(Arc::new(FieldData {
        p: data.p,
        degree: data.degree,
        modulus: data.modulus.clone(),
        order: data.order,
        pow_p: data.pow_p.clone(),
        inv_p: data.inv_p.clone(),
        tables: None,
    }));
    let n = data.order - 1;
    let factors = prime_factors(n);
    let gen = (2..data.order)
        .map(Fq)
        .find(|&g| factors.iter().all(|&l| tmp.pow(g, n / l) != Fq::ONE))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; n as usize];
    let mut log = vec![0u32; data.order as usize];
    let mut cur = Fq::ONE;
    for i in 0..n {
        exp[i as usize] = cur.0 as u32;
        log[cur.0 as usize] = i as u32;
        cur = tmp.mul_slow(cur, gen);
    }
    Tables { exp, log }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % m;
        }
        a = a * a % m;
        e >>= 1;
    }
    acc
}

fn checked_pow(b: u64, e: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(b)?;
    }
    // keep one spare bit so sums of two packed values never overflow
    if acc > (1u64 << 62) {
        None
    } else {
        Some(acc)
    }
}

/// Irreducibility of a monic polynomial over `F_p` by trial division with
/// every monic polynomial of degree at most half the degree.
pub(crate) fn is_irreducible_trial(p: u32, modulus: &[u32]) -> bool {
    let n = modulus.len() - 1;
    if n <= 1 {
        return n == 1;
    }
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                div.push((v % p as u64) as u32);
                v /= p as u64;
            }
            div.push(1);
            if prime_poly_rem(p, modulus, &div).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `a` by the monic `b` over `F_p` (plain vectors, ascending).
pub(crate) fn prime_poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let top = r.pop().unwrap();
        if top != 0 {
            let shift = r.len() - db;
            for i in 0..db {
                let sub = (top as u64 * b[i] as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let spec = FieldSpec::extension(2, vec![1, 1, 1]).unwrap();
        let f = Field::new(&spec).unwrap();
        let t = f.generator().unwrap();
        // t^2 = t + 1
        assert_eq!(f.mul(t, t), f.add(t, f.one()));
        assert_eq!(f.pow(t, 3), f.one());
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(FieldSpec::prime(9).is_err());
        assert!(FieldSpec::prime(37).is_err());
        // t^2 + 1 = (t + 1)^2 over F_2
        assert!(FieldSpec::extension(2, vec![1, 0, 1]).is_err());
        // t^2 + 1 is irreducible over F_3
        assert!(FieldSpec::extension(3, vec![1, 0, 1]).is_ok());
    }

    #[test]
    fn slow_and_table_multiplication_agree() {
        let f = Field::new(&FieldSpec::extension(3, vec![1, 2, 0, 1]).unwrap()).unwrap();
        for a in f.elements() {
            for b in f.elements().step_by(5) {
                assert_eq!(f.mul(a, b), f.mul_slow(a, b));
            }
        }
    }

    #[test]
    fn field_axioms_f9() {
        let f = Field::new(&FieldSpec::extension(3, vec![1, 0, 1]).unwrap()).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.sub(f.add(a, b), b), a);
                for c in f.elements() {
                    let lhs = f.mul(a, f.add(b, c));
                    let rhs = f.add(f.mul(a, b), f.mul(a, c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
