//! Dense univariate polynomials over a finite field.

use std::fmt;

use rand::Rng;

use super::field::{Field, Fq};
use crate::error::{Error, Result};

/// A polynomial `c_0 + c_1 x + ...` with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct DensePoly {
    field: Field,
    coeffs: Vec<Fq>,
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::parse::format_poly(self, "x"))
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::parse::format_poly(self, "x"))
    }
}

impl DensePoly {
    pub fn new(field: &Field, mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly { field: field.clone(), coeffs }
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        DensePoly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        DensePoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        DensePoly::constant(field, Fq::ONE)
    }

    pub fn constant(field: &Field, c: Fq) -> Self {
        DensePoly::new(field, vec![c])
    }

    /// `c x^k`.
    pub fn monomial(field: &Field, c: Fq, k: usize) -> Self {
        let mut coeffs = vec![Fq::ZERO; k + 1];
        coeffs[k] = c;
        DensePoly::new(field, coeffs)
    }

    pub fn x(field: &Field) -> Self {
        DensePoly::monomial(field, Fq::ONE, 1)
    }

    /// `x - c`.
    pub fn linear_root(field: &Field, c: Fq) -> Self {
        DensePoly::new(field, vec![field.neg(c), Fq::ONE])
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, max_deg: usize, rng: &mut R) -> Self {
        let coeffs = (0..=max_deg).map(|_| field.random(rng)).collect();
        DensePoly::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Fq> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fq::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn lead(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn constant_term(&self) -> Fq {
        self.coeff(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        DensePoly::new(f, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        DensePoly::new(f, coeffs)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        DensePoly { field: f.clone(), coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return DensePoly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Fq::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        if f.degree() == 1 {
            // prime field: accumulate in u64 and reduce lazily
            let p = f.p() as u64;
            let mut acc = vec![0u64; out.len()];
            let limit = u64::MAX / 2;
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.coeffs.iter().enumerate() {
                    let slot = &mut acc[i + j];
                    *slot += a.0 * b.0;
                    if *slot > limit {
                        *slot %= p;
                    }
                }
            }
            for (o, a) in out.iter_mut().zip(acc) {
                *o = Fq(a % p);
            }
        } else {
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, &b) in other.coeffs.iter().enumerate() {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        DensePoly::new(f, out)
    }

    pub fn scale(&self, c: Fq) -> Self {
        let f = &self.field;
        DensePoly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Fq::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        DensePoly { field: self.field.clone(), coeffs }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = DensePoly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).expect("nonzero lead");
        self.scale(inv)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Fq::ONE
    }

    /// Quotient and remainder; `None` when dividing by zero.
    pub fn div_rem(&self, b: &Self) -> Option<(Self, Self)> {
        if b.is_zero() {
            return None;
        }
        let f = &self.field;
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Some((DensePoly::zero(f), self.clone()));
        }
        let inv = f.inv(b.lead()).expect("nonzero lead");
        let mut r = self.coeffs.clone();
        let mut q = vec![Fq::ZERO; r.len() - db];
        for i in (0..q.len()).rev() {
            let c = f.mul(r[i + db], inv);
            if c.is_zero() {
                continue;
            }
            q[i] = c;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                r[i + j] = f.sub(r[i + j], f.mul(c, bj));
            }
        }
        r.truncate(db);
        Some((DensePoly::new(f, q), DensePoly::new(f, r)))
    }

    pub fn rem(&self, b: &Self) -> Self {
        self.div_rem(b).expect("division by zero polynomial").1
    }

    pub fn div(&self, b: &Self) -> Self {
        self.div_rem(b).expect("division by zero polynomial").0
    }

    /// Exact quotient, or `None` when `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(b)?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).is_some_and(|(_, r)| r.is_zero())
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` the monic gcd.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (DensePoly::one(f), DensePoly::zero(f));
        let (mut t0, mut t1) = (DensePoly::zero(f), DensePoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).unwrap();
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lead()).unwrap();
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// Inverse modulo `m`, when it exists.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.xgcd(m);
        if g.is_one() {
            Some(s.rem(m))
        } else {
            None
        }
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut acc = DensePoly::one(&self.field).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.scale_int(c, i as i64))
            .collect();
        DensePoly::new(f, coeffs)
    }

    pub fn eval(&self, x: Fq) -> Fq {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Fq::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(DensePoly::zero(f), |acc, &c| acc.mul(g).add(&DensePoly::constant(f, c)))
    }

    /// `self(x^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Fq::ZERO; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        DensePoly { field: self.field.clone(), coeffs }
    }

    /// Inverse of [`inflate`](Self::inflate): `Some(g)` with `self = g(x^k)`.
    pub fn deflate(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().enumerate().any(|(i, c)| i % k != 0 && !c.is_zero()) {
            return None;
        }
        let coeffs = self.coeffs.iter().step_by(k).copied().collect();
        Some(DensePoly::new(&self.field, coeffs))
    }

    /// True when every exponent is divisible by `k`.
    pub fn in_power_subring(&self, k: usize) -> bool {
        self.deflate(k).is_some()
    }

    /// Components `f_j` with `self = Σ_{j<k} x^j f_j(x^k)`.
    pub fn split_by_residue(&self, k: usize) -> Vec<Self> {
        let f = &self.field;
        (0..k)
            .map(|j| {
                let coeffs = self.coeffs.iter().skip(j).step_by(k).copied().collect();
                DensePoly::new(f, coeffs)
            })
            .collect()
    }

    /// Applies the absolute Frobenius to every coefficient.
    pub fn frobenius_coeffs(&self) -> Self {
        let f = &self.field;
        DensePoly::new(f, self.coeffs.iter().map(|&c| f.frob(c)).collect())
    }

    /// The `p`-th power `f(x)^p = f^{(p)}(x^p)`.
    pub fn pth_power(&self) -> Self {
        self.frobenius_coeffs().inflate(self.field.p() as usize)
    }

    /// Reinterprets the polynomial over another (equal) field handle.
    pub fn with_field(&self, field: &Field) -> Self {
        DensePoly { field: field.clone(), coeffs: self.coeffs.clone() }
    }

    /// Maps coefficients through `phi` into another field.
    pub fn map_coeffs(&self, target: &Field, phi: impl Fn(Fq) -> Fq) -> Self {
        DensePoly::new(target, self.coeffs.iter().map(|&c| phi(c)).collect())
    }
}

/// Operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    DivMod,
    Gcd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyOutput {
    Single(DensePoly),
    Pair(DensePoly, DensePoly),
}

/// Checked polynomial arithmetic used at API boundaries.
pub fn poly_arith(a: &DensePoly, b: &DensePoly, op: PolyOp) -> Result<PolyOutput> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        PolyOp::Add => PolyOutput::Single(a.add(b)),
        PolyOp::Mul => PolyOutput::Single(a.mul(b)),
        PolyOp::Gcd => PolyOutput::Single(a.gcd(b)),
        PolyOp::DivMod => {
            let (q, r) = a.div_rem(b).ok_or(Error::DivisionByZero)?;
            PolyOutput::Pair(q, r)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(field: &Field, c: &[i64]) -> DensePoly {
        DensePoly::from_ints(field, c)
    }

    #[test]
    fn freshmans_dream_over_f2() {
        let f = Field::prime(2);
        let a = p(&f, &[1, 1]);
        let out = poly_arith(&a, &a, PolyOp::Mul).unwrap();
        assert_eq!(out, PolyOutput::Single(p(&f, &[1, 0, 1])));
    }

    #[test]
    fn gcd_is_monic() {
        let f = Field::prime(5);
        let out = poly_arith(&p(&f, &[-1, 0, 1]), &p(&f, &[-1, 1]), PolyOp::Gcd).unwrap();
        assert_eq!(out, PolyOutput::Single(p(&f, &[4, 1])));
        let out = poly_arith(&p(&f, &[2, 0, 2]), &p(&f, &[0, 3]), PolyOp::Gcd).unwrap();
        assert_eq!(out, PolyOutput::Single(p(&f, &[1])));
    }

    #[test]
    fn long_division_over_f3() {
        let f = Field::prime(3);
        let out = poly_arith(&p(&f, &[0, 0, 0, 1]), &p(&f, &[1, 0, 1]), PolyOp::DivMod).unwrap();
        assert_eq!(out, PolyOutput::Pair(p(&f, &[0, 1]), p(&f, &[0, 2])));
    }

    #[test]
    fn errors() {
        let f = Field::prime(3);
        let g = Field::prime(5);
        assert_eq!(
            poly_arith(&p(&f, &[1]), &DensePoly::zero(&f), PolyOp::DivMod),
            Err(Error::DivisionByZero)
        );
        assert_eq!(poly_arith(&p(&f, &[1]), &p(&g, &[1]), PolyOp::Add), Err(Error::FieldMismatch));
    }

    #[test]
    fn xgcd_bezout() {
        let f = Field::prime(7);
        let a = p(&f, &[1, 2, 3, 4]);
        let b = p(&f, &[5, 0, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert!(g.is_monic());
    }

    #[test]
    fn split_and_pth_power() {
        let f = Field::prime(3);
        let a = p(&f, &[1, 2, 0, 1, 1, 2, 2]);
        let parts = a.split_by_residue(3);
        let rebuilt = parts
            .iter()
            .enumerate()
            .fold(DensePoly::zero(&f), |acc, (j, fj)| acc.add(&fj.inflate(3).shift(j)));
        assert_eq!(rebuilt, a);
        assert_eq!(a.pow(3), a.pth_power());
    }
}
