//! Polynomials in `λ` with coefficients in `k[x]`, resultants and
//! discriminants.

use std::fmt;

use super::field::{Field, Fq};
use super::matrix::{Matrix, PolyMatrix};
use super::poly::DensePoly;
use super::ring::{PolyRing, Ring};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    /// Ascending in `λ`; no trailing zero coefficient.
    coeffs: Vec<DensePoly>,
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format("x", "λ"))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format("x", "λ"))
    }
}

impl BiPoly {
    pub fn new(field: &Field, mut coeffs: Vec<DensePoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Self {
        BiPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        BiPoly::constant(&DensePoly::one(field))
    }

    pub fn constant(c: &DensePoly) -> Self {
        BiPoly::new(c.field(), vec![c.clone()])
    }

    /// `λ`.
    pub fn lambda(field: &Field) -> Self {
        BiPoly::new(field, vec![DensePoly::zero(field), DensePoly::one(field)])
    }

    /// A polynomial in `λ` with constant coefficients.
    pub fn from_field_coeffs(field: &Field, c: &[Fq]) -> Self {
        BiPoly::new(field, c.iter().map(|&a| DensePoly::constant(field, a)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[DensePoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> DensePoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| DensePoly::zero(&self.field))
    }

    pub fn lead(&self) -> DensePoly {
        self.coeff(self.coeffs.len().saturating_sub(1))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Largest `x`-degree among the coefficients.
    pub fn x_degree(&self) -> i64 {
        self.coeffs.iter().map(|c| c.deg_i()).max().unwrap_or(-1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        BiPoly::new(&self.field, (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        BiPoly::new(&self.field, (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        BiPoly::new(&self.field, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let mut out = vec![DensePoly::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BiPoly::new(&self.field, out)
    }

    pub fn scale(&self, c: &DensePoly) -> Self {
        BiPoly::new(&self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, e: u64) -> Self {
        BiPolyRing::new(&self.field).pow(self, e)
    }

    /// Remainder modulo a polynomial that is monic in `λ`.
    pub fn rem_monic(&self, m: &Self) -> Self {
        assert!(m.is_monic(), "modulus must be monic in λ");
        let d = m.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        while r.len() > d {
            let top = r.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = r.len() - d;
            for i in 0..d {
                r[shift + i] = r[shift + i].sub(&top.mul(&m.coeffs[i]));
            }
        }
        BiPoly::new(&self.field, r)
    }

    pub fn derivative_lambda(&self) -> Self {
        let f = &self.field;
        BiPoly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(f.from_int(i as i64)))
                .collect(),
        )
    }

    /// Substitutes `λ ↦ M` (a square matrix over `k[x]`).
    pub fn eval_matrix(&self, m: &PolyMatrix) -> PolyMatrix {
        m.eval_poly_in(&PolyRing::new(&self.field), &self.coeffs)
    }

    /// Specializes `x ↦ c`, giving a polynomial in `λ` over the field.
    pub fn eval_x(&self, c: Fq) -> DensePoly {
        DensePoly::new(&self.field, self.coeffs.iter().map(|a| a.eval(c)).collect())
    }

    /// Applies `g(x) ↦ g(x^k)` to every coefficient.
    pub fn inflate_x(&self, k: usize) -> Self {
        BiPoly::new(&self.field, self.coeffs.iter().map(|c| c.inflate(k)).collect())
    }

    /// Inverse of [`inflate_x`](Self::inflate_x) when every coefficient lies in `k[x^k]`.
    pub fn deflate_x(&self, k: usize) -> Option<Self> {
        let coeffs: Option<Vec<_>> = self.coeffs.iter().map(|c| c.deflate(k)).collect();
        coeffs.map(|c| BiPoly::new(&self.field, c))
    }

    /// The coefficients `a_1, ..., a_r` of a monic `λ^r + a_1 λ^{r-1} + ... + a_r`.
    pub fn hitchin_coeffs(&self) -> Vec<DensePoly> {
        let r = self.coeffs.len().saturating_sub(1);
        (1..=r).map(|i| self.coeff(r - i)).collect()
    }

    pub fn format(&self, x: &str, lambda: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = super::parse::format_poly(c, x);
            let mono = match i {
                0 => String::new(),
                1 => lambda.to_string(),
                _ => format!("{lambda}^{i}"),
            };
            let term = if i == 0 {
                cs
            } else if c.is_one() {
                mono
            } else if c.coeffs().iter().filter(|a| !a.is_zero()).count() == 1 {
                format!("{cs} {mono}")
            } else {
                format!("({cs}) {mono}")
            };
            terms.push(term);
        }
        terms.join(" + ")
    }
}

/// The ring `k[x][λ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPolyRing {
    pub field: Field,
}

impl BiPolyRing {
    pub fn new(field: &Field) -> Self {
        BiPolyRing { field: field.clone() }
    }
}

impl Ring for BiPolyRing {
    type Elem = BiPoly;

    fn zero(&self) -> BiPoly {
        BiPoly::zero(&self.field)
    }
    fn one(&self) -> BiPoly {
        BiPoly::one(&self.field)
    }
    fn is_zero(&self, a: &BiPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BiPoly, b: &BiPoly) -> BiPoly {
        a.add(b)
    }
    fn neg(&self, a: &BiPoly) -> BiPoly {
        a.neg()
    }
    fn sub(&self, a: &BiPoly, b: &BiPoly) -> BiPoly {
        a.sub(b)
    }
    fn mul(&self, a: &BiPoly, b: &BiPoly) -> BiPoly {
        a.mul(b)
    }
    fn from_int(&self, n: i64) -> BiPoly {
        BiPoly::constant(&DensePoly::constant(&self.field, self.field.from_int(n)))
    }
}

/// `Res_λ(f, g)` as a polynomial in `x`, via the Sylvester determinant.
pub fn resultant(f: &BiPoly, g: &BiPoly) -> Result<DensePoly> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch);
    }
    let field = f.field();
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        if f.is_zero() && g.is_zero() {
            return Err(Error::InvalidSpectral("resultant of two zero polynomials".into()));
        }
        return Ok(DensePoly::zero(field));
    };
    if m == 0 {
        return Ok(f.coeff(0).pow(n as u64));
    }
    if n == 0 {
        return Ok(g.coeff(0).pow(m as u64));
    }
    let size = m + n;
    let ring = PolyRing::new(field);
    let mut s = Matrix::zeros(&ring, size, size);
    // rows 0..n: shifts of f; rows n..n+m: shifts of g (descending powers)
    for r in 0..n {
        for (k, c) in f.coeffs.iter().rev().enumerate() {
            s.set(r, r + k, c.clone());
        }
    }
    for r in 0..m {
        for (k, c) in g.coeffs.iter().rev().enumerate() {
            s.set(n + r, r + k, c.clone());
        }
    }
    s.det_in(&ring)
}

/// `disc_λ(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f)` for `f` monic in `λ`.
pub fn discriminant(f: &BiPoly) -> Result<DensePoly> {
    if !f.is_monic() {
        return Err(Error::InvalidSpectral("discriminant needs a polynomial monic in λ".into()));
    }
    let n = f.degree().unwrap();
    if n == 0 {
        return Ok(DensePoly::one(f.field()));
    }
    let r = resultant(f, &f.derivative_lambda())?;
    let sign = if (n * (n - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    Ok(r.scale(f.field().from_int(sign)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(field: &Field, c: &[&[i64]]) -> BiPoly {
        BiPoly::new(field, c.iter().map(|a| DensePoly::from_ints(field, a)).collect())
    }

    #[test]
    fn resultant_examples() {
        let f = Field::prime(5);
        let a = bp(&f, &[&[0, -1], &[1]]);
        assert!(resultant(&a, &a).unwrap().is_zero());
        let a = bp(&f, &[&[], &[], &[1]]);
        let b = bp(&f, &[&[-1], &[1]]);
        assert!(resultant(&a, &b).unwrap().is_one());
    }

    #[test]
    fn resultant_is_product_over_roots() {
        // f = (λ - 1)(λ - 2), g = λ - x: Res = (1 - x)(2 - x) (f monic, deg g = 1)
        let f = Field::prime(7);
        let a = bp(&f, &[&[2], &[-3], &[1]]);
        let g = bp(&f, &[&[0, -1], &[1]]);
        let expect = DensePoly::from_ints(&f, &[1, -1]).mul(&DensePoly::from_ints(&f, &[2, -1]));
        assert_eq!(resultant(&a, &g).unwrap(), expect);
    }

    #[test]
    fn discriminant_of_quadratic() {
        // λ^2 - x has discriminant 4x
        let f = Field::prime(7);
        let a = bp(&f, &[&[0, -1], &[], &[1]]);
        assert_eq!(discriminant(&a).unwrap(), DensePoly::from_ints(&f, &[0, 4]));
    }
}
