//! A small commutative-ring interface so matrices and determinants can be
//! written once and used over `F_q`, `k[x]`, `k[x][λ]` and truncated rings.

use std::fmt::Debug;

use super::field::{Field, Fq};
use super::poly::DensePoly;

pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

impl Ring for Field {
    type Elem = Fq;

    fn zero(&self) -> Fq {
        Fq::ZERO
    }
    fn one(&self) -> Fq {
        Fq::ONE
    }
    fn is_zero(&self, a: &Fq) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        Field::add(self, *a, *b)
    }
    fn neg(&self, a: &Fq) -> Fq {
        Field::neg(self, *a)
    }
    fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        Field::sub(self, *a, *b)
    }
    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        Field::mul(self, *a, *b)
    }
    fn from_int(&self, n: i64) -> Fq {
        Field::from_int(self, n)
    }
}

/// The ring `k[x]` (the variable name is only a printing concern).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub field: Field,
}

impl PolyRing {
    pub fn new(field: &Field) -> Self {
        PolyRing { field: field.clone() }
    }
}

impl Ring for PolyRing {
    type Elem = DensePoly;

    fn zero(&self) -> DensePoly {
        DensePoly::zero(&self.field)
    }
    fn one(&self) -> DensePoly {
        DensePoly::one(&self.field)
    }
    fn is_zero(&self, a: &DensePoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        a.add(b)
    }
    fn neg(&self, a: &DensePoly) -> DensePoly {
        a.neg()
    }
    fn sub(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        a.sub(b)
    }
    fn mul(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        a.mul(b)
    }
    fn from_int(&self, n: i64) -> DensePoly {
        DensePoly::constant(&self.field, self.field.from_int(n))
    }
}
