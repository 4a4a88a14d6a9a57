//! Roots of polynomials over finite fields and explicit splitting fields.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{prime_factors, Field, Fq};
use super::parse::format_poly;
use super::poly::DensePoly;
use crate::error::{Error, Result};

/// Default bound on `[K : F_q]` for splitting-field computations.
pub const SPLITTING_CAP: usize = 8;

/// `x^{q^k} mod f` for `q` the field order.
fn frobenius_iterate(f: &DensePoly, k: usize) -> DensePoly {
    let field = f.field();
    let mut h = DensePoly::x(field).rem(f);
    for _ in 0..k {
        h = h.pow_mod(field.order(), f);
    }
    h
}

/// Rabin's irreducibility test over the coefficient field.
pub fn is_irreducible(f: &DensePoly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = DensePoly::x(f.field());
    if !frobenius_iterate(f, n).sub(&x).rem(f).is_zero() {
        return false;
    }
    prime_factors(n as u64).into_iter().all(|l| {
        let h = frobenius_iterate(f, n / l as usize).sub(&x);
        f.gcd(&h).is_one()
    })
}

/// The first monic irreducible polynomial of degree `d` over `F_p` in
/// lexicographic order of its coefficient vector (ascending digits).
pub fn find_irreducible(p: u32, d: usize) -> Vec<u32> {
    let fp = Field::prime(p);
    let mut idx: u64 = 0;
    loop {
        let mut digits = Vec::with_capacity(d + 1);
        let mut v = idx;
        for _ in 0..d {
            digits.push((v % p as u64) as u32);
            v /= p as u64;
        }
        digits.push(1);
        let poly = DensePoly::new(&fp, digits.iter().map(|&c| Fq(c as u64)).collect());
        if (digits[0] != 0 || d == 1)
            && is_irreducible(&poly) {
                return digits;
            }
        idx += 1;
    }
}

fn split_linear(g: &DensePoly, rng: &mut ChaCha8Rng, out: &mut Vec<Fq>) {
    let field = g.field();
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            let r = field.neg(field.div(g.coeff(0), g.coeff(1)).unwrap());
            out.push(r);
            return;
        }
        _ => {}
    }
    let q = field.order();
    let x = DensePoly::x(field);
    loop {
        let a = field.random(rng);
        let h = if field.p() == 2 {
            // absolute trace of (a x) modulo g
            let base = x.scale(field.random_nonzero(rng)).add(&DensePoly::constant(field, a)).rem(g);
            let mut acc = base.clone();
            let mut cur = base;
            for _ in 1..(field.degree()) {
                cur = cur.mul_mod(&cur, g);
                acc = acc.add(&cur);
            }
            acc
        } else {
            let base = x.add(&DensePoly::constant(field, a));
            base.pow_mod((q - 1) / 2, g).sub(&DensePoly::one(field))
        };
        let d = g.gcd(&h);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < g.degree().unwrap() {
            let other = g.div(&d);
            split_linear(&d, rng, out);
            split_linear(&other, rng, out);
            return;
        }
    }
}

/// Distinct roots of `f` in its coefficient field, sorted.
pub fn distinct_roots(f: &DensePoly) -> Vec<Fq> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let field = f.field();
    let fm = f.monic();
    let xq = DensePoly::x(field).pow_mod(field.order(), &fm);
    let g = fm.gcd(&xq.sub(&DensePoly::x(field)));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    split_linear(&g, &mut rng, &mut out);
    out.sort();
    out
}

/// Roots with multiplicities, sorted by root.
pub fn roots_with_multiplicity(f: &DensePoly) -> Vec<(Fq, usize)> {
    distinct_roots(f)
        .into_iter()
        .map(|r| {
            let lin = DensePoly::linear_root(f.field(), r);
            let mut g = f.clone();
            let mut m = 0;
            while let Some(q) = g.div_exact(&lin) {
                g = q;
                m += 1;
            }
            (r, m)
        })
        .collect()
}

/// Smallest `e` such that every root of `f` lies in `F_{q^e}`.
pub fn splitting_degree(f: &DensePoly, cap: usize) -> Result<usize> {
    let Some(n) = f.degree() else {
        return Err(Error::Internal("splitting degree of the zero polynomial".into()));
    };
    if n == 0 {
        return Ok(1);
    }
    let fm = f.monic();
    let x = DensePoly::x(f.field());
    let mut h = x.rem(&fm);
    for e in 1..=cap {
        h = h.pow_mod(f.field().order(), &fm);
        // the radical of f divides x^{q^e} - x iff f divides its n-th power
        if h.sub(&x).pow_mod(n as u64, &fm).is_zero() {
            return Ok(e);
        }
    }
    Err(Error::SplittingCap { degree: cap + 1, cap, poly: format_poly(f, "x") })
}

/// A field `K ⊇ F_q` together with the embedding of `F_q`.
#[derive(Clone, Debug)]
pub struct SplittingField {
    pub base: Field,
    pub ext: Field,
    /// Relative degree `[K : F_q]`.
    pub rel_degree: usize,
    /// Image of the generator `t` of the base (unused for prime bases).
    gen_image: Fq,
}

impl SplittingField {
    /// The degree-`e` extension of `base`.
    pub fn extension(base: &Field, e: usize) -> Result<SplittingField> {
        let p = base.p();
        let total = base.degree() * e;
        if e == 1 {
            return Ok(SplittingField {
                base: base.clone(),
                ext: base.clone(),
                rel_degree: 1,
                gen_image: base.generator().unwrap_or(Fq::ONE),
            });
        }
        let modulus = find_irreducible(p, total);
        let ext = Field::from_modulus(p, modulus)?;
        let gen_image = if base.degree() == 1 {
            Fq::ONE
        } else {
            let m = DensePoly::new(&ext, base.modulus().iter().map(|&c| Fq(c as u64)).collect());
            *distinct_roots(&m)
                .first()
                .ok_or_else(|| Error::Internal("base modulus has no root in the extension".into()))?
        };
        Ok(SplittingField { base: base.clone(), ext, rel_degree: e, gen_image })
    }

    /// The splitting field of `f` over its coefficient field.
    pub fn of(f: &DensePoly, cap: usize) -> Result<SplittingField> {
        let e = splitting_degree(f, cap)?;
        SplittingField::extension(f.field(), e)
    }

    pub fn embed(&self, a: Fq) -> Fq {
        if self.rel_degree == 1 {
            return a;
        }
        let digits = self.base.digits(a);
        let k = &self.ext;
        digits
            .iter()
            .rev()
            .fold(Fq::ZERO, |acc, &d| k.add(k.mul(acc, self.gen_image), Fq(d as u64)))
    }

    pub fn embed_poly(&self, f: &DensePoly) -> DensePoly {
        f.map_coeffs(&self.ext, |c| self.embed(c))
    }

    /// Roots with multiplicity of `f` (over the base) inside `K`.
    pub fn roots(&self, f: &DensePoly) -> Vec<(Fq, usize)> {
        roots_with_multiplicity(&self.embed_poly(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;

    #[test]
    fn rabin_agrees_with_trial_division() {
        for p in [2u32, 3, 5] {
            let fp = Field::prime(p);
            for idx in 0..(p as u64).pow(3) {
                let mut digits = Vec::new();
                let mut v = idx;
                for _ in 0..3 {
                    digits.push((v % p as u64) as u32);
                    v /= p as u64;
                }
                digits.push(1);
                let poly = DensePoly::new(&fp, digits.iter().map(|&c| Fq(c as u64)).collect());
                assert_eq!(
                    is_irreducible(&poly),
                    crate::algebra::field::is_irreducible_trial(p, &digits),
                    "{digits:?}"
                );
            }
        }
    }

    #[test]
    fn roots_over_prime_field() {
        let f = Field::prime(7);
        // (x-1)^2 (x-3)(x^2+1)
        let g = DensePoly::from_ints(&f, &[-1, 1])
            .pow(2)
            .mul(&DensePoly::from_ints(&f, &[-3, 1]))
            .mul(&DensePoly::from_ints(&f, &[1, 0, 1]));
        assert_eq!(roots_with_multiplicity(&g), vec![(Fq(1), 2), (Fq(3), 1)]);
        assert_eq!(splitting_degree(&g, 8).unwrap(), 2);
    }

    #[test]
    fn quadratic_over_f4_splits_in_f16() {
        let f4 = Field::new(&FieldSpec::extension(2, vec![1, 1, 1]).unwrap()).unwrap();
        let t = f4.generator().unwrap();
        // λ^2 + t has the single root sqrt(t) = t^2 in F_4 (Frobenius is bijective)
        let g = DensePoly::new(&f4, vec![t, Fq::ZERO, Fq::ONE]);
        let sf = SplittingField::of(&g, 8).unwrap();
        assert_eq!(sf.rel_degree, 1);
        // λ^2 + λ + t is irreducible over F_4
        let h = DensePoly::new(&f4, vec![t, Fq::ONE, Fq::ONE]);
        let sf = SplittingField::of(&h, 8).unwrap();
        assert_eq!(sf.rel_degree, 2);
        assert_eq!(sf.ext.order(), 16);
        let roots = sf.roots(&h);
        assert_eq!(roots.len(), 2);
        let k = &sf.ext;
        for (r, m) in roots {
            assert_eq!(m, 1);
            assert!(sf.embed_poly(&h).eval(r).is_zero());
            assert!(!k.mul(r, r).is_zero());
        }
        // the embedding is a ring map
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(sf.embed(f4.mul(a, b)), k.mul(sf.embed(a), sf.embed(b)));
                assert_eq!(sf.embed(f4.add(a, b)), k.add(sf.embed(a), sf.embed(b)));
            }
        }
    }
}
