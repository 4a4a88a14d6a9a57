//! The log Weyl algebra `k⟨x, θ⟩ / (θx - xθ - q)` of differential operators
//! along `θ = q d/dx`, in the normal order `x^i θ^j`.

use std::fmt;

use rand::Rng;

use crate::algebra::bipoly::BiPoly;
use crate::algebra::field::Fq;
use crate::algebra::matrix::PolyMatrix;
use crate::algebra::parse::format_elem;
use crate::algebra::poly::DensePoly;
use crate::error::{Error, Result};
use crate::logconn::{apply_nabla, p_power_vector_field, LogConnection, LogDivisor};
use crate::witt::binomial_mod_p;

/// `Σ_j f_j(x) θ^j`.
#[derive(Clone, PartialEq, Eq)]
pub struct DlogElement {
    divisor: LogDivisor,
    /// `coeffs[j]` multiplies `θ^j`; no trailing zeros.
    coeffs: Vec<DensePoly>,
}

impl fmt::Debug for DlogElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DlogElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.divisor.field();
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|&(i, j, c)| {
                let mut mono = Vec::new();
                match i {
                    0 => {}
                    1 => mono.push("x".to_string()),
                    _ => mono.push(format!("x^{i}")),
                }
                match j {
                    0 => {}
                    1 => mono.push("θ".to_string()),
                    _ => mono.push(format!("θ^{j}")),
                }
                let c = format_elem(field, c);
                match (mono.is_empty(), c.as_str()) {
                    (true, _) => c,
                    (false, "1") => mono.join(" "),
                    _ => format!("{c} {}", mono.join(" ")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl DlogElement {
    pub fn new(divisor: &LogDivisor, mut coeffs: Vec<DensePoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DlogElement { divisor: divisor.clone(), coeffs }
    }

    pub fn zero(divisor: &LogDivisor) -> Self {
        DlogElement::new(divisor, Vec::new())
    }

    pub fn from_poly(divisor: &LogDivisor, f: DensePoly) -> Self {
        DlogElement::new(divisor, vec![f])
    }

    pub fn one(divisor: &LogDivisor) -> Self {
        DlogElement::from_poly(divisor, DensePoly::one(divisor.field()))
    }

    pub fn x(divisor: &LogDivisor) -> Self {
        DlogElement::from_poly(divisor, DensePoly::x(divisor.field()))
    }

    pub fn theta(divisor: &LogDivisor) -> Self {
        DlogElement::monomial(divisor, Fq::ONE, 0, 1)
    }

    /// `c x^i θ^j`.
    pub fn monomial(divisor: &LogDivisor, c: Fq, i: usize, j: usize) -> Self {
        let field = divisor.field();
        let mut coeffs = vec![DensePoly::zero(field); j + 1];
        coeffs[j] = DensePoly::monomial(field, c, i);
        DlogElement::new(divisor, coeffs)
    }

    /// `x^p`.
    pub fn x_p(divisor: &LogDivisor) -> Self {
        let p = divisor.field().p() as u64;
        DlogElement::x(divisor).pow(p)
    }

    /// `ζ = θ^p - c θ`, with `θ^p = c θ` as derivations.
    pub fn zeta(divisor: &LogDivisor) -> Result<Self> {
        let p = divisor.field().p() as u64;
        let c = p_power_vector_field(divisor)?;
        let theta = DlogElement::theta(divisor);
        Ok(theta.pow(p).sub(&DlogElement::from_poly(divisor, c).mul(&theta)?))
    }

    /// Random element with at most `support` terms of bidegree below `(deg, deg)`.
    pub fn random<R: Rng + ?Sized>(divisor: &LogDivisor, support: usize, deg: usize, rng: &mut R) -> Self {
        let field = divisor.field();
        (0..support).fold(DlogElement::zero(divisor), |acc, _| {
            let m = DlogElement::monomial(divisor, field.random(rng), rng.gen_range(0..deg), rng.gen_range(0..deg));
            acc.add(&m)
        })
    }

    pub fn divisor(&self) -> &LogDivisor {
        &self.divisor
    }

    pub fn coeffs(&self) -> &[DensePoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero coefficients `(i, j, c)` of `c x^i θ^j`, sorted by `(j, i)`.
    pub fn terms(&self) -> Vec<(usize, usize, Fq)> {
        let mut out = Vec::new();
        for (j, f) in self.coeffs.iter().enumerate() {
            for (i, &c) in f.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c));
                }
            }
        }
        out
    }

    fn coeff(&self, j: usize) -> DensePoly {
        self.coeffs.get(j).cloned().unwrap_or_else(|| DensePoly::zero(self.divisor.field()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        DlogElement::new(&self.divisor, (0..n).map(|j| self.coeff(j).add(&other.coeff(j))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        DlogElement::new(&self.divisor, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn scale(&self, c: Fq) -> Self {
        DlogElement::new(&self.divisor, self.coeffs.iter().map(|f| f.scale(c)).collect())
    }

    /// Product, moving `θ` past functions with `θ^j g = Σ_s C(j, s) θ^s(g) θ^{j-s}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.divisor != other.divisor {
            return Err(Error::InvalidDivisor("operators over different divisors".into()));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let field = self.divisor.field();
        let p = field.p();
        if self.is_zero() || other.is_zero() {
            return DlogElement::zero(&self.divisor);
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = vec![DensePoly::zero(field); n];
        for (k, g) in other.coeffs.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            // θ^s(g) for s up to the largest θ-degree on the left
            let mut derivs = vec![g.clone()];
            for _ in 1..self.coeffs.len() {
                let next = self.divisor.theta(derivs.last().unwrap());
                derivs.push(next);
            }
            for (j, f) in self.coeffs.iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                for (s, ds) in derivs.iter().enumerate().take(j + 1) {
                    let b = binomial_mod_p(j as u64, s as u64, p);
                    if b == 0 || ds.is_zero() {
                        continue;
                    }
                    let t = f.mul(ds).scale(field.from_int(b as i64));
                    out[j - s + k] = out[j - s + k].add(&t);
                }
            }
        }
        DlogElement::new(&self.divisor, out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = DlogElement::one(&self.divisor);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `self · other - other · self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(other)?.sub(&other.mul(self)?))
    }
}

/// Whether `e` commutes with both generators `x` and `θ`.
pub fn centrality_check(e: &DlogElement) -> bool {
    let d = e.divisor();
    [DlogElement::x(d), DlogElement::theta(d)]
        .iter()
        .all(|g| e.commutator(g).expect("same divisor").is_zero())
}

/// `Σ z_{ij}(x^p, ζ) x^i θ^j` with `0 ≤ i, j < p`: the coefficient
/// `z_{ij}` is returned as a polynomial in `λ = ζ` over `k[y]`, `y = x^p`.
pub fn center_decomposition(e: &DlogElement) -> Result<Vec<Vec<BiPoly>>> {
    let d = e.divisor();
    let field = d.field();
    let p = field.p() as usize;
    let zeta = DlogElement::zeta(d)?;
    let mut zeta_pows = vec![DlogElement::one(d)];
    let mut out: Vec<Vec<Vec<DensePoly>>> = vec![vec![Vec::new(); p]; p];
    let mut rest = e.clone();
    while let Some(top) = rest.coeffs.len().checked_sub(1) {
        let (a, b) = (top / p, top % p);
        while zeta_pows.len() <= a {
            let next = zeta_pows.last().unwrap().mul_unchecked(&zeta);
            zeta_pows.push(next);
        }
        let lead = rest.coeffs[top].clone();
        let mut sub = DlogElement::zero(d);
        for (i, fi) in lead.split_by_residue(p).into_iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            let slot = &mut out[i][b];
            if slot.len() <= a {
                slot.resize(a + 1, DensePoly::zero(field));
            }
            slot[a] = slot[a].add(&fi);
            let central = DlogElement::from_poly(d, fi.inflate(p).shift(i));
            let term = central.mul_unchecked(&zeta_pows[a]).mul_unchecked(&DlogElement::monomial(d, Fq::ONE, 0, b));
            sub = sub.add(&term);
        }
        rest = rest.sub(&sub);
        if rest.coeffs.len() > top {
            return Err(Error::Internal("central decomposition failed to lower the θ-degree".into()));
        }
    }
    Ok(out.into_iter().map(|row| row.into_iter().map(|z| BiPoly::new(field, z)).collect()).collect())
}

/// Rebuilds an operator from [`center_decomposition`] data.
pub fn center_recompose(d: &LogDivisor, z: &[Vec<BiPoly>]) -> Result<DlogElement> {
    let p = d.field().p() as usize;
    let zeta = DlogElement::zeta(d)?;
    let mut acc = DlogElement::zero(d);
    for (i, row) in z.iter().enumerate() {
        for (j, zij) in row.iter().enumerate() {
            let mut zp = DlogElement::one(d);
            for coef in zij.coeffs() {
                let c = DlogElement::from_poly(d, coef.inflate(p));
                acc = acc.add(&c.mul_unchecked(&zp).mul_unchecked(&DlogElement::monomial(d, Fq::ONE, i, j)));
                zp = zp.mul_unchecked(&zeta);
            }
        }
    }
    Ok(acc)
}

/// Rank of the algebra over `k[x^p, ζ]`: the number of basis monomials
/// `x^i θ^j` (`i, j < p`) that occur when every monomial `x^a θ^b` with
/// `a, b < 2p` is decomposed, after checking that the decomposition is exact
/// and that each basis monomial decomposes to itself.
pub fn rank_over_center(d: &LogDivisor) -> Result<usize> {
    let p = d.field().p() as usize;
    let mut used = vec![vec![false; p]; p];
    for a in 0..2 * p {
        for b in 0..2 * p {
            let m = DlogElement::monomial(d, Fq::ONE, a, b);
            let z = center_decomposition(&m)?;
            if center_recompose(d, &z)? != m {
                return Err(Error::Internal("central decomposition does not recompose".into()));
            }
            for i in 0..p {
                for j in 0..p {
                    let own = a == i && b == j;
                    let is_unit = z[i][j] == BiPoly::one(d.field());
                    let others_zero = (0..p).all(|k| (0..p).all(|l| (k, l) == (i, j) || z[k][l].is_zero()));
                    if own && !(is_unit && others_zero) {
                        return Err(Error::Internal("basis monomial is not free over the centre".into()));
                    }
                    used[i][j] |= !z[i][j].is_zero();
                }
            }
        }
    }
    Ok(used.iter().flatten().filter(|&&u| u).count())
}

/// `k[x]^r` as a module over the log Weyl algebra: `x` multiplies and `θ`
/// acts by `∇_θ`.
#[derive(Clone, Debug)]
pub struct DModule {
    conn: LogConnection,
}

impl DModule {
    pub fn connection(&self) -> &LogConnection {
        &self.conn
    }

    pub fn act(&self, e: &DlogElement, s: &[DensePoly]) -> Result<Vec<DensePoly>> {
        if e.divisor() != self.conn.divisor() {
            return Err(Error::InvalidDivisor("operator and connection over different divisors".into()));
        }
        let field = self.conn.field();
        let mut out = vec![DensePoly::zero(field); s.len()];
        let mut cur = s.to_vec();
        for (j, f) in e.coeffs().iter().enumerate() {
            if j > 0 {
                cur = apply_nabla(&self.conn, &cur)?;
            }
            for (o, c) in out.iter_mut().zip(&cur) {
                *o = o.add(&f.mul(c));
            }
        }
        Ok(out)
    }
}

/// Builds the module action and checks `(θx - xθ - q) s = 0` on the
/// sections `x^n e_k` with `n ≤ 2p`.
pub fn module_action_from_connection(c: &LogConnection) -> Result<DModule> {
    let m = DModule { conn: c.clone() };
    let d = c.divisor();
    let field = c.field();
    let x = DlogElement::x(d);
    let theta = DlogElement::theta(d);
    let rel = theta
        .mul(&x)?
        .sub(&x.mul(&theta)?)
        .sub(&DlogElement::from_poly(d, d.q_poly().clone()));
    if !rel.is_zero() {
        return Err(Error::Internal("defining relation fails in the algebra".into()));
    }
    let rx = x.clone();
    for n in 0..=2 * field.p() as usize {
        for k in 0..c.rank() {
            let mut s = vec![DensePoly::zero(field); c.rank()];
            s[k] = DensePoly::monomial(field, Fq::ONE, n);
            let lhs = m.act(&theta, &m.act(&rx, &s)?)?;
            let rhs = m.act(&rx, &m.act(&theta, &s)?)?;
            let ok = lhs
                .iter()
                .zip(&rhs)
                .zip(&s)
                .all(|((a, b), si)| a.sub(b) == d.q_poly().mul(si));
            if !ok {
                return Err(Error::Internal(format!("relation θx - xθ = q fails on x^{n} e_{k}")));
            }
        }
    }
    Ok(m)
}

/// Matrix of `ζ = θ^p - c θ` acting on the standard basis.
pub fn central_element_action(c: &LogConnection) -> Result<PolyMatrix> {
    let m = module_action_from_connection(c)?;
    let zeta = DlogElement::zeta(c.divisor())?;
    let field = c.field();
    let r = c.rank();
    let ident = PolyMatrix::poly_identity(field, r);
    let cols: Vec<Vec<DensePoly>> = (0..r).map(|k| m.act(&zeta, &ident.column(k))).collect::<Result<_>>()?;
    Ok(PolyMatrix::from_columns(r, &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::logconn::p_curvature;

    #[test]
    fn commutator_examples() {
        let f2 = Field::prime(2);
        let d = LogDivisor::new(&f2, vec![Fq(0), Fq(1)]).unwrap();
        let tx = DlogElement::theta(&d).mul(&DlogElement::x(&d)).unwrap();
        assert_eq!(tx.to_string(), "x + x^2 + x θ");
        let f5 = Field::prime(5);
        let d = LogDivisor::origin(&f5);
        let tx = DlogElement::theta(&d).mul(&DlogElement::x(&d)).unwrap();
        assert_eq!(tx.to_string(), "x + x θ");
        assert!(centrality_check(&DlogElement::zeta(&d).unwrap()));
        assert!(centrality_check(&DlogElement::x_p(&d)));
        assert!(!centrality_check(&DlogElement::theta(&d)));
    }

    #[test]
    fn rank_p_squared() {
        for p in [2, 3] {
            let f = Field::prime(p);
            let d = LogDivisor::new(&f, vec![Fq(0), Fq(1)]).unwrap();
            assert_eq!(rank_over_center(&d).unwrap(), (p * p) as usize);
        }
    }

    #[test]
    fn zeta_acts_by_p_curvature() {
        let f = Field::prime(3);
        let d = LogDivisor::new(&f, vec![Fq(1), Fq(2)]).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
        for _ in 0..10 {
            let c = LogConnection::random(&d, 2, 2, &mut rng);
            assert_eq!(central_element_action(&c).unwrap(), p_curvature(&c).unwrap().psi);
        }
    }
}
