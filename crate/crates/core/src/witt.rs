//! Truncated `p`-typical Witt vectors over `F_q[ε]/(ε^m)` and divided powers.
//!
//! Sum and product are evaluated through the universal Witt polynomials,
//! which are computed once per `(p, n)` over the integers from the ghost
//! components and then reduced mod `p`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::algebra::field::{Field, Fq};
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};

/// Largest supported Witt length.
pub const MAX_LEN: usize = 4;

/// The coefficient ring `F_q[ε]/(ε^m)`; `m = 1` is the field itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncRing {
    field: Field,
    m: usize,
}

impl TruncRing {
    pub fn new(field: &Field, m: usize) -> Result<Self> {
        if m == 0 || m > field.p() as usize {
            return Err(Error::WittMismatch(format!(
                "nilpotence order {m} must lie in 1..={}",
                field.p()
            )));
        }
        Ok(TruncRing { field: field.clone(), m })
    }

    pub fn field_only(field: &Field) -> Self {
        TruncRing { field: field.clone(), m: 1 }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nil_order(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn constant(&self, c: Fq) -> Vec<Fq> {
        let mut v = vec![Fq::ZERO; self.m];
        v[0] = c;
        v
    }

    /// `ε` (zero when `m = 1`).
    pub fn epsilon(&self) -> Vec<Fq> {
        let mut v = vec![Fq::ZERO; self.m];
        if self.m > 1 {
            v[1] = Fq::ONE;
        }
        v
    }

    pub fn elem(&self, coeffs: &[Fq]) -> Vec<Fq> {
        let mut v = vec![Fq::ZERO; self.m];
        for (i, &c) in coeffs.iter().enumerate().take(self.m) {
            v[i] = c;
        }
        v
    }

    pub fn is_nilpotent(&self, a: &[Fq]) -> bool {
        a[0].is_zero()
    }

    pub fn scale(&self, a: &[Fq], c: Fq) -> Vec<Fq> {
        a.iter().map(|&x| self.field.mul(x, c)).collect()
    }

    pub fn inv(&self, a: &[Fq]) -> Option<Vec<Fq>> {
        let f = &self.field;
        let a0inv = f.inv(a[0])?;
        // a = a0 (1 + n), n nilpotent: a^{-1} = a0^{-1} Σ (-n)^k
        let n: Vec<Fq> = self.scale(a, a0inv).into_iter().enumerate().map(|(i, c)| if i == 0 { Fq::ZERO } else { c }).collect();
        let neg_n = self.neg(&n);
        let mut acc = self.one();
        let mut term = self.one();
        for _ in 1..self.m {
            term = self.mul(&term, &neg_n);
            acc = self.add(&acc, &term);
        }
        Some(self.scale(&acc, a0inv))
    }

    pub fn elements(&self) -> Vec<Vec<Fq>> {
        let q = self.field.order();
        let total = q.pow(self.m as u32);
        (0..total)
            .map(|mut idx| {
                (0..self.m)
                    .map(|_| {
                        let c = Fq(idx % q);
                        idx /= q;
                        c
                    })
                    .collect()
            })
            .collect()
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Fq> {
        (0..self.m).map(|_| self.field.random(rng)).collect()
    }
}

impl Ring for TruncRing {
    type Elem = Vec<Fq>;

    fn zero(&self) -> Vec<Fq> {
        vec![Fq::ZERO; self.m]
    }
    fn one(&self) -> Vec<Fq> {
        self.constant(Fq::ONE)
    }
    fn is_zero(&self, a: &Vec<Fq>) -> bool {
        a.iter().all(|c| c.is_zero())
    }
    fn add(&self, a: &Vec<Fq>, b: &Vec<Fq>) -> Vec<Fq> {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }
    fn neg(&self, a: &Vec<Fq>) -> Vec<Fq> {
        a.iter().map(|&x| self.field.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<Fq>, b: &Vec<Fq>) -> Vec<Fq> {
        let f = &self.field;
        let mut out = vec![Fq::ZERO; self.m];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate().take(self.m - i) {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        out
    }
    fn from_int(&self, n: i64) -> Vec<Fq> {
        self.constant(self.field.from_int(n))
    }
}

/// Integer polynomial in variables `X_0.., Y_0..` (exponent vectors as keys).
#[derive(Clone, Debug, Default)]
struct ZPoly {
    terms: HashMap<Vec<u32>, BigInt>,
}

impl ZPoly {
    fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        ZPoly { terms: HashMap::from([(e, BigInt::one())]) }
    }

    fn add_assign_scaled(&mut self, other: &ZPoly, c: &BigInt) {
        for (e, v) in &other.terms {
            let slot = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *slot += v * c;
            if slot.is_zero() {
                self.terms.remove(e);
            }
        }
    }

    fn mul(&self, other: &ZPoly) -> ZPoly {
        let mut out: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for (ea, va) in &self.terms {
            for (eb, vb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *out.entry(e).or_insert_with(BigInt::zero) += va * vb;
            }
        }
        out.retain(|_, v| !v.is_zero());
        ZPoly { terms: out }
    }

    fn pow(&self, mut e: u64, nvars: usize) -> ZPoly {
        let mut acc = ZPoly { terms: HashMap::from([(vec![0; nvars], BigInt::one())]) };
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

    fn div_exact(&mut self, d: &BigInt) {
        for v in self.terms.values_mut() {
            debug_assert!((&*v % d).is_zero(), "inexact division in Witt polynomial");
            *v /= d;
        }
    }

    fn reduce(&self, p: u32) -> ModPoly {
        let pb = BigInt::from(p);
        let mut terms: Vec<(Vec<u32>, u32)> = self
            .terms
            .iter()
            .filter_map(|(e, v)| {
                let mut r = v % &pb;
                if r.is_negative() {
                    r += &pb;
                }
                let r = r.to_u32().unwrap();
                (r != 0).then(|| (e.clone(), r))
            })
            .collect();
        terms.sort();
        ModPoly { terms }
    }
}

#[derive(Clone, Debug)]
struct ModPoly {
    terms: Vec<(Vec<u32>, u32)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WittOp {
    Add,
    Mul,
}

type PolyTable = Arc<Vec<ModPoly>>;

fn memo() -> &'static Mutex<HashMap<(u32, usize, WittOp), PolyTable>> {
    static MEMO: OnceLock<Mutex<HashMap<(u32, usize, WittOp), PolyTable>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Whether the universal polynomials for `(p, n)` are within the supported size.
pub fn supported(p: u32, n: usize) -> bool {
    (1..=MAX_LEN).contains(&n) && (n <= 2 || (p as u64).pow(n as u32 - 1) <= 32)
}

fn ghost(vars: &[ZPoly], p: u32, k: usize, nvars: usize) -> ZPoly {
    let mut out = ZPoly::default();
    for (i, v) in vars.iter().enumerate().take(k + 1) {
        let t = v.pow((p as u64).pow((k - i) as u32), nvars);
        out.add_assign_scaled(&t, &BigInt::from(p).pow(i as u32));
    }
    out
}

fn compute_universal(p: u32, n: usize, op: WittOp) -> Vec<ModPoly> {
    let nvars = 2 * n;
    let xs: Vec<ZPoly> = (0..n).map(|i| ZPoly::var(nvars, i)).collect();
    let ys: Vec<ZPoly> = (0..n).map(|i| ZPoly::var(nvars, n + i)).collect();
    let mut s: Vec<ZPoly> = Vec::with_capacity(n);
    for k in 0..n {
        let gx = ghost(&xs, p, k, nvars);
        let gy = ghost(&ys, p, k, nvars);
        let mut acc = match op {
            WittOp::Add => {
                let mut a = gx;
                a.add_assign_scaled(&gy, &BigInt::one());
                a
            }
            WittOp::Mul => gx.mul(&gy),
        };
        for (i, si) in s.iter().enumerate() {
            let t = si.pow((p as u64).pow((k - i) as u32), nvars);
            acc.add_assign_scaled(&t, &-BigInt::from(p).pow(i as u32));
        }
        acc.div_exact(&BigInt::from(p).pow(k as u32));
        s.push(acc);
    }
    s.iter().map(|z| z.reduce(p)).collect()
}

fn universal(p: u32, n: usize, op: WittOp) -> PolyTable {
    if let Some(t) = memo().lock().unwrap().get(&(p, n, op)) {
        return t.clone();
    }
    // computed outside the lock; concurrent fills produce identical tables
    let table = Arc::new(compute_universal(p, n, op));
    memo().lock().unwrap().entry((p, n, op)).or_insert(table).clone()
}

/// A Witt vector of length `n` over a [`TruncRing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittVector {
    ring: TruncRing,
    comps: Vec<Vec<Fq>>,
}

impl WittVector {
    pub fn new(ring: &TruncRing, comps: Vec<Vec<Fq>>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::WittMismatch("length must be at least 1".into()));
        }
        if comps.iter().any(|c| c.len() != ring.m) {
            return Err(Error::WittMismatch("component outside the coefficient ring".into()));
        }
        Ok(WittVector { ring: ring.clone(), comps })
    }

    /// Components taken from the field (constant in `ε`).
    pub fn from_field(ring: &TruncRing, comps: &[Fq]) -> Result<Self> {
        WittVector::new(ring, comps.iter().map(|&c| ring.constant(c)).collect())
    }

    pub fn from_ints(ring: &TruncRing, comps: &[i64]) -> Result<Self> {
        let f = ring.field();
        WittVector::from_field(ring, &comps.iter().map(|&c| f.from_int(c)).collect::<Vec<_>>())
    }

    pub fn zero(ring: &TruncRing, n: usize) -> Self {
        WittVector { ring: ring.clone(), comps: vec![ring.zero(); n] }
    }

    pub fn one(ring: &TruncRing, n: usize) -> Self {
        let mut w = WittVector::zero(ring, n);
        w.comps[0] = ring.one();
        w
    }

    pub fn random<R: Rng + ?Sized>(ring: &TruncRing, n: usize, rng: &mut R) -> Self {
        WittVector { ring: ring.clone(), comps: (0..n).map(|_| ring.random(rng)).collect() }
    }

    pub fn ring(&self) -> &TruncRing {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> &[Vec<Fq>] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| self.ring.is_zero(c))
    }

    /// The first `k` components.
    pub fn truncate(&self, k: usize) -> Self {
        WittVector { ring: self.ring.clone(), comps: self.comps[..k].to_vec() }
    }

    /// Appends zero components up to length `k`.
    pub fn extend_to(&self, k: usize) -> Self {
        let mut comps = self.comps.clone();
        comps.resize(k, self.ring.zero());
        WittVector { ring: self.ring.clone(), comps }
    }
}

/// Sum or product of two Witt vectors of equal length over the same ring.
pub fn witt_ring_op(u: &WittVector, v: &WittVector, op: WittOp) -> Result<WittVector> {
    if u.ring != v.ring {
        return Err(Error::WittMismatch("different coefficient rings".into()));
    }
    if u.len() != v.len() {
        return Err(Error::WittMismatch(format!("lengths {} and {}", u.len(), v.len())));
    }
    let ring = &u.ring;
    let p = ring.p();
    let n = u.len();
    if !supported(p, n) {
        return Err(Error::Unsupported(format!("Witt vectors of length {n} for p = {p}")));
    }
    let table = universal(p, n, op);
    let vals: Vec<&Vec<Fq>> = u.comps.iter().chain(v.comps.iter()).collect();
    let mut powers: Vec<Vec<Vec<Fq>>> = vals.iter().map(|v| vec![ring.one(), (*v).clone()]).collect();
    let mut comps = Vec::with_capacity(n);
    for poly in table.iter() {
        let mut acc = ring.zero();
        for (exps, c) in &poly.terms {
            let mut term = ring.constant(Fq(*c as u64));
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = ring.mul(powers[i].last().unwrap(), vals[i]);
                    powers[i].push(next);
                }
                term = ring.mul(&term, &powers[i][e]);
            }
            acc = ring.add(&acc, &term);
        }
        comps.push(acc);
    }
    Ok(WittVector { ring: ring.clone(), comps })
}

pub fn witt_add(u: &WittVector, v: &WittVector) -> Result<WittVector> {
    witt_ring_op(u, v, WittOp::Add)
}

pub fn witt_mul(u: &WittVector, v: &WittVector) -> Result<WittVector> {
    witt_ring_op(u, v, WittOp::Mul)
}

/// `-u`. For odd `p` the Teichmüller lift of `-1` is `-1`, so negation is
/// componentwise; for `p = 2`, `-1 = (1, 1, 1, ...)`.
pub fn witt_neg(u: &WittVector) -> Result<WittVector> {
    let ring = &u.ring;
    if ring.p() == 2 {
        let minus_one = WittVector::from_field(ring, &vec![Fq::ONE; u.len()])?;
        witt_mul(&minus_one, u)
    } else {
        Ok(WittVector { ring: ring.clone(), comps: u.comps.iter().map(|c| ring.neg(c)).collect() })
    }
}

/// `n · u` by repeated addition.
pub fn witt_scale_int(u: &WittVector, k: u64) -> Result<WittVector> {
    let mut acc = WittVector::zero(&u.ring, u.len());
    for _ in 0..k {
        acc = witt_add(&acc, u)?;
    }
    Ok(acc)
}

/// Componentwise `p`-th power.
pub fn witt_frobenius(u: &WittVector) -> WittVector {
    let ring = &u.ring;
    let p = ring.p() as u64;
    WittVector { ring: ring.clone(), comps: u.comps.iter().map(|c| ring.pow(c, p)).collect() }
}

/// `V(a_0, ..., a_{n-2}) = (0, a_0, ..., a_{n-2})`; the length grows by one.
pub fn witt_verschiebung(u: &WittVector) -> WittVector {
    let mut comps = vec![u.ring.zero()];
    comps.extend(u.comps.iter().cloned());
    WittVector { ring: u.ring.clone(), comps }
}

pub fn nilpotent_components_check(u: &WittVector) -> bool {
    u.comps.iter().all(|c| u.ring.is_nilpotent(c))
}

/// Ghost-lift reference: lifts components of a Witt vector over `F_p` to
/// integers in `0..p`, combines ghost components and solves back.
pub fn ghost_lift_reference(p: u32, a: &[u32], b: &[u32], op: WittOp) -> Vec<u32> {
    let n = a.len();
    let pb = BigInt::from(p);
    let ghosts = |v: &[u32]| -> Vec<BigInt> {
        (0..n)
            .map(|k| {
                (0..=k)
                    .map(|i| pb.pow(i as u32) * BigInt::from(v[i]).pow(p.pow((k - i) as u32)))
                    .sum()
            })
            .collect()
    };
    let ga = ghosts(a);
    let gb = ghosts(b);
    let target: Vec<BigInt> = ga
        .iter()
        .zip(&gb)
        .map(|(x, y)| match op {
            WittOp::Add => x + y,
            WittOp::Mul => x * y,
        })
        .collect();
    let mut comps: Vec<BigInt> = Vec::with_capacity(n);
    for k in 0..n {
        let mut rest = target[k].clone();
        for (i, c) in comps.iter().enumerate() {
            rest -= pb.pow(i as u32) * c.pow(p.pow((k - i) as u32));
        }
        let d = pb.pow(k as u32);
        assert!((&rest % &d).is_zero());
        comps.push(rest / d);
    }
    comps
        .iter()
        .map(|c| {
            let mut r = c % &pb;
            if r.is_negative() {
                r += &pb;
            }
            r.to_u32().unwrap()
        })
        .collect()
}

/// A candidate divided-power sequence `γ_0, ..., γ_N` on `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividedPowerSequence {
    ring: TruncRing,
    gammas: Vec<Vec<Fq>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PdVerdict {
    Valid,
    Violation { n: usize, m: usize },
}

impl PdVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, PdVerdict::Valid)
    }
}

impl DividedPowerSequence {
    /// Requires `γ_0 = 1`, `γ_1 = base`.
    pub fn new(ring: &TruncRing, base: &[Fq], gammas: Vec<Vec<Fq>>) -> Result<Self> {
        if gammas.len() < 2 {
            return Err(Error::WittMismatch("need at least γ_0 and γ_1".into()));
        }
        if gammas[0] != ring.one() || gammas[1] != base {
            return Err(Error::WittMismatch("γ_0 must be 1 and γ_1 must be the base".into()));
        }
        if gammas.iter().any(|g| g.len() != ring.nil_order()) {
            return Err(Error::WittMismatch("γ outside the coefficient ring".into()));
        }
        Ok(DividedPowerSequence { ring: ring.clone(), gammas })
    }

    pub fn base(&self) -> &[Fq] {
        &self.gammas[1]
    }

    pub fn gammas(&self) -> &[Vec<Fq>] {
        &self.gammas
    }

    pub fn cutoff(&self) -> usize {
        self.gammas.len() - 1
    }

    pub fn gamma(&self, i: usize) -> Vec<Fq> {
        self.gammas.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }
}

/// `C(n, k) mod p` via Lucas' theorem.
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: u32) -> u32 {
    let p = p as u64;
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        acc = acc * small_binomial(a, b) % p;
        n /= p;
        k /= p;
    }
    acc as u32
}

fn small_binomial(n: u64, k: u64) -> u64 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

/// Checks `γ_n γ_m = C(n+m, n) γ_{n+m}` for all `n ≤ m ≤ N`, with
/// `γ_i = 0` for `i > N`.
pub fn divided_power_check(s: &DividedPowerSequence) -> PdVerdict {
    let ring = &s.ring;
    let p = ring.p();
    let big_n = s.cutoff();
    for n in 0..=big_n {
        for m in n..=big_n {
            let lhs = ring.mul(&s.gammas[n], &s.gammas[m]);
            let c = binomial_mod_p((n + m) as u64, n as u64, p);
            let rhs = ring.scale(&s.gamma(n + m), Fq(c as u64));
            if lhs != rhs {
                return PdVerdict::Violation { n, m };
            }
        }
    }
    PdVerdict::Valid
}

/// Rescaling units: the Witt vector with ghost components `(a, 0, 0, ...)`
/// has components `c_k a^{p^k}`, and `u_k = c_k (p^k)!` is a `p`-adic unit.
/// Returns `u_k mod p` for `k < n`.
pub fn kernel_units(p: u32, n: usize) -> Vec<u32> {
    let pb = BigInt::from(p);
    let mut cs: Vec<BigRational> = vec![BigRational::one()];
    for k in 1..n {
        let mut s = BigRational::zero();
        for (i, c) in cs.iter().enumerate() {
            let e = p.pow((k - i) as u32);
            s += BigRational::from_integer(pb.pow(i as u32)) * num_traits::pow(c.clone(), e as usize);
        }
        cs.push(-s / BigRational::from_integer(pb.pow(k as u32)));
    }
    cs.iter()
        .enumerate()
        .map(|(k, c)| {
            let fact: BigInt = (1..=p.pow(k as u32) as u64).map(BigInt::from).product();
            let unit = rational_mod_p(&(c * BigRational::from_integer(fact)), p);
            assert!(unit != 0, "rescaling constant is not a unit");
            unit
        })
        .collect()
}

fn rational_mod_p(r: &BigRational, p: u32) -> u32 {
    let pb = BigInt::from(p);
    let mut num = r.numer() % &pb;
    if num.is_negative() {
        num += &pb;
    }
    let mut den = r.denom() % &pb;
    if den.is_negative() {
        den += &pb;
    }
    let num = num.to_u64().unwrap();
    let den = den.to_u64().unwrap();
    assert!(den != 0, "denominator divisible by p");
    (num * crate::algebra::field::pow_mod(den, p as u64 - 2, p as u64) % p as u64) as u32
}

/// `e_N = Π ((p^k)!)^{n_k} / N!` reduced mod `p`, a unit by Legendre's formula.
fn gamma_scale(p: u32, big_n: u64) -> u32 {
    let mut num = BigInt::one();
    let mut rest = big_n;
    let mut k = 0;
    while rest > 0 {
        let digit = rest % p as u64;
        let fact: BigInt = (1..=(p as u64).pow(k)).map(BigInt::from).product();
        num *= fact.pow(digit as u32);
        rest /= p as u64;
        k += 1;
    }
    let den: BigInt = (1..=big_n).map(BigInt::from).product();
    rational_mod_p(&BigRational::new(num, den), p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub in_kernel: bool,
    pub divided_powers: Option<DividedPowerSequence>,
}

/// Decides `F(u) = 0` and, when it holds, recovers the divided powers of
/// `a_0` encoded by the components.
pub fn frobenius_kernel_membership(u: &WittVector) -> KernelReport {
    if !witt_frobenius(u).is_zero() {
        return KernelReport { in_kernel: false, divided_powers: None };
    }
    let ring = &u.ring;
    let f = ring.field();
    let p = ring.p();
    let n = u.len();
    let units = kernel_units(p, n);
    // b_k = γ_{p^k}(a_0)
    let b: Vec<Vec<Fq>> = u
        .comps
        .iter()
        .zip(&units)
        .map(|(a, &unit)| ring.scale(a, f.inv(Fq(unit as u64)).unwrap()))
        .collect();
    let big_n = (p as u64).pow(n as u32) - 1;
    let mut gammas = Vec::with_capacity(big_n as usize + 1);
    for idx in 0..=big_n {
        let mut acc = ring.constant(Fq(gamma_scale(p, idx) as u64));
        let mut rest = idx;
        let mut k = 0;
        while rest > 0 {
            let digit = rest % p as u64;
            acc = ring.mul(&acc, &ring.pow(&b[k], digit));
            rest /= p as u64;
            k += 1;
        }
        gammas.push(acc);
    }
    let seq = DividedPowerSequence::new(ring, &u.comps[0].clone(), gammas).expect("γ_0 = 1, γ_1 = a_0 by construction");
    KernelReport { in_kernel: true, divided_powers: Some(seq) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> TruncRing {
        TruncRing::field_only(&Field::prime(p))
    }

    #[test]
    fn one_plus_one_in_w2_f2() {
        let r = fp(2);
        let u = WittVector::from_ints(&r, &[1, 0]).unwrap();
        assert_eq!(witt_add(&u, &u).unwrap(), WittVector::from_ints(&r, &[0, 1]).unwrap());
    }

    #[test]
    fn teichmuller_plus_shift() {
        let r = fp(5);
        for a in 0..5 {
            for b in 0..5 {
                let s = witt_add(
                    &WittVector::from_ints(&r, &[a, 0]).unwrap(),
                    &WittVector::from_ints(&r, &[0, b]).unwrap(),
                )
                .unwrap();
                assert_eq!(s, WittVector::from_ints(&r, &[a, b]).unwrap());
            }
        }
    }

    #[test]
    fn universal_polys_match_ghost_lift() {
        for (p, n) in [(2u32, 3usize), (3, 3), (5, 2), (2, 4)] {
            let r = fp(p);
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7);
            for _ in 0..40 {
                let a: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p)).collect();
                let b: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p)).collect();
                for op in [WittOp::Add, WittOp::Mul] {
                    let u = WittVector::from_ints(&r, &a.iter().map(|&x| x as i64).collect::<Vec<_>>()).unwrap();
                    let v = WittVector::from_ints(&r, &b.iter().map(|&x| x as i64).collect::<Vec<_>>()).unwrap();
                    let got: Vec<u32> =
                        witt_ring_op(&u, &v, op).unwrap().comps.iter().map(|c| c[0].0 as u32).collect();
                    assert_eq!(got, ghost_lift_reference(p, &a, &b, op), "p={p} {a:?} {b:?} {op:?}");
                }
            }
        }
    }

    #[test]
    fn frobenius_examples() {
        let spec = crate::algebra::field::FieldSpec::extension(2, vec![1, 1, 1]).unwrap();
        let f4 = Field::new(&spec).unwrap();
        let r = TruncRing::field_only(&f4);
        let t = f4.generator().unwrap();
        let u = WittVector::from_field(&r, &[t, Fq::ZERO]).unwrap();
        let expect = WittVector::from_field(&r, &[f4.add(t, Fq::ONE), Fq::ZERO]).unwrap();
        assert_eq!(witt_frobenius(&u), expect);

        let r2 = TruncRing::new(&Field::prime(2), 2).unwrap();
        let e = r2.epsilon();
        let u = WittVector::new(&r2, vec![e.clone(), e]).unwrap();
        assert!(witt_frobenius(&u).is_zero());
    }

    #[test]
    fn verschiebung_frobenius() {
        let r = fp(2);
        let v1 = witt_verschiebung(&WittVector::from_ints(&r, &[1]).unwrap());
        assert_eq!(v1, WittVector::from_ints(&r, &[0, 1]).unwrap());
        let fv = witt_frobenius(&witt_verschiebung(&WittVector::from_ints(&r, &[1, 0]).unwrap()));
        let two = witt_scale_int(&WittVector::from_ints(&r, &[1, 0, 0]).unwrap(), 2).unwrap();
        assert_eq!(fv, two);
    }

    #[test]
    fn kernel_units_are_units() {
        for p in [2u32, 3, 5] {
            let u = kernel_units(p, 3);
            assert_eq!(u[0], 1);
            // u_1 = -(p-1)! = 1 mod p by Wilson
            assert_eq!(u[1], 1);
            assert!(u.iter().all(|&x| x != 0));
        }
    }

    #[test]
    fn kernel_membership_examples() {
        let r2 = TruncRing::new(&Field::prime(2), 2).unwrap();
        let rep = frobenius_kernel_membership(&WittVector::new(&r2, vec![r2.epsilon(), r2.zero()]).unwrap());
        assert!(rep.in_kernel);
        let seq = rep.divided_powers.unwrap();
        assert!(r2.is_zero(&seq.gamma(2)));
        assert!(divided_power_check(&seq).is_valid());

        let rep = frobenius_kernel_membership(&WittVector::from_ints(&fp(2), &[1, 0]).unwrap());
        assert!(!rep.in_kernel);
        let rep = frobenius_kernel_membership(&WittVector::zero(&fp(3), 2));
        assert!(rep.in_kernel && divided_power_check(&rep.divided_powers.unwrap()).is_valid());
    }

    #[test]
    fn divided_power_examples() {
        let r = fp(5);
        let zero = DividedPowerSequence::new(&r, &r.zero(), vec![r.one(), r.zero(), r.zero(), r.zero()]).unwrap();
        assert!(divided_power_check(&zero).is_valid());
        let r2 = TruncRing::new(&Field::prime(3), 2).unwrap();
        let eps = DividedPowerSequence::new(&r2, &r2.epsilon(), vec![r2.one(), r2.epsilon(), r2.zero()]).unwrap();
        assert!(divided_power_check(&eps).is_valid());
        // a = 1 with the forced values 1/n! up to p - 1
        let f = Field::prime(5);
        let mut gammas = vec![r.one()];
        let mut fact = Fq::ONE;
        for n in 1..5 {
            fact = f.mul(fact, f.from_int(n));
            gammas.push(r.constant(f.inv(fact).unwrap()));
        }
        gammas.push(r.zero());
        let one = DividedPowerSequence::new(&r, &r.one(), gammas).unwrap();
        assert_eq!(divided_power_check(&one), PdVerdict::Violation { n: 1, m: 4 });
    }

    #[test]
    fn nilpotence() {
        let r = TruncRing::new(&Field::prime(3), 3).unwrap();
        let e = r.epsilon();
        assert!(nilpotent_components_check(&WittVector::zero(&r, 2)));
        assert!(nilpotent_components_check(&WittVector::new(&r, vec![e.clone(), e.clone()]).unwrap()));
        assert!(!nilpotent_components_check(&WittVector::new(&r, vec![r.one(), e]).unwrap()));
    }
}
