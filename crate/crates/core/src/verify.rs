//! The acceptance suite: ten exact checks, each with a time budget.
//!
//! Every randomized input is drawn from a ChaCha stream seeded by the suite
//! seed and the criterion number, so a run is reproducible from its seed.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::ffroots::SPLITTING_CAP;
use crate::algebra::field::{Field, FieldSpec, Fq};
use crate::algebra::matrix::PolyMatrix;
use crate::algebra::parse::format_poly;
use crate::algebra::poly::DensePoly;
use crate::algebra::ring::Ring;
use crate::dweyl::{central_element_action, centrality_check, DlogElement};
use crate::error::Result;
use crate::logconn::*;
use crate::parabolic::{parabolic_iso_test, random_unimodular, ParabolicModule};
use crate::spectral::*;
use crate::witt::*;

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.elapsed <= self.limit
    }
}

/// `(id, name, time limit in milliseconds)`.
pub const CRITERIA: [(u8, &str, u64); 10] = [
    (1, "flat sections of the rank-one family", 1_000),
    (2, "p-curvature zero iff the counit is an isomorphism", 30_000),
    (3, "solutions of the Frobenius pullback", 60_000),
    (4, "p-curvature characteristic polynomial in k[x^p]", 30_000),
    (5, "residue identity and Artin-Schreier compatibility", 30_000),
    (6, "Frobenius pushforward characteristic polynomial", 10_000),
    (7, "spectral correspondence and nilpotent classification", 30_000),
    (8, "Witt vectors and divided powers", 30_000),
    (9, "centre of the log Weyl algebra", 30_000),
    (10, "Picard twists of spectral modules", 30_000),
];

struct Checker {
    cases: usize,
    failures: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Checker { cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    fn check_result<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", what()));
                None
            }
        }
    }
}

fn rng_for(seed: u64, id: u8) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ id as u64)
}

fn random_divisor<R: Rng>(field: &Field, n: usize, rng: &mut R) -> LogDivisor {
    let mut pts: Vec<Fq> = Vec::new();
    while pts.len() < n {
        let c = field.random(rng);
        if !pts.contains(&c) {
            pts.push(c);
        }
    }
    LogDivisor::new(field, pts).unwrap()
}

fn describe(c: &LogConnection) -> String {
    let rows: Vec<String> = (0..c.rank())
        .map(|i| (0..c.rank()).map(|j| format_poly(c.matrix().get(i, j), "x")).collect::<Vec<_>>().join(", "))
        .collect();
    format!("p={} D={:?} A=[{}]", c.field().p(), c.divisor().points(), rows.join("; "))
}

/// Runs one criterion by number.
pub fn run_criterion(id: u8, seed: u64) -> CriterionReport {
    let (_, name, limit) = CRITERIA[(id - 1) as usize];
    let start = Instant::now();
    let mut ck = Checker::new();
    match id {
        1 => criterion_1(&mut ck),
        2 => criterion_2(&mut ck, seed),
        3 => criterion_3(&mut ck, seed),
        4 => criterion_4(&mut ck, seed),
        5 => criterion_5(&mut ck, seed),
        6 => criterion_6(&mut ck, seed),
        7 => criterion_7(&mut ck, seed),
        8 => criterion_8(&mut ck, seed),
        9 => criterion_9(&mut ck, seed),
        10 => criterion_10(&mut ck, seed),
        _ => ck.check(false, || format!("unknown criterion {id}")),
    }
    CriterionReport {
        id,
        name,
        cases: ck.cases,
        failures: ck.failures,
        elapsed: start.elapsed(),
        limit: Duration::from_millis(limit),
    }
}

pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    CRITERIA.iter().map(|&(id, _, _)| run_criterion(id, seed)).collect()
}

fn family_connections() -> Vec<LogConnection> {
    let mut out = Vec::new();
    for p in [2u32, 3, 5] {
        let f = Field::prime(p);
        for a in 0..p as i64 {
            out.push(LogConnection::nabla_a(&f, a));
        }
    }
    out
}

fn criterion_1(ck: &mut Checker) {
    for c in family_connections() {
        let f = c.field().clone();
        let p = f.p() as usize;
        let a = f.as_prime_int(f.neg(*c.matrix().get(0, 0).coeffs().first().unwrap_or(&Fq::ZERO))).unwrap() as usize;
        let tag = || format!("p={p} a={a}");
        let Some(sol) = ck.check_result(solutions(&c), tag) else { continue };
        ck.check(sol.rank() == 1, || format!("{}: Sol has rank {}", tag(), sol.rank()));
        if sol.rank() != 1 {
            continue;
        }
        let gen = sol.sections(1).get(0, 0).clone();
        let xa = DensePoly::monomial(&f, Fq::ONE, a);
        ck.check(gen == xa, || format!("{}: generator {}", tag(), format_poly(&gen, "x")));
        for j in 0..=p {
            let step = sol.module.step(0, j);
            let lattice_gen = gen.mul(&step.get(0, 0).inflate(p));
            let expected = if j <= a { xa.clone() } else { xa.shift(p) };
            ck.check(step.cols() == 1 && lattice_gen == expected, || {
                format!("{}: F^{j} generated by {}", tag(), format_poly(&lattice_gen, "x"))
            });
        }
        ck.check(sol.module.jumps(0) == vec![a], || format!("{}: jumps {:?}", tag(), sol.module.jumps(0)));
        if let Some(pc) = ck.check_result(p_curvature(&c), tag) {
            ck.check(pc.psi.is_zero(), || format!("{}: nonzero p-curvature", tag()));
        }
        if let Some(r) = ck.check_result(residue_at(&c, 0), tag) {
            ck.check(*r.get(0, 0) == f.from_int(-(a as i64)), || format!("{}: residue {:?}", tag(), r.get(0, 0)));
        }
    }
}

fn random_connections(seed: u64, id: u8, ps: &[u32], ranks: &[usize], per: usize, deg: usize) -> Vec<LogConnection> {
    let mut rng = rng_for(seed, id);
    let mut out = Vec::new();
    for &p in ps {
        let f = Field::prime(p);
        for &r in ranks {
            for k in 0..per {
                let npts = 1 + k % 2;
                let d = random_divisor(&f, npts, &mut rng);
                out.push(LogConnection::random(&d, r, deg, &mut rng));
            }
        }
    }
    out
}

fn random_parabolics(seed: u64, id: u8, ps: &[u32], count: usize) -> Vec<ParabolicModule> {
    let mut rng = rng_for(seed, id ^ 0x40);
    (0..count)
        .map(|k| {
            let f = Field::prime(ps[k % ps.len()]);
            let d = random_divisor(&f, 1 + (k / ps.len()) % 2, &mut rng);
            let rank = 1 + (k / (2 * ps.len())) % 2;
            ParabolicModule::random(&d, rank, &mut rng)
        })
        .collect()
}

fn pulled_back_connections(seed: u64) -> Vec<LogConnection> {
    random_parabolics(seed, 2, &[2, 3], 100)
        .iter()
        .filter_map(|v| frobenius_pullback(v).ok())
        .collect()
}

fn criterion_2_connections(seed: u64) -> Vec<LogConnection> {
    random_connections(seed, 2, &[2, 3], &[1, 2], 100, 2)
}

fn criterion_2(ck: &mut Checker, seed: u64) {
    for c in criterion_2_connections(seed) {
        if let Some(rep) = ck.check_result(cartier_descent_check(&c), || describe(&c)) {
            ck.check(rep.psi_zero == rep.counit_iso, || describe(&c));
        }
    }
    let constructed = pulled_back_connections(seed);
    ck.check(constructed.len() == 100, || format!("only {} pullbacks were built", constructed.len()));
    for c in constructed {
        if let Some(rep) = ck.check_result(cartier_descent_check(&c), || describe(&c)) {
            ck.check(rep.psi_zero && rep.counit_iso, || format!("pullback {}: {rep:?}", describe(&c)));
        }
    }
}

fn criterion_3_connections(seed: u64) -> Vec<(ParabolicModule, Option<LogConnection>)> {
    random_parabolics(seed, 3, &[2, 3, 5], 50)
        .into_iter()
        .map(|v| {
            let c = frobenius_pullback(&v).ok();
            (v, c)
        })
        .collect()
}

fn criterion_3(ck: &mut Checker, seed: u64) {
    for (v, c) in criterion_3_connections(seed) {
        let tag = || format!("p={} rank={} D={:?}", v.field().p(), v.rank(), v.divisor().points());
        let Some(c) = c else {
            ck.check(false, || format!("{}: pullback failed", tag()));
            continue;
        };
        let Some(sol) = ck.check_result(solutions(&c), tag) else { continue };
        if let Some(iso) = ck.check_result(parabolic_iso_test(&sol.module, &v), tag) {
            ck.check(iso.isomorphic, || format!("{}: Sol(ν*V) is not isomorphic to V", tag()));
        }
    }
}

fn criterion_4_connections(seed: u64) -> Vec<LogConnection> {
    random_connections(seed, 4, &[2, 3, 5], &[1, 2, 3], 100, 2)
}

fn criterion_4(ck: &mut Checker, seed: u64) {
    for c in criterion_4_connections(seed) {
        if let Some((_, ok)) = ck.check_result(laszlo_pauly_check(&c), || describe(&c)) {
            ck.check(ok, || describe(&c));
        }
    }
}

fn criterion_5_connections(seed: u64) -> Vec<LogConnection> {
    let mut rng = rng_for(seed, 5);
    (0..50)
        .map(|k| {
            let f = Field::prime([2, 3, 5][k % 3]);
            let d = random_divisor(&f, 1 + (k / 3) % 2, &mut rng);
            let r = 1 + (k / 6) % 2;
            LogConnection::random(&d, r, 2, &mut rng)
        })
        .collect()
}

fn criterion_5(ck: &mut Checker, seed: u64) {
    for c in criterion_5_connections(seed) {
        let Some(points) = ck.check_result(dcz_point_check(&c), || describe(&c)) else { continue };
        for pt in points {
            ck.check(pt.residue_identity, || format!("{} at point {}: ψ ≠ R^p - R", describe(&c), pt.index));
            ck.check(pt.artin_schreier == pt.psi_charpoly, || {
                format!("{} at point {}: AS(res) ≠ charpoly(ψ)", describe(&c), pt.index)
            });
        }
    }
}

fn criterion_6(ck: &mut Checker, seed: u64) {
    let f2 = Field::prime(2);
    let d = LogDivisor::origin(&f2);
    let h = HiggsPair::new(&d, PolyMatrix::from_int_rows(&f2, &[&[&[0, 1]]])).unwrap();
    if let Some(fp) = ck.check_result(frobenius_pushforward_higgs(&h), || "worked example".into()) {
        let expected = PolyMatrix::from_int_rows(&f2, &[&[&[], &[0, 1]], &[&[1], &[]]]);
        ck.check(fp.matrix == expected, || "F_*[x] is not [[0, y], [1, 0]]".into());
        let lambda2_minus_y = HitchinPoint { coeffs: vec![DensePoly::zero(&f2), DensePoly::from_ints(&f2, &[0, -1])] };
        ck.check(fp.hitchin == lambda2_minus_y, || format!("charpoly {:?}", fp.hitchin));
        ck.check(fp.agrees(), || "worked example: charpoly is not a^2".into());
    }
    let mut rng = rng_for(seed, 6);
    for k in 0..50 {
        let f = Field::prime([2, 3][k % 2]);
        let d = LogDivisor::origin(&f);
        let r = 1 + (k / 2) % 2;
        let theta = PolyMatrix::from_fn(r, r, |_, _| DensePoly::random(&f, 2, &mut rng));
        let h = HiggsPair::new(&d, theta).unwrap();
        if let Some(fp) = ck.check_result(frobenius_pushforward_higgs(&h), || format!("case {k}")) {
            ck.check(fp.agrees(), || format!("case {k}: charpoly(F_*Θ) ≠ a^p"));
        }
    }
}

/// The two rank-one torsion-free modules over `k[x, t]/(t^2)` and the two
/// nilpotent Higgs fields, matched through the spectral correspondence.
fn nilpotent_classification(ck: &mut Checker) {
    let f = Field::prime(3);
    let d = LogDivisor::origin(&f);
    let t2 = crate::algebra::bipoly::BiPoly::new(&f, vec![DensePoly::zero(&f), DensePoly::zero(&f), DensePoly::one(&f)]);
    let structure = SpectralModule::ring(&t2).unwrap();
    // k[x] ⊕ k[x] with t (f, g) = (0, f)
    let shifted =
        SpectralModule::new(t2.clone(), PolyMatrix::from_int_rows(&f, &[&[&[], &[]], &[&[1], &[]]])).unwrap();
    let killed = SpectralModule::new(t2.clone(), PolyMatrix::poly_zeros(&f, 2, 2)).unwrap();
    let one = Some(Ratio::from_integer(1));
    for (name, m) in [("structure sheaf", &structure), ("t-shift module", &shifted), ("t = 0 module", &killed)] {
        if let Some(r) = ck.check_result(torsion_free_rank_check(m), || name.into()) {
            ck.check(r == (true, one), || format!("{name}: torsion-free rank {r:?}"));
        }
    }
    let half = SpectralModule::new(t2.clone(), PolyMatrix::poly_zeros(&f, 1, 1)).unwrap();
    if let Some(r) = ck.check_result(torsion_free_rank_check(&half), || "k[x] with t = 0".into()) {
        ck.check(r.1 == Some(Ratio::new(1, 2)), || format!("k[x] with t = 0 has rank {:?}", r.1));
    }
    let reg = |m: &SpectralModule| regularity_check(m, SPLITTING_CAP).map(|r| r.regular);
    if let (Some(a), Some(b)) = (
        ck.check_result(reg(&structure), || "regularity".into()),
        ck.check_result(reg(&killed), || "regularity".into()),
    ) {
        ck.check(a && !b, || format!("regularity verdicts {a} and {b}"));
    }
    let nil = HiggsPair::new(&d, PolyMatrix::from_int_rows(&f, &[&[&[], &[1]], &[&[], &[]]])).unwrap();
    let zero = HiggsPair::new(&d, PolyMatrix::poly_zeros(&f, 2, 2)).unwrap();
    let conj = |a: &PolyMatrix, b: &PolyMatrix| conjugacy_test(a, b);
    if let (Some(fn_), Some(fz)) = (
        ck.check_result(bnr_forward(&nil), || "forward of the regular nilpotent".into()),
        ck.check_result(bnr_forward(&zero), || "forward of zero".into()),
    ) {
        let a = conj(fn_.lambda_action(), structure.lambda_action());
        ck.check(matches!(a, Ok(Conjugacy::Conjugate(_))), || format!("regular nilpotent vs structure sheaf: {a:?}"));
        let b = conj(structure.lambda_action(), shifted.lambda_action());
        ck.check(matches!(b, Ok(Conjugacy::Conjugate(_))), || format!("structure sheaf vs t-shift module: {b:?}"));
        ck.check(fz == killed, || "zero Higgs field does not give the t = 0 module".into());
        let c = conj(&nil.theta, &zero.theta);
        ck.check(c == Ok(Conjugacy::NotConjugate), || format!("nilpotent classes not separated: {c:?}"));
        if let (Some(hs), Some(hk)) = (
            ck.check_result(bnr_inverse(&structure, &d), || "inverse of the structure sheaf".into()),
            ck.check_result(bnr_inverse(&killed, &d), || "inverse of the t = 0 module".into()),
        ) {
            let e = conj(&hs.theta, &nil.theta);
            ck.check(matches!(e, Ok(Conjugacy::Conjugate(_))), || format!("structure sheaf maps to {e:?}"));
            ck.check(hk.theta.is_zero(), || "t = 0 module does not map to the zero field".into());
        }
    }
}

fn criterion_7(ck: &mut Checker, seed: u64) {
    nilpotent_classification(ck);
    let mut rng = rng_for(seed, 7);
    for k in 0..50 {
        let f = Field::prime([2, 3, 5][k % 3]);
        let d = random_divisor(&f, 1 + (k / 3) % 2, &mut rng);
        let r = 1 + (k / 6) % 2;
        let theta = PolyMatrix::from_fn(r, r, |_, _| DensePoly::random(&f, 2, &mut rng));
        let h = HiggsPair::new(&d, theta).unwrap();
        let tag = || format!("pair {k}");
        let Some(s) = ck.check_result(bnr_forward(&h), tag) else { continue };
        let g = random_unimodular(&f, r, 1, &mut rng);
        let Some(moved) = ck.check_result(s.change_basis(&g), tag) else { continue };
        let Some(back) = ck.check_result(bnr_inverse(&moved, &d), tag) else { continue };
        let verdict = conjugacy_test(&back.theta, &h.theta);
        ck.check(matches!(verdict, Ok(Conjugacy::Conjugate(_))), || format!("{}: {verdict:?}", tag()));
    }
}

fn criterion_8(ck: &mut Checker, seed: u64) {
    // ring axioms on all of W_2(F_2) and W_2(F_3)
    for p in [2u32, 3] {
        let ring = TruncRing::field_only(&Field::prime(p));
        let elems: Vec<WittVector> = (0..p * p)
            .map(|i| WittVector::from_ints(&ring, &[(i % p) as i64, (i / p) as i64]).unwrap())
            .collect();
        let zero = WittVector::zero(&ring, 2);
        let one = WittVector::one(&ring, 2);
        let mut ok = true;
        for a in &elems {
            ok &= witt_add(a, &zero).unwrap() == *a && witt_mul(a, &one).unwrap() == *a;
            ok &= witt_add(a, &witt_neg(a).unwrap()).unwrap() == zero;
            for b in &elems {
                let ab = witt_add(a, b).unwrap();
                ok &= ab == witt_add(b, a).unwrap();
                ok &= witt_mul(a, b).unwrap() == witt_mul(b, a).unwrap();
                for c in &elems {
                    ok &= witt_add(&ab, c).unwrap() == witt_add(a, &witt_add(b, c).unwrap()).unwrap();
                    let abm = witt_mul(a, b).unwrap();
                    ok &= witt_mul(&abm, c).unwrap() == witt_mul(a, &witt_mul(b, c).unwrap()).unwrap();
                    let lhs = witt_mul(a, &witt_add(b, c).unwrap()).unwrap();
                    let rhs = witt_add(&abm, &witt_mul(a, c).unwrap()).unwrap();
                    ok &= lhs == rhs;
                }
            }
        }
        ck.check(ok, || format!("ring axioms fail on W_2(F_{p})"));
    }
    // F V = p and V(x) y = V(x F(y))
    let mut rng = rng_for(seed, 8);
    for k in 0..100 {
        let p = [2u32, 3, 5][k % 3];
        let field = Field::prime(p);
        let ring = if k % 2 == 0 { TruncRing::field_only(&field) } else { TruncRing::new(&field, 2).unwrap() };
        let n = 3;
        let u = WittVector::random(&ring, n - 1, &mut rng);
        let fv = witt_frobenius(&witt_verschiebung(&u));
        let pu = witt_scale_int(&u.extend_to(n), p as u64).unwrap();
        ck.check(fv == pu, || format!("F V ≠ p on W_{n} over F_{p}"));
        let x = WittVector::random(&ring, n - 1, &mut rng);
        let y = WittVector::random(&ring, n, &mut rng);
        let lhs = witt_mul(&witt_verschiebung(&x), &y).unwrap();
        let rhs = witt_verschiebung(&witt_mul(&x, &witt_frobenius(&y).truncate(n - 1)).unwrap());
        ck.check(lhs == rhs, || format!("V(x) y ≠ V(x F(y)) over F_{p}"));
    }
    // kernel of Frobenius carries divided powers; Lucas relation on them
    for k in 0..60 {
        let p = [2u32, 3, 5][k % 3];
        let field = match (p, k % 2) {
            (2, 1) => Field::new(&FieldSpec { p, ext_modulus: Some(vec![1, 1, 1]) }).unwrap(),
            (3, 1) => Field::new(&FieldSpec { p, ext_modulus: Some(vec![1, 0, 1]) }).unwrap(),
            _ => Field::prime(p),
        };
        let ring = TruncRing::new(&field, p as usize).unwrap();
        let len = if p == 5 { 2 } else { 2 + k % 2 };
        let comps: Vec<Vec<Fq>> = (0..len)
            .map(|_| {
                let mut e = ring.random(&mut rng);
                e[0] = Fq::ZERO;
                e
            })
            .collect();
        let u = WittVector::new(&ring, comps).unwrap();
        let rep = frobenius_kernel_membership(&u);
        ck.check(rep.in_kernel, || "nilpotent Witt vector outside the Frobenius kernel".into());
        let Some(seq) = rep.divided_powers else { continue };
        ck.check(divided_power_check(&seq).is_valid(), || format!("extracted divided powers invalid over F_{p}"));
        let top = seq.cutoff() / p as usize;
        for n in 0..=top {
            for m in 0..=top - n {
                let plain = small_binomial_mod(n + m, n, p);
                let lucas = binomial_mod_p((p as usize * (n + m)) as u64, (p as usize * n) as u64, p);
                let big = big_binomial_mod(p as usize * (n + m), p as usize * n, p);
                ck.check(plain == lucas && lucas == big, || format!("C({}, {}) mod {p}", p as usize * (n + m), p as usize * n));
                let lhs = ring.mul(&seq.gamma(p as usize * n), &seq.gamma(p as usize * m));
                let rhs = ring.scale(&seq.gamma(p as usize * (n + m)), Fq(plain as u64));
                ck.check(lhs == rhs, || format!("γ_(p{n}) γ_(p{m}) relation fails over F_{p}"));
            }
        }
    }
    for k in 0..30 {
        let p = [2u32, 3, 5][k % 3];
        let ring = TruncRing::new(&Field::prime(p), 2).unwrap();
        let u = WittVector::new(&ring, vec![ring.constant(Fq::ONE), ring.random(&mut rng)]).unwrap();
        ck.check(!frobenius_kernel_membership(&u).in_kernel, || "unit leading component in the kernel".into());
    }
    // no divided powers on a nonzero element of F_p
    for p in [2u32, 3, 5] {
        let field = Field::prime(p);
        let ring = TruncRing::field_only(&field);
        for a in 1..p {
            for cutoff in 1..=p as usize {
                let free = cutoff - 1;
                let total = (p as u64).pow(free as u32);
                let mut rejected = true;
                for idx in 0..total {
                    let mut gammas = vec![ring.one(), ring.constant(Fq(a as u64))];
                    let mut v = idx;
                    for _ in 0..free {
                        gammas.push(ring.constant(Fq(v % p as u64)));
                        v /= p as u64;
                    }
                    let seq = DividedPowerSequence::new(&ring, &ring.constant(Fq(a as u64)), gammas).unwrap();
                    rejected &= !divided_power_check(&seq).is_valid();
                }
                ck.check(rejected, || format!("a candidate divided power structure on {a} in F_{p} passed"));
            }
        }
    }
    let zero_seq = DividedPowerSequence::new(
        &TruncRing::field_only(&Field::prime(3)),
        &[Fq::ZERO],
        vec![vec![Fq::ONE], vec![Fq::ZERO], vec![Fq::ZERO]],
    )
    .unwrap();
    ck.check(divided_power_check(&zero_seq).is_valid(), || "zero has no divided powers".into());
}

fn small_binomial_mod(n: usize, k: usize, p: u32) -> u32 {
    big_binomial_mod(n, k, p)
}

fn big_binomial_mod(n: usize, k: usize, p: u32) -> u32 {
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    let c = num / den;
    (c % BigUint::from(p)).try_into().unwrap()
}

fn criterion_9(ck: &mut Checker, seed: u64) {
    let mut rng = rng_for(seed, 9);
    for p in [2u32, 3, 5] {
        let f = Field::prime(p);
        for n in 1..=2 {
            let d = random_divisor(&f, n, &mut rng);
            let Some(zeta) = ck.check_result(DlogElement::zeta(&d), || format!("ζ for p={p}")) else { continue };
            let xp = DlogElement::x_p(&d);
            ck.check(centrality_check(&zeta), || format!("θ^p - cθ not central, p={p} D={:?}", d.points()));
            ck.check(centrality_check(&xp), || format!("x^p not central, p={p}"));
            ck.check(!centrality_check(&DlogElement::theta(&d)), || format!("θ central, p={p}"));
            for _ in 0..20 {
                let mut e = DlogElement::zero(&d);
                for i in 0..2 {
                    for j in 0..2 {
                        let c = f.random(&mut rng);
                        let t = xp.pow(i).mul(&zeta.pow(j)).unwrap().scale(c);
                        e = e.add(&t);
                    }
                }
                ck.check(centrality_check(&e), || format!("central polynomial not central, p={p}"));
            }
        }
    }
    let mut all = family_connections();
    all.extend(criterion_2_connections(seed));
    all.extend(pulled_back_connections(seed));
    all.extend(criterion_3_connections(seed).into_iter().filter_map(|(_, c)| c));
    all.extend(criterion_4_connections(seed));
    all.extend(criterion_5_connections(seed));
    for c in all {
        let (Some(z), Some(pc)) = (
            ck.check_result(central_element_action(&c), || describe(&c)),
            ck.check_result(p_curvature(&c), || describe(&c)),
        ) else {
            continue;
        };
        ck.check(z == pc.psi, || format!("ζ action ≠ p-curvature for {}", describe(&c)));
    }
}

fn criterion_10(ck: &mut Checker, seed: u64) {
    let mut rng = rng_for(seed, 10);
    for k in 0..20 {
        let p = [2u32, 3][k % 2];
        let f = Field::prime(p);
        let d = LogDivisor::origin(&f);
        let s = if k % 4 == 3 {
            let c = LogConnection::random(&d, 1, 1, &mut rng);
            de_rham_spectral(&c)
        } else {
            let r = 1 + (k / 2) % 2;
            let theta = PolyMatrix::from_fn(r, r, |_, _| DensePoly::random(&f, 2, &mut rng));
            bnr_forward(&HiggsPair::new(&d, theta).unwrap())
        };
        let tag = || format!("case {k}");
        let Some(s) = ck.check_result(s, tag) else { continue };
        let n = s.base().degree().unwrap();
        let g = random_unimodular(&f, n, 1, &mut rng);
        let Some(line) = ck.check_result(SpectralModule::ring(s.base()).and_then(|l| l.change_basis(&g)), tag) else {
            continue;
        };
        let Some(t) = ck.check_result(picard_twist(&s, &line), tag) else { continue };
        let ring = crate::algebra::ring::PolyRing::new(&f);
        let same_point = t.base() == s.base()
            && t.lambda_action().charpoly_in(&ring).ok() == s.lambda_action().charpoly_in(&ring).ok();
        ck.check(same_point, || format!("{}: Hitchin point changed", tag()));
        let (r1, r2) = (torsion_free_rank_check(&s), torsion_free_rank_check(&t));
        ck.check(r1.is_ok() && r1.ok() == r2.ok(), || format!("{}: torsion-free rank changed", tag()));
        let (g1, g2) = (regularity_check(&s, SPLITTING_CAP), regularity_check(&t, SPLITTING_CAP));
        match (g1, g2) {
            (Ok(a), Ok(b)) => ck.check(a.regular == b.regular, || format!("{}: regularity changed", tag())),
            (a, b) => ck.check(false, || format!("{}: regularity failed: {:?} {:?}", tag(), a.err(), b.err())),
        }
    }
}
