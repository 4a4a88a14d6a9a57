//! Higgs fields and their spectral data on the affine chart.
//!
//! A spectral module over `R_a = k[x, λ]/(a(λ))` is stored as a free
//! `k[x]`-lattice `k[x]^m` with `λ` acting by a matrix `L`, `a(L) = 0`.
//! Ranks over `R_a` are read off from characteristic polynomials and local
//! freeness from Fitting ideals of `λ I - L`.

use num_rational::Ratio;

use crate::algebra::bipoly::{discriminant, resultant, BiPoly, BiPolyRing};
use crate::algebra::ffroots::{distinct_roots, SplittingField};
use crate::algebra::field::{Field, Fq};
use crate::algebra::hermite::{column_hermite, column_reduce, hermite_kernel_in, hnf, is_submodule, rank, solve_hermite};
use crate::algebra::linalg;
use crate::algebra::matrix::{Matrix, PolyMatrix};
use crate::algebra::parse::format_elem;
use crate::algebra::poly::DensePoly;
use crate::algebra::ring::PolyRing;
use crate::error::{Error, Result};
use crate::logconn::{
    laszlo_pauly_check, normalized_psi_at, p_curvature, residue_at, residue_charpoly_at, to_frobenius_coords,
    LogConnection, LogDivisor,
};

/// A Higgs field `Θ: E → E ⊗ ω` on `E = O^r`, in the `dx/q` trivialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiggsPair {
    pub divisor: LogDivisor,
    pub theta: PolyMatrix,
}

impl HiggsPair {
    pub fn new(divisor: &LogDivisor, theta: PolyMatrix) -> Result<Self> {
        if theta.rows() == 0 || !theta.is_square() {
            return Err(Error::InvalidSpectral("Higgs field must be a nonempty square matrix".into()));
        }
        if theta.entries().iter().any(|f| f.field() != divisor.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(HiggsPair { divisor: divisor.clone(), theta })
    }

    pub fn field(&self) -> &Field {
        self.divisor.field()
    }

    pub fn rank(&self) -> usize {
        self.theta.rows()
    }
}

/// Coefficients `a_1, ..., a_r` of `λ^r + a_1 λ^{r-1} + ... + a_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HitchinPoint {
    pub coeffs: Vec<DensePoly>,
}

impl HitchinPoint {
    /// From ascending coefficients of a monic polynomial in `λ`.
    pub fn from_charpoly(c: &[DensePoly]) -> Self {
        let r = c.len() - 1;
        HitchinPoint { coeffs: (1..=r).map(|i| c[r - i].clone()).collect() }
    }

    pub fn from_bipoly(a: &BiPoly) -> Self {
        HitchinPoint { coeffs: a.hitchin_coeffs() }
    }

    pub fn to_bipoly(&self, field: &Field) -> BiPoly {
        let r = self.coeffs.len();
        let mut c: Vec<DensePoly> = (0..r).map(|k| self.coeffs[r - 1 - k].clone()).collect();
        c.push(DensePoly::one(field));
        BiPoly::new(field, c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }
}

/// `k[x]^m` with `λ` acting by `l`, over the spectral ring of `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralModule {
    base: BiPoly,
    l: PolyMatrix,
}

impl SpectralModule {
    pub fn new(base: BiPoly, l: PolyMatrix) -> Result<Self> {
        if !base.is_monic() || base.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidSpectral("base must be monic of positive degree in λ".into()));
        }
        if !l.is_square() || l.rows() == 0 {
            return Err(Error::InvalidSpectral("λ-action must be a nonempty square matrix".into()));
        }
        if !base.eval_matrix(&l).is_zero() {
            return Err(Error::InvalidSpectral("the λ-action is not annihilated by the base polynomial".into()));
        }
        Ok(SpectralModule { base, l })
    }

    /// The spectral ring itself, with `k[x]`-basis `1, λ, ..., λ^{n-1}`.
    pub fn ring(base: &BiPoly) -> Result<Self> {
        SpectralModule::new(base.clone(), companion(base))
    }

    pub fn field(&self) -> &Field {
        self.base.field()
    }

    pub fn base(&self) -> &BiPoly {
        &self.base
    }

    pub fn lambda_action(&self) -> &PolyMatrix {
        &self.l
    }

    pub fn lattice_rank(&self) -> usize {
        self.l.rows()
    }

    /// Same module written in the basis given by the columns of `g ∈ GL_m(k[x])`.
    pub fn change_basis(&self, g: &PolyMatrix) -> Result<Self> {
        let ring = PolyRing::new(self.field());
        let det = g.det_in(&ring)?;
        if !det.is_constant() || det.is_zero() {
            return Err(Error::InvalidSpectral("change of basis is not invertible over k[x]".into()));
        }
        let dinv = self.field().inv(det.constant_term()).unwrap();
        let ginv = g.adjugate_in(&ring)?.scale_in(&ring, &DensePoly::constant(self.field(), dinv));
        SpectralModule::new(self.base.clone(), ginv.mul_in(&ring, &self.l).mul_in(&ring, g))
    }
}

/// Companion matrix of a monic polynomial in `λ`: `λ^j ↦ λ^{j+1}`.
pub fn companion(a: &BiPoly) -> PolyMatrix {
    let field = a.field();
    let n = a.degree().unwrap_or(0);
    PolyMatrix::from_fn(n, n, |i, j| {
        if j + 1 < n {
            if i == j + 1 {
                DensePoly::one(field)
            } else {
                DensePoly::zero(field)
            }
        } else {
            a.coeff(i).neg()
        }
    })
}

fn charpoly_bipoly(m: &PolyMatrix) -> Result<BiPoly> {
    let field = m.entries()[0].field().clone();
    Ok(BiPoly::new(&field, m.charpoly_in(&PolyRing::new(&field))?))
}

/// Hitchin point of a Higgs field.
pub fn higgs_charpoly(h: &HiggsPair) -> Result<HitchinPoint> {
    Ok(HitchinPoint::from_bipoly(&charpoly_bipoly(&h.theta)?))
}

/// The spectral module of a Higgs field over its own characteristic polynomial.
pub fn bnr_forward(h: &HiggsPair) -> Result<SpectralModule> {
    let a = charpoly_bipoly(&h.theta)?;
    SpectralModule::new(a, h.theta.clone())
}

/// Lattices are torsion-free; the rank over the spectral ring is `ρ` with
/// `charpoly(L) = a^ρ`, or `None` when the rank differs between components.
pub fn torsion_free_rank_check(s: &SpectralModule) -> Result<(bool, Option<Ratio<usize>>)> {
    let cp = charpoly_bipoly(&s.l)?;
    let rho = Ratio::new(s.lattice_rank(), s.base.degree().unwrap());
    let (num, den) = (*rho.numer() as u64, *rho.denom() as u64);
    let uniform = cp.pow(den) == s.base.pow(num);
    Ok((true, uniform.then_some(rho)))
}

/// Recovers the Higgs field from a rank-one spectral module.
pub fn bnr_inverse(s: &SpectralModule, divisor: &LogDivisor) -> Result<HiggsPair> {
    match torsion_free_rank_check(s)? {
        (true, Some(r)) if r == Ratio::from_integer(1) => HiggsPair::new(divisor, s.l.clone()),
        (_, r) => Err(Error::InvalidSpectral(format!(
            "spectral module has rank {} over the spectral ring (need 1)",
            r.map_or("non-uniform".to_string(), |r| r.to_string())
        ))),
    }
}

fn lambda_minus(l: &PolyMatrix) -> Matrix<BiPoly> {
    let field = l.entries()[0].field().clone();
    Matrix::from_fn(l.rows(), l.cols(), |i, j| {
        let c = BiPoly::constant(&l.get(i, j).neg());
        if i == j {
            c.add(&BiPoly::lambda(&field))
        } else {
            c
        }
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `k × k` minors of `λ I - L`, reduced modulo the base.
fn minors_mod(s: &SpectralModule, k: usize) -> Result<Vec<BiPoly>> {
    let field = s.field();
    let m = s.lattice_rank();
    if k == 0 {
        return Ok(vec![BiPoly::one(field)]);
    }
    let big = lambda_minus(&s.l);
    let ring = BiPolyRing::new(field);
    let subsets = combinations(m, k);
    let mut out = Vec::new();
    for rows in &subsets {
        for cols in &subsets {
            let d = big.submatrix(rows, cols).det_in(&ring)?;
            let d = d.rem_monic(&s.base);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// Whether the elements generate the unit ideal of `R_a`.
fn generates_unit_ideal(base: &BiPoly, gens: &[BiPoly]) -> bool {
    let field = base.field();
    let n = base.degree().unwrap();
    let lam = BiPoly::lambda(field);
    let mut cols = Vec::new();
    for g in gens {
        let mut cur = g.clone();
        for _ in 0..n {
            cols.push((0..n).map(|i| cur.coeff(i)).collect::<Vec<_>>());
            cur = cur.mul(&lam).rem_monic(base);
        }
    }
    if cols.is_empty() {
        return false;
    }
    hnf(&PolyMatrix::from_columns(n, &cols)) == PolyMatrix::poly_identity(field, n)
}

/// Fiber dimension `dim M / (x - c, λ - β) M` at a closed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberDimension {
    pub x: String,
    pub lambda: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub regular: bool,
    pub rank: Option<Ratio<usize>>,
    /// Fiber dimensions over the roots of the discriminant (over the points
    /// of the prime field when the discriminant vanishes identically).
    pub fibers: Vec<FiberDimension>,
}

/// Local freeness of constant rank over the spectral ring, decided by the
/// Fitting ideals `Fitt_{ρ-1} = 0` and `Fitt_ρ = R_a`; fiber dimensions over
/// the branch locus are reported alongside and must agree.
pub fn regularity_check(s: &SpectralModule, cap: usize) -> Result<RegularityReport> {
    let (_, rank) = torsion_free_rank_check(s)?;
    let m = s.lattice_rank();
    let regular = match rank {
        Some(r) if r.is_integer() => {
            let rho = r.to_integer();
            minors_mod(s, m - rho + 1)?.is_empty() && generates_unit_ideal(&s.base, &minors_mod(s, m - rho)?)
        }
        _ => false,
    };
    let fibers = branch_fibers(s, cap)?;
    if regular {
        let rho = rank.unwrap().to_integer();
        if let Some(f) = fibers.iter().find(|f| f.dim != rho) {
            return Err(Error::Internal(format!(
                "locally free module has fiber dimension {} at ({}, {})",
                f.dim, f.x, f.lambda
            )));
        }
    }
    Ok(RegularityReport { regular, rank, fibers })
}

fn branch_fibers(s: &SpectralModule, cap: usize) -> Result<Vec<FiberDimension>> {
    let field = s.field();
    let disc = discriminant(&s.base)?;
    let mut out = Vec::new();
    if disc.is_zero() {
        for c in (0..field.p() as i64).map(|c| field.from_int(c)) {
            let a_c = s.base.eval_x(c);
            for beta in distinct_roots(&a_c) {
                let mut mat = s.l.eval_at(c);
                for i in 0..mat.rows() {
                    let v = field.sub(*mat.get(i, i), beta);
                    mat.set(i, i, v);
                }
                out.push(FiberDimension {
                    x: format_elem(field, c),
                    lambda: format_elem(field, beta),
                    dim: mat.rows() - linalg::rank(field, &mat),
                });
            }
        }
        return Ok(out);
    }
    if disc.is_constant() {
        return Ok(out);
    }
    let k1 = SplittingField::of(&disc, cap)?;
    for (c, _) in k1.roots(&disc) {
        let a_c = s.base.coeffs().iter().map(|f| k1.embed_poly(f).eval(c)).collect::<Vec<_>>();
        let a_c = DensePoly::new(&k1.ext, a_c);
        let k2 = SplittingField::of(&a_c, cap)?;
        let l_c = s.l.map(|f| k2.embed(k1.embed_poly(f).eval(c)));
        let big = &k2.ext;
        for (beta, _) in k2.roots(&a_c) {
            let mut mat = l_c.clone();
            for i in 0..mat.rows() {
                let v = big.sub(*mat.get(i, i), beta);
                mat.set(i, i, v);
            }
            out.push(FiberDimension {
                x: format_elem(big, k2.embed(c)),
                lambda: format_elem(big, beta),
                dim: mat.rows() - linalg::rank(big, &mat),
            });
        }
    }
    Ok(out)
}

/// Outcome of a conjugacy test over `k[x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjugacy {
    /// `X` with `X^{-1} t2 X = t1`.
    Conjugate(PolyMatrix),
    NotConjugate,
    /// Conjugate over `k(x)` but no invertible intertwiner was found.
    Inconclusive,
}

/// Number of candidate intertwiners examined before giving up.
pub const CONJUGACY_BUDGET: u64 = 200_000;

fn vec_operator(ring: &PolyRing, a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    // column-major vec(X) for the map X ↦ a X - X b
    let n = a.rows();
    let ident = PolyMatrix::poly_identity(&ring.field, n);
    ident.kron_in(ring, a).sub_in(ring, &b.transpose().kron_in(ring, &ident))
}

/// Decides conjugacy of two square matrices over `k[x]`: similarity over
/// `k(x)` by the rank criterion of Byrnes and Gauger, then a search for an
/// intertwiner of unit determinant.
pub fn conjugacy_test(t1: &PolyMatrix, t2: &PolyMatrix) -> Result<Conjugacy> {
    if t1.rows() != t2.rows() || !t1.is_square() || !t2.is_square() {
        return Err(Error::Dimension("conjugacy test needs square matrices of one size".into()));
    }
    let field = t1.entries()[0].field().clone();
    let ring = PolyRing::new(&field);
    if t1.charpoly_in(&ring)? != t2.charpoly_in(&ring)? {
        return Ok(Conjugacy::NotConjugate);
    }
    let op = vec_operator(&ring, t2, t1);
    let r11 = rank(&vec_operator(&ring, t1, t1));
    let r22 = rank(&vec_operator(&ring, t2, t2));
    if r11 != r22 || rank(&op) != r11 {
        return Ok(Conjugacy::NotConjugate);
    }
    let n = t1.rows();
    let basis = column_reduce(&field, &hermite_kernel_in(&field, &op)).columns();
    let degs: Vec<usize> = basis.iter().map(|c| c.iter().filter_map(|e| e.degree()).max().unwrap_or(0)).collect();
    let unvec = |v: &[DensePoly]| PolyMatrix::from_fn(n, n, |i, j| v[j * n + i].clone());
    let elems: Vec<Fq> = field.elements().collect();
    let q = elems.len() as u64;
    // In a column-reduced basis an intertwiner of degree <= d only involves
    // coefficients c_i of degree <= d - deg b_i, so each level is exhaustive.
    let mut spent = 0u64;
    let min_deg = degs.iter().copied().min().unwrap_or(0);
    for d in min_deg.. {
        let slots: Vec<(usize, usize)> = (0..basis.len())
            .filter(|&i| degs[i] <= d)
            .flat_map(|i| (0..=d - degs[i]).map(move |e| (i, e)))
            .collect();
        let count = q.checked_pow(slots.len() as u32).filter(|&c| spent + c <= CONJUGACY_BUDGET);
        let Some(count) = count else { break };
        spent += count;
        for idx in 1..count {
            let mut v = vec![DensePoly::zero(&field); n * n];
            let mut rest = idx;
            for &(i, e) in &slots {
                let c = elems[(rest % q) as usize];
                rest /= q;
                if c != Fq::ZERO {
                    let m = DensePoly::monomial(&field, c, e);
                    for (vk, bk) in v.iter_mut().zip(&basis[i]) {
                        *vk = vk.add(&bk.mul(&m));
                    }
                }
            }
            let x = unvec(&v);
            let det = x.det_in(&ring)?;
            if det.is_constant() && !det.is_zero() {
                return Ok(Conjugacy::Conjugate(x));
            }
        }
    }
    Ok(Conjugacy::Inconclusive)
}

/// Matrix over `k[y]` of the `k[y]`-linear map `s ↦ M s` on `k[x]^r` in the
/// basis `x^j e_k`.
pub fn frobenius_pushforward_matrix(m: &PolyMatrix) -> PolyMatrix {
    let field = m.entries()[0].field().clone();
    let ring = PolyRing::new(&field);
    let p = field.p() as usize;
    let r = m.rows();
    let mut cols = Vec::with_capacity(p * r);
    for j in 0..p {
        for k in 0..r {
            let mut s = vec![DensePoly::zero(&field); r];
            s[k] = DensePoly::monomial(&field, Fq::ONE, j);
            cols.push(to_frobenius_coords(&m.mul_vec_in(&ring, &s), p));
        }
    }
    PolyMatrix::from_columns(p * r, &cols)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusPushforward {
    /// `pr × pr` over `k[y]`.
    pub matrix: PolyMatrix,
    /// Hitchin point of `matrix`, over `k[y]`.
    pub hitchin: HitchinPoint,
    /// `a(λ)^p` rewritten over `k[y]`.
    pub expected: HitchinPoint,
}

impl FrobeniusPushforward {
    pub fn agrees(&self) -> bool {
        self.hitchin == self.expected
    }
}

/// `F_* Θ` and its characteristic polynomial, compared with `a^p`.
pub fn frobenius_pushforward_higgs(h: &HiggsPair) -> Result<FrobeniusPushforward> {
    let p = h.field().p() as usize;
    let matrix = frobenius_pushforward_matrix(&h.theta);
    let hitchin = HitchinPoint::from_bipoly(&charpoly_bipoly(&matrix)?);
    let a = charpoly_bipoly(&h.theta)?;
    let ap = a
        .pow(p as u64)
        .deflate_x(p)
        .ok_or_else(|| Error::Internal("a^p has coefficients outside k[x^p]".into()))?;
    Ok(FrobeniusPushforward { matrix, hitchin, expected: HitchinPoint::from_bipoly(&ap) })
}

/// `F_* E` with `λ` acting by `F_* ψ_p`, over the base `a^p` where `a` is the
/// characteristic polynomial of `ψ_p` written over `k[y]`.
pub fn de_rham_spectral(c: &LogConnection) -> Result<SpectralModule> {
    let p = c.field().p() as usize;
    let (cp, in_subring) = laszlo_pauly_check(c)?;
    if !in_subring {
        return Err(Error::Internal("p-curvature characteristic polynomial is not in k[x^p]".into()));
    }
    let a = BiPoly::new(c.field(), cp)
        .deflate_x(p)
        .ok_or_else(|| Error::Internal("p-curvature characteristic polynomial is not in k[x^p]".into()))?;
    let psi = p_curvature(c)?.psi;
    let l = frobenius_pushforward_matrix(&psi);
    let base = a.pow(p as u64);
    if charpoly_bipoly(&l)? != base {
        return Err(Error::Internal("characteristic polynomial of F_* ψ is not a^p".into()));
    }
    SpectralModule::new(base, l)
}

/// `M ⊗_{R_a} N` for `N` locally free of rank one.
pub fn picard_twist(s: &SpectralModule, l: &SpectralModule) -> Result<SpectralModule> {
    if s.base != l.base {
        return Err(Error::InvalidSpectral("spectral modules over different bases".into()));
    }
    let rep = regularity_check(l, crate::algebra::ffroots::SPLITTING_CAP)?;
    if !rep.regular || rep.rank != Some(Ratio::from_integer(1)) {
        return Err(Error::InvalidSpectral("twisting module is not locally free of rank one".into()));
    }
    let field = s.field().clone();
    let ring = PolyRing::new(&field);
    let (m, n) = (s.lattice_rank(), l.lattice_rank());
    let is = PolyMatrix::poly_identity(&field, m);
    let il = PolyMatrix::poly_identity(&field, n);
    let act = s.l.kron_in(&ring, &il);
    let rel = act.sub_in(&ring, &is.kron_in(&ring, &l.l));
    // cokernel of `rel`: project along the left kernel
    let left = hermite_kernel_in(&field, &rel.transpose()).transpose();
    let k = left.rows();
    if k == 0 {
        return Err(Error::Internal("tensor product vanished".into()));
    }
    let saturated = hermite_kernel_in(&field, &left);
    if !is_submodule(&saturated, &hnf(&rel)) {
        return Err(Error::Internal("tensor product has k[x]-torsion".into()));
    }
    let herm = column_hermite(&left);
    let basis = herm.h.select_columns(0..herm.rank);
    let pre = herm.u.select_columns(0..herm.rank);
    let image = left.mul_in(&ring, &act).mul_in(&ring, &pre);
    let cols: Vec<Vec<DensePoly>> = image
        .columns()
        .iter()
        .map(|c| solve_hermite(&basis, c).ok_or_else(|| Error::Internal("λ-action leaves the lattice".into())))
        .collect::<Result<_>>()?;
    SpectralModule::new(s.base.clone(), PolyMatrix::from_columns(herm.rank, &cols))
}

/// `AS(a)(μ) = Res_λ(a(λ), μ - (λ^p - λ))` for constant `a`: the polynomial
/// whose roots are `α^p - α` over the roots `α` of `a`.
pub fn artin_schreier_map(a: &HitchinPoint, field: &Field) -> Result<HitchinPoint> {
    if a.coeffs.iter().any(|c| !c.is_constant()) {
        return Err(Error::InvalidSpectral("Artin-Schreier map needs constant coefficients".into()));
    }
    let p = field.p() as usize;
    let f = a.to_bipoly(field);
    let mut g = vec![DensePoly::zero(field); p + 1];
    g[0] = DensePoly::x(field);
    g[1] = DensePoly::one(field);
    g[p] = g[p].sub(&DensePoly::one(field));
    let res = resultant(&f, &BiPoly::new(field, g))?;
    if res.lead() != Fq::ONE || res.degree() != Some(a.degree()) {
        return Err(Error::Internal("Artin-Schreier resultant is not monic of the right degree".into()));
    }
    Ok(HitchinPoint::from_charpoly(&res.coeffs().iter().map(|&c| DensePoly::constant(field, c)).collect::<Vec<_>>()))
}

/// `AS(a)` computed as the characteristic polynomial of `C^p - C` for the
/// companion matrix `C` of `a`.
pub fn artin_schreier_companion(a: &HitchinPoint, field: &Field) -> Result<HitchinPoint> {
    let c = companion(&a.to_bipoly(field));
    let ring = PolyRing::new(field);
    let m = c.pow_in(&ring, field.p() as u64).sub_in(&ring, &c);
    Ok(HitchinPoint::from_bipoly(&charpoly_bipoly(&m)?))
}

fn const_charpoly(field: &Field, m: &Matrix<Fq>) -> Result<HitchinPoint> {
    let cp = m.charpoly_in(field)?;
    Ok(HitchinPoint::from_charpoly(&cp.iter().map(|&c| DensePoly::constant(field, c)).collect::<Vec<_>>()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DczPoint {
    pub index: usize,
    pub residue_charpoly: HitchinPoint,
    pub artin_schreier: HitchinPoint,
    /// Characteristic polynomial of `ψ_p(d_i) / q'(d_i)^p`.
    pub psi_charpoly: HitchinPoint,
    /// `ψ_p(d_i) / q'(d_i)^p = R^p - R`.
    pub residue_identity: bool,
}

impl DczPoint {
    pub fn agrees(&self) -> bool {
        self.residue_identity && self.artin_schreier == self.psi_charpoly
    }
}

/// Compares the Artin-Schreier image of each residue spectrum with the
/// spectrum of the normalized p-curvature at that point.
pub fn dcz_point_check(c: &LogConnection) -> Result<Vec<DczPoint>> {
    let field = c.field();
    let psi = p_curvature(c)?.psi;
    (0..c.divisor().len())
        .map(|i| {
            let r = residue_at(c, i)?;
            let res_cp = residue_charpoly_at(c, i)?;
            let residue_charpoly = HitchinPoint::from_charpoly(
                &res_cp.coeffs().iter().map(|&v| DensePoly::constant(field, v)).collect::<Vec<_>>(),
            );
            let normalized = normalized_psi_at(c, &psi, i);
            let expected = r.pow_in(field, field.p() as u64).sub_in(field, &r);
            Ok(DczPoint {
                index: i,
                artin_schreier: artin_schreier_map(&residue_charpoly, field)?,
                residue_charpoly,
                psi_charpoly: const_charpoly(field, &normalized)?,
                residue_identity: normalized == expected,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ffroots::SPLITTING_CAP;

    fn bp(field: &Field, c: &[&[i64]]) -> BiPoly {
        BiPoly::new(field, c.iter().map(|a| DensePoly::from_ints(field, a)).collect())
    }

    #[test]
    fn nilpotent_classification() {
        let f = Field::prime(3);
        let t2 = bp(&f, &[&[], &[], &[1]]);
        let ring = SpectralModule::ring(&t2).unwrap();
        let zero = SpectralModule::new(t2.clone(), PolyMatrix::poly_zeros(&f, 2, 2)).unwrap();
        let line = SpectralModule::new(t2.clone(), PolyMatrix::poly_zeros(&f, 1, 1)).unwrap();
        assert!(regularity_check(&ring, SPLITTING_CAP).unwrap().regular);
        let rep = regularity_check(&zero, SPLITTING_CAP).unwrap();
        assert!(!rep.regular);
        assert!(rep.fibers.iter().all(|fd| fd.dim == 2));
        assert_eq!(torsion_free_rank_check(&zero).unwrap().1, Some(Ratio::from_integer(1)));
        assert_eq!(torsion_free_rank_check(&line).unwrap().1, Some(Ratio::new(1, 2)));
    }

    #[test]
    fn cusp_ideal_is_not_invertible() {
        let f = Field::prime(5);
        let cusp = bp(&f, &[&[0, 0, 0, -1], &[], &[1]]);
        let ideal = SpectralModule::new(cusp.clone(), PolyMatrix::from_int_rows(&f, &[&[&[], &[0, 0, 1]], &[&[0, 1], &[]]]))
            .unwrap();
        let ring = SpectralModule::ring(&cusp).unwrap();
        assert!(!regularity_check(&ideal, SPLITTING_CAP).unwrap().regular);
        assert!(picard_twist(&ring, &ideal).is_err());
        let t = picard_twist(&ideal, &ring).unwrap();
        assert!(matches!(conjugacy_test(t.lambda_action(), ideal.lambda_action()).unwrap(), Conjugacy::Conjugate(_)));
    }

    #[test]
    fn artin_schreier_routes() {
        let f = Field::prime(3);
        let a = HitchinPoint { coeffs: vec![DensePoly::from_ints(&f, &[1]), DensePoly::from_ints(&f, &[2])] };
        assert_eq!(artin_schreier_map(&a, &f).unwrap(), artin_schreier_companion(&a, &f).unwrap());
    }

    #[test]
    fn pushforward_example() {
        let f = Field::prime(2);
        let h = HiggsPair::new(&LogDivisor::origin(&f), PolyMatrix::from_int_rows(&f, &[&[&[0, 1]]])).unwrap();
        let fp = frobenius_pushforward_higgs(&h).unwrap();
        assert_eq!(fp.matrix, PolyMatrix::from_int_rows(&f, &[&[&[], &[0, 1]], &[&[1], &[]]]));
        assert!(fp.agrees());
    }
}
