use logdr::algebra::field::{Field, FieldSpec, Fq};
use logdr::algebra::ffroots::{is_irreducible, SplittingField, SPLITTING_CAP};
use logdr::algebra::hermite::{column_reduce, hermite_kernel, hnf};
use logdr::algebra::matrix::{Matrix, PolyMatrix};
use logdr::algebra::parse::{format_poly, parse_poly};
use logdr::algebra::poly::DensePoly;
use logdr::algebra::ring::PolyRing;
use logdr::dweyl::DlogElement;
use logdr::logconn::*;
use logdr::parabolic::{parabolic_iso_test, ParabolicModule};
use logdr::spectral::{artin_schreier_map, HitchinPoint};
use logdr::witt::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fields() -> Vec<Field> {
    let ext = |p, m: Vec<u32>| Field::new(&FieldSpec { p, ext_modulus: Some(m) }).unwrap();
    vec![Field::prime(2), Field::prime(3), Field::prime(5), ext(2, vec![1, 1, 1]), ext(3, vec![1, 0, 1]), ext(5, vec![3, 0, 1])]
}

fn field_strategy() -> impl Strategy<Value = Field> {
    (0..6usize).prop_map(|i| fields()[i].clone())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn extension_moduli_are_irreducible() {
    for f in fields() {
        let m = DensePoly::new(&Field::prime(f.p()), f.modulus().iter().map(|&c| Fq(c as u64)).collect());
        assert!(is_irreducible(&m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in field_strategy(), seed: u64) {
        let mut r = rng(seed);
        let (a, b, c) = (f.random(&mut r), f.random(&mut r), f.random(&mut r));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Fq::ZERO);
        prop_assert_eq!(f.frob(f.add(a, b)), f.add(f.frob(a), f.frob(b)));
        if a != Fq::ZERO {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq::ONE);
        }
        prop_assert_eq!(f.pow(a, f.order()), a);
    }

    #[test]
    fn poly_format_round_trip(f in field_strategy(), seed: u64, deg in 0usize..6) {
        let g = DensePoly::random(&f, deg, &mut rng(seed));
        prop_assert_eq!(parse_poly(&f, &format_poly(&g, "x"), "x").unwrap(), g);
    }

    #[test]
    fn cayley_hamilton(f in field_strategy(), seed: u64, n in 1usize..5) {
        let mut r = rng(seed);
        let m = Matrix::from_fn(n, n, |_, _| f.random(&mut r));
        let cp = m.charpoly_in(&f).unwrap();
        prop_assert!(m.eval_poly_in(&f, &cp).is_zero_in(&f));
    }

    #[test]
    fn hermite_form_is_canonical(f in field_strategy(), seed: u64, rows in 1usize..4, cols in 1usize..4) {
        let mut r = rng(seed);
        let ring = PolyRing::new(&f);
        let m = PolyMatrix::from_fn(rows, cols, |_, _| DensePoly::random(&f, 2, &mut r));
        let h = hnf(&m);
        prop_assert_eq!(hnf(&h), h.clone());
        let k = hermite_kernel(&m);
        if k.cols() > 0 {
            prop_assert!(m.mul_in(&ring, &k).is_zero());
            let red = column_reduce(&f, &k);
            prop_assert_eq!(hnf(&red), hnf(&k));
        }
    }

    #[test]
    fn theta_is_a_derivation(f in field_strategy(), seed: u64) {
        let mut r = rng(seed);
        let d = LogDivisor::new(&f, vec![f.random(&mut r)]).unwrap();
        let (a, b) = (DensePoly::random(&f, 4, &mut r), DensePoly::random(&f, 4, &mut r));
        prop_assert_eq!(d.theta(&a.mul(&b)), d.theta(&a).mul(&b).add(&a.mul(&d.theta(&b))));
    }

    #[test]
    fn weyl_product_is_associative(f in field_strategy(), seed: u64) {
        let mut r = rng(seed);
        let d = LogDivisor::new(&f, vec![Fq::ZERO, Fq::ONE]).unwrap();
        let e: Vec<DlogElement> = (0..3).map(|_| DlogElement::random(&d, 3, 2, &mut r)).collect();
        let left = e[0].mul(&e[1]).unwrap().mul(&e[2]).unwrap();
        let right = e[0].mul(&e[1].mul(&e[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn p_curvature_routes_agree(f in field_strategy(), seed: u64, rank in 1usize..3) {
        let mut r = rng(seed);
        let d = LogDivisor::new(&f, vec![f.random(&mut r)]).unwrap();
        let c = LogConnection::random(&d, rank, 2, &mut r);
        prop_assert_eq!(p_curvature(&c).unwrap().psi, p_curvature_direct(&c).unwrap());
        prop_assert!(laszlo_pauly_check(&c).unwrap().1);
        let rep = cartier_descent_check(&c).unwrap();
        prop_assert_eq!(rep.psi_zero, rep.counit_iso);
    }

    #[test]
    fn witt_ops_match_ghost_lift(p in prop::sample::select(vec![2u32, 3, 5]), seed: u64, n in 1usize..4) {
        prop_assume!(supported(p, n));
        let f = Field::prime(p);
        let ring = TruncRing::field_only(&f);
        let mut r = rng(seed);
        let u = WittVector::random(&ring, n, &mut r);
        let v = WittVector::random(&ring, n, &mut r);
        let digits = |w: &WittVector| w.components().iter().map(|c| c[0].0 as u32).collect::<Vec<_>>();
        for op in [WittOp::Add, WittOp::Mul] {
            let got = witt_ring_op(&u, &v, op).unwrap();
            prop_assert_eq!(digits(&got), ghost_lift_reference(p, &digits(&u), &digits(&v), op));
        }
    }
}

/// The Artin-Schreier image of a residue characteristic polynomial has roots
/// `α^p - α` over the roots `α`, checked inside a splitting field.
#[test]
fn artin_schreier_roots() {
    let mut r = rng(7);
    for f in fields() {
        for n in 1..=3 {
            for _ in 0..10 {
                let m = Matrix::from_fn(n, n, |_, _| f.random(&mut r));
                let cp = m.charpoly_in(&f).unwrap();
                let cp_poly = DensePoly::new(&f, cp.clone());
                let point = HitchinPoint::from_charpoly(&cp.iter().map(|&c| DensePoly::constant(&f, c)).collect::<Vec<_>>());
                let image = artin_schreier_map(&point, &f).unwrap().to_bipoly(&f);
                let image = DensePoly::new(&f, image.coeffs().iter().map(|c| c.constant_term()).collect());
                let sf = SplittingField::of(&cp_poly, SPLITTING_CAP).unwrap();
                let k = &sf.ext;
                let mut expected = DensePoly::one(k);
                for (a, mult) in sf.roots(&cp_poly) {
                    let shifted = k.sub(k.pow(a, k.p() as u64), a);
                    expected = expected.mul(&DensePoly::linear_root(k, shifted).pow(mult as u64));
                }
                assert_eq!(sf.embed_poly(&image), expected);
            }
        }
    }
}

#[test]
fn descent_over_extension_fields() {
    let mut r = rng(11);
    for f in fields().into_iter().filter(|f| f.degree() > 1) {
        let g = f.generator().unwrap();
        let d = LogDivisor::new(&f, vec![Fq::ZERO, g]).unwrap();
        for rank in 1..=2 {
            for _ in 0..3 {
                let v = ParabolicModule::random(&d, rank, &mut r);
                let c = frobenius_pullback(&v).unwrap();
                assert!(p_curvature(&c).unwrap().psi.is_zero());
                let sol = solutions(&c).unwrap();
                assert!(parabolic_iso_test(&sol.module, &v).unwrap().isomorphic);
                let pts = dcz_points(&c);
                assert!(pts.iter().all(|ok| *ok));
            }
        }
    }
}

fn dcz_points(c: &LogConnection) -> Vec<bool> {
    logdr::spectral::dcz_point_check(c).unwrap().iter().map(|pt| pt.agrees()).collect()
}
