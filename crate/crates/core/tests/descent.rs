use logdr::algebra::field::{Field, Fq};
use logdr::logconn::*;
use logdr::parabolic::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn divisors(f: &Field) -> Vec<LogDivisor> {
    vec![
        LogDivisor::origin(f),
        LogDivisor::new(f, vec![Fq::ZERO, Fq::ONE]).unwrap(),
    ]
}

#[test]
fn sol_of_pullback_recovers_module() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for p in [2u32, 3, 5] {
        let f = Field::prime(p);
        for d in divisors(&f) {
            for rank in 1..=2 {
                for _ in 0..5 {
                    let v = ParabolicModule::random(&d, rank, &mut rng);
                    let c = frobenius_pullback(&v).unwrap();
                    assert!(p_curvature(&c).unwrap().psi.is_zero());
                    let rep = cartier_descent_check(&c).unwrap();
                    assert!(rep.counit_iso);
                    let sol = solutions(&c).unwrap();
                    assert!(parabolic_iso_test(&sol.module, &v).unwrap().isomorphic);
                    assert_eq!(is_trivial_parabolic(&v), (0..d.len()).all(|i| residue_at(&c, i).unwrap().entries().iter().all(|e| e.is_zero())));
                }
            }
        }
    }
}

#[test]
fn residue_identity_multi_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for p in [2u32, 3, 5] {
        let f = Field::prime(p);
        for d in divisors(&f) {
            for _ in 0..10 {
                let c = LogConnection::random(&d, 2, 3, &mut rng);
                let psi = p_curvature(&c).unwrap().psi;
                for i in 0..d.len() {
                    let r = residue_at(&c, i).unwrap();
                    let lhs = normalized_psi_at(&c, &psi, i);
                    let rhs = r.pow_in(&f, p as u64).sub_in(&f, &r);
                    assert_eq!(lhs, rhs);
                }
                let rep = cartier_descent_check(&c).unwrap();
                assert_eq!(rep.psi_zero, psi.is_zero());
            }
        }
    }
}
