use quadperm_core::curve::{
    classify, classify_triple, count_rational_zeros, curve_coeffs, CurveClass, CurveCoeffs,
};
use quadperm_core::quadperm::{rational_map_coeffs, theta_of};
use quadperm_core::sample::{random_base, random_triple, sample_gamma_members};
use quadperm_core::{gamma_member, Fq2, TowerCtx, Triple};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `(N(x) D(y) + N(y) D(x)) / (x + y)` from the ε/τ coefficients.
fn bezoutian(t: &TowerCtx, tr: &Triple, x: Fq2, y: Fq2) -> Fq2 {
    let rc = rational_map_coeffs(t, tr).unwrap();
    let cross = t.mul(rc.numerator(t, x), rc.denominator(t, y))
        + t.mul(rc.numerator(t, y), rc.denominator(t, x));
    t.div(cross, x + y).unwrap()
}

fn coeffs(t: &TowerCtx, tr: &Triple) -> CurveCoeffs {
    curve_coeffs(t, &theta_of(t, tr)).unwrap()
}

#[test]
fn curve_is_the_bezoutian_at_m3() {
    let t = TowerCtx::for_degree(3).unwrap();
    let b = t.base();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let tr = random_triple(&t, &mut rng);
        if tr.is_degenerate(&t) {
            continue;
        }
        let c = coeffs(&t, &tr);
        for x in b.elements() {
            for y in b.elements().filter(|&y| y != x) {
                let (xe, ye) = (t.embed(x), t.embed(y));
                assert_eq!(c.eval(&t, x, y), bezoutian(&t, &tr, xe, ye));
            }
        }
    }
}

#[test]
fn curve_is_the_bezoutian_at_m5() {
    let t = TowerCtx::for_degree(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..500 {
        let tr = random_triple(&t, &mut rng);
        if tr.is_degenerate(&t) {
            continue;
        }
        let c = coeffs(&t, &tr);
        for _ in 0..20 {
            let (x, y) = (random_base(&t, &mut rng), random_base(&t, &mut rng));
            if x != y {
                assert_eq!(c.eval(&t, x, y), bezoutian(&t, &tr, t.embed(x), t.embed(y)));
            }
        }
    }
}

#[test]
fn coefficients_lie_in_base_field() {
    let t = TowerCtx::for_degree(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..2000 {
        let tr = random_triple(&t, &mut rng);
        assert!(coeffs(&t, &tr).is_rational(&t));
    }
}

fn round_trip(m: u32, n: usize, seed: u64) {
    let t = TowerCtx::for_degree(m).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for tr in sample_gamma_members(&t, n, &mut rng) {
        let rep = classify_triple(&t, &tr).unwrap();
        assert!(rep.class.splits(), "{}", tr.encode(&t));
        assert!(rep.product_verified, "{}", tr.encode(&t));
        assert!(rep.factors_irrational, "{}", tr.encode(&t));
    }
}

#[test]
fn product_round_trip_on_sampled_gamma_m5() {
    round_trip(5, 10_000, 21);
}

#[test]
fn product_round_trip_on_sampled_gamma_m7() {
    round_trip(7, 10_000, 22);
}

#[test]
fn degree_three_is_excluded_on_gamma_at_m3() {
    let t = TowerCtx::for_degree(3).unwrap();
    for a1 in t.base().elements() {
        for a2 in t.elements() {
            for a3 in t.elements() {
                let tr = Triple::new(a1, a2, a3);
                if gamma_member(&t, &tr) {
                    let c = coeffs(&t, &tr);
                    assert!(!c.l22.is_zero() || c.l21.is_zero(), "{}", tr.encode(&t));
                }
            }
        }
    }
}

#[test]
fn quad1111_roots_satisfy_sum_and_product() {
    let t = TowerCtx::for_degree(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut seen = 0;
    for tr in sample_gamma_members(&t, 2000, &mut rng) {
        let th = theta_of(&t, &tr);
        let rep = classify(&t, &th).unwrap();
        if rep.class != CurveClass::Quad1111 {
            continue;
        }
        seen += 1;
        let c = curve_coeffs(&t, &th).unwrap();
        let root = |f: &quadperm_core::curve::BiPoly| f.coeff(0, 0).unwrap();
        let (a, abar) = (root(&rep.factors[0]), root(&rep.factors[1]));
        assert_eq!(abar, t.conj(a));
        assert_eq!(t.mul(a + abar, c.l22), c.l21);
        assert_eq!(t.mul(t.mul(a, abar), c.l22), c.l20);
    }
    assert!(seen > 0);
}

#[test]
fn lin11_constant_is_outside_base_field() {
    let t = TowerCtx::for_degree(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let mut seen = 0;
    for tr in sample_gamma_members(&t, 4000, &mut rng) {
        let th = theta_of(&t, &tr);
        let rep = classify(&t, &th).unwrap();
        let c = curve_coeffs(&t, &th).unwrap();
        if rep.class != CurveClass::Lin11 || c.l10.is_zero() {
            continue;
        }
        seen += 1;
        let f = t.base();
        let ratio = f.div(
            f.mul(t.project(c.l00).unwrap(), t.project(c.l20).unwrap()),
            f.square(t.project(c.l10).unwrap()),
        );
        assert_eq!(f.trace(ratio.unwrap()), 1);
        let b = rep.factors[0].coeff(0, 0).unwrap();
        assert!(!t.is_base(b));
    }
    assert!(seen > 0);
}

#[test]
fn off_diagonal_zeros_separate_gamma_at_m5() {
    let t = TowerCtx::for_degree(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..3000 {
        let tr = random_triple(&t, &mut rng);
        if tr.is_degenerate(&t) {
            continue;
        }
        let rep = classify_triple(&t, &tr).unwrap();
        let zeros = count_rational_zeros(&t, &coeffs(&t, &tr)).unwrap();
        match rep.class {
            CurveClass::RationalComponent => assert!(zeros.off_diagonal >= 1),
            c if c.splits() => assert_eq!(zeros.off_diagonal, 0),
            _ => {}
        }
    }
}
