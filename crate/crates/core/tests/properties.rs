use proptest::prelude::*;
use quadperm_core::curve::{curve_coeffs, hasse_weil_lower_bound};
use quadperm_core::quadperm::theta_of;
use quadperm_core::{normalize_triple, FieldCtx, Fq, Fq2, TowerCtx, Triple};

fn field() -> impl Strategy<Value = FieldCtx> {
    (1u32..=24).prop_map(|m| FieldCtx::new(m).unwrap())
}

fn with_elements(n: usize) -> impl Strategy<Value = (FieldCtx, Vec<Fq>)> {
    field().prop_flat_map(move |f| {
        let mask = f.order() - 1;
        let elems =
            proptest::collection::vec(any::<u64>().prop_map(move |b| Fq::from_bits(b & mask)), n);
        (Just(f), elems)
    })
}

fn odd_tower() -> impl Strategy<Value = TowerCtx> {
    prop_oneof![Just(1u32), Just(3), Just(5), Just(7), Just(9)]
        .prop_map(|m| TowerCtx::for_degree(m).unwrap())
}

fn any_tower() -> impl Strategy<Value = TowerCtx> {
    (1u32..=9).prop_map(|m| TowerCtx::for_degree(m).unwrap())
}

fn tower_elements(
    t: impl Strategy<Value = TowerCtx>,
    n: usize,
) -> impl Strategy<Value = (TowerCtx, Vec<Fq2>)> {
    t.prop_flat_map(move |t| {
        let mask = t.order() - 1;
        let idx = proptest::collection::vec(any::<u64>().prop_map(move |b| b & mask), n);
        (Just(t), idx)
    })
    .prop_map(|(t, idx)| {
        let v = idx.into_iter().map(|i| t.from_index(i)).collect();
        (t, v)
    })
}

fn triple_at(t: &TowerCtx, a1: u64, a2: Fq2, a3: Fq2) -> Triple {
    Triple::new(Fq::from_bits(a1 & (t.base().order() - 1)), a2, a3)
}

proptest! {
    #[test]
    fn ring_axioms((f, v) in with_elements(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
        prop_assert_eq!(f.mul(a, Fq::ONE), a);
    }

    #[test]
    fn inverse_and_frobenius((f, v) in with_elements(1)) {
        let a = v[0];
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq::ONE);
        }
        prop_assert_eq!(f.pow(a, f.order()), a);
        prop_assert_eq!(f.sqrt(f.square(a)), a);
        prop_assert_eq!(f.square(f.sqrt(a)), a);
    }

    #[test]
    fn trace_is_linear_and_frobenius_invariant((f, v) in with_elements(2)) {
        let (a, b) = (v[0], v[1]);
        prop_assert_eq!(f.trace(a + b), f.trace(a) ^ f.trace(b));
        prop_assert_eq!(f.trace(f.square(a)), f.trace(a));
    }

    #[test]
    fn quadratic_roots_satisfy_equation((f, v) in with_elements(2)) {
        let (b, c) = (v[0], v[1]);
        prop_assume!(!b.is_zero() && f.degree() % 2 == 1);
        let criterion = f.trace(f.div(c, f.square(b)).unwrap()) == 0;
        match f.solve_quadratic(b, c).unwrap() {
            Some((r, s)) => {
                prop_assert!(criterion);
                prop_assert_eq!(s, r + b);
                for x in [r, s] {
                    prop_assert!((f.square(x) + f.mul(b, x) + c).is_zero());
                }
            }
            None => prop_assert!(!criterion),
        }
    }

    #[test]
    fn conjugation_is_an_automorphism((t, v) in tower_elements(any_tower(), 2)) {
        let (x, y) = (v[0], v[1]);
        prop_assert_eq!(t.conj(t.mul(x, y)), t.mul(t.conj(x), t.conj(y)));
        prop_assert_eq!(t.conj(x + y), t.conj(x) + t.conj(y));
        prop_assert_eq!(t.conj(t.conj(x)), x);
        prop_assert_eq!(t.conj(x), t.pow(x, t.base().order()));
    }

    #[test]
    fn norm_and_trace_land_in_base((t, v) in tower_elements(any_tower(), 2)) {
        let (x, y) = (v[0], v[1]);
        prop_assert_eq!(t.embed(t.norm(x)), t.mul(x, t.conj(x)));
        prop_assert_eq!(t.embed(t.rel_trace(x)), x + t.conj(x));
        let f = t.base();
        prop_assert_eq!(t.norm(t.mul(x, y)), f.mul(t.norm(x), t.norm(y)));
    }

    #[test]
    fn tower_quadratic_roots((t, v) in tower_elements(odd_tower(), 2)) {
        let (b, c) = (v[0], v[1]);
        prop_assume!(!b.is_zero());
        let ratio = t.div(c, t.square(b)).unwrap();
        match t.solve_quadratic_ext(b, c).unwrap() {
            Some((r, s)) => {
                prop_assert_eq!(t.abs_trace(ratio), 0);
                prop_assert_eq!(s, r + b);
                for x in [r, s] {
                    prop_assert!((t.square(x) + t.mul(b, x) + c).is_zero());
                }
            }
            None => prop_assert_eq!(t.abs_trace(ratio), 1),
        }
    }

    #[test]
    fn theta_norm_identity((t, v) in tower_elements(odd_tower(), 2), a1 in any::<u64>()) {
        let th = theta_of(&t, &triple_at(&t, a1, v[0], v[1]));
        prop_assert!(th.norm_identity_holds(&t));
        prop_assert!(t.is_base(th.t1) && t.is_base(th.t4));
        prop_assert_eq!(th.t2bar, t.conj(th.t2));
        prop_assert_eq!(th.t3bar, t.conj(th.t3));
    }

    #[test]
    fn curve_is_symmetric((t, v) in tower_elements(odd_tower(), 2), a1 in any::<u64>(), x in any::<u64>(), y in any::<u64>()) {
        let c = curve_coeffs(&t, &theta_of(&t, &triple_at(&t, a1, v[0], v[1]))).unwrap();
        let mask = t.base().order() - 1;
        let (x, y) = (Fq::from_bits(x & mask), Fq::from_bits(y & mask));
        prop_assert_eq!(c.eval(&t, x, y), c.eval(&t, y, x));
        prop_assert!(c.is_rational(&t));
    }

    #[test]
    fn normalized_first_coefficient_is_fixed((t, v) in tower_elements(odd_tower(), 3)) {
        prop_assume!(!v[0].is_zero());
        let n = normalize_triple(&t, v[0], v[1], v[2]).unwrap();
        let beta = t.sqrt(t.inv(v[0]).unwrap());
        let expected = t.inv(t.embed(t.norm(beta))).unwrap();
        prop_assert_eq!(t.embed(n.a1), expected);
    }

    #[test]
    fn bound_matches_float(m in 1u32..=40, d in 1u32..=8) {
        let b = hasse_weil_lower_bound(d, m);
        let (q, d) = (2f64.powi(m as i32), d as f64);
        let exact = q - (d - 1.0) * (d - 2.0) * q.sqrt() - d * (d - 1.0) * (d - 1.0) / 2.0 - 1.0;
        prop_assert!(b.to_f64() <= exact + 1e-9 * exact.abs().max(1.0));
        prop_assert!(exact - b.to_f64() <= 1e-6 + 1e-12 * exact.abs());
    }
}
