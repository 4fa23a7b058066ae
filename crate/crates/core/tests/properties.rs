use std::cmp::Ordering;

use proptest::prelude::*;

use socle::apolarity::{hilbert_function, power_sum_of_points, Socle};
use socle::charge::{beilinson_dims, charge, compare_arg, dual_class, hilb_poly, ChargePoint, TwistComplex};
use socle::linalg::{rat, ratio, Rational};
use socle::resolution::{check_duality, check_euler, hf_from_betti, koszul_betti, koszul_betti_with, BettiTable, Route};
use socle::sample;
use socle::verification::property_failure;

fn seeded_socle(max_n: usize, max_d: u32) -> impl Strategy<Value = Socle> {
    (any::<u64>(), 1..=max_n, 1..=max_d).prop_map(|(seed, n, d)| sample::mixed_socle(&mut sample::rng(seed), n, d))
}

fn twist_complex() -> impl Strategy<Value = TwistComplex> {
    (1usize..=3, prop::collection::vec((0i64..4, -3i64..5, 1u64..4), 1..5))
        .prop_map(|(n, terms)| TwistComplex::new(n, terms))
}

fn nonzero_point() -> impl Strategy<Value = ChargePoint> {
    ((-20i64..20, 1i64..5), (-20i64..20, 1i64..5))
        .prop_filter("nonzero", |((a, _), (b, _))| *a != 0 || *b != 0)
        .prop_map(|(x, y)| ChargePoint::from_ratios(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn socle_invariants(g in seeded_socle(3, 4)) {
        prop_assert_eq!(property_failure(&g), None);
    }

    #[test]
    fn both_koszul_routes_agree(g in seeded_socle(2, 4)) {
        let a = koszul_betti_with(&g, Route::InverseSystem).unwrap();
        let b = koszul_betti_with(&g, Route::Quotient).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn tables_are_self_dual(g in seeded_socle(3, 4)) {
        let t = koszul_betti(&g).unwrap();
        let (n, d) = (t.n(), t.d());
        for (i, j, b) in t.entries() {
            prop_assert_eq!(t.get(n + 1 - i, n as u32 + 1 + d - j), b);
        }
        prop_assert!(check_duality(&t) && check_euler(&t));
    }

    #[test]
    fn text_round_trip(g in seeded_socle(3, 5)) {
        let back = Socle::parse(&g.to_string(), Some(g.n())).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn betti_json_round_trip(g in seeded_socle(2, 4)) {
        let t = koszul_betti(&g).unwrap();
        let back: BettiTable = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        prop_assert_eq!(hf_from_betti(&back).unwrap(), hilbert_function(&g));
        prop_assert_eq!(back, t);
    }

    #[test]
    fn hilbert_function_is_invariant_under_scaling(seed in any::<u64>(), k in 1i64..7) {
        let g = sample::random_socle(&mut sample::rng(seed), 2, 4);
        let scaled = g.scale(&ratio(-k, 3)).unwrap();
        prop_assert_eq!(hilbert_function(&scaled), hilbert_function(&g));
    }

    #[test]
    fn power_sums_have_rank_at_most_the_point_count(seed in any::<u64>(), k in 1usize..4) {
        let g = sample::random_power_sum(&mut sample::rng(seed), 2, 4, k);
        prop_assert!(hilbert_function(&g).max() <= k as u64);
    }

    #[test]
    fn duality_reflects_the_hilbert_polynomial(c in twist_complex(), t in -6i64..6) {
        let p = hilb_poly(&c);
        let q = hilb_poly(&dual_class(&c));
        // Serre duality's (-1)^n cancels against the shift by n
        prop_assert_eq!(q.eval(&rat(t)), p.eval(&rat(-t)));
    }

    #[test]
    fn beilinson_dims_reconstruct_the_class(c in twist_complex()) {
        let v = beilinson_dims(&c);
        let mut rebuilt = TwistComplex::zero(c.n);
        for (i, vi) in v.iter().enumerate() {
            prop_assert!(vi.is_integer());
            let m = vi.to_integer();
            let (shift, count) = if m >= 0.into() { (i as i64, m) } else { (i as i64 + 1, -m) };
            let count: u64 = count.try_into().unwrap();
            if count > 0 {
                rebuilt = rebuilt.concat(&TwistComplex::new(c.n, vec![(shift, i as i64, count)]));
            }
        }
        for t in -4..4 {
            prop_assert_eq!(hilb_poly(&rebuilt).eval(&rat(t)), hilb_poly(&c).eval(&rat(t)));
        }
    }

    #[test]
    fn phase_order_is_antisymmetric(p in nonzero_point(), q in nonzero_point()) {
        let pq = compare_arg(&p, &q).unwrap();
        let qp = compare_arg(&q, &p).unwrap();
        prop_assert_eq!(pq, qp.reverse());
        let scaled = p.scale(&ratio(7, 2));
        prop_assert_eq!(compare_arg(&p, &scaled).unwrap(), Ordering::Equal);
    }

    #[test]
    fn charge_is_additive(a in twist_complex(), b in twist_complex(), s in -4i64..4) {
        prop_assume!(a.n == b.n);
        let s = ratio(s, 2);
        prop_assert_eq!(charge(&a.concat(&b), &s), charge(&a, &s) + charge(&b, &s));
    }
}

#[test]
fn distinct_points_give_their_count() {
    let points: Vec<Vec<Rational>> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]
        .iter()
        .map(|p| p.iter().map(|&c| rat(c)).collect())
        .collect();
    let g = power_sum_of_points(&points, &[rat(1), rat(2), rat(3), rat(4)], 4).unwrap();
    assert_eq!(hilbert_function(&g).0, vec![1, 3, 4, 3, 1]);
}
