use proptest::prelude::*;

use logct_core::exact::{
    binom_rat, binom_tpoly, harmonic, lagrange_interpolate, rat, rat_int, Rat, TPoly,
};
use logct_core::laurent::{ExpVec, SparseLaurent, Window};
use logct_core::virasoro::VermaElement;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #[test]
    fn binom_tpoly_agrees_with_binom_rat(shift in small_rat(), n in 0i64..7, t in small_rat()) {
        let poly = binom_tpoly(&shift, n);
        let direct = binom_rat(&(&t + &shift), n);
        prop_assert_eq!(poly.eval(&t), direct);
    }

    #[test]
    fn binom_tpoly_pascal(shift in small_rat(), n in 1i64..7) {
        // C(t+a, n) = C(t+a-1, n) + C(t+a-1, n-1)
        let lhs = binom_tpoly(&shift, n);
        let down = &shift - rat_int(1);
        let rhs = binom_tpoly(&down, n).add(&binom_tpoly(&down, n - 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn harmonic_difference(n in 1u64..60) {
        prop_assert_eq!(harmonic(n) - harmonic(n - 1), rat(1, n as i64));
    }

    #[test]
    fn interpolation_round_trip(coeffs in prop::collection::vec(small_rat(), 1..6)) {
        let p = TPoly::from_coeffs(coeffs);
        let deg = p.degree().unwrap_or(0);
        let points: Vec<(Rat, Rat)> = (0..=(deg as i64 + 1))
            .map(|i| (rat_int(i), p.eval(&rat_int(i))))
            .collect();
        let q = lagrange_interpolate(&points, deg + 1).unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn tpoly_mul_commutes_with_eval(
        a in prop::collection::vec(small_rat(), 1..5),
        b in prop::collection::vec(small_rat(), 1..5),
        t in small_rat(),
    ) {
        let pa = TPoly::from_coeffs(a);
        let pb = TPoly::from_coeffs(b);
        prop_assert_eq!(pa.mul(&pb).eval(&t), pa.eval(&t) * pb.eval(&t));
    }
}

fn sparse_poly(nvars: usize) -> impl Strategy<Value = SparseLaurent<Rat>> {
    prop::collection::vec(
        (prop::collection::vec(-4i32..=4, nvars), -9i64..=9),
        0..6,
    )
    .prop_map(move |terms| {
        let mut p = SparseLaurent::zero(nvars);
        for (exps, c) in terms {
            p.insert_add(ExpVec::from_slice(&exps).unwrap(), rat_int(c));
        }
        p
    })
}

proptest! {
    #[test]
    fn pruned_mul_is_windowed_mul(
        a in sparse_poly(3),
        b in sparse_poly(3),
        bounds in prop::collection::vec((-8i64..=8, 0i64..=6), 3),
    ) {
        let mut w = Window::wide(3);
        for (v, (lo, len)) in bounds.iter().enumerate() {
            w.set(v, *lo, lo + len);
        }
        let pruned = a.mul_pruned(&b, &w).unwrap();
        let full = a.mul(&b).unwrap();
        for (e, c) in full.terms() {
            if w.contains(e) {
                prop_assert_eq!(&pruned.extract_coeff(e), c);
            }
        }
        for (e, c) in pruned.terms() {
            prop_assert!(w.contains(e));
            prop_assert_eq!(c, &full.extract_coeff(e));
        }
    }
}

fn small_partition() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=4, 0..4).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

proptest! {
    #[test]
    fn virasoro_bracket_l1_l2(
        words in prop::collection::vec((small_partition(), -6i64..=6), 1..4),
        cn in -10i64..=10,
        hn in -10i64..=10,
    ) {
        // [L(1), L(2)] = -L(3) on arbitrary elements
        let mut v = VermaElement::zero(rat(cn, 2), rat(hn, 3));
        for (w, k) in words {
            if k != 0 {
                v.add_term(w, rat_int(k));
            }
        }
        let lhs_a = v.apply_raising(2).apply_raising(1);
        let lhs_b = v.apply_raising(1).apply_raising(2);
        let rhs = v.apply_raising(3);
        let mut keys: Vec<Vec<u32>> = lhs_a.terms().map(|(w, _)| w.clone()).collect();
        keys.extend(lhs_b.terms().map(|(w, _)| w.clone()));
        keys.extend(rhs.terms().map(|(w, _)| w.clone()));
        keys.sort();
        keys.dedup();
        for w in keys {
            prop_assert_eq!(
                lhs_a.coeff(&w) - lhs_b.coeff(&w),
                -rhs.coeff(&w)
            );
        }
    }

    #[test]
    fn singular_vector_annihilated_at_random_rational_p(n in 1i64..=40, d in 1i64..=5) {
        let p = rat(n, d);
        let v = logct_core::virasoro::singular_vector_degree5(&p);
        prop_assert!(v.apply_raising(1).is_zero());
        prop_assert!(v.apply_raising(2).is_zero());
    }
}

#[test]
fn window_reachability_consistency() {
    // reachable_from composed with sum bounds the target coordinatewise
    let mut a = Window::zero(2);
    a.set(0, -3, 1);
    a.set(1, 0, 2);
    let mut b = Window::zero(2);
    b.set(0, 0, 4);
    b.set(1, -1, 1);
    let s = a.sum(&b);
    for v in 0..2 {
        assert_eq!(s.lo(v), a.lo(v) + b.lo(v));
        assert_eq!(s.hi(v), a.hi(v) + b.hi(v));
    }
}
