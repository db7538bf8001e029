use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::sample::select;

use serrewt::params::{enumerate_params, normalize_level2};
use serrewt::recipes::{bdj_weight_set, bm_set, k_cris, k_min_of_set, serre_k};
use serrewt::weights::{decompose_sym, jh_multiplicity, k_min_closed, sym_class};
use serrewt::{ExtensionShape, InertialParam, Prime, SerreWeight, VirtualClass};

const PRIMES: [u64; 9] = [3, 5, 7, 11, 13, 17, 19, 23, 29];

fn prime() -> impl Strategy<Value = Prime> {
    select(PRIMES.to_vec()).prop_map(|p| Prime::new(p).unwrap())
}

fn weight() -> impl Strategy<Value = SerreWeight> {
    prime().prop_flat_map(|p| {
        let pp = p.get() as i64;
        (0..pp - 1, 1..=pp).prop_map(move |(a, b)| SerreWeight::new(p, a, b).unwrap())
    })
}

fn param() -> impl Strategy<Value = InertialParam> {
    select(vec![3u64, 5, 7, 11, 13]).prop_flat_map(|p| {
        let all = enumerate_params(Prime::new(p).unwrap());
        select(all)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dimension_is_conserved(p in prime(), frac in 0.0f64..1.0) {
        let pp = p.get() as u64;
        let n = (frac * (5 * pp * pp) as f64) as u64;
        prop_assert_eq!(decompose_sym(p, n).total_dim(), n + 1);
    }

    #[test]
    fn factors_share_the_central_character(p in prime(), n in 0u64..4000) {
        let c = (n % (p.get() as u64 - 1)) as u32;
        for (w, m) in decompose_sym(p, n).iter() {
            prop_assert!(m >= 1);
            prop_assert_eq!(w.central_exponent(), c, "{} in Sym^{}", w, n);
        }
    }

    #[test]
    fn symmetric_powers_are_effective(p in prime(), n in 0i64..4000) {
        prop_assert!(sym_class(p, n).is_effective());
    }

    #[test]
    fn periodic_relation(p in prime(), t in 0.0f64..1.0) {
        let pp = p.get() as i64;
        let n = -2 * pp + (t * (6 * pp) as f64) as i64;
        let lhs = sym_class(p, n + pp - 1) - &sym_class(p, n);
        let rhs = (sym_class(p, n - 2) - &sym_class(p, n - pp - 1)).twist(1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn virtual_dimension_is_n_plus_one(p in prime(), n in -500i64..500) {
        prop_assert_eq!(sym_class(p, n).dim(), BigInt::from(n + 1));
    }

    #[test]
    fn k_min_closed_is_the_first_occurrence(w in weight()) {
        let k = k_min_closed(&w);
        let p = w.p();
        let pp = p.get() as u64;
        prop_assert!(k >= 2 && k < pp * pp);
        prop_assert_eq!((k % (pp - 1)) as i64, (2 * w.a() as i64 + w.b() as i64 + 1) % (pp as i64 - 1));
        prop_assert!(jh_multiplicity(p, k, &w) > 0);
        for earlier in 2..k {
            prop_assert_eq!(jh_multiplicity(p, earlier, &w), 0);
        }
    }

    #[test]
    fn twisting_a_weight_is_periodic(w in weight(), s in -50i64..50, t in -50i64..50) {
        let pm1 = w.p().pm1();
        prop_assert_eq!(w.twist(s).twist(t), w.twist(s + t));
        prop_assert_eq!(w.twist(pm1), w);
    }

    #[test]
    fn level2_normalization_is_frobenius_invariant(p in prime(), e in 0i64..100_000) {
        let q = p.sq_m1();
        match normalize_level2(p, e) {
            Ok((a, b)) => {
                prop_assert!(a < b && b < p.get());
                prop_assert_eq!(normalize_level2(p, (e * p.get() as i64) % q).unwrap(), (a, b));
                let canon = (p.get() as i64 * a as i64 + b as i64) % q;
                let conj = (a as i64 + p.get() as i64 * b as i64) % q;
                let e = e % q;
                prop_assert!(e == canon || e == conj);
            }
            Err(_) => prop_assert_eq!(e % (p.get() as i64 + 1), 0),
        }
    }

    #[test]
    fn param_twists_compose(x in param(), s in -30i64..30, t in -30i64..30) {
        prop_assert_eq!(x.twist(s).twist(t), x.twist(s + t));
        prop_assert_eq!(x.twist(x.p().pm1()), x);
    }

    #[test]
    fn weight_sets_are_twist_equivariant(x in param(), t in 0i64..30) {
        prop_assert_eq!(bdj_weight_set(&x.twist(t)), bdj_weight_set(&x).twist(t));
        prop_assert_eq!(bm_set(&x.twist(t)), bm_set(&x).twist(t));
    }

    #[test]
    fn param_json_round_trips(x in param()) {
        let text = x.to_json();
        let back = InertialParam::from_json(&text).unwrap();
        prop_assert_eq!(back, x);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn k_min_of_set_is_attained(x in param()) {
        let k = k_min_of_set(&x);
        let set = bdj_weight_set(&x);
        prop_assert!(!set.is_empty());
        let witness = set.iter().find(|w| k_min_closed(w) == k);
        prop_assert!(witness.is_some());
        prop_assert!(jh_multiplicity(x.p(), k, witness.unwrap()) > 0);
        // The definition via intersections with JH(Sym^{k-2}).
        let first = (2..).find(|&k| decompose_sym(x.p(), k - 2).iter().any(|(w, _)| set.contains(&w))).unwrap();
        prop_assert_eq!(first, k);
    }

    #[test]
    fn k_cris_is_the_minimum_over_b(x in param()) {
        let b = bm_set(&x);
        let expected = b.iter().map(k_min_closed).min().unwrap();
        prop_assert_eq!(k_cris(&x).unwrap(), expected);
    }
}

#[test]
fn peu_value_comes_from_the_generic_formula() {
    for p in Prime::range(3, 31) {
        for x in enumerate_params(p) {
            if let InertialParam::Reducible(r) = x {
                let nonsplit_non_tres = matches!(r.shape(), ExtensionShape::Peu | ExtensionShape::NonsplitGeneric);
                if nonsplit_non_tres && r.ratio() == 1 {
                    let pp = p.get() as u64;
                    assert_eq!(serre_k(&x), r.twist() as u64 * (pp + 1) + 2, "{x}");
                }
            }
        }
    }
}

#[test]
fn minimal_weights_need_not_be_unique() {
    for p in Prime::range(7, 31) {
        let pp = p.get() as i64;
        for m in 1..pp - 1 {
            for r in 2..pp - 2 {
                if m + r > pp - 2 {
                    continue;
                }
                for eq in [true, false] {
                    let x = InertialParam::reducible(p, m, r, ExtensionShape::Split, eq).unwrap();
                    let k = k_min_of_set(&x);
                    let set = bdj_weight_set(&x);
                    assert_eq!(set.len(), 2);
                    assert!(set.iter().all(|w| k_min_closed(w) == k), "{x}: {set}");
                }
            }
        }
    }
}

#[test]
fn sym_p_splits_off_the_standard_representation() {
    for p in Prime::range(3, 47) {
        let pp = p.get() as i64;
        let expected = VirtualClass::of(SerreWeight::new(p, 0, 2).unwrap()) + &sym_class(p, pp - 2).twist(1);
        assert_eq!(sym_class(p, pp), expected, "p = {p}");
    }
}
