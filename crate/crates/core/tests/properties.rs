use proptest::prelude::*;

use stablecat::frobenius::{
    factor_cof_then_trivfib, factor_trivcof_then_fib, factors_through_bijective, injective_envelope,
    is_weak_equivalence, stable_inverse, stable_reduction, stably_homotopic, StableReduction,
};
use stablecat::linalg::{snf, solve_mod, IntMatrix};
use stablecat::module_cat::{is_epi, is_mono, FinModule, ModMorphism};
use stablecat::oracle::{enumerate_homs, enumerate_under_homs, OracleBounds};
use stablecat::sample::{random_morphism, random_under_object, rng};
use stablecat::under_cat::{coproduct_under, UnderMorphism};

fn module() -> impl Strategy<Value = FinModule> {
    (0usize..3, 0usize..3).prop_map(|(k, l)| FinModule::from_counts(k, l))
}

fn morphism() -> impl Strategy<Value = ModMorphism> {
    (module(), module(), any::<u64>()).prop_map(|(m, n, s)| random_morphism(&mut rng(s), &m, &n))
}

/// Three composable random maps `a → b → c → d`.
fn chain() -> impl Strategy<Value = (ModMorphism, ModMorphism, ModMorphism)> {
    (module(), module(), module(), module(), any::<u64>()).prop_map(|(a, b, c, d, s)| {
        let mut r = rng(s);
        (random_morphism(&mut r, &a, &b), random_morphism(&mut r, &b, &c), random_morphism(&mut r, &c, &d))
    })
}

/// A map factoring through the injective envelope of its source.
fn null_map(m: &FinModule, n: &FinModule, seed: u64) -> ModMorphism {
    let env = injective_envelope(m);
    let tail = random_morphism(&mut rng(seed), &env.envelope, n);
    env.inclusion.compose(&tail).unwrap()
}

fn int_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..10, r * c).prop_map(move |d| IntMatrix::new(r, c, d).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_normal_form(a in int_matrix()) {
        let s = snf(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(s.d.is_diagonal());
        prop_assert_eq!(s.u.determinant().abs(), 1);
        prop_assert_eq!(s.v.determinant().abs(), 1);
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|&x| x > 0));
        prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solve_mod_matches_exhaustive(
        a in (1usize..4, 1usize..4).prop_flat_map(|(r, c)| {
            prop::collection::vec(-5i64..6, r * c).prop_map(move |d| IntMatrix::new(r, c, d).unwrap())
        }),
        seed in any::<u64>(),
    ) {
        use rand::Rng;
        let mut r = rng(seed);
        let moduli: Vec<i64> = (0..a.cols()).map(|_| [2, 4][r.gen_range(0..2)]).collect();
        let b: Vec<i64> = moduli.iter().map(|&m| r.gen_range(0..m)).collect();
        let satisfies = |x: &[i64]| {
            a.left_mul_vec(x).iter().zip(&b).zip(&moduli).all(|((y, bj), m)| (y - bj).rem_euclid(*m) == 0)
        };
        let exhaustive = (0..4i64.pow(a.rows() as u32)).any(|code| {
            let x: Vec<i64> = (0..a.rows()).map(|i| (code >> (2 * i)) & 3).collect();
            satisfies(&x)
        });
        match solve_mod(&a, &b, &moduli).unwrap() {
            Some(x) => prop_assert!(satisfies(&x)),
            None => prop_assert!(!exhaustive),
        }
        prop_assert_eq!(solve_mod(&a, &b, &moduli).unwrap().is_some(), exhaustive);
    }

    #[test]
    fn stable_homotopy_is_a_congruence((f, g, h) in chain(), seed in any::<u64>()) {
        let d = null_map(g.source(), g.target(), seed);
        let g2 = g.add(&d).unwrap();
        prop_assert!(stably_homotopic(&g, &g2).unwrap());
        prop_assert!(stably_homotopic(&f.compose(&g).unwrap(), &f.compose(&g2).unwrap()).unwrap());
        prop_assert!(stably_homotopic(&g.compose(&h).unwrap(), &g2.compose(&h).unwrap()).unwrap());
    }

    #[test]
    fn stable_reduction_is_a_functor((f, g, _) in chain()) {
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(stable_reduction(&fg), stable_reduction(&f).then(&stable_reduction(&g)));
        let id = ModMorphism::identity(f.source());
        prop_assert!(StableReduction::of_object(f.source()).is_invertible());
        prop_assert_eq!(stable_reduction(&id.compose(&f).unwrap()), stable_reduction(&f));
    }

    #[test]
    fn null_maps_are_exactly_those_with_zero_reduction(f in morphism()) {
        let null = factors_through_bijective(&f);
        if let Some(w) = &null {
            prop_assert!(w.validate(&f));
        }
        prop_assert_eq!(null.is_some(), stable_reduction(&f).matrix.iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn two_out_of_three((f, g, _) in chain()) {
        let fg = f.compose(&g).unwrap();
        let (wf, wg, wfg) = (is_weak_equivalence(&f), is_weak_equivalence(&g), is_weak_equivalence(&fg));
        prop_assert!(!(wf && wg) || wfg);
        prop_assert!(!(wf && wfg) || wg);
        prop_assert!(!(wg && wfg) || wf);
    }

    #[test]
    fn stable_inverses(f in morphism()) {
        match stable_inverse(&f) {
            Some(g) => {
                prop_assert!(is_weak_equivalence(&f));
                let id_m = ModMorphism::identity(f.source());
                let id_n = ModMorphism::identity(f.target());
                prop_assert!(stably_homotopic(&f.compose(&g).unwrap(), &id_m).unwrap());
                prop_assert!(stably_homotopic(&g.compose(&f).unwrap(), &id_n).unwrap());
            }
            None => prop_assert!(!is_weak_equivalence(&f)),
        }
    }

    #[test]
    fn factorizations(f in morphism()) {
        let a = factor_cof_then_trivfib(&f);
        prop_assert_eq!(a.composite(), f.clone());
        prop_assert!(is_mono(&a.first));
        prop_assert!(is_epi(&a.second) && is_weak_equivalence(&a.second));
        let b = factor_trivcof_then_fib(&f);
        prop_assert_eq!(b.composite(), f.clone());
        prop_assert!(is_mono(&b.first) && is_weak_equivalence(&b.first));
        prop_assert!(is_epi(&b.second));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn coproduct_universal_property(seed in any::<u64>()) {
        let bounds = OracleBounds::default();
        let mut r = rng(seed);
        let base = FinModule::z4();
        let x = random_under_object(&mut r, &base, 8);
        let y = random_under_object(&mut r, &base, 8);
        let t = random_under_object(&mut r, &base, 8);
        let cop = coproduct_under(&x, &y).unwrap();
        let out_of_cop = enumerate_under_homs(&cop.object, &t, &bounds).unwrap();
        for a in enumerate_under_homs(&x, &t, &bounds).unwrap() {
            for b in enumerate_under_homs(&y, &t, &bounds).unwrap() {
                let h = cop.copair(&a, &b).unwrap();
                prop_assert_eq!(cop.emb0.compose(&h).unwrap(), a.clone());
                prop_assert_eq!(cop.emb1.compose(&h).unwrap(), b.clone());
                let through = out_of_cop
                    .iter()
                    .filter(|k| cop.emb0.compose(k).unwrap() == a && cop.emb1.compose(k).unwrap() == b)
                    .count();
                prop_assert_eq!(through, 1);
            }
        }
    }

    #[test]
    fn triangle_law(seed in any::<u64>()) {
        let bounds = OracleBounds::default();
        let mut r = rng(seed);
        let base = FinModule::z4();
        let x = random_under_object(&mut r, &base, 16);
        let y = random_under_object(&mut r, &base, 16);
        let under = enumerate_under_homs(&x, &y, &bounds).unwrap();
        for h in enumerate_homs(x.carrier(), y.carrier(), &bounds).unwrap() {
            let accepted = UnderMorphism::new(x.clone(), y.clone(), h.clone()).is_ok();
            prop_assert_eq!(accepted, under.iter().any(|u| u.map() == &h));
            if accepted {
                prop_assert_eq!(x.struct_map().compose(&h).unwrap(), y.struct_map().clone());
            }
        }
    }
}
