use std::collections::BTreeSet;

use rand::Rng;

use stablecat::frobenius::is_weak_equivalence;
use stablecat::homotopy_decider::{decide_ho_equal, distinct_in_quotient, solve_homotopy, HomotopySolver};
use stablecat::instances::{doubling_source, pair_map, split_target};
use stablecat::module_cat::FinModule;
use stablecat::oracle::{
    brute_equalizing_weak_equivalence, enumerate_homotopies, enumerate_under_homs, modules_up_to,
    sweep_cylinders, OracleBounds,
};
use stablecat::sample::{random_morphism, random_under_object, rng};
use stablecat::under_cat::{standard_cylinder, transfer_cylinder, UnderMorphism, UnderObject};

fn b() -> OracleBounds {
    OracleBounds::default()
}

#[test]
fn solver_matches_enumerated_homotopies() {
    let mut r = rng(11);
    let base = FinModule::z4();
    let mut checked = 0;
    while checked < 25 {
        let x = random_under_object(&mut r, &base, 8);
        let y = random_under_object(&mut r, &base, 8);
        let cyl = standard_cylinder(&x);
        if cyl.object().carrier().cardinality() > 4u128.pow(4) {
            continue;
        }
        let brute: BTreeSet<_> = enumerate_homotopies(&cyl, &y, &b())
            .unwrap()
            .into_iter()
            .map(|(_, f, g)| (f.map().rows(), g.map().rows()))
            .collect();
        let homs = enumerate_under_homs(&x, &y, &b()).unwrap();
        let solver = HomotopySolver::new(cyl.clone(), y.clone()).unwrap();
        for f in &homs {
            for g in &homs {
                let w = solver.solve(f, g).unwrap();
                assert_eq!(w.is_some(), brute.contains(&(f.map().rows(), g.map().rows())), "{f} vs {g}");
                if let Some(w) = w {
                    assert!(w.validate(f, g));
                }
            }
        }
        checked += 1;
    }
}

#[test]
fn pair_differing_by_s_is_homotopic_on_the_standard_cylinder() {
    let (f, g) = (pair_map([1, 0]).unwrap(), pair_map([3, 0]).unwrap());
    assert!(distinct_in_quotient(&f, &g).unwrap().is_none());
    let w = solve_homotopy(&standard_cylinder(f.source()), &f, &g).unwrap().expect("homotopic");
    assert!(w.validate(&f, &g));
}

#[test]
fn quotient_witnesses_exclude_every_swept_homotopy() {
    let (x, y) = (doubling_source(), split_target());
    let cylinders = sweep_cylinders(&x, 2, &b()).unwrap();
    assert!(!cylinders.is_empty());
    assert!(cylinders.iter().all(|c| c.check().holds()));
    let homs = enumerate_under_homs(&x, &y, &b()).unwrap();
    for f in &homs {
        for g in &homs {
            let distinct = distinct_in_quotient(f, g).unwrap();
            if let Some(w) = &distinct {
                assert!(w.validate(f, g));
            }
            let homotopic_somewhere =
                cylinders.iter().any(|c| solve_homotopy(c, f, g).unwrap().is_some());
            assert_eq!(distinct.is_some(), !homotopic_somewhere, "{f} vs {g}");
        }
    }
}

#[test]
fn ho_equality_agrees_with_equalizing_search() {
    let (x, y) = (doubling_source(), split_target());
    let homs = enumerate_under_homs(&x, &y, &b()).unwrap();
    for f in &homs {
        for g in &homs {
            let decided = decide_ho_equal(f, g).unwrap();
            let found = brute_equalizing_weak_equivalence(f, g, 16, &b()).unwrap();
            if let Some(w) = &found {
                assert!(is_weak_equivalence(w.map()));
                assert_eq!(w.compose(f).unwrap(), w.compose(g).unwrap());
                assert!(decided.is_equal(), "{f} vs {g}: equalized by {w}");
            }
            if let Some(witness) = decided.witness() {
                assert!(witness.validate(f, g));
            }
        }
    }
}

#[test]
fn transfers_are_valid_with_zero_base() {
    let modules = modules_up_to(16);
    let mut r = rng(5);
    let mut tried = 0;
    while tried < 40 {
        let a = &modules[r.gen_range(0..modules.len())];
        let c = &modules[r.gen_range(0..modules.len())];
        let w = random_morphism(&mut r, a, c);
        if !is_weak_equivalence(&w) {
            continue;
        }
        let w = UnderMorphism::new(UnderObject::plain(a), UnderObject::plain(c), w).unwrap();
        let t = transfer_cylinder(&w, &standard_cylinder(w.source())).unwrap();
        assert!(t.diagnostics.hypotheses_hold(), "{w}: {:?}", t.diagnostics);
        assert!(t.diagnostics.cylinder_valid);
        assert!(t.cylinder.expect("valid").check().holds());
        tried += 1;
    }
}
