//! The Frobenius model structure: null maps, weak equivalences, factorizations.

use stablecat::frobenius::{
    factor_cof_then_trivfib, factor_trivcof_then_fib, factors_through_bijective, injective_envelope,
    is_weak_equivalence, model_classes, stable_inverse, stable_reduction, stably_homotopic,
};
use stablecat::module_cat::{FinModule, ModMorphism};

fn main() -> stablecat::Result<()> {
    let m = FinModule::from_counts(1, 1);
    let env = injective_envelope(&m);
    println!("I({m}) = {} via {}", env.envelope, env.inclusion);

    let id2 = ModMorphism::identity(&FinModule::z2());
    println!("id on Z/2 null: {}", factors_through_bijective(&id2).is_some());
    let two = ModMorphism::scalar(&FinModule::z4(), 2);
    let w = factors_through_bijective(&two).expect("ℤ/4 is bijective");
    println!("2 on Z/4 factors through {}: {} then {}", w.through, w.first, w.second);

    let p = ModMorphism::new(m.clone(), FinModule::z2(), &[vec![0], vec![1]])?;
    println!("projection {p}: reduction {:?}, classes {:?}", stable_reduction(&p), model_classes(&p));
    let q = stable_inverse(&p).expect("weak equivalence");
    println!("stable inverse {q}, homotopic round trip: {}", stably_homotopic(&q.compose(&p)?, &id2)?);

    let f = ModMorphism::new(FinModule::z2(), FinModule::z4(), &[vec![2]])?;
    let a = factor_cof_then_trivfib(&f);
    let b = factor_trivcof_then_fib(&f);
    println!("{f} = {} · {}  (cofibration, trivial fibration)", a.first, a.second);
    println!("{f} = {} · {}  (trivial cofibration, fibration)", b.first, b.second);
    assert!(is_weak_equivalence(&a.second) && is_weak_equivalence(&b.first));
    Ok(())
}
