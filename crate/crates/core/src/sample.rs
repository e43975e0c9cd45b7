//! Seeded random modules, morphisms and under-objects.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::module_cat::{FinModule, ModMorphism};
use crate::under_cat::UnderObject;

pub const DEFAULT_SEED: u64 = 20;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly chosen canonical module of order at most `max_order`.
pub fn random_module<R: Rng>(rng: &mut R, max_order: u128) -> FinModule {
    let all = crate::oracle::modules_up_to(max_order);
    all[rng.gen_range(0..all.len())].clone()
}

/// A uniformly random homomorphism `m → n`.
pub fn random_morphism<R: Rng>(rng: &mut R, m: &FinModule, n: &FinModule) -> ModMorphism {
    ModMorphism::from_fn(m.clone(), n.clone(), |i, j| {
        let (oi, oj) = (m.order(i), n.order(j));
        let period = oi.min(oj) as i64;
        let unit = if oi == 2 && oj == 4 { 2 } else { 1 };
        rng.gen_range(0..period) * unit
    })
    .expect("entries respect the order constraints")
}

pub fn random_under_object<R: Rng>(rng: &mut R, base: &FinModule, max_order: u128) -> UnderObject {
    let carrier = random_module(rng, max_order);
    UnderObject::new(random_morphism(rng, base, &carrier))
}
