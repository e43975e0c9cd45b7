//! The named objects and maps of the counterexample over `A = ℤ/4`.

use crate::error::Result;
use crate::module_cat::FinModule;
use crate::under_cat::{UnderMorphism, UnderObject};

/// `(ℤ/4, 2)`
pub fn doubling_source() -> UnderObject {
    UnderObject::from_rows(FinModule::z4(), FinModule::z4(), &[vec![2]]).expect("valid")
}

/// `(ℤ/4, 1)`
pub fn unit_source() -> UnderObject {
    UnderObject::initial(&FinModule::z4())
}

/// `(ℤ/4 ⊕ ℤ/2, ⌊2 0⌋)`
pub fn split_target() -> UnderObject {
    UnderObject::from_rows(FinModule::z4(), FinModule::from_counts(1, 1), &[vec![2, 0]]).expect("valid")
}

/// `w = 2: (ℤ/4, 1) → (ℤ/4, 2)`
pub fn doubling_w() -> UnderMorphism {
    UnderMorphism::from_rows(unit_source(), doubling_source(), &[vec![2]]).expect("triangle commutes")
}

/// The map `⌊a b⌋: (ℤ/4, 2) → (ℤ/4 ⊕ ℤ/2, ⌊2 0⌋)`.
pub fn pair_map(row: [i64; 2]) -> Result<UnderMorphism> {
    UnderMorphism::from_rows(doubling_source(), split_target(), &[row.to_vec()])
}

/// `(⌊1 0⌋, ⌊1 1⌋)`
pub fn headline_pair() -> (UnderMorphism, UnderMorphism) {
    (pair_map([1, 0]).expect("valid"), pair_map([1, 1]).expect("valid"))
}
