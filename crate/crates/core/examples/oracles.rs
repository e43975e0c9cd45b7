//! Library predicates against element-level brute force on one hom-set.

use stablecat::frobenius::{factors_through_bijective, is_weak_equivalence};
use stablecat::module_cat::{is_epi, is_mono, FinModule};
use stablecat::oracle::{
    brute_epi, brute_mono, brute_weak_equivalence, enumerate_homs, NullSetOracle, OracleBounds,
    TorsionQuotient,
};

fn main() -> stablecat::Result<()> {
    let bounds = OracleBounds::from_env()?;
    let m = FinModule::from_counts(1, 1);
    let n = FinModule::from_counts(1, 1);
    let homs = enumerate_homs(&m, &n, &bounds)?;
    let null = NullSetOracle::new(&m, &n, 4, &bounds)?;
    let (qm, qn) = (TorsionQuotient::new(&m, &bounds)?, TorsionQuotient::new(&n, &bounds)?);
    let mut agree = 0;
    for f in &homs {
        let same = is_mono(f) == brute_mono(f, &bounds)?
            && is_epi(f) == brute_epi(f, &bounds)?
            && factors_through_bijective(f).is_some() == null.contains(f)
            && is_weak_equivalence(f) == brute_weak_equivalence(f, &qm, &qn);
        agree += same as usize;
        if let Some(k) = null.least_k(&f.rows()) {
            println!("{f} factors through (Z/4)^{k}");
        }
    }
    println!("{agree}/{} maps {m} -> {m} agree with the oracles", homs.len());
    Ok(())
}
