//! Positive control: with zero base the quotient by homotopy is faithful on
//! every parallel pair among modules of order at most 16.

use stablecat::report::{base_zero_sweep, BaseZeroConfig};

fn main() -> stablecat::Result<()> {
    let s = base_zero_sweep(&BaseZeroConfig::default())?;
    println!(
        "{} hom-sets, {} morphisms, {} pairs: {} mismatches, {} violations, {} undetermined",
        s.hom_sets, s.morphisms, s.pairs, s.mismatches, s.violations, s.undetermined
    );
    assert_eq!(s.violations, 0);
    Ok(())
}
