//! Every cylinder on `(ℤ/4, 2)` with carrier `(ℤ/4)^k`, `k ≤ 3`, and every
//! homotopy into `(ℤ/4 ⊕ ℤ/2, ⌊2 0⌋)`: the ends always differ by an element of `S`.

use stablecat::homotopy_decider::homotopy_difference_bound;
use stablecat::instances::{doubling_source, headline_pair, split_target};
use stablecat::oracle::OracleBounds;
use stablecat::report::obstruction_sweep;

fn main() -> stablecat::Result<()> {
    let bound = homotopy_difference_bound(&doubling_source(), &split_target())?;
    let s: Vec<String> = bound.elements().iter().map(|d| d.to_string()).collect();
    println!("S = {{{}}}", s.join(", "));

    let (f, g) = headline_pair();
    let sweep = obstruction_sweep(3, Some((&f, &g)), &OracleBounds::default())?;
    println!("cylinders by rank {:?}", sweep.cylinders_by_rank);
    println!("homotopies {}", sweep.homotopies);
    println!("differences seen {:?}, outside S: {}", sweep.observed_differences, sweep.outside_bound);
    println!("homotopies between {} and {}: {}", f.map(), g.map(), sweep.pair_homotopies);
    Ok(())
}
