//! Objects under ℤ/4: coproducts, cylinders, cofibrant replacement, and the
//! failed transfer of a cylinder along `w = 2`.

use stablecat::instances::{doubling_source, doubling_w, split_target};
use stablecat::report::check_hypotheses;
use stablecat::under_cat::{
    coproduct_under, cofibrant_replacement, is_cofibrant, standard_cylinder, transfer_cylinder,
};

fn main() -> stablecat::Result<()> {
    let x = doubling_source();
    let y = split_target();
    println!("x = {x} cofibrant: {}", is_cofibrant(&x));
    println!("y = {y} cofibrant: {}", is_cofibrant(&y));

    let xx = coproduct_under(&x, &x)?;
    println!("x ⊔ x = {}", xx.object);

    let cyl = standard_cylinder(&x);
    println!("standard cylinder on {}: checks {:?}", cyl.object(), cyl.check());

    let rep = cofibrant_replacement(&x);
    println!("cofibrant replacement {} via q = {}", rep.replacement, rep.q.map());

    let w = doubling_w();
    let t = transfer_cylinder(&w, &standard_cylinder(w.source()))?;
    println!("transfer along {w}: {:?}", t.diagnostics);
    let h = check_hypotheses(&w)?;
    println!(
        "w ⊔ w: {:?} -> {:?} is a weak equivalence: {}",
        h.coproduct_source.orders, h.coproduct_target.orders, h.coproduct_map_weak_equivalence
    );
    Ok(())
}
