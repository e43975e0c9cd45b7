//! Finite ℤ/4-modules: morphisms, kernels, cokernels, pushouts.

use stablecat::module_cat::{cokernel, is_epi, is_iso, is_mono, kernel, pushout, FinModule, ModMorphism};

fn main() -> stablecat::Result<()> {
    let z4 = FinModule::z4();
    let m = FinModule::from_counts(1, 1); // ℤ/4 ⊕ ℤ/2
    let f = ModMorphism::new(z4.clone(), m.clone(), &[vec![1, 1]])?;
    let two = ModMorphism::scalar(&z4, 2);
    println!("f = {f}  mono {} epi {} iso {}", is_mono(&f), is_epi(&f), is_iso(&f));

    let k = kernel(&two);
    let c = cokernel(&two);
    println!("ker 2 = {}, coker 2 = {}", k.module, c.module);

    let g = ModMorphism::new(z4.clone(), z4.clone(), &[vec![2]])?;
    let po = pushout(&f, &g)?;
    println!("pushout of f and 2: {} with legs {} and {}", po.object, po.leg0, po.leg1);
    assert_eq!(f.compose(&po.leg0)?, g.compose(&po.leg1)?);

    let h = f.compose(&ModMorphism::identity(&m))?;
    assert_eq!(h, f);
    println!("composition is diagrammatic: f·id = {h}");
    Ok(())
}
