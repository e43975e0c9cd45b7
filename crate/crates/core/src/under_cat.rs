//! The under-category `(A ↓ fgMod(ℤ/4))`.
//!
//! An object is a structure map `A → Y`; a morphism is a carrier map making
//! the triangle commute. Model-category classes are inherited from the
//! carrier maps. Coproducts are pushouts over `A`, and the cylinder of an
//! object `X` is built on the under-coproduct `X ⊔_A X`.

use std::fmt;

use crate::error::{Error, Result};
use crate::frobenius::{
    factor_cof_then_trivfib, is_weak_equivalence, model_classes, require_weak_equivalence,
    ModelClasses,
};
use crate::module_cat::{is_epi, is_mono, pushout, FinModule, HomProblem, ModMorphism, Pushout};

/// An object `(Y, f: A → Y)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnderObject {
    struct_map: ModMorphism,
}

impl UnderObject {
    pub fn new(struct_map: ModMorphism) -> Self {
        Self { struct_map }
    }

    pub fn from_rows(base: FinModule, carrier: FinModule, rows: &[Vec<i64>]) -> Result<Self> {
        Ok(Self::new(ModMorphism::new(base, carrier, rows)?))
    }

    /// `(A, id)`, the initial object.
    pub fn initial(base: &FinModule) -> Self {
        Self::new(ModMorphism::identity(base))
    }

    /// A plain module viewed under the zero base.
    pub fn plain(carrier: &FinModule) -> Self {
        Self::new(ModMorphism::zero(FinModule::zero(), carrier.clone()))
    }

    pub fn base(&self) -> &FinModule {
        self.struct_map.source()
    }

    pub fn carrier(&self) -> &FinModule {
        self.struct_map.target()
    }

    pub fn struct_map(&self) -> &ModMorphism {
        &self.struct_map
    }
}

impl fmt::Debug for UnderObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UnderObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .struct_map
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "({}, [{}])", self.carrier(), rows.join("; "))
    }
}

/// A commuting triangle `struct(source) · map = struct(target)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnderMorphism {
    source: UnderObject,
    target: UnderObject,
    map: ModMorphism,
}

impl UnderMorphism {
    pub fn new(source: UnderObject, target: UnderObject, map: ModMorphism) -> Result<Self> {
        if source.base() != target.base() {
            return Err(Error::BaseMismatch(format!("{} vs {}", source.base(), target.base())));
        }
        if map.source() != source.carrier() || map.target() != target.carrier() {
            return Err(Error::ObjectMismatch(format!(
                "map {} -> {} between carriers {} and {}",
                map.source(),
                map.target(),
                source.carrier(),
                target.carrier()
            )));
        }
        if &source.struct_map.compose_unchecked(&map) != target.struct_map() {
            return Err(Error::TriangleFails(format!("{source} -> {target} via {map}")));
        }
        Ok(Self { source, target, map })
    }

    pub fn from_rows(source: UnderObject, target: UnderObject, rows: &[Vec<i64>]) -> Result<Self> {
        let map = ModMorphism::new(source.carrier().clone(), target.carrier().clone(), rows)?;
        Self::new(source, target, map)
    }

    pub fn identity(x: &UnderObject) -> Self {
        Self { source: x.clone(), target: x.clone(), map: ModMorphism::identity(x.carrier()) }
    }

    pub fn source(&self) -> &UnderObject {
        &self.source
    }

    pub fn target(&self) -> &UnderObject {
        &self.target
    }

    pub fn map(&self) -> &ModMorphism {
        &self.map
    }

    pub fn is_parallel_to(&self, other: &UnderMorphism) -> bool {
        self.source == other.source && self.target == other.target
    }

    /// Diagrammatic composite: first `self`, then `g`.
    pub fn compose(&self, g: &UnderMorphism) -> Result<UnderMorphism> {
        if self.target != g.source {
            return Err(Error::ObjectMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, g.source, g.target
            )));
        }
        Ok(UnderMorphism {
            source: self.source.clone(),
            target: g.target.clone(),
            map: self.map.compose_unchecked(&g.map),
        })
    }
}

impl fmt::Debug for UnderMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UnderMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} -> {}", self.map, self.source, self.target)
    }
}

pub fn under_model_predicates(m: &UnderMorphism) -> ModelClasses {
    model_classes(&m.map)
}

/// `x ⊔_A y`, the pushout of the two structure maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnderCoproduct {
    pub object: UnderObject,
    pub emb0: UnderMorphism,
    pub emb1: UnderMorphism,
    pushout: Pushout,
}

pub fn coproduct_under(x: &UnderObject, y: &UnderObject) -> Result<UnderCoproduct> {
    if x.base() != y.base() {
        return Err(Error::BaseMismatch(format!("{} vs {}", x.base(), y.base())));
    }
    let po = pushout(x.struct_map(), y.struct_map())?;
    let object = UnderObject::new(x.struct_map.compose_unchecked(&po.leg0));
    let emb0 = UnderMorphism::new(x.clone(), object.clone(), po.leg0.clone())?;
    let emb1 = UnderMorphism::new(y.clone(), object.clone(), po.leg1.clone())?;
    Ok(UnderCoproduct { object, emb0, emb1, pushout: po })
}

impl UnderCoproduct {
    pub fn left(&self) -> &UnderObject {
        self.emb0.source()
    }

    pub fn right(&self) -> &UnderObject {
        self.emb1.source()
    }

    /// The induced morphism `⌊f over g⌋: x ⊔ y → t`.
    pub fn copair(&self, f: &UnderMorphism, g: &UnderMorphism) -> Result<UnderMorphism> {
        if f.source() != self.left() || g.source() != self.right() || f.target() != g.target() {
            return Err(Error::ObjectMismatch(format!(
                "copair of {f} and {g} out of {} ⊔ {}",
                self.left(),
                self.right()
            )));
        }
        let map = self.pushout.mediator(&f.map, &g.map)?;
        UnderMorphism::new(self.object.clone(), f.target().clone(), map)
    }

    /// The fold map `x ⊔ x → x`.
    pub fn fold(&self) -> Result<UnderMorphism> {
        let id = UnderMorphism::identity(self.left());
        self.copair(&id, &id)
    }

    /// The automorphism exchanging the two summands of `x ⊔ x`.
    pub fn swap(&self) -> Result<UnderMorphism> {
        self.copair(&self.emb1, &self.emb0)
    }
}

/// `f ⊔ g: source → target` between two chosen coproducts.
pub fn coproduct_of_morphisms(
    f: &UnderMorphism,
    g: &UnderMorphism,
    source: &UnderCoproduct,
    target: &UnderCoproduct,
) -> Result<UnderMorphism> {
    if f.target() != target.left() || g.target() != target.right() {
        return Err(Error::ObjectMismatch("summand maps do not land in the target coproduct".into()));
    }
    source.copair(&f.compose(&target.emb0)?, &g.compose(&target.emb1)?)
}

pub fn is_cofibrant(x: &UnderObject) -> bool {
    is_mono(x.struct_map())
}

/// Every object is fibrant: the carrier's map to the zero module is epi.
pub fn is_fibrant(x: &UnderObject) -> bool {
    is_epi(&ModMorphism::zero(x.carrier().clone(), FinModule::zero()))
}

/// A trivial fibration `q: x′ → x` out of a cofibrant object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofibrantReplacement {
    pub replacement: UnderObject,
    pub q: UnderMorphism,
}

/// Factors the structure map as a mono followed by a trivial fibration.
/// Cofibrant objects are returned unchanged with `q = id`.
pub fn cofibrant_replacement(x: &UnderObject) -> CofibrantReplacement {
    if is_cofibrant(x) {
        return CofibrantReplacement { replacement: x.clone(), q: UnderMorphism::identity(x) };
    }
    let fac = factor_cof_then_trivfib(x.struct_map());
    let replacement = UnderObject::new(fac.first);
    let q = UnderMorphism::new(replacement.clone(), x.clone(), fac.second)
        .expect("factorization makes the triangle commute");
    CofibrantReplacement { replacement, q }
}

/// Which of the three cylinder conditions hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CylinderCheck {
    pub ins_cofibration: bool,
    pub sigma_weak_equivalence: bool,
    pub fold_law: bool,
}

impl CylinderCheck {
    pub fn holds(&self) -> bool {
        self.ins_cofibration && self.sigma_weak_equivalence && self.fold_law
    }
}

/// A cylinder `x ⊔ x --ins--> Z --σ--> x` with `ins` a cofibration, `σ` a weak
/// equivalence and `ins·σ` the fold map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder {
    coproduct: UnderCoproduct,
    object: UnderObject,
    ins: UnderMorphism,
    ins0: UnderMorphism,
    ins1: UnderMorphism,
    sigma: UnderMorphism,
}

/// Checks the cylinder conditions for carrier maps `ins` and `sigma`.
pub fn check_cylinder(
    coproduct: &UnderCoproduct,
    ins: &ModMorphism,
    sigma: &ModMorphism,
) -> Result<CylinderCheck> {
    let fold = coproduct.fold()?;
    Ok(CylinderCheck {
        ins_cofibration: is_mono(ins),
        sigma_weak_equivalence: is_weak_equivalence(sigma),
        fold_law: ins.compose(sigma).as_ref() == Ok(fold.map()),
    })
}

impl Cylinder {
    /// Assembles a cylinder for `coproduct.left()` from carrier maps; the
    /// structure map of `Z` is induced through `ins`.
    pub fn new(coproduct: UnderCoproduct, ins: ModMorphism, sigma: ModMorphism) -> Result<Self> {
        if coproduct.left() != coproduct.right() {
            return Err(Error::ObjectMismatch("cylinder needs a coproduct x ⊔ x".into()));
        }
        let check = check_cylinder(&coproduct, &ins, &sigma)?;
        if !check.holds() {
            return Err(Error::Precondition(format!("not a cylinder: {check:?}")));
        }
        let object = UnderObject::new(coproduct.object.struct_map().compose(&ins)?);
        let ins = UnderMorphism::new(coproduct.object.clone(), object.clone(), ins)?;
        let sigma = UnderMorphism::new(object.clone(), coproduct.left().clone(), sigma)?;
        let ins0 = coproduct.emb0.compose(&ins)?;
        let ins1 = coproduct.emb1.compose(&ins)?;
        Ok(Self { coproduct, object, ins, ins0, ins1, sigma })
    }

    /// The object the cylinder is for.
    pub fn base_object(&self) -> &UnderObject {
        self.coproduct.left()
    }

    pub fn coproduct(&self) -> &UnderCoproduct {
        &self.coproduct
    }

    /// `Z`
    pub fn object(&self) -> &UnderObject {
        &self.object
    }

    pub fn ins(&self) -> &UnderMorphism {
        &self.ins
    }

    pub fn ins0(&self) -> &UnderMorphism {
        &self.ins0
    }

    pub fn ins1(&self) -> &UnderMorphism {
        &self.ins1
    }

    pub fn sigma(&self) -> &UnderMorphism {
        &self.sigma
    }

    pub fn check(&self) -> CylinderCheck {
        check_cylinder(&self.coproduct, self.ins.map(), self.sigma.map())
            .expect("stored cylinder data is consistent")
    }

    /// The same cylinder with `ins₀` and `ins₁` exchanged.
    pub fn swapped(&self) -> Cylinder {
        let swap = self.coproduct.swap().expect("x ⊔ x has a swap");
        let ins = swap.map().compose_unchecked(self.ins.map());
        Cylinder::new(self.coproduct.clone(), ins, self.sigma.map().clone())
            .expect("precomposing with an automorphism keeps the cylinder conditions")
    }
}

/// Factors the fold map `x ⊔ x → x` as `(∇, ι)` followed by the projection.
pub fn standard_cylinder(x: &UnderObject) -> Cylinder {
    let coproduct = coproduct_under(x, x).expect("same base");
    let fold = coproduct.fold().expect("identity cocone commutes");
    let fac = factor_cof_then_trivfib(fold.map());
    Cylinder::new(coproduct, fac.first, fac.second)
        .expect("the mono / trivial fibration factorization of the fold is a cylinder")
}

/// Which hypotheses of the cylinder-transfer argument held on an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct TransferDiagnostics {
    /// `w ⊔ w` is a weak equivalence.
    pub coproduct_map_weak_equivalence: bool,
    /// The pushout leg `w′: Z′ → Z` is a weak equivalence.
    pub w_prime_weak_equivalence: bool,
    /// The induced `s: Z → X` is a weak equivalence.
    pub s_weak_equivalence: bool,
    /// `s` is the only solution of `i·s = ∇`, `w′·s = σ′·w`.
    pub s_unique: bool,
    /// `i: X ⊔ X → Z` is a cofibration.
    pub i_cofibration: bool,
    /// `(Z, i, s)` satisfies all cylinder conditions.
    pub cylinder_valid: bool,
}

impl TransferDiagnostics {
    pub fn hypotheses_hold(&self) -> bool {
        self.coproduct_map_weak_equivalence && self.w_prime_weak_equivalence
    }
}

/// Data produced by pushing a cylinder for `X′` along `w: X′ → X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderTransfer {
    pub w: UnderMorphism,
    pub source_cylinder: Cylinder,
    /// `X ⊔ X`
    pub coproduct: UnderCoproduct,
    /// `w ⊔ w: X′ ⊔ X′ → X ⊔ X`
    pub coproduct_map: UnderMorphism,
    /// `Z`, the pushout of `w ⊔ w` along `ins^{Z′}`.
    pub object: UnderObject,
    pub i: UnderMorphism,
    pub w_prime: UnderMorphism,
    pub s: UnderMorphism,
    /// Present exactly when `(Z, i, s)` validates as a cylinder.
    pub cylinder: Option<Cylinder>,
    pub diagnostics: TransferDiagnostics,
    pushout: Pushout,
}

/// Pushes the cylinder `z_prime` for `X′` along the weak equivalence `w`.
///
/// The construction never fails because a hypothesis breaks; the diagnostics
/// report which ones held.
pub fn transfer_cylinder(w: &UnderMorphism, z_prime: &Cylinder) -> Result<CylinderTransfer> {
    require_weak_equivalence(w.map(), "w")?;
    if z_prime.base_object() != w.source() {
        return Err(Error::ObjectMismatch(format!(
            "cylinder is for {}, w starts at {}",
            z_prime.base_object(),
            w.source()
        )));
    }
    let x = w.target();
    let coproduct = coproduct_under(x, x)?;
    let coproduct_map = coproduct_of_morphisms(w, w, z_prime.coproduct(), &coproduct)?;

    let po = pushout(z_prime.ins().map(), coproduct_map.map())?;
    let object = UnderObject::new(coproduct.object.struct_map().compose(&po.leg1)?);
    let i = UnderMorphism::new(coproduct.object.clone(), object.clone(), po.leg1.clone())?;
    let w_prime = UnderMorphism::new(z_prime.object().clone(), object.clone(), po.leg0.clone())?;

    let fold = coproduct.fold()?;
    let sigma_w = z_prime.sigma().compose(w)?;
    let s_map = po.mediator(sigma_w.map(), fold.map())?;
    let s = UnderMorphism::new(object.clone(), x.clone(), s_map)?;
    let s_unique = HomProblem::new(
        object.carrier().clone(),
        x.carrier().clone(),
        vec![i.map().clone(), w_prime.map().clone()],
    )?
    .solution_count()
        == 1;

    let cylinder = Cylinder::new(coproduct.clone(), i.map().clone(), s.map().clone()).ok();
    let diagnostics = TransferDiagnostics {
        coproduct_map_weak_equivalence: is_weak_equivalence(coproduct_map.map()),
        w_prime_weak_equivalence: is_weak_equivalence(w_prime.map()),
        s_weak_equivalence: is_weak_equivalence(s.map()),
        s_unique,
        i_cofibration: is_mono(i.map()),
        cylinder_valid: cylinder.is_some(),
    };
    Ok(CylinderTransfer {
        w: w.clone(),
        source_cylinder: z_prime.clone(),
        coproduct,
        coproduct_map,
        object,
        i,
        w_prime,
        s,
        cylinder,
        diagnostics,
        pushout: po,
    })
}

/// A homotopy `H: Z → Y` obtained from `H′: Z′ → Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferredHomotopy {
    pub homotopy: UnderMorphism,
    /// `H` is the only map with `i·H = ⌊f over g⌋` and `w′·H = H′`.
    pub unique: bool,
}

/// Transfers a homotopy `H′` from `w·f` to `w·g` on `Z′` to a map `H` on `Z`
/// with `ins^Z·H = ⌊f over g⌋` and `w′·H = H′`.
pub fn transfer_homotopy(
    t: &CylinderTransfer,
    f: &UnderMorphism,
    g: &UnderMorphism,
    h_prime: &UnderMorphism,
) -> Result<TransferredHomotopy> {
    if !f.is_parallel_to(g) || f.source() != t.w.target() {
        return Err(Error::ObjectMismatch("f and g must be parallel maps out of X".into()));
    }
    if h_prime.source() != t.source_cylinder.object() || h_prime.target() != f.target() {
        return Err(Error::ObjectMismatch("H′ must map Z′ to the target of f".into()));
    }
    let fg = t.coproduct.copair(f, g)?;
    let lhs = t.coproduct_map.compose(&fg)?;
    let rhs = t.source_cylinder.ins().compose(h_prime)?;
    if lhs != rhs {
        return Err(Error::Precondition("(w ⊔ w)·⌊f over g⌋ differs from ins^{Z′}·H′".into()));
    }
    let h = t.pushout.mediator(h_prime.map(), fg.map())?;
    let homotopy = UnderMorphism::new(t.object.clone(), f.target().clone(), h)?;
    let unique = HomProblem::new(
        t.object.carrier().clone(),
        f.target().carrier().clone(),
        vec![t.i.map().clone(), t.w_prime.map().clone()],
    )?
    .solution_count()
        == 1;
    Ok(TransferredHomotopy { homotopy, unique })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::is_bijective_object;
    use crate::module_cat::is_iso;

    fn md(orders: &[u8]) -> FinModule {
        FinModule::new(orders.to_vec()).unwrap()
    }

    fn obj(carrier: &[u8], rows: &[&[i64]]) -> UnderObject {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        UnderObject::from_rows(FinModule::z4(), md(carrier), &rows).unwrap()
    }

    fn doubling_source() -> UnderObject {
        obj(&[4], &[&[2]])
    }

    fn unit_source() -> UnderObject {
        obj(&[4], &[&[1]])
    }

    fn w() -> UnderMorphism {
        UnderMorphism::from_rows(unit_source(), doubling_source(), &[vec![2]]).unwrap()
    }

    #[test]
    fn triangle_is_enforced() {
        let y = obj(&[4, 2], &[&[2, 0]]);
        assert!(UnderMorphism::from_rows(doubling_source(), y.clone(), &[vec![1, 0]]).is_ok());
        assert!(UnderMorphism::from_rows(doubling_source(), y.clone(), &[vec![1, 1]]).is_ok());
        assert!(matches!(
            UnderMorphism::from_rows(doubling_source(), y, &[vec![0, 1]]),
            Err(Error::TriangleFails(_))
        ));
    }

    #[test]
    fn model_predicates() {
        let p = under_model_predicates(&w());
        assert!(p.weak_equivalence);
        assert!(!p.cofibration);
        let p = under_model_predicates(&UnderMorphism::identity(&doubling_source()));
        assert!(p.weak_equivalence && p.cofibration && p.fibration);
        let zero = UnderObject::plain(&FinModule::zero());
        let p = under_model_predicates(&UnderMorphism::identity(&zero));
        assert!(p.weak_equivalence && p.cofibration && p.fibration);
    }

    #[test]
    fn coproducts() {
        let c = coproduct_under(&doubling_source(), &doubling_source()).unwrap();
        assert_eq!(c.object.carrier(), &md(&[4, 2]));
        let c = coproduct_under(&unit_source(), &unit_source()).unwrap();
        assert_eq!(c.object.carrier(), &md(&[4]));
        let x = obj(&[4, 2], &[&[2, 1]]);
        let c = coproduct_under(&x, &UnderObject::initial(&FinModule::z4())).unwrap();
        assert_eq!(c.object.carrier(), x.carrier());
        assert!(is_iso(c.emb0.map()));
        let other = UnderObject::plain(&md(&[4]));
        assert!(matches!(coproduct_under(&x, &other), Err(Error::BaseMismatch(_))));
    }

    #[test]
    fn cofibrancy() {
        assert!(!is_cofibrant(&doubling_source()));
        assert!(is_cofibrant(&unit_source()));
        assert!(!is_cofibrant(&obj(&[4, 2], &[&[2, 0]])));
        assert!(is_fibrant(&doubling_source()));
    }

    #[test]
    fn replacement_of_doubling_source() {
        let r = cofibrant_replacement(&doubling_source());
        assert_eq!(r.replacement.carrier(), &md(&[4, 4]));
        assert_eq!(r.replacement.struct_map().rows(), vec![vec![2, 1]]);
        assert!(is_cofibrant(&r.replacement));
        let p = under_model_predicates(&r.q);
        assert!(p.fibration && p.weak_equivalence);

        let r = cofibrant_replacement(&unit_source());
        assert_eq!(r.q, UnderMorphism::identity(&unit_source()));
        let zero = UnderObject::plain(&FinModule::zero());
        assert_eq!(cofibrant_replacement(&zero).q, UnderMorphism::identity(&zero));
    }

    #[test]
    fn standard_cylinders() {
        let c = standard_cylinder(&doubling_source());
        assert!(c.check().holds());
        assert!(is_bijective_object(c.object().carrier()));
        // 2·ins₀ = t = 2·ins₁
        assert_eq!(c.ins0().map().scale(2), c.ins1().map().scale(2));

        let init = UnderObject::initial(&FinModule::z4());
        let c = standard_cylinder(&init);
        assert_eq!(c.ins0(), c.ins1());
        assert!(is_weak_equivalence(c.sigma().map()));

        let c = standard_cylinder(&unit_source());
        assert!(c.check().holds());
        assert_eq!(c.object().carrier(), &md(&[4, 4]));
        let s = c.swapped();
        assert_eq!(s.ins0(), c.ins1());
        assert_eq!(s.ins1(), c.ins0());
    }

    #[test]
    fn transfer_along_doubling_breaks_the_hypothesis() {
        let zp = standard_cylinder(&unit_source());
        let t = transfer_cylinder(&w(), &zp).unwrap();
        assert!(!t.diagnostics.coproduct_map_weak_equivalence);
        assert!(!t.diagnostics.hypotheses_hold());
        assert_eq!(t.coproduct_map.target().carrier(), &md(&[4, 2]));
        assert!(t.diagnostics.s_unique);
        assert!(t.diagnostics.i_cofibration);
        assert_eq!(t.i.compose(&t.s).unwrap(), t.coproduct.fold().unwrap());
    }

    #[test]
    fn transfer_along_identity() {
        let x = doubling_source();
        let zp = standard_cylinder(&x);
        let t = transfer_cylinder(&UnderMorphism::identity(&x), &zp).unwrap();
        assert!(t.diagnostics.hypotheses_hold());
        assert!(t.diagnostics.cylinder_valid);
        assert!(is_iso(t.w_prime.map()));
        assert_eq!(t.object.carrier(), zp.object().carrier());
    }

    #[test]
    fn transfer_requires_a_weak_equivalence() {
        let z2 = UnderObject::plain(&md(&[2]));
        let zero = UnderMorphism::new(z2.clone(), z2.clone(), ModMorphism::zero(md(&[2]), md(&[2]))).unwrap();
        let err = transfer_cylinder(&zero, &standard_cylinder(&z2));
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn reflexive_homotopy_transfers() {
        let x = UnderObject::plain(&md(&[4, 2]));
        let xp = UnderObject::plain(&md(&[2]));
        let w = UnderMorphism::from_rows(xp.clone(), x.clone(), &[vec![2, 1]]).unwrap();
        let zp = standard_cylinder(&xp);
        let t = transfer_cylinder(&w, &zp).unwrap();
        assert!(t.diagnostics.hypotheses_hold() && t.diagnostics.cylinder_valid);

        let y = UnderObject::plain(&md(&[4, 2]));
        let f = UnderMorphism::from_rows(x.clone(), y.clone(), &[vec![1, 1], vec![2, 0]]).unwrap();
        let h_prime = zp.sigma().compose(&w).unwrap().compose(&f).unwrap();
        let h = transfer_homotopy(&t, &f, &f, &h_prime).unwrap();
        assert!(h.unique);
        let cyl = t.cylinder.as_ref().unwrap();
        assert_eq!(cyl.ins0().compose(&h.homotopy).unwrap(), f);
        assert_eq!(cyl.ins1().compose(&h.homotopy).unwrap(), f);
        assert_eq!(h.homotopy, cyl.sigma().compose(&f).unwrap());

        let g = UnderMorphism::from_rows(x, y, &[vec![0, 1], vec![2, 0]]).unwrap();
        assert!(matches!(transfer_homotopy(&t, &f, &g, &h_prime), Err(Error::Precondition(_))));
    }
}
