//! Presentations, kernels, cokernels and pushouts.
//!
//! Every construction renormalizes its result through [`decompose`], so the
//! objects produced here are always in canonical form.

use crate::error::{Error, Result};
use crate::linalg::{lattice_basis, left_kernel, snf, solve_int, IntMatrix};

use super::{direct_sum, Biproduct, FinModule, ModMorphism};

/// An abelian group `ℤ^generators / rowspace(relations)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubquotientPresentation {
    generators: usize,
    relations: IntMatrix,
}

impl SubquotientPresentation {
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self> {
        if relations.cols() != generators {
            return Err(Error::InvalidPresentation(format!(
                "{} relation columns for {generators} generators",
                relations.cols()
            )));
        }
        Ok(Self { generators, relations })
    }

    /// The presentation of a canonical module on its own generators.
    pub fn of_module(m: &FinModule) -> Self {
        let orders: Vec<i64> = m.orders().iter().map(|&o| o as i64).collect();
        Self { generators: m.ngens(), relations: IntMatrix::diagonal(m.ngens(), m.ngens(), &orders) }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Whether an integer vector lies in the relation lattice.
    pub fn is_relation(&self, x: &[i64]) -> bool {
        x.iter().all(|&v| v == 0)
            || solve_int(&self.relations, x).expect("length checked by caller").is_some()
    }
}

/// A presented module identified with a canonical one.
///
/// `to_canonical` has one row per presentation generator and sends it to its
/// class in `module`; `from_canonical` has one row per canonical generator and
/// gives an integer lift in the presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub module: FinModule,
    pub to_canonical: IntMatrix,
    pub from_canonical: IntMatrix,
}

impl Decomposition {
    /// Class of an integer combination of presentation generators.
    pub fn canonical_image(&self, x: &[i64]) -> Vec<u8> {
        self.module.reduce(&self.to_canonical.left_mul_vec(x))
    }
}

/// Identifies a presented module with `(ℤ/4)^k ⊕ (ℤ/2)^l` via Smith form.
pub fn decompose(p: &SubquotientPresentation) -> Result<Decomposition> {
    let s = snf(&p.relations);
    let rank = s.rank();
    let mut fours = Vec::new();
    let mut twos = Vec::new();
    for j in 0..p.generators {
        let factor = if j < rank { s.d.get(j, j) } else { 0 };
        match factor {
            1 => {}
            2 => twos.push(j),
            4 => fours.push(j),
            0 => {
                return Err(Error::InvalidPresentation(
                    "presented group is infinite (missing order relations)".into(),
                ))
            }
            other => {
                return Err(Error::InvalidPresentation(format!(
                    "invariant factor {other} is not 1, 2 or 4"
                )))
            }
        }
    }
    let module = FinModule::from_counts(fours.len(), twos.len());
    let keep: Vec<usize> = fours.into_iter().chain(twos).collect();
    let to_canonical = s.v.select_cols(&keep);
    let from_canonical = s.v.unimodular_inverse().select_rows(&keep);
    Ok(Decomposition { module, to_canonical, from_canonical })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    pub module: FinModule,
    pub inclusion: ModMorphism,
}

/// Kernel of `f`, with its inclusion into `source(f)`.
pub fn kernel(f: &ModMorphism) -> Kernel {
    let (m, n) = (f.source(), f.target());
    let k = m.ngens();
    if k == 0 {
        return Kernel { module: FinModule::zero(), inclusion: ModMorphism::zero(FinModule::zero(), m.clone()) };
    }
    // x ∈ ℤ^k lies over the kernel iff x·F ∈ rowspace(diag(orders of N)).
    let n_orders: Vec<i64> = n.orders().iter().map(|&o| o as i64).collect();
    let augmented = f
        .to_int_matrix()
        .vstack(&IntMatrix::diagonal(n.ngens(), n.ngens(), &n_orders))
        .expect("same column count");
    let lifts = left_kernel(&augmented).select_cols(&(0..k).collect::<Vec<_>>());
    let basis = lattice_basis(&lifts);
    debug_assert_eq!(basis.rows(), k, "kernel lattice contains the order relations");

    // Relations: the order relations of M, rewritten in the lattice basis.
    let mut rel_rows = Vec::with_capacity(k);
    for i in 0..k {
        let mut target = vec![0i64; k];
        target[i] = m.order(i) as i64;
        let coords = solve_int(&basis, &target)
            .expect("lengths agree")
            .expect("order relations lie in the kernel lattice");
        rel_rows.push(coords);
    }
    let relations = IntMatrix::from_rows(k, &rel_rows).expect("rows have k entries");
    let dec = decompose(&SubquotientPresentation { generators: k, relations })
        .expect("kernel of a map of Z/4-modules is a Z/4-module");
    let inclusion =
        ModMorphism::from_int_matrix(dec.module.clone(), m.clone(), &dec.from_canonical.mul(&basis))
            .expect("kernel inclusion is well defined");
    Kernel { module: dec.module, inclusion }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cokernel {
    pub module: FinModule,
    pub projection: ModMorphism,
    map: ModMorphism,
    /// Integer lift in `target(map)` of each canonical generator.
    section: IntMatrix,
}

impl Cokernel {
    pub fn map(&self) -> &ModMorphism {
        &self.map
    }

    /// The unique `m` with `projection·m = c`, for `c` vanishing on the image.
    pub fn factor(&self, c: &ModMorphism) -> Result<ModMorphism> {
        if c.source() != self.map.target() {
            return Err(Error::ObjectMismatch(format!(
                "cannot factor a map out of {} through the cokernel of a map into {}",
                c.source(),
                self.map.target()
            )));
        }
        if !self.map.compose_unchecked(c).is_zero() {
            return Err(Error::Precondition("map does not vanish on the image".into()));
        }
        ModMorphism::from_int_matrix(
            self.module.clone(),
            c.target().clone(),
            &self.section.mul(&c.to_int_matrix()),
        )
    }
}

/// Cokernel of `f`, presented on the generators of `target(f)`.
pub fn cokernel(f: &ModMorphism) -> Cokernel {
    let n = f.target();
    let relations = f
        .to_int_matrix()
        .vstack(SubquotientPresentation::of_module(n).relations())
        .expect("same column count");
    let dec = decompose(&SubquotientPresentation { generators: n.ngens(), relations })
        .expect("quotient of a Z/4-module is a Z/4-module");
    let projection = ModMorphism::from_int_matrix(n.clone(), dec.module.clone(), &dec.to_canonical)
        .expect("cokernel projection is well defined");
    Cokernel { module: dec.module, projection, map: f.clone(), section: dec.from_canonical }
}

/// Number of elements in the image of `f`.
pub fn image_cardinality(f: &ModMorphism) -> u128 {
    let n = f.target();
    let relations = f
        .to_int_matrix()
        .vstack(SubquotientPresentation::of_module(n).relations())
        .expect("same column count");
    let coker: u128 = snf(&relations).invariant_factors().iter().map(|&d| d as u128).product();
    n.cardinality() / coker
}

pub fn is_mono(f: &ModMorphism) -> bool {
    image_cardinality(f) == f.source().cardinality()
}

pub fn is_epi(f: &ModMorphism) -> bool {
    image_cardinality(f) == f.target().cardinality()
}

pub fn is_iso(f: &ModMorphism) -> bool {
    f.source().cardinality() == f.target().cardinality() && is_epi(f)
}

/// Pushout of a span `X ← S → Y`, computed as the cokernel of `(f, −g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pushout {
    pub object: FinModule,
    /// `X → P`
    pub leg0: ModMorphism,
    /// `Y → P`
    pub leg1: ModMorphism,
    f: ModMorphism,
    g: ModMorphism,
    sum: Biproduct,
    cokernel: Cokernel,
}

pub fn pushout(f: &ModMorphism, g: &ModMorphism) -> Result<Pushout> {
    if f.source() != g.source() {
        return Err(Error::ObjectMismatch(format!(
            "pushout of a span with feet {} and {}",
            f.source(),
            g.source()
        )));
    }
    let sum = direct_sum(f.target(), g.target());
    let difference = sum.pair(f, &g.neg())?;
    let cokernel = cokernel(&difference);
    Ok(Pushout {
        object: cokernel.module.clone(),
        leg0: sum.emb0.compose_unchecked(&cokernel.projection),
        leg1: sum.emb1.compose_unchecked(&cokernel.projection),
        f: f.clone(),
        g: g.clone(),
        sum,
        cokernel,
    })
}

impl Pushout {
    pub fn span(&self) -> (&ModMorphism, &ModMorphism) {
        (&self.f, &self.g)
    }

    /// The mediating morphism `P → T` for a cocone `a: X → T`, `b: Y → T`.
    pub fn mediator(&self, a: &ModMorphism, b: &ModMorphism) -> Result<ModMorphism> {
        let fa = self.f.compose(a)?;
        let gb = self.g.compose(b)?;
        if fa != gb {
            return Err(Error::Precondition("cocone square does not commute".into()));
        }
        self.cokernel.factor(&self.sum.copair(a, b)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(orders: &[u8]) -> FinModule {
        FinModule::new(orders.to_vec()).unwrap()
    }

    fn mor(s: &[u8], t: &[u8], rows: &[&[i64]]) -> ModMorphism {
        ModMorphism::new(md(s), md(t), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn check_decomposition(p: &SubquotientPresentation, d: &Decomposition) {
        // canonical -> presentation -> canonical is the identity
        for j in 0..d.module.ngens() {
            let lift = d.from_canonical.row(j).to_vec();
            let mut unit = vec![0u8; d.module.ngens()];
            unit[j] = 1;
            assert_eq!(d.canonical_image(&lift), unit);
        }
        // presentation -> canonical -> presentation differs by a relation
        for i in 0..p.generators() {
            let back = d.from_canonical.left_mul_vec(d.to_canonical.row(i));
            let mut diff: Vec<i64> = back.iter().map(|&x| -x).collect();
            diff[i] += 1;
            assert!(p.is_relation(&diff), "generator {i} does not round-trip");
        }
    }

    #[test]
    fn decompose_examples() {
        let p = SubquotientPresentation::new(1, IntMatrix::from_rows(1, &[vec![4]]).unwrap()).unwrap();
        let d = decompose(&p).unwrap();
        assert_eq!(d.module, FinModule::z4());
        check_decomposition(&p, &d);

        let rel = IntMatrix::from_rows(2, &[vec![2, 2], vec![4, 0], vec![0, 4]]).unwrap();
        let p = SubquotientPresentation::new(2, rel).unwrap();
        let d = decompose(&p).unwrap();
        assert_eq!(d.module, md(&[4, 2]));
        check_decomposition(&p, &d);

        let p = SubquotientPresentation::new(0, IntMatrix::zeros(0, 0)).unwrap();
        assert_eq!(decompose(&p).unwrap().module, FinModule::zero());
    }

    #[test]
    fn decompose_rejects_bad_presentations() {
        let p = SubquotientPresentation::new(1, IntMatrix::zeros(0, 1)).unwrap();
        assert!(matches!(decompose(&p), Err(Error::InvalidPresentation(_))));
        let p = SubquotientPresentation::new(1, IntMatrix::from_rows(1, &[vec![3]]).unwrap()).unwrap();
        assert!(matches!(decompose(&p), Err(Error::InvalidPresentation(_))));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel(&mor(&[4], &[4], &[&[2]]));
        assert_eq!(k.module, FinModule::z2());
        assert_eq!(k.inclusion.rows(), vec![vec![2]]);

        assert!(kernel(&ModMorphism::identity(&md(&[4, 2]))).module.is_zero());
        assert!(kernel(&mor(&[4], &[4, 2], &[&[1, 0]])).module.is_zero());

        let k = kernel(&ModMorphism::zero(md(&[4, 2]), md(&[4])));
        assert_eq!(k.module, md(&[4, 2]));
        assert!(is_mono(&k.inclusion));
    }

    #[test]
    fn cokernel_examples() {
        let c = cokernel(&mor(&[4], &[4], &[&[2]]));
        assert_eq!(c.module, FinModule::z2());
        let m = md(&[4, 2]);
        let c = cokernel(&ModMorphism::zero(FinModule::zero(), m.clone()));
        assert_eq!(c.module, m);
        let c = cokernel(&mor(&[4], &[4, 4], &[&[2, -2]]));
        assert_eq!(c.module, md(&[4, 2]));
        assert!(is_epi(&c.projection));
    }

    #[test]
    fn mono_and_epi_examples() {
        assert!(is_mono(&mor(&[2], &[4], &[&[2]])));
        assert!(!is_mono(&mor(&[4], &[4], &[&[2]])));
        // A 4-element source cannot cover an 8-element target.
        assert!(!is_epi(&mor(&[4], &[4, 2], &[&[1, 1]])));
        assert!(is_epi(&mor(&[4, 2], &[4, 2], &[&[1, 1], &[0, 1]])));
        assert!(is_epi(&mor(&[4, 4], &[4, 2], &[&[1, 1], &[0, 1]])));
        assert!(is_mono(&ModMorphism::zero(FinModule::zero(), md(&[4]))));
        assert!(is_epi(&ModMorphism::zero(md(&[4]), FinModule::zero())));
    }

    #[test]
    fn pushout_of_doubling_along_doubling() {
        let two = mor(&[4], &[4], &[&[2]]);
        let p = pushout(&two, &two).unwrap();
        assert_eq!(p.object, md(&[4, 2]));
        assert_eq!(two.compose(&p.leg0).unwrap(), two.compose(&p.leg1).unwrap());
    }

    #[test]
    fn pushout_along_identity() {
        let g = mor(&[4], &[4, 2], &[&[1, 1]]);
        let id = ModMorphism::identity(&FinModule::z4());
        let p = pushout(&id, &g).unwrap();
        assert_eq!(p.object, md(&[4, 2]));
        assert!(is_iso(&p.leg1));
        let p = pushout(&g, &id).unwrap();
        assert_eq!(p.object, md(&[4, 2]));
        assert!(is_iso(&p.leg0));
    }

    #[test]
    fn pushout_mediator_checks_cocone() {
        let two = mor(&[4], &[4], &[&[2]]);
        let p = pushout(&two, &two).unwrap();
        let id = ModMorphism::identity(&FinModule::z4());
        let fold = p.mediator(&id, &id).unwrap();
        assert_eq!(p.leg0.compose(&fold).unwrap(), id);
        assert_eq!(p.leg1.compose(&fold).unwrap(), id);
        let zero = ModMorphism::zero(FinModule::z4(), FinModule::z4());
        assert!(matches!(p.mediator(&id, &zero), Err(Error::Precondition(_))));
    }
}
