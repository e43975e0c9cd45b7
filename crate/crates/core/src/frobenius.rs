//! The Frobenius model structure on finitely generated ℤ/4-modules.
//!
//! Cofibrations are the monomorphisms, fibrations the epimorphisms, and the
//! bijective (projective and injective) objects are the free modules
//! `(ℤ/4)^k`. Two parallel maps are homotopic when their difference factors
//! through a bijective object; weak equivalences are the stable isomorphisms.
//!
//! Factoring through *some* bijective object is decided by factoring through
//! one canonical injective envelope `ι: M → I(M)`. If `f = a·b` with
//! `a: M → P` and `P` bijective, then `P` is injective and `ι` is mono, so
//! `a` extends along `ι`, and `f` factors through `ι`.
//!
//! Weak equivalences are decided with the stable reduction functor
//! `Hom_stable(ℤ/2, −)`. A map `φ: ℤ/2 → M` is null-homotopic exactly when
//! its ℤ/2-coordinates vanish, so `Hom_stable(ℤ/2, M) ≅ 𝔽₂^l` and a morphism
//! acts by the block of its matrix between order-2 generators, read mod 2.
//! The stable category of ℤ/4 is equivalent to 𝔽₂-vector spaces through this
//! functor, so `f` is a stable isomorphism iff that block is invertible.

use crate::error::{Error, Result};
use crate::module_cat::{direct_sum, is_epi, is_mono, FinModule, HomProblem, ModMorphism};

pub fn is_bijective_object(m: &FinModule) -> bool {
    m.rank2() == 0
}

/// `I(M) = (ℤ/4)^(k+l)` with `ι` the identity on ℤ/4 summands and
/// multiplication by 2 on ℤ/2 summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectiveEnvelope {
    pub envelope: FinModule,
    pub inclusion: ModMorphism,
}

pub fn injective_envelope(m: &FinModule) -> InjectiveEnvelope {
    let envelope = FinModule::free(m.ngens());
    let inclusion = ModMorphism::from_fn(m.clone(), envelope.clone(), |i, j| {
        if i != j {
            0
        } else if m.order(i) == 4 {
            1
        } else {
            2
        }
    })
    .expect("envelope inclusion is well defined");
    InjectiveEnvelope { envelope, inclusion }
}

/// `P(M) = (ℤ/4)^(k+l)` with the reduction map onto `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveCover {
    pub cover: FinModule,
    pub projection: ModMorphism,
}

pub fn projective_cover(m: &FinModule) -> ProjectiveCover {
    let cover = FinModule::free(m.ngens());
    let projection = ModMorphism::from_fn(cover.clone(), m.clone(), |i, j| (i == j) as i64)
        .expect("cover projection is well defined");
    ProjectiveCover { cover, projection }
}

/// A factorization `f = first · second` through a bijective object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorWitness {
    pub through: FinModule,
    pub first: ModMorphism,
    pub second: ModMorphism,
}

impl FactorWitness {
    pub fn validate(&self, f: &ModMorphism) -> bool {
        is_bijective_object(&self.through)
            && self.first.target() == &self.through
            && self.first.compose(&self.second).as_ref() == Ok(f)
    }
}

/// Prepared decider for "factors through a bijective object" on `Hom(M, N)`.
#[derive(Debug, Clone)]
pub struct BijectiveFactorization {
    envelope: InjectiveEnvelope,
    problem: HomProblem,
}

impl BijectiveFactorization {
    pub fn new(source: &FinModule, target: &FinModule) -> Self {
        let envelope = injective_envelope(source);
        let problem = HomProblem::new(
            envelope.envelope.clone(),
            target.clone(),
            vec![envelope.inclusion.clone()],
        )
        .expect("inclusion lands in the envelope");
        Self { envelope, problem }
    }

    pub fn witness(&self, f: &ModMorphism) -> Result<Option<FactorWitness>> {
        Ok(self.problem.solve(std::slice::from_ref(f))?.map(|h| FactorWitness {
            through: self.envelope.envelope.clone(),
            first: self.envelope.inclusion.clone(),
            second: h,
        }))
    }

    pub fn factors(&self, f: &ModMorphism) -> Result<bool> {
        self.problem.is_solvable(std::slice::from_ref(f))
    }
}

pub fn factors_through_bijective(f: &ModMorphism) -> Option<FactorWitness> {
    BijectiveFactorization::new(f.source(), f.target())
        .witness(f)
        .expect("objects match by construction")
}

/// `f ≃ g` iff `g − f` factors through a bijective object.
pub fn stably_homotopic(f: &ModMorphism, g: &ModMorphism) -> Result<bool> {
    let d = g.sub(f)?;
    Ok(factors_through_bijective(&d).is_some())
}

/// The image of a morphism under `Hom_stable(ℤ/2, −)`: an 𝔽₂-matrix with one
/// row per ℤ/2 summand of the source and one column per ℤ/2 summand of the
/// target.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct StableReduction {
    pub source_dim: usize,
    pub target_dim: usize,
    pub matrix: Vec<Vec<u8>>,
}

impl StableReduction {
    /// Reduction of the identity of `m`; its dimension is the number of ℤ/2 summands.
    pub fn of_object(m: &FinModule) -> Self {
        stable_reduction(&ModMorphism::identity(m))
    }

    pub fn rank(&self) -> usize {
        f2_rank(self.matrix.clone(), self.target_dim)
    }

    pub fn is_invertible(&self) -> bool {
        self.source_dim == self.target_dim && self.rank() == self.source_dim
    }

    /// Matrix product over 𝔽₂ in diagrammatic order.
    pub fn then(&self, other: &StableReduction) -> StableReduction {
        assert_eq!(self.target_dim, other.source_dim, "reductions are not composable");
        let matrix = self
            .matrix
            .iter()
            .map(|row| {
                (0..other.target_dim)
                    .map(|j| {
                        row.iter().enumerate().fold(0, |acc, (k, &a)| acc ^ (a & other.matrix[k][j]))
                    })
                    .collect()
            })
            .collect();
        StableReduction { source_dim: self.source_dim, target_dim: other.target_dim, matrix }
    }
}

pub fn stable_reduction(f: &ModMorphism) -> StableReduction {
    let rows = f.source().order2_indices();
    let cols = f.target().order2_indices();
    let matrix = rows
        .clone()
        .map(|i| cols.clone().map(|j| f.entry(i, j) & 1).collect())
        .collect();
    StableReduction { source_dim: rows.len(), target_dim: cols.len(), matrix }
}

/// Rank over 𝔽₂ by Gaussian elimination.
fn f2_rank(mut m: Vec<Vec<u8>>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] == 1) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] == 1 {
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn is_weak_equivalence(f: &ModMorphism) -> bool {
    stable_reduction(f).is_invertible()
}

/// A stable inverse of a weak equivalence: the inverse 𝔽₂-block placed
/// between the order-2 generators, zero elsewhere.
pub fn stable_inverse(f: &ModMorphism) -> Option<ModMorphism> {
    let red = stable_reduction(f);
    let inv = f2_inverse(&red)?;
    let (m, n) = (f.source(), f.target());
    let (km, kn) = (m.rank4(), n.rank4());
    let g = ModMorphism::from_fn(n.clone(), m.clone(), |i, j| {
        if i >= kn && j >= km {
            inv[i - kn][j - km] as i64
        } else {
            0
        }
    })
    .expect("order-2 block entries are well defined");
    Some(g)
}

fn f2_inverse(r: &StableReduction) -> Option<Vec<Vec<u8>>> {
    if !r.is_invertible() {
        return None;
    }
    let n = r.source_dim;
    let mut aug: Vec<Vec<u8>> = r
        .matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..n).map(|j| (i == j) as u8));
            v
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| aug[r][c] == 1)?;
        aug.swap(c, p);
        for r in 0..n {
            if r != c && aug[r][c] == 1 {
                let pivot = aug[c].clone();
                for (x, y) in aug[r].iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// `f = first · second`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub first: ModMorphism,
    pub second: ModMorphism,
}

impl Factorization {
    pub fn composite(&self) -> ModMorphism {
        self.first.compose(&self.second).expect("factors are composable")
    }
}

/// `X → Y ⊕ I(X) → Y`: the mono `(f, ι)` followed by the projection, which is
/// an epimorphism and a weak equivalence.
pub fn factor_cof_then_trivfib(f: &ModMorphism) -> Factorization {
    let env = injective_envelope(f.source());
    let sum = direct_sum(f.target(), &env.envelope);
    let first = sum.pair(f, &env.inclusion).expect("both components start at the source");
    Factorization { first, second: sum.proj0 }
}

/// `X → X ⊕ P(Y) → Y`: the split mono with bijective cokernel, followed by
/// `(f; π)` which is an epimorphism.
pub fn factor_trivcof_then_fib(f: &ModMorphism) -> Factorization {
    let cover = projective_cover(f.target());
    let sum = direct_sum(f.source(), &cover.cover);
    let second = sum.copair(f, &cover.projection).expect("both components end at the target");
    Factorization { first: sum.emb0, second }
}

/// Checks that `w` is a weak equivalence and reports it otherwise.
pub(crate) fn require_weak_equivalence(w: &ModMorphism, what: &str) -> Result<()> {
    if is_weak_equivalence(w) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} is not a weak equivalence")))
    }
}

/// Model-category predicates of a single morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ModelClasses {
    pub cofibration: bool,
    pub fibration: bool,
    pub weak_equivalence: bool,
}

pub fn model_classes(f: &ModMorphism) -> ModelClasses {
    ModelClasses {
        cofibration: is_mono(f),
        fibration: is_epi(f),
        weak_equivalence: is_weak_equivalence(f),
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

    #[test]
    fn bijective_objects() {
        assert!(is_bijective_object(&md(&[4, 4])));
        assert!(!is_bijective_object(&md(&[2])));
        assert!(is_bijective_object(&FinModule::zero()));
    }

    #[test]
    fn envelopes() {
        let e = injective_envelope(&md(&[2]));
        assert_eq!(e.envelope, md(&[4]));
        assert_eq!(e.inclusion.rows(), vec![vec![2]]);
        let e = injective_envelope(&md(&[4]));
        assert_eq!(e.inclusion, ModMorphism::identity(&md(&[4])));
        let e = injective_envelope(&md(&[4, 2]));
        assert_eq!(e.envelope, md(&[4, 4]));
        assert_eq!(e.inclusion.rows(), vec![vec![1, 0], vec![0, 2]]);
        assert!(is_mono(&e.inclusion));
    }

    #[test]
    fn factoring_through_bijectives() {
        let two = mor(&[2], &[4], &[&[2]]);
        let w = factors_through_bijective(&two).unwrap();
        assert!(w.validate(&two));
        assert_eq!(w.through, md(&[4]));

        assert!(factors_through_bijective(&ModMorphism::identity(&md(&[2]))).is_none());

        let zero = ModMorphism::zero(md(&[4, 2]), md(&[2]));
        assert!(factors_through_bijective(&zero).unwrap().validate(&zero));
    }

    #[test]
    fn stable_homotopy_examples() {
        let f = mor(&[4], &[4, 2], &[&[2, 0]]);
        assert!(stably_homotopic(&f, &f).unwrap());
        let z4 = md(&[4]);
        assert!(stably_homotopic(&ModMorphism::zero(z4.clone(), z4.clone()), &ModMorphism::scalar(&z4, 2)).unwrap());
        let z2 = md(&[2]);
        assert!(!stably_homotopic(&ModMorphism::zero(z2.clone(), z2.clone()), &ModMorphism::identity(&z2)).unwrap());
        assert!(stably_homotopic(&f, &ModMorphism::identity(&z4)).is_err());
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(StableReduction::of_object(&md(&[4, 4, 4])).source_dim, 0);
        let r = stable_reduction(&ModMorphism::identity(&md(&[2])));
        assert_eq!(r.matrix, vec![vec![1]]);
        let r = stable_reduction(&mor(&[4], &[4, 2], &[&[1, 1]]));
        assert_eq!((r.source_dim, r.target_dim), (0, 1));
        assert!(!r.is_invertible());
    }

    #[test]
    fn weak_equivalence_examples() {
        assert!(is_weak_equivalence(&mor(&[4], &[4], &[&[2]])));
        let z2 = md(&[2]);
        assert!(!is_weak_equivalence(&ModMorphism::zero(z2.clone(), z2.clone())));
        assert!(is_weak_equivalence(&mor(&[4, 2], &[4, 2], &[&[3, 1], &[2, 1]])));
        // Projectives are stably zero, so Z/2 -> Z/2 + Z/4 is a weak equivalence.
        assert!(is_weak_equivalence(&mor(&[2], &[4, 2], &[&[2, 1]])));
    }

    #[test]
    fn stable_inverse_is_an_inverse() {
        let f = mor(&[4, 2, 2], &[4, 4, 2, 2], &[&[1, 0, 1, 0], &[2, 0, 1, 1], &[0, 2, 0, 1]]);
        assert!(is_weak_equivalence(&f));
        let g = stable_inverse(&f).unwrap();
        let fg = f.compose(&g).unwrap();
        let gf = g.compose(&f).unwrap();
        assert!(stably_homotopic(&fg, &ModMorphism::identity(f.source())).unwrap());
        assert!(stably_homotopic(&gf, &ModMorphism::identity(f.target())).unwrap());
    }

    #[test]
    fn cofibration_trivial_fibration_factorization() {
        let two = mor(&[4], &[4], &[&[2]]);
        let fac = factor_cof_then_trivfib(&two);
        assert_eq!(fac.first.rows(), vec![vec![2, 1]]);
        assert_eq!(fac.composite(), two);
        assert!(is_mono(&fac.first));
        assert!(is_epi(&fac.second) && is_weak_equivalence(&fac.second));

        let zero = ModMorphism::zero(FinModule::zero(), md(&[4, 2]));
        let fac = factor_cof_then_trivfib(&zero);
        assert_eq!(fac.first.target(), &md(&[4, 2]));
        assert_eq!(fac.second, ModMorphism::identity(&md(&[4, 2])));
    }

    #[test]
    fn trivial_cofibration_fibration_factorization() {
        for f in [
            mor(&[4], &[4], &[&[2]]),
            ModMorphism::identity(&md(&[4, 2])),
            mor(&[2], &[4, 2], &[&[0, 1]]),
        ] {
            let fac = factor_trivcof_then_fib(&f);
            assert_eq!(fac.composite(), f);
            assert!(is_mono(&fac.first) && is_weak_equivalence(&fac.first));
            assert!(is_epi(&fac.second));
        }
    }
}
