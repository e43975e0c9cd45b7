use crate::error::{Error, Result};

use super::{FinModule, ModMorphism};

/// A chosen direct sum `M ⊕ N` with its embeddings and projections.
///
/// The sum is renormalized, so the generators of `M` and `N` are interleaved:
/// the ℤ/4 summands of `M`, then those of `N`, then the ℤ/2 summands of `M`,
/// then those of `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Biproduct {
    pub sum: FinModule,
    pub emb0: ModMorphism,
    pub emb1: ModMorphism,
    pub proj0: ModMorphism,
    pub proj1: ModMorphism,
    /// Position in `sum` of each generator of the first summand.
    positions0: Vec<usize>,
    positions1: Vec<usize>,
}

pub fn direct_sum(m: &FinModule, n: &FinModule) -> Biproduct {
    let (km, kn) = (m.rank4(), n.rank4());
    let sum = FinModule::from_counts(km + kn, m.rank2() + n.rank2());
    let positions0: Vec<usize> =
        (0..m.ngens()).map(|i| if i < km { i } else { kn + i }).collect();
    let positions1: Vec<usize> = (0..n.ngens())
        .map(|i| if i < kn { km + i } else { m.ngens() + i })
        .collect();

    let embed = |src: &FinModule, pos: &[usize]| {
        ModMorphism::from_fn(src.clone(), sum.clone(), |i, j| (pos[i] == j) as i64)
            .expect("summand embeddings are well defined")
    };
    let project = |dst: &FinModule, pos: &[usize]| {
        ModMorphism::from_fn(sum.clone(), dst.clone(), |i, j| (pos[j] == i) as i64)
            .expect("summand projections are well defined")
    };
    Biproduct {
        emb0: embed(m, &positions0),
        emb1: embed(n, &positions1),
        proj0: project(m, &positions0),
        proj1: project(n, &positions1),
        sum,
        positions0,
        positions1,
    }
}

impl Biproduct {
    pub fn first(&self) -> &FinModule {
        self.emb0.source()
    }

    pub fn second(&self) -> &FinModule {
        self.emb1.source()
    }

    pub fn positions0(&self) -> &[usize] {
        &self.positions0
    }

    pub fn positions1(&self) -> &[usize] {
        &self.positions1
    }

    /// The morphism `M ⊕ N → T` restricting to `f` and `g`.
    pub fn copair(&self, f: &ModMorphism, g: &ModMorphism) -> Result<ModMorphism> {
        if f.source() != self.first() || g.source() != self.second() {
            return Err(Error::ObjectMismatch(format!(
                "copair of maps from {} and {} out of {} + {}",
                f.source(),
                g.source(),
                self.first(),
                self.second()
            )));
        }
        if f.target() != g.target() {
            return Err(Error::ObjectMismatch(format!(
                "copair of maps into {} and {}",
                f.target(),
                g.target()
            )));
        }
        self.proj0.compose_unchecked(f).add(&self.proj1.compose_unchecked(g))
    }

    /// The morphism `S → M ⊕ N` with components `f` and `g`.
    pub fn pair(&self, f: &ModMorphism, g: &ModMorphism) -> Result<ModMorphism> {
        if f.target() != self.first() || g.target() != self.second() || f.source() != g.source() {
            return Err(Error::ObjectMismatch(format!(
                "pair of {} -> {} and {} -> {} into {} + {}",
                f.source(),
                f.target(),
                g.source(),
                g.target(),
                self.first(),
                self.second()
            )));
        }
        f.compose_unchecked(&self.emb0).add(&g.compose_unchecked(&self.emb1))
    }
}

/// The morphism out of the chosen coproduct `source(f) ⊕ source(g)`.
pub fn induced_from_coproduct(f: &ModMorphism, g: &ModMorphism) -> Result<ModMorphism> {
    direct_sum(f.source(), g.source()).copair(f, g)
}
