//! The category of finitely generated ℤ/4-modules.
//!
//! Objects are stored in canonical form `(ℤ/4)^k ⊕ (ℤ/2)^l` and morphisms as
//! matrices with one row per source generator and one column per target
//! generator. Composition is diagrammatic: `f.compose(&g)` is "f, then g",
//! which is the plain matrix product `F·G`.

mod hom;
mod limits;
mod sum;

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

pub use hom::HomProblem;
pub use limits::{
    cokernel, decompose, image_cardinality, is_epi, is_iso, is_mono, kernel, pushout, Cokernel,
    Decomposition, Kernel, Pushout, SubquotientPresentation,
};
pub use sum::{direct_sum, induced_from_coproduct, Biproduct};

/// A module `(ℤ/4)^k ⊕ (ℤ/2)^l`, listed as cyclic orders with all 4s first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FinModule {
    orders: Vec<u8>,
}

impl FinModule {
    pub fn new(orders: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = orders.iter().find(|&&o| o != 2 && o != 4) {
            return Err(Error::InvalidOrder(bad as i64));
        }
        if orders.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NonCanonicalOrders(orders));
        }
        Ok(Self { orders })
    }

    /// Accepts orders in any sequence and sorts them.
    pub fn sorted(mut orders: Vec<u8>) -> Result<Self> {
        orders.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(orders)
    }

    pub fn from_counts(k: usize, l: usize) -> Self {
        let mut orders = vec![4; k];
        orders.extend(std::iter::repeat_n(2, l));
        Self { orders }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// ℤ/4
    pub fn z4() -> Self {
        Self::from_counts(1, 0)
    }

    /// ℤ/2
    pub fn z2() -> Self {
        Self::from_counts(0, 1)
    }

    /// The free module `(ℤ/4)^k`.
    pub fn free(k: usize) -> Self {
        Self::from_counts(k, 0)
    }

    pub fn orders(&self) -> &[u8] {
        &self.orders
    }

    pub fn order(&self, i: usize) -> u8 {
        self.orders[i]
    }

    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    /// Number of ℤ/4 summands.
    pub fn rank4(&self) -> usize {
        self.orders.iter().filter(|&&o| o == 4).count()
    }

    /// Number of ℤ/2 summands.
    pub fn rank2(&self) -> usize {
        self.orders.len() - self.rank4()
    }

    pub fn is_zero(&self) -> bool {
        self.orders.is_empty()
    }

    /// Number of elements.
    pub fn cardinality(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128).product()
    }

    /// Reduces an integer vector to an element in normal form.
    pub fn reduce(&self, x: &[i64]) -> Vec<u8> {
        assert_eq!(x.len(), self.ngens(), "element has wrong length");
        x.iter().zip(&self.orders).map(|(&v, &o)| v.rem_euclid(o as i64) as u8).collect()
    }

    pub fn add_elements(&self, x: &[u8], y: &[u8]) -> Vec<u8> {
        x.iter().zip(y).zip(&self.orders).map(|((&a, &b), &o)| (a + b) % o).collect()
    }

    pub fn neg_element(&self, x: &[u8]) -> Vec<u8> {
        x.iter().zip(&self.orders).map(|(&a, &o)| (o - a) % o).collect()
    }

    /// Indices of the order-2 generators.
    pub fn order2_indices(&self) -> std::ops::Range<usize> {
        self.rank4()..self.ngens()
    }
}

impl fmt::Debug for FinModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FinModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.orders.iter().map(|o| format!("Z/{o}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// A homomorphism between canonical modules, as a matrix of residues.
///
/// Entry `(i, j)` is the `j`-th coordinate of the image of the `i`-th source
/// generator. Entries into order-2 generators lie in `{0, 1}`; entries from an
/// order-2 generator into an order-4 generator lie in `{0, 2}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModMorphism {
    source: FinModule,
    target: FinModule,
    entries: Vec<u8>,
}

impl ModMorphism {
    pub fn new(source: FinModule, target: FinModule, rows: &[Vec<i64>]) -> Result<Self> {
        let (r, c) = (source.ngens(), target.ngens());
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(Error::MatrixShape {
                rows: r,
                cols: c,
                found_rows: rows.len(),
                found_cols: rows.iter().map(Vec::len).find(|&l| l != c).unwrap_or(c),
            });
        }
        Self::from_fn(source, target, |i, j| rows[i][j])
    }

    pub fn from_fn(
        source: FinModule,
        target: FinModule,
        mut entry: impl FnMut(usize, usize) -> i64,
    ) -> Result<Self> {
        let (r, c) = (source.ngens(), target.ngens());
        let mut entries = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                let raw = entry(i, j);
                let v = raw.rem_euclid(target.order(j) as i64);
                if source.order(i) == 2 && target.order(j) == 4 && v % 2 != 0 {
                    return Err(Error::IllDefinedEntry { row: i, col: j, value: raw });
                }
                entries.push(v as u8);
            }
        }
        Ok(Self { source, target, entries })
    }

    pub fn from_int_matrix(source: FinModule, target: FinModule, m: &IntMatrix) -> Result<Self> {
        if m.rows() != source.ngens() || m.cols() != target.ngens() {
            return Err(Error::MatrixShape {
                rows: source.ngens(),
                cols: target.ngens(),
                found_rows: m.rows(),
                found_cols: m.cols(),
            });
        }
        Self::from_fn(source, target, |i, j| m.get(i, j))
    }

    pub fn zero(source: FinModule, target: FinModule) -> Self {
        let entries = vec![0; source.ngens() * target.ngens()];
        Self { source, target, entries }
    }

    pub fn identity(m: &FinModule) -> Self {
        Self::scalar(m, 1)
    }

    /// Multiplication by `k` on `m`.
    pub fn scalar(m: &FinModule, k: i64) -> Self {
        Self::from_fn(m.clone(), m.clone(), |i, j| if i == j { k } else { 0 })
            .expect("diagonal scalars are always well defined")
    }

    pub fn source(&self) -> &FinModule {
        &self.source
    }

    pub fn target(&self) -> &FinModule {
        &self.target
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.target.ngens() + j]
    }

    /// The image of source generator `i`.
    pub fn row(&self, i: usize) -> &[u8] {
        let c = self.target.ngens();
        &self.entries[i * c..(i + 1) * c]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.source.ngens()).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::new(
            self.source.ngens(),
            self.target.ngens(),
            self.entries.iter().map(|&x| x as i64).collect(),
        )
        .expect("shape matches by construction")
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    pub fn is_parallel_to(&self, other: &ModMorphism) -> bool {
        self.source == other.source && self.target == other.target
    }

    /// Diagrammatic composite: first `self`, then `g`.
    pub fn compose(&self, g: &ModMorphism) -> Result<ModMorphism> {
        if self.target != g.source {
            return Err(Error::ObjectMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, g.source, g.target
            )));
        }
        Ok(self.compose_unchecked(g))
    }

    pub(crate) fn compose_unchecked(&self, g: &ModMorphism) -> ModMorphism {
        let (r, m, c) = (self.source.ngens(), self.target.ngens(), g.target.ngens());
        let mut entries = vec![0u8; r * c];
        for i in 0..r {
            for j in 0..c {
                let mut acc = 0u32;
                for k in 0..m {
                    acc += self.entries[i * m + k] as u32 * g.entries[k * c + j] as u32;
                }
                entries[i * c + j] = (acc % g.target.order(j) as u32) as u8;
            }
        }
        ModMorphism { source: self.source.clone(), target: g.target.clone(), entries }
    }

    fn check_parallel(&self, other: &ModMorphism, what: &str) -> Result<()> {
        if !self.is_parallel_to(other) {
            return Err(Error::ObjectMismatch(format!(
                "{what} of {} -> {} and {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &ModMorphism) -> Result<ModMorphism> {
        self.check_parallel(other, "sum")?;
        let c = self.target.ngens();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .enumerate()
            .map(|(idx, (&a, &b))| (a + b) % self.target.order(idx % c))
            .collect();
        Ok(ModMorphism { source: self.source.clone(), target: self.target.clone(), entries })
    }

    pub fn neg(&self) -> ModMorphism {
        self.scale(-1)
    }

    pub fn sub(&self, other: &ModMorphism) -> Result<ModMorphism> {
        self.check_parallel(other, "difference")?;
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> ModMorphism {
        let c = self.target.ngens();
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(idx, &a)| (a as i64 * k).rem_euclid(self.target.order(idx % c) as i64) as u8)
            .collect();
        ModMorphism { source: self.source.clone(), target: self.target.clone(), entries }
    }

    /// Image of an element of the source.
    pub fn apply(&self, x: &[u8]) -> Vec<u8> {
        assert_eq!(x.len(), self.source.ngens(), "element does not belong to the source");
        let c = self.target.ngens();
        (0..c)
            .map(|j| {
                let acc: u32 =
                    x.iter().enumerate().map(|(i, &xi)| xi as u32 * self.entry(i, j) as u32).sum();
                (acc % self.target.order(j) as u32) as u8
            })
            .collect()
    }
}

impl fmt::Debug for ModMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ModMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.source.ngens())
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]: {} -> {}", rows.join("; "), self.source, self.target)
    }
}
