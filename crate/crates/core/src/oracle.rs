//! Brute-force ground truth on small instances.
//!
//! Nothing here touches the Smith-normal-form machinery: homomorphisms are
//! found by trying every matrix and checking additivity on elements, images
//! and kernels are computed by evaluating on every element, and factoring
//! through bijectives is decided by summing rank-one composites through ℤ/4.
//! Every enumeration is bounded, and exceeding a bound is an error.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::module_cat::{FinModule, ModMorphism};
use crate::under_cat::{coproduct_under, Cylinder, UnderMorphism, UnderObject};

/// A matrix as one row of entries per source generator.
pub type Rows = Vec<Vec<u8>>;

pub const BOUND_ENV: &str = "STABLECAT_ORACLE_BOUND";
pub const DEFAULT_BOUND: u128 = 4u128.pow(9);

/// Limits on how many candidates any single enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBounds {
    pub max_candidates: u128,
}

impl Default for OracleBounds {
    fn default() -> Self {
        Self { max_candidates: DEFAULT_BOUND }
    }
}

impl OracleBounds {
    pub fn new(max_candidates: u128) -> Self {
        Self { max_candidates }
    }

    /// The default bound, overridden by `STABLECAT_ORACLE_BOUND` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BOUND_ENV) {
            Ok(v) => v
                .trim()
                .parse::<u128>()
                .map(Self::new)
                .map_err(|e| Error::Input(format!("{BOUND_ENV}={v:?}: {e}"))),
            Err(std::env::VarError::NotPresent) => Ok(Self::default()),
            Err(e) => Err(Error::Input(format!("{BOUND_ENV}: {e}"))),
        }
    }

    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > self.max_candidates {
            return Err(Error::BoundExceeded { needed, bound: self.max_candidates });
        }
        Ok(())
    }
}

/// Every canonical module of cardinality at most `max_order`.
pub fn modules_up_to(max_order: u128) -> Vec<FinModule> {
    let mut out = Vec::new();
    let mut k = 0;
    while 4u128.pow(k) <= max_order {
        let mut l = 0;
        while 4u128.pow(k) * 2u128.pow(l) <= max_order {
            out.push(FinModule::from_counts(k as usize, l as usize));
            l += 1;
        }
        k += 1;
    }
    out.sort_by_key(|m| (m.cardinality(), m.orders().to_vec()));
    out
}

/// All elements of a module as residue tuples, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementTable {
    pub module: FinModule,
    pub elements: Vec<Vec<u8>>,
}

impl ElementTable {
    pub fn new(module: &FinModule, bounds: &OracleBounds) -> Result<Self> {
        bounds.check(module.cardinality())?;
        let orders = module.orders();
        let mut elements = Vec::with_capacity(module.cardinality() as usize);
        let mut x = vec![0u8; orders.len()];
        loop {
            elements.push(x.clone());
            let mut i = orders.len();
            loop {
                if i == 0 {
                    return Ok(Self { module: module.clone(), elements });
                }
                i -= 1;
                x[i] += 1;
                if x[i] < orders[i] {
                    break;
                }
                x[i] = 0;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `x·rows` reduced in the target, for a representative tuple `x`.
fn eval(target: &FinModule, rows: &[Vec<u8>], x: &[u8]) -> Vec<u8> {
    (0..target.ngens())
        .map(|j| {
            let s: u32 = x.iter().zip(rows).map(|(&xi, r)| xi as u32 * r[j] as u32).sum();
            (s % target.order(j) as u32) as u8
        })
        .collect()
}

fn add(m: &FinModule, x: &[u8], y: &[u8]) -> Vec<u8> {
    x.iter().zip(y).enumerate().map(|(i, (&a, &b))| (a + b) % m.order(i)).collect()
}

fn double(m: &FinModule, x: &[u8]) -> Vec<u8> {
    add(m, x, x)
}

fn is_zero(x: &[u8]) -> bool {
    x.iter().all(|&v| v == 0)
}

/// Does `rows` define an additive map `source → target` on elements?
fn is_additive(source: &ElementTable, target: &FinModule, rows: &[Vec<u8>]) -> bool {
    let m = &source.module;
    let images: Vec<Vec<u8>> = (0..m.ngens()).map(|i| rows[i].clone()).collect();
    source.elements.iter().all(|x| {
        let fx = eval(target, rows, x);
        (0..m.ngens()).all(|i| {
            let mut y = x.clone();
            y[i] = (y[i] + 1) % m.order(i);
            eval(target, rows, &y) == add(target, &fx, &images[i])
        })
    })
}

fn rows_of(f: &ModMorphism) -> Vec<Vec<u8>> {
    f.rows()
}

fn to_morphism(m: &FinModule, n: &FinModule, rows: &[Vec<u8>]) -> ModMorphism {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect();
    ModMorphism::new(m.clone(), n.clone(), &rows).expect("additive matrices are well defined")
}

/// Every homomorphism `m → n`, in lexicographic order of matrices.
pub fn enumerate_homs(m: &FinModule, n: &FinModule, bounds: &OracleBounds) -> Result<Vec<ModMorphism>> {
    let candidates = n
        .cardinality()
        .checked_pow(m.ngens() as u32)
        .ok_or(Error::BoundExceeded { needed: u128::MAX, bound: bounds.max_candidates })?;
    bounds.check(candidates)?;
    let source = ElementTable::new(m, bounds)?;
    let target = ElementTable::new(n, bounds)?;

    let mut out = Vec::new();
    let mut choice = vec![0usize; m.ngens()];
    loop {
        let rows: Vec<Vec<u8>> = choice.iter().map(|&c| target.elements[c].clone()).collect();
        if is_additive(&source, n, &rows) {
            out.push(to_morphism(m, n, &rows));
        }
        let mut i = choice.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < target.len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Every under-category morphism `x → y`.
pub fn enumerate_under_homs(
    x: &UnderObject,
    y: &UnderObject,
    bounds: &OracleBounds,
) -> Result<Vec<UnderMorphism>> {
    if x.base() != y.base() {
        return Err(Error::BaseMismatch(format!("{} vs {}", x.base(), y.base())));
    }
    let base = ElementTable::new(x.base(), bounds)?;
    let sx = rows_of(x.struct_map());
    let sy = rows_of(y.struct_map());
    let mut out = Vec::new();
    for h in enumerate_homs(x.carrier(), y.carrier(), bounds)? {
        let rows = rows_of(&h);
        let commutes = base.elements.iter().all(|a| {
            eval(y.carrier(), &rows, &eval(x.carrier(), &sx, a)) == eval(y.carrier(), &sy, a)
        });
        if commutes {
            out.push(UnderMorphism::new(x.clone(), y.clone(), h)?);
        }
    }
    Ok(out)
}

/// Element-level composite: first `f`, then `g`.
pub fn brute_compose(f: &ModMorphism, g: &ModMorphism) -> Vec<Vec<u8>> {
    let grows = rows_of(g);
    (0..f.source().ngens()).map(|i| eval(g.target(), &grows, f.row(i))).collect()
}

pub fn brute_mono(f: &ModMorphism, bounds: &OracleBounds) -> Result<bool> {
    let source = ElementTable::new(f.source(), bounds)?;
    let rows = rows_of(f);
    Ok(source.elements.iter().filter(|x| is_zero(&eval(f.target(), &rows, x))).count() == 1)
}

pub fn brute_epi(f: &ModMorphism, bounds: &OracleBounds) -> Result<bool> {
    bounds.check(f.target().cardinality())?;
    let source = ElementTable::new(f.source(), bounds)?;
    let rows = rows_of(f);
    let image: HashSet<Vec<u8>> = source.elements.iter().map(|x| eval(f.target(), &rows, x)).collect();
    Ok(image.len() as u128 == f.target().cardinality())
}

/// Matrices `m → n` packed two bits per entry, with entrywise addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Packer {
    /// High bits of entries whose column has order 2.
    clear: u128,
}

const LO: u128 = 0x5555_5555_5555_5555_5555_5555_5555_5555;

impl Packer {
    fn new(m: &FinModule, n: &FinModule) -> Result<Self> {
        let entries = m.ngens() * n.ngens();
        if entries > 64 {
            return Err(Error::BoundExceeded { needed: entries as u128, bound: 64 });
        }
        let mut clear = 0u128;
        for e in 0..entries {
            if n.order(e % n.ngens()) == 2 {
                clear |= 2u128 << (2 * e);
            }
        }
        Ok(Self { clear })
    }

    fn pack(&self, rows: &[Vec<u8>]) -> u128 {
        rows.iter().flatten().enumerate().fold(0, |acc, (e, &v)| acc | ((v as u128 & 3) << (2 * e)))
    }

    fn add(&self, a: u128, b: u128) -> u128 {
        let x = a ^ b;
        let carry = (a & b & LO) << 1;
        ((x & LO) | ((x & !LO) ^ carry)) & !self.clear
    }

    fn scale(&self, a: u128, c: u8) -> u128 {
        (0..c).fold(0, |acc, _| self.add(acc, a))
    }
}

/// Maps `m → n` factoring through some `(ℤ/4)^k`.
///
/// A map through `(ℤ/4)^k` is exactly a sum of `k` maps through `ℤ/4`.
/// `new` searches level by level and records the least `k`; `saturated`
/// closes the rank-one composites under addition, which is the same set
/// without the levels.
#[derive(Debug, Clone)]
pub struct NullSetOracle {
    source: FinModule,
    target: FinModule,
    packer: Packer,
    members: HashSet<u128>,
    least_k: BTreeMap<u128, usize>,
    saturated: bool,
}

impl NullSetOracle {
    fn rank_one(m: &FinModule, n: &FinModule, packer: &Packer, bounds: &OracleBounds) -> Result<Vec<u128>> {
        let z4 = FinModule::z4();
        let into = enumerate_homs(m, &z4, bounds)?;
        let out_of = enumerate_homs(&z4, n, bounds)?;
        let mut gens: BTreeSet<u128> = BTreeSet::new();
        for a in &into {
            for b in &out_of {
                gens.insert(packer.pack(&brute_compose(a, b)));
            }
        }
        Ok(gens.into_iter().filter(|&g| g != 0).collect())
    }

    pub fn new(m: &FinModule, n: &FinModule, k_max: usize, bounds: &OracleBounds) -> Result<Self> {
        let packer = Packer::new(m, n)?;
        let rank_one = Self::rank_one(m, n, &packer, bounds)?;
        let mut least_k = BTreeMap::from([(0u128, 0usize)]);
        let mut frontier = vec![0u128];
        let mut saturated = false;
        for k in 1..=k_max {
            let mut next = Vec::new();
            for &f in &frontier {
                for &r in &rank_one {
                    let sum = packer.add(f, r);
                    if let std::collections::btree_map::Entry::Vacant(e) = least_k.entry(sum) {
                        e.insert(k);
                        next.push(sum);
                    }
                }
            }
            bounds.check(least_k.len() as u128)?;
            if next.is_empty() {
                saturated = true;
                break;
            }
            frontier = next;
        }
        let members = least_k.keys().copied().collect();
        Ok(Self { source: m.clone(), target: n.clone(), packer, members, least_k, saturated })
    }

    /// The whole null set, as the subgroup generated by the rank-one maps.
    pub fn saturated(m: &FinModule, n: &FinModule, bounds: &OracleBounds) -> Result<Self> {
        let packer = Packer::new(m, n)?;
        let mut members: HashSet<u128> = HashSet::from([0]);
        for r in Self::rank_one(m, n, &packer, bounds)? {
            if members.contains(&r) {
                continue;
            }
            let multiples: Vec<u128> =
                (1..4).map(|c| packer.scale(r, c)).take_while(|&x| x != 0).collect();
            let old: Vec<u128> = members.iter().copied().collect();
            for x in old {
                for &c in &multiples {
                    members.insert(packer.add(x, c));
                }
            }
            bounds.check(members.len() as u128)?;
        }
        Ok(Self { source: m.clone(), target: n.clone(), packer, members, least_k: BTreeMap::new(), saturated: true })
    }

    /// Least `k` with `f` factoring through `(ℤ/4)^k`; only recorded by `new`.
    pub fn least_k(&self, f: &[Vec<u8>]) -> Option<usize> {
        self.least_k.get(&self.packer.pack(f)).copied()
    }

    pub fn contains_rows(&self, f: &[Vec<u8>]) -> bool {
        self.members.contains(&self.packer.pack(f))
    }

    pub fn contains(&self, f: &ModMorphism) -> bool {
        f.source() == &self.source && f.target() == &self.target && self.contains_rows(&rows_of(f))
    }

    /// True once the search reached a fixed point, so `contains` is exact.
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn brute_factors_through(f: &ModMorphism, k_max: usize, bounds: &OracleBounds) -> Result<bool> {
    Ok(NullSetOracle::new(f.source(), f.target(), k_max, bounds)?.contains(f))
}

/// `M[2] / 2M` computed on elements, as a map from each 2-torsion element to
/// the least member of its coset.
#[derive(Debug, Clone)]
pub struct TorsionQuotient {
    module: FinModule,
    class_of: BTreeMap<Vec<u8>, Vec<u8>>,
}

impl TorsionQuotient {
    pub fn new(m: &FinModule, bounds: &OracleBounds) -> Result<Self> {
        let table = ElementTable::new(m, bounds)?;
        let doubles: BTreeSet<Vec<u8>> = table.elements.iter().map(|x| double(m, x)).collect();
        let mut class_of = BTreeMap::new();
        for x in table.elements.iter().filter(|x| is_zero(&double(m, x))) {
            let rep = doubles.iter().map(|d| add(m, x, d)).min().expect("0 is a double");
            class_of.insert(x.clone(), rep);
        }
        Ok(Self { module: m.clone(), class_of })
    }

    pub fn dimension(&self) -> usize {
        let classes: BTreeSet<&Vec<u8>> = self.class_of.values().collect();
        classes.len().trailing_zeros() as usize
    }
}

/// Whether `f` induces a bijection `M[2]/2M → N[2]/2N`.
pub fn brute_weak_equivalence(
    f: &ModMorphism,
    source: &TorsionQuotient,
    target: &TorsionQuotient,
) -> bool {
    assert_eq!(f.source(), &source.module);
    assert_eq!(f.target(), &target.module);
    let rows = rows_of(f);
    let mut induced: BTreeMap<&Vec<u8>, &Vec<u8>> = BTreeMap::new();
    for (x, cx) in &source.class_of {
        let cy = &target.class_of[&eval(f.target(), &rows, x)];
        induced.insert(cx, cy);
    }
    let image: BTreeSet<&&Vec<u8>> = induced.values().collect();
    let target_classes: BTreeSet<&Vec<u8>> = target.class_of.values().collect();
    image.len() == induced.len() && image.len() == target_classes.len()
}

/// Exhaustive search for `g` with `f·g ≃ id` and `g·f ≃ id`.
#[derive(Debug, Clone)]
pub struct StableInverseSearch {
    candidates: Vec<ModMorphism>,
    candidate_rows: Vec<Vec<Vec<u8>>>,
    null_source: NullSetOracle,
    null_target: NullSetOracle,
    minus_id_source: u128,
    minus_id_target: u128,
}

impl StableInverseSearch {
    pub fn new(m: &FinModule, n: &FinModule, bounds: &OracleBounds) -> Result<Self> {
        let candidates = enumerate_homs(n, m, bounds)?;
        let null_source = NullSetOracle::saturated(m, m, bounds)?;
        let null_target = NullSetOracle::saturated(n, n, bounds)?;
        let minus_id = |x: &FinModule, p: &Packer| {
            let rows: Vec<Vec<u8>> = (0..x.ngens())
                .map(|i| (0..x.ngens()).map(|j| if i == j { x.order(i) - 1 } else { 0 }).collect())
                .collect();
            p.pack(&rows)
        };
        Ok(Self {
            candidate_rows: candidates.iter().map(rows_of).collect(),
            candidates,
            minus_id_source: minus_id(m, &null_source.packer),
            minus_id_target: minus_id(n, &null_target.packer),
            null_source,
            null_target,
        })
    }

    pub fn search(&self, f: &ModMorphism) -> Option<&ModMorphism> {
        let (m, n) = (f.source(), f.target());
        let fr = rows_of(f);
        let is_null = |oracle: &NullSetOracle, minus_id: u128, rows: Vec<Vec<u8>>| {
            let p = &oracle.packer;
            oracle.members.contains(&p.add(p.pack(&rows), minus_id))
        };
        self.candidate_rows
            .iter()
            .position(|gr| {
                let fg: Vec<Vec<u8>> = fr.iter().map(|r| eval(m, gr, r)).collect();
                is_null(&self.null_source, self.minus_id_source, fg) && {
                    let gf: Vec<Vec<u8>> = gr.iter().map(|r| eval(n, &fr, r)).collect();
                    is_null(&self.null_target, self.minus_id_target, gf)
                }
            })
            .map(|i| &self.candidates[i])
    }

    pub fn candidates(&self) -> usize {
        self.candidates.len()
    }
}

/// Every cylinder for `x` with carrier `(ℤ/4)^k`, `k ≤ k_max`.
pub fn sweep_cylinders(x: &UnderObject, k_max: usize, bounds: &OracleBounds) -> Result<Vec<Cylinder>> {
    if x.carrier().cardinality() > 16 {
        return Err(Error::Precondition(format!("sweep needs a carrier of order ≤ 16, got {}", x.carrier())));
    }
    let coproduct = coproduct_under(x, x)?;
    let fold = rows_of(coproduct.fold()?.map());
    let xx = coproduct.object.carrier().clone();
    let x_quotient = TorsionQuotient::new(x.carrier(), bounds)?;
    let mut out = Vec::new();
    for k in 0..=k_max {
        let z = FinModule::free(k);
        let z_quotient = TorsionQuotient::new(&z, bounds)?;
        let sigmas: Vec<ModMorphism> = enumerate_homs(&z, x.carrier(), bounds)?
            .into_iter()
            .filter(|s| brute_weak_equivalence(s, &z_quotient, &x_quotient))
            .collect();
        for ins in enumerate_homs(&xx, &z, bounds)? {
            if !brute_mono(&ins, bounds)? {
                continue;
            }
            for sigma in &sigmas {
                if brute_compose(&ins, sigma) == fold {
                    out.push(Cylinder::new(coproduct.clone(), ins.clone(), sigma.clone())?);
                }
            }
        }
    }
    Ok(out)
}

/// Every homotopy `H: Z → y` out of the cylinder, paired with `(ins₀H, ins₁H)`.
pub fn enumerate_homotopies(
    cyl: &Cylinder,
    y: &UnderObject,
    bounds: &OracleBounds,
) -> Result<Vec<(UnderMorphism, UnderMorphism, UnderMorphism)>> {
    let mut out = Vec::new();
    for h in enumerate_under_homs(cyl.object(), y, bounds)? {
        let f = cyl.ins0().compose(&h)?;
        let g = cyl.ins1().compose(&h)?;
        out.push((h, f, g));
    }
    Ok(out)
}

/// Homotopy ends `(ins₀H, ins₁H)` as raw rows, for every `H` among
/// `candidates` (all maps `Z → carrier(y)`) that commutes with the structure
/// maps.
pub fn homotopy_ends(
    cyl: &Cylinder,
    y: &UnderObject,
    candidates: &[ModMorphism],
) -> Vec<(Rows, Rows)> {
    let sz = cyl.object().struct_map();
    let sy = rows_of(y.struct_map());
    candidates
        .iter()
        .filter(|h| h.source() == cyl.object().carrier() && brute_compose(sz, h) == sy)
        .map(|h| (brute_compose(cyl.ins0().map(), h), brute_compose(cyl.ins1().map(), h)))
        .collect()
}

/// A weak equivalence `w: x′ → x` with `w·f = w·g`, over all under-objects
/// `x′` with carrier of order at most `max_order`.
///
/// Finding one proves `γf = γg`.
pub fn brute_equalizing_weak_equivalence(
    f: &UnderMorphism,
    g: &UnderMorphism,
    max_order: u128,
    bounds: &OracleBounds,
) -> Result<Option<UnderMorphism>> {
    let x = f.source();
    let x_quotient = TorsionQuotient::new(x.carrier(), bounds)?;
    let (fr, gr) = (rows_of(f.map()), rows_of(g.map()));
    for carrier in modules_up_to(max_order) {
        let c_quotient = TorsionQuotient::new(&carrier, bounds)?;
        for s in enumerate_homs(x.base(), &carrier, bounds)? {
            let xp = UnderObject::new(s);
            for w in enumerate_under_homs(&xp, x, bounds)? {
                if !brute_weak_equivalence(w.map(), &c_quotient, &x_quotient) {
                    continue;
                }
                let wr = rows_of(w.map());
                let wf: Vec<Vec<u8>> = wr.iter().map(|r| eval(f.target().carrier(), &fr, r)).collect();
                let wg: Vec<Vec<u8>> = wr.iter().map(|r| eval(f.target().carrier(), &gr, r)).collect();
                if wf == wg {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}
