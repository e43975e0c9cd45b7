//! Decision procedures for cylinder homotopy, distinctness in `Fib/≃` and
//! equality in `Ho`, each answer backed by checkable data.
//!
//! Two facts are trusted rather than re-proved here:
//!
//! * The congruence generated by single-step cylinder homotopy is its
//!   transitive closure, because the relation is compatible with composition
//!   on fibrant objects. A subgroup containing every single-step difference
//!   therefore contains every difference in the generated congruence.
//! * For a cofibrant source and fibrant target, two maps agree in `Ho` iff
//!   they are homotopic through one fixed cylinder. `decide_ho_equal` relies
//!   on this only for negative answers that no stable invariant explains.
//!
//! A cylinder homotopy in the under-category forgets to one in the module
//! category, where `ins₀ - ins₁` is stably null because `σ` is a stable
//! isomorphism. So carriers of homotopic maps are stably homotopic, which
//! gives an obstruction valid for any base.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frobenius::{stable_reduction, BijectiveFactorization};
use crate::module_cat::{FinModule, HomProblem, ModMorphism};
use crate::under_cat::{
    cofibrant_replacement, standard_cylinder, CofibrantReplacement, Cylinder,
    UnderMorphism, UnderObject,
};

/// `H: Z → Y` with `ins₀·H = f` and `ins₁·H = g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyWitness {
    pub cylinder: Cylinder,
    pub homotopy: UnderMorphism,
}

impl HomotopyWitness {
    /// Recomputes every equation from the raw matrices.
    pub fn validate(&self, f: &UnderMorphism, g: &UnderMorphism) -> bool {
        let h = &self.homotopy;
        let cyl = &self.cylinder;
        cyl.check().holds()
            && h.source() == cyl.object()
            && h.target() == f.target()
            && f.is_parallel_to(g)
            && cyl.base_object() == f.source()
            && cyl.object().struct_map().compose(h.map()).as_ref() == Ok(h.target().struct_map())
            && cyl.ins0().map().compose(h.map()).as_ref() == Ok(f.map())
            && cyl.ins1().map().compose(h.map()).as_ref() == Ok(g.map())
    }

    /// The witness for `g ≃ f` obtained by exchanging `ins₀` and `ins₁`.
    pub fn reversed(&self) -> HomotopyWitness {
        let cylinder = self.cylinder.swapped();
        let homotopy = UnderMorphism::new(
            cylinder.object().clone(),
            self.homotopy.target().clone(),
            self.homotopy.map().clone(),
        )
        .expect("swapping keeps Z");
        HomotopyWitness { cylinder, homotopy }
    }
}

/// A fixed cylinder and target with the linear system for `H` prepared.
#[derive(Debug, Clone)]
pub struct HomotopySolver {
    cylinder: Cylinder,
    target: UnderObject,
    problem: HomProblem,
}

impl HomotopySolver {
    pub fn new(cylinder: Cylinder, target: UnderObject) -> Result<Self> {
        if cylinder.base_object().base() != target.base() {
            return Err(Error::BaseMismatch(format!(
                "{} vs {}",
                cylinder.base_object().base(),
                target.base()
            )));
        }
        let problem = HomProblem::new(
            cylinder.object().carrier().clone(),
            target.carrier().clone(),
            vec![
                cylinder.ins0().map().clone(),
                cylinder.ins1().map().clone(),
                cylinder.object().struct_map().clone(),
            ],
        )?;
        Ok(Self { cylinder, target, problem })
    }

    pub fn cylinder(&self) -> &Cylinder {
        &self.cylinder
    }

    fn check_pair(&self, f: &UnderMorphism, g: &UnderMorphism) -> Result<()> {
        if !f.is_parallel_to(g) {
            return Err(Error::ObjectMismatch(format!("{f} and {g} are not parallel")));
        }
        if f.source() != self.cylinder.base_object() || f.target() != &self.target {
            return Err(Error::ObjectMismatch(format!(
                "{f} does not run from {} to {}",
                self.cylinder.base_object(),
                self.target
            )));
        }
        Ok(())
    }

    pub fn is_homotopic(&self, f: &UnderMorphism, g: &UnderMorphism) -> Result<bool> {
        self.check_pair(f, g)?;
        self.problem.is_solvable(&[f.map().clone(), g.map().clone(), self.target.struct_map().clone()])
    }

    pub fn solve(&self, f: &UnderMorphism, g: &UnderMorphism) -> Result<Option<HomotopyWitness>> {
        self.check_pair(f, g)?;
        let rhs = [f.map().clone(), g.map().clone(), self.target.struct_map().clone()];
        let Some(h) = self.problem.solve(&rhs)? else {
            return Ok(None);
        };
        let homotopy = UnderMorphism::new(self.cylinder.object().clone(), self.target.clone(), h)?;
        Ok(Some(HomotopyWitness { cylinder: self.cylinder.clone(), homotopy }))
    }

    /// Number of homotopies from `f` to `g` when one exists.
    pub fn solution_count(&self) -> u128 {
        self.problem.solution_count()
    }
}

pub fn solve_homotopy(
    cyl: &Cylinder,
    f: &UnderMorphism,
    g: &UnderMorphism,
) -> Result<Option<HomotopyWitness>> {
    HomotopySolver::new(cyl.clone(), f.target().clone())?.solve(f, g)
}

/// `S = 2·Hom(ℤ/4, N)`, given by the generators `2·e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceBound {
    pub source: FinModule,
    pub target: FinModule,
    pub generators: Vec<ModMorphism>,
}

impl DifferenceBound {
    fn for_target(target: &FinModule) -> Self {
        let source = FinModule::z4();
        let generators = (0..target.ngens())
            .filter(|&j| target.order(j) == 4)
            .map(|j| {
                ModMorphism::from_fn(source.clone(), target.clone(), |_, c| 2 * (c == j) as i64)
                    .expect("2·e_j is well defined")
            })
            .collect();
        Self { source, target: target.clone(), generators }
    }

    /// A target coordinate whose parity vanishes on `S` but not on `d`.
    pub fn separating_coordinate(&self, d: &ModMorphism) -> Option<usize> {
        (0..self.target.ngens()).find(|&j| d.entry(0, j) % 2 == 1)
    }

    pub fn contains(&self, d: &ModMorphism) -> bool {
        self.separating_coordinate(d).is_none()
    }

    /// All elements of `S`.
    pub fn elements(&self) -> Vec<ModMorphism> {
        let mut out = vec![ModMorphism::zero(self.source.clone(), self.target.clone())];
        for gen in &self.generators {
            let shifted: Vec<ModMorphism> =
                out.iter().map(|e| e.add(gen).expect("same hom-set")).collect();
            out.extend(shifted);
        }
        out.sort_by_key(|a| a.rows());
        out.dedup();
        out
    }
}

fn has_doubling_shape(x: &UnderObject) -> bool {
    x.base() == &FinModule::z4()
        && x.carrier() == &FinModule::z4()
        && x.struct_map().entry(0, 0) == 2
}

/// The subgroup bounding `ins₀H - ins₁H` over every cylinder of `x` and every
/// homotopy into `y`.
///
/// Only defined for `x = (ℤ/4, 2)`. Every cylinder carrier there is bijective,
/// `2·(ins₀ - ins₁) = 0` and 2-torsion of a free module is `2·Z`, so the
/// difference is `2φH` for some `φ`.
pub fn homotopy_difference_bound(x: &UnderObject, y: &UnderObject) -> Result<DifferenceBound> {
    if !has_doubling_shape(x) {
        return Err(Error::Precondition(format!(
            "difference bound needs the source (Z/4, 2) over Z/4, got {x}"
        )));
    }
    if x.base() != y.base() {
        return Err(Error::BaseMismatch(format!("{} vs {}", x.base(), y.base())));
    }
    Ok(DifferenceBound::for_target(y.carrier()))
}

/// Evidence that `f` and `g` differ in `Fib/≃`: `g - f` has odd
/// `coordinate`, while every element of `S` has it even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientDistinctnessWitness {
    pub obstruction_subgroup: DifferenceBound,
    pub difference: ModMorphism,
    pub coordinate: usize,
}

impl QuotientDistinctnessWitness {
    pub fn validate(&self, f: &UnderMorphism, g: &UnderMorphism) -> bool {
        let s = &self.obstruction_subgroup;
        if !has_doubling_shape(f.source()) || !f.is_parallel_to(g) {
            return false;
        }
        if s.target != *f.target().carrier() || s.source != *f.source().carrier() {
            return false;
        }
        if DifferenceBound::for_target(&s.target).generators != s.generators {
            return false;
        }
        let j = self.coordinate;
        j < s.target.ngens()
            && g.map().sub(f.map()).as_ref() == Ok(&self.difference)
            && self.difference.entry(0, j) % 2 == 1
            && s.generators.iter().all(|gen| gen.entry(0, j) % 2 == 0)
    }
}

pub fn distinct_in_quotient(
    f: &UnderMorphism,
    g: &UnderMorphism,
) -> Result<Option<QuotientDistinctnessWitness>> {
    if !f.is_parallel_to(g) {
        return Err(Error::ObjectMismatch(format!("{f} and {g} are not parallel")));
    }
    let bound = homotopy_difference_bound(f.source(), f.target())?;
    let difference = g.map().sub(f.map())?;
    Ok(bound.separating_coordinate(&difference).map(|coordinate| QuotientDistinctnessWitness {
        obstruction_subgroup: bound,
        difference,
        coordinate,
    }))
}

/// `γf = γg`, certified by a weak equivalence `q` and a homotopy `q·f ≃ q·g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoEqualityWitness {
    pub replacement: CofibrantReplacement,
    pub homotopy: HomotopyWitness,
}

impl HoEqualityWitness {
    pub fn validate(&self, f: &UnderMorphism, g: &UnderMorphism) -> bool {
        let q = &self.replacement.q;
        let (Ok(qf), Ok(qg)) = (q.compose(f), q.compose(g)) else {
            return false;
        };
        crate::frobenius::is_weak_equivalence(q.map())
            && q.source() == &self.replacement.replacement
            && self.homotopy.validate(&qf, &qg)
    }
}

/// Why a negative Ho-equality answer holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NegativeReason {
    /// The stable reductions of the carrier maps differ; sound outright.
    StableReductionsDiffer,
    /// Rests on the cofibrant-source criterion described in the module docs.
    TrustedCriterion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HoDecision {
    Equal(Box<HoEqualityWitness>),
    NotEqual(NegativeReason),
}

impl HoDecision {
    pub fn is_equal(&self) -> bool {
        matches!(self, HoDecision::Equal(_))
    }

    pub fn witness(&self) -> Option<&HoEqualityWitness> {
        match self {
            HoDecision::Equal(w) => Some(w),
            HoDecision::NotEqual(_) => None,
        }
    }
}

/// Ho-equality for maps `x → y`, with the replacement and cylinder prepared.
#[derive(Debug, Clone)]
pub struct HoEqualityDecider {
    source: UnderObject,
    replacement: CofibrantReplacement,
    solver: HomotopySolver,
}

impl HoEqualityDecider {
    pub fn new(x: &UnderObject, y: &UnderObject) -> Result<Self> {
        let replacement = cofibrant_replacement(x);
        let cylinder = standard_cylinder(&replacement.replacement);
        let solver = HomotopySolver::new(cylinder, y.clone())?;
        Ok(Self { source: x.clone(), replacement, solver })
    }

    pub fn replacement(&self) -> &CofibrantReplacement {
        &self.replacement
    }

    fn replaced(&self, f: &UnderMorphism, g: &UnderMorphism) -> Result<(UnderMorphism, UnderMorphism)> {
        if f.source() != &self.source {
            return Err(Error::ObjectMismatch(format!("{f} does not start at {}", self.source)));
        }
        Ok((self.replacement.q.compose(f)?, self.replacement.q.compose(g)?))
    }

    /// The bare verdict, skipping witness construction.
    pub fn is_equal(&self, f: &UnderMorphism, g: &UnderMorphism) -> Result<bool> {
        let (qf, qg) = self.replaced(f, g)?;
        self.solver.is_homotopic(&qf, &qg)
    }

    pub fn decide(&self, f: &UnderMorphism, g: &UnderMorphism) -> Result<HoDecision> {
        let (qf, qg) = self.replaced(f, g)?;
        if let Some(homotopy) = self.solver.solve(&qf, &qg)? {
            return Ok(HoDecision::Equal(Box::new(HoEqualityWitness {
                replacement: self.replacement.clone(),
                homotopy,
            })));
        }
        Ok(HoDecision::NotEqual(if stable_reduction(f.map()) != stable_reduction(g.map()) {
            NegativeReason::StableReductionsDiffer
        } else {
            NegativeReason::TrustedCriterion
        }))
    }
}

pub fn decide_ho_equal(f: &UnderMorphism, g: &UnderMorphism) -> Result<HoDecision> {
    if !f.is_parallel_to(g) {
        return Err(Error::ObjectMismatch(format!("{f} and {g} are not parallel")));
    }
    HoEqualityDecider::new(f.source(), f.target())?.decide(f, g)
}

/// How `f` and `g` compare in `Fib/≃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuotientVerdict {
    /// A homotopy through the standard cylinder exists.
    Equal,
    /// The carrier maps are not stably homotopic.
    DistinctByStableClass,
    /// `g - f` lies outside the difference bound `S`.
    DistinctBySubgroup,
    /// Neither a homotopy nor an obstruction was found.
    Undetermined,
}

impl QuotientVerdict {
    pub fn is_distinct(self) -> bool {
        matches!(self, QuotientVerdict::DistinctByStableClass | QuotientVerdict::DistinctBySubgroup)
    }
}

/// Prepared comparison of maps `x → y` in both `Fib/≃` and `Ho`.
#[derive(Debug, Clone)]
pub struct PairClassifier {
    quotient: HomotopySolver,
    stable: BijectiveFactorization,
    subgroup: Option<DifferenceBound>,
    ho: HoEqualityDecider,
}

impl PairClassifier {
    pub fn new(x: &UnderObject, y: &UnderObject) -> Result<Self> {
        Ok(Self {
            quotient: HomotopySolver::new(standard_cylinder(x), y.clone())?,
            stable: BijectiveFactorization::new(x.carrier(), y.carrier()),
            subgroup: homotopy_difference_bound(x, y).ok(),
            ho: HoEqualityDecider::new(x, y)?,
        })
    }

    pub fn quotient_verdict(&self, f: &UnderMorphism, g: &UnderMorphism) -> Result<QuotientVerdict> {
        if self.quotient.is_homotopic(f, g)? {
            return Ok(QuotientVerdict::Equal);
        }
        let d = g.map().sub(f.map())?;
        if !self.stable.factors(&d)? {
            return Ok(QuotientVerdict::DistinctByStableClass);
        }
        if self.subgroup.as_ref().is_some_and(|s| !s.contains(&d)) {
            return Ok(QuotientVerdict::DistinctBySubgroup);
        }
        Ok(QuotientVerdict::Undetermined)
    }

    pub fn entry(&self, f: &UnderMorphism, g: &UnderMorphism) -> Result<FaithfulnessEntry> {
        let quotient = self.quotient_verdict(f, g)?;
        let ho_equal = self.ho.is_equal(f, g)?;
        Ok(FaithfulnessEntry {
            f: f.clone(),
            g: g.clone(),
            quotient,
            ho_equal,
            violation: quotient.is_distinct() && ho_equal,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaithfulnessEntry {
    pub f: UnderMorphism,
    pub g: UnderMorphism,
    pub quotient: QuotientVerdict,
    pub ho_equal: bool,
    /// Distinct in `Fib/≃` yet equal in `Ho`.
    pub violation: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FaithfulnessReport {
    pub entries: Vec<FaithfulnessEntry>,
}

impl FaithfulnessReport {
    pub fn violations(&self) -> impl Iterator<Item = &FaithfulnessEntry> {
        self.entries.iter().filter(|e| e.violation)
    }

    pub fn is_faithful_on_sample(&self) -> bool {
        self.violations().next().is_none()
    }
}

pub fn faithfulness_report(pairs: &[(UnderMorphism, UnderMorphism)]) -> Result<FaithfulnessReport> {
    let mut entries = Vec::with_capacity(pairs.len());
    let mut cached: Option<(UnderObject, UnderObject, PairClassifier)> = None;
    for (f, g) in pairs {
        if !f.is_parallel_to(g) {
            return Err(Error::ObjectMismatch(format!("{f} and {g} are not parallel")));
        }
        let reuse = matches!(&cached, Some((x, y, _)) if x == f.source() && y == f.target());
        if !reuse {
            let c = PairClassifier::new(f.source(), f.target())?;
            cached = Some((f.source().clone(), f.target().clone(), c));
        }
        let (_, _, classifier) = cached.as_ref().expect("just filled");
        entries.push(classifier.entry(f, g)?);
    }
    Ok(FaithfulnessReport { entries })
}
