//! End-to-end verification reports and the sweeps behind them.

use std::fmt::Write as _;

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::frobenius::{is_weak_equivalence, stable_reduction, BijectiveFactorization, StableReduction};
use crate::homotopy_decider::{
    distinct_in_quotient, homotopy_difference_bound, solve_homotopy, HoDecision, HoEqualityDecider,
    PairClassifier, QuotientVerdict,
};
use crate::instances::{doubling_source, doubling_w, pair_map, split_target, unit_source};
use crate::json::{matrix_json, ModuleJson, UnderMorphismJson, SCHEMA};
use crate::module_cat::{FinModule, ModMorphism};
use crate::oracle::{homotopy_ends, enumerate_homs, modules_up_to, sweep_cylinders, OracleBounds};
use crate::sample::{random_morphism, random_under_object, rng, DEFAULT_SEED};
use crate::under_cat::{
    coproduct_of_morphisms, coproduct_under, is_cofibrant, is_fibrant, standard_cylinder,
    transfer_cylinder, under_model_predicates, TransferDiagnostics, UnderMorphism, UnderObject,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Passed,
    Failed,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Passed
        } else {
            Status::Failed
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Step {
    pub id: usize,
    pub claim: String,
    pub status: Status,
    pub evidence: Value,
    /// The mathematical statement the step checks.
    pub anchor: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Summary {
    Verified,
    Falsified,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub mode: &'static str,
    pub seed: u64,
    pub steps: Vec<Step>,
    pub summary: Summary,
}

impl VerificationReport {
    fn new(mode: &'static str, seed: u64, steps: Vec<Step>) -> Self {
        let summary = if steps.iter().all(|s| s.status == Status::Passed) {
            Summary::Verified
        } else {
            Summary::Falsified
        };
        Self { schema: SCHEMA, mode, seed, steps, summary }
    }

    pub fn is_verified(&self) -> bool {
        self.summary == Summary::Verified
    }

    pub fn first_failure(&self) -> Option<&Step> {
        self.steps.iter().find(|s| s.status == Status::Failed)
    }

    pub fn step(&self, id: usize) -> Option<&Step> {
        self.steps.iter().find(|s| s.id == id)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let mark = match s.status {
                Status::Passed => "ok  ",
                Status::Failed => "FAIL",
            };
            let _ = writeln!(out, "[{mark}] {}. {}", s.id, s.claim);
            let _ = writeln!(out, "       {}", s.evidence);
        }
        let _ = match self.first_failure() {
            None => writeln!(out, "verified ({} steps, seed {})", self.steps.len(), self.seed),
            Some(s) => writeln!(out, "falsified at step {}: {}", s.id, s.claim),
        };
        out
    }
}

#[derive(Debug, Clone)]
pub struct CounterexampleConfig {
    pub seed: u64,
    /// The rows of the two maps `(ℤ/4, 2) → (ℤ/4 ⊕ ℤ/2, ⌊2 0⌋)` under test.
    pub pair: ([i64; 2], [i64; 2]),
    /// Largest `k` for cylinders with carrier `(ℤ/4)^k` in the sweep.
    pub sweep_rank: usize,
    pub fibrancy_samples: usize,
    pub bounds: OracleBounds,
}

impl Default for CounterexampleConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            pair: ([1, 0], [1, 1]),
            sweep_rank: 3,
            fibrancy_samples: 50,
            bounds: OracleBounds::default(),
        }
    }
}

fn under_json(m: &UnderMorphism) -> Value {
    serde_json::to_value(UnderMorphismJson::from(m)).expect("serializable")
}

/// Every cylinder for `(ℤ/4, 2)` with carrier `(ℤ/4)^k`, `k ≤ rank`, and
/// every homotopy into `(ℤ/4 ⊕ ℤ/2, ⌊2 0⌋)`.
#[derive(Debug, Clone, Serialize)]
pub struct ObstructionSweep {
    pub cylinders: usize,
    pub cylinders_by_rank: Vec<usize>,
    pub homotopies: usize,
    /// Distinct `ins₀H - ins₁H` seen, as rows.
    pub observed_differences: Vec<Vec<u8>>,
    pub outside_bound: usize,
    /// Homotopies whose ends are exactly the queried pair, in either order.
    pub pair_homotopies: usize,
}

pub fn obstruction_sweep(
    rank: usize,
    pair: Option<(&UnderMorphism, &UnderMorphism)>,
    bounds: &OracleBounds,
) -> Result<ObstructionSweep> {
    let (x, y) = (doubling_source(), split_target());
    let bound = homotopy_difference_bound(&x, &y)?;
    let target = y.carrier();
    let cylinders = sweep_cylinders(&x, rank, bounds)?;
    let candidates: Vec<Vec<ModMorphism>> = (0..=rank)
        .map(|k| enumerate_homs(&FinModule::free(k), target, bounds))
        .collect::<Result<_>>()?;
    let pair_rows = pair.map(|(a, b)| (a.map().rows(), b.map().rows()));
    let mut by_rank = vec![0; rank + 1];
    let mut observed = std::collections::BTreeSet::new();
    let (mut homotopies, mut outside, mut pair_hits) = (0, 0, 0);
    for cyl in &cylinders {
        let k = cyl.object().carrier().ngens();
        by_rank[k] += 1;
        for (f, g) in homotopy_ends(cyl, &y, &candidates[k]) {
            homotopies += 1;
            let d = ModMorphism::from_fn(x.carrier().clone(), target.clone(), |i, j| {
                f[i][j] as i64 - g[i][j] as i64
            })?;
            if !bound.contains(&d) {
                outside += 1;
            }
            observed.insert(d.rows()[0].clone());
            if let Some((a, b)) = &pair_rows {
                if (&f == a && &g == b) || (&f == b && &g == a) {
                    pair_hits += 1;
                }
            }
        }
    }
    Ok(ObstructionSweep {
        cylinders: cylinders.len(),
        cylinders_by_rank: by_rank,
        homotopies,
        observed_differences: observed.into_iter().collect(),
        outside_bound: outside,
        pair_homotopies: pair_hits,
    })
}

/// Runs the seven-step verification of the counterexample.
pub fn verify_counterexample(cfg: &CounterexampleConfig) -> Result<VerificationReport> {
    let (x, y) = (doubling_source(), split_target());
    let f = pair_map(cfg.pair.0)?;
    let g = pair_map(cfg.pair.1)?;
    let mut steps = Vec::new();
    let mut push = |claim: String, ok: bool, evidence: Value, anchor: &'static str| {
        let id = steps.len() + 1;
        steps.push(Step { id, claim, status: Status::of(ok), evidence, anchor });
    };

    let mut r = rng(cfg.seed);
    let mut objects = vec![x.clone(), y.clone(), unit_source()];
    objects.extend((0..cfg.fibrancy_samples).map(|_| random_under_object(&mut r, &FinModule::z4(), 64)));
    let fibrant = objects.iter().filter(|o| is_fibrant(o)).count();
    push(
        "every object under Z/4 is fibrant".into(),
        fibrant == objects.len(),
        json!({"objects": objects.len(), "fibrant": fibrant}),
        "all objects are fibrant since all modules are fibrant",
    );

    let cyl = standard_cylinder(&x);
    let carrier = cyl.object().carrier();
    push(
        format!("the standard cylinder of {x} has a bijective carrier"),
        crate::frobenius::is_bijective_object(carrier) && cyl.check().holds(),
        json!({"carrier": ModuleJson::from(carrier), "check": cyl.check()}),
        "Z is bijective",
    );

    let bound = homotopy_difference_bound(&x, &y)?;
    let elements: Vec<Vec<u8>> = bound.elements().iter().map(|e| e.rows()[0].clone()).collect();
    let sweep = obstruction_sweep(cfg.sweep_rank, Some((&f, &g)), &cfg.bounds)?;
    push(
        format!(
            "every cylinder homotopy into {y} has ins0 H - ins1 H in S = 2 Hom (cylinders up to rank {})",
            cfg.sweep_rank
        ),
        sweep.outside_bound == 0 && sweep.cylinders > 0,
        json!({"S": elements, "sweep": sweep}),
        "homotopic morphisms coincide in the second component",
    );

    let distinct = distinct_in_quotient(&f, &g)?;
    let ok = distinct.as_ref().is_some_and(|w| w.validate(&f, &g)) && sweep.pair_homotopies == 0;
    let evidence = match &distinct {
        Some(w) => json!({
            "difference": w.difference.rows()[0],
            "coordinate": w.coordinate,
            "S": elements,
            "swept_homotopies_between_pair": sweep.pair_homotopies,
        }),
        None => json!({
            "difference": g.map().sub(f.map())?.rows()[0],
            "in_S": true,
            "homotopy": solve_homotopy(&cyl, &f, &g)?.map(|h| matrix_json(h.homotopy.map())),
        }),
    };
    push(
        format!("{} and {} are distinct in Fib/~", f.map(), g.map()),
        ok,
        evidence,
        "represent different morphisms in the quotient category",
    );

    let w = doubling_w();
    let wf = w.compose(&f)?;
    let wg = w.compose(&g)?;
    let classes = under_model_predicates(&w);
    push(
        format!("w = 2: {} -> {} is a weak equivalence with w f = w g", w.source(), w.target()),
        classes.weak_equivalence && wf == wg,
        json!({"classes": classes, "w_f": matrix_json(wf.map()), "w_g": matrix_json(wg.map())}),
        "2 is a weak equivalence and 2 [1 0] = 2 [1 1]",
    );

    let ho = HoEqualityDecider::new(&x, &y)?.decide(&f, &g)?;
    let (ok, evidence) = match &ho {
        HoDecision::Equal(w) => (
            w.validate(&f, &g),
            json!({
                "replacement": crate::json::UnderObjectJson::from(&w.replacement.replacement),
                "q": matrix_json(w.replacement.q.map()),
                "cylinder_carrier": ModuleJson::from(w.homotopy.cylinder.object().carrier()),
                "homotopy": matrix_json(w.homotopy.homotopy.map()),
            }),
        ),
        HoDecision::NotEqual(reason) => (false, json!({ "reason": reason })),
    };
    push(format!("gamma {} = gamma {} in Ho", f.map(), g.map()), ok, evidence, "hence gamma [1 0] = gamma [1 1]");

    let violated = distinct.is_some() && ho.is_equal();
    push(
        "Fib/~ -> Ho Fib is not faithful".into(),
        violated,
        json!({"pair": [under_json(&f), under_json(&g)]}),
        "the canonical functor is not faithful in general",
    );

    Ok(VerificationReport::new("counterexample", cfg.seed, steps))
}

#[derive(Debug, Clone)]
pub struct BaseZeroConfig {
    pub seed: u64,
    pub max_order: u128,
    /// Hom-sets with at most this many elements are checked on every pair;
    /// larger ones on every difference with random base points.
    pub exhaustive_pair_limit: usize,
    pub base_points_per_difference: usize,
    pub hypothesis_samples: usize,
    pub bounds: OracleBounds,
}

impl Default for BaseZeroConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            max_order: 16,
            exhaustive_pair_limit: 64,
            base_points_per_difference: 1,
            hypothesis_samples: 100,
            bounds: OracleBounds::default(),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct BaseZeroSweep {
    pub hom_sets: usize,
    pub morphisms: usize,
    pub exhaustive_hom_sets: usize,
    pub pairs: u64,
    /// `decide_ho_equal` and `stably_homotopic` disagree.
    pub mismatches: u64,
    pub violations: u64,
    pub undetermined: u64,
}

/// Compares `Fib/≃` and `Ho` on maps between plain modules.
///
/// Both deciders only depend on `g - f` (their solution sets are cosets of a
/// subgroup containing the diagonal), so every difference is checked, each
/// with seeded base points, and small hom-sets additionally on all pairs.
pub fn base_zero_sweep(cfg: &BaseZeroConfig) -> Result<BaseZeroSweep> {
    let mut r = rng(cfg.seed);
    let mut out = BaseZeroSweep::default();
    let modules = modules_up_to(cfg.max_order);
    for m in &modules {
        for n in &modules {
            let (x, y) = (UnderObject::plain(m), UnderObject::plain(n));
            let homs: Vec<UnderMorphism> = enumerate_homs(m, n, &cfg.bounds)?
                .into_iter()
                .map(|h| UnderMorphism::new(x.clone(), y.clone(), h))
                .collect::<Result<_>>()?;
            let classifier = PairClassifier::new(&x, &y)?;
            let stable = BijectiveFactorization::new(m, n);
            let mut check = |f: &UnderMorphism, g: &UnderMorphism| -> Result<()> {
                let e = classifier.entry(f, g)?;
                out.pairs += 1;
                out.mismatches += (e.ho_equal != stable.factors(&g.map().sub(f.map())?)?) as u64;
                out.violations += e.violation as u64;
                out.undetermined += (e.quotient == QuotientVerdict::Undetermined) as u64;
                Ok(())
            };
            if homs.len() <= cfg.exhaustive_pair_limit {
                for f in &homs {
                    for g in &homs {
                        check(f, g)?;
                    }
                }
                out.exhaustive_hom_sets += 1;
            } else {
                for d in &homs {
                    for _ in 0..cfg.base_points_per_difference {
                        let f = &homs[r.gen_range(0..homs.len())];
                        let g = UnderMorphism::new(x.clone(), y.clone(), f.map().add(d.map())?)?;
                        check(f, &g)?;
                    }
                }
            }
            out.hom_sets += 1;
            out.morphisms += homs.len();
        }
    }
    Ok(out)
}

/// Runs the base-zero positive control.
pub fn verify_base_zero(cfg: &BaseZeroConfig) -> Result<VerificationReport> {
    let mut steps = Vec::new();
    let mut push = |claim: String, ok: bool, evidence: Value, anchor: &'static str| {
        let id = steps.len() + 1;
        steps.push(Step { id, claim, status: Status::of(ok), evidence, anchor });
    };
    let modules = modules_up_to(cfg.max_order);
    let cofibrant = modules.iter().filter(|m| is_cofibrant(&UnderObject::plain(m))).count();
    push(
        format!("every module of order <= {} is cofibrant", cfg.max_order),
        cofibrant == modules.len(),
        json!({"modules": modules.len(), "cofibrant": cofibrant}),
        "all objects are cofibrant",
    );

    let mut r = rng(cfg.seed);
    let (mut tried, mut coproduct_we, mut transfers_valid) = (0, 0, 0);
    while tried < cfg.hypothesis_samples {
        let a = modules[r.gen_range(0..modules.len())].clone();
        let b = modules[r.gen_range(0..modules.len())].clone();
        let w = random_morphism(&mut r, &a, &b);
        if !is_weak_equivalence(&w) {
            continue;
        }
        tried += 1;
        let w = UnderMorphism::new(UnderObject::plain(&a), UnderObject::plain(&b), w)?;
        let d = transfer_cylinder(&w, &standard_cylinder(w.source()))?.diagnostics;
        coproduct_we += d.coproduct_map_weak_equivalence as usize;
        transfers_valid += (d.hypotheses_hold() && d.cylinder_valid) as usize;
    }
    push(
        "w + w is a weak equivalence and transferred cylinders are valid".into(),
        coproduct_we == tried && transfers_valid == tried,
        json!({"samples": tried, "coproduct_weak_equivalences": coproduct_we, "valid_transfers": transfers_valid}),
        "w + w is a weak equivalence for every weak equivalence w",
    );

    let sweep = base_zero_sweep(cfg)?;
    push(
        "decide_ho_equal agrees with stable homotopy and finds no faithfulness violation".into(),
        sweep.mismatches == 0 && sweep.violations == 0 && sweep.undetermined == 0,
        serde_json::to_value(&sweep).expect("serializable"),
        "morphisms represent the same morphism in Ho iff they are cylinder homotopic",
    );
    Ok(VerificationReport::new("base-zero", cfg.seed, steps))
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisReport {
    pub schema: u32,
    pub w: UnderMorphismJson,
    pub w_weak_equivalence: bool,
    pub coproduct_source: ModuleJson,
    pub coproduct_target: ModuleJson,
    pub coproduct_map: Vec<Vec<i64>>,
    pub coproduct_map_reduction: StableReduction,
    pub coproduct_map_weak_equivalence: bool,
    /// Diagnostics from pushing the standard cylinder of the source along `w`.
    pub transfer: TransferDiagnostics,
}

/// Instance-level check of "`w ⊔ w` is a weak equivalence".
pub fn check_hypotheses(w: &UnderMorphism) -> Result<HypothesisReport> {
    if !is_weak_equivalence(w.map()) {
        return Err(Error::Precondition(format!("{} is not a weak equivalence", w.map())));
    }
    let src = coproduct_under(w.source(), w.source())?;
    let tgt = coproduct_under(w.target(), w.target())?;
    let ww = coproduct_of_morphisms(w, w, &src, &tgt)?;
    let transfer = transfer_cylinder(w, &standard_cylinder(w.source()))?.diagnostics;
    Ok(HypothesisReport {
        schema: SCHEMA,
        w: w.into(),
        w_weak_equivalence: true,
        coproduct_source: src.object.carrier().into(),
        coproduct_target: tgt.object.carrier().into(),
        coproduct_map: matrix_json(ww.map()),
        coproduct_map_reduction: stable_reduction(ww.map()),
        coproduct_map_weak_equivalence: is_weak_equivalence(ww.map()),
        transfer,
    })
}
