//! JSON verdicts for single queries, and an independent re-check of the
//! certificate each verdict carries.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frobenius::{
    factors_through_bijective, is_bijective_object, stable_inverse,
    stable_reduction, FactorWitness,
};
use crate::homotopy_decider::{
    decide_ho_equal, distinct_in_quotient, homotopy_difference_bound, solve_homotopy, HoDecision,
    HoEqualityWitness, HomotopyWitness, NegativeReason, QuotientDistinctnessWitness,
};
use crate::json::{
    cylinder_from_json, matrix_json, AnyMorphismJson, CylinderJson, MatrixJson, ModuleJson,
    UnderObjectJson, SCHEMA,
};
use crate::module_cat::{image_cardinality, is_epi, is_mono, FinModule, ModMorphism};
use crate::under_cat::{
    is_cofibrant, standard_cylinder, CofibrantReplacement, UnderMorphism, UnderObject,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum DecideKind {
    Mono,
    Epi,
    We,
    Homotopic,
    HoEqual,
    Distinct,
}

/// Query input: one morphism, or a parallel pair `{"f", "g"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DecideInput {
    Pair { f: AnyMorphismJson, g: AnyMorphismJson },
    Single(AnyMorphismJson),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorJson {
    pub through: ModuleJson,
    pub first: MatrixJson,
    pub second: MatrixJson,
}

impl From<&FactorWitness> for FactorJson {
    fn from(w: &FactorWitness) -> Self {
        Self { through: (&w.through).into(), first: matrix_json(&w.first), second: matrix_json(&w.second) }
    }
}

impl FactorJson {
    fn to_witness(&self, source: &FinModule, target: &FinModule) -> Result<FactorWitness> {
        let through = FinModule::try_from(&self.through)?;
        Ok(FactorWitness {
            first: ModMorphism::new(source.clone(), through.clone(), &self.first)?,
            second: ModMorphism::new(through.clone(), target.clone(), &self.second)?,
            through,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomotopyJson {
    pub cylinder: CylinderJson,
    pub homotopy: MatrixJson,
}

impl From<&HomotopyWitness> for HomotopyJson {
    fn from(w: &HomotopyWitness) -> Self {
        Self { cylinder: (&w.cylinder).into(), homotopy: matrix_json(w.homotopy.map()) }
    }
}

impl HomotopyJson {
    fn to_witness(&self, x: &UnderObject, y: &UnderObject) -> Result<HomotopyWitness> {
        let cylinder = cylinder_from_json(x, &self.cylinder)?;
        let homotopy = UnderMorphism::from_rows(cylinder.object().clone(), y.clone(), &self.homotopy)?;
        Ok(HomotopyWitness { cylinder, homotopy })
    }
}

/// Evidence attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Certificate {
    /// Number of elements in the image.
    ImageSize { size: u64 },
    /// A nonzero element sent to zero.
    KernelElement { element: Vec<i64> },
    /// For each target generator, a source element mapping onto it.
    Preimages { preimages: Vec<Vec<i64>> },
    /// `g` with `f·g - id` and `g·f - id` factoring through bijectives.
    StableInverse { inverse: MatrixJson, left: FactorJson, right: FactorJson },
    /// The 𝔽₂-block of the relevant map.
    StableReduction { matrix: Vec<Vec<u8>> },
    /// `g - f` factors through a bijective object.
    BijectiveFactorization(FactorJson),
    Homotopy(HomotopyJson),
    /// No homotopy through the standard cylinder; re-checked by solving again.
    NoStandardHomotopy,
    HoEquality { replacement: UnderObjectJson, q: MatrixJson, homotopy: HomotopyJson },
    HoNegative { reason: NegativeReason },
    QuotientDistinct { subgroup_generators: Vec<MatrixJson>, difference: MatrixJson, coordinate: usize },
    /// `g - f` lies in the difference bound; carries a homotopy when one exists.
    QuotientNotDistinct { homotopy: Option<HomotopyJson> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verdict {
    pub schema: u32,
    pub kind: DecideKind,
    pub input: DecideInput,
    pub verdict: bool,
    pub certificate: Certificate,
}

fn single(kind: DecideKind, input: &DecideInput) -> Result<ModMorphism> {
    match input {
        DecideInput::Single(m) => m.to_plain(),
        DecideInput::Pair { .. } => Err(Error::Input(format!("{kind:?} takes a single morphism"))),
    }
}

fn pair(kind: DecideKind, input: &DecideInput) -> Result<(UnderMorphism, UnderMorphism, bool)> {
    match input {
        DecideInput::Pair { f, g } => {
            if f.is_under() != g.is_under() {
                return Err(Error::Input("f and g must both be plain or both be under-morphisms".into()));
            }
            let (f2, g2) = (f.to_under()?, g.to_under()?);
            if !f2.is_parallel_to(&g2) {
                return Err(Error::ObjectMismatch(format!("{f2} and {g2} are not parallel")));
            }
            Ok((f2, g2, f.is_under()))
        }
        DecideInput::Single(_) => Err(Error::Input(format!("{kind:?} takes a pair {{\"f\", \"g\"}}"))),
    }
}

fn elements_json(x: &[u8]) -> Vec<i64> {
    x.iter().map(|&v| v as i64).collect()
}

fn find_element(m: &FinModule, mut pred: impl FnMut(&[u8]) -> bool) -> Option<Vec<u8>> {
    let mut x = vec![0u8; m.ngens()];
    loop {
        if pred(&x) {
            return Some(x);
        }
        let mut i = x.len();
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            x[i] += 1;
            if x[i] < m.order(i) {
                break;
            }
            x[i] = 0;
        }
    }
}

fn minus_identity(h: &ModMorphism) -> ModMorphism {
    h.sub(&ModMorphism::identity(h.source())).expect("endomorphism")
}

/// Decides one query and attaches a certificate.
pub fn decide(kind: DecideKind, input: &DecideInput) -> Result<Verdict> {
    let (verdict, certificate) = match kind {
        DecideKind::Mono => {
            let f = single(kind, input)?;
            if is_mono(&f) {
                (true, Certificate::ImageSize { size: image_cardinality(&f) as u64 })
            } else {
                let x = find_element(f.source(), |x| x.iter().any(|&v| v != 0) && f.apply(x).iter().all(|&v| v == 0))
                    .expect("a non-mono has a nonzero kernel element");
                (false, Certificate::KernelElement { element: elements_json(&x) })
            }
        }
        DecideKind::Epi => {
            let f = single(kind, input)?;
            if is_epi(&f) {
                let preimages = (0..f.target().ngens())
                    .map(|j| {
                        let e: Vec<u8> = (0..f.target().ngens()).map(|c| (c == j) as u8).collect();
                        let x = find_element(f.source(), |x| f.apply(x) == e).expect("epi hits every generator");
                        elements_json(&x)
                    })
                    .collect();
                (true, Certificate::Preimages { preimages })
            } else {
                (false, Certificate::ImageSize { size: image_cardinality(&f) as u64 })
            }
        }
        DecideKind::We => {
            let f = single(kind, input)?;
            match stable_inverse(&f) {
                Some(g) => {
                    let left = factors_through_bijective(&minus_identity(&f.compose(&g)?))
                        .expect("stable inverse");
                    let right = factors_through_bijective(&minus_identity(&g.compose(&f)?))
                        .expect("stable inverse");
                    (
                        true,
                        Certificate::StableInverse {
                            inverse: matrix_json(&g),
                            left: (&left).into(),
                            right: (&right).into(),
                        },
                    )
                }
                None => (false, Certificate::StableReduction { matrix: stable_reduction(&f).matrix }),
            }
        }
        DecideKind::Homotopic => {
            let (f, g, under) = pair(kind, input)?;
            if under {
                match solve_homotopy(&standard_cylinder(f.source()), &f, &g)? {
                    Some(w) => (true, Certificate::Homotopy((&w).into())),
                    None => (false, Certificate::NoStandardHomotopy),
                }
            } else {
                let d = g.map().sub(f.map())?;
                match factors_through_bijective(&d) {
                    Some(w) => (true, Certificate::BijectiveFactorization((&w).into())),
                    None => (false, Certificate::StableReduction { matrix: stable_reduction(&d).matrix }),
                }
            }
        }
        DecideKind::HoEqual => {
            let (f, g, _) = pair(kind, input)?;
            match decide_ho_equal(&f, &g)? {
                HoDecision::Equal(w) => (
                    true,
                    Certificate::HoEquality {
                        replacement: (&w.replacement.replacement).into(),
                        q: matrix_json(w.replacement.q.map()),
                        homotopy: (&w.homotopy).into(),
                    },
                ),
                HoDecision::NotEqual(reason) => (false, Certificate::HoNegative { reason }),
            }
        }
        DecideKind::Distinct => {
            let (f, g, _) = pair(kind, input)?;
            match distinct_in_quotient(&f, &g)? {
                Some(w) => (
                    true,
                    Certificate::QuotientDistinct {
                        subgroup_generators: w.obstruction_subgroup.generators.iter().map(matrix_json).collect(),
                        difference: matrix_json(&w.difference),
                        coordinate: w.coordinate,
                    },
                ),
                None => {
                    let h = solve_homotopy(&standard_cylinder(f.source()), &f, &g)?;
                    (false, Certificate::QuotientNotDistinct { homotopy: h.as_ref().map(Into::into) })
                }
            }
        }
    };
    Ok(Verdict { schema: SCHEMA, kind, input: input.clone(), verdict, certificate })
}

fn reduce_element(m: &FinModule, x: &[i64]) -> Result<Vec<u8>> {
    if x.len() != m.ngens() {
        return Err(Error::Input(format!("element {x:?} has the wrong length for {m}")));
    }
    Ok(m.reduce(x))
}

/// Re-validates a verdict's certificate against its own input.
///
/// Returns `Ok(false)` when the certificate does not support the verdict.
pub fn check_certificate(v: &Verdict) -> Result<bool> {
    if v.schema != SCHEMA {
        return Err(Error::Input(format!("unsupported schema {}", v.schema)));
    }
    let kind = v.kind;
    Ok(match (&v.certificate, v.verdict) {
        (Certificate::ImageSize { size }, verdict) => {
            let f = single(kind, &v.input)?;
            let (image, size) = (count_image(&f), *size as u128);
            match kind {
                DecideKind::Mono if verdict => image == size && size == f.source().cardinality(),
                DecideKind::Epi if !verdict => image == size && size < f.target().cardinality(),
                _ => false,
            }
        }
        (Certificate::KernelElement { element }, false) if kind == DecideKind::Mono => {
            let f = single(kind, &v.input)?;
            let x = reduce_element(f.source(), element)?;
            x.iter().any(|&c| c != 0) && f.apply(&x).iter().all(|&c| c == 0)
        }
        (Certificate::Preimages { preimages }, true) if kind == DecideKind::Epi => {
            let f = single(kind, &v.input)?;
            preimages.len() == f.target().ngens()
                && preimages.iter().enumerate().all(|(j, p)| {
                    reduce_element(f.source(), p).is_ok_and(|x| {
                        f.apply(&x).iter().enumerate().all(|(c, &val)| val == (c == j) as u8)
                    })
                })
        }
        (Certificate::StableInverse { inverse, left, right }, true) if kind == DecideKind::We => {
            let f = single(kind, &v.input)?;
            let g = ModMorphism::new(f.target().clone(), f.source().clone(), inverse)?;
            let l = left.to_witness(f.source(), f.source())?;
            let r = right.to_witness(f.target(), f.target())?;
            l.validate(&minus_identity(&f.compose(&g)?)) && r.validate(&minus_identity(&g.compose(&f)?))
        }
        (Certificate::StableReduction { matrix }, false) if kind == DecideKind::We => {
            let f = single(kind, &v.input)?;
            let red = stable_reduction(&f);
            &red.matrix == matrix && !red.is_invertible()
        }
        (Certificate::StableReduction { matrix }, false) if kind == DecideKind::Homotopic => {
            let (f, g, under) = pair(kind, &v.input)?;
            let red = stable_reduction(&g.map().sub(f.map())?);
            !under && &red.matrix == matrix && red.matrix.iter().flatten().any(|&b| b != 0)
        }
        (Certificate::BijectiveFactorization(w), true) if kind == DecideKind::Homotopic => {
            let (f, g, _) = pair(kind, &v.input)?;
            let d = g.map().sub(f.map())?;
            let w = w.to_witness(d.source(), d.target())?;
            is_bijective_object(&w.through) && w.validate(&d)
        }
        (Certificate::Homotopy(h), true) if kind == DecideKind::Homotopic => {
            let (f, g, _) = pair(kind, &v.input)?;
            h.to_witness(f.source(), f.target())?.validate(&f, &g)
        }
        (Certificate::NoStandardHomotopy, false) if kind == DecideKind::Homotopic => {
            let (f, g, _) = pair(kind, &v.input)?;
            solve_homotopy(&standard_cylinder(f.source()), &f, &g)?.is_none()
        }
        (Certificate::HoEquality { replacement, q, homotopy }, true) if kind == DecideKind::HoEqual => {
            let (f, g, _) = pair(kind, &v.input)?;
            let replacement = UnderObject::try_from(replacement)?;
            let q = UnderMorphism::from_rows(replacement.clone(), f.source().clone(), q)?;
            let homotopy = homotopy.to_witness(&replacement, f.target())?;
            let w = HoEqualityWitness { replacement: CofibrantReplacement { replacement, q }, homotopy };
            is_cofibrant(&w.replacement.replacement) && w.validate(&f, &g)
        }
        (Certificate::HoNegative { reason }, false) if kind == DecideKind::HoEqual => {
            let (f, g, _) = pair(kind, &v.input)?;
            match reason {
                NegativeReason::StableReductionsDiffer => stable_reduction(f.map()) != stable_reduction(g.map()),
                NegativeReason::TrustedCriterion => !decide_ho_equal(&f, &g)?.is_equal(),
            }
        }
        (Certificate::QuotientDistinct { subgroup_generators, difference, coordinate }, true)
            if kind == DecideKind::Distinct =>
        {
            let (f, g, _) = pair(kind, &v.input)?;
            let (s, t) = (f.source().carrier(), f.target().carrier());
            let w = QuotientDistinctnessWitness {
                obstruction_subgroup: crate::homotopy_decider::DifferenceBound {
                    source: s.clone(),
                    target: t.clone(),
                    generators: subgroup_generators
                        .iter()
                        .map(|m| ModMorphism::new(s.clone(), t.clone(), m))
                        .collect::<Result<_>>()?,
                },
                difference: ModMorphism::new(s.clone(), t.clone(), difference)?,
                coordinate: *coordinate,
            };
            w.validate(&f, &g)
        }
        (Certificate::QuotientNotDistinct { homotopy }, false) if kind == DecideKind::Distinct => {
            let (f, g, _) = pair(kind, &v.input)?;
            let bound = homotopy_difference_bound(f.source(), f.target())?;
            let in_bound = bound.contains(&g.map().sub(f.map())?);
            match homotopy {
                Some(h) => in_bound && h.to_witness(f.source(), f.target())?.validate(&f, &g),
                None => in_bound,
            }
        }
        _ => false,
    })
}

fn count_image(f: &ModMorphism) -> u128 {
    let mut seen = std::collections::BTreeSet::new();
    find_element(f.source(), |x| {
        seen.insert(f.apply(x));
        false
    });
    seen.len() as u128
}
