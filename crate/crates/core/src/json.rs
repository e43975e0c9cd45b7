//! Wire formats for modules, morphisms and under-category data.
//!
//! Schema version 1:
//! `FinModule = {"orders": [4, 2]}`,
//! `ModMorphism = {"source", "target", "matrix"}` (one row per source generator),
//! `UnderObject = {"base", "carrier", "struct_map"}`,
//! `UnderMorphism = {"source", "target", "matrix"}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::module_cat::{FinModule, ModMorphism};
use crate::under_cat::{coproduct_under, Cylinder, UnderMorphism, UnderObject};

pub const SCHEMA: u32 = 1;

pub type MatrixJson = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub orders: Vec<i64>,
}

impl From<&FinModule> for ModuleJson {
    fn from(m: &FinModule) -> Self {
        Self { orders: m.orders().iter().map(|&o| o as i64).collect() }
    }
}

impl TryFrom<&ModuleJson> for FinModule {
    type Error = Error;

    fn try_from(j: &ModuleJson) -> Result<Self> {
        let orders = j
            .orders
            .iter()
            .map(|&o| match o {
                2 | 4 => Ok(o as u8),
                _ => Err(Error::InvalidOrder(o)),
            })
            .collect::<Result<Vec<u8>>>()?;
        FinModule::new(orders)
    }
}

pub fn matrix_json(f: &ModMorphism) -> MatrixJson {
    f.rows().iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub source: ModuleJson,
    pub target: ModuleJson,
    pub matrix: MatrixJson,
}

impl From<&ModMorphism> for MorphismJson {
    fn from(f: &ModMorphism) -> Self {
        Self { source: f.source().into(), target: f.target().into(), matrix: matrix_json(f) }
    }
}

impl TryFrom<&MorphismJson> for ModMorphism {
    type Error = Error;

    fn try_from(j: &MorphismJson) -> Result<Self> {
        ModMorphism::new((&j.source).try_into()?, (&j.target).try_into()?, &j.matrix)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnderObjectJson {
    pub base: ModuleJson,
    pub carrier: ModuleJson,
    pub struct_map: MatrixJson,
}

impl From<&UnderObject> for UnderObjectJson {
    fn from(x: &UnderObject) -> Self {
        Self {
            base: x.base().into(),
            carrier: x.carrier().into(),
            struct_map: matrix_json(x.struct_map()),
        }
    }
}

impl TryFrom<&UnderObjectJson> for UnderObject {
    type Error = Error;

    fn try_from(j: &UnderObjectJson) -> Result<Self> {
        UnderObject::from_rows((&j.base).try_into()?, (&j.carrier).try_into()?, &j.struct_map)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnderMorphismJson {
    pub source: UnderObjectJson,
    pub target: UnderObjectJson,
    pub matrix: MatrixJson,
}

impl From<&UnderMorphism> for UnderMorphismJson {
    fn from(m: &UnderMorphism) -> Self {
        Self { source: m.source().into(), target: m.target().into(), matrix: matrix_json(m.map()) }
    }
}

impl TryFrom<&UnderMorphismJson> for UnderMorphism {
    type Error = Error;

    fn try_from(j: &UnderMorphismJson) -> Result<Self> {
        UnderMorphism::from_rows((&j.source).try_into()?, (&j.target).try_into()?, &j.matrix)
    }
}

/// Either kind of morphism; plain module maps live under the zero base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnyMorphismJson {
    Under(UnderMorphismJson),
    Plain(MorphismJson),
}

impl AnyMorphismJson {
    pub fn to_under(&self) -> Result<UnderMorphism> {
        match self {
            AnyMorphismJson::Under(u) => u.try_into(),
            AnyMorphismJson::Plain(p) => {
                let f = ModMorphism::try_from(p)?;
                let (s, t) = (UnderObject::plain(f.source()), UnderObject::plain(f.target()));
                UnderMorphism::new(s, t, f)
            }
        }
    }

    pub fn to_plain(&self) -> Result<ModMorphism> {
        match self {
            AnyMorphismJson::Under(u) => Ok(UnderMorphism::try_from(u)?.map().clone()),
            AnyMorphismJson::Plain(p) => p.try_into(),
        }
    }

    pub fn is_under(&self) -> bool {
        matches!(self, AnyMorphismJson::Under(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CylinderJson {
    pub object: UnderObjectJson,
    /// Carrier map `X ⊔ X → Z`.
    pub ins: MatrixJson,
    pub sigma: MatrixJson,
}

impl From<&Cylinder> for CylinderJson {
    fn from(c: &Cylinder) -> Self {
        Self {
            object: c.object().into(),
            ins: matrix_json(c.ins().map()),
            sigma: matrix_json(c.sigma().map()),
        }
    }
}

/// Rebuilds a cylinder for `x`, recomputing `X ⊔ X` and every condition.
pub fn cylinder_from_json(x: &UnderObject, j: &CylinderJson) -> Result<Cylinder> {
    let coproduct = coproduct_under(x, x)?;
    let object = UnderObject::try_from(&j.object)?;
    let ins = ModMorphism::new(coproduct.object.carrier().clone(), object.carrier().clone(), &j.ins)?;
    let sigma = ModMorphism::new(object.carrier().clone(), x.carrier().clone(), &j.sigma)?;
    let cyl = Cylinder::new(coproduct, ins, sigma)?;
    if cyl.object() != &object {
        return Err(Error::Input(format!(
            "cylinder object {} does not match the one induced by ins, {}",
            object,
            cyl.object()
        )));
    }
    Ok(cyl)
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
}
