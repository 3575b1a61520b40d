//! JSON curve specifications: a base field, a bimodule and optional bounds.

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraDesc, QuaternionVariant};
use crate::curve::Bimodule;
use crate::error::{Error, Result};
use crate::field::{Field, FieldDesc};
use crate::skewpoly::SkewPolyAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub base_field: FieldDesc,
    pub bimodule: BimoduleDesc,
    #[serde(default)]
    pub options: SpecOptions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BimoduleDesc {
    Kronecker,
    Tower {
        #[serde(default = "zero_str")]
        c1: String,
        c0: String,
        #[serde(default = "zero_str")]
        d1: String,
        a0: String,
        #[serde(default = "zero_str")]
        a1: String,
    },
    Quaternion {
        variant: QuaternionVariant,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        a: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        b: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c0: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        a0: Option<String>,
    },
    /// ₖK_K ⊕ ₖK_{K^α} with K = F_{p^degree}, α = Frobenius^frobenius_power.
    Twotwo {
        degree: usize,
        #[serde(default = "one_usize")]
        frobenius_power: usize,
    },
}

fn zero_str() -> String {
    "0".into()
}

fn one_usize() -> usize {
    1
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ladder_depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
}

impl CurveSpec {
    /// Parse, reporting the line and column of the first problem.
    pub fn from_json(text: &str) -> Result<CurveSpec> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn field(&self) -> Result<Field> {
        Field::new(self.base_field.clone())
    }

    pub fn bimodule(&self) -> Result<Bimodule> {
        let k = self.field()?;
        let alg = |desc: AlgebraDesc| -> Result<Bimodule> { Ok(Bimodule::OneFour(Algebra::new(&k, desc.to_spec(&k)?)?)) };
        match &self.bimodule {
            BimoduleDesc::Kronecker => Ok(Bimodule::Kronecker(k.clone())),
            BimoduleDesc::Tower { c1, c0, d1, a0, a1 } => {
                alg(AlgebraDesc::Tower { c1: c1.clone(), c0: c0.clone(), d1: d1.clone(), a0: a0.clone(), a1: a1.clone() })
            }
            BimoduleDesc::Quaternion { variant, a, b, c0, a0 } => {
                alg(AlgebraDesc::Quaternion { variant: *variant, a: a.clone(), b: b.clone(), c0: c0.clone(), a0: a0.clone() })
            }
            BimoduleDesc::Twotwo { degree, frobenius_power } => match &self.base_field {
                FieldDesc::Finite { p, m: 1, .. } => Ok(Bimodule::TwoTwo(SkewPolyAlgebra::new(*p, *degree, *frobenius_power)?)),
                _ => Err(Error::UnsupportedField("the (2,2) bimodule needs a prime base field".into())),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_tower() {
        let spec = CurveSpec::from_json(
            r#"{"base_field": {"kind": "finite", "p": 3},
                "bimodule": {"kind": "tower", "c0": "2", "a0": "1", "a1": "1"},
                "options": {"max_degree": 2}}"#,
        )
        .unwrap();
        assert_eq!(spec.options.max_degree, Some(2));
        assert!(matches!(spec.bimodule().unwrap(), Bimodule::OneFour(_)));
    }

    #[test]
    fn rejects_unknown_keys() {
        let err =
            CurveSpec::from_json(r#"{"base_field": {"kind": "rationals"}, "bimodule": {"kind": "kronecker"}, "colour": 1}"#)
                .unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.contains("line 1") && msg.contains("colour"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn round_trips() {
        let spec =
            CurveSpec::from_json(r#"{"base_field": {"kind": "finite", "p": 3}, "bimodule": {"kind": "twotwo", "degree": 2}}"#)
                .unwrap();
        assert_eq!(CurveSpec::from_json(&spec.to_json()).unwrap(), spec);
        assert!(matches!(spec.bimodule().unwrap(), Bimodule::TwoTwo(_)));
    }
}
