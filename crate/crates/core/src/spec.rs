//! JSON presentation of algebras:
//!
//! ```json
//! { "truncation": 8,
//!   "generators": [ { "name": "w1", "degree": 1, "sq": { "1": "w1^2" } } ] }
//! ```
//!
//! Action images use the element grammar of
//! [`PresentedAlgebra::parse_element`]. Missing `sq` entries are zero, except
//! the top square, which defaults to the generator squared.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{parse_with, AlgebraBuilder, AlgebraError, PresentedAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{location}: {message}")]
    Schema { location: String, message: String },
    #[error("{location}: {source}")]
    Algebra {
        location: String,
        #[source]
        source: AlgebraError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: u32,
    #[serde(default)]
    pub sq: BTreeMap<u32, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub truncation: u32,
    pub generators: Vec<GeneratorEntry>,
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Exports every stored (nonzero) action entry.
    pub fn from_algebra(alg: &PresentedAlgebra) -> Self {
        AlgebraSpec {
            truncation: alg.truncation(),
            generators: alg
                .generators()
                .iter()
                .map(|g| GeneratorEntry {
                    name: g.name.clone(),
                    degree: g.degree,
                    sq: g
                        .sq
                        .iter()
                        .map(|(&a, x)| (a, alg.format_element(x)))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_algebra(&self) -> Result<PresentedAlgebra, SpecError> {
        let mut builder = AlgebraBuilder::new(self.truncation);
        let mut names = BTreeMap::new();
        for (n, g) in self.generators.iter().enumerate() {
            let location = format!("generators[{n}]");
            if g.name.trim().is_empty()
                || g.name.contains(['+', '*', '^'])
                || g.name.contains(char::is_whitespace)
            {
                return Err(SpecError::Schema {
                    location,
                    message: format!("invalid generator name {:?}", g.name),
                });
            }
            if g.name == "0" || g.name == "1" {
                return Err(SpecError::Schema {
                    location,
                    message: "generator names 0 and 1 are reserved".into(),
                });
            }
            if g.degree == 0 {
                return Err(SpecError::Schema {
                    location,
                    message: "degree must be positive".into(),
                });
            }
            if names.insert(g.name.clone(), n).is_some() {
                return Err(SpecError::Schema {
                    location,
                    message: format!("duplicate generator name {:?}", g.name),
                });
            }
            builder.generator(g.name.clone(), g.degree);
        }
        for (n, g) in self.generators.iter().enumerate() {
            for (&a, expr) in &g.sq {
                let location = format!("generators[{n}].sq[\"{a}\"]");
                let image = parse_with(expr, |name| names.get(name).copied())
                    .map_err(|source| SpecError::Algebra { location, source })?;
                builder.set_sq(n, a, image);
            }
        }
        builder.build().map_err(|source| {
            let location = match &source {
                AlgebraError::BadAction { name, a, .. } => {
                    format!("generators[{}].sq[\"{a}\"]", names[name])
                }
                AlgebraError::Instability { name, degree } => {
                    format!("generators[{}].sq[\"{degree}\"]", names[name])
                }
                _ => "generators".to_string(),
            };
            SpecError::Algebra { location, source }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{bo_algebra, em_algebra};

    #[test]
    fn loads_polynomial_on_one_class() {
        let text = r#"{ "truncation": 6, "generators": [ { "name": "x", "degree": 1, "sq": { "1": "x^2" } } ] }"#;
        let alg = AlgebraSpec::from_json(text).unwrap().to_algebra().unwrap();
        assert_eq!(alg.generators().len(), 1);
    }

    #[test]
    fn rejects_instability_violation() {
        let text = r#"{ "truncation": 6, "generators": [
            { "name": "x", "degree": 1 }, { "name": "y", "degree": 2 },
            { "name": "z", "degree": 1, "sq": { "1": "y" } } ] }"#;
        let err = AlgebraSpec::from_json(text)
            .unwrap()
            .to_algebra()
            .unwrap_err();
        assert!(
            matches!(
                &err,
                SpecError::Algebra { source: AlgebraError::Instability { .. }, location } if location == "generators[2].sq[\"1\"]"
            ),
            "{err}"
        );
    }

    #[test]
    fn rejects_inhomogeneous_and_unknown() {
        let text = r#"{ "truncation": 6, "generators": [ { "name": "x", "degree": 2, "sq": { "1": "x" } } ] }"#;
        assert!(AlgebraSpec::from_json(text).unwrap().to_algebra().is_err());
        let text = r#"{ "truncation": 6, "generators": [ { "name": "x", "degree": 2, "sq": { "1": "q" } } ] }"#;
        let err = AlgebraSpec::from_json(text)
            .unwrap()
            .to_algebra()
            .unwrap_err();
        assert!(err.to_string().contains("generators[0].sq[\"1\"]"));
        assert!(AlgebraSpec::from_json("{ \"truncation\": 3 }").is_err());
        assert!(
            AlgebraSpec::from_json("{ \"truncation\": 3, \"generators\": [], \"x\": 1 }").is_err()
        );
    }

    #[test]
    fn exported_models_reload_identically() {
        for alg in [
            em_algebra(2, 8).unwrap(),
            em_algebra(3, 12).unwrap(),
            bo_algebra(4, 10).unwrap(),
        ] {
            let spec = AlgebraSpec::from_algebra(&alg);
            let reloaded = AlgebraSpec::from_json(&spec.to_json())
                .unwrap()
                .to_algebra()
                .unwrap();
            assert_eq!(reloaded, alg);
        }
    }
}
