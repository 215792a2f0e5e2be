//! Versioned JSON documents.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{CreaseConfig, Curve, Region, Violation};

pub const CONFIG_SCHEMA: &str = "crease/1";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("invalid configuration: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

impl SchemaError {
    pub fn from_json(e: serde_json::Error) -> Self {
        SchemaError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDoc {
    schema: String,
    curves: Vec<Curve>,
    regions: Vec<Region>,
}

/// Reads the `"schema"` field of any document.
pub fn schema_of(text: &str) -> Result<String, SchemaError> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(SchemaError::from_json)?;
    match v.get("schema") {
        Some(serde_json::Value::String(s)) => Ok(s.clone()),
        Some(_) => Err(SchemaError::Field {
            path: "$.schema".into(),
            message: "expected a string".into(),
        }),
        None => Err(SchemaError::Field {
            path: "$.schema".into(),
            message: "missing".into(),
        }),
    }
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<CreaseConfig, SchemaError> {
    let schema = schema_of(text)?;
    if schema != CONFIG_SCHEMA {
        return Err(SchemaError::Field {
            path: "$.schema".into(),
            message: format!("expected {CONFIG_SCHEMA:?}, found {schema:?}"),
        });
    }
    let doc: ConfigDoc = serde_json::from_str(text).map_err(SchemaError::from_json)?;
    let cfg = CreaseConfig {
        curves: doc.curves,
        regions: doc.regions,
    };
    cfg.validate().map_err(SchemaError::Invalid)?;
    Ok(cfg)
}

pub fn config_to_json(cfg: &CreaseConfig) -> String {
    let doc = ConfigDoc {
        schema: CONFIG_SCHEMA.into(),
        curves: cfg.curves.clone(),
        regions: cfg.regions.clone(),
    };
    serde_json::to_string_pretty(&doc).expect("configuration serializes")
}
