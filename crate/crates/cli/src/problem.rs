//! Problem files: a triple `(A, B, ε)`, an optional bimodule and run options.

use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use seccyc::structure::{
    validate_algebra, validate_bimodule, validate_triple, Bimodule, Coeff, RawAlgebra, RawBimodule, Triple, ValidationReport,
};
use seccyc::{Field, FieldSpec};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suites: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub field: String,
    #[serde(rename = "A")]
    pub a: RawAlgebra,
    #[serde(rename = "B")]
    pub b: RawAlgebra,
    pub epsilon: Vec<Vec<Coeff>>,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub m: Option<RawBimodule>,
    #[serde(default)]
    pub options: Options,
}

/// The raw bytes of a problem file and its parsed form.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub bytes: Vec<u8>,
    pub problem: ProblemFile,
}

pub fn load(path: &Path) -> Result<Loaded> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let problem = serde_json::from_slice(&bytes).with_context(|| format!("parsing {}", path.display()))?;
    Ok(Loaded { bytes, problem })
}

/// Validated objects over a concrete field.
pub struct Built<K: Field> {
    pub triple: Triple<K>,
    pub module: Option<Bimodule<K>>,
}

/// Validates every object in order; the first invalid one stops the build.
/// Parse errors (malformed coefficients, out-of-range indices) are returned
/// as `Err`, axiom failures as `Ok(Err(reports))`.
pub fn build<K: Field>(k: &K, p: &ProblemFile) -> seccyc::Result<std::result::Result<Built<K>, Vec<ValidationReport>>> {
    let a = validate_algebra(k, &p.a)?;
    let b = validate_algebra(k, &p.b)?;
    let (a, b) = match (a.into_result(), b.into_result()) {
        (Ok(a), Ok(b)) => (a, b),
        (a, b) => return Ok(Err([a.err(), b.err()].into_iter().flatten().collect())),
    };
    let triple = match validate_triple(&a, &b, &p.epsilon)?.into_result() {
        Ok(t) => t,
        Err(r) => return Ok(Err(vec![r])),
    };
    let module = match &p.m {
        None => None,
        Some(raw) => match validate_bimodule(&triple, raw)?.into_result() {
            Ok(m) => Some(m),
            Err(r) => return Ok(Err(vec![r])),
        },
    };
    Ok(Ok(Built { triple, module }))
}

pub fn field_of(p: &ProblemFile, over: Option<&str>) -> seccyc::Result<FieldSpec> {
    over.unwrap_or(&p.field).parse()
}
