//! Input documents: a TOML schema describing a K-theory datum, either
//! explicitly (weights map) or through builtins and combinators.
//!
//! The same explicit schema is what `describe --format structured` emits,
//! so structured output parses back to an identical datum.

use kuzeta::ku::{self, KTheoryDatum, SkeletalSplitting, WeightCell};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Deserialize)]
pub struct BuiltinDoc {
    pub builtin: String,
    pub n: Option<u32>,
    pub q: Option<u64>,
}

#[derive(Debug, Deserialize)]
pub struct WedgeDoc {
    pub wedge: Vec<toml::Value>,
    pub name: Option<String>,
}

#[derive(Debug, Deserialize)]
pub struct SuspendDoc {
    pub suspend: SuspendSpec,
}

#[derive(Debug, Deserialize)]
pub struct SuspendSpec {
    pub of: toml::Value,
    pub by: i64,
}

#[derive(Debug, Deserialize, Serialize)]
pub struct CellDoc {
    #[serde(default)]
    pub beta_even: u32,
    #[serde(default)]
    pub beta_odd: u32,
    #[serde(default = "one")]
    pub torsion_order: u64,
}

fn one() -> u64 {
    1
}

fn default_excluded() -> Vec<u64> {
    vec![2]
}

#[derive(Debug, Deserialize, Serialize)]
pub struct ExplicitDoc {
    pub name: String,
    #[serde(default = "default_excluded")]
    pub excluded_primes: Vec<u64>,
    pub weights: BTreeMap<String, CellDoc>,
    #[serde(default)]
    pub skeletal_splitting: SplittingDoc,
}

#[derive(Debug, Default, Clone, Copy, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum SplittingDoc {
    Complete,
    #[default]
    Unknown,
}

/// A named problem with the input document; always maps to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn invalid(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

/// Parse a TOML document into a datum. Dispatch on the distinguishing key
/// (builtin / wedge / suspend / weights) for readable error messages.
pub fn datum_from_value(value: &toml::Value) -> Result<KTheoryDatum, InputError> {
    let table = value
        .as_table()
        .ok_or_else(|| invalid("input document must be a table"))?;
    let datum = if table.contains_key("builtin") {
        let doc: BuiltinDoc = value
            .clone()
            .try_into()
            .map_err(|e| invalid(format!("bad builtin document: {e}")))?;
        match doc.builtin.as_str() {
            "sphere" => ku::sphere(),
            "cpn" => {
                let n = doc.n.ok_or_else(|| invalid("builtin cpn needs n"))?;
                ku::cpn(n)
            }
            "moore" => {
                let q = doc.q.ok_or_else(|| invalid("builtin moore needs q"))?;
                ku::moore(q).map_err(|e| invalid(e.to_string()))?
            }
            other => return Err(invalid(format!("unknown builtin \"{other}\""))),
        }
    } else if table.contains_key("wedge") {
        let doc: WedgeDoc = value
            .clone()
            .try_into()
            .map_err(|e| invalid(format!("bad wedge document: {e}")))?;
        let mut parts = doc.wedge.iter().map(datum_from_value);
        let mut acc = parts
            .next()
            .ok_or_else(|| invalid("wedge of no operands"))??;
        for part in parts {
            acc = ku::wedge(&acc, &part?).map_err(|e| invalid(e.to_string()))?;
        }
        if let Some(name) = doc.name {
            acc.name = name;
        }
        acc
    } else if table.contains_key("suspend") {
        let doc: SuspendDoc = value
            .clone()
            .try_into()
            .map_err(|e| invalid(format!("bad suspend document: {e}")))?;
        let inner = datum_from_value(&doc.suspend.of)?;
        ku::suspend(&inner, doc.suspend.by).map_err(|e| invalid(e.to_string()))?
    } else if table.contains_key("weights") {
        let doc: ExplicitDoc = value
            .clone()
            .try_into()
            .map_err(|e| invalid(format!("bad datum document: {e}")))?;
        explicit_to_datum(&doc)?
    } else {
        return Err(invalid(
            "input document needs one of: builtin, wedge, suspend, weights",
        ));
    };
    datum.validate().map_err(|e| invalid(e.to_string()))?;
    Ok(datum)
}

fn explicit_to_datum(doc: &ExplicitDoc) -> Result<KTheoryDatum, InputError> {
    let mut datum = KTheoryDatum::new(doc.name.clone());
    datum.excluded_primes = doc.excluded_primes.iter().copied().collect();
    datum.skeletal_splitting = match doc.skeletal_splitting {
        SplittingDoc::Complete => SkeletalSplitting::Complete,
        SplittingDoc::Unknown => SkeletalSplitting::Unknown,
    };
    for (key, cell) in &doc.weights {
        let weight: i64 = key
            .parse()
            .map_err(|_| invalid(format!("weight key \"{key}\" is not an integer")))?;
        datum.weights.insert(
            weight,
            WeightCell {
                beta_even: cell.beta_even,
                beta_odd: cell.beta_odd,
                torsion_order: cell.torsion_order,
            },
        );
    }
    Ok(datum)
}

/// Load a datum from a file path, or from a builtin shorthand when no such
/// file exists: "sphere", "cpnN", "mooreQ" (e.g. "cpn3", "moore21").
pub fn load_datum(spec: &str) -> Result<KTheoryDatum, InputError> {
    let path = std::path::Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read {spec}: {e}")))?;
        let value: toml::Value = text
            .parse()
            .map_err(|e| invalid(format!("{spec} is not valid TOML: {e}")))?;
        return datum_from_value(&value);
    }
    builtin_shorthand(spec)
        .ok_or_else(|| invalid(format!("no such file or builtin shorthand: {spec}")))?
}

fn builtin_shorthand(spec: &str) -> Option<Result<KTheoryDatum, InputError>> {
    if spec == "sphere" {
        return Some(Ok(ku::sphere()));
    }
    if let Some(n) = spec.strip_prefix("cpn") {
        if let Ok(n) = n.parse::<u32>() {
            return Some(Ok(ku::cpn(n)));
        }
    }
    if let Some(q) = spec.strip_prefix("moore") {
        if let Ok(q) = q.parse::<u64>() {
            return Some(ku::moore(q).map_err(|e| invalid(e.to_string())));
        }
    }
    None
}

/// Render a datum in the explicit input schema (used by structured output;
/// parsing it back yields an identical datum).
pub fn datum_to_explicit_toml(datum: &KTheoryDatum) -> toml::Value {
    let weights: BTreeMap<String, CellDoc> = datum
        .weights
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(w, c)| {
            (
                w.to_string(),
                CellDoc {
                    beta_even: c.beta_even,
                    beta_odd: c.beta_odd,
                    torsion_order: c.torsion_order,
                },
            )
        })
        .collect();
    let doc = ExplicitDoc {
        name: datum.name.clone(),
        excluded_primes: datum.excluded_primes.iter().copied().collect(),
        weights,
        skeletal_splitting: match datum.skeletal_splitting {
            SkeletalSplitting::Complete => SplittingDoc::Complete,
            SkeletalSplitting::Unknown => SplittingDoc::Unknown,
        },
    };
    toml::Value::try_from(doc).expect("explicit document serializes")
}
