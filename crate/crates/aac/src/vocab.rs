//! Controlled vocabularies shipped inside the binary as JSON files.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

/// One controlled-vocabulary term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub code: String,
    pub label: String,
    pub definition: String,
}

/// The seven shipped vocabularies, in a fixed order.
pub const VOCAB_NAMES: [&str; 7] = [
    "trl",
    "duo",
    "governance-stages",
    "risk-levels",
    "functional-roles",
    "benefit-metrics",
    "access-rights",
];

const VOCAB_SOURCES: [(&str, &str); 7] = [
    ("trl", include_str!("../vocab/trl.json")),
    ("duo", include_str!("../vocab/duo.json")),
    (
        "governance-stages",
        include_str!("../vocab/governance-stages.json"),
    ),
    ("risk-levels", include_str!("../vocab/risk-levels.json")),
    (
        "functional-roles",
        include_str!("../vocab/functional-roles.json"),
    ),
    (
        "benefit-metrics",
        include_str!("../vocab/benefit-metrics.json"),
    ),
    ("access-rights", include_str!("../vocab/access-rights.json")),
];

fn tables() -> &'static HashMap<&'static str, Vec<Term>> {
    static TABLES: OnceLock<HashMap<&'static str, Vec<Term>>> = OnceLock::new();
    TABLES.get_or_init(|| {
        VOCAB_SOURCES
            .iter()
            .map(|(name, src)| {
                let terms: Vec<Term> =
                    serde_json::from_str(src).unwrap_or_else(|e| panic!("vocab {name}: {e}"));
                (*name, terms)
            })
            .collect()
    })
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("unknown vocabulary: {0}")]
pub struct UnknownVocabulary(pub String);

/// All terms of one vocabulary.
pub fn vocab_terms(vocab_name: &str) -> Result<&'static [Term], UnknownVocabulary> {
    tables()
        .get(vocab_name)
        .map(|v| v.as_slice())
        .ok_or_else(|| UnknownVocabulary(vocab_name.to_string()))
}

/// Look up a code. A missing code is a `None`, not an error; only an unknown
/// vocabulary name is an error.
pub fn vocab_lookup(
    vocab_name: &str,
    code: &str,
) -> Result<Option<&'static Term>, UnknownVocabulary> {
    Ok(vocab_terms(vocab_name)?.iter().find(|t| t.code == code))
}

/// Raw JSON source of a vocabulary file, as shipped.
pub fn vocab_source(vocab_name: &str) -> Result<&'static str, UnknownVocabulary> {
    VOCAB_SOURCES
        .iter()
        .find(|(name, _)| *name == vocab_name)
        .map(|(_, src)| *src)
        .ok_or_else(|| UnknownVocabulary(vocab_name.to_string()))
}
