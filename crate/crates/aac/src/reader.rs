//! Crate import and profile verification.
//!
//! Import trusts `canvas.json` as the source of truth; the JSON-LD metadata
//! is a projection and is never reverse-engineered into a canvas.

use std::collections::BTreeSet;
use std::io::{Cursor, Read};

use serde_json::Value;
use zip::ZipArchive;

use crate::model::{parse_canvas, Canvas, ParseError};
use crate::rocrate::{CRATE_FILES, RO_CRATE_PROFILE};
use crate::validator::{Issue, Severity, ValidationReport};

pub const PRF_MISSING_FILE: &str = "PRF-E001";
pub const PRF_BAD_METADATA_JSON: &str = "PRF-E002";
pub const PRF_BAD_DESCRIPTOR: &str = "PRF-E003";
pub const PRF_BAD_ROOT: &str = "PRF-E004";
pub const PRF_DANGLING_REF: &str = "PRF-E005";
pub const PRF_DUPLICATE_ID: &str = "PRF-E006";
pub const PRF_MISSING_ENTITY_TYPE: &str = "PRF-E007";
pub const PRF_UNREADABLE_ARCHIVE: &str = "PRF-E008";

pub const PROFILE_CODES: &[(&str, &str)] = &[
    (PRF_MISSING_FILE, "required crate file is missing"),
    (PRF_BAD_METADATA_JSON, "ro-crate-metadata.json is not well-formed JSON"),
    (PRF_BAD_DESCRIPTOR, "metadata descriptor missing or does not conform to RO-Crate 1.2"),
    (PRF_BAD_ROOT, "root dataset missing or hasPart does not cover the payload files"),
    (PRF_DANGLING_REF, "internal @id reference does not resolve within @graph"),
    (PRF_DUPLICATE_ID, "duplicate entity id in @graph"),
    (PRF_MISSING_ENTITY_TYPE, "required entity type missing from @graph"),
    (PRF_UNREADABLE_ARCHIVE, "archive is not a readable ZIP"),
];

#[derive(Debug, thiserror::Error)]
pub enum ImportError {
    #[error("corrupt archive: {0}")]
    CorruptArchive(#[from] zip::result::ZipError),
    #[error("archive has no canvas.json entry")]
    MissingCanvas,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

const ZIP_MAGIC: &[u8; 4] = b"PK\x03\x04";

/// Import a crate ZIP or bare canvas JSON; ZIP detection by magic bytes.
pub fn extract_canvas(input: &[u8]) -> Result<Canvas, ImportError> {
    if input.starts_with(ZIP_MAGIC) {
        let mut archive = ZipArchive::new(Cursor::new(input))?;
        let mut entry = archive
            .by_name("canvas.json")
            .map_err(|e| match e {
                zip::result::ZipError::FileNotFound => ImportError::MissingCanvas,
                other => ImportError::CorruptArchive(other),
            })?;
        let mut text = String::new();
        entry.read_to_string(&mut text)?;
        Ok(parse_canvas(&text)?)
    } else {
        let text = std::str::from_utf8(input).map_err(|_| {
            ImportError::Parse(ParseError::Syntax {
                line: 0,
                column: 0,
                message: "input is not UTF-8".into(),
            })
        })?;
        Ok(parse_canvas(text)?)
    }
}

fn issue(code: &'static str, path: String, message: String) -> Issue {
    Issue {
        severity: Severity::Error,
        code,
        path,
        message,
    }
}

/// Verify a crate archive against the shipped RO-Crate profile. Findings are
/// issues, never failures.
pub fn verify_profile(input: &[u8]) -> ValidationReport {
    let mut issues = Vec::new();

    let mut archive = match ZipArchive::new(Cursor::new(input)) {
        Ok(a) => a,
        Err(e) => {
            issues.push(issue(PRF_UNREADABLE_ARCHIVE, "/".into(), e.to_string()));
            return ValidationReport::from_issues(issues);
        }
    };

    let names: BTreeSet<String> = archive.file_names().map(|n| n.to_string()).collect();
    for required in CRATE_FILES {
        if !names.contains(required) {
            issues.push(issue(
                PRF_MISSING_FILE,
                format!("/{required}"),
                format!("required file {required} is missing from the archive"),
            ));
        }
    }
    if !names.contains("ro-crate-metadata.json") {
        return ValidationReport::from_issues(issues);
    }

    let mut text = String::new();
    if archive
        .by_name("ro-crate-metadata.json")
        .ok()
        .and_then(|mut f| f.read_to_string(&mut text).ok())
        .is_none()
    {
        issues.push(issue(
            PRF_BAD_METADATA_JSON,
            "/ro-crate-metadata.json".into(),
            "metadata entry is unreadable".into(),
        ));
        return ValidationReport::from_issues(issues);
    }
    let doc: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => {
            issues.push(issue(
                PRF_BAD_METADATA_JSON,
                "/ro-crate-metadata.json".into(),
                e.to_string(),
            ));
            return ValidationReport::from_issues(issues);
        }
    };

    let graph = match doc.get("@graph").and_then(Value::as_array) {
        Some(g) => g,
        None => {
            issues.push(issue(
                PRF_BAD_METADATA_JSON,
                "/ro-crate-metadata.json".into(),
                "metadata has no @graph array".into(),
            ));
            return ValidationReport::from_issues(issues);
        }
    };

    // entity ids, with duplicate detection
    let mut ids = BTreeSet::new();
    for entity in graph {
        if let Some(id) = entity.get("@id").and_then(Value::as_str) {
            if !ids.insert(id.to_string()) {
                issues.push(issue(
                    PRF_DUPLICATE_ID,
                    "/@graph".into(),
                    format!("duplicate entity id {id:?}"),
                ));
            }
        }
    }

    // metadata descriptor
    let descriptor = graph
        .iter()
        .find(|e| e.get("@id").and_then(Value::as_str) == Some("ro-crate-metadata.json"));
    match descriptor {
        None => issues.push(issue(
            PRF_BAD_DESCRIPTOR,
            "/@graph".into(),
            "no metadata descriptor entity (id ro-crate-metadata.json)".into(),
        )),
        Some(d) => {
            let conforms = d
                .get("conformsTo")
                .map(|c| reference_targets(c).any(|t| t == RO_CRATE_PROFILE))
                .unwrap_or(false);
            if !conforms {
                issues.push(issue(
                    PRF_BAD_DESCRIPTOR,
                    "/@graph/ro-crate-metadata.json/conformsTo".into(),
                    format!("descriptor does not declare conformsTo {RO_CRATE_PROFILE}"),
                ));
            }
        }
    }

    // root dataset with hasPart covering the payload files
    let root = graph
        .iter()
        .find(|e| e.get("@id").and_then(Value::as_str) == Some("./"));
    match root {
        None => issues.push(issue(
            PRF_BAD_ROOT,
            "/@graph".into(),
            "no root dataset entity (id ./)".into(),
        )),
        Some(r) => {
            let parts: BTreeSet<String> = r
                .get("hasPart")
                .map(|p| reference_targets(p).map(str::to_string).collect())
                .unwrap_or_default();
            for file in CRATE_FILES {
                if !parts.contains(file) {
                    issues.push(issue(
                        PRF_BAD_ROOT,
                        "/@graph/.~1/hasPart".into(),
                        format!("root hasPart does not cover {file}"),
                    ));
                }
            }
        }
    }

    // referential closure over internal references
    for entity in graph {
        let entity_id = entity.get("@id").and_then(Value::as_str).unwrap_or("?");
        if let Some(obj) = entity.as_object() {
            for (term, value) in obj {
                if term == "@id" {
                    continue;
                }
                for target in reference_targets(value) {
                    let internal = !target.contains("://");
                    if internal && !ids.contains(target) {
                        issues.push(issue(
                            PRF_DANGLING_REF,
                            format!("/@graph/{entity_id}/{term}"),
                            format!("reference {target:?} does not resolve in the graph"),
                        ));
                    }
                }
            }
        }
    }

    // required entity types
    let has_type = |wanted: &str| {
        graph.iter().any(|e| match e.get("@type") {
            Some(Value::String(t)) => t == wanted,
            Some(Value::Array(ts)) => ts.iter().any(|t| t.as_str() == Some(wanted)),
            _ => false,
        })
    };
    if !has_type("ResearchProject") {
        issues.push(issue(
            PRF_MISSING_ENTITY_TYPE,
            "/@graph".into(),
            "no ResearchProject entity".into(),
        ));
    }
    if has_type("p-plan:Step") && !has_type("p-plan:Plan") {
        issues.push(issue(
            PRF_MISSING_ENTITY_TYPE,
            "/@graph".into(),
            "steps present but no p-plan:Plan entity".into(),
        ));
    }

    ValidationReport::from_issues(issues)
}

/// All `{"@id": ...}` targets nested directly in a value (single reference or
/// an array of them).
fn reference_targets(value: &Value) -> impl Iterator<Item = &str> {
    let mut out = Vec::new();
    match value {
        Value::Object(map) => {
            if let Some(Value::String(id)) = map.get("@id") {
                out.push(id.as_str());
            }
        }
        Value::Array(items) => {
            for item in items {
                if let Value::Object(map) = item {
                    if let Some(Value::String(id)) = map.get("@id") {
                        out.push(id.as_str());
                    }
                }
            }
        }
        _ => {}
    }
    out.into_iter()
}
