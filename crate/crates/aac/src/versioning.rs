//! Canvas diffing with id-keyed list matching, change classification, and
//! semantic version bumps.

use serde::Serialize;
use serde_json::Value;

use crate::model::Canvas;
use crate::validator::parse_semver;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChangeKind {
    Added,
    Removed,
    Modified,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChangeEntry {
    /// JSON pointer; id-keyed list elements use `id=<value>` segments.
    pub path: String,
    pub kind: ChangeKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub before: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub after: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct ChangeSet {
    pub entries: Vec<ChangeEntry>,
}

impl ChangeSet {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("changeset serializes");
        s.push('\n');
        s
    }

    /// Unified-style text report.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            match e.kind {
                ChangeKind::Added => {
                    out.push_str(&format!("+ {}: {}\n", e.path, compact(e.after.as_ref())));
                }
                ChangeKind::Removed => {
                    out.push_str(&format!("- {}: {}\n", e.path, compact(e.before.as_ref())));
                }
                ChangeKind::Modified => {
                    out.push_str(&format!(
                        "~ {}: {} -> {}\n",
                        e.path,
                        compact(e.before.as_ref()),
                        compact(e.after.as_ref())
                    ));
                }
            }
        }
        if out.is_empty() {
            out.push_str("no changes\n");
        }
        out
    }
}

fn compact(v: Option<&Value>) -> String {
    v.map(|v| serde_json::to_string(v).unwrap_or_default())
        .unwrap_or_default()
}

/// Lists whose elements are matched by their `id` field instead of position.
fn id_keyed(path: &str) -> bool {
    matches!(path, "/persons" | "/requirements" | "/dataAccess/datasets")
}

/// Structural diff over the canonical serializations. Reordering an id-keyed
/// list alone yields no entries; id-less lists diff positionally.
pub fn diff(old: &Canvas, new: &Canvas) -> ChangeSet {
    let old_v = serde_json::to_value(old).expect("canvas serializes");
    let new_v = serde_json::to_value(new).expect("canvas serializes");
    let mut entries = Vec::new();
    diff_value(&old_v, &new_v, String::new(), &mut entries);
    entries.sort_by(|a, b| a.path.cmp(&b.path));
    ChangeSet { entries }
}

fn diff_value(old: &Value, new: &Value, path: String, out: &mut Vec<ChangeEntry>) {
    match (old, new) {
        (Value::Object(a), Value::Object(b)) => {
            for (k, va) in a {
                let child = format!("{path}/{}", escape(k));
                match b.get(k) {
                    Some(vb) => diff_value(va, vb, child, out),
                    None => out.push(ChangeEntry {
                        path: child,
                        kind: ChangeKind::Removed,
                        before: Some(va.clone()),
                        after: None,
                    }),
                }
            }
            for (k, vb) in b {
                if !a.contains_key(k) {
                    out.push(ChangeEntry {
                        path: format!("{path}/{}", escape(k)),
                        kind: ChangeKind::Added,
                        before: None,
                        after: Some(vb.clone()),
                    });
                }
            }
        }
        (Value::Array(a), Value::Array(b)) if id_keyed(&path) => {
            let key_of = |v: &Value| -> Option<String> {
                v.get("id").and_then(Value::as_str).map(str::to_string)
            };
            for va in a {
                let Some(id) = key_of(va) else { continue };
                let child = format!("{path}/id={id}");
                match b.iter().find(|vb| key_of(vb).as_deref() == Some(&id)) {
                    Some(vb) => diff_value(va, vb, child, out),
                    None => out.push(ChangeEntry {
                        path: child,
                        kind: ChangeKind::Removed,
                        before: Some(va.clone()),
                        after: None,
                    }),
                }
            }
            for vb in b {
                let Some(id) = key_of(vb) else { continue };
                if !a.iter().any(|va| key_of(va).as_deref() == Some(&id)) {
                    out.push(ChangeEntry {
                        path: format!("{path}/id={id}"),
                        kind: ChangeKind::Added,
                        before: None,
                        after: Some(vb.clone()),
                    });
                }
            }
        }
        (Value::Array(a), Value::Array(b)) => {
            for (i, (va, vb)) in a.iter().zip(b).enumerate() {
                diff_value(va, vb, format!("{path}/{i}"), out);
            }
            for (i, va) in a.iter().enumerate().skip(b.len()) {
                out.push(ChangeEntry {
                    path: format!("{path}/{i}"),
                    kind: ChangeKind::Removed,
                    before: Some(va.clone()),
                    after: None,
                });
            }
            for (i, vb) in b.iter().enumerate().skip(a.len()) {
                out.push(ChangeEntry {
                    path: format!("{path}/{i}"),
                    kind: ChangeKind::Added,
                    before: None,
                    after: Some(vb.clone()),
                });
            }
        }
        (a, b) if a == b => {}
        (a, b) => out.push(ChangeEntry {
            path,
            kind: ChangeKind::Modified,
            before: Some(a.clone()),
            after: Some(b.clone()),
        }),
    }
}

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BumpLevel {
    None,
    Patch,
    Minor,
    Major,
}

impl BumpLevel {
    pub fn as_str(&self) -> &'static str {
        match self {
            BumpLevel::None => "none",
            BumpLevel::Patch => "patch",
            BumpLevel::Minor => "minor",
            BumpLevel::Major => "major",
        }
    }
}

/// Suggested semantic version bump: scope removals and benefit-semantics
/// changes break the user-developer contract (major); additions and value
/// changes extend it (minor); text-only edits are a patch.
pub fn suggest_bump(changes: &ChangeSet) -> BumpLevel {
    changes
        .entries
        .iter()
        .map(classify)
        .max()
        .unwrap_or(BumpLevel::None)
}

fn classify(entry: &ChangeEntry) -> BumpLevel {
    let path = entry.path.as_str();
    let in_benefits = path.contains("/benefits/");
    match entry.kind {
        ChangeKind::Removed => {
            if path.starts_with("/requirements")
                || path.starts_with("/dataAccess/datasets")
                || in_benefits
                || path.ends_with("/benefits")
            {
                BumpLevel::Major
            } else {
                BumpLevel::Minor
            }
        }
        ChangeKind::Modified => {
            if in_benefits
                && (path.ends_with("/direction")
                    || path.ends_with("/type")
                    || path.ends_with("/aggregationBasis"))
            {
                BumpLevel::Major
            } else if (in_benefits
                && (path.contains("/expected") || path.contains("/baseline") || path.contains("/oversight")))
                || path.starts_with("/governance/")
                || path.contains("/risks/")
            {
                BumpLevel::Minor
            } else {
                BumpLevel::Patch
            }
        }
        ChangeKind::Added => BumpLevel::Minor,
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("malformed semantic version: {0}")]
pub struct BadVersion(pub String);

/// Standard semver increment; `none` returns the input unchanged.
pub fn bump(version: &str, level: BumpLevel) -> Result<String, BadVersion> {
    let (major, minor, patch) =
        parse_semver(version).ok_or_else(|| BadVersion(version.to_string()))?;
    Ok(match level {
        BumpLevel::Major => format!("{}.0.0", major + 1),
        BumpLevel::Minor => format!("{major}.{}.0", minor + 1),
        BumpLevel::Patch => format!("{major}.{minor}.{}", patch + 1),
        BumpLevel::None => version.to_string(),
    })
}
