//! RO-Crate 1.2 export: JSON-LD entity graph, HTML preview, AGENTS.md, and a
//! byte-reproducible ZIP package.

mod agents;
mod graph;
mod package;
mod preview;

pub use agents::render_agents_md;
pub use graph::{build_entity_graph, duo_iri, Entity, EntityGraph, RO_CRATE_CONTEXT, RO_CRATE_PROFILE};
pub use package::{package_crate, PackageError, Timestamp, CRATE_FILES, DEFAULT_TIMESTAMP};
pub use preview::render_preview;

/// Shipped RO-Crate profile document (`rocrate-profile.json`).
pub const ROCRATE_PROFILE_JSON: &str = include_str!("../../profile/rocrate-profile.json");
