//! Library for the Agentic Automation Canvas toolkit: canvas parsing and
//! validation, benefit quantification, RO-Crate export/import, canvas
//! diffing, and Policy Card generation.

pub mod benefits;
pub mod model;
pub mod validator;
pub mod vocab;

pub use model::{parse_canvas, serialize_canvas, Canvas, ParseError};
pub use validator::{validate, ValidationReport};
pub mod reader;
pub mod rocrate;
pub mod policy;
pub mod versioning;
