//! Byte-reproducible ZIP packaging of a canvas crate.

use std::io::{Cursor, Write};

use zip::write::SimpleFileOptions;
use zip::{CompressionMethod, DateTime, ZipWriter};

use crate::benefits::BenefitSummary;
use crate::model::{serialize_canvas, Canvas};
use crate::rocrate::{build_entity_graph, render_agents_md, render_preview};
use crate::validator::{validate, ValidationReport};

/// Fixed crate entry order.
pub const CRATE_FILES: [&str; 4] = [
    "ro-crate-metadata.json",
    "ro-crate-preview.html",
    "canvas.json",
    "AGENTS.md",
];

/// Default entry timestamp: the DOS epoch, 1980-01-01T00:00:00. Wall-clock
/// time is never used; callers wanting real time pass one explicitly.
pub const DEFAULT_TIMESTAMP: Timestamp = Timestamp {
    year: 1980,
    month: 1,
    day: 1,
    hour: 0,
    minute: 0,
    second: 0,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Timestamp {
    pub year: u16,
    pub month: u8,
    pub day: u8,
    pub hour: u8,
    pub minute: u8,
    pub second: u8,
}

impl Timestamp {
    /// Parse `YYYY-MM-DDTHH:MM:SS` with an optional trailing `Z`.
    pub fn parse_iso(text: &str) -> Option<Timestamp> {
        let text = text.strip_suffix('Z').unwrap_or(text);
        let (date, time) = text.split_once('T')?;
        let mut d = date.split('-');
        let mut t = time.split(':');
        let ts = Timestamp {
            year: d.next()?.parse().ok()?,
            month: d.next()?.parse().ok()?,
            day: d.next()?.parse().ok()?,
            hour: t.next()?.parse().ok()?,
            minute: t.next()?.parse().ok()?,
            second: t.next()?.parse().ok()?,
        };
        (d.next().is_none() && t.next().is_none()).then_some(ts)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PackageError {
    #[error("canvas has {0} validation error(s); run validate for details")]
    InvalidCanvas(usize),
    #[error("timestamp not representable in a ZIP entry")]
    BadTimestamp,
    #[error("zip write failed: {0}")]
    Zip(#[from] zip::result::ZipError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl PackageError {
    pub fn report(canvas: &Canvas) -> ValidationReport {
        validate(canvas)
    }
}

/// Package a valid canvas into the four-file crate ZIP. Pure function of
/// (canvas, summary, timestamp): entries are stored uncompressed in a fixed
/// order with fixed timestamps, so output is byte-identical across runs.
pub fn package_crate(
    canvas: &Canvas,
    summary: &BenefitSummary,
    timestamp: Option<Timestamp>,
) -> Result<Vec<u8>, PackageError> {
    let report = validate(canvas);
    if !report.valid {
        return Err(PackageError::InvalidCanvas(report.error_count()));
    }

    let ts = timestamp.unwrap_or(DEFAULT_TIMESTAMP);
    let dos_time = DateTime::from_date_and_time(ts.year, ts.month, ts.day, ts.hour, ts.minute, ts.second)
        .map_err(|_| PackageError::BadTimestamp)?;

    let graph = build_entity_graph(canvas);
    let contents: [(&str, String); 4] = [
        (CRATE_FILES[0], graph.to_jsonld()),
        (CRATE_FILES[1], render_preview(canvas, &graph, summary)),
        (CRATE_FILES[2], serialize_canvas(canvas)),
        (CRATE_FILES[3], render_agents_md(canvas)),
    ];

    let mut writer = ZipWriter::new(Cursor::new(Vec::new()));
    let options = SimpleFileOptions::default()
        .compression_method(CompressionMethod::Stored)
        .last_modified_time(dos_time);
    for (name, body) in &contents {
        writer.start_file(*name, options)?;
        writer.write_all(body.as_bytes())?;
    }
    Ok(writer.finish()?.into_inner())
}
