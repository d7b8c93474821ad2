//! `aac` command-line interface. Exit codes: 0 success, 1 validation or
//! profile errors, 2 I/O, parse, or usage errors. Diagnostics go to stderr;
//! payloads to stdout or --output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use aac::benefits::aggregate_project;
use aac::model::{parse_canvas, serialize_canvas, Canvas};
use aac::policy::generate_policy_card;
use aac::reader::{extract_canvas, verify_profile};
use aac::rocrate::{package_crate, Timestamp, ROCRATE_PROFILE_JSON};
use aac::validator::{validate_with, Severity, ValidateOptions, ValidationReport};
use aac::versioning::{bump, diff, suggest_bump};
use aac::vocab;

#[derive(Parser)]
#[command(name = "aac", version, about = "Agentic Automation Canvas toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SummaryFormat {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Write a minimal valid canvas template
    Init {
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Validate a canvas document and print the report
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        /// Treat warnings as errors
        #[arg(long)]
        strict: bool,
        /// Also verify ORCID check digits (warning-level)
        #[arg(long)]
        check_orcid: bool,
    },
    /// Compute and print the benefit summary
    Benefits {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: SummaryFormat,
    },
    /// Package a canvas as an RO-Crate ZIP
    Export {
        file: PathBuf,
        #[arg(long, short)]
        output: PathBuf,
        /// Fixed entry timestamp (ISO, e.g. 2026-01-01T00:00:00Z);
        /// defaults to 1980-01-01T00:00:00
        #[arg(long)]
        timestamp: Option<String>,
    },
    /// Extract canvas.json from a crate archive
    Import {
        archive: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Verify a crate archive against the RO-Crate profile
    Verify {
        archive: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Diff two canvases
    Diff {
        old: PathBuf,
        new: PathBuf,
        /// Also print the suggested semantic version bump
        #[arg(long)]
        suggest_bump: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Generate a Policy Card from a canvas
    Policy {
        file: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Emit the shipped profile or a vocabulary JSON file
    Schema {
        /// Vocabulary name (trl, duo, governance-stages, risk-levels,
        /// functional-roles, benefit-metrics, access-rights); without it,
        /// the RO-Crate profile is emitted
        #[arg(long)]
        vocab: Option<String>,
    },
}

const TEMPLATE: &str = r#"{
  "schemaVersion": "0.13.1",
  "canvasVersion": "0.1.0",
  "project": {
    "title": "New automation project",
    "description": "Describe the project in one or two sentences.",
    "stage": "planning"
  }
}
"#;

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read_canvas(path: &Path) -> Result<Canvas, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_canvas(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(output: Option<&Path>, payload: &str) -> Result<(), String> {
    match output {
        Some(path) => fs::write(path, payload).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn print_report(report: &ValidationReport, format: ReportFormat) {
    match format {
        ReportFormat::Json => print!("{}", report.to_json()),
        ReportFormat::Text => {
            for issue in &report.issues {
                let sev = match issue.severity {
                    Severity::Error => "error",
                    Severity::Warning => "warning",
                };
                eprintln!("{sev} {} {} — {}", issue.code, issue.path, issue.message);
            }
            println!("{}", if report.valid { "valid" } else { "invalid" });
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Init { output } => {
            emit(output.as_deref(), TEMPLATE)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate {
            file,
            format,
            strict,
            check_orcid,
        } => {
            let canvas = read_canvas(&file)?;
            let opts = ValidateOptions {
                orcid_checksum: check_orcid,
            };
            let report = validate_with(&canvas, opts);
            print_report(&report, format);
            let failed = !report.valid || (strict && !report.issues.is_empty());
            Ok(if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Benefits { file, format } => {
            let canvas = read_canvas(&file)?;
            let summary = aggregate_project(&canvas).map_err(|e| e.to_string())?;
            match format {
                SummaryFormat::Json => print!("{}", summary.to_json()),
                SummaryFormat::Table => print!("{}", summary.to_table()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Export {
            file,
            output,
            timestamp,
        } => {
            let canvas = read_canvas(&file)?;
            let report = validate_with(&canvas, ValidateOptions::default());
            if !report.valid {
                print_report(&report, ReportFormat::Text);
                return Ok(ExitCode::from(1));
            }
            let ts = match timestamp {
                Some(t) => {
                    Some(Timestamp::parse_iso(&t).ok_or_else(|| format!("bad timestamp: {t}"))?)
                }
                None => None,
            };
            let summary = aggregate_project(&canvas).map_err(|e| e.to_string())?;
            let bytes =
                package_crate(&canvas, &summary, ts).map_err(|e| e.to_string())?;
            fs::write(&output, bytes).map_err(|e| format!("{}: {e}", output.display()))?;
            eprintln!("wrote {}", output.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Import { archive, output } => {
            let bytes = fs::read(&archive).map_err(|e| format!("{}: {e}", archive.display()))?;
            let canvas = extract_canvas(&bytes).map_err(|e| e.to_string())?;
            emit(output.as_deref(), &serialize_canvas(&canvas))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { archive, format } => {
            let bytes = fs::read(&archive).map_err(|e| format!("{}: {e}", archive.display()))?;
            let report = verify_profile(&bytes);
            print_report(&report, format);
            Ok(if report.valid {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Diff {
            old,
            new,
            suggest_bump: want_bump,
            format,
        } => {
            let old_canvas = read_canvas(&old)?;
            let new_canvas = read_canvas(&new)?;
            let changes = diff(&old_canvas, &new_canvas);
            match format {
                ReportFormat::Json => print!("{}", changes.to_json()),
                ReportFormat::Text => print!("{}", changes.to_text()),
            }
            if want_bump {
                let level = suggest_bump(&changes);
                match bump(&old_canvas.canvas_version, level) {
                    Ok(next) => println!("suggested bump: {} -> {next} ({})", old_canvas.canvas_version, level.as_str()),
                    Err(_) => println!("suggested bump: {}", level.as_str()),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Policy { file, output } => {
            let canvas = read_canvas(&file)?;
            let report = validate_with(&canvas, ValidateOptions::default());
            if !report.valid {
                print_report(&report, ReportFormat::Text);
                return Ok(ExitCode::from(1));
            }
            let card = generate_policy_card(&canvas).map_err(|e| e.to_string())?;
            emit(output.as_deref(), &card.to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Schema { vocab: name } => {
            match name {
                Some(name) => {
                    let src = vocab::vocab_source(&name).map_err(|e| e.to_string())?;
                    print!("{src}");
                }
                None => print!("{ROCRATE_PROFILE_JSON}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
