//! The `bracelab` command line.
//!
//! Exit codes: 0 success, 1 validation failure or cap, 2 claim failure,
//! 64 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::enumeration;
use crate::error::{Error, Result};
use crate::io::{self, BraceDocument, Mode};
use crate::subset::Subset;
use crate::catalog;
use crate::verify::{self, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CLAIM_FAILURE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "bracelab", version, about = "Finite left braces: validation, structure, census and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a brace document against the axioms.
    Validate { file: PathBuf },
    /// Report centers, series, ideals and flags of a brace.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate all braces of an order up to isomorphism.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the claim suite on the built-in catalog plus an optional corpus.
    Verify {
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Count braces of an order with the brute-force oracle.
    OracleCensus {
        #[arg(long)]
        order: usize,
    },
    /// Print the quotient by an ideal as a brace document.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
    },
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn emit(out: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    out.write_all(bytes).map_err(|e| Error::Io { path: "<stdout>".into(), message: e.to_string() })
}

fn parse_ideal(text: &str, order: usize) -> Result<Subset> {
    let mut elements = vec![];
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let x: usize = part
            .parse()
            .ok()
            .filter(|&x| x < order)
            .ok_or_else(|| Error::Schema { path: "--ideal".into(), message: format!("{part:?} is not an element of the carrier") })?;
        elements.push(x);
    }
    Ok(Subset::from_elements(order, elements))
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Validate { file } => {
            let (_, b) = io::read_brace_document(&file)?;
            emit(out, format!("ok: brace of order {}\n", b.order()).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Analyze { file, json } => {
            let (doc, b) = io::read_brace_document(&file)?;
            let report = io::analyze(&b, doc.name.as_deref())?;
            emit(out, &io::render_report(&report, if json { Mode::Json } else { Mode::Text }))?;
            Ok(EXIT_OK)
        }
        Command::Enumerate { order, out: dir } => {
            let records = enumeration::census(order)?;
            match dir {
                Some(dir) => {
                    io::write_census(&dir, order, &records)?;
                    emit(out, format!("{} classes of order {order} written to {}\n", records.len(), dir.display()).as_bytes())?;
                }
                None => {
                    let mut index = serde_json::to_string_pretty(&io::census_index(order, &records)).expect("index serialises");
                    index.push('\n');
                    emit(out, index.as_bytes())?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify { corpus, report } => {
            let mut entries = catalog::catalog()?;
            if let Some(dir) = corpus {
                entries.extend(io::load_corpus_dir(&dir)?);
            }
            let suite = verify::run_suite(&entries, &SuiteConfig::default())?;
            if let Some(path) = report {
                std::fs::write(&path, io::render_report(&suite, Mode::Json))
                    .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
            }
            emit(out, &io::render_report(&suite, Mode::Text))?;
            if suite.failed() {
                let _ = writeln!(err, "verify: {} claims failed", suite.failed_claims);
                Ok(EXIT_CLAIM_FAILURE)
            } else {
                Ok(EXIT_OK)
            }
        }
        Command::OracleCensus { order } => {
            let classes = enumeration::brute_force_census(order)?;
            emit(out, format!("{}\n", classes.len()).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Quotient { file, ideal } => {
            let (doc, b) = io::read_brace_document(&file)?;
            let i = parse_ideal(&ideal, b.order())?;
            let q = b.quotient(&i)?;
            let name = doc.name.as_ref().map(|n| format!("{n}/{{{}}}", ideal.trim()));
            let provenance = format!("quotient by the ideal {{{}}}", i.elements().iter().map(usize::to_string).collect::<Vec<_>>().join(","));
            let qdoc = BraceDocument::from_brace(&q.brace, name.as_deref(), Some(&provenance));
            emit(out, qdoc.render().as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}
