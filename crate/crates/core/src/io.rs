//! JSON interchange: brace documents, analysis reports, census directories
//! and the rendering of reports.
//!
//! A brace document looks like
//!
//! ```json
//! {
//!   "format": "brace-v1",
//!   "order": 2,
//!   "add": [
//!     [0, 1],
//!     [1, 0]
//!   ],
//!   "mul": [
//!     [0, 1],
//!     [1, 0]
//!   ]
//! }
//! ```
//!
//! with optional string fields `name` and `provenance`. Matrices are
//! row-major and entries lie in `0..order`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::brace::{validate_brace, Brace};
use crate::enumeration::{self, CensusRecord};
use crate::error::{Error, Result};
use crate::ideals;
use crate::limits::Limits;
use crate::series::{self, NilpotencyFlags, SeriesKind};
use crate::subset::Subset;
use crate::verify::{CorpusEntry, Status, SuiteReport};

pub const BRACE_FORMAT: &str = "brace-v1";
pub const ANALYZE_FORMAT: &str = "analyze-v1";
pub const INDEX_FORMAT: &str = "census-index-v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceDocument {
    pub format: String,
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl BraceDocument {
    pub fn from_brace(b: &Brace, name: Option<&str>, provenance: Option<&str>) -> Self {
        BraceDocument {
            format: BRACE_FORMAT.into(),
            order: b.order(),
            add: b.add_rows(),
            mul: b.mul_rows(),
            name: name.map(str::to_string),
            provenance: provenance.map(str::to_string),
        }
    }

    /// Deterministic rendering with one matrix row per line.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let quote = |v: &str| serde_json::to_string(v).expect("strings serialise");
        let matrix = |s: &mut String, key: &str, m: &[Vec<usize>], last: bool| {
            let _ = writeln!(s, "  \"{key}\": [");
            for (i, row) in m.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(usize::to_string).collect();
                let comma = if i + 1 < m.len() { "," } else { "" };
                let _ = writeln!(s, "    [{}]{comma}", cells.join(", "));
            }
            let _ = writeln!(s, "  ]{}", if last { "" } else { "," });
        };
        s.push_str("{\n");
        let _ = writeln!(s, "  \"format\": {},", quote(&self.format));
        let _ = writeln!(s, "  \"order\": {},", self.order);
        let tail = self.name.is_none() && self.provenance.is_none();
        matrix(&mut s, "add", &self.add, false);
        matrix(&mut s, "mul", &self.mul, tail);
        if let Some(n) = &self.name {
            let comma = if self.provenance.is_some() { "," } else { "" };
            let _ = writeln!(s, "  \"name\": {}{comma}", quote(n));
        }
        if let Some(p) = &self.provenance {
            let _ = writeln!(s, "  \"provenance\": {}", quote(p));
        }
        s.push_str("}\n");
        s
    }

    /// Validates the tables.
    pub fn to_brace(&self) -> Result<Brace> {
        validate_brace(&self.add, &self.mul)
    }
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema { path: path.into(), message: message.into() }
}

fn matrix_at(obj: &serde_json::Map<String, Value>, key: &str, order: usize) -> Result<Vec<Vec<usize>>> {
    let path = format!("/{key}");
    let rows = obj.get(key).ok_or_else(|| schema(&path, "missing field"))?;
    let rows = rows.as_array().ok_or_else(|| schema(&path, "expected an array of rows"))?;
    if rows.len() != order {
        return Err(schema(&path, format!("expected {order} rows, found {}", rows.len())));
    }
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let rp = format!("{path}/{i}");
            let row = row.as_array().ok_or_else(|| schema(&rp, "expected an array of integers"))?;
            if row.len() != order {
                return Err(schema(&rp, format!("expected {order} entries, found {}", row.len())));
            }
            row.iter()
                .enumerate()
                .map(|(j, v)| {
                    v.as_u64()
                        .map(|x| x as usize)
                        .filter(|&x| x < order)
                        .ok_or_else(|| schema(format!("{rp}/{j}"), format!("expected an integer in [0, {order})")))
                })
                .collect()
        })
        .collect()
}

/// Parses and schema-checks a document without validating the axioms.
pub fn parse_document_schema(bytes: &[u8]) -> Result<BraceDocument> {
    let value: Value = serde_json::from_slice(bytes)
        .map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    let obj = value.as_object().ok_or_else(|| schema("", "expected an object"))?;
    for key in obj.keys() {
        if !["format", "order", "add", "mul", "name", "provenance"].contains(&key.as_str()) {
            return Err(schema(format!("/{key}"), "unknown field"));
        }
    }
    match obj.get("format") {
        Some(Value::String(s)) if s == BRACE_FORMAT => {}
        Some(_) => return Err(schema("/format", format!("expected \"{BRACE_FORMAT}\""))),
        None => return Err(schema("/format", "missing field")),
    }
    let order = obj
        .get("order")
        .ok_or_else(|| schema("/order", "missing field"))?
        .as_u64()
        .filter(|&n| n > 0)
        .ok_or_else(|| schema("/order", "expected a positive integer"))? as usize;
    let max = Limits::current().max_order;
    if order > max {
        return Err(Error::OrderTooLarge { order, max });
    }
    let text = |key: &str| -> Result<Option<String>> {
        match obj.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(_) => Err(schema(format!("/{key}"), "expected a string")),
        }
    };
    Ok(BraceDocument {
        format: BRACE_FORMAT.into(),
        order,
        add: matrix_at(obj, "add", order)?,
        mul: matrix_at(obj, "mul", order)?,
        name: text("name")?,
        provenance: text("provenance")?,
    })
}

/// Parses a document and validates the brace axioms.
pub fn parse_brace_document(bytes: &[u8]) -> Result<(BraceDocument, Brace)> {
    let doc = parse_document_schema(bytes)?;
    let brace = doc.to_brace()?;
    Ok((doc, brace))
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

fn write(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn read_brace_document(path: &Path) -> Result<(BraceDocument, Brace)> {
    parse_brace_document(&read(path)?)
}

/// Every brace document in a directory, by file name. Files whose `format`
/// is not `brace-v1` (such as a census index) are skipped. Tables are only
/// shape-checked, so a corrupted brace enters the corpus and fails the
/// axiom claim there.
pub fn load_corpus_dir(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let listing = fs::read_dir(dir).map_err(|e| Error::Io { path: dir.display().to_string(), message: e.to_string() })?;
    let mut files: Vec<PathBuf> = listing
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut out = vec![];
    for path in files {
        let bytes = read(&path)?;
        let is_brace = serde_json::from_slice::<Value>(&bytes)
            .ok()
            .and_then(|v| v.get("format").and_then(Value::as_str).map(|f| f == BRACE_FORMAT));
        if is_brace == Some(false) {
            continue;
        }
        let doc = parse_document_schema(&bytes)?;
        let brace = Brace::from_tables_unchecked(&doc.add, &doc.mul)?;
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        out.push(CorpusEntry { name: doc.name.clone().unwrap_or(stem), brace });
    }
    Ok(out)
}

/// Subsets as ascending element arrays.
fn list(s: &Subset) -> Vec<usize> {
    s.elements()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceSummary {
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub additive_type: Vec<usize>,
    pub multiplicative_order_profile: Vec<usize>,
    pub abelian: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesChains {
    pub upper_star_central: Vec<Vec<usize>>,
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
    pub strong: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub t_brace: bool,
    pub dedekind: bool,
    pub left_nilpotent: bool,
    pub right_nilpotent: bool,
    pub strongly_nilpotent: bool,
    pub star_nilpotent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classes {
    pub left: Option<usize>,
    pub right: Option<usize>,
    pub strong: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool_version: String,
    pub duration_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub format: String,
    pub brace: BraceSummary,
    pub star_center: Vec<usize>,
    pub zl: Option<usize>,
    /// The additive span of all `a⋆b`.
    pub star_square: Vec<usize>,
    pub series: SeriesChains,
    pub ideals: Vec<Vec<usize>>,
    pub flags: Flags,
    pub classes: Classes,
    pub metadata: Metadata,
}

impl AnalyzeReport {
    /// The report with metadata cleared, for comparisons.
    pub fn without_metadata(&self) -> AnalyzeReport {
        AnalyzeReport { metadata: Metadata { tool_version: String::new(), duration_ms: 0.0 }, ..self.clone() }
    }
}

pub fn analyze(b: &Brace, name: Option<&str>) -> Result<AnalyzeReport> {
    let started = Instant::now();
    let chain = |k: SeriesKind| -> Vec<Vec<usize>> {
        let r = match k {
            SeriesKind::UpperStarCentral => series::upper_star_central_series(b),
            k => series::descending_series(b, k),
        };
        r.chain.iter().map(list).collect()
    };
    let flags: NilpotencyFlags = series::nilpotency_report(b);
    let whole = b.whole();
    Ok(AnalyzeReport {
        format: ANALYZE_FORMAT.into(),
        brace: BraceSummary {
            order: b.order(),
            name: name.map(str::to_string),
            additive_type: enumeration::additive_type(b.additive()),
            multiplicative_order_profile: b.multiplicative().order_profile(),
            abelian: flags.abelian,
        },
        star_center: list(&series::star_center(b)),
        zl: flags.star_nilpotent.class,
        star_square: list(&b.star_span(&whole, &whole)),
        series: SeriesChains {
            upper_star_central: chain(SeriesKind::UpperStarCentral),
            left: chain(SeriesKind::Left),
            right: chain(SeriesKind::Right),
            strong: chain(SeriesKind::Strong),
        },
        ideals: ideals::ideals(b, false)?.iter().map(list).collect(),
        flags: Flags {
            t_brace: ideals::is_t_brace(b)?.holds(),
            dedekind: ideals::is_dedekind(b)?.holds(),
            left_nilpotent: flags.left_nilpotent.nilpotent,
            right_nilpotent: flags.right_nilpotent.nilpotent,
            strongly_nilpotent: flags.strongly_nilpotent.nilpotent,
            star_nilpotent: flags.star_nilpotent.nilpotent,
        },
        classes: Classes {
            left: flags.left_nilpotent.class,
            right: flags.right_nilpotent.class,
            strong: flags.strongly_nilpotent.class,
        },
        metadata: Metadata { tool_version: env!("CARGO_PKG_VERSION").into(), duration_ms: started.elapsed().as_secs_f64() * 1e3 },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Text,
    Json,
}

/// Reports with a human-readable form next to their JSON.
pub trait Report: Serialize {
    fn render_text(&self) -> String;
}

/// Deterministic rendering; the JSON form parses back to the same value.
pub fn render_report<R: Report>(report: &R, mode: Mode) -> Vec<u8> {
    match mode {
        Mode::Text => report.render_text().into_bytes(),
        Mode::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialise");
            s.push('\n');
            s.into_bytes()
        }
    }
}

fn set_text(s: &[usize]) -> String {
    let items: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn chain_text(c: &[Vec<usize>]) -> String {
    c.iter().map(|s| set_text(s)).collect::<Vec<_>>().join(" > ")
}

fn opt(v: Option<usize>) -> String {
    v.map_or("none".into(), |x| x.to_string())
}

impl Report for AnalyzeReport {
    fn render_text(&self) -> String {
        let mut s = String::new();
        let b = &self.brace;
        if let Some(n) = &b.name {
            let _ = writeln!(s, "brace: {n}");
        }
        let _ = writeln!(s, "order: {}", b.order);
        let _ = writeln!(s, "additive type: {:?}", b.additive_type);
        let _ = writeln!(s, "multiplicative element orders: {:?}", b.multiplicative_order_profile);
        let _ = writeln!(s, "abelian: {}", b.abelian);
        let _ = writeln!(s, "star center: {}", set_text(&self.star_center));
        let _ = writeln!(s, "zl: {}", opt(self.zl));
        let _ = writeln!(s, "A*A: {}", set_text(&self.star_square));
        let upper: Vec<Vec<usize>> = self.series.upper_star_central.clone();
        let _ = writeln!(s, "upper star-central series: {}", upper.iter().map(|x| set_text(x)).collect::<Vec<_>>().join(" < "));
        let _ = writeln!(s, "left series: {}", chain_text(&self.series.left));
        let _ = writeln!(s, "right series: {}", chain_text(&self.series.right));
        let _ = writeln!(s, "strong series: {}", chain_text(&self.series.strong));
        let _ = writeln!(s, "ideals ({}): {}", self.ideals.len(), self.ideals.iter().map(|x| set_text(x)).collect::<Vec<_>>().join(" "));
        let f = &self.flags;
        let _ = writeln!(s, "T-brace: {}", f.t_brace);
        let _ = writeln!(s, "Dedekind: {}", f.dedekind);
        let _ = writeln!(
            s,
            "nilpotent: left {} (class {}), right {} (class {}), strong {} (class {}), star {}",
            f.left_nilpotent,
            opt(self.classes.left),
            f.right_nilpotent,
            opt(self.classes.right),
            f.strongly_nilpotent,
            opt(self.classes.strong),
            f.star_nilpotent
        );
        s
    }
}

impl Report for SuiteReport {
    fn render_text(&self) -> String {
        let mut s = String::new();
        let banner = if self.failed() { "FAIL" } else { "PASS" };
        let _ = writeln!(s, "verify: {banner}");
        let _ = writeln!(s, "corpus: {} braces", self.corpus.len());
        let _ = writeln!(
            s,
            "claims: {} passed, {} failed, {} vacuous",
            self.passed_claims, self.failed_claims, self.vacuous_claims
        );
        for c in &self.claims {
            let st = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Vacuous => "vacuous",
            };
            let _ = writeln!(
                s,
                "  {st:<8} {:<30} pass {:>3}  fail {:>3}  vacuous {:>3}  instances {}",
                c.claim_id, c.passed, c.failed, c.vacuous, c.instances
            );
        }
        if !self.failures.is_empty() {
            let _ = writeln!(s, "!! {} failing checks", self.failures.len());
            for f in &self.failures {
                let sets = if f.witness.sets.is_empty() { String::new() } else { format!(" sets {:?}", f.witness.sets) };
                let note = if f.witness.note.is_empty() { String::new() } else { format!(" ({})", f.witness.note) };
                let _ = writeln!(
                    s,
                    "  {} on {}: witness {:?}{sets}{note}{}",
                    f.claim_id,
                    f.brace,
                    f.witness.elements,
                    if f.revalidated { ", revalidated" } else { ", NOT revalidated" }
                );
            }
        }
        let _ = writeln!(s, "out of scope: {} statements", self.out_of_scope.len());
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEntry {
    pub file: String,
    pub additive_type: Vec<usize>,
    pub multiplicative_order_profile: Vec<usize>,
    pub zl: Option<usize>,
    pub star_nilpotent: bool,
    pub t_brace: bool,
    pub dedekind: bool,
    pub ideal_count: usize,
    pub star_center_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusIndex {
    pub format: String,
    pub order: usize,
    pub class_count: usize,
    pub classes: Vec<IndexEntry>,
}

fn class_file(n: usize, i: usize) -> String {
    format!("order{n}-class{:03}.json", i + 1)
}

pub fn census_index(n: usize, records: &[CensusRecord]) -> CensusIndex {
    CensusIndex {
        format: INDEX_FORMAT.into(),
        order: n,
        class_count: records.len(),
        classes: records
            .iter()
            .enumerate()
            .map(|(i, r)| IndexEntry {
                file: class_file(n, i),
                additive_type: r.additive_type.clone(),
                multiplicative_order_profile: r.multiplicative_order_profile.clone(),
                zl: r.invariants.zl,
                star_nilpotent: r.invariants.nilpotency.star_nilpotent.nilpotent,
                t_brace: r.invariants.t_brace,
                dedekind: r.invariants.dedekind,
                ideal_count: r.invariants.ideal_count,
                star_center_size: r.invariants.star_center_size,
            })
            .collect(),
    }
}

pub fn class_document(n: usize, i: usize, r: &CensusRecord) -> BraceDocument {
    BraceDocument::from_brace(
        &r.representative,
        Some(&format!("order{n}-class{:03}", i + 1)),
        Some(&format!("census of order {n}, additive type {:?}", r.additive_type)),
    )
}

/// Writes `index.json` and one document per class into `dir`.
pub fn write_census(dir: &Path, n: usize, records: &[CensusRecord]) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Io { path: dir.display().to_string(), message: e.to_string() })?;
    for (i, r) in records.iter().enumerate() {
        write(&dir.join(class_file(n, i)), class_document(n, i, r).render().as_bytes())?;
    }
    let mut index = serde_json::to_string_pretty(&census_index(n, records)).expect("index serialises");
    index.push('\n');
    write(&dir.join("index.json"), index.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::b4;

    const B4: &str = r#"{"format": "brace-v1", "order": 4,
        "add": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]],
        "mul": [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]}"#;

    #[test]
    fn parses_b4() {
        let (doc, b) = parse_brace_document(B4.as_bytes()).unwrap();
        assert_eq!(b, b4());
        assert_eq!(doc.name, None);
    }

    #[test]
    fn render_round_trips() {
        let doc = BraceDocument::from_brace(&b4(), Some("b4 \"quoted\""), Some("x"));
        let (back, _) = parse_brace_document(doc.render().as_bytes()).unwrap();
        assert_eq!(back, doc);
        let bare = BraceDocument::from_brace(&b4(), None, None);
        assert_eq!(parse_brace_document(bare.render().as_bytes()).unwrap().0, bare);
        assert!(bare.render().contains("    [0, 1, 2, 3],\n"));
        // serde agrees with the hand renderer
        assert_eq!(serde_json::from_str::<BraceDocument>(&doc.render()).unwrap(), doc);
    }

    #[test]
    fn schema_errors_carry_paths() {
        let bad = r#"{"format": "brace-v1", "order": 4, "add": [[0,1,2],[1,2,0],[2,0,1]], "mul": []}"#;
        match parse_brace_document(bad.as_bytes()).unwrap_err() {
            Error::Schema { path, .. } => assert_eq!(path, "/add"),
            e => panic!("{e}"),
        }
        let cases = [
            (r#"{"format": "brace-v2", "order": 1, "add": [[0]], "mul": [[0]]}"#, "/format"),
            (r#"{"format": "brace-v1", "order": 0, "add": [], "mul": []}"#, "/order"),
            (r#"{"format": "brace-v1", "order": 2, "add": [[0,1],[1,2]], "mul": [[0,1],[1,0]]}"#, "/add/1/1"),
            (r#"{"format": "brace-v1", "order": 2, "add": [[0,1],[1,0]], "mul": [[0,1],[1]]}"#, "/mul/1"),
            (r#"{"format": "brace-v1", "order": 1, "add": [[0]], "mul": [[0]], "extra": 1}"#, "/extra"),
            (r#"{"format": "brace-v1", "order": 1, "add": [[0]], "mul": [[0]], "name": 3}"#, "/name"),
            (r#"[1]"#, ""),
        ];
        for (text, want) in cases {
            match parse_brace_document(text.as_bytes()).unwrap_err() {
                Error::Schema { path, .. } => assert_eq!(path, want, "{text}"),
                e => panic!("{text}: {e}"),
            }
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_brace_document(b"{\n  \"format\": ,").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 13)),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn axiom_failures_are_forwarded() {
        let bad = r#"{"format": "brace-v1", "order": 2, "add": [[0,1],[1,0]], "mul": [[0,1],[1,1]]}"#;
        assert_eq!(parse_brace_document(bad.as_bytes()).unwrap_err().code(), "LB2");
    }

    #[test]
    fn trivial_z2() {
        let t = r#"{"format": "brace-v1", "order": 2, "add": [[0,1],[1,0]], "mul": [[0,1],[1,0]], "name": "z2"}"#;
        assert!(parse_brace_document(t.as_bytes()).unwrap().1.is_trivial());
    }

    #[test]
    fn b4_analysis() {
        let r = analyze(&b4(), None).unwrap();
        assert_eq!(r.star_center, vec![0, 2]);
        assert_eq!(r.zl, Some(2));
        assert_eq!(r.ideals, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        assert_eq!(r.star_square, vec![0, 2]);
        assert_eq!((r.classes.left, r.classes.right), (Some(3), Some(3)));
        assert!(r.flags.t_brace && r.flags.dedekind && r.flags.star_nilpotent && r.flags.strongly_nilpotent);
        let json = render_report(&r, Mode::Json);
        let back: AnalyzeReport = serde_json::from_slice(&json).unwrap();
        assert_eq!(back, r);
        let text = String::from_utf8(render_report(&r, Mode::Text)).unwrap();
        assert!(text.contains("star center: {0, 2}"));
    }
}
