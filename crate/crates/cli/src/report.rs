//! Report documents and their table, JSON and CSV renderings.
//!
//! Every numeric field is an integer or an exact `num/den` pair; the
//! `*_approx` fields are fixed-precision decimal strings for reading only.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::Config;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format `{s}` (expected table, json or csv)")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input: InputInfo,
    pub config: Config,
    pub result: Payload,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    pub name: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Exact {
    pub num: u128,
    pub den: u128,
}

impl From<fsig_core::Fraction> for Exact {
    fn from(f: fsig_core::Fraction) -> Self {
        Self { num: f.num, den: f.den }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Aq(AqResult),
    Fsig(FsigResult),
    Hk(HkResult),
    Sdim(SdimResult),
    Fpure(FpureResult),
    Sfr(SfrResult),
    OracleAq(OracleResult),
    BigPowers(BigPowersResult),
    Classify(ClassifyResult),
}

#[derive(Debug, Clone, Serialize)]
pub struct TracePoint {
    pub t: u32,
    pub length: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AqRow {
    pub e: u32,
    pub q: u64,
    pub a_q: u64,
    pub t_used: u32,
    pub stabilized: bool,
    pub trace: Vec<TracePoint>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AqResult {
    pub rows: Vec<AqRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FsigRow {
    pub e: u32,
    pub q: u64,
    pub a_q: u64,
    pub s_e: Exact,
    pub s_e_approx: String,
    pub t_used: u32,
    pub stabilized: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FsigResult {
    pub d: usize,
    pub alpha: u32,
    pub rows: Vec<FsigRow>,
    pub sdim: i64,
    pub sdim_note: String,
    pub s_positive_evidence: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HkRow {
    pub e: u32,
    pub q: u64,
    pub length: u64,
    pub ratio: Exact,
    pub ratio_approx: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct HkResult {
    pub d: usize,
    pub rows: Vec<HkRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SdimResult {
    pub d: usize,
    pub sdim: i64,
    pub note: String,
    pub rows: Vec<FsigRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FpureResult {
    pub fpure: bool,
    pub criterion: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SfrResult {
    pub c: String,
    pub outcome: String,
    pub q: Option<u64>,
    pub e_max: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleRow {
    pub e: u32,
    pub q: u64,
    pub a_q: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleResult {
    pub rows: Vec<OracleRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BigPowersResult {
    pub e: u32,
    pub t: u32,
    pub q: u64,
    pub colon_length: u64,
    pub q0: Option<u64>,
    pub implied_bound: Option<u64>,
    pub a_q: u64,
    pub bound_holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyResult {
    pub d: usize,
    pub fpure: bool,
    pub sfr: String,
    pub sfr_q: Option<u64>,
    pub s_positive_evidence: bool,
    pub sdim: Option<i64>,
    pub a_q: Vec<u64>,
    pub verdict: String,
    pub problems: Vec<String>,
}

struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn trace_cell(trace: &[TracePoint]) -> String {
    trace
        .iter()
        .map(|p| format!("{}:{}", p.t, p.length))
        .collect::<Vec<_>>()
        .join(" ")
}

fn fsig_table(rows: &[FsigRow]) -> Table {
    Table {
        headers: vec!["e", "q", "a_q", "s_e_num", "s_e_den", "s_e_approx"],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    r.e.to_string(),
                    r.q.to_string(),
                    r.a_q.to_string(),
                    r.s_e.num.to_string(),
                    r.s_e.den.to_string(),
                    r.s_e_approx.clone(),
                ]
            })
            .collect(),
    }
}

impl Payload {
    fn summary(&self) -> Vec<(&'static str, String)> {
        match self {
            Payload::Aq(_) | Payload::Hk(_) | Payload::OracleAq(_) => Vec::new(),
            Payload::Fsig(r) => vec![
                ("d", r.d.to_string()),
                ("alpha", r.alpha.to_string()),
                ("sdim", r.sdim.to_string()),
                ("sdim_note", r.sdim_note.clone()),
                ("s_positive_evidence", r.s_positive_evidence.to_string()),
            ],
            Payload::Sdim(r) => vec![
                ("d", r.d.to_string()),
                ("sdim", r.sdim.to_string()),
                ("note", r.note.clone()),
            ],
            Payload::Fpure(r) => vec![("fpure", r.fpure.to_string()), ("criterion", r.criterion.clone())],
            Payload::Sfr(r) => vec![
                ("c", r.c.clone()),
                ("outcome", r.outcome.clone()),
                ("q", opt(&r.q)),
                ("e_max", r.e_max.to_string()),
            ],
            Payload::BigPowers(r) => vec![
                ("e", r.e.to_string()),
                ("t", r.t.to_string()),
                ("q", r.q.to_string()),
                ("colon_length", r.colon_length.to_string()),
                ("q0", opt(&r.q0)),
                ("implied_bound", opt(&r.implied_bound)),
                ("a_q", r.a_q.to_string()),
                ("bound_holds", r.bound_holds.to_string()),
            ],
            Payload::Classify(r) => vec![
                ("d", r.d.to_string()),
                ("fpure", r.fpure.to_string()),
                ("sfr", r.sfr.clone()),
                ("sfr_q", opt(&r.sfr_q)),
                ("s_positive_evidence", r.s_positive_evidence.to_string()),
                ("sdim", opt(&r.sdim)),
                (
                    "a_q",
                    r.a_q.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
                ),
                ("verdict", r.verdict.clone()),
                (
                    "problems",
                    if r.problems.is_empty() { "-".into() } else { r.problems.join("; ") },
                ),
            ],
        }
    }

    fn table(&self) -> Option<Table> {
        match self {
            Payload::Aq(r) => Some(Table {
                headers: vec!["e", "q", "a_q", "t_used", "stabilized", "trace"],
                rows: r
                    .rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.e.to_string(),
                            r.q.to_string(),
                            r.a_q.to_string(),
                            r.t_used.to_string(),
                            r.stabilized.to_string(),
                            trace_cell(&r.trace),
                        ]
                    })
                    .collect(),
            }),
            Payload::Fsig(r) => Some(fsig_table(&r.rows)),
            Payload::Sdim(r) => Some(fsig_table(&r.rows)),
            Payload::Hk(r) => Some(Table {
                headers: vec!["e", "q", "length", "ratio_num", "ratio_den", "ratio_approx"],
                rows: r
                    .rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.e.to_string(),
                            r.q.to_string(),
                            r.length.to_string(),
                            r.ratio.num.to_string(),
                            r.ratio.den.to_string(),
                            r.ratio_approx.clone(),
                        ]
                    })
                    .collect(),
            }),
            Payload::OracleAq(r) => Some(Table {
                headers: vec!["e", "q", "a_q"],
                rows: r
                    .rows
                    .iter()
                    .map(|r| vec![r.e.to_string(), r.q.to_string(), r.a_q.to_string()])
                    .collect(),
            }),
            _ => None,
        }
    }
}

fn render_table(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} ({})", report.command, report.input.name, &report.input.sha256[..12]);
    for (k, v) in report.result.summary() {
        let _ = writeln!(out, "{k:<20} {v}");
    }
    if let Some(t) = report.result.table() {
        let widths: Vec<usize> = (0..t.headers.len())
            .map(|i| {
                t.rows
                    .iter()
                    .map(|r| r[i].len())
                    .chain([t.headers[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: Vec<&str>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let _ = writeln!(out, "{}", line(t.headers.clone()));
        for row in &t.rows {
            let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()));
        }
    }
    for d in &report.diagnostics {
        let _ = writeln!(out, "note: {d}");
    }
    out
}

fn render_csv(report: &Report) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    match report.result.table() {
        Some(t) => {
            w.write_record(&t.headers).expect("in-memory write");
            for row in &t.rows {
                w.write_record(row).expect("in-memory write");
            }
        }
        None => {
            w.write_record(["key", "value"]).expect("in-memory write");
            for (k, v) in report.result.summary() {
                w.write_record([k, v.as_str()]).expect("in-memory write");
            }
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Table => render_table(report),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(report),
    }
}
