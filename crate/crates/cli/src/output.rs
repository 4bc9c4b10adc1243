use std::fmt::Write as _;

use permpenta::field::ExtFieldCtx;
use permpenta::pentanomial::SparsePoly;
use permpenta::verify::{PermutationReport, SweepRecord};
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "permpenta-report-v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Falsified,
    Capped,
}

/// One command's result in every output format.
pub struct Output {
    pub status: Status,
    pub json: Value,
    pub human: String,
    pub csv: Option<String>,
}

impl Output {
    /// Wraps `body` in the versioned envelope. Going through `Value` sorts
    /// the keys, so parsing and re-serializing the text is byte-identical.
    pub fn new<T: Serialize>(command: &str, status: Status, body: &T, human: String) -> Self {
        let mut json = serde_json::to_value(body).expect("report types serialize");
        let map = json.as_object_mut().expect("report bodies are objects");
        map.insert("schema".into(), SCHEMA.into());
        map.insert("command".into(), command.into());
        Self {
            status,
            json,
            human,
            csv: None,
        }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn json_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
        s.push('\n');
        s
    }
}

/// `[exponent, coefficient]` pairs, highest exponent first. Exponents are
/// decimal strings since they may exceed 64 bits.
pub type PolyJson = Vec<(String, u64)>;

pub fn poly_json(poly: &SparsePoly) -> PolyJson {
    poly.terms()
        .rev()
        .map(|(e, c)| (e.to_string(), c.encoding()))
        .collect()
}

/// `X^6 - X^4 + 3 X + 1` style rendering. Coefficients outside F_p print as
/// their base-p encoding in brackets.
pub fn poly_text(ctx: &ExtFieldCtx, poly: &SparsePoly) -> String {
    let p = ctx.p();
    let mut out = String::new();
    for (i, (e, c)) in poly.terms().rev().enumerate() {
        let enc = c.encoding();
        let (negative, coeff) = match enc {
            _ if enc >= p => (false, format!("[{enc}]")),
            1 => (false, String::new()),
            _ if p > 2 && enc == p - 1 => (true, String::new()),
            _ => (false, enc.to_string()),
        };
        let sep = match (i, negative) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let mono = match e {
            0 => String::new(),
            1 => "X".into(),
            _ => format!("X^{e}"),
        };
        let term = match (coeff.is_empty(), mono.is_empty()) {
            (true, true) => "1".into(),
            (true, false) => mono,
            (false, true) => coeff,
            (false, false) => format!("{coeff} {mono}"),
        };
        let _ = write!(out, "{sep}{term}");
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn yes_no(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "skipped",
    }
}

/// The fixed sweep CSV schema.
#[derive(Serialize)]
struct CsvRow {
    p: u64,
    k: u32,
    a: u32,
    b: u32,
    c: u32,
    r: String,
    theorem: u8,
    z: u8,
    criterion: Option<bool>,
    oracle: Option<bool>,
    mu: Option<bool>,
    agree: bool,
    elapsed_ms: f64,
}

impl From<&SweepRecord> for CsvRow {
    fn from(r: &SweepRecord) -> Self {
        Self {
            p: r.p,
            k: r.k,
            a: r.a,
            b: r.b,
            c: r.c,
            r: r.r.to_string(),
            theorem: r.theorem,
            z: r.z,
            criterion: r.criterion,
            oracle: r.oracle,
            mu: r.mu,
            agree: r.agree,
            elapsed_ms: r.elapsed_ms,
        }
    }
}

impl From<&PermutationReport> for CsvRow {
    fn from(rep: &PermutationReport) -> Self {
        let s = &rep.spec;
        Self {
            p: s.p,
            k: s.k,
            a: s.a,
            b: s.b,
            c: s.c,
            r: s.r.to_string(),
            theorem: s.theorem.number(),
            z: s.z,
            criterion: Some(rep.criterion_verdict),
            oracle: rep.oracle_verdict,
            mu: rep.mu_verdict,
            agree: rep.agree(),
            elapsed_ms: rep.timing.total_us() as f64 / 1e3,
        }
    }
}

fn csv_text<'a, T>(rows: impl IntoIterator<Item = &'a T>) -> String
where
    T: 'a,
    CsvRow: From<&'a T>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut wrote = false;
    for row in rows {
        w.serialize(CsvRow::from(row)).expect("in-memory csv write");
        wrote = true;
    }
    if !wrote {
        w.write_record([
            "p",
            "k",
            "a",
            "b",
            "c",
            "r",
            "theorem",
            "z",
            "criterion",
            "oracle",
            "mu",
            "agree",
            "elapsed_ms",
        ])
        .expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv is utf-8")
}

pub fn sweep_csv(records: &[SweepRecord]) -> String {
    csv_text(records)
}

pub fn report_csv(report: &PermutationReport) -> String {
    csv_text([report])
}
