//! Text, JSON and CSV renderings of verification reports.
//!
//! JSON key order is fixed: `l, p, r, q, gamma, w, cases, order_l2, all_pass,
//! elapsed_ms`; each case is `{n, case, required, achieved, pass}` where
//! `achieved` is an integer, `"cap"` when the valuation reached the cap, or
//! `null` (with an extra `error` key) when the case could not be evaluated.

use std::fmt::Write as _;

use serde::Serialize;

use super::{CaseResult, CongruenceReport, PropositionReport};
use crate::cyclo::Valuation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

/// Achieved valuation as it appears in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
enum Achieved {
    Value(u32),
    Cap(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseRecord {
    n: u64,
    case: &'static str,
    required: u32,
    achieved: Option<Achieved>,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl From<&CaseResult> for CaseRecord {
    fn from(c: &CaseResult) -> Self {
        CaseRecord {
            n: c.n,
            case: c.case.label(),
            required: c.required,
            achieved: c.achieved.map(|v| match v {
                Valuation::Exact(v) => Achieved::Value(v),
                Valuation::AtLeast(_) => Achieved::Cap("cap"),
            }),
            pass: c.pass,
            error: c.error.clone(),
        }
    }
}

fn achieved_text(c: &CaseResult) -> String {
    match c.achieved {
        Some(Valuation::Exact(v)) => v.to_string(),
        Some(Valuation::AtLeast(_)) => "cap".into(),
        None => "error".into(),
    }
}

#[derive(Serialize)]
struct ReportDoc {
    l: u64,
    p: u64,
    r: u32,
    q: u64,
    gamma: u64,
    w: u64,
    cases: Vec<CaseRecord>,
    order_l2: Vec<CaseRecord>,
    all_pass: bool,
    elapsed_ms: Option<u64>,
}

pub const CSV_HEADER: &str = "q,gamma,w,n,case,required,achieved,pass";

impl CongruenceReport {
    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = ReportDoc {
            l: self.l,
            p: self.p,
            r: self.r,
            q: self.q,
            gamma: self.gamma,
            w: self.w,
            cases: self.cases.iter().map(CaseRecord::from).collect(),
            order_l2: self.order_l2.iter().map(CaseRecord::from).collect(),
            all_pass: self.all_pass,
            elapsed_ms: self.elapsed_ms,
        };
        serde_json::to_value(&doc).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("report serializes")
    }

    /// Rows without the header line.
    pub fn csv_rows(&self) -> String {
        let mut out = String::new();
        for c in self.cases.iter().chain(&self.order_l2) {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                self.q,
                self.gamma,
                self.w,
                c.n,
                c.case.label(),
                c.required,
                achieved_text(c),
                c.pass
            )
            .unwrap();
        }
        out
    }

    pub fn to_csv(&self) -> String {
        format!("{CSV_HEADER}\n{}", self.csv_rows())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "F_q: q = {} = {}^{}, l = {}, gamma = {}, w = ind(2) = {}", self.q, self.p, self.r, self.l, self.gamma, self.w).unwrap();
        let section = |out: &mut String, title: &str, cases: &[CaseResult]| {
            if cases.is_empty() {
                return;
            }
            writeln!(out, "{title}").unwrap();
            writeln!(out, "  {:>5}  {:<15} {:>8} {:>8}  result", "n", "case", "required", "achieved").unwrap();
            for c in cases {
                writeln!(
                    out,
                    "  {:>5}  {:<15} {:>8} {:>8}  {}",
                    c.n,
                    c.case.label(),
                    c.required,
                    achieved_text(c),
                    if c.pass { "pass" } else { "FAIL" }
                )
                .unwrap();
                if let Some(e) = &c.error {
                    writeln!(out, "         {e}").unwrap();
                }
            }
        };
        section(&mut out, &format!("order 2l^2 = {}:", 2 * self.l * self.l), &self.cases);
        section(&mut out, &format!("order l^2 = {}:", self.l * self.l), &self.order_l2);
        let failures = self.failures().count();
        writeln!(out, "{}", if self.all_pass { "all cases pass".to_string() } else { format!("{failures} case(s) FAIL") }).unwrap();
        if let Some(ms) = self.elapsed_ms {
            writeln!(out, "elapsed: {ms} ms").unwrap();
        }
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Json => self.to_json() + "\n",
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

#[derive(Serialize)]
struct CheckDoc<'a> {
    identity: &'a str,
    order: u64,
    checked: u64,
    violations: u64,
    pass: bool,
    witness: Option<&'a str>,
}

#[derive(Serialize)]
struct PropositionDoc<'a> {
    l: u64,
    p: u64,
    r: u32,
    q: u64,
    gamma: u64,
    checks: Vec<CheckDoc<'a>>,
    all_pass: bool,
}

impl PropositionReport {
    pub fn to_json(&self) -> String {
        let doc = PropositionDoc {
            l: self.l,
            p: self.p,
            r: self.r,
            q: self.q,
            gamma: self.gamma,
            checks: self
                .checks
                .iter()
                .map(|c| CheckDoc {
                    identity: c.identity,
                    order: c.order,
                    checked: c.checked,
                    violations: c.violations,
                    pass: c.pass(),
                    witness: c.witness.as_deref(),
                })
                .collect(),
            all_pass: self.all_pass,
        };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("q,identity,order,checked,violations,pass,witness\n");
        for c in &self.checks {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                self.q,
                c.identity,
                c.order,
                c.checked,
                c.violations,
                c.pass(),
                c.witness.as_deref().unwrap_or("")
            )
            .unwrap();
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "F_q: q = {} = {}^{}, l = {}, gamma = {}", self.q, self.p, self.r, self.l, self.gamma).unwrap();
        writeln!(out, "  {:<22} {:>6} {:>9} {:>10}  result", "identity", "order", "checked", "violations").unwrap();
        for c in &self.checks {
            write!(
                out,
                "  {:<22} {:>6} {:>9} {:>10}  {}",
                c.identity,
                c.order,
                c.checked,
                c.violations,
                if c.pass() { "pass" } else { "FAIL" }
            )
            .unwrap();
            match &c.witness {
                Some(w) => writeln!(out, "  (witness {w})").unwrap(),
                None => writeln!(out).unwrap(),
            }
        }
        writeln!(out, "{}", if self.all_pass { "all identities hold" } else { "identity violations found" }).unwrap();
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Json => self.to_json() + "\n",
            OutputFormat::Csv => self.to_csv(),
        }
    }
}
