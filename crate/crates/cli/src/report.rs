//! Campaign reports: an aligned text table and a JSON document. Neither
//! contains timings, so identical runs produce identical bytes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

use crate::explore::{ExploreRow, Finding, Status};
use crate::verify::{TheoremCheck, Verdict};

pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    let dashes: Vec<String> = width.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&line(dashes.iter().map(String::as_str).collect()));
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct Header {
    pub command: String,
    pub corpus: String,
    pub seed: u64,
    pub budget: Option<u64>,
    pub fixed_second_factor: Option<String>,
    pub instances: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub header: Header,
    pub theorems: Vec<String>,
    pub summary: BTreeMap<String, usize>,
    pub rows: Vec<TheoremCheck>,
}

impl VerifyReport {
    pub fn new(header: Header, theorems: Vec<String>, rows: Vec<TheoremCheck>) -> Self {
        let mut summary = BTreeMap::new();
        for v in [
            Verdict::Holds,
            Verdict::Violated,
            Verdict::HypothesisNotMet,
            Verdict::BudgetExceeded,
        ] {
            summary.insert(v.to_string(), rows.iter().filter(|r| r.verdict == v).count());
        }
        Self {
            header,
            theorems,
            summary,
            rows,
        }
    }

    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| r.verdict == Verdict::Violated).count()
    }

    pub fn text(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.theorem.to_string(),
                    r.check.clone(),
                    r.inputs.join(" x "),
                    opt(r.lhs),
                    r.relation.symbol().to_string(),
                    opt(r.rhs),
                    r.verdict.to_string(),
                    r.note.clone(),
                ]
            })
            .collect();
        let mut out = header_text(&self.header);
        out.push_str(&table(
            &["theorem", "check", "inputs", "lhs", "rel", "rhs", "verdict", "note"],
            &rows,
        ));
        out.push('\n');
        out.push_str(&summary_text(&self.summary));
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExploreReport {
    pub header: Header,
    pub targets: Vec<String>,
    pub summary: BTreeMap<String, usize>,
    pub rows: Vec<ExploreRow>,
    pub findings: Vec<Finding>,
}

impl ExploreReport {
    pub fn new(header: Header, targets: Vec<String>, rows: Vec<ExploreRow>, findings: Vec<Finding>) -> Self {
        let mut summary = BTreeMap::new();
        for r in &rows {
            *summary.entry(format!("{}: {}", r.target, r.status)).or_insert(0) += 1;
        }
        summary.insert(
            "rho2 bound violations".into(),
            rows.iter().filter(|r| r.rho2_status == Status::Violated).count(),
        );
        Self {
            header,
            targets,
            summary,
            rows,
            findings,
        }
    }

    pub fn rho2_violations(&self) -> usize {
        self.summary["rho2 bound violations"]
    }

    pub fn text(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.target.to_string(),
                    r.inputs.join(" x "),
                    opt(r.lhs),
                    opt(r.rhs),
                    r.status.to_string(),
                    opt(r.rho2_bound),
                    r.rho2_status.to_string(),
                    r.note.clone(),
                ]
            })
            .collect();
        let mut out = header_text(&self.header);
        out.push_str(&table(
            &[
                "target",
                "inputs",
                "lhs",
                "rhs",
                "status",
                "rho2",
                "rho2 status",
                "note",
            ],
            &rows,
        ));
        out.push('\n');
        out.push_str(&summary_text(&self.summary));
        if !self.findings.is_empty() {
            out.push_str(&format!(
                "\n{} finding(s); full details in the JSON report\n",
                self.findings.len()
            ));
        }
        out
    }
}

fn header_text(h: &Header) -> String {
    let mut out = format!("# {}\n# corpus: {}\n# seed: {}\n", h.command, h.corpus, h.seed);
    out.push_str(&format!(
        "# budget: {}\n",
        h.budget.map_or_else(|| "unlimited".into(), |b| format!("{b} nodes"))
    ));
    if let Some(f) = &h.fixed_second_factor {
        out.push_str(&format!("# second factor: {f}\n"));
    }
    out.push_str(&format!("# instances: {}\n\n", h.instances));
    out
}

fn summary_text(summary: &BTreeMap<String, usize>) -> String {
    summary.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
}

/// Writes `<stem>.txt` and `<stem>.json` into `dir`.
pub fn write_pair(dir: &Path, stem: &str, text: &str, json: &impl Serialize) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let txt = dir.join(format!("{stem}.txt"));
    let js = dir.join(format!("{stem}.json"));
    std::fs::write(&txt, text)?;
    std::fs::write(&js, serde_json::to_string_pretty(json)? + "\n")?;
    Ok((txt, js))
}
