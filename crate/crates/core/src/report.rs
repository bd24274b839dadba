//! Book-by-model tables for evaluation and ensemble reports.
//!
//! Tables are comma-delimited with percentages to two decimals and a final
//! `Overall` row.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::ensemble::EnsembleReport;
use crate::metrics::{EvalReport, POOLED_LENGTHS, REPORT_LENGTHS};

fn pct(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{:.2}", 100.0 * v))
}

fn header(first: &str, models: &[&str]) -> String {
    std::iter::once(first).chain(models.iter().copied()).collect::<Vec<_>>().join(",")
}

fn book_table(title: &str, reports: &[(String, EvalReport)], cell: impl Fn(&EvalReport, Option<&str>) -> Option<f64>) -> String {
    let models: Vec<&str> = reports.iter().map(|(n, _)| n.as_str()).collect();
    let books: BTreeSet<&str> = reports
        .iter()
        .flat_map(|(_, r)| r.per_book.keys().map(String::as_str))
        .collect();
    let mut out = format!("# {title}\n{}\n", header("book_id", &models));
    for book in books.iter().copied().map(Some).chain([None]) {
        let mut row = vec![book.unwrap_or("Overall").to_string()];
        row.extend(reports.iter().map(|(_, r)| pct(cell(r, book))));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn accuracy_table(reports: &[(String, EvalReport)]) -> String {
    book_table("accuracy (edit distance) by book", reports, |r, book| match book {
        Some(b) => r.per_book.get(b).map(|a| a.accuracy()),
        None => Some(r.overall.accuracy()),
    })
}

pub fn pooled_recall_table(reports: &[(String, EvalReport)]) -> String {
    let title = format!(
        "recall over query lengths {}-{} by book",
        POOLED_LENGTHS.start(),
        POOLED_LENGTHS.end()
    );
    book_table(&title, reports, |r, book| {
        let agg = match book {
            Some(b) => r.per_book.get(b)?,
            None => &r.overall,
        };
        agg.pooled_recall(POOLED_LENGTHS)
    })
}

pub fn recall_by_length_table(reports: &[(String, EvalReport)]) -> String {
    let models: Vec<&str> = reports.iter().map(|(n, _)| n.as_str()).collect();
    let mut out = format!("# recall by query length\n{}\n", header("query_length", &models));
    for l in REPORT_LENGTHS {
        let mut row = vec![l.to_string()];
        row.extend(reports.iter().map(|(_, r)| pct(r.overall.recall(l))));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn ensemble_table(report: &EnsembleReport) -> String {
    let models: Vec<&str> = report.overall.per_model.keys().map(String::as_str).collect();
    let mut cols: Vec<String> = models.iter().map(|m| format!("{m}_recall")).collect();
    cols.extend(["union_recall".into(), "union_precision".into()]);
    let cols: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut out = format!("# union of model predictions by book\n{}\n", header("book_id", &cols));
    let rows = report
        .per_book
        .iter()
        .map(|(b, t)| (b.as_str(), t))
        .chain([("Overall", &report.overall)]);
    for (book, totals) in rows {
        let mut row = vec![book.to_string()];
        row.extend(
            models
                .iter()
                .map(|m| pct(totals.per_model.get(*m).and_then(|c| c.recall()))),
        );
        row.push(pct(totals.union.recall.recall()));
        row.push(pct(totals.union.precision.recall()));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
pub struct NamedReports<'a> {
    pub models: Vec<NamedReport<'a>>,
}

#[derive(Serialize)]
pub struct NamedReport<'a> {
    pub model: &'a str,
    pub report: &'a EvalReport,
}

pub fn reports_json(reports: &[(String, EvalReport)]) -> serde_json::Result<String> {
    serde_json::to_string_pretty(&NamedReports {
        models: reports
            .iter()
            .map(|(model, report)| NamedReport { model, report })
            .collect(),
    })
}
