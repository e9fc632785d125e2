use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::tune::{EvalReport, TuneReport};
use super::MetricKind;
use crate::error::{Error, Result};

/// Mean and population standard deviation of test errors across datasets.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub metric: Option<MetricKind>,
    pub datasets: usize,
    pub mean: f64,
    pub std: f64,
}

pub fn summarize(reports: &[EvalReport]) -> Result<Summary> {
    let errors: Vec<f64> = reports.iter().map(|r| r.test_error).collect();
    let mut summary = summarize_errors(&errors)?;
    let first = reports[0].metric;
    summary.metric = reports.iter().all(|r| r.metric == first).then_some(first);
    Ok(summary)
}

pub fn summarize_errors(errors: &[f64]) -> Result<Summary> {
    if errors.is_empty() {
        return Err(Error::invalid("cannot summarize an empty list of reports"));
    }
    let n = errors.len() as f64;
    let mean = errors.iter().sum::<f64>() / n;
    let var = errors.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / n;
    Ok(Summary {
        metric: None,
        datasets: errors.len(),
        mean,
        std: var.sqrt(),
    })
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn render(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &[String]| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, w))| if i == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut out, &header.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    line(&mut out, &widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>());
    for row in rows {
        line(&mut out, row);
    }
    out
}

const EVAL_HEADER: [&str; 7] = ["dataset", "method", "alpha", "lambda", "error", "wrong", "n"];

fn eval_row(r: &EvalReport) -> Vec<String> {
    vec![
        r.dataset.clone(),
        r.metric.to_string(),
        opt(r.alpha),
        opt(r.lambda),
        format!("{:.3}", r.test_error),
        r.misclassified.to_string(),
        r.instances.to_string(),
    ]
}

/// Aligned table of evaluation rows, followed by one MEAN and one STD row per
/// metric present.
pub fn eval_table(reports: &[EvalReport]) -> String {
    let mut rows: Vec<Vec<String>> = reports.iter().map(eval_row).collect();
    for kind in metrics_in_order(reports) {
        let subset: Vec<EvalReport> = reports.iter().filter(|r| r.metric == kind).cloned().collect();
        if let Ok(s) = summarize(&subset) {
            for (name, value) in [("MEAN", s.mean), ("STD", s.std)] {
                rows.push(vec![
                    name.into(),
                    kind.to_string(),
                    "-".into(),
                    "-".into(),
                    format!("{value:.3}"),
                    "-".into(),
                    s.datasets.to_string(),
                ]);
            }
        }
    }
    render(&EVAL_HEADER, &rows)
}

pub fn eval_csv(reports: &[EvalReport]) -> String {
    let mut out = EVAL_HEADER.join(",");
    out.push('\n');
    for r in reports {
        let row = eval_row(r);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            csv_field(&row[0]),
            row[1],
            row[2],
            row[3],
            r.test_error,
            row[5],
            row[6]
        );
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn metrics_in_order(reports: &[EvalReport]) -> Vec<MetricKind> {
    let mut kinds = Vec::new();
    for r in reports {
        if !kinds.contains(&r.metric) {
            kinds.push(r.metric);
        }
    }
    kinds
}

const TUNE_HEADER: [&str; 5] = ["alpha", "lambda", "error", "wrong", "best"];

/// The full tuning grid, marking the winning point.
pub fn tune_table(report: &TuneReport) -> String {
    let rows: Vec<Vec<String>> = report
        .grid
        .iter()
        .map(|p| {
            let best = p.alpha == report.best_alpha && p.lambda == report.best_lambda;
            vec![
                opt(p.alpha),
                opt(p.lambda),
                format!("{:.3}", p.error),
                p.misclassified.to_string(),
                if best { "*".into() } else { String::new() },
            ]
        })
        .collect();
    format!(
        "{} {} (ratio 1:{}): best alpha {} lambda {} train error {:.3}\n{}",
        report.dataset,
        report.metric,
        report.ratio,
        opt(report.best_alpha),
        opt(report.best_lambda),
        report.train_error,
        render(&TUNE_HEADER, &rows)
    )
}

pub fn tune_csv(report: &TuneReport) -> String {
    let mut out = String::from("dataset,method,alpha,lambda,error,wrong,best\n");
    for p in &report.grid {
        let best = p.alpha == report.best_alpha && p.lambda == report.best_lambda;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            csv_field(&report.dataset),
            report.metric,
            opt(p.alpha),
            opt(p.lambda),
            p.error,
            p.misclassified,
            best
        );
    }
    out
}
