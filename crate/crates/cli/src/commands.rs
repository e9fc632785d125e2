use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use eed_core::dataset::{load_ucr, LabeledDataset, UcrPaths};
use eed_core::eval::{
    eval_csv, eval_table, evaluate, grid_search, summarize, tune_and_evaluate, tune_csv, tune_table, EvalReport,
    GridSpec, Summary,
};
use eed_core::index::{Hit, MetricIndex};
use eed_core::sax::{symbolize, SaxParams};
use eed_core::{EedParts, Error, Metric, MetricKind, SymbolicSequence};
use log::{info, warn};
use serde::{Deserialize, Serialize};

use crate::args::{BenchArgs, Cli, Command, DistArgs, EvalArgs, Format, GridArgs, IndexArgs, SymbolizeArgs, TuneArgs};

/// Exit status 2 for bad invocations, 1 for everything that fails at run time.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::InvalidSymbol { .. } | Error::NotAMetric(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Dist(a) => dist(a, cli.format),
        Command::Symbolize(a) => symbolize_cmd(a, cli.format),
        Command::Tune(a) => tune(a, cli.format),
        Command::Eval(a) => eval(a, cli.format),
        Command::Bench(a) => bench(a, cli.format),
        Command::Index(a) => index(a, cli.format, cli.seed),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn json_lines<T: Serialize>(values: &[T]) -> String {
    values
        .iter()
        .map(|v| serde_json::to_string(v).expect("report types serialize") + "\n")
        .collect()
}

fn parse_string(text: &str, alphabet: usize, what: &str) -> Result<SymbolicSequence, Failure> {
    SymbolicSequence::from_letters(text, alphabet).map_err(|e| Failure::Usage(format!("{what} {text:?}: {e}")))
}

fn string_metric(kind: MetricKind, lambda: f64) -> Result<Metric, Failure> {
    match kind {
        MetricKind::Eed => Ok(Metric::eed(lambda)?),
        MetricKind::Ed | MetricKind::LcssSim => Ok(Metric::from_kind(kind, None)?),
        other => Err(Failure::Usage(format!(
            "{other} does not compare symbol strings; use ed, eed or lcss"
        ))),
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct DistRecord {
    metric: MetricKind,
    lambda: Option<f64>,
    first: String,
    second: String,
    edit: usize,
    divergence: usize,
    distance: f64,
}

fn dist(a: &DistArgs, format: Format) -> Outcome {
    let metric = string_metric(a.metric, a.lambda)?;
    let s = parse_string(&a.first, a.alphabet, "first string")?;
    let t = parse_string(&a.second, a.alphabet, "second string")?;
    let distance = metric.sequence_distance(&s, &t).expect("string metric");
    let parts = EedParts::compute(&s, &t);
    let rec = DistRecord {
        metric: a.metric,
        lambda: metric.lambda(),
        first: a.first.clone(),
        second: a.second.clone(),
        edit: parts.edit,
        divergence: parts.divergence,
        distance,
    };
    Ok(match format {
        Format::Table => format!("{distance:.6}\n"),
        Format::Csv => format!(
            "metric,lambda,first,second,distance\n{},{},{},{},{distance:.6}\n",
            rec.metric,
            rec.lambda.map_or_else(String::new, |l| l.to_string()),
            rec.first,
            rec.second
        ),
        Format::Json => json(&rec),
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct WordRecord {
    index: usize,
    label: Option<i64>,
    length: usize,
    segments: usize,
    word: String,
}

fn symbolize_cmd(a: &SymbolizeArgs, format: Format) -> Outcome {
    let series: Vec<(Option<i64>, Vec<f64>)> = match (&a.values, &a.input) {
        (Some(v), _) => vec![(None, v.clone())],
        (None, Some(path)) => load_ucr(path)?
            .instances
            .into_iter()
            .map(|x| (Some(x.label), x.series))
            .collect(),
        (None, None) => return Err(Failure::Usage("give --values or --input".into())),
    };
    let mut records = Vec::with_capacity(series.len());
    for (index, (label, values)) in series.into_iter().enumerate() {
        let params = SaxParams::with_ratio(a.alpha, values.len(), a.ratio as usize)?;
        let word = symbolize(&values, &params)?;
        records.push(WordRecord {
            index,
            label,
            length: values.len(),
            segments: params.segment_count(),
            word: word.word.to_letters().expect("SAX alphabets fit in letters"),
        });
    }
    Ok(match format {
        Format::Table => records
            .iter()
            .map(|r| match r.label {
                Some(l) => format!("{l}\t{}\n", r.word),
                None => format!("{}\n", r.word),
            })
            .collect(),
        Format::Csv => {
            let mut out = String::from("index,label,length,segments,word\n");
            for r in &records {
                let label = r.label.map_or_else(String::new, |l| l.to_string());
                let _ = writeln!(out, "{},{label},{},{},{}", r.index, r.length, r.segments, r.word);
            }
            out
        }
        Format::Json => json_lines(&records),
    })
}

fn grid_spec(g: &GridArgs, kinds: &[MetricKind]) -> Result<GridSpec, Failure> {
    let spec = GridSpec {
        alpha_lo: *g.alpha.start(),
        alpha_hi: *g.alpha.end(),
        lambdas: g.lambdas.clone(),
        ratio: g.ratio as usize,
        extend_lambda: !g.no_extend,
    };
    for &k in kinds {
        spec.validate(k)?;
    }
    Ok(spec)
}

fn tune(a: &TuneArgs, format: Format) -> Outcome {
    let spec = grid_spec(&a.grid, &[a.metric])?;
    let train = load_ucr(&a.train)?;
    let report = grid_search(&train, a.metric, &spec)?;
    Ok(match format {
        Format::Table => tune_table(&report),
        Format::Csv => tune_csv(&report),
        Format::Json => json(&report),
    })
}

fn render_reports(reports: &[EvalReport], format: Format) -> String {
    match format {
        Format::Table => eval_table(reports),
        Format::Csv => eval_csv(reports),
        Format::Json => json_lines(reports),
    }
}

fn eval(a: &EvalArgs, format: Format) -> Outcome {
    if a.metric.is_symbolic() && a.alpha.is_none() {
        return Err(Failure::Usage(format!("{} needs --alpha", a.metric)));
    }
    let lambda = match a.metric {
        MetricKind::Eed => Some(a.lambda.ok_or_else(|| Failure::Usage("EED needs --lambda".into()))?),
        _ => a.lambda,
    };
    let metric = Metric::from_kind(a.metric, lambda)?;
    let train = load_ucr(&a.train)?;
    let test = load_ucr(&a.test)?;
    let report = evaluate(&train, &test, &metric, a.alpha, a.ratio as usize)?;
    Ok(render_reports(&[report], format))
}

/// One line of `bench --format json`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "lowercase")]
pub enum BenchRecord {
    Report(EvalReport),
    Summary(Summary),
    Failure {
        dataset: String,
        metric: Option<MetricKind>,
        error: String,
    },
}

fn load_pair(train: &Path, test: &Path) -> eed_core::Result<(LabeledDataset, LabeledDataset)> {
    Ok((load_ucr(train)?, load_ucr(test)?))
}

fn bench(a: &BenchArgs, format: Format) -> Outcome {
    let spec = grid_spec(&a.grid, &a.metrics)?;
    let sources: Vec<(String, eed_core::Result<(LabeledDataset, LabeledDataset)>)> = match (&a.train, &a.test) {
        (Some(train), Some(test)) => vec![(train.display().to_string(), load_pair(train, test))],
        _ => a
            .data
            .iter()
            .map(|dir| (dir.display().to_string(), UcrPaths::resolve(dir).and_then(|p| p.load())))
            .collect(),
    };

    let mut reports = Vec::new();
    let mut failures = Vec::new();
    let mut loaded = 0usize;
    for (source, data) in sources {
        let (train, test) = match data {
            Ok(d) => d,
            Err(e) => {
                warn!("skipping {source}: {e}");
                failures.push(BenchRecord::Failure {
                    dataset: source,
                    metric: None,
                    error: e.to_string(),
                });
                continue;
            }
        };
        loaded += 1;
        for &kind in &a.metrics {
            match tune_and_evaluate(&train, &test, kind, &spec) {
                Ok((tuned, report)) => {
                    info!(
                        "{} {kind}: alpha {:?} lambda {:?} train {:.3} test {:.3}",
                        report.dataset, tuned.best_alpha, tuned.best_lambda, tuned.train_error, report.test_error
                    );
                    reports.push(report);
                }
                Err(e) => {
                    warn!("{} {kind}: {e}", train.name);
                    failures.push(BenchRecord::Failure {
                        dataset: train.name.clone(),
                        metric: Some(kind),
                        error: e.to_string(),
                    });
                }
            }
        }
    }

    let summaries: Vec<Summary> = a
        .metrics
        .iter()
        .filter_map(|&k| {
            let subset: Vec<EvalReport> = reports.iter().filter(|r| r.metric == k).cloned().collect();
            summarize(&subset).ok()
        })
        .collect();
    let text = match format {
        Format::Json => {
            let mut records: Vec<BenchRecord> = reports.iter().cloned().map(BenchRecord::Report).collect();
            records.extend(summaries.iter().copied().map(BenchRecord::Summary));
            records.extend(failures.iter().cloned());
            json_lines(&records)
        }
        Format::Csv => {
            let mut out = eval_csv(&reports);
            for s in &summaries {
                let kind = s.metric.map_or_else(String::new, |k| k.to_string());
                let _ = writeln!(out, "MEAN,{kind},-,-,{},-,{}", s.mean, s.datasets);
                let _ = writeln!(out, "STD,{kind},-,-,{},-,{}", s.std, s.datasets);
            }
            out
        }
        Format::Table => eval_table(&reports),
    };
    if let Some(path) = &a.output {
        fs::write(path, &text).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
    }
    if loaded == 0 {
        for f in &failures {
            if let BenchRecord::Failure { dataset, error, .. } = f {
                eprintln!("{dataset}: {error}");
            }
        }
        return Err(Failure::Runtime("every dataset failed to load".into()));
    }
    Ok(text)
}

#[derive(Debug, Serialize, Deserialize)]
struct QueryRecord {
    query: String,
    nearest: Neighbor,
    radius: Option<f64>,
    within: Vec<Neighbor>,
}

#[derive(Debug, Serialize, Deserialize)]
struct Neighbor {
    id: usize,
    item: String,
    distance: f64,
}

fn index(a: &IndexArgs, format: Format, seed: u64) -> Outcome {
    let metric = match a.metric {
        MetricKind::Eed => Metric::eed(a.lambda)?,
        other => Metric::from_kind(other, None)?,
    };
    if let Some(r) = a.radius {
        if r.is_nan() || r < 0.0 {
            return Err(Failure::Usage(format!("radius must be nonnegative, got {r}")));
        }
    }
    let queries: Vec<SymbolicSequence> = a
        .queries
        .iter()
        .map(|q| parse_string(q, a.alphabet, "query"))
        .collect::<Result<_, _>>()?;
    let path = &a.items;
    let text = fs::read_to_string(path).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
    let mut names = Vec::new();
    let mut items = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let seq = SymbolicSequence::from_letters(line, a.alphabet)
            .map_err(|e| Failure::Runtime(format!("{}: line {}: {e}", path.display(), line_no + 1)))?;
        names.push(line.to_string());
        items.push(seq);
    }
    if items.is_empty() {
        return Err(Failure::Runtime(format!("{}: no strings", path.display())));
    }
    let idx = MetricIndex::build(items, metric, seed)?;
    let neighbor = |h: Hit| Neighbor {
        id: h.id,
        item: names[h.id].clone(),
        distance: h.distance,
    };
    let records: Vec<QueryRecord> = a
        .queries
        .iter()
        .zip(&queries)
        .map(|(text, q)| QueryRecord {
            query: text.clone(),
            nearest: neighbor(idx.query_nn(q)),
            radius: a.radius,
            within: a
                .radius
                .map_or_else(Vec::new, |r| idx.query_range(q, r).into_iter().map(neighbor).collect()),
        })
        .collect();

    Ok(match format {
        Format::Json => json_lines(&records),
        Format::Table | Format::Csv => {
            let mut rows = Vec::new();
            for r in &records {
                rows.push((r.query.as_str(), "nn", &r.nearest));
                rows.extend(r.within.iter().map(|n| (r.query.as_str(), "range", n)));
            }
            let mut out = String::new();
            if format == Format::Csv {
                out.push_str("query,kind,id,item,distance\n");
                for (q, kind, n) in rows {
                    let _ = writeln!(out, "{q},{kind},{},{},{:.6}", n.id, n.item, n.distance);
                }
            } else {
                let qw = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max(5);
                let iw = rows.iter().map(|r| r.2.item.len()).max().unwrap_or(0).max(4);
                let _ = writeln!(
                    out,
                    "{:<qw$}  {:<5}  {:>6}  {:<iw$}  {:>12}",
                    "query", "kind", "id", "item", "distance"
                );
                for (q, kind, n) in rows {
                    let _ = writeln!(
                        out,
                        "{q:<qw$}  {kind:<5}  {:>6}  {:<iw$}  {:>12.6}",
                        n.id, n.item, n.distance
                    );
                }
            }
            out
        }
    })
}
