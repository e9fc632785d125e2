use serde::{Deserialize, Serialize};

use super::classify::{classify_all, distance_table, eed_loocv_counts, ErrorCount, PreparedSet};
use super::{Metric, MetricKind};
use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::sax::{MAX_ALPHABET, MIN_ALPHABET};

pub const DEFAULT_LAMBDAS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
pub const LAMBDA_STEP: f64 = 0.25;
pub const LAMBDA_CEILING: f64 = 4.0;

/// Search space for [`grid_search`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub alpha_lo: usize,
    pub alpha_hi: usize,
    /// Frequency factors tried for EED; ignored by other metrics.
    pub lambdas: Vec<f64>,
    pub ratio: usize,
    /// Continue past the last λ while the error keeps falling.
    pub extend_lambda: bool,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            alpha_lo: 3,
            alpha_hi: 10,
            lambdas: DEFAULT_LAMBDAS.to_vec(),
            ratio: 4,
            extend_lambda: true,
        }
    }
}

impl GridSpec {
    pub fn alphas(lo: usize, hi: usize) -> Self {
        Self {
            alpha_lo: lo,
            alpha_hi: hi,
            ..Self::default()
        }
    }

    pub fn validate(&self, kind: MetricKind) -> Result<()> {
        if self.ratio == 0 {
            return Err(Error::invalid("compression ratio must be at least 1"));
        }
        if kind.is_symbolic()
            && (self.alpha_lo > self.alpha_hi || self.alpha_lo < MIN_ALPHABET || self.alpha_hi > MAX_ALPHABET)
        {
            return Err(Error::invalid(format!(
                "alphabet range {}..{} must be ordered and inside {MIN_ALPHABET}..{MAX_ALPHABET}",
                self.alpha_lo, self.alpha_hi
            )));
        }
        if kind == MetricKind::Eed {
            if self.lambdas.is_empty() {
                return Err(Error::invalid("EED needs at least one frequency factor"));
            }
            if let Some(l) = self.lambdas.iter().find(|l| !(l.is_finite() && **l >= 0.0)) {
                return Err(Error::invalid(format!("frequency factor {l} must be finite and >= 0")));
            }
        }
        Ok(())
    }

    fn sorted_lambdas(&self) -> Vec<f64> {
        let mut l = self.lambdas.clone();
        l.sort_by(f64::total_cmp);
        l.dedup();
        l
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub alpha: Option<usize>,
    pub lambda: Option<f64>,
    pub error: f64,
    pub misclassified: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TuneReport {
    pub dataset: String,
    pub metric: MetricKind,
    pub ratio: usize,
    pub best_alpha: Option<usize>,
    pub best_lambda: Option<f64>,
    pub train_error: f64,
    pub grid: Vec<GridPoint>,
}

impl TuneReport {
    pub fn best_metric(&self) -> Result<Metric> {
        Metric::from_kind(self.metric, self.best_lambda)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub dataset: String,
    pub metric: MetricKind,
    pub alpha: Option<usize>,
    pub lambda: Option<f64>,
    pub test_error: f64,
    pub misclassified: usize,
    pub instances: usize,
}

fn point(alpha: Option<usize>, lambda: Option<f64>, count: ErrorCount) -> GridPoint {
    GridPoint {
        alpha,
        lambda,
        error: count.rate(),
        misclassified: count.misclassified,
    }
}

/// Leave-one-out tuning of the alphabet size (and λ for EED).
///
/// The winner is the lowest error; ties go to the smaller alphabet, then the
/// smaller λ. For EED, when the winner sits on the largest λ and the error
/// fell strictly over the last two steps, λ keeps growing in steps of 0.25
/// (up to 4) for that alphabet until the error stops falling.
pub fn grid_search(train: &LabeledDataset, kind: MetricKind, spec: &GridSpec) -> Result<TuneReport> {
    spec.validate(kind)?;

    let mut grid = Vec::new();
    if kind == MetricKind::Euclidean {
        let set = PreparedSet::for_metric(train, kind, None, spec.ratio)?;
        let count = loocv(&set, &Metric::Euclidean)?;
        grid.push(point(None, None, count));
    } else {
        let lambdas = spec.sorted_lambdas();
        for alpha in spec.alpha_lo..=spec.alpha_hi {
            let set = PreparedSet::for_metric(train, kind, Some(alpha), spec.ratio)?;
            if kind == MetricKind::Eed {
                for (l, count) in lambdas.iter().zip(eed_loocv_counts(&set, &lambdas)?) {
                    grid.push(point(Some(alpha), Some(*l), count));
                }
            } else {
                let count = loocv(&set, &Metric::from_kind(kind, None)?)?;
                grid.push(point(Some(alpha), None, count));
            }
        }
    }

    let mut best = best_index(&grid);
    if kind == MetricKind::Eed && spec.extend_lambda {
        if let Some(extra) = extend_lambda(train, spec, &grid, best)? {
            grid.extend(extra);
            best = best_index(&grid);
        }
    }

    let winner = grid[best];
    Ok(TuneReport {
        dataset: train.name.clone(),
        metric: kind,
        ratio: spec.ratio,
        best_alpha: winner.alpha,
        best_lambda: winner.lambda,
        train_error: winner.error,
        grid,
    })
}

fn loocv(set: &PreparedSet, metric: &Metric) -> Result<ErrorCount> {
    super::classify::loocv_count(set, metric)
}

/// Lowest misclassification count; ties by (alpha, lambda) ascending.
fn best_index(grid: &[GridPoint]) -> usize {
    let key = |p: &GridPoint| (p.misclassified, p.alpha.unwrap_or(0), p.lambda.unwrap_or(0.0));
    (0..grid.len())
        .min_by(|&a, &b| {
            let (ka, kb) = (key(&grid[a]), key(&grid[b]));
            ka.0.cmp(&kb.0).then(ka.1.cmp(&kb.1)).then(ka.2.total_cmp(&kb.2))
        })
        .expect("grid is never empty")
}

fn extend_lambda(
    train: &LabeledDataset,
    spec: &GridSpec,
    grid: &[GridPoint],
    best: usize,
) -> Result<Option<Vec<GridPoint>>> {
    let winner = grid[best];
    let alpha = winner.alpha;
    let row: Vec<&GridPoint> = grid.iter().filter(|p| p.alpha == alpha).collect();
    let n = row.len();
    if n < 3 || row[n - 1].lambda != winner.lambda {
        return Ok(None);
    }
    let falling =
        row[n - 3].misclassified > row[n - 2].misclassified && row[n - 2].misclassified > row[n - 1].misclassified;
    if !falling {
        return Ok(None);
    }

    let set = PreparedSet::for_metric(train, MetricKind::Eed, alpha, spec.ratio)?;
    let start = winner.lambda.unwrap_or(0.0);
    let mut prev = winner.misclassified;
    let mut extra = Vec::new();
    for step in 1.. {
        let lambda = start + LAMBDA_STEP * step as f64;
        if lambda > LAMBDA_CEILING {
            break;
        }
        let count = eed_loocv_counts(&set, &[lambda])?[0];
        extra.push(point(alpha, Some(lambda), count));
        if count.misclassified >= prev {
            break;
        }
        prev = count.misclassified;
    }
    Ok(Some(extra))
}

/// Leave-one-out error of `metric` on a raw dataset, encoded with `alpha` and
/// `ratio` (both ignored by the Euclidean baseline).
pub fn loocv_error_for(train: &LabeledDataset, metric: &Metric, alpha: Option<usize>, ratio: usize) -> Result<f64> {
    let set = PreparedSet::for_metric(train, metric.kind(), alpha, ratio)?;
    super::classify::loocv_error(&set, metric)
}

/// Encodes both sets with the train-derived parameters and classifies every
/// test instance by 1-NN against the training set.
pub fn evaluate(
    train: &LabeledDataset,
    test: &LabeledDataset,
    metric: &Metric,
    alpha: Option<usize>,
    ratio: usize,
) -> Result<EvalReport> {
    if train.is_empty() || test.is_empty() {
        return Err(Error::invalid("evaluation needs nonempty train and test sets"));
    }
    let train_set = PreparedSet::for_metric(train, metric.kind(), alpha, ratio)?;
    let test_set = PreparedSet::prepare(test, train_set.encoding)?;
    let predictions = classify_all(&test_set, &train_set, metric)?;
    let misclassified = predictions.iter().zip(&test_set.labels).filter(|(p, l)| p != l).count();
    let count = ErrorCount {
        misclassified,
        total: test_set.len(),
    };
    Ok(EvalReport {
        dataset: if test.name.is_empty() {
            train.name.clone()
        } else {
            test.name.clone()
        },
        metric: metric.kind(),
        alpha: if metric.kind().is_symbolic() { alpha } else { None },
        lambda: metric.lambda(),
        test_error: count.rate(),
        misclassified,
        instances: count.total,
    })
}

/// Tunes on `train`, then evaluates the winning parameters on `test`.
pub fn tune_and_evaluate(
    train: &LabeledDataset,
    test: &LabeledDataset,
    kind: MetricKind,
    spec: &GridSpec,
) -> Result<(TuneReport, EvalReport)> {
    let tuned = grid_search(train, kind, spec)?;
    let metric = tuned.best_metric()?;
    let report = evaluate(train, test, &metric, tuned.best_alpha, spec.ratio)?;
    Ok((tuned, report))
}

/// Full symmetric distance matrix of a prepared set.
pub fn distance_matrix(set: &PreparedSet, metric: &Metric) -> Result<Vec<Vec<f64>>> {
    let table = distance_table(set, metric)?;
    let n = set.len();
    Ok((0..n)
        .map(|i| (0..n).map(|j| if i == j { 0.0 } else { table.get(i, j) }).collect())
        .collect())
}
