use serde::{Deserialize, Serialize};

use super::{map_indexed, Metric, MetricKind};
use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::sax::{euclidean, mindist, symbolize, validate_series, z_normalize, SaxParams, SaxWord, MIN_ALPHABET};
use crate::seqdist::EedParts;
use crate::seqdist::SymbolicSequence;

/// How raw series are turned into the objects a metric compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Encoding {
    Sax(SaxParams),
    /// z-normalized, full resolution.
    Raw,
}

impl Encoding {
    /// The encoding a metric needs for series of length `n`.
    pub fn for_metric(kind: MetricKind, alpha: Option<usize>, n: usize, ratio: usize) -> Result<Self> {
        if !kind.is_symbolic() {
            return Ok(Encoding::Raw);
        }
        let alpha = alpha.ok_or_else(|| Error::invalid(format!("{kind} needs an alphabet size")))?;
        Ok(Encoding::Sax(SaxParams::with_ratio(alpha, n, ratio)?))
    }

    pub fn encode(&self, series: &[f64]) -> Result<Representation> {
        match self {
            Encoding::Sax(p) => symbolize(series, p).map(Representation::Word),
            Encoding::Raw => {
                validate_series(series)?;
                Ok(Representation::Raw(z_normalize(series)))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Representation {
    Word(SaxWord),
    Raw(Vec<f64>),
}

/// A labeled set encoded once, ready for repeated distance computations.
#[derive(Clone, Debug)]
pub struct PreparedSet {
    pub labels: Vec<i64>,
    pub items: Vec<Representation>,
    pub encoding: Encoding,
}

impl PreparedSet {
    pub fn prepare(dataset: &LabeledDataset, encoding: Encoding) -> Result<Self> {
        let items = dataset
            .instances
            .iter()
            .map(|inst| encoding.encode(&inst.series))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            labels: dataset.labels().collect(),
            items,
            encoding,
        })
    }

    /// Encodes with the parameters implied by the dataset's first series.
    pub fn for_metric(dataset: &LabeledDataset, kind: MetricKind, alpha: Option<usize>, ratio: usize) -> Result<Self> {
        let n = dataset
            .instances
            .first()
            .map(|i| i.series.len())
            .ok_or_else(|| Error::invalid(format!("dataset {} is empty", dataset.name)))?;
        Self::prepare(dataset, Encoding::for_metric(kind, alpha, n, ratio)?)
    }

    /// Wraps already-symbolic sequences (for string-level experiments). The
    /// recorded encoding uses the first sequence's alphabet and length.
    pub fn from_sequences(labels: Vec<i64>, sequences: Vec<SymbolicSequence>) -> Result<Self> {
        if labels.len() != sequences.len() {
            return Err(Error::invalid("one label per sequence required"));
        }
        let (alpha, w) = sequences.first().map_or((MIN_ALPHABET, 1), |s| {
            (s.alphabet_size().max(MIN_ALPHABET), s.len().max(1))
        });
        let encoding = Encoding::Sax(SaxParams::new(alpha, w)?);
        let items = sequences
            .into_iter()
            .map(|word| {
                let original_length = word.len();
                Representation::Word(SaxWord { word, original_length })
            })
            .collect();
        Ok(Self {
            labels,
            items,
            encoding,
        })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    fn word(&self, i: usize) -> Result<&SaxWord> {
        match &self.items[i] {
            Representation::Word(w) => Ok(w),
            Representation::Raw(_) => Err(Error::invalid("expected symbolized series")),
        }
    }
}

pub fn distance(metric: &Metric, a: &Representation, b: &Representation, encoding: &Encoding) -> Result<f64> {
    match (metric, a, b) {
        (Metric::Euclidean, Representation::Raw(x), Representation::Raw(y)) => euclidean(x, y),
        (Metric::SaxMindist, Representation::Word(x), Representation::Word(y)) => match encoding {
            Encoding::Sax(p) => mindist(x, y, p),
            Encoding::Raw => Err(Error::invalid("MINDIST needs SAX parameters")),
        },
        (m, Representation::Word(x), Representation::Word(y)) => m
            .sequence_distance(&x.word, &y.word)
            .ok_or_else(|| Error::invalid(format!("{m} is undefined on SAX words"))),
        (m, _, _) => Err(Error::invalid(format!("{m} cannot compare these representations"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Neighbor {
    pub index: usize,
    pub distance: f64,
    pub label: i64,
}

/// Nearest training instance, lowest index on distance ties. `skip` excludes
/// one training index (used for leave-one-out).
pub fn nearest(query: &Representation, train: &PreparedSet, metric: &Metric, skip: Option<usize>) -> Result<Neighbor> {
    let mut best: Option<Neighbor> = None;
    for (index, item) in train.items.iter().enumerate() {
        if Some(index) == skip {
            continue;
        }
        let d = distance(metric, query, item, &train.encoding)?;
        if best.is_none_or(|b| d < b.distance) {
            best = Some(Neighbor {
                index,
                distance: d,
                label: train.labels[index],
            });
        }
    }
    best.ok_or_else(|| Error::invalid("1-NN needs a nonempty training set"))
}

pub fn nn1_classify(query: &Representation, train: &PreparedSet, metric: &Metric) -> Result<i64> {
    nearest(query, train, metric, None).map(|n| n.label)
}

/// Misclassification count over a set of predictions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorCount {
    pub misclassified: usize,
    pub total: usize,
}

impl ErrorCount {
    pub fn rate(self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.misclassified as f64 / self.total as f64
        }
    }
}

/// Symmetric pairwise table over one prepared set, computed once.
pub(crate) struct Pairwise<T> {
    n: usize,
    cells: Vec<T>,
}

impl<T: Copy + Send + Sync> Pairwise<T> {
    pub(crate) fn compute<F>(n: usize, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> Result<T> + Sync + Send,
    {
        let rows = map_indexed(n, |i| ((i + 1)..n).map(|j| f(i, j)).collect::<Result<Vec<T>>>());
        let mut cells = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for row in rows {
            cells.extend(row?);
        }
        Ok(Self { n, cells })
    }

    pub(crate) fn get(&self, i: usize, j: usize) -> T {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        // Row i starts after rows 0..i, which hold (n-1) + (n-2) + ... + (n-i) cells.
        let start = i * (2 * self.n - i - 1) / 2;
        self.cells[start + (j - i - 1)]
    }

    /// Leave-one-out 1-NN errors, with `dist` mapping a cell to a distance.
    pub(crate) fn loocv(&self, labels: &[i64], dist: impl Fn(T) -> f64) -> ErrorCount {
        let misclassified = (0..self.n)
            .filter(|&i| {
                let mut best: Option<(f64, usize)> = None;
                for j in (0..self.n).filter(|&j| j != i) {
                    let d = dist(self.get(i, j));
                    if best.is_none_or(|(bd, _)| d < bd) {
                        best = Some((d, j));
                    }
                }
                best.is_some_and(|(_, j)| labels[j] != labels[i])
            })
            .count();
        ErrorCount {
            misclassified,
            total: self.n,
        }
    }
}

pub(crate) fn eed_parts_table(set: &PreparedSet) -> Result<Pairwise<EedParts>> {
    Pairwise::compute(set.len(), |i, j| {
        Ok(EedParts::compute(&set.word(i)?.word, &set.word(j)?.word))
    })
}

pub(crate) fn distance_table(set: &PreparedSet, metric: &Metric) -> Result<Pairwise<f64>> {
    Pairwise::compute(set.len(), |i, j| {
        distance(metric, &set.items[i], &set.items[j], &set.encoding)
    })
}

fn require_loocv(set: &PreparedSet) -> Result<()> {
    if set.len() < 2 {
        return Err(Error::invalid(format!(
            "leave-one-out needs at least 2 instances, got {}",
            set.len()
        )));
    }
    Ok(())
}

pub fn loocv_count(train: &PreparedSet, metric: &Metric) -> Result<ErrorCount> {
    require_loocv(train)?;
    Ok(distance_table(train, metric)?.loocv(&train.labels, |d| d))
}

/// Fraction of training instances misclassified by 1-NN against the rest.
pub fn loocv_error(train: &PreparedSet, metric: &Metric) -> Result<f64> {
    loocv_count(train, metric).map(ErrorCount::rate)
}

pub(crate) fn eed_loocv_counts(train: &PreparedSet, lambdas: &[f64]) -> Result<Vec<ErrorCount>> {
    require_loocv(train)?;
    let table = eed_parts_table(train)?;
    lambdas
        .iter()
        .map(|&l| {
            let p = crate::seqdist::EedParams::new(l)?;
            Ok(table.loocv(&train.labels, |parts| parts.weighted(p)))
        })
        .collect()
}

/// Classifies every test item against `train`. Predictions are in test order.
pub fn classify_all(test: &PreparedSet, train: &PreparedSet, metric: &Metric) -> Result<Vec<i64>> {
    if train.is_empty() {
        return Err(Error::invalid("1-NN needs a nonempty training set"));
    }
    map_indexed(test.len(), |i| nn1_classify(&test.items[i], train, metric))
        .into_iter()
        .collect()
}
