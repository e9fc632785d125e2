use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seqdist::{edit_distance, eed, lcss, EedParams, SymbolicSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MetricKind {
    Ed,
    Eed,
    SaxMindist,
    LcssSim,
    Euclidean,
}

impl MetricKind {
    pub const ALL: [MetricKind; 5] = [
        MetricKind::Euclidean,
        MetricKind::Ed,
        MetricKind::Eed,
        MetricKind::SaxMindist,
        MetricKind::LcssSim,
    ];

    /// Short name used in tables and on the command line.
    pub fn label(self) -> &'static str {
        match self {
            MetricKind::Ed => "ED",
            MetricKind::Eed => "EED",
            MetricKind::SaxMindist => "SAX",
            MetricKind::LcssSim => "LCSS",
            MetricKind::Euclidean => "EUCLIDEAN",
        }
    }

    /// Whether the metric works on SAX words rather than raw series.
    pub fn is_symbolic(self) -> bool {
        !matches!(self, MetricKind::Euclidean)
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "ed" => MetricKind::Ed,
            "eed" => MetricKind::Eed,
            "sax" | "mindist" | "sax_mindist" => MetricKind::SaxMindist,
            "lcss" | "lcss_sim" => MetricKind::LcssSim,
            "euclidean" | "euclid" => MetricKind::Euclidean,
            other => {
                return Err(Error::invalid(format!(
                    "unknown metric {other:?} (expected ed, eed, sax, lcss or euclidean)"
                )))
            }
        })
    }
}

/// A fully parameterized distance. Only EED carries a frequency factor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Metric {
    Ed,
    Eed(EedParams),
    SaxMindist,
    LcssSim,
    Euclidean,
}

impl Metric {
    pub fn from_kind(kind: MetricKind, lambda: Option<f64>) -> Result<Self> {
        match (kind, lambda) {
            (MetricKind::Eed, Some(l)) => Ok(Metric::Eed(EedParams::new(l)?)),
            (MetricKind::Eed, None) => Err(Error::invalid("EED needs a frequency factor")),
            (k, Some(_)) => Err(Error::invalid(format!("{k} takes no frequency factor"))),
            (MetricKind::Ed, None) => Ok(Metric::Ed),
            (MetricKind::SaxMindist, None) => Ok(Metric::SaxMindist),
            (MetricKind::LcssSim, None) => Ok(Metric::LcssSim),
            (MetricKind::Euclidean, None) => Ok(Metric::Euclidean),
        }
    }

    pub fn eed(lambda: f64) -> Result<Self> {
        Ok(Metric::Eed(EedParams::new(lambda)?))
    }

    pub fn kind(&self) -> MetricKind {
        match self {
            Metric::Ed => MetricKind::Ed,
            Metric::Eed(_) => MetricKind::Eed,
            Metric::SaxMindist => MetricKind::SaxMindist,
            Metric::LcssSim => MetricKind::LcssSim,
            Metric::Euclidean => MetricKind::Euclidean,
        }
    }

    pub fn lambda(&self) -> Option<f64> {
        match self {
            Metric::Eed(p) => Some(p.lambda()),
            _ => None,
        }
    }

    /// True for the distances that satisfy all metric axioms on strings.
    pub fn is_string_metric(&self) -> bool {
        matches!(self, Metric::Ed | Metric::Eed(_))
    }

    /// Distance between two plain sequences, for the metrics defined on them.
    pub fn sequence_distance(&self, a: &SymbolicSequence, b: &SymbolicSequence) -> Option<f64> {
        match self {
            Metric::Ed => Some(edit_distance(a, b) as f64),
            Metric::Eed(p) => Some(eed(a, b, *p)),
            Metric::LcssSim => Some(lcss_distance(a, b)),
            Metric::SaxMindist | Metric::Euclidean => None,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Eed(p) => write!(f, "EED(lambda={})", p.lambda()),
            other => f.write_str(other.kind().label()),
        }
    }
}

/// LCSS turned into a dissimilarity in `[0, 1]`: `1 - lcss / max(|a|, |b|)`.
pub fn lcss_distance(a: &SymbolicSequence, b: &SymbolicSequence) -> f64 {
    let longest = a.len().max(b.len());
    if longest == 0 {
        return 0.0;
    }
    1.0 - lcss(a, b) as f64 / longest as f64
}
