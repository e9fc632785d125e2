//! Distances between symbolic sequences: edit distance, the character
//! frequency divergence, the extended edit distance built from both, and LCSS.
//!
//! Every kernel works on exact integers. The only floating-point step is the
//! final `ed + lambda * divergence` of [`eed`].

mod edit;
mod histogram;
mod sequence;

use serde::{Deserialize, Serialize};

pub use edit::{edit_distance, lcss, levenshtein, longest_common_subsequence};
pub use histogram::{char_histogram, distinct_char_count, histogram_divergence, FrequencyHistogram};
pub use sequence::{Symbol, SymbolicSequence, MAX_ALPHABET};

use crate::error::{Error, Result};

/// The frequency factor weighting the divergence term.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct EedParams {
    lambda: f64,
}

impl EedParams {
    pub fn new(lambda: f64) -> Result<Self> {
        if lambda.is_finite() && lambda >= 0.0 {
            Ok(Self { lambda })
        } else {
            Err(Error::invalid(format!(
                "frequency factor must be finite and >= 0, got {lambda}"
            )))
        }
    }

    pub fn lambda(self) -> f64 {
        self.lambda
    }
}

impl TryFrom<f64> for EedParams {
    type Error = Error;

    fn try_from(lambda: f64) -> Result<Self> {
        Self::new(lambda)
    }
}

impl From<EedParams> for f64 {
    fn from(p: EedParams) -> f64 {
        p.lambda
    }
}

/// The two integer components of the extended edit distance.
///
/// Computing these once and weighting afterwards lets callers sweep the
/// frequency factor without recomputing the quadratic part.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EedParts {
    pub edit: usize,
    pub divergence: usize,
}

impl EedParts {
    pub fn compute(s: &SymbolicSequence, t: &SymbolicSequence) -> Self {
        Self {
            edit: edit_distance(s, t),
            divergence: histogram_divergence(s, t),
        }
    }

    pub fn weighted(self, params: EedParams) -> f64 {
        self.edit as f64 + params.lambda * self.divergence as f64
    }
}

/// Extended edit distance: `ED(s, t) + lambda * D(s, t)`.
pub fn eed(s: &SymbolicSequence, t: &SymbolicSequence, params: EedParams) -> f64 {
    EedParts::compute(s, t).weighted(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(text: &str) -> SymbolicSequence {
        SymbolicSequence::from_letters(text, 26).unwrap()
    }

    fn unit() -> EedParams {
        EedParams::new(1.0).unwrap()
    }

    #[test]
    fn worked_eed_values() {
        let cases = [
            ("marwan", "aarwin", 4.0),
            ("marwan", "rarwen", 6.0),
            ("narwan", "aarwnn", 2.0),
            ("narwan", "aarwxn", 4.0),
            ("narwan", "xarwnn", 4.0),
            ("narwan", "xarwxn", 6.0),
            ("abca", "aabbcc", 5.0),
            ("abca", "adbcef", 7.0),
        ];
        for (s, t, expected) in cases {
            assert_eq!(eed(&seq(s), &seq(t), unit()), expected, "{s} vs {t}");
        }
    }

    #[test]
    fn zero_lambda_is_edit_distance() {
        let p = EedParams::new(0.0).unwrap();
        assert_eq!(eed(&seq("abca"), &seq("adbcef"), p), 3.0);
    }

    #[test]
    fn self_distance_is_zero() {
        for lambda in [0.0, 0.5, 3.0] {
            let p = EedParams::new(lambda).unwrap();
            assert_eq!(eed(&seq("marwan"), &seq("marwan"), p), 0.0);
        }
    }

    #[test]
    fn rejects_bad_lambda() {
        assert!(EedParams::new(-0.25).is_err());
        assert!(EedParams::new(f64::NAN).is_err());
        assert!(EedParams::new(f64::INFINITY).is_err());
    }
}
