use std::sync::OnceLock;

use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

pub const MIN_ALPHABET: usize = 2;
pub const MAX_ALPHABET: usize = 26;

static TABLE: OnceLock<Vec<Vec<f64>>> = OnceLock::new();

/// Standard normal quantiles at `k / alpha` for `k = 1..alpha`.
///
/// The vector is exactly antisymmetric and carries an exact `0.0` in the
/// middle for even `alpha`.
pub fn gaussian_breakpoints(alpha: usize) -> Result<&'static [f64]> {
    if !(MIN_ALPHABET..=MAX_ALPHABET).contains(&alpha) {
        return Err(Error::invalid(format!(
            "alphabet size {alpha} outside {MIN_ALPHABET}..={MAX_ALPHABET}"
        )));
    }
    let table = TABLE.get_or_init(|| (0..=MAX_ALPHABET).map(compute).collect());
    Ok(&table[alpha])
}

fn compute(alpha: usize) -> Vec<f64> {
    if alpha < MIN_ALPHABET {
        return Vec::new();
    }
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let mut cuts = vec![0.0; alpha - 1];
    for k in 1..=alpha / 2 {
        if 2 * k == alpha {
            continue;
        }
        let q = normal.inverse_cdf(k as f64 / alpha as f64);
        cuts[k - 1] = q;
        cuts[alpha - 1 - k] = -q;
    }
    cuts
}
