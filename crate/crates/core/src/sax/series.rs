use crate::error::{Error, Result};

/// Standard deviations below this are treated as a constant series.
pub const CONSTANT_SIGMA: f64 = 1e-10;

pub fn validate_series(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::invalid("time series is empty"));
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::invalid(format!("time series value at index {i} is not finite")));
    }
    Ok(())
}

/// Shifts to mean 0 and scales to population standard deviation 1.
///
/// A (near-)constant series maps to all zeros.
pub fn z_normalize(values: &[f64]) -> Vec<f64> {
    if values.is_empty() {
        return Vec::new();
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let sigma = var.sqrt();
    if sigma < CONSTANT_SIGMA {
        return vec![0.0; values.len()];
    }
    values.iter().map(|v| (v - mean) / sigma).collect()
}

/// Piecewise aggregate approximation into `segments` frames.
///
/// Frames have width `n / segments`. When that is not an integer, a point
/// straddling a frame boundary contributes to both frames in proportion to
/// its overlap, so every frame carries the same total weight.
pub fn paa(values: &[f64], segments: usize) -> Result<Vec<f64>> {
    let n = values.len();
    if segments == 0 || segments > n {
        return Err(Error::invalid(format!("segment count {segments} must be in 1..={n}")));
    }
    if segments == n {
        return Ok(values.to_vec());
    }
    if n.is_multiple_of(segments) {
        let width = n / segments;
        return Ok(values
            .chunks_exact(width)
            .map(|frame| frame.iter().sum::<f64>() / width as f64)
            .collect());
    }

    // Scale the axis by `segments`: point i covers [i*w, (i+1)*w) and
    // frame j covers [j*n, (j+1)*n), so every overlap is an integer.
    let mut out = Vec::with_capacity(segments);
    for j in 0..segments {
        let (lo, hi) = (j * n, (j + 1) * n);
        let first = lo / segments;
        let last = (hi - 1) / segments;
        let mut acc = 0.0;
        for (i, v) in values.iter().enumerate().take(last + 1).skip(first) {
            let start = (i * segments).max(lo);
            let end = ((i + 1) * segments).min(hi);
            acc += v * (end - start) as f64;
        }
        out.push(acc / n as f64);
    }
    Ok(out)
}

pub fn euclidean(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "series lengths differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt())
}
