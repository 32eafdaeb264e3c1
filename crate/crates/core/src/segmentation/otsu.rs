use crate::error::{Error, Result};

pub const BINS: usize = 256;

/// 256-bin histogram of a `[0, 1]` channel using `bin(x) = min(floor(256 x), 255)`.
pub fn unit_histogram(values: impl Iterator<Item = f32>) -> [u64; BINS] {
    let mut hist = [0u64; BINS];
    for v in values {
        hist[unit_bin(v)] += 1;
    }
    hist
}

#[inline]
pub fn unit_bin(x: f32) -> usize {
    ((x * BINS as f32) as usize).min(BINS - 1)
}

/// Otsu's threshold: the bin `t` maximizing between-class variance with
/// class 0 = bins `[0, t]` and class 1 = bins `[t+1, 255]`.
///
/// The variance is evaluated as `(S0 N1 - S1 N0)^2 / (N0 N1)`, which is
/// `w0 w1 (mu0 - mu1)^2` scaled by the constant `N^2`. Class sums are kept as
/// exact integers so thresholds separated only by empty bins tie exactly and
/// the smallest one wins.
pub fn otsu_threshold(hist: &[u64; BINS]) -> Result<u8> {
    let total: u64 = hist.iter().sum();
    if total == 0 {
        return Err(Error::EmptyHistogram);
    }
    let total_sum: u128 = hist.iter().enumerate().map(|(i, &c)| i as u128 * c as u128).sum();

    let mut n0: u128 = 0;
    let mut s0: u128 = 0;
    let mut best = 0u8;
    let mut best_var = 0.0f64;
    for (t, &count) in hist.iter().enumerate() {
        n0 += count as u128;
        s0 += t as u128 * count as u128;
        let n1 = total as u128 - n0;
        if n0 == 0 || n1 == 0 {
            continue;
        }
        let s1 = total_sum - s0;
        let diff = (s0 * n1) as i128 - (s1 * n0) as i128;
        let diff = diff as f64;
        let var = diff * diff / (n0 as f64 * n1 as f64);
        if var > best_var {
            best_var = var;
            best = t as u8;
        }
    }
    Ok(best)
}
