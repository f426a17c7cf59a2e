use serde::{Deserialize, Serialize};

use super::degree::DegreeStats;
use crate::error::{Error, Result};
use crate::stats::linear_fit;

/// Multiplicative width of the logarithmic bins.
pub const LOG_BIN_BASE: f64 = 1.3;
/// The default fit range stops before the first degree with fewer vertices.
pub const TAIL_MIN_COUNT: u64 = 30;
/// The default fit range starts at this multiple of `m`.
pub const HEAD_SKIP_FACTOR: usize = 5;
pub const MIN_BINS: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub r2: f64,
    pub d_min: usize,
    pub d_max: usize,
    pub bins: usize,
}

/// Default fit window `[5m, d*)` where `d*` is the first degree at or above
/// `5m` holding fewer than [`TAIL_MIN_COUNT`] vertices.
///
/// The head is skipped because the exact degree law bends well away from its
/// asymptotic slope over the first few multiples of `m`.
pub fn default_fit_range(stats: &DegreeStats, m: usize) -> (usize, usize) {
    let d_min = HEAD_SKIP_FACTOR * m.max(1);
    let mut d = d_min;
    while d <= stats.max_degree() && stats.count(d) >= TAIL_MIN_COUNT {
        d += 1;
    }
    (d_min, d.saturating_sub(1).max(d_min))
}

/// Least-squares slope of `log(N[d]/n)` against `log d` over logarithmic
/// bins of width [`LOG_BIN_BASE`] on `[d_min, d_max]`.
///
/// Each bin contributes one point: the mean of `log d` and of `log(N[d]/n)`
/// over its non-empty degrees. The exponent is minus the slope.
pub fn fit_powerlaw(stats: &DegreeStats, d_min: usize, d_max: usize) -> Result<PowerLawFit> {
    if d_min == 0 || d_max < d_min {
        return Err(Error::invalid(format!("bad fit range [{d_min}, {d_max}]")));
    }
    let n = stats.n as f64;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut lo = d_min as f64;
    while lo <= d_max as f64 {
        let hi = lo * LOG_BIN_BASE;
        let first = lo.ceil() as usize;
        let last = (hi.ceil() as usize).saturating_sub(1).min(d_max);
        let (mut sx, mut sy, mut k) = (0.0, 0.0, 0usize);
        for d in first..=last {
            let c = stats.count(d);
            if c > 0 {
                sx += (d as f64).ln();
                sy += (c as f64 / n).ln();
                k += 1;
            }
        }
        if k > 0 {
            xs.push(sx / k as f64);
            ys.push(sy / k as f64);
        }
        lo = hi;
    }
    if xs.len() < MIN_BINS {
        return Err(Error::InsufficientData(format!(
            "{} non-empty log bins in [{d_min}, {d_max}], need {MIN_BINS}",
            xs.len()
        )));
    }
    let fit = linear_fit(&xs, &ys).ok_or_else(|| Error::InsufficientData("degenerate bins".into()))?;
    Ok(PowerLawFit {
        exponent: -fit.slope,
        r2: fit.r2,
        d_min,
        d_max,
        bins: xs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(exponent: f64, d_max: usize, scale: f64) -> DegreeStats {
        let mut counts = vec![0u64; d_max + 1];
        for (d, c) in counts.iter_mut().enumerate().skip(1) {
            *c = (scale * (d as f64).powf(-exponent)).round() as u64;
        }
        DegreeStats {
            n: counts.iter().sum::<u64>() as usize,
            edges: 0,
            w_n: 0,
            neighbor_degree_sum: vec![0; d_max + 1],
            counts,
        }
    }

    #[test]
    fn exact_power_law() {
        let st = synthetic(3.0, 2000, 1e15);
        let fit = fit_powerlaw(&st, 2, 1000).unwrap();
        assert!((fit.exponent - 3.0).abs() < 0.01, "{fit:?}");
        assert!(fit.r2 > 0.9999);
    }

    #[test]
    fn too_few_bins() {
        let st = synthetic(3.0, 100, 1e9);
        assert!(matches!(fit_powerlaw(&st, 10, 15), Err(Error::InsufficientData(_))));
        assert!(fit_powerlaw(&st, 0, 15).is_err());
    }

    #[test]
    fn default_range_stops_at_sparse_tail() {
        let st = synthetic(3.0, 500, 1e6);
        let (lo, hi) = default_fit_range(&st, 2);
        assert_eq!(lo, 10);
        assert!(st.count(hi) >= TAIL_MIN_COUNT);
        assert!(st.count(hi + 1) < TAIL_MIN_COUNT);
    }
}
