use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{generate, AttachmentRule, GraphState, ModelParams, RngStream};
use crate::stats::{coefficient_of_variation, linear_fit, mean_sd};

use super::enumerate::degree_triangle_profile;

pub const DEFAULT_DELTA: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcentrationOptions {
    pub base_seed: u64,
    /// Slack in the exponent of `d_cut = n^((A - delta) / (4A + 2))`.
    pub delta: f64,
    /// Checks degrees up to this value instead of `d_cut` when set.
    pub d_limit: Option<usize>,
    pub cv_n_max: f64,
    pub cv_t_max: f64,
}

impl Default for ConcentrationOptions {
    fn default() -> Self {
        ConcentrationOptions {
            base_seed: 1,
            delta: DEFAULT_DELTA,
            d_limit: None,
            cv_n_max: 0.05,
            cv_t_max: 0.10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcentrationRow {
    pub d: usize,
    pub mean_n: f64,
    pub sd_n: f64,
    pub cv_n: f64,
    pub mean_t: f64,
    pub sd_t: f64,
    pub cv_t: f64,
    pub flagged: bool,
}

/// Spread of `N_n(d)` and `T_n(d)` across independent replicates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcentrationReport {
    pub n: usize,
    pub seeds: usize,
    pub options: ConcentrationOptions,
    pub d_cut: f64,
    pub rows: Vec<ConcentrationRow>,
    pub max_cv_n: f64,
    pub max_cv_t: f64,
    /// Degrees whose coefficient of variation exceeds a threshold.
    pub flagged: Vec<usize>,
}

impl ConcentrationReport {
    pub fn passed(&self) -> bool {
        self.flagged.is_empty()
    }

    pub fn row(&self, d: usize) -> Option<&ConcentrationRow> {
        self.rows.iter().find(|r| r.d == d)
    }
}

/// `n^((A - delta) / (4A + 2))`.
pub fn degree_cutoff(a: f64, n: usize, delta: f64) -> f64 {
    (n as f64).powf((a - delta) / (4.0 * a + 2.0))
}

/// Generates `seeds` graphs with seeds `base_seed + r` and measures the
/// cross-replicate coefficient of variation of `N_n(d)` and `T_n(d)`.
pub fn concentration_sweep(
    params: &ModelParams<f64>,
    n: usize,
    seeds: usize,
    options: &ConcentrationOptions,
) -> Result<ConcentrationReport> {
    if seeds < 5 {
        return Err(Error::invalid("concentration needs at least 5 seeds"));
    }
    let m = params.m();
    let d_cut = degree_cutoff(*params.a(), n, options.delta);
    let d_hi = options.d_limit.unwrap_or(d_cut.floor() as usize);
    if d_hi < m {
        return Err(Error::InsufficientData(format!(
            "degree cutoff {d_cut:.3} is below m = {m} at n = {n}"
        )));
    }

    let profiles = (0..seeds as u64)
        .into_par_iter()
        .map(|r| {
            let g = generate(params, n, options.base_seed.wrapping_add(r))?;
            Ok(degree_triangle_profile(&g))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    let mut flagged = Vec::new();
    for d in m..=d_hi {
        let ns: Vec<f64> = profiles
            .iter()
            .map(|(c, _)| c.get(&d).copied().unwrap_or(0) as f64)
            .collect();
        let ts: Vec<f64> = profiles
            .iter()
            .map(|(_, t)| t.get(&d).copied().unwrap_or(0) as f64)
            .collect();
        let (mean_n, sd_n) = mean_sd(&ns);
        let (mean_t, sd_t) = mean_sd(&ts);
        let cv_n = coefficient_of_variation(&ns);
        let cv_t = coefficient_of_variation(&ts);
        let bad = !(cv_n <= options.cv_n_max && cv_t <= options.cv_t_max);
        if bad {
            flagged.push(d);
        }
        rows.push(ConcentrationRow {
            d,
            mean_n,
            sd_n,
            cv_n,
            mean_t,
            sd_t,
            cv_t,
            flagged: bad,
        });
    }
    let max_cv_n = rows.iter().map(|r| r.cv_n).fold(0.0, f64::max);
    let max_cv_t = rows.iter().map(|r| r.cv_t).fold(0.0, f64::max);
    Ok(ConcentrationReport {
        n,
        seeds,
        options: options.clone(),
        d_cut,
        rows,
        max_cv_n,
        max_cv_t,
        flagged,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WnPoint {
    pub n: usize,
    pub mean: f64,
    pub sd: f64,
}

/// Growth of the squared-degree sum `W_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WnScaling {
    pub seeds: usize,
    pub points: Vec<WnPoint>,
    /// Slope of `ln E W_n` against `ln n`.
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    /// Slope of `E W_n / n` against `ln n`; positive under logarithmic
    /// growth.
    pub log_correction: f64,
}

/// Fits the log-log growth rate of `W_n` over `n_grid`. Each replicate is
/// one run observed at every grid size, so a grid point equals the graph
/// `generate` would return for that size and seed.
pub fn wn_scaling(
    params: &ModelParams<f64>,
    n_grid: &[usize],
    seeds: usize,
    base_seed: u64,
) -> Result<WnScaling> {
    let mut grid = n_grid.to_vec();
    grid.sort_unstable();
    grid.dedup();
    if seeds == 0 {
        return Err(Error::invalid("seeds must be positive"));
    }
    let (lo, hi) = match (grid.first(), grid.last()) {
        (Some(&lo), Some(&hi)) if grid.len() >= 2 => (lo, hi),
        _ => return Err(Error::InsufficientData("need at least two grid sizes".into())),
    };
    if lo < params.n0() {
        return Err(Error::invalid(format!("grid size {lo} is below the seed size")));
    }
    if ((hi as f64) / (lo as f64)).log10() < 1.5 {
        return Err(Error::InsufficientData(
            "grid must span at least 1.5 decades".into(),
        ));
    }

    let rule = AttachmentRule::new(params);
    let runs: Vec<Vec<f64>> = (0..seeds as u64)
        .into_par_iter()
        .map(|r| {
            let mut g = GraphState::with_capacity(params.m(), hi);
            let mut rng = RngStream::new(base_seed.wrapping_add(r));
            let mut buf = Vec::with_capacity(params.m());
            grid.iter()
                .map(|&n| {
                    while g.n() < n {
                        rule.step(&mut g, &mut rng, &mut buf);
                    }
                    g.sum_sq_degrees() as f64
                })
                .collect()
        })
        .collect();

    let points: Vec<WnPoint> = grid
        .iter()
        .enumerate()
        .map(|(k, &n)| {
            let xs: Vec<f64> = runs.iter().map(|r| r[k]).collect();
            let (mean, sd) = mean_sd(&xs);
            WnPoint { n, mean, sd }
        })
        .collect();
    let ln_n: Vec<f64> = points.iter().map(|p| (p.n as f64).ln()).collect();
    let ln_w: Vec<f64> = points.iter().map(|p| p.mean.ln()).collect();
    let per_vertex: Vec<f64> = points.iter().map(|p| p.mean / p.n as f64).collect();
    let fit = linear_fit(&ln_n, &ln_w)
        .ok_or_else(|| Error::InsufficientData("degenerate W_n fit".into()))?;
    let corr = linear_fit(&ln_n, &per_vertex)
        .ok_or_else(|| Error::InsufficientData("degenerate W_n fit".into()))?;
    Ok(WnScaling {
        seeds,
        points,
        slope: fit.slope,
        intercept: fit.intercept,
        r2: fit.r2,
        log_correction: corr.slope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::resolve_params;

    #[test]
    fn cutoff_formula() {
        let c = degree_cutoff(0.5, 100_000, 0.05);
        assert!((c - 100_000f64.powf(0.1125)).abs() < 1e-12);
    }

    #[test]
    fn checkpoints_match_generate() {
        let p = resolve_params(2, 0.6, 0.3).unwrap();
        let s = wn_scaling(&p, &[100, 4_000], 1, 9).unwrap();
        for pt in &s.points {
            let g = generate(&p, pt.n, 9).unwrap();
            assert_eq!(pt.mean, g.sum_sq_degrees() as f64);
        }
        assert_eq!(s.points[0].sd, 0.0);
    }

    #[test]
    fn wn_grid_errors() {
        let p = resolve_params(2, 0.5, 0.3).unwrap();
        assert!(matches!(wn_scaling(&p, &[1000, 10_000], 2, 1), Err(Error::InsufficientData(_))));
        assert!(matches!(wn_scaling(&p, &[1000], 2, 1), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn small_sweep_shapes() {
        let p = resolve_params(2, 0.5, 0.3).unwrap();
        let opts = ConcentrationOptions {
            d_limit: Some(6),
            ..Default::default()
        };
        let r = concentration_sweep(&p, 5_000, 5, &opts).unwrap();
        assert_eq!(r.rows.iter().map(|r| r.d).collect::<Vec<_>>(), vec![2, 3, 4, 5, 6]);
        assert!(r.row(2).unwrap().mean_n > 0.0);
        assert!(r.row(2).unwrap().cv_n < 0.1);
        let low = resolve_params(2, 0.2, 0.3).unwrap();
        assert!(matches!(
            concentration_sweep(&low, 5_000, 5, &ConcentrationOptions::default()),
            Err(Error::InsufficientData(_))
        ));
        assert!(concentration_sweep(&p, 5_000, 3, &opts).is_err());
    }
}
