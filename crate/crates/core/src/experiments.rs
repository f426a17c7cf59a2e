//! Replicated runs and parameter sweeps.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{analyze, DegreeMode};
use crate::error::{Error, Result};
use crate::model::{generate, resolve_params, ModelParams};
use crate::stats::mean_sd;
use crate::theory::{avg_clustering_series, clustering_law_proven};

/// Measurements of one generated graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Replicate {
    pub seed: u64,
    /// `counts[d]` vertices of degree `d`.
    pub counts: Vec<u64>,
    pub triangles_by_degree: BTreeMap<usize, u64>,
    pub c_of_d: BTreeMap<usize, f64>,
    pub c1: f64,
    pub c2: f64,
    pub w_n: u64,
    pub multi_edges_removed: usize,
}

pub fn measure(params: &ModelParams<f64>, n: usize, seed: u64, mode: DegreeMode) -> Result<Replicate> {
    let g = generate(params, n, seed)?;
    let a = analyze::<_, f64>(&g, mode);
    Ok(Replicate {
        seed,
        counts: a.stats.counts,
        triangles_by_degree: a.clustering.triangles_by_degree,
        c_of_d: a.clustering.c_of_d,
        c1: a.clustering.c1,
        c2: a.clustering.c2,
        w_n: a.stats.w_n,
        multi_edges_removed: a.multi_edges_removed,
    })
}

/// Graphs with seeds `base_seed + r` for `r < replicates`, in seed order.
pub fn replicates(
    params: &ModelParams<f64>,
    n: usize,
    replicates: usize,
    base_seed: u64,
    mode: DegreeMode,
) -> Result<Vec<Replicate>> {
    (0..replicates as u64)
        .into_par_iter()
        .map(|r| measure(params, n, base_seed.wrapping_add(r), mode))
        .collect()
}

/// Cross-replicate summaries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicateSummary {
    pub n: usize,
    pub replicates: usize,
    pub c1: (f64, f64),
    pub c2: (f64, f64),
    /// Mean `N_n(d) / n`.
    pub degree_fraction: BTreeMap<usize, f64>,
    /// Mean `N_n(d)`.
    pub mean_count: BTreeMap<usize, f64>,
    /// Mean of per-graph `C(d)` over graphs where it is defined.
    pub mean_c_of_d: BTreeMap<usize, f64>,
}

pub fn summarize(reps: &[Replicate], n: usize) -> ReplicateSummary {
    let c1: Vec<f64> = reps.iter().map(|r| r.c1).collect();
    let c2: Vec<f64> = reps.iter().map(|r| r.c2).collect();
    let d_max = reps.iter().map(|r| r.counts.len()).max().unwrap_or(0);
    let k = reps.len() as f64;
    let mut mean_count = BTreeMap::new();
    let mut degree_fraction = BTreeMap::new();
    for d in 0..d_max {
        let total: u64 = reps.iter().map(|r| r.counts.get(d).copied().unwrap_or(0)).sum();
        if total > 0 {
            mean_count.insert(d, total as f64 / k);
            degree_fraction.insert(d, total as f64 / k / n as f64);
        }
    }
    let mut per_d: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for r in reps {
        for (&d, &c) in &r.c_of_d {
            per_d.entry(d).or_default().push(c);
        }
    }
    let mean_c_of_d = per_d
        .into_iter()
        .map(|(d, xs)| (d, xs.iter().sum::<f64>() / xs.len() as f64))
        .collect();
    ReplicateSummary {
        n,
        replicates: reps.len(),
        c1: mean_sd(&c1),
        c2: mean_sd(&c2),
        degree_fraction,
        mean_count,
        mean_c_of_d,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepParam {
    A,
    D,
}

impl std::fmt::Display for SweepParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SweepParam::A => "A",
            SweepParam::D => "D",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub values: Vec<f64>,
    pub m: usize,
    /// Value of `A` when sweeping `D`, and vice versa.
    pub a: f64,
    pub d: f64,
    pub n: usize,
    pub replicates: usize,
    pub base_seed: u64,
    pub rel_tol: f64,
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub param: SweepParam,
    pub value: f64,
    pub a: f64,
    pub d: f64,
    /// `"ok"` or `"infeasible"`.
    pub status: &'static str,
    pub message: Option<String>,
    pub replicates: usize,
    pub c2_mean: Option<f64>,
    pub c2_sd: Option<f64>,
    pub c1_mean: Option<f64>,
    pub c1_sd: Option<f64>,
    /// Predicted average local clustering and its tail estimate.
    pub theory_c2: Option<f64>,
    pub theory_tail: Option<f64>,
    pub clustering_law_proven: Option<bool>,
}

impl SweepRow {
    /// The standard deviation is a placeholder zero with one replicate.
    pub fn sd_defined(&self) -> bool {
        self.replicates > 1
    }
}

/// Runs every (grid point, replicate) pair in parallel. Rows follow the
/// grid order; infeasible points yield a status row instead of results.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    if spec.values.is_empty() {
        return Err(Error::invalid("sweep grid is empty"));
    }
    if spec.replicates == 0 {
        return Err(Error::invalid("replicates must be at least 1"));
    }
    let points: Vec<(f64, f64, Result<ModelParams<f64>>)> = spec
        .values
        .iter()
        .map(|&v| {
            let (a, d) = match spec.param {
                SweepParam::A => (v, spec.d),
                SweepParam::D => (spec.a, v),
            };
            (a, d, resolve_params(spec.m, a, d))
        })
        .collect();

    let jobs: Vec<(usize, u64)> = points
        .iter()
        .enumerate()
        .filter(|(_, p)| p.2.is_ok())
        .flat_map(|(i, _)| (0..spec.replicates as u64).map(move |r| (i, r)))
        .collect();
    let measured: Vec<(usize, Replicate)> = jobs
        .par_iter()
        .map(|&(i, r)| {
            let params = points[i].2.as_ref().expect("feasible");
            measure(params, spec.n, spec.base_seed.wrapping_add(r), DegreeMode::Multigraph)
                .map(|rep| (i, rep))
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(points.len());
    for (i, (a, d, params)) in points.into_iter().enumerate() {
        let value = spec.values[i];
        let base = SweepRow {
            param: spec.param,
            value,
            a,
            d,
            status: "ok",
            message: None,
            replicates: 0,
            c2_mean: None,
            c2_sd: None,
            c1_mean: None,
            c1_sd: None,
            theory_c2: None,
            theory_tail: None,
            clustering_law_proven: None,
        };
        let params = match params {
            Ok(p) => p,
            Err(e) => {
                rows.push(SweepRow {
                    status: "infeasible",
                    message: Some(e.to_string()),
                    ..base
                });
                continue;
            }
        };
        let reps: Vec<&Replicate> = measured.iter().filter(|(j, _)| *j == i).map(|(_, r)| r).collect();
        let c1: Vec<f64> = reps.iter().map(|r| r.c1).collect();
        let c2: Vec<f64> = reps.iter().map(|r| r.c2).collect();
        let (c1_mean, c1_sd) = mean_sd(&c1);
        let (c2_mean, c2_sd) = mean_sd(&c2);
        let (theory_c2, theory_tail, message) = match avg_clustering_series(&params, spec.rel_tol) {
            Ok(s) => (Some(s.sum), Some(s.tail_bound), None),
            Err(e) => (None, None, Some(e.to_string())),
        };
        rows.push(SweepRow {
            replicates: reps.len(),
            c2_mean: Some(c2_mean),
            c2_sd: Some(c2_sd),
            c1_mean: Some(c1_mean),
            c1_sd: Some(c1_sd),
            theory_c2,
            theory_tail,
            clustering_law_proven: Some(clustering_law_proven(&params)),
            message,
            ..base
        });
    }
    Ok(rows)
}
