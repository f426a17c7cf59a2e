use std::path::Path;

use anyhow::{bail, Result};
use gpa_core::analysis::{analyze as measure, default_fit_range, fit_powerlaw, PowerLawFit};
use gpa_core::io::{read_graph, sidecar_path, GraphMeta};
use gpa_core::theory::local_clustering_theory;
use gpa_core::{resolve_params, Multigraph};
use serde::Serialize;

use super::{cell, output_path, write_csv, write_json, Envelope, Status};
use crate::config::AnalyzeConfig;

#[derive(Serialize)]
struct Summary {
    n: usize,
    m: Option<usize>,
    edges: usize,
    #[serde(rename = "C1")]
    c1: f64,
    #[serde(rename = "C2")]
    c2: f64,
    #[serde(rename = "W_n")]
    w_n: u64,
    triangles: u64,
    cherries: u64,
    multi_edges_removed: usize,
    excluded_vertices: usize,
    powerlaw: Option<PowerLawFit>,
    powerlaw_error: Option<String>,
    /// Parameters used for the `C_theory_d` column, when known.
    #[serde(rename = "A")]
    a: Option<f64>,
    #[serde(rename = "D")]
    d: Option<f64>,
}

pub fn analyze(config: &AnalyzeConfig, out_dir: &Path) -> Result<Status> {
    let Some(input) = &config.input else {
        bail!("analyze needs an input graph file");
    };
    let sidecar = sidecar_path(input);
    let meta = if sidecar.exists() && sidecar != *input {
        Some(GraphMeta::read(&sidecar)?)
    } else {
        None
    };
    let (graph, stored_m) = read_graph(input, meta.as_ref().map(|m| m.n))?;
    let m = config.m.or(stored_m).or(meta.as_ref().map(|x| x.m));
    let a = config.a.or(meta.as_ref().map(|x| x.a));
    let d = config.d.or(meta.as_ref().map(|x| x.d));
    let params = match (m, a, d) {
        (Some(m), Some(a), Some(d)) => Some(resolve_params(m, a, d)?),
        _ => None,
    };

    let result = measure::<_, f64>(&graph, config.degree_mode);
    let stats = &result.stats;
    let report = &result.clustering;

    let fit_m = m.unwrap_or_else(|| graph.degree_sequence().into_iter().min().unwrap_or(1).max(1) as usize);
    let (lo, hi) = default_fit_range(stats, fit_m);
    let (powerlaw, powerlaw_error) = match fit_powerlaw(stats, lo, hi) {
        Ok(f) => (Some(f), None),
        Err(e) => (None, Some(e.to_string())),
    };

    // Rows follow the conditioning degree; N_d and S_d always refer to the
    // multigraph degree histogram.
    let mut degrees: Vec<usize> = stats.present().collect();
    degrees.extend(report.vertices_by_degree.keys().copied());
    degrees.sort_unstable();
    degrees.dedup();
    let rows: Vec<Vec<String>> = degrees
        .iter()
        .map(|&deg| {
            let grouped = report.vertices_by_degree.get(&deg).copied().unwrap_or(0);
            let c_of_d = (grouped >= config.min_count.max(1))
                .then(|| report.c_of_d.get(&deg).copied())
                .flatten();
            let theory = params
                .as_ref()
                .filter(|p| deg >= p.m() && deg >= 2)
                .and_then(|p| local_clustering_theory(p, deg).ok());
            vec![
                deg.to_string(),
                stats.count(deg).to_string(),
                report.triangles_by_degree.get(&deg).copied().unwrap_or(0).to_string(),
                cell(c_of_d),
                cell(theory),
                stats.s(deg).to_string(),
            ]
        })
        .collect();
    write_csv(
        &output_path(out_dir, "stats.csv")?,
        &["d", "N_d", "T_d", "C_of_d", "C_theory_d", "S_d"],
        &rows,
    )?;

    let summary = Summary {
        n: graph.n,
        m,
        edges: graph.edge_count(),
        c1: report.c1,
        c2: report.c2,
        w_n: stats.w_n,
        triangles: report.triangle_total,
        cherries: report.cherry_total,
        multi_edges_removed: result.multi_edges_removed,
        excluded_vertices: report.excluded,
        powerlaw,
        powerlaw_error,
        a: params.as_ref().map(|p| *p.a()),
        d: params.as_ref().map(|p| *p.d()),
    };
    write_json(
        &Envelope::new("analyze", config, summary),
        &output_path(out_dir, "summary.json")?,
    )?;
    println!(
        "n={} edges={} C1={:.6} C2={:.6}",
        graph.n,
        graph.edge_count(),
        report.c1,
        report.c2
    );
    Ok(Status::Ok)
}
