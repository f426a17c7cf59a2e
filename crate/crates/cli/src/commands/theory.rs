use std::path::Path;

use anyhow::Result;
use gpa_core::theory::{transitivity_class, GlobalClustering, SeriesSum, Transitivity};
use gpa_core::{resolve_params, Params, Shift, TheoryTable64};
use serde::Serialize;

use super::{cell, output_path, write_csv, write_json, Envelope, Status};
use crate::config::{ClassifyConfig, TheoryConfig};

#[derive(Serialize)]
struct ResolvedParams {
    m: usize,
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "D")]
    d: f64,
    #[serde(rename = "B")]
    b: f64,
    p_tri: f64,
    #[serde(with = "gpa_core::io::shift_token")]
    shift_a: Shift<f64>,
}

impl From<&Params> for ResolvedParams {
    fn from(p: &Params) -> Self {
        ResolvedParams {
            m: p.m(),
            a: *p.a(),
            d: *p.d(),
            b: *p.b(),
            p_tri: *p.p_tri(),
            shift_a: p.shift().clone(),
        }
    }
}

#[derive(Serialize)]
struct TheorySummary {
    params: ResolvedParams,
    /// Predicted average local clustering.
    series: SeriesSum<f64>,
    global_clustering: GlobalClustering<f64>,
    transitivity: Transitivity,
    /// Whether the `C(d)` asymptotics are established for this `A`.
    clustering_law_proven: bool,
}

pub fn theory(config: &TheoryConfig, out_dir: &Path) -> Result<Status> {
    let params = resolve_params(config.m, config.a, config.d)?;
    let table = TheoryTable64::build(&params, config.d_max.max(config.m), config.rel_tol)?;
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|r| {
            vec![
                r.d.to_string(),
                format!("{}", r.c_md),
                format!("{}", r.k_d),
                cell(r.c_theory),
                cell(r.f_d),
            ]
        })
        .collect();
    write_csv(
        &output_path(out_dir, "theory.csv")?,
        &["d", "c_md", "K_d", "C_theory_d", "f_d"],
        &rows,
    )?;
    let summary = TheorySummary {
        params: (&params).into(),
        series: table.series,
        global_clustering: table.global,
        transitivity: table.transitivity,
        clustering_law_proven: table.clustering_law_proven,
    };
    write_json(
        &Envelope::new("theory", config, summary),
        &output_path(out_dir, "theory.json")?,
    )?;
    if !table.clustering_law_proven {
        eprintln!("note: the C(d) law is not established for A >= 0.75; values are indicative");
    }
    println!(
        "shift_a={} B={} average_clustering={:.6} (tail {:.2e})",
        params.shift(),
        params.b(),
        table.series.sum,
        table.series.tail_bound
    );
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct Classification {
    params: ResolvedParams,
    transitivity: Transitivity,
}

pub fn classify(config: &ClassifyConfig, out_dir: &Path) -> Result<Status> {
    let params = resolve_params(config.m, config.a, config.d)?;
    let class = transitivity_class(&params);
    let result = Classification {
        params: (&params).into(),
        transitivity: class,
    };
    write_json(
        &Envelope::new("classify", config, result),
        &output_path(out_dir, "classify.json")?,
    )?;
    println!("{}", serde_json::to_value(class)?.as_str().unwrap_or_default());
    Ok(Status::Ok)
}
