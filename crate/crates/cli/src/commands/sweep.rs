use std::path::Path;

use anyhow::{bail, Result};
use gpa_core::experiments::{run_sweep, SweepRow, SweepSpec};
use serde::Serialize;

use super::{cell, output_path, write_csv, write_json, Envelope, Status};
use crate::config::SweepConfig;

#[derive(Serialize)]
struct SweepOutput<'a> {
    rows: &'a [SweepRow],
}

pub fn sweep(config: &SweepConfig, out_dir: &Path) -> Result<Status> {
    if config.values.is_empty() {
        bail!("sweep needs --values");
    }
    let spec = SweepSpec {
        param: config.param,
        values: config.values.clone(),
        m: config.m,
        a: config.a,
        d: config.d,
        n: config.n,
        replicates: config.replicates,
        base_seed: config.seed,
        rel_tol: config.rel_tol,
    };
    let rows = run_sweep(&spec)?;
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            if let Some(msg) = &r.message {
                eprintln!("warning: {}={}: {msg}", r.param, r.value);
            }
            vec![
                r.param.to_string(),
                r.value.to_string(),
                r.a.to_string(),
                r.d.to_string(),
                r.status.to_string(),
                r.replicates.to_string(),
                cell(r.c2_mean),
                cell(r.c2_sd),
                r.sd_defined().to_string(),
                cell(r.c1_mean),
                cell(r.c1_sd),
                cell(r.theory_c2),
                cell(r.theory_tail),
                r.clustering_law_proven.map(|b| b.to_string()).unwrap_or_default(),
            ]
        })
        .collect();
    write_csv(
        &output_path(out_dir, "sweep.csv")?,
        &[
            "param",
            "value",
            "A",
            "D",
            "status",
            "replicates",
            "C2_mean",
            "C2_sd",
            "sd_defined",
            "C1_mean",
            "C1_sd",
            "theory_C2",
            "theory_tail",
            "clustering_law_proven",
        ],
        &table,
    )?;
    write_json(
        &Envelope::new("sweep", config, SweepOutput { rows: &rows }),
        &output_path(out_dir, "sweep.json")?,
    )?;
    for r in &rows {
        println!(
            "{}={} status={} C2={} theory={}",
            r.param,
            r.value,
            r.status,
            cell(r.c2_mean),
            cell(r.theory_c2)
        );
    }
    Ok(Status::Ok)
}
