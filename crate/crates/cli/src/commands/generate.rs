use std::path::Path;
use std::time::Instant;

use anyhow::Result;
use gpa_core::io::{sidecar_path, write_graph, GraphMeta};
use gpa_core::{resolve_params, Multigraph};

use super::{output_path, Status};
use crate::config::GenerateConfig;

pub fn generate(config: &GenerateConfig, out_dir: &Path) -> Result<Status> {
    let params = resolve_params(config.m, config.a, config.d)?;
    let start = Instant::now();
    let graph = gpa_core::generate(&params, config.n, config.seed)?;
    let path = output_path(out_dir, &format!("{}.{}", config.name, config.format.extension()))?;
    write_graph(&graph, config.m, &path, config.format)?;
    let mut meta = GraphMeta::new(&params, config.n, config.seed, config.format);
    meta.config = serde_json::to_value(config)?;
    meta.write(&sidecar_path(&path))?;
    println!(
        "n={} m={} edges={} seconds={:.3} file={}",
        graph.n(),
        config.m,
        graph.edge_count(),
        start.elapsed().as_secs_f64(),
        path.display()
    );
    Ok(Status::Ok)
}
