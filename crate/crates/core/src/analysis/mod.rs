//! Measurements on generated or ingested graphs.

mod clustering;
mod degree;
mod powerlaw;
mod projection;
mod triangles;

pub use clustering::{clustering_by_degree, ClusteringReport, DegreeMode};
pub use degree::{degree_histogram, DegreeStats};
pub use powerlaw::{
    default_fit_range, fit_powerlaw, PowerLawFit, HEAD_SKIP_FACTOR, LOG_BIN_BASE, MIN_BINS,
    TAIL_MIN_COUNT,
};
pub use projection::{simple_projection, SimpleGraph};
pub use triangles::triangles_per_vertex;

use crate::model::Multigraph;
use crate::scalar::Real;

/// Everything measured on one graph.
#[derive(Debug, Clone)]
pub struct GraphAnalysis<T> {
    pub stats: DegreeStats,
    pub clustering: ClusteringReport<T>,
    pub multi_edges_removed: usize,
}

pub fn analyze<G: Multigraph + ?Sized, T: Real>(graph: &G, mode: DegreeMode) -> GraphAnalysis<T> {
    let stats = degree_histogram(graph);
    let (simple, removed) = simple_projection(graph);
    let t = triangles_per_vertex(&simple);
    let degrees = match mode {
        DegreeMode::Multigraph => graph.degree_sequence(),
        DegreeMode::Simple => simple.degrees(),
    };
    let clustering = clustering_by_degree(t, &degrees, &simple, mode);
    GraphAnalysis {
        stats,
        clustering,
        multi_edges_removed: removed,
    }
}
