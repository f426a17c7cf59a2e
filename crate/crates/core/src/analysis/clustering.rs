use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::projection::SimpleGraph;
use crate::scalar::Real;

/// Which degree a vertex is grouped under when computing `C(d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeMode {
    /// Degree in the multigraph, i.e. the model's `d_v`.
    #[default]
    Multigraph,
    /// Degree in the simple projection.
    Simple,
}

/// Degree-conditioned clustering of one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringReport<T> {
    pub mode: DegreeMode,
    /// Edges among the neighbors of each vertex (simple projection).
    pub t_vertex: Vec<u32>,
    /// Vertex count per conditioning degree.
    pub vertices_by_degree: BTreeMap<usize, u64>,
    /// `T[d]`: summed `t_vertex` over vertices of conditioning degree `d`.
    pub triangles_by_degree: BTreeMap<usize, u64>,
    /// `T[d] / (N[d] * d(d-1)/2)` for every present `d >= 2`.
    pub c_of_d: BTreeMap<usize, T>,
    /// Global clustering: three times the triangles over the 2-paths.
    pub c1: T,
    /// Mean local clustering over vertices with conditioning degree `>= 2`.
    pub c2: T,
    pub triangle_total: u64,
    pub cherry_total: u64,
    /// Vertices left out of `c2` because their degree is below 2.
    pub excluded: usize,
}

fn pairs(d: usize) -> u64 {
    (d as u64) * (d as u64).saturating_sub(1) / 2
}

/// Groups per-vertex triangle counts by the conditioning degree `degrees[v]`
/// and derives `C(d)`, `C1` and `C2`.
///
/// `C2` is accumulated per degree class as `sum_d T[d] / binom(d, 2)`, which
/// is the vertex-wise mean rearranged.
pub fn clustering_by_degree<T: Real>(
    t_vertex: Vec<u32>,
    degrees: &[u32],
    simple: &SimpleGraph,
    mode: DegreeMode,
) -> ClusteringReport<T> {
    assert_eq!(t_vertex.len(), degrees.len());
    assert_eq!(simple.n(), degrees.len());

    let mut vertices_by_degree = BTreeMap::new();
    let mut triangles_by_degree = BTreeMap::new();
    for (&t, &d) in t_vertex.iter().zip(degrees) {
        *vertices_by_degree.entry(d as usize).or_insert(0u64) += 1;
        *triangles_by_degree.entry(d as usize).or_insert(0u64) += t as u64;
    }

    let mut c_of_d = BTreeMap::new();
    let mut c2_sum = T::zero();
    let mut excluded = 0usize;
    for (&d, &count) in &vertices_by_degree {
        if d < 2 {
            excluded += count as usize;
            continue;
        }
        let t = T::from_u64(triangles_by_degree[&d]).unwrap();
        let p = T::from_u64(pairs(d)).unwrap();
        c_of_d.insert(d, t / (T::from_u64(count).unwrap() * p));
        c2_sum = c2_sum + t / p;
    }
    let defined = degrees.len() - excluded;
    let c2 = if defined > 0 {
        c2_sum / T::from_count(defined)
    } else {
        T::zero()
    };

    let corner_sum: u64 = t_vertex.iter().map(|&t| t as u64).sum();
    let cherry_total: u64 = (0..simple.n()).map(|v| pairs(simple.degree(v))).sum();
    let c1 = if cherry_total > 0 {
        T::from_u64(corner_sum).unwrap() / T::from_u64(cherry_total).unwrap()
    } else {
        T::zero()
    };

    ClusteringReport {
        mode,
        t_vertex,
        vertices_by_degree,
        triangles_by_degree,
        c_of_d,
        c1,
        c2,
        triangle_total: corner_sum / 3,
        cherry_total,
        excluded,
    }
}

impl<T: Real> ClusteringReport<T> {
    /// Local clustering of each vertex, `None` where the degree is below 2.
    pub fn local_clustering(&self, degrees: &[u32]) -> Vec<Option<T>> {
        self.t_vertex
            .iter()
            .zip(degrees)
            .map(|(&t, &d)| {
                (d >= 2).then(|| T::from_u32(t).unwrap() / T::from_u64(pairs(d as usize)).unwrap())
            })
            .collect()
    }
}
