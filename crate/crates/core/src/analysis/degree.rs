use crate::model::Multigraph;

/// Degree histogram of a multigraph together with the squared-degree sum
/// `W_n` and per-degree neighbor-degree sums `S[d]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub n: usize,
    pub edges: usize,
    /// `counts[d]` vertices have degree `d`.
    pub counts: Vec<u64>,
    /// Sum of squared degrees.
    pub w_n: u64,
    /// `neighbor_degree_sum[d]`: sum over degree-`d` vertices of the degrees
    /// of their neighbors, counted with edge multiplicity.
    pub neighbor_degree_sum: Vec<u64>,
}

impl DegreeStats {
    pub fn count(&self, d: usize) -> u64 {
        self.counts.get(d).copied().unwrap_or(0)
    }

    pub fn fraction(&self, d: usize) -> f64 {
        self.count(d) as f64 / self.n as f64
    }

    pub fn s(&self, d: usize) -> u64 {
        self.neighbor_degree_sum.get(d).copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    /// Degrees with at least one vertex, ascending.
    pub fn present(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(d, _)| d)
    }
}

pub fn degree_histogram<G: Multigraph + ?Sized>(graph: &G) -> DegreeStats {
    let degrees = graph.degree_sequence();
    let max = degrees.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0u64; max + 1];
    let mut w_n = 0u64;
    for &d in &degrees {
        counts[d as usize] += 1;
        w_n += d as u64 * d as u64;
    }
    let mut s = vec![0u64; max + 1];
    for e in graph.edges() {
        let (du, dv) = (degrees[e[0] as usize], degrees[e[1] as usize]);
        s[du as usize] += dv as u64;
        s[dv as usize] += du as u64;
    }
    DegreeStats {
        n: graph.vertex_count(),
        edges: graph.edge_count(),
        counts,
        w_n,
        neighbor_degree_sum: s,
    }
}
