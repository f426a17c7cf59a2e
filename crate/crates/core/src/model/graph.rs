use crate::model::params::seed_size;

/// Read-only view of an undirected multigraph stored as a flat endpoint array
/// (`endpoints[2k]`, `endpoints[2k + 1]` are the ends of edge `k`).
pub trait Multigraph {
    fn vertex_count(&self) -> usize;

    fn endpoints(&self) -> &[u32];

    fn edge_count(&self) -> usize {
        self.endpoints().len() / 2
    }

    fn edges(&self) -> std::slice::ChunksExact<'_, u32> {
        self.endpoints().chunks_exact(2)
    }

    /// Multigraph degrees (self-loops count twice).
    fn degree_sequence(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.vertex_count()];
        for &v in self.endpoints() {
            deg[v as usize] += 1;
        }
        deg
    }
}

/// Plain edge list, used for graphs read from disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub n: usize,
    pub endpoints: Vec<u32>,
}

impl EdgeList {
    pub fn from_pairs(n: usize, pairs: &[(u32, u32)]) -> Self {
        let endpoints = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
        EdgeList { n, endpoints }
    }
}

impl Multigraph for EdgeList {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn endpoints(&self) -> &[u32] {
        &self.endpoints
    }
}

/// Growing multigraph of the generator.
///
/// Edges live only in the flat `endpoints` array, which doubles as the
/// degree-proportional sampling table: a uniform entry is vertex `v` with
/// probability `d_v / 2|E|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphState {
    m: usize,
    degrees: Vec<u32>,
    endpoints: Vec<u32>,
}

impl GraphState {
    /// Circulant seed graph on `max(3, 2m)` vertices: vertex `i` is joined to
    /// `i+1, ..., i+m (mod n0)`. For `n0 = 2m` the offset-`m` chords appear
    /// twice, so the seed is a multigraph with `m * n0` edges and every
    /// degree equal to `2m`.
    pub fn seed(m: usize) -> Self {
        assert!(m >= 1, "m must be positive");
        let n0 = seed_size(m);
        let mut endpoints = Vec::with_capacity(2 * m * n0);
        for i in 0..n0 {
            for k in 1..=m {
                endpoints.push(i as u32);
                endpoints.push(((i + k) % n0) as u32);
            }
        }
        GraphState {
            m,
            degrees: vec![2 * m as u32; n0],
            endpoints,
        }
    }

    pub fn with_capacity(m: usize, n: usize) -> Self {
        let mut g = Self::seed(m);
        g.degrees.reserve(n.saturating_sub(g.n()));
        g.endpoints.reserve((2 * m * n).saturating_sub(g.endpoints.len()));
        g
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.degrees[v]
    }

    /// Edge `k` as `(u, v)`, in creation order.
    pub fn edge(&self, k: usize) -> (u32, u32) {
        (self.endpoints[2 * k], self.endpoints[2 * k + 1])
    }

    pub fn edge_pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.endpoints.chunks_exact(2).map(|e| (e[0], e[1]))
    }

    /// Number of parallel edges between `i` and `j`. Linear scan.
    pub fn multiplicity(&self, i: u32, j: u32) -> usize {
        self.edge_pairs()
            .filter(|&(u, v)| (u == i && v == j) || (u == j && v == i))
            .count()
    }

    /// Sum of squared degrees.
    pub fn sum_sq_degrees(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64 * d as u64).sum()
    }

    /// Appends a new vertex joined to every entry of `targets`.
    ///
    /// Targets must be existing vertices; repeats create parallel edges.
    pub fn add_vertex(&mut self, targets: &[u32]) {
        debug_assert_eq!(targets.len(), self.m);
        let new = self.n() as u32;
        for &t in targets {
            debug_assert!(t < new);
            self.endpoints.push(new);
            self.endpoints.push(t);
            self.degrees[t as usize] += 1;
        }
        self.degrees.push(targets.len() as u32);
    }

    /// Checks the structural invariants of a generated graph, returning a
    /// description of the first violation.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.n();
        let m = self.m;
        if self.endpoints.len() != 2 * m * n {
            return Err(format!(
                "expected {} endpoints, found {}",
                2 * m * n,
                self.endpoints.len()
            ));
        }
        let mut recount = vec![0u32; n];
        for e in self.endpoints.chunks_exact(2) {
            if e[0] == e[1] {
                return Err(format!("self-loop at {}", e[0]));
            }
            for &v in e {
                if v as usize >= n {
                    return Err(format!("endpoint {v} out of range"));
                }
                recount[v as usize] += 1;
            }
        }
        if recount != self.degrees {
            return Err("degree array disagrees with endpoints".into());
        }
        if let Some(v) = self.degrees.iter().position(|&d| (d as usize) < m) {
            return Err(format!("vertex {v} has degree below m"));
        }
        Ok(())
    }
}

impl Multigraph for GraphState {
    fn vertex_count(&self) -> usize {
        self.n()
    }

    fn endpoints(&self) -> &[u32] {
        &self.endpoints
    }

    fn degree_sequence(&self) -> Vec<u32> {
        self.degrees.clone()
    }
}
