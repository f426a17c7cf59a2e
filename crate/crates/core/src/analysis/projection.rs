use crate::model::Multigraph;

/// Simple undirected graph in compressed adjacency form with sorted,
/// duplicate-free neighbor lists and no self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl SimpleGraph {
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.offsets.windows(2).map(|w| (w[1] - w[0]) as u32).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Distinct edges `(u, v)` with `u < v`, in vertex order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| (v as usize) > u)
                .map(move |&v| (u as u32, v))
        })
    }
}

/// Collapses parallel edges and drops self-loops. Returns the projection and
/// the number of edge copies removed.
pub fn simple_projection<G: Multigraph + ?Sized>(graph: &G) -> (SimpleGraph, usize) {
    let n = graph.vertex_count();
    let mut counts = vec![0usize; n + 1];
    for e in graph.edges() {
        if e[0] != e[1] {
            counts[e[0] as usize] += 1;
            counts[e[1] as usize] += 1;
        }
    }
    let mut offsets = vec![0usize; n + 1];
    for v in 0..n {
        offsets[v + 1] = offsets[v] + counts[v];
    }
    let mut fill = offsets.clone();
    let mut raw = vec![0u32; offsets[n]];
    for e in graph.edges() {
        let (u, v) = (e[0], e[1]);
        if u != v {
            raw[fill[u as usize]] = v;
            fill[u as usize] += 1;
            raw[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
    }

    let mut neighbors = Vec::with_capacity(raw.len());
    let mut compact = vec![0usize; n + 1];
    for v in 0..n {
        let list = &mut raw[offsets[v]..offsets[v + 1]];
        list.sort_unstable();
        let start = neighbors.len();
        let mut last = None;
        for &w in list.iter() {
            if last != Some(w) {
                neighbors.push(w);
                last = Some(w);
            }
        }
        compact[v] = start;
    }
    compact[n] = neighbors.len();

    let simple = SimpleGraph {
        offsets: compact,
        neighbors,
    };
    let removed = graph.edge_count() - simple.edge_count();
    (simple, removed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{EdgeList, GraphState};

    #[test]
    fn seed_projection_is_k4() {
        let (s, removed) = simple_projection(&GraphState::seed(2));
        assert_eq!(s.n(), 4);
        assert_eq!(s.edge_count(), 6);
        assert_eq!(removed, 2);
        for v in 0..4 {
            assert_eq!(s.degree(v), 3);
        }
    }

    #[test]
    fn triangle_seed_unchanged() {
        let g = GraphState::seed(1);
        let (s, removed) = simple_projection(&g);
        assert_eq!(removed, 0);
        assert_eq!(s.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn duplicate_and_loop_removed() {
        let g = EdgeList::from_pairs(3, &[(0, 1), (1, 0), (2, 2), (1, 2)]);
        let (s, removed) = simple_projection(&g);
        assert_eq!(removed, 2);
        assert_eq!(s.neighbors(1), &[0, 2]);
        assert!(s.has_edge(2, 1));
        assert!(!s.has_edge(0, 2));
        assert_eq!(s.degree(2), 1);
    }
}
