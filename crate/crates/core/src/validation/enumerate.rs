//! Exact enumeration of the generator's outcome tree on small graphs.
//!
//! Probabilities are carried in any [`Scalar`], so the same code yields
//! floating-point values or exact rationals.

use std::collections::BTreeMap;

use crate::analysis::{simple_projection, triangles_per_vertex};
use crate::error::{Error, Result};
use crate::model::{GraphState, ModelParams, Multigraph, Shift};
use crate::scalar::Scalar;

/// Largest outcome tree [`enumerate_steps`] will expand.
pub const MAX_LEAVES: u128 = 10_000_000;
pub const MAX_DEPTH: usize = 3;

/// One target sequence of a single step with its probability. Sequences
/// reachable through both branches are merged.
#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome<T> {
    pub targets: Vec<u32>,
    pub prob: T,
}

/// Number of root-to-leaf paths of one step's outcome tree.
pub fn step_leaf_count<T: Scalar>(graph: &GraphState, params: &ModelParams<T>) -> u128 {
    let n = graph.n() as u128;
    let m = params.m() as u32;
    let edges = graph.edge_count() as u128;
    let p = params.p_tri();
    let mut total = 0u128;
    if *p > T::zero() {
        total = total.saturating_add(edges.saturating_mul(n.saturating_pow(m - 2)));
    }
    if *p < T::one() {
        total = total.saturating_add(n.saturating_pow(m));
    }
    total
}

/// Exact probability that an independent pick lands on each vertex.
pub fn pick_probabilities<T: Scalar>(graph: &GraphState, params: &ModelParams<T>) -> Vec<T> {
    let n = T::from_count(graph.n());
    match params.shift() {
        Shift::Uniform => vec![T::one() / n; graph.n()],
        Shift::Finite(a) => {
            let total = (T::from_count(2 * params.m()) + a.clone()) * n;
            graph
                .degrees()
                .iter()
                .map(|&d| (T::from_count(d as usize) + a.clone()) / total.clone())
                .collect()
        }
    }
}

fn extend_picks<T: Scalar>(
    prefix: Vec<u32>,
    prob: T,
    remaining: usize,
    picks: &[T],
    out: &mut BTreeMap<Vec<u32>, T>,
) {
    if remaining == 0 {
        let slot = out.entry(prefix).or_insert_with(T::zero);
        *slot = slot.clone() + prob;
        return;
    }
    for (v, q) in picks.iter().enumerate() {
        let mut next = prefix.clone();
        next.push(v as u32);
        extend_picks(next, prob.clone() * q.clone(), remaining - 1, picks, out);
    }
}

/// Every target sequence of one step from `graph`, with exact probability.
pub fn step_outcomes<T: Scalar>(graph: &GraphState, params: &ModelParams<T>) -> Vec<StepOutcome<T>> {
    let m = params.m();
    let picks = pick_probabilities(graph, params);
    let p = params.p_tri().clone();
    let mut merged = BTreeMap::new();
    if p > T::zero() {
        let per_edge = p.clone() / T::from_count(graph.edge_count());
        for e in graph.edges() {
            extend_picks(vec![e[0], e[1]], per_edge.clone(), m - 2, &picks, &mut merged);
        }
    }
    if p < T::one() {
        extend_picks(Vec::with_capacity(m), T::one() - p, m, &picks, &mut merged);
    }
    merged
        .into_iter()
        .map(|(targets, prob)| StepOutcome { targets, prob })
        .collect()
}

/// Exact law of the graph after a fixed number of steps.
#[derive(Debug, Clone)]
pub struct Enumeration<T> {
    pub depth: usize,
    /// Size of the unmerged outcome tree.
    pub leaves: u128,
    /// Distinct reachable graphs with their probabilities.
    pub graphs: Vec<(GraphState, T)>,
    /// `E N(d)` by multigraph degree.
    pub expected_counts: BTreeMap<usize, T>,
    /// `E T(d)`: expected edges among neighbors of degree-`d` vertices.
    pub expected_triangles: BTreeMap<usize, T>,
}

impl<T: Scalar> Enumeration<T> {
    pub fn total_probability(&self) -> T {
        self.graphs
            .iter()
            .fold(T::zero(), |acc, (_, p)| acc + p.clone())
    }
}

/// Per-degree vertex and triangle totals of one graph.
pub fn degree_triangle_profile(graph: &GraphState) -> (BTreeMap<usize, u64>, BTreeMap<usize, u64>) {
    let (simple, _) = simple_projection(graph);
    let t = triangles_per_vertex(&simple);
    let mut counts = BTreeMap::new();
    let mut tri = BTreeMap::new();
    for (v, &d) in graph.degrees().iter().enumerate() {
        *counts.entry(d as usize).or_insert(0) += 1;
        *tri.entry(d as usize).or_insert(0) += t[v] as u64;
    }
    (counts, tri)
}

/// Expands `depth` steps of the generator from `start` exactly.
pub fn enumerate_steps<T: Scalar>(
    start: &GraphState,
    params: &ModelParams<T>,
    depth: usize,
) -> Result<Enumeration<T>> {
    if start.m() != params.m() {
        return Err(Error::invalid("graph and parameters disagree on m"));
    }
    if depth > MAX_DEPTH {
        return Err(Error::invalid(format!("depth {depth} exceeds {MAX_DEPTH}")));
    }

    // Tree size depends only on (n, edges), which every branch shares.
    let mut leaves = 1u128;
    let mut probe = start.clone();
    for _ in 0..depth {
        leaves = leaves.saturating_mul(step_leaf_count(&probe, params));
        if leaves > MAX_LEAVES {
            return Err(Error::TreeTooLarge {
                leaves,
                limit: MAX_LEAVES,
            });
        }
        let targets = vec![0u32; params.m()];
        probe.add_vertex(&targets);
    }

    let mut layer: BTreeMap<Vec<u32>, (GraphState, T)> = BTreeMap::new();
    layer.insert(start.endpoints().to_vec(), (start.clone(), T::one()));
    for _ in 0..depth {
        let mut next: BTreeMap<Vec<u32>, (GraphState, T)> = BTreeMap::new();
        for (graph, prob) in layer.into_values() {
            for outcome in step_outcomes(&graph, params) {
                let mut g = graph.clone();
                g.add_vertex(&outcome.targets);
                let p = prob.clone() * outcome.prob;
                match next.get_mut(g.endpoints()) {
                    Some(slot) => slot.1 = slot.1.clone() + p,
                    None => {
                        next.insert(g.endpoints().to_vec(), (g, p));
                    }
                }
            }
        }
        layer = next;
    }

    let mut expected_counts = BTreeMap::new();
    let mut expected_triangles = BTreeMap::new();
    let graphs: Vec<(GraphState, T)> = layer.into_values().collect();
    for (g, p) in &graphs {
        let (counts, tri) = degree_triangle_profile(g);
        for (d, c) in counts {
            let slot = expected_counts.entry(d).or_insert_with(T::zero);
            *slot = slot.clone() + p.clone() * T::from_u64(c).unwrap();
            let t = T::from_u64(tri[&d]).unwrap();
            let slot = expected_triangles.entry(d).or_insert_with(T::zero);
            *slot = slot.clone() + p.clone() * t;
        }
    }

    Ok(Enumeration {
        depth,
        leaves,
        graphs,
        expected_counts,
        expected_triangles,
    })
}

/// Exact one-step increment law of a fixed graph.
#[derive(Debug, Clone)]
pub struct ExactTransition<T> {
    /// `gains[v][j]`: probability that vertex `v` gains exactly `j` edges.
    pub gains: Vec<Vec<T>>,
    /// For each adjacent pair `(i, j)`, `i < j`: probability that both gain
    /// exactly one edge.
    pub pairs: BTreeMap<(u32, u32), T>,
}

impl<T: Scalar> ExactTransition<T> {
    /// `sum_v sum_j j * P(v gains j)`, which must equal `m`.
    pub fn expected_edge_ends(&self) -> T {
        let mut total = T::zero();
        for row in &self.gains {
            for (j, p) in row.iter().enumerate() {
                total = total + T::from_count(j) * p.clone();
            }
        }
        total
    }
}

pub fn exact_transition<T: Scalar>(graph: &GraphState, params: &ModelParams<T>) -> Result<ExactTransition<T>> {
    let leaves = step_leaf_count(graph, params);
    if leaves > MAX_LEAVES {
        return Err(Error::TreeTooLarge {
            leaves,
            limit: MAX_LEAVES,
        });
    }
    let n = graph.n();
    let m = params.m();
    let (simple, _) = simple_projection(graph);
    let mut pairs: BTreeMap<(u32, u32), T> = simple.edges().map(|e| (e, T::zero())).collect();
    let mut gains = vec![vec![T::zero(); m + 1]; n];
    let mut hits = vec![0usize; n];
    let mut touched = Vec::with_capacity(m);
    for outcome in step_outcomes(graph, params) {
        touched.clear();
        for &t in &outcome.targets {
            if hits[t as usize] == 0 {
                touched.push(t);
            }
            hits[t as usize] += 1;
        }
        for &t in &touched {
            let slot = &mut gains[t as usize][hits[t as usize]];
            *slot = slot.clone() + outcome.prob.clone();
        }
        touched.sort_unstable();
        for (a, &i) in touched.iter().enumerate() {
            if hits[i as usize] != 1 {
                continue;
            }
            for &j in &touched[a + 1..] {
                if hits[j as usize] != 1 {
                    continue;
                }
                if let Some(slot) = pairs.get_mut(&(i, j)) {
                    *slot = slot.clone() + outcome.prob.clone();
                }
            }
        }
        for &t in &touched {
            hits[t as usize] = 0;
        }
    }
    // Staying put is the complement of every positive gain.
    for row in &mut gains {
        let moved = row[1..].iter().fold(T::zero(), |acc, p| acc + p.clone());
        row[0] = T::one() - moved;
    }
    Ok(ExactTransition { gains, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::resolve_params;
    use crate::scalar::rational_from_decimal;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive};

    fn exact_params(a: &str, d: &str) -> ModelParams<BigRational> {
        resolve_params(2, rational_from_decimal(a).unwrap(), rational_from_decimal(d).unwrap()).unwrap()
    }

    #[test]
    fn depth_zero_is_point_mass() {
        let p = resolve_params(2, 0.5, 0.3).unwrap();
        let e = enumerate_steps(&GraphState::seed(2), &p, 0).unwrap();
        assert_eq!(e.graphs.len(), 1);
        assert_eq!(e.total_probability(), 1.0);
        assert_eq!(e.expected_counts[&4], 4.0);
        assert_eq!(e.expected_triangles[&4], 12.0);
    }

    #[test]
    fn depth_one_normalized() {
        let p = resolve_params::<f64>(2, 0.5, 0.3).unwrap();
        let e = enumerate_steps(&GraphState::seed(2), &p, 1).unwrap();
        assert_eq!(e.leaves, 8 + 16);
        assert!((e.total_probability() - 1.0).abs() < 1e-12);
        let vertices: f64 = e.expected_counts.values().sum();
        assert!((vertices - 5.0).abs() < 1e-12);
    }

    #[test]
    fn exact_rational_normalization() {
        for (a, d) in [("0.5", "0.3"), ("0.25", "0.3"), ("0.8", "0.3"), ("0.15", "0.3")] {
            let p = exact_params(a, d);
            let e = enumerate_steps(&GraphState::seed(2), &p, 2).unwrap();
            assert!(e.total_probability().is_one(), "A={a}");
            let vertices = e
                .expected_counts
                .values()
                .fold(BigRational::from_integer(0.into()), |acc, x| acc + x);
            assert_eq!(vertices, BigRational::from_integer(6.into()));
        }
    }

    #[test]
    fn float_and_rational_agree() {
        let pf = resolve_params(2, 0.25, 0.3).unwrap();
        let pr = exact_params("0.25", "0.3");
        let ef = enumerate_steps(&GraphState::seed(2), &pf, 2).unwrap();
        let er = enumerate_steps(&GraphState::seed(2), &pr, 2).unwrap();
        for (d, v) in &er.expected_triangles {
            let f = ef.expected_triangles[d];
            assert!((f - v.to_f64().unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn edge_end_conservation_is_exact() {
        let p = exact_params("0.8", "0.3");
        let mut g = GraphState::seed(2);
        g.add_vertex(&[0, 1]);
        g.add_vertex(&[0, 4]);
        let t = exact_transition(&g, &p).unwrap();
        assert_eq!(t.expected_edge_ends(), BigRational::from_integer(2.into()));
        for row in &t.gains {
            let s = row.iter().fold(BigRational::from_integer(0.into()), |a, x| a + x);
            assert!(s.is_one());
        }
    }

    #[test]
    fn seed_single_step_exact_values() {
        // Seed graph, A = 1/2, D = 3/10: shift 0, picks uniform on the
        // regular seed. Vertex 0 lies on 4 of 8 edge slots.
        let p = exact_params("0.5", "0.3");
        let t = exact_transition(&GraphState::seed(2), &p).unwrap();
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        // Triangle branch: 0.3 * 4/8 hits once. Independent: 0.7 * 2*(1/4)(3/4).
        assert_eq!(t.gains[0][1], r(3, 10) * r(1, 2) + r(7, 10) * r(3, 8));
        assert_eq!(t.gains[0][2], r(7, 10) * r(1, 16));
        // Pair (0,2) has multiplicity 2: 0.3 * 2/8 + 0.7 * 2 * (1/16).
        assert_eq!(t.pairs[&(0, 2)], r(3, 10) * r(2, 8) + r(7, 10) * r(1, 8));
        assert_eq!(t.pairs[&(0, 1)], r(3, 10) * r(1, 8) + r(7, 10) * r(1, 8));
    }

    #[test]
    fn tree_guard() {
        let p = resolve_params(2, 0.5, 0.3).unwrap();
        let g = crate::model::generate(&p, 2_000, 1).unwrap();
        assert!(matches!(enumerate_steps(&g, &p, 3), Err(Error::TreeTooLarge { .. })));
        assert!(matches!(enumerate_steps(&GraphState::seed(2), &p, 4), Err(Error::InvalidInput(_))));
    }
}
