use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::{exact_transition, step_leaf_count};
use super::{binomial_z, derive_seed, z_score};
use crate::analysis::simple_projection;
use crate::error::{Error, Result};
use crate::model::{AttachmentRule, GraphState, ModelParams, RngStream};

/// Exact values are attached only when one step has at most this many
/// outcomes.
pub const EXACT_LEAF_LIMIT: u128 = 100_000;
const CHUNKS: u64 = 64;
const MIN_TRIALS: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexTransition {
    pub v: u32,
    pub degree: u32,
    pub hits1: u64,
    pub hits2: u64,
    pub p1: f64,
    pub p2: f64,
    pub exact_p1: Option<f64>,
    pub exact_p2: Option<f64>,
    /// `A d / n + B / n`.
    pub target_p1: f64,
    pub z1_exact: Option<f64>,
    pub z2_exact: Option<f64>,
    pub z1_target: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairTransition {
    pub i: u32,
    pub j: u32,
    pub multiplicity: usize,
    pub hits: u64,
    /// Frequency with which both endpoints gained exactly one edge.
    pub p_hat: f64,
    pub exact: Option<f64>,
    /// `e_ij D / (m n)`.
    pub target: f64,
    pub z_exact: Option<f64>,
    pub z_target: f64,
}

/// Repeated single steps from one fixed graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransitionEstimate {
    pub trials: u64,
    pub n: usize,
    pub m: usize,
    pub vertices: Vec<VertexTransition>,
    pub pairs: Vec<PairTransition>,
    /// `sum_v sum_j j * p_hat_j(v)`; equals `m`.
    pub edge_ends: f64,
    pub exact_edge_ends: Option<f64>,
}

impl TransitionEstimate {
    /// Largest `|z|` against exact values, if any were computed.
    pub fn max_exact_z(&self) -> Option<f64> {
        let v = self
            .vertices
            .iter()
            .flat_map(|t| [t.z1_exact, t.z2_exact])
            .chain(self.pairs.iter().map(|p| p.z_exact));
        v.map(|z| z.map(f64::abs)).try_fold(0.0f64, |acc, z| z.map(|z| acc.max(z)))
    }
}

#[derive(Clone)]
struct Tally {
    // gains[v * (m + 1) + j]
    gains: Vec<u64>,
    pairs: Vec<u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.gains.iter_mut().zip(other.gains) {
            *a += b;
        }
        for (a, b) in self.pairs.iter_mut().zip(other.pairs) {
            *a += b;
        }
        self
    }
}

/// Takes `trials` independent single steps from `graph` and compares the
/// increment frequencies with the exact law and with the leading-order
/// targets.
pub fn check_transitions(
    graph: &GraphState,
    params: &ModelParams<f64>,
    trials: u64,
    seed: u64,
) -> Result<TransitionEstimate> {
    if trials < MIN_TRIALS {
        return Err(Error::invalid(format!("trials must be at least {MIN_TRIALS}")));
    }
    if graph.m() != params.m() {
        return Err(Error::invalid("graph and parameters disagree on m"));
    }
    let n = graph.n();
    let m = params.m();
    let width = m + 1;
    let (simple, _) = simple_projection(graph);
    let pair_list: Vec<(u32, u32)> = simple.edges().collect();
    let rule = AttachmentRule::new(params);

    let empty = Tally {
        gains: vec![0; n * width],
        pairs: vec![0; pair_list.len()],
    };
    let tally = (0..CHUNKS)
        .into_par_iter()
        .map(|c| {
            let lo = trials * c / CHUNKS;
            let hi = trials * (c + 1) / CHUNKS;
            let mut rng = RngStream::new(derive_seed(seed, c));
            let mut acc = empty.clone();
            let mut targets = Vec::with_capacity(m);
            let mut seen: Vec<(u32, usize)> = Vec::with_capacity(m);
            for _ in lo..hi {
                rule.sample_targets(graph, &mut rng, &mut targets);
                seen.clear();
                for &t in &targets {
                    match seen.iter_mut().find(|(v, _)| *v == t) {
                        Some(entry) => entry.1 += 1,
                        None => seen.push((t, 1)),
                    }
                }
                for &(v, j) in &seen {
                    acc.gains[v as usize * width + j] += 1;
                }
                seen.sort_unstable();
                for (a, &(i, ji)) in seen.iter().enumerate() {
                    if ji != 1 {
                        continue;
                    }
                    for &(j, jj) in &seen[a + 1..] {
                        if jj == 1 {
                            if let Ok(k) = pair_list.binary_search(&(i, j)) {
                                acc.pairs[k] += 1;
                            }
                        }
                    }
                }
            }
            acc
        })
        .reduce(|| empty.clone(), Tally::merge);

    let exact = if step_leaf_count(graph, params) <= EXACT_LEAF_LIMIT {
        Some(exact_transition(graph, params)?)
    } else {
        None
    };

    let (a, b) = (*params.a(), *params.b());
    let nf = n as f64;
    let tf = trials as f64;
    let mut edge_ends = 0.0;
    let mut vertices = Vec::with_capacity(n);
    for v in 0..n {
        let row = &tally.gains[v * width..(v + 1) * width];
        for (j, &h) in row.iter().enumerate() {
            edge_ends += j as f64 * h as f64 / tf;
        }
        let hits1 = row.get(1).copied().unwrap_or(0);
        let hits2 = row.get(2).copied().unwrap_or(0);
        let p1 = hits1 as f64 / tf;
        let p2 = hits2 as f64 / tf;
        let degree = graph.degree(v);
        let target_p1 = (a * degree as f64 + b) / nf;
        let exact_p1 = exact.as_ref().map(|e| e.gains[v].get(1).copied().unwrap_or(0.0));
        let exact_p2 = exact.as_ref().map(|e| e.gains[v].get(2).copied().unwrap_or(0.0));
        vertices.push(VertexTransition {
            v: v as u32,
            degree,
            hits1,
            hits2,
            p1,
            p2,
            exact_p1,
            exact_p2,
            target_p1,
            z1_exact: exact_p1.map(|q| binomial_z(p1, q, trials)),
            z2_exact: exact_p2.map(|q| binomial_z(p2, q, trials)),
            z1_target: z_score(p1, target_p1, (p1 * (1.0 - p1) / tf).sqrt()),
        });
    }

    let d = *params.d();
    let pairs = pair_list
        .iter()
        .zip(&tally.pairs)
        .map(|(&(i, j), &hits)| {
            let multiplicity = graph.multiplicity(i, j);
            let p_hat = hits as f64 / tf;
            let target = multiplicity as f64 * d / (m as f64 * nf);
            let exact = exact.as_ref().map(|e| e.pairs[&(i, j)]);
            PairTransition {
                i,
                j,
                multiplicity,
                hits,
                p_hat,
                exact,
                target,
                z_exact: exact.map(|q| binomial_z(p_hat, q, trials)),
                z_target: z_score(p_hat, target, (p_hat * (1.0 - p_hat) / tf).sqrt()),
            }
        })
        .collect();

    Ok(TransitionEstimate {
        trials,
        n,
        m,
        vertices,
        pairs,
        edge_ends,
        exact_edge_ends: exact.as_ref().map(|e| e.expected_edge_ends()),
    })
}
