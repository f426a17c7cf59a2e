//! The concrete triangle-step generator.
//!
//! Each step adds one vertex and `m` edges. With probability `p_tri` the step
//! opens with a triangle move: a uniformly random existing edge `(u, w)` is
//! drawn and the new vertex is joined to both ends, after which the remaining
//! `m - 2` targets are independent picks. Otherwise all `m` targets are
//! independent picks. An independent pick selects an existing vertex `v` with
//! probability `(d_v + a) / ((2m + a) n)`, where `a` is the attractiveness
//! shift (`a = inf` gives uniform picks).
//!
//! Per vertex the expected number of new edge-ends is then
//! `p_tri d_v / (mn) + (m - 2 p_tri)(d_v + a) / ((2m + a) n)`, which is
//! `(A d_v + B) / n` with `A = p_tri/m + (m - 2p_tri)/(2m + a)` and
//! `B = m(1 - 2A)`; the triangle move alone makes both ends of an edge grow
//! together with probability `e_ij p_tri / (mn)`, so `D = p_tri`.
//!
//! Draw order within a step is fixed: one uniform for the branch decision,
//! then (triangle branch) one edge index, then the picks left to right. A pick
//! consumes one index draw for `a = 0` or `a = inf`, a mixture uniform plus an
//! index for `a > 0`, and (index, acceptance uniform) pairs until acceptance
//! for `a < 0`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::graph::{GraphState, Multigraph};
use crate::model::params::{ModelParams, Shift};
use crate::scalar::Scalar;

/// Seeded random stream with a draw counter.
///
/// Backed by ChaCha8, whose output for a given seed is fixed across
/// platforms and crate versions.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    draws: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream {
            seed,
            draws: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of logical draws (uniforms and indices) consumed so far.
    pub fn draws(&self) -> u64 {
        self.draws
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.draws += 1;
        self.rng.gen::<f64>()
    }

    /// Uniform index in `0..len`.
    pub fn index(&mut self, len: usize) -> usize {
        self.draws += 1;
        self.rng.gen_range(0..len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum PickKind {
    Uniform,
    Degree,
    Mixture { degree_prob: f64 },
    Rejection { shift: f64 },
}

/// Which branch a step took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Triangle { edge: usize },
    Independent,
}

/// Floating-point sampling plan derived from [`ModelParams`].
#[derive(Debug, Clone, PartialEq)]
pub struct AttachmentRule {
    m: usize,
    p_tri: f64,
    pick: PickKind,
}

impl AttachmentRule {
    pub fn new<T: Scalar>(params: &ModelParams<T>) -> Self {
        let m = params.m();
        let pick = match params.shift().to_f64() {
            Shift::Uniform => PickKind::Uniform,
            Shift::Finite(0.0) => PickKind::Degree,
            Shift::Finite(a) if a > 0.0 => PickKind::Mixture {
                degree_prob: 2.0 * m as f64 / (2.0 * m as f64 + a),
            },
            Shift::Finite(a) => PickKind::Rejection { shift: a },
        };
        AttachmentRule {
            m,
            p_tri: params.p_tri().to_f64_lossy(),
            pick,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// One independent pick from the current graph.
    pub fn pick(&self, graph: &GraphState, rng: &mut RngStream) -> u32 {
        let ends = graph.endpoints();
        match self.pick {
            PickKind::Uniform => rng.index(graph.n()) as u32,
            PickKind::Degree => ends[rng.index(ends.len())],
            PickKind::Mixture { degree_prob } => {
                if rng.uniform() < degree_prob {
                    ends[rng.index(ends.len())]
                } else {
                    rng.index(graph.n()) as u32
                }
            }
            PickKind::Rejection { shift } => loop {
                let v = ends[rng.index(ends.len())];
                let d = graph.degree(v as usize) as f64;
                if rng.uniform() * d < d + shift {
                    break v;
                }
            },
        }
    }

    /// Draws the `m` targets of the next step into `out` without modifying
    /// the graph.
    pub fn sample_targets(
        &self,
        graph: &GraphState,
        rng: &mut RngStream,
        out: &mut Vec<u32>,
    ) -> StepKind {
        out.clear();
        let kind = if rng.uniform() < self.p_tri {
            let edge = rng.index(graph.edge_count());
            let (u, w) = graph.edge(edge);
            out.push(u);
            out.push(w);
            StepKind::Triangle { edge }
        } else {
            StepKind::Independent
        };
        while out.len() < self.m {
            out.push(self.pick(graph, rng));
        }
        kind
    }

    /// Advances the graph by one step.
    pub fn step(&self, graph: &mut GraphState, rng: &mut RngStream, buf: &mut Vec<u32>) -> StepKind {
        let kind = self.sample_targets(graph, rng, buf);
        graph.add_vertex(buf);
        kind
    }
}

/// Draws a vertex with probability `(d_v + a) / ((2m + a) n)`.
pub fn pick_attachment<T: Scalar>(
    graph: &GraphState,
    params: &ModelParams<T>,
    rng: &mut RngStream,
) -> u32 {
    AttachmentRule::new(params).pick(graph, rng)
}

/// Advances `graph` by one step of the generator.
pub fn step<T: Scalar>(graph: &mut GraphState, params: &ModelParams<T>, rng: &mut RngStream) -> StepKind {
    let mut buf = Vec::with_capacity(params.m());
    AttachmentRule::new(params).step(graph, rng, &mut buf)
}

/// Grows the seed graph to `n` vertices using the stream seeded with `seed`.
pub fn generate<T: Scalar>(params: &ModelParams<T>, n: usize, seed: u64) -> Result<GraphState> {
    let n0 = params.n0();
    if n < n0 {
        return Err(Error::invalid(format!("n = {n} is below the seed size {n0}")));
    }
    if n > u32::MAX as usize {
        return Err(Error::invalid("n exceeds the u32 vertex id range"));
    }
    let rule = AttachmentRule::new(params);
    let mut graph = GraphState::with_capacity(params.m(), n);
    let mut rng = RngStream::new(seed);
    let mut buf = Vec::with_capacity(params.m());
    while graph.n() < n {
        rule.step(&mut graph, &mut rng, &mut buf);
    }
    Ok(graph)
}
