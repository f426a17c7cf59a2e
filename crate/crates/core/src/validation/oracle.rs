use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::{degree_triangle_profile, Enumeration};
use super::{derive_seed, z_score};
use crate::error::{Error, Result};
use crate::model::{AttachmentRule, GraphState, ModelParams, RngStream};

const CHUNKS: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    /// Vertices of degree `d`.
    N,
    /// Edges among neighbors of degree-`d` vertices.
    T,
}

/// Exact moments of one quantity against its Monte-Carlo mean.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleRow {
    pub quantity: Quantity,
    pub d: usize,
    pub exact_mean: f64,
    pub exact_sd: f64,
    pub mc_mean: f64,
    /// Scored with the exact standard deviation over `sqrt(runs)`.
    pub z: f64,
}

#[derive(Default, Clone)]
struct Moments {
    // indexed by degree; (sum N, sum T)
    n: Vec<f64>,
    t: Vec<f64>,
}

impl Moments {
    fn add(&mut self, graph: &GraphState) {
        let (counts, tri) = degree_triangle_profile(graph);
        for (d, c) in counts {
            if d >= self.n.len() {
                self.n.resize(d + 1, 0.0);
                self.t.resize(d + 1, 0.0);
            }
            self.n[d] += c as f64;
            self.t[d] += tri[&d] as f64;
        }
    }

    fn merge(mut self, other: Moments) -> Moments {
        if other.n.len() > self.n.len() {
            self.n.resize(other.n.len(), 0.0);
            self.t.resize(other.n.len(), 0.0);
        }
        for d in 0..other.n.len() {
            self.n[d] += other.n[d];
            self.t[d] += other.t[d];
        }
        self
    }
}

/// Runs the generator `runs` times for `enumeration.depth` steps from `start`
/// and scores the sample means of `N(d)` and `T(d)` against the exact law.
pub fn compare_with_monte_carlo(
    start: &GraphState,
    params: &ModelParams<f64>,
    enumeration: &Enumeration<f64>,
    runs: u64,
    seed: u64,
) -> Result<Vec<OracleRow>> {
    if runs == 0 {
        return Err(Error::invalid("runs must be positive"));
    }
    let rule = AttachmentRule::new(params);
    let depth = enumeration.depth;
    let sums = (0..CHUNKS)
        .into_par_iter()
        .map(|c| {
            let lo = runs * c / CHUNKS;
            let hi = runs * (c + 1) / CHUNKS;
            let mut rng = RngStream::new(derive_seed(seed, c));
            let mut buf = Vec::with_capacity(params.m());
            let mut acc = Moments::default();
            for _ in lo..hi {
                let mut g = start.clone();
                for _ in 0..depth {
                    rule.step(&mut g, &mut rng, &mut buf);
                }
                acc.add(&g);
            }
            acc
        })
        .reduce(Moments::default, Moments::merge);

    let mut exact_n: std::collections::BTreeMap<usize, (f64, f64)> = Default::default();
    let mut exact_t: std::collections::BTreeMap<usize, (f64, f64)> = Default::default();
    for (g, p) in &enumeration.graphs {
        let (counts, tri) = degree_triangle_profile(g);
        for d in enumeration.expected_counts.keys() {
            let c = counts.get(d).copied().unwrap_or(0) as f64;
            let t = tri.get(d).copied().unwrap_or(0) as f64;
            let e = exact_n.entry(*d).or_default();
            e.0 += p * c;
            e.1 += p * c * c;
            let e = exact_t.entry(*d).or_default();
            e.0 += p * t;
            e.1 += p * t * t;
        }
    }

    let root = (runs as f64).sqrt();
    let mut rows = Vec::new();
    for (quantity, exact, sums) in [
        (Quantity::N, &exact_n, &sums.n),
        (Quantity::T, &exact_t, &sums.t),
    ] {
        for (&d, &(mean, second)) in exact {
            let sd = (second - mean * mean).max(0.0).sqrt();
            let mc_mean = sums.get(d).copied().unwrap_or(0.0) / runs as f64;
            rows.push(OracleRow {
                quantity,
                d,
                exact_mean: mean,
                exact_sd: sd,
                mc_mean,
                z: z_score(mc_mean, mean, sd / root),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::resolve_params;
    use crate::validation::enumerate_steps;

    #[test]
    fn depth_one_matches() {
        let p = resolve_params(2, 0.5, 0.3).unwrap();
        let seed = GraphState::seed(2);
        let e = enumerate_steps(&seed, &p, 1).unwrap();
        let rows = compare_with_monte_carlo(&seed, &p, &e, 20_000, 3).unwrap();
        assert!(rows.iter().any(|r| r.quantity == Quantity::T && r.d == 2));
        for r in &rows {
            assert!(r.z.abs() < 4.5, "{r:?}");
        }
    }
}
