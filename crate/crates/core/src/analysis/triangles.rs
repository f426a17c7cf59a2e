use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;

use super::projection::SimpleGraph;

/// Exact number of edges among the neighbors of each vertex.
///
/// Edges are oriented from lower to higher `(degree, id)` rank and every
/// triangle is found once from its lowest-ranked corner by intersecting
/// out-lists with a stamp array, then credited to all three corners.
pub fn triangles_per_vertex(graph: &SimpleGraph) -> Vec<u32> {
    let n = graph.n();
    let rank_less = |u: usize, v: usize| (graph.degree(u), u) < (graph.degree(v), v);

    let mut out_offsets = vec![0usize; n + 1];
    for u in 0..n {
        let c = graph
            .neighbors(u)
            .iter()
            .filter(|&&v| rank_less(u, v as usize))
            .count();
        out_offsets[u + 1] = out_offsets[u] + c;
    }
    let mut out = Vec::with_capacity(out_offsets[n]);
    for u in 0..n {
        out.extend(
            graph
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&v| rank_less(u, v as usize)),
        );
    }
    let out_of = |u: usize| &out[out_offsets[u]..out_offsets[u + 1]];

    let counts: Vec<AtomicU32> = (0..n).map(|_| AtomicU32::new(0)).collect();
    let chunks = (rayon::current_num_threads() * 4).clamp(1, n.max(1));
    let chunk_len = n.div_ceil(chunks).max(1);
    (0..chunks).into_par_iter().for_each(|c| {
        // Stamps are vertex ids, unique per source vertex, so no reset.
        let mut stamp = vec![u32::MAX; n];
        for u in (c * chunk_len)..((c + 1) * chunk_len).min(n) {
            let ou = out_of(u);
            if ou.len() < 2 {
                continue;
            }
            for &v in ou {
                stamp[v as usize] = u as u32;
            }
            for &v in ou {
                for &w in out_of(v as usize) {
                    if stamp[w as usize] == u as u32 {
                        counts[u].fetch_add(1, Ordering::Relaxed);
                        counts[v as usize].fetch_add(1, Ordering::Relaxed);
                        counts[w as usize].fetch_add(1, Ordering::Relaxed);
                    }
                }
            }
        }
    });
    counts.into_iter().map(AtomicU32::into_inner).collect()
}
