use gpa_core::analysis::{analyze, DegreeMode};
use gpa_core::theory::{
    degree_coeff, degree_coeff_lgamma, local_clustering_theory, triangle_coeff, triangle_coeff_recurrence,
};
use gpa_core::{generate, resolve_params, Multigraph, Params};
use proptest::prelude::*;

/// Feasible `(m, A, D)` with `A > D/m` so the closed forms are defined.
fn feasible() -> impl Strategy<Value = Params> {
    (2usize..=6, 0.0f64..=1.0, 0.02f64..0.98).prop_map(|(m, d, u)| {
        let lower = d / m as f64;
        let upper = 1.0 - lower;
        let a = lower + (upper - lower) * u;
        resolve_params(m, a, d).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn implied_slope_recovered(p in feasible()) {
        prop_assert!((p.implied_a() - p.a()).abs() < 1e-10);
        prop_assert!((2.0 * p.m() as f64 * p.a() + p.b() - p.m() as f64).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_agree(p in feasible(), k in 0usize..200) {
        let d = p.m() + k;
        let c = degree_coeff(&p, d).unwrap();
        prop_assert!((degree_coeff_lgamma(&p, d).unwrap() - c).abs() <= 1e-9 * c);
        let kd = triangle_coeff(&p, d).unwrap();
        prop_assert!((triangle_coeff_recurrence(&p, d).unwrap() - kd).abs() <= 1e-9 * kd.abs().max(1e-300));
        let ct = local_clustering_theory(&p, d).unwrap();
        let pairs = (d * (d - 1) / 2) as f64;
        prop_assert!((ct * pairs * c - kd).abs() <= 1e-9 * kd.abs().max(1e-300));
        prop_assert!((0.0..=1.0).contains(&ct));
    }

    #[test]
    fn clustering_bounded(p in feasible(), n in 20usize..600, seed in any::<u64>()) {
        let n = n.max(p.n0());
        let g = generate(&p, n, seed).unwrap();
        let a = analyze::<_, f64>(&g, DegreeMode::Multigraph);
        let c = &a.clustering;
        prop_assert!((0.0..=1.0).contains(&c.c1));
        prop_assert!((0.0..=1.0).contains(&c.c2));
        for v in c.c_of_d.values() {
            prop_assert!((0.0..=1.0).contains(v));
        }
        let total: u64 = c.triangles_by_degree.values().sum();
        prop_assert_eq!(total, c.t_vertex.iter().map(|&t| t as u64).sum::<u64>());
        // C2 from the per-degree aggregation equals the vertex-wise mean.
        let local = c.local_clustering(&g.degree_sequence());
        let defined: Vec<f64> = local.into_iter().flatten().collect();
        let mean = defined.iter().sum::<f64>() / defined.len() as f64;
        prop_assert!((mean - c.c2).abs() < 1e-12);
    }

    #[test]
    fn generation_deterministic(p in feasible(), seed in any::<u64>()) {
        let a = generate(&p, 300.max(p.n0()), seed).unwrap();
        let b = generate(&p, 300.max(p.n0()), seed).unwrap();
        prop_assert_eq!(a.endpoints(), b.endpoints());
        prop_assert!(a.check_invariants().is_ok());
    }
}
