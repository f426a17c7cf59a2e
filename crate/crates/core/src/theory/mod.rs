//! Closed-form predictions for the model: limiting degree fractions
//! `c(m, d)`, triangle densities `K(d)`, degree-conditioned clustering, the
//! average-clustering series, the global-clustering regime and the
//! transitivity class.
//!
//! Gamma ratios are evaluated through telescoping products so that
//! `d` in the tens of thousands never overflows. The log-gamma forms in
//! [`gamma`] exist only as an independent check on those products.

pub mod gamma;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::scalar::Real;

use gamma::ln_gamma_ratio;

/// Upper bound on the number of terms summed by [`avg_clustering_series`].
pub const SERIES_TERM_LIMIT: usize = 100_000_000;
pub const DEFAULT_REL_TOL: f64 = 1e-6;

struct Coeffs<T> {
    m: usize,
    mf: T,
    a: T,
    b: T,
    d: T,
}

fn coeffs<T: Real>(p: &ModelParams<T>) -> Result<Coeffs<T>> {
    let a = *p.a();
    if a <= T::zero() {
        return Err(Error::invalid("closed forms need A > 0"));
    }
    Ok(Coeffs {
        m: p.m(),
        mf: T::from_count(p.m()),
        a,
        b: *p.b(),
        d: *p.d(),
    })
}

fn check_degree(m: usize, d: usize) -> Result<()> {
    if d < m {
        Err(Error::invalid(format!("degree {d} is below m = {m}")))
    } else {
        Ok(())
    }
}

impl<T: Real> Coeffs<T> {
    /// `c(m,d) / c(m,d-1) = (A(d-1) + B) / (Ad + B + 1)`
    fn degree_ratio(&self, d: usize) -> T {
        let df = T::from_count(d);
        (self.a * (df - T::one()) + self.b) / (self.a * df + self.b + T::one())
    }

    fn head(&self) -> T {
        T::one() / (self.a * self.mf + self.b + T::one())
    }

    /// `i / (Ai + B)`
    fn harmonic_term(&self, i: usize) -> T {
        let i = T::from_count(i);
        i / (self.a * i + self.b)
    }
}

/// Limiting fraction `c(m, d)` of vertices with degree `d`.
pub fn degree_coeff<T: Real>(p: &ModelParams<T>, d: usize) -> Result<T> {
    let k = coeffs(p)?;
    check_degree(k.m, d)?;
    let mut c = k.head();
    for j in k.m + 1..=d {
        c = c * k.degree_ratio(j);
    }
    Ok(c)
}

/// `c(m, d)` for `d = 0..=d_max`, zero below `m`.
pub fn degree_coeffs<T: Real>(p: &ModelParams<T>, d_max: usize) -> Result<Vec<T>> {
    let k = coeffs(p)?;
    let mut out = vec![T::zero(); d_max + 1];
    if d_max < k.m {
        return Ok(out);
    }
    out[k.m] = k.head();
    for j in k.m + 1..=d_max {
        out[j] = out[j - 1] * k.degree_ratio(j);
    }
    Ok(out)
}

/// `c(m, d)` from the gamma-function form, evaluated in log space.
pub fn degree_coeff_lgamma<T: Real>(p: &ModelParams<T>, d: usize) -> Result<T> {
    let k = coeffs(p)?;
    check_degree(k.m, d)?;
    let ba = k.b / k.a;
    let inv_a = T::one() / k.a;
    let head = ln_gamma_ratio(k.mf + ba, inv_a);
    let tail = ln_gamma_ratio(T::from_count(d) + ba, T::one() + inv_a);
    Ok((head - tail).exp() / k.a)
}

/// Large-`d` constant `G` in `c(m, d) ~ G d^{-1-1/A}`.
pub fn degree_tail_constant<T: Real>(p: &ModelParams<T>) -> Result<T> {
    let k = coeffs(p)?;
    Ok(ln_gamma_ratio(k.mf + k.b / k.a, T::one() / k.a).exp() / k.a)
}

/// Triangle density `K(d)`: `E T_n(d) ~ K(d) n`.
pub fn triangle_coeff<T: Real>(p: &ModelParams<T>, d: usize) -> Result<T> {
    let k = coeffs(p)?;
    check_degree(k.m, d)?;
    let c = degree_coeff(p, d)?;
    let sum = (k.m..d).map(|i| k.harmonic_term(i)).sum::<T>();
    Ok(c * (k.d + k.d / k.mf * sum))
}

/// `K(d)` by the degree recurrence
/// `K(d) = (A(d-1)+B)/(Ad+B+1) K(d-1) + D(d-1)/(m(Ad+B+1)) c(m,d-1)`,
/// starting from `K(m) = D c(m, m)`.
pub fn triangle_coeff_recurrence<T: Real>(p: &ModelParams<T>, d: usize) -> Result<T> {
    let k = coeffs(p)?;
    check_degree(k.m, d)?;
    let mut c_prev = k.head();
    let mut tri = k.d * c_prev;
    for j in k.m + 1..=d {
        let jf = T::from_count(j);
        let denom = k.a * jf + k.b + T::one();
        tri = k.degree_ratio(j) * tri + k.d * (jf - T::one()) / (k.mf * denom) * c_prev;
        c_prev = c_prev * k.degree_ratio(j);
    }
    Ok(tri)
}

/// Large-`d` constant in `K(d) ~ const * d^{-1/A}`.
pub fn triangle_tail_constant<T: Real>(p: &ModelParams<T>) -> Result<T> {
    let k = coeffs(p)?;
    Ok(k.d / (k.a * k.mf) * degree_tail_constant(p)?)
}

/// Predicted clustering of degree-`d` vertices,
/// `2D / (d(d-1)m) * (m + sum_{i=m}^{d-1} i / (Ai + B))`.
pub fn local_clustering_theory<T: Real>(p: &ModelParams<T>, d: usize) -> Result<T> {
    let k = coeffs(p)?;
    check_degree(k.m, d)?;
    if d < 2 {
        return Err(Error::invalid("clustering is undefined below degree 2"));
    }
    let sum = (k.m..d).map(|i| k.harmonic_term(i)).sum::<T>();
    let df = T::from_count(d);
    Ok(T::lit(2.0) * k.d / (df * (df - T::one()) * k.mf) * (k.mf + sum))
}

/// Limit of `d * C(d)`: `2D / (mA)`.
pub fn clustering_tail_constant<T: Real>(p: &ModelParams<T>) -> Result<T> {
    let k = coeffs(p)?;
    Ok(T::lit(2.0) * k.d / (k.mf * k.a))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesSum<T> {
    /// Partial sum of `f(d)` over `d = m..=d_max`.
    pub sum: T,
    pub d_max: usize,
    /// Integral estimate of the omitted tail.
    pub tail_bound: T,
}

/// Predicted average local clustering `sum_{d >= m} f(d)` with
/// `f(d) = C_theory(d) c(m, d)`.
///
/// Terms are added until the tail estimate
/// `int_{d}^{inf} const x^{-2-1/A} dx` (constant from the large-`d`
/// asymptotes) falls below `rel_tol` times the partial sum. Every term
/// carries `D` as a factor, so the series is summed for unit `D` and scaled
/// once, which keeps the result exactly proportional to `D`.
pub fn avg_clustering_series<T: Real>(p: &ModelParams<T>, rel_tol: T) -> Result<SeriesSum<T>> {
    let k = coeffs(p)?;
    if rel_tol <= T::zero() {
        return Err(Error::invalid("rel_tol must be positive"));
    }
    if k.d == T::zero() {
        return Ok(SeriesSum {
            sum: T::zero(),
            d_max: k.m.max(2),
            tail_bound: T::zero(),
        });
    }
    let two = T::lit(2.0);
    let decay = T::one() + T::one() / k.a;
    // Unit-D tail constant of f(d) ~ const d^{-2-1/A}.
    let tail_const = two / (k.mf * k.a) * degree_tail_constant(p)?;
    let tail_from = |d: usize| tail_const * T::from_count(d).powf(-decay) / decay;

    let mut c = k.head();
    let mut harmonic = T::zero();
    let mut sum = T::zero();
    let mut d = k.m;
    loop {
        if d >= 2 {
            let df = T::from_count(d);
            sum = sum + two / (df * (df - T::one()) * k.mf) * (k.mf + harmonic) * c;
        }
        let tail = tail_from(d);
        if (sum > T::zero() && tail <= rel_tol * sum) || d >= SERIES_TERM_LIMIT {
            return Ok(SeriesSum {
                sum: sum * k.d,
                d_max: d,
                tail_bound: tail * k.d,
            });
        }
        harmonic = harmonic + k.harmonic_term(d);
        d += 1;
        c = c * k.degree_ratio(d);
    }
}

/// Large-graph behavior of the global clustering coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum GlobalClustering<T> {
    /// `2A < 1`: converges to `value`.
    Constant { value: T },
    /// `2A = 1`: behaves as `constant / log n`.
    LogDecay { constant: T },
    /// `2A > 1`: behaves as `n^exponent` with `exponent = 1 - 2A`.
    PowerDecay { exponent: T },
}

pub fn global_clustering_limit<T: Real>(p: &ModelParams<T>) -> GlobalClustering<T> {
    let a = *p.a();
    let b = *p.b();
    let m = T::from_count(p.m());
    let two_a = T::lit(2.0) * a;
    let denom = m * (T::lit(4.0) * (a + b) + m - T::one());
    let six_d = T::lit(6.0) * *p.d();
    if crate::scalar::Scalar::near(&two_a, &T::one()) {
        GlobalClustering::LogDecay {
            constant: six_d / denom,
        }
    } else if two_a < T::one() {
        GlobalClustering::Constant {
            value: six_d * (T::one() - two_a) / denom,
        }
    } else {
        GlobalClustering::PowerDecay {
            exponent: T::one() - two_a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transitivity {
    Weak,
    Strong,
    Boundary,
}

/// Weak when `2D < Am`, strong when `2D > Am`.
pub fn transitivity_class<T: Real>(p: &ModelParams<T>) -> Transitivity {
    let lhs = T::lit(2.0) * *p.d();
    let rhs = *p.a() * T::from_count(p.m());
    if crate::scalar::Scalar::near(&lhs, &rhs) {
        Transitivity::Boundary
    } else if lhs < rhs {
        Transitivity::Weak
    } else {
        Transitivity::Strong
    }
}

/// Whether the `C(d)` asymptotics are established for these parameters
/// (`A < 3/4`).
pub fn clustering_law_proven<T: Real>(p: &ModelParams<T>) -> bool {
    *p.a() < T::lit(0.75)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoryRow<T> {
    pub d: usize,
    pub c_md: T,
    pub k_d: T,
    /// `None` below degree 2.
    pub c_theory: Option<T>,
    pub f_d: Option<T>,
}

/// Every closed-form quantity for one parameter set, tabulated up to `d_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoryTable<T> {
    pub params: ModelParams<T>,
    pub d_max: usize,
    pub rows: Vec<TheoryRow<T>>,
    pub series: SeriesSum<T>,
    pub global: GlobalClustering<T>,
    pub transitivity: Transitivity,
    pub clustering_law_proven: bool,
}

impl<T: Real> TheoryTable<T> {
    pub fn build(params: &ModelParams<T>, d_max: usize, rel_tol: T) -> Result<Self> {
        let k = coeffs(params)?;
        let c = degree_coeffs(params, d_max)?;
        let mut rows = Vec::new();
        let mut harmonic = T::zero();
        for (d, &c_d) in c.iter().enumerate().skip(k.m) {
            let k_d = c_d * (k.d + k.d / k.mf * harmonic);
            let c_theory = (d >= 2).then(|| {
                let df = T::from_count(d);
                T::lit(2.0) * k.d / (df * (df - T::one()) * k.mf) * (k.mf + harmonic)
            });
            rows.push(TheoryRow {
                d,
                c_md: c_d,
                k_d,
                c_theory,
                f_d: c_theory.map(|ct| ct * c_d),
            });
            harmonic = harmonic + k.harmonic_term(d);
        }
        Ok(TheoryTable {
            params: params.clone(),
            d_max,
            rows,
            series: avg_clustering_series(params, rel_tol)?,
            global: global_clustering_limit(params),
            transitivity: transitivity_class(params),
            clustering_law_proven: clustering_law_proven(params),
        })
    }

    pub fn row(&self, d: usize) -> Option<&TheoryRow<T>> {
        self.rows.iter().find(|r| r.d == d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::resolve_params;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    fn params(a: f64, d: f64) -> ModelParams<f64> {
        resolve_params(2, a, d).unwrap()
    }

    #[test]
    fn degree_coeff_b_zero() {
        let p = params(0.5, 0.3);
        // c(2, d) = 12 / (d (d+1) (d+2))
        for d in 2..200 {
            let want = 12.0 / (d as f64 * (d + 1) as f64 * (d + 2) as f64);
            assert!(rel(degree_coeff(&p, d).unwrap(), want) < 1e-13, "d={d}");
        }
        assert_eq!(degree_coeff(&p, 2).unwrap(), 0.5);
        assert!(rel(degree_coeff(&p, 3).unwrap(), 0.2) < 1e-15);
        assert!(degree_coeff(&p, 1).is_err());
    }

    #[test]
    fn head_value() {
        for &(a, d) in &[(0.25, 0.3), (0.7, 0.3), (0.8, 0.3), (0.15, 0.3)] {
            let p = params(a, d);
            let want = 1.0 / (a * 2.0 + p.b() + 1.0);
            assert!(rel(degree_coeff(&p, 2).unwrap(), want) < 1e-15);
        }
    }

    #[test]
    fn tail_slope() {
        let p = params(0.5, 0.3);
        let (d1, d2) = (5_000usize, 10_000usize);
        let slope = (degree_coeff(&p, d2).unwrap().ln() - degree_coeff(&p, d1).unwrap().ln())
            / ((d2 as f64).ln() - (d1 as f64).ln());
        assert!((slope + 3.0).abs() < 1e-3, "slope={slope}");
    }

    #[test]
    fn lgamma_cross_check() {
        for &(a, d) in &[(0.5, 0.3), (0.25, 0.3), (0.7, 0.3), (0.8, 0.3), (0.15, 0.3), (0.4, 0.0)] {
            let p = params(a, d);
            let table = degree_coeffs(&p, 10_000).unwrap();
            for dd in (2..=10_000).step_by(97).chain([10_000]) {
                let lg = degree_coeff_lgamma(&p, dd).unwrap();
                assert!(rel(table[dd], lg) < 1e-10, "A={a} d={dd}: {} vs {lg}", table[dd]);
            }
        }
    }

    #[test]
    fn triangle_coeff_values() {
        let p = params(0.5, 0.3);
        assert!(rel(triangle_coeff(&p, 2).unwrap(), 0.15) < 1e-15);
        assert!(rel(triangle_coeff(&p, 3).unwrap(), 0.12) < 1e-14);
        for d in 2..300 {
            let closed = triangle_coeff(&p, d).unwrap();
            let c = degree_coeff(&p, d).unwrap();
            assert!(rel(closed, c * 0.3 * (d - 1) as f64) < 1e-12);
            assert!(rel(closed, triangle_coeff_recurrence(&p, d).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn triangle_asymptote() {
        let p = params(0.25, 0.3);
        let d = 20_000usize;
        let scaled = triangle_coeff(&p, d).unwrap() * (d as f64).powf(1.0 / 0.25);
        let limit = triangle_tail_constant(&p).unwrap();
        assert!(rel(scaled, limit) < 5e-3, "{scaled} vs {limit}");
    }

    #[test]
    fn local_clustering_values() {
        let p = params(0.5, 0.3);
        assert!(rel(local_clustering_theory(&p, 2).unwrap(), 0.3) < 1e-15);
        assert!(rel(local_clustering_theory(&p, 4).unwrap(), 0.15) < 1e-14);
        for d in 2..=10 {
            assert!(rel(local_clustering_theory(&p, d).unwrap(), 0.6 / d as f64) < 1e-14);
        }
        let d = 100_000usize;
        let scaled = d as f64 * local_clustering_theory(&p, d).unwrap();
        assert!(rel(scaled, clustering_tail_constant(&p).unwrap()) < 1e-3);
        assert!((clustering_tail_constant(&p).unwrap() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn clustering_identity_and_monotonicity() {
        for &a in &[0.2, 0.3, 0.5, 0.7] {
            let p = params(a, 0.3);
            let mut prev = f64::INFINITY;
            for d in 2..2_000 {
                let ct = local_clustering_theory(&p, d).unwrap();
                let pairs = (d * (d - 1) / 2) as f64;
                let k = triangle_coeff(&p, d).unwrap();
                assert!(rel(ct * pairs * degree_coeff(&p, d).unwrap(), k) < 1e-10);
                assert!(ct > 0.0 && ct <= 1.0);
                assert!(ct < prev, "A={a} d={d}");
                prev = ct;
            }
        }
    }

    #[test]
    fn series_closed_form_b_zero() {
        let p = params(0.5, 0.3);
        let s = avg_clustering_series(&p, 1e-6).unwrap();
        // sum 24D / (d^2 (d+1)(d+2)) over d >= 2, by partial fractions.
        let exact = 24.0 * 0.3 * (std::f64::consts::PI.powi(2) / 12.0 - 19.0 / 24.0);
        assert!((exact - 0.22176).abs() < 1e-5);
        assert!(s.sum <= exact);
        assert!(exact - s.sum <= 2.0 * s.tail_bound);
        assert!(rel(s.sum, exact) < 2e-6);

        // Independent brute-force partial sum of the same closed form.
        let brute: f64 = (2..=s.d_max)
            .map(|d| {
                let d = d as f64;
                7.2 / (d * d * (d + 1.0) * (d + 2.0))
            })
            .sum();
        assert!(rel(s.sum, brute) < 1e-12);
    }

    #[test]
    fn series_linear_in_d() {
        let base = avg_clustering_series(&params(0.5, 0.3), 1e-6).unwrap();
        let doubled = avg_clustering_series(&params(0.5, 0.6), 1e-6).unwrap();
        assert_eq!(doubled.sum, 2.0 * base.sum);
        assert_eq!(doubled.d_max, base.d_max);
        let zero = avg_clustering_series(&resolve_params(2, 0.5, 0.0).unwrap(), 1e-6).unwrap();
        assert_eq!(zero.sum, 0.0);
    }

    #[test]
    fn series_converges_for_heavy_tail() {
        let s = avg_clustering_series(&params(0.8, 0.3), 1e-6).unwrap();
        assert!(s.sum > 0.0 && s.tail_bound <= 1e-6 * s.sum);
        assert!(s.d_max > 100);
    }

    #[test]
    fn partial_sums_of_c_approach_one() {
        let p = params(0.5, 0.3);
        let c = degree_coeffs(&p, 10_000).unwrap();
        let mut acc = 0.0;
        for &x in &c[2..] {
            let next = acc + x;
            assert!(next >= acc);
            acc = next;
        }
        assert!((0.999..=1.0).contains(&acc));
        // Telescoped sum: 1 - 6 / ((D+1)(D+2)).
        let want = 1.0 - 6.0 / (10_001.0 * 10_002.0);
        assert!((acc - want).abs() < 1e-12);
    }

    #[test]
    fn global_clustering_regimes() {
        match global_clustering_limit(&params(0.25, 0.3)) {
            GlobalClustering::Constant { value } => assert!((value - 0.075).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        match global_clustering_limit(&params(0.5, 0.3)) {
            GlobalClustering::LogDecay { constant } => assert!((constant - 0.3).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        match global_clustering_limit(&params(0.7, 0.3)) {
            GlobalClustering::PowerDecay { exponent } => assert!((exponent + 0.4).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn transitivity() {
        assert_eq!(transitivity_class(&params(0.5, 0.3)), Transitivity::Weak);
        assert_eq!(transitivity_class(&params(0.25, 0.3)), Transitivity::Strong);
        assert_eq!(transitivity_class(&params(0.3, 0.3)), Transitivity::Boundary);
    }

    #[test]
    fn table_consistency() {
        let p = params(0.5, 0.3);
        let t = TheoryTable::build(&p, 10, 1e-6).unwrap();
        assert_eq!(t.rows.len(), 9);
        for r in &t.rows {
            assert!(rel(r.c_theory.unwrap(), 0.6 / r.d as f64) < 1e-14);
            assert!(rel(r.k_d, triangle_coeff(&p, r.d).unwrap()) < 1e-14);
        }
        assert!(t.clustering_law_proven);
        assert!(!TheoryTable::build(&params(0.8, 0.3), 5, 1e-6).unwrap().clustering_law_proven);
        assert!(TheoryTable::build(&params(0.15, 0.3), 5, 1e-6).is_ok());
    }

    #[test]
    fn single_precision_instantiation() {
        let p = resolve_params(2, 0.5f32, 0.3f32).unwrap();
        assert!((local_clustering_theory(&p, 4).unwrap() - 0.15).abs() < 1e-6);
        assert!((degree_coeff(&p, 3).unwrap() - 0.2).abs() < 1e-6);
        let s = avg_clustering_series(&p, 1e-4).unwrap();
        assert!((s.sum - 0.22176).abs() < 1e-3);
    }

    #[test]
    fn zero_a_rejected() {
        let p = resolve_params(2, 0.0, 0.0).unwrap();
        assert!(degree_coeff(&p, 2).is_err());
    }
}
