use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Offset added to every degree in the independent attachment picks.
///
/// `Uniform` is the infinite-shift limit where picks ignore degrees.
#[derive(Debug, Clone, PartialEq)]
pub enum Shift<T> {
    Finite(T),
    Uniform,
}

impl<T: Scalar> Shift<T> {
    pub fn to_f64(&self) -> Shift<f64> {
        match self {
            Shift::Finite(a) => Shift::Finite(a.to_f64_lossy()),
            Shift::Uniform => Shift::Uniform,
        }
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self, Shift::Uniform)
    }
}

impl<T: fmt::Display> fmt::Display for Shift<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shift::Finite(a) => write!(f, "{a}"),
            Shift::Uniform => f.write_str("inf"),
        }
    }
}

/// Resolved parameters of the triangle-step generator.
///
/// Users supply `m`, `A` and `D`; everything else is derived. Only
/// [`resolve_params`] constructs values of this type, so every instance
/// satisfies `2mA + B = m` and lies in the feasible range
/// `D/m <= A < 1 - D/m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams<T> {
    m: usize,
    a: T,
    d: T,
    b: T,
    p_tri: T,
    shift: Shift<T>,
    n0: usize,
}

impl<T: Scalar> ModelParams<T> {
    /// Edges added per step.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Degree coefficient `A` of the one-step increment law.
    pub fn a(&self) -> &T {
        &self.a
    }

    /// Constant term `B = m(1 - 2A)`.
    pub fn b(&self) -> &T {
        &self.b
    }

    /// Triangle coefficient `D`.
    pub fn d(&self) -> &T {
        &self.d
    }

    /// Probability that a step starts with a triangle step.
    pub fn p_tri(&self) -> &T {
        &self.p_tri
    }

    pub fn shift(&self) -> &Shift<T> {
        &self.shift
    }

    /// Size of the circulant seed graph.
    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn to_f64(&self) -> ModelParams<f64> {
        ModelParams {
            m: self.m,
            a: self.a.to_f64_lossy(),
            d: self.d.to_f64_lossy(),
            b: self.b.to_f64_lossy(),
            p_tri: self.p_tri.to_f64_lossy(),
            shift: self.shift.to_f64(),
            n0: self.n0,
        }
    }

    /// `A` implied by the generator's mechanics:
    /// `p_tri / m + (m - 2 p_tri) / (2m + shift)`.
    pub fn implied_a(&self) -> T {
        let m = T::from_count(self.m);
        let two = T::from_count(2);
        let tri_part = self.p_tri.clone() / m.clone();
        match &self.shift {
            Shift::Uniform => tri_part,
            Shift::Finite(s) => {
                tri_part
                    + (m.clone() - two.clone() * self.p_tri.clone()) / (two * m + s.clone())
            }
        }
    }
}

/// Seed-graph size used for a given `m`.
pub fn seed_size(m: usize) -> usize {
    (2 * m).max(3)
}

/// Resolves user parameters `(m, A, D)` into generator parameters.
///
/// The triangle-step probability equals `D`, and the attractiveness shift is
/// chosen so that `A = D/m + (m - 2D)/(2m + shift)`, i.e.
/// `shift = m(m - 2D)/(mA - D) - 2m`. `A = D/m` maps to uniform picks.
pub fn resolve_params<T: Scalar>(m: usize, a: T, d: T) -> Result<ModelParams<T>> {
    if m == 0 {
        return Err(Error::invalid("m must be at least 1"));
    }
    if !a.is_finite_value() || !d.is_finite_value() {
        return Err(Error::invalid("A and D must be finite"));
    }
    let zero = T::zero();
    let one = T::one();
    if a < zero || a > one {
        return Err(Error::invalid(format!("A = {a:?} outside [0, 1]")));
    }
    if d < zero {
        return Err(Error::invalid(format!("D = {d:?} must be non-negative")));
    }
    if d > zero && m < 2 {
        return Err(Error::invalid("D > 0 requires m >= 2"));
    }
    if d > one {
        return Err(Error::invalid(format!(
            "D = {d:?} exceeds 1 and cannot be a triangle-step probability"
        )));
    }

    let mm = T::from_count(m);
    let two = T::from_count(2);
    let lower = d.clone() / mm.clone();
    let upper = one.clone() - lower.clone();
    let infeasible = || Error::InfeasibleParams {
        m,
        a: a.to_f64_lossy(),
        d: d.to_f64_lossy(),
        lower: lower.to_f64_lossy(),
        upper: upper.to_f64_lossy(),
    };

    let shift = if a.near(&lower) {
        Shift::Uniform
    } else if a < lower || a >= upper || a.near(&upper) {
        return Err(infeasible());
    } else {
        let numer = mm.clone() * (mm.clone() - two.clone() * d.clone());
        let denom = mm.clone() * a.clone() - d.clone();
        Shift::Finite(numer / denom - two.clone() * mm.clone())
    };

    let b = mm * (one - two * a.clone());
    Ok(ModelParams {
        m,
        a,
        p_tri: d.clone(),
        d,
        b,
        shift,
        n0: seed_size(m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    use crate::scalar::rational_from_decimal;

    fn finite(p: &ModelParams<f64>) -> f64 {
        match p.shift() {
            Shift::Finite(s) => *s,
            Shift::Uniform => panic!("expected finite shift"),
        }
    }

    #[test]
    fn pure_degree_proportional_case() {
        let p = resolve_params(2, 0.5, 0.3).unwrap();
        assert_eq!(*p.b(), 0.0);
        assert_eq!(*p.p_tri(), 0.3);
        assert!(finite(&p).abs() < 1e-12);
        assert_eq!(p.n0(), 4);
    }

    #[test]
    fn positive_shift() {
        let p = resolve_params::<f64>(2, 0.25, 0.3).unwrap();
        assert!((*p.b() - 1.0).abs() < 1e-12);
        assert!((finite(&p) - 10.0).abs() < 1e-9);
    }

    #[test]
    fn negative_shift() {
        let p = resolve_params::<f64>(2, 0.8, 0.3).unwrap();
        assert!((*p.b() + 1.2).abs() < 1e-12);
        assert!((finite(&p) - (2.8 / 1.3 - 4.0)).abs() < 1e-12);
        assert!((finite(&p) + 1.846_153_846).abs() < 1e-8);
    }

    #[test]
    fn lower_boundary_is_uniform() {
        let p = resolve_params(2, 0.15, 0.3).unwrap();
        assert!(p.shift().is_uniform());
    }

    #[test]
    fn infeasible_above_upper_bound() {
        let err = resolve_params(2, 0.9, 0.3).unwrap_err();
        assert!(matches!(err, Error::InfeasibleParams { .. }), "{err}");
        assert!(matches!(
            resolve_params(2, 0.85, 0.3),
            Err(Error::InfeasibleParams { .. })
        ));
        assert!(matches!(
            resolve_params(2, 0.1, 0.3),
            Err(Error::InfeasibleParams { .. })
        ));
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(resolve_params(1, 0.5, 0.3), Err(Error::InvalidInput(_))));
        assert!(matches!(resolve_params(0, 0.5, 0.0), Err(Error::InvalidInput(_))));
        assert!(matches!(resolve_params(2, 1.5, 0.0), Err(Error::InvalidInput(_))));
        assert!(matches!(resolve_params(2, 0.5, -0.1), Err(Error::InvalidInput(_))));
        assert!(matches!(resolve_params(2, f64::NAN, 0.1), Err(Error::InvalidInput(_))));
        assert!(matches!(resolve_params(4, 0.5, 1.2), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn m_one_without_triangles() {
        let p = resolve_params(1, 0.5, 0.0).unwrap();
        assert!(finite(&p).abs() < 1e-12);
        assert_eq!(p.n0(), 3);
        assert!(resolve_params(1, 0.0, 0.0).unwrap().shift().is_uniform());
    }

    #[test]
    fn exact_rational_resolution() {
        let a = rational_from_decimal("0.25").unwrap();
        let d = rational_from_decimal("0.3").unwrap();
        let p = resolve_params(2, a.clone(), d).unwrap();
        assert_eq!(*p.shift(), Shift::Finite(BigRational::from_integer(10.into())));
        assert_eq!(p.implied_a(), a);
        assert_eq!(*p.b(), BigRational::from_integer(1.into()));
    }

    #[test]
    fn implied_a_matches_target() {
        for &(m, a, d) in &[(2, 0.3, 0.3), (3, 0.6, 0.5), (5, 0.2, 0.9), (2, 0.7, 0.0)] {
            let p = resolve_params::<f64>(m, a, d).unwrap();
            assert!((p.implied_a() - a).abs() < 1e-12, "m={m} a={a} d={d}");
            let two_ma_plus_b = 2.0 * m as f64 * a + p.b();
            assert!((two_ma_plus_b - m as f64).abs() < 1e-12);
        }
    }
}
