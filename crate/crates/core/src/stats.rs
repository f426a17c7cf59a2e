//! Small descriptive-statistics helpers shared by the analysis and
//! validation code.

use num_traits::Float;

use crate::scalar::Real;

/// Ordinary least-squares line `y = slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit<T> {
    pub slope: T,
    pub intercept: T,
    pub r2: T,
}

pub fn linear_fit<T: Real>(xs: &[T], ys: &[T]) -> Option<LinearFit<T>> {
    assert_eq!(xs.len(), ys.len());
    if xs.len() < 2 {
        return None;
    }
    let n = T::from_count(xs.len());
    let mx = xs.iter().copied().sum::<T>() / n;
    let my = ys.iter().copied().sum::<T>() / n;
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    let mut syy = T::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        sxx = sxx + (x - mx) * (x - mx);
        sxy = sxy + (x - mx) * (y - my);
        syy = syy + (y - my) * (y - my);
    }
    if sxx <= T::zero() {
        return None;
    }
    let slope = sxy / sxx;
    let r2 = if syy > T::zero() {
        sxy * sxy / (sxx * syy)
    } else {
        T::one()
    };
    Some(LinearFit {
        slope,
        intercept: my - slope * mx,
        r2,
    })
}

/// Sample mean and (n-1)-normalized standard deviation. The deviation is
/// zero for a single sample.
pub fn mean_sd<T: Real>(xs: &[T]) -> (T, T) {
    if xs.is_empty() {
        return (T::nan(), T::nan());
    }
    let n = T::from_count(xs.len());
    let mean = xs.iter().copied().sum::<T>() / n;
    if xs.len() == 1 {
        return (mean, T::zero());
    }
    let ss = xs.iter().map(|&x| (x - mean) * (x - mean)).sum::<T>();
    (mean, Float::sqrt(ss / (n - T::one())))
}

/// Coefficient of variation, `sd / mean`; zero when both vanish.
pub fn coefficient_of_variation<T: Real>(xs: &[T]) -> T {
    let (mean, sd) = mean_sd(xs);
    if sd == T::zero() {
        T::zero()
    } else {
        sd / mean
    }
}
