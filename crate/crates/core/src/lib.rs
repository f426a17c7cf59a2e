//! Generalized preferential attachment graphs with tunable clustering.
//!
//! Each step adds a vertex with `m` edges. With probability `D` two of them
//! close a triangle on a uniformly chosen edge; the rest attach with
//! probability proportional to `degree + a`. The crate generates such graphs,
//! measures degree-conditioned clustering on them, evaluates the closed-form
//! limits, and checks the generator against an exact enumeration oracle.
//!
//! Everything numeric is generic over the scalar type; the aliases below fix
//! it for common use.

pub mod analysis;
pub mod error;
pub mod experiments;
pub mod io;
pub mod model;
pub mod scalar;
pub mod stats;
pub mod theory;
pub mod validation;

pub use error::{Error, Result};
pub use model::{generate, resolve_params, GraphState, ModelParams, Multigraph, Shift};
pub use scalar::{Real, Scalar};

use num_rational::BigRational;

pub type Params = ModelParams<f64>;
pub type Params32 = ModelParams<f32>;
/// Parameters held as exact rationals, for enumeration without rounding.
pub type ExactParams = ModelParams<BigRational>;
pub type TheoryTable64 = theory::TheoryTable<f64>;
pub type TheoryTable32 = theory::TheoryTable<f32>;
pub type ClusteringReport64 = analysis::ClusteringReport<f64>;
pub type ExactEnumeration = validation::Enumeration<BigRational>;
