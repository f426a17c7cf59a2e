//! Model parameters, the growing multigraph and the triangle-step generator.

mod generator;
mod graph;
mod params;

pub use generator::{generate, pick_attachment, step, AttachmentRule, RngStream, StepKind};
pub use graph::{EdgeList, GraphState, Multigraph};
pub use params::{resolve_params, seed_size, ModelParams, Shift};
