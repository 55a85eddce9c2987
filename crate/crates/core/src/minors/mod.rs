//! Planarity with embeddings, and K5-minor detection.

mod embedding;
mod k5;
mod planarity;

pub use embedding::PlanarEmbedding;
pub use k5::{has_k5_minor, has_k5_minor_with_budget, K5_BUDGET};
pub use planarity::is_planar;

