//! Perfect pseudo-matchings in cubic graphs: contraction, planarity and
//! minor tests, compatible cycle decompositions, cycle double covers and
//! the crossing replacement construction.

pub mod canon;
pub mod census;
pub mod coloring;
pub mod connectivity;
pub mod constructions;
pub mod cycles;
pub mod drawing;
pub mod error;
pub mod families;
pub mod generate;
pub mod graph;
pub mod graph6;
pub mod minors;
pub mod ppm;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use coloring::{find_3_edge_coloring, is_3_edge_colorable_with_poles, is_snark};
pub use connectivity::cyclic_edge_connectivity_at_least;
pub use error::{Error, Result};
pub use graph::{CubicGraph, EdgeColoring, EdgeId, Multigraph, Vertex, VERTEX_CAP};
pub use graph6::{parse_graph6, write_graph6};
