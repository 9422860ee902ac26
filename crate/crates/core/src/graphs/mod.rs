//! The Grassmann graph, the degree-2 shortcode graph, and the degree-3
//! tensor graph.

mod grassmann;
mod shortcode;

pub use grassmann::{grassmann_adjacent, grassmann_neighbor, GrassmannGraph, GrassmannVertices};
pub use shortcode::{
    outer3_index, outer_index, shortcode_adjacent, shortcode_step, tensor_adjacent, tensor_step,
    ShortcodeGraph, TensorGraph,
};

/// Default cap on exhaustive vertex enumeration.
pub const DEFAULT_VERTEX_CAP: u64 = 1 << 24;
