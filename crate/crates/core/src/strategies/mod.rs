//! Assignments under test: a linear function per Grassmann vertex, an
//! `l`-bit label per matrix, or an `l`-bit label per tensor.

mod functional;
mod grassmann;
mod io;
mod shortcode;
mod tensor;

pub use functional::LinearFunctional;
pub use grassmann::{
    eval_grassmann, make_planted_grassmann, GrassmannBacking, GrassmannPlanted, GrassmannRegion,
    GrassmannStrategy,
};
pub use io::{read_strategy, write_strategy, AnyStrategy};
pub use shortcode::{
    eval_shortcode, make_planted, uniquify, PlantedPart, ShortcodeBacking, ShortcodePlanted,
    ShortcodeRegion, ShortcodeStrategy,
};
pub use tensor::{TensorBacking, TensorStrategy};
