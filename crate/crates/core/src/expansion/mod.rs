//! Stay probabilities and expansion, nice sets, decoders, and the Cayley
//! spectrum of the shortcode graph.

mod bridge;
mod decode;
mod measure;
mod nice;
mod spec;
mod spectrum;

pub use bridge::{
    converse_embedding_expansion, expansion_soundness_bridge, BridgeReport, ConverseReport,
    ConverseTrial, LevelSet,
};
pub use decode::{
    decode_grassmann, decode_shortcode, remeasure_grassmann, remeasure_shortcode, DecodeReport,
    DecodedRule, DecodedSet, DEFAULT_DECODE_CAP,
};
pub use measure::{
    grassmann_expansion, nice_density, nice_density_grassmann, stay_probability, ExpansionReport,
    GrassmannSet, ShortcodeSet,
};
pub use nice::{NiceSetGrassmann, NiceSetShortcode};
pub use spec::{
    format_grassmann_set, format_shortcode_set, parse_grassmann_set, parse_shortcode_set,
};
pub use spectrum::{
    cayley_eigenvalue, character_average, spectrum_by_rank, step_distribution,
    step_distribution_from_spectrum,
};
