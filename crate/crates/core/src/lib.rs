pub mod embedding;
pub mod error;
pub mod expansion;
pub mod gf2;
pub mod graphs;
pub mod montecarlo;
pub mod rng;
pub mod strategies;
pub mod suite;
pub mod testers;

pub use error::{Error, Result};
