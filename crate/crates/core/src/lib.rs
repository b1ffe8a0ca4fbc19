pub mod distance;
pub mod error;
pub mod experiments;
pub mod frechet;
pub mod fscore;
pub mod geometry;
pub mod graph;
pub mod matching;
pub mod signature;

pub use error::{Error, Result};
