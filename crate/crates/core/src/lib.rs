//! Chess game-tree search with information-theoretic fractional plies.

pub mod board;
pub mod entropy;
pub mod error;
pub mod experiments;
pub mod oracle;
pub mod search;

pub use error::{BoardError, EntropyError, ExperimentError, SearchError};
