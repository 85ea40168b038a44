pub mod catalog;
pub mod cli;
pub mod error;
pub mod extension;
pub mod forcing;
pub mod harness;
pub mod graph;
pub mod throttle;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
