//! Scale-free network subgraph theory, configuration-model percolation
//! oracles, and simulations of three distributed recommender protocols.

pub mod drs;
pub mod graph;
pub mod predictors;
pub mod theory;

pub use graph::{Graph, GraphError};
pub use theory::{PowerLawParams, SubgraphSlope, TheoryError, BETA_0};
