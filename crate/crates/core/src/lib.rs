//! Group-valued flows on finite multigraphs and on periodic infinite graphs.

pub mod cli;
pub mod coloring;
pub mod contraction;
pub mod corpus;
pub mod error;
pub mod eulerian;
pub mod flow;
pub mod fixtures;
pub mod gadgets;
pub mod graph;
pub mod group;
pub mod infinite;
pub mod iso;
pub mod periodic;
pub mod tension;

pub use error::{Error, Result};
