//! Tree-cut decompositions of multigraphs: validation, width, leanness
//! certificates, and an improvement loop that makes any decomposition lean
//! without increasing its width.

pub mod error;
pub mod fixtures;
pub mod graph;
pub mod improve;
pub mod io;
pub mod leanness;
pub mod linkage;
pub mod oracle;
pub mod tcd;

pub use error::{Error, Result};
pub use graph::{CutSplit, Edge, EdgeId, EdgeSet, MultiGraph, Vertex, VertexSet};
pub use leanness::{Certificate, LeannessConfig};
pub use tcd::{Fatness, LinkId, NodeId, TreeCutDecomposition, Violation};
