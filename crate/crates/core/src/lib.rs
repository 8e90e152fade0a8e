//! Local chromatic number solvers, box and hom complexes of graphs, and GF(2)
//! simplicial homology.

pub mod box_complexes;
pub mod claims;
pub mod error;
pub mod families;
pub mod graph;
pub mod homology;
pub mod simplicial;
pub mod solvers;

pub use error::{Error, Result};
pub use graph::{Coloring, Graph};
