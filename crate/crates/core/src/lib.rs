pub mod abelian;
pub mod brown;
pub mod constructions;
pub mod digraph;
pub mod error;
pub mod homotopy;
pub mod io;
pub mod label;
pub mod path_homology;
pub mod random;

pub use digraph::{Digraph, DigraphMap, LineDigraph, Orientation};
pub use error::{Error, Result};
