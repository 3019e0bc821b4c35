pub mod algebra;
pub mod bounds;
pub mod constructions;
pub mod corpus;
pub mod digraph;
pub mod error;
pub mod experiments;
pub mod io;
pub mod linalg;
pub mod spectral;
pub mod walks;
pub mod zeta;

pub use digraph::{Digraph, PeriodData, UGraph, DENSE_LIMIT};
pub use error::{Error, Result};
