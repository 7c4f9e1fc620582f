pub mod clique;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod lp;
pub mod skeleton;
pub mod solvers;

pub use error::{Error, Result};
pub use graph::{Constraint, EdgeIndex, GraphInstance, SpanningTree};
pub use num_rational::BigRational as Rational;
