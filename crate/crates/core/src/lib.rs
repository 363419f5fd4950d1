pub mod graph;
pub mod alliance;
pub mod solvers;
pub mod source;
pub mod reductions;
pub mod harness;
