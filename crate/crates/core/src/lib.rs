//! Streaming algorithms for independent sets and cliques in geometric
//! intersection graphs, together with the communication-complexity
//! constructions used to bound their memory from below.

pub mod geometry;
pub mod hardness;
pub mod interval_clique;
pub mod interval_selection;
pub mod oracle;
pub mod rect_selection;
pub mod streamkit;
