//! DP-coloring (correspondence coloring) of multigraphs: covers, exact
//! colorability checks, the block characterization of degree-colorable
//! multigraphs, and edge bounds for critical graphs.

pub mod config;
pub mod census;
pub mod cli;
pub mod characterization;
pub mod cover;
pub mod critical;
pub mod error;
pub mod format;
pub mod multigraph;
pub mod solver;
pub mod space;

pub use config::Limits;
pub use cover::{build_bad_complete, build_bad_cycle, glue, product_reduction, reduce_list, Cover, Violation};
pub use error::{Error, Result};
pub use multigraph::{Block, BlockClass, BlockDecomposition, Multigraph, Vertex};
pub use solver::{
    check_transversal, chi_dp, degree_colorable_oracle, greedy_color, solve, OracleVerdict, SolveResult, SolveStatus,
    Transversal,
};
pub use space::enumerate_degree_covers;
