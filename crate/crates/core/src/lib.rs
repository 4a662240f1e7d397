//! VW-matchings, a (2-eps)-Hall criterion with its hypergraph audit, the
//! cover game with a constructive Cover strategy, assignment-family
//! certificates, and space measures for Resolution and PCR traces over
//! random 3-CNFs.
//!
//! Vertices are 0-based indices, kept separately for the left side
//! (clauses) and the right side (variables).

pub mod cnfspace;
pub mod covergame;
pub mod error;
pub mod graph;
pub mod hall;
pub mod rational;
pub mod strategy;

pub use error::{Error, Result};
pub use rational::Rational;

/// Size limits for the exact searches. All of them can be raised.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest target set `find_vw_cover` accepts.
    pub cover_targets: usize,
    /// Largest subset size `is_expander` enumerates.
    pub expander_size: usize,
    /// Number of subsets the matching-property oracle may test.
    pub property_subsets: usize,
    /// Edge count cap for 2-path cover search.
    pub hyper_edges: usize,
    /// Number of strategy members / piecewise assignments enumerated.
    pub members: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            cover_targets: 16,
            expander_size: 20,
            property_subsets: 2_000_000,
            hyper_edges: 32,
            members: 100_000,
        }
    }
}
