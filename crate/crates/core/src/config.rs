use serde::{Deserialize, Serialize};

/// Execution strategy for data-parallel inner loops.
///
/// `Parallel` is honored only when the crate is built with the `parallel`
/// feature; otherwise it runs sequentially. Both strategies produce
/// identical results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

/// Size caps and execution settings shared by every pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    /// Maximum number of patterns enumerated on one shape (|Ω_n| and friends).
    pub max_patterns: u64,
    /// Maximum number of generators alive during double description.
    pub max_generators: usize,
    /// Maximum side length of a torus in the 2D periodic search.
    pub max_torus: usize,
    /// Maximum number of words in one compiled language.
    pub max_language: usize,
    /// Maximum word length in one compiled language.
    pub max_word_length: usize,
    /// Maximum number of (E, a, u) triples materialized by the full invariance family.
    pub max_constraints: u64,
    /// Largest source dimension for which projections go through vertex
    /// enumeration; bigger sources use the LP oracle.
    pub max_vertex_route_dim: usize,
    pub exec: Exec,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_patterns: 1 << 24,
            max_generators: 200_000,
            max_torus: 6,
            max_language: 100_000,
            max_word_length: 4096,
            max_constraints: 1 << 22,
            max_vertex_route_dim: 32,
            exec: Exec::Parallel,
        }
    }
}

impl Config {
    pub fn sequential() -> Self {
        Config {
            exec: Exec::Sequential,
            ..Config::default()
        }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }
}
