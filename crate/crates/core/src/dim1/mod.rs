//! One-dimensional machinery: overlap graphs, periodic orbits, Markov
//! extensions of locally invariant measures, and the vertex/cycle pairing.

mod classify;
mod decompose;
mod graph;
mod markov;

pub use classify::{classify_against, classify_extreme_points, ClassificationReport, VertexPair};
pub use decompose::{find_two_decompositions, reproduces, Decomposition};
pub use graph::{debruijn_graph, orbit_measure, simple_cycles, Edge, GraphJson, PeriodicOrbit, TransitionGraph};
pub use markov::{chain_marginal, markov_extension, ChainJson, EdgeJson, MarkovChain, Transition};
