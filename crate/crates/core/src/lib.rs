//! Boolean networks on the n-cube: their synchronous and asynchronous state graphs,
//! isomorphism tests, the staple rule for hypercube solidity, and constructions that
//! relabel a network to shape its asynchronous attractors.

pub mod certificate;
pub mod config;
pub mod construct;
pub mod digraph;
pub mod dynamics;
pub mod error;
pub mod experiment;
pub mod io;
pub mod iso;
pub mod network;
pub mod perm;
pub mod rng;
pub mod solidity;

pub use config::Config;
pub use digraph::{AttractorSet, Digraph, StateDigraph};
pub use error::{Error, ParseError, Precondition, Result};
pub use network::BoolNet;
pub use perm::StatePermutation;
pub use rng::RandomSource;
