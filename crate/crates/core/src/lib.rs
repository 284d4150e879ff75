//! Directed weighted pass networks from football event data.
//!
//! A match event stream is turned into one passmap per team and time window,
//! where nodes are players and arc weights count completed passes. Windows are
//! cut around three key events (half time, first goal, first dismissal) so the
//! same team can be compared before and after each of them.
//!
//! The crate is organised by analysis stage:
//!
//! - [`events`]: StatsBomb event parsing, key events, possession stints, pass selection.
//! - [`passmap`]: network construction, splitting, median pruning, shot augmentation, Pajek I/O.
//! - [`centrality`]: betweenness, harmonic closeness, flow centrality, std deltas.
//! - [`intensity`]: passes per second of possession.
//! - [`community`]: Leiden, clique percolation, NMI, composition by playing line.
//! - [`fragments`]: directed graphlet atlas, motif and orbit counts, configuration-model
//!   ensembles, significance and orbit profiles.
//! - [`pipeline`]: manifest-driven corpus runs writing Pajek trees, CSV tables and SVG plots.
//!
//! Runnable walkthroughs for each stage live in the crate's `examples/` directory.

pub mod centrality;
pub mod community;
pub mod error;
pub mod events;
pub mod fragments;
pub mod intensity;
pub mod passmap;
pub mod pipeline;

mod ids;
mod stats;

pub use error::{Error, Result};
pub use ids::{PlayerId, TeamId};
