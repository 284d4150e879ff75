//! Directed graphlets of two and three nodes, their orbits, and motif significance.
//!
//! Counting is on induced subgraphs: every connected pair and weakly connected
//! triple is classified once under its full arc set. Significance compares the
//! counts against degree-preserving random digraphs.

mod atlas;
mod count;
mod ensemble;

use serde::{Deserialize, Serialize};

pub use atlas::{
    atlas, build_atlas, decode, encode, Classification, Graphlet, GraphletAtlas, DYAD_PAIRS,
    GRAPHLET_COUNT, ORBIT_COUNT, TRIAD_PAIRS,
};
pub use count::{
    count_digraph, count_motifs, count_motifs_and_orbits, opp_profile, Digraph, MotifCounts,
    OppProfile, OrbitCounts, OPP_DIVISOR,
};
pub use ensemble::{
    configuration_ensemble, configuration_ensemble_with, ensemble_counts, has_move, randomize,
    sample_rng, EnsembleConfig, EnsembleStats,
};

/// Magnitude given to a z-score whose null spread is zero but whose count differs.
pub const DEFAULT_Z_CAP: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignificanceProfile {
    pub z: Vec<f64>,
    /// `z` scaled to unit length, or all zeros.
    pub sp: Vec<f64>,
    /// Motifs whose z-score was set to the cap because the null spread is zero.
    pub capped: Vec<bool>,
}

impl SignificanceProfile {
    pub fn from_z(z: Vec<f64>) -> Self {
        let capped = vec![false; z.len()];
        Self::normalise(z, capped)
    }

    fn normalise(z: Vec<f64>, capped: Vec<bool>) -> Self {
        let norm = z.iter().map(|v| v * v).sum::<f64>().sqrt();
        let sp = if norm > 0.0 {
            z.iter().map(|v| v / norm).collect()
        } else {
            vec![0.0; z.len()]
        };
        Self { z, sp, capped }
    }
}

pub fn significance_profile(counts: &[f64], ensemble: &EnsembleStats, z_cap: f64) -> SignificanceProfile {
    let mut z = Vec::with_capacity(counts.len());
    let mut capped = Vec::with_capacity(counts.len());
    for ((&n, &mean), &std) in counts.iter().zip(&ensemble.mean).zip(&ensemble.std) {
        let diff = n - mean;
        if std > 0.0 {
            z.push(diff / std);
            capped.push(false);
        } else if diff == 0.0 {
            z.push(0.0);
            capped.push(false);
        } else {
            z.push(z_cap.copysign(diff));
            capped.push(true);
        }
    }
    SignificanceProfile::normalise(z, capped)
}
