//! Degree-preserving random digraphs for motif null models.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::atlas::GRAPHLET_COUNT;
use super::count::{count_motifs, Digraph, MotifCounts};
use crate::error::{Error, Result};
use crate::passmap::Passmap;
use crate::stats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub size: usize,
    pub master_seed: u64,
    /// Accepted moves per sample, as a multiple of the arc count.
    pub swaps_per_arc: usize,
}

impl Default for EnsembleConfig {
    fn default() -> Self {
        Self {
            size: 100,
            master_seed: 0,
            swaps_per_arc: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleStats {
    pub size: usize,
    pub master_seed: u64,
    pub mean: Vec<f64>,
    /// Sample standard deviation of each motif count.
    pub std: Vec<f64>,
    /// No degree-preserving move exists, so every sample is a copy of the input.
    pub frozen: bool,
}

/// Per-sample generator: the master seed on stream `index`.
pub fn sample_rng(master_seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index as u64);
    rng
}

fn can_swap(g: &Digraph, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    !(a == c || b == d || a == d || c == b || g.has(a, d) || g.has(c, b))
}

/// Replaces `a -> b, c -> d` with `a -> d, c -> b` when that keeps the graph simple.
fn try_swap(g: &mut Digraph, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    if !can_swap(g, (a, b), (c, d)) {
        return false;
    }
    g.set(a, b, false);
    g.set(c, d, false);
    g.set(a, d, true);
    g.set(c, b, true);
    true
}

fn can_reverse(g: &Digraph, (a, b): (usize, usize), c: usize) -> bool {
    c != a
        && c != b
        && g.has(b, c)
        && g.has(c, a)
        && !g.has(b, a)
        && !g.has(c, b)
        && !g.has(a, c)
}

/// Reverses the directed triangle `a -> b -> c -> a` when none of its reverse arcs exist.
///
/// A lone 3-cycle admits no arc swap, so without this move the chain could not
/// reach its mirror image.
fn try_reverse_triangle(g: &mut Digraph, (a, b): (usize, usize), c: usize) -> bool {
    if !can_reverse(g, (a, b), c) {
        return false;
    }
    for (x, y) in [(a, b), (b, c), (c, a)] {
        g.set(x, y, false);
        g.set(y, x, true);
    }
    true
}

/// Whether any swap or triangle reversal is legal from `g`.
pub fn has_move(g: &Digraph) -> bool {
    let arcs = g.arcs();
    for (i, &x) in arcs.iter().enumerate() {
        for &y in &arcs[i + 1..] {
            if can_swap(g, x, y) {
                return true;
            }
        }
        for c in 0..g.node_count() {
            if can_reverse(g, x, c) {
                return true;
            }
        }
    }
    false
}

/// One randomised copy of `g` after `target` accepted moves.
pub fn randomize(g: &Digraph, target: usize, rng: &mut impl Rng) -> Digraph {
    let mut h = g.clone();
    let mut arcs = h.arcs();
    let n = h.node_count();
    if !has_move(&h) {
        return h;
    }
    let mut accepted = 0;
    while accepted < target {
        let i = rng.gen_range(0..arcs.len());
        if rng.gen_bool(0.9) {
            let j = rng.gen_range(0..arcs.len());
            let (x, y) = (arcs[i], arcs[j]);
            if try_swap(&mut h, x, y) {
                arcs[i] = (x.0, y.1);
                arcs[j] = (y.0, x.1);
                accepted += 1;
            }
        } else {
            let c = rng.gen_range(0..n);
            if try_reverse_triangle(&mut h, arcs[i], c) {
                arcs = h.arcs();
                accepted += 1;
            }
        }
    }
    h
}

/// Motif counts of `config.size` degree-preserving randomisations of `g`.
pub fn ensemble_counts(g: &Digraph, config: &EnsembleConfig) -> (Vec<MotifCounts>, bool) {
    let frozen = !has_move(g);
    let target = config.swaps_per_arc * g.arc_count();
    let counts = (0..config.size)
        .into_par_iter()
        .map(|i| {
            if frozen {
                return count_motifs(g);
            }
            let mut rng = sample_rng(config.master_seed, i);
            count_motifs(&randomize(g, target, &mut rng))
        })
        .collect();
    (counts, frozen)
}

pub fn configuration_ensemble_with(g: &Passmap, config: &EnsembleConfig) -> Result<EnsembleStats> {
    if config.size < 2 {
        return Err(Error::InvalidArgument(format!(
            "ensemble size must be at least 2, got {}",
            config.size
        )));
    }
    let d = Digraph::from_passmap(g);
    if d.arc_count() == 0 {
        return Err(Error::InvalidArgument(
            "configuration ensemble needs at least one arc".into(),
        ));
    }
    let (samples, frozen) = ensemble_counts(&d, config);
    let mut mean = Vec::with_capacity(GRAPHLET_COUNT);
    let mut std = Vec::with_capacity(GRAPHLET_COUNT);
    for i in 0..GRAPHLET_COUNT {
        let xs: Vec<f64> = samples.iter().map(|s| s.0[i] as f64).collect();
        mean.push(stats::mean(&xs).unwrap_or(0.0));
        std.push(stats::sample_std(&xs));
    }
    Ok(EnsembleStats {
        size: config.size,
        master_seed: config.master_seed,
        mean,
        std,
        frozen,
    })
}

pub fn configuration_ensemble(g: &Passmap, size: usize, master_seed: u64) -> Result<EnsembleStats> {
    configuration_ensemble_with(
        g,
        &EnsembleConfig {
            size,
            master_seed,
            ..EnsembleConfig::default()
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(g: &Digraph) -> Vec<(usize, usize)> {
        (0..g.node_count())
            .map(|v| (g.in_degree(v), g.out_degree(v)))
            .collect()
    }

    #[test]
    fn randomisation_keeps_degrees_and_simplicity() {
        let g = Digraph::from_arcs(
            6,
            [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (3, 0), (1, 4)],
        );
        let mut rng = sample_rng(9, 0);
        for _ in 0..20 {
            let h = randomize(&g, 90, &mut rng);
            assert_eq!(degrees(&h), degrees(&g));
            assert_eq!(h.arc_count(), g.arc_count());
            assert!((0..6).all(|v| !h.has(v, v)));
        }
    }

    #[test]
    fn single_arc_is_frozen() {
        let mut g = Passmap::default();
        g.add_arc("a".into(), "b".into(), 3);
        let e = configuration_ensemble(&g, 10, 1).unwrap();
        assert!(e.frozen);
        assert!(e.std.iter().all(|&s| s == 0.0));
        assert_eq!(e.mean[0], 1.0);
    }

    #[test]
    fn three_cycle_reverses() {
        let g = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]);
        assert!(has_move(&g));
        let mut rng = sample_rng(4, 0);
        assert_eq!(randomize(&g, 1, &mut rng).arcs(), [(0, 2), (1, 0), (2, 1)]);
        assert_eq!(randomize(&g, 2, &mut rng), g);
    }

    #[test]
    fn deterministic_for_a_seed() {
        let mut g = Passmap::default();
        for (a, b) in [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")] {
            g.add_arc(a.into(), b.into(), 1);
        }
        let x = configuration_ensemble(&g, 8, 77).unwrap();
        let y = configuration_ensemble(&g, 8, 77).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn rejects_bad_input() {
        let mut g = Passmap::default();
        assert!(configuration_ensemble(&g, 10, 1).is_err());
        g.add_arc("a".into(), "b".into(), 1);
        assert!(configuration_ensemble(&g, 1, 1).is_err());
    }
}
