//! Seeded instance generators over a fixed, portable PRNG.
//!
//! The generator is SplitMix64: state advances by 0x9E3779B97F4A7C15 and the
//! output is finalized with two xor-shift multiplies. Identical seeds give
//! identical instances on every platform, which keeps generated corpora
//! reproducible across implementations.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{PathMode, TemporalEdge, TemporalGraph, TimeLabel};
use crate::reach::is_connected;

/// SplitMix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in [0, bound); bound must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        // Rejection sampling over the top multiple of `bound`.
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    /// Uniform value in [lo, hi] inclusive.
    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        lo + self.below(hi - lo + 1)
    }
}

/// Shape of a generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Tree,
    Cycle,
    General,
}

/// Parameters for [`gen_random`].
#[derive(Debug, Clone, Copy)]
pub struct GenConfig {
    pub kind: GraphKind,
    pub n: usize,
    /// Maximum labels per underlying edge (at least 1 is always used).
    pub labels_per_edge: usize,
    pub weight_min: u64,
    pub weight_max: u64,
    /// Labels are drawn from 1..=max_label; 0 means 2n.
    pub max_label: u64,
    pub seed: u64,
}

impl GenConfig {
    pub fn new(kind: GraphKind, n: usize, labels_per_edge: usize, seed: u64) -> Self {
        GenConfig {
            kind,
            n,
            labels_per_edge,
            weight_min: 1,
            weight_max: 5,
            max_label: 0,
            seed,
        }
    }
}

/// Deterministic random temporal graph of the requested shape.
pub fn gen_random(cfg: &GenConfig) -> Result<TemporalGraph> {
    if cfg.n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    if cfg.labels_per_edge == 0 {
        return Err(Error::InvalidInput(
            "labels_per_edge must be positive".into(),
        ));
    }
    if cfg.weight_min > cfg.weight_max {
        return Err(Error::InvalidInput("weight range is empty".into()));
    }
    if cfg.kind == GraphKind::Cycle && cfg.n < 3 {
        return Err(Error::InvalidInput("a cycle needs n >= 3".into()));
    }
    let mut rng = SplitMix64::new(cfg.seed);
    let max_label = if cfg.max_label == 0 {
        2 * cfg.n as u64
    } else {
        cfg.max_label
    };

    let mut underlying: Vec<(usize, usize)> = Vec::new();
    match cfg.kind {
        GraphKind::Tree => {
            for v in 1..cfg.n {
                let parent = rng.below(v as u64) as usize;
                underlying.push((parent, v));
            }
        }
        GraphKind::Cycle => {
            for v in 0..cfg.n {
                underlying.push((v, (v + 1) % cfg.n));
            }
        }
        GraphKind::General => {
            // Random spanning tree first, then extra pairs at density ~ 2/5.
            for v in 1..cfg.n {
                let parent = rng.below(v as u64) as usize;
                underlying.push((parent, v));
            }
            let have: BTreeSet<(usize, usize)> = underlying
                .iter()
                .map(|&(u, v)| (u.min(v), u.max(v)))
                .collect();
            for u in 0..cfg.n {
                for v in (u + 1)..cfg.n {
                    if !have.contains(&(u, v)) && rng.below(5) < 2 {
                        underlying.push((u, v));
                    }
                }
            }
        }
    }

    let mut edges = Vec::new();
    for &(u, v) in &underlying {
        let count = rng.range(1, cfg.labels_per_edge as u64) as usize;
        let mut labels = BTreeSet::new();
        while labels.len() < count {
            labels.insert(rng.range(1, max_label));
        }
        for label in labels {
            let weight = rng.range(cfg.weight_min, cfg.weight_max);
            edges.push(TemporalEdge::new(u, v, TimeLabel(label), weight));
        }
    }
    TemporalGraph::new(cfg.n, 1, edges)
}

/// Like [`gen_random`], but rejection-samples sub-seeds derived from
/// `cfg.seed` until the instance is temporally connected in `mode`. Still
/// fully deterministic per seed.
pub fn gen_random_connected(cfg: &GenConfig, mode: PathMode) -> Result<TemporalGraph> {
    let mut seeds = SplitMix64::new(cfg.seed);
    for _ in 0..10_000 {
        let attempt = GenConfig {
            seed: seeds.next_u64(),
            ..*cfg
        };
        let g = gen_random(&attempt)?;
        if is_connected(&g, mode) {
            return Ok(g);
        }
    }
    Err(Error::Internal(format!(
        "no connected instance found for seed {} within 10000 attempts",
        cfg.seed
    )))
}
