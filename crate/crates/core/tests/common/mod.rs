//! Deterministic corpora shared by the acceptance suite and integration tests.
#![allow(dead_code)]

use threshold_core::graphic::{random_bipartite, random_graph, Graph};
use threshold_core::{random_game, SimpleGame};

/// Random games with `n` cycling through `lo..=hi`.
pub fn game_corpus(count: u64, lo: usize, hi: usize) -> Vec<(u64, SimpleGame)> {
    (0..count)
        .map(|seed| {
            let n = lo + (seed as usize) % (hi - lo + 1);
            let size = 1 + (seed as usize / 3) % (2 * n);
            (seed, random_game(n, seed, size).unwrap())
        })
        .collect()
}

/// Random graphs on `lo..=hi` vertices with between 1 and ~half of all edges.
pub fn graph_corpus(count: u64, lo: usize, hi: usize) -> Vec<(u64, Graph)> {
    (0..count)
        .map(|seed| {
            let n = lo + (seed as usize) % (hi - lo + 1);
            let pairs = n * (n - 1) / 2;
            let m = 1 + (seed as usize * 7) % (pairs / 2 + 1);
            (seed, random_graph(n, m, seed).unwrap())
        })
        .collect()
}

pub fn bipartite_corpus(count: u64, lo: usize, hi: usize) -> Vec<(u64, Graph)> {
    (0..count)
        .map(|seed| {
            let n = lo + (seed as usize) % (hi - lo + 1);
            let density = [0.25, 0.4, 0.6][seed as usize % 3];
            (seed, random_bipartite(n, density, seed).unwrap())
        })
        .collect()
}

/// `(n, seeds)` groups for the complete-game corpus: 50 seeds, `n = 4 + seed mod 7`.
pub fn wvg_groups() -> Vec<(usize, Vec<u64>)> {
    (4..=10)
        .map(|n| (n, (0..50u64).filter(|s| 4 + (*s as usize) % 7 == n).collect()))
        .collect()
}
