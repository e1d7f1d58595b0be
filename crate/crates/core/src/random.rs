//! Seedable generators for the random clique 2-complex and its square-cell
//! variant.
//!
//! Pair `{u, v}` (with `u < v`, pairs numbered lexicographically from 0) is
//! decided by the 64-bit word at position `index` of the ChaCha8 stream keyed
//! by the seed. The decision for a pair therefore depends only on
//! `(seed, index)`, never on the order pairs are visited.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::{CellComplex2, Complex2, Edge, Vertex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed(pub u64);

/// Per-trial seed: `base XOR H(i, j)` where `H` is the first eight bytes of
/// SHA-256 over the little-endian encodings of `i` and `j`.
pub fn derive_seed(base: Seed, i: u64, j: u64) -> Seed {
    let mut hasher = Sha256::new();
    hasher.update(i.to_le_bytes());
    hasher.update(j.to_le_bytes());
    let digest = hasher.finalize();
    let mut word = [0u8; 8];
    word.copy_from_slice(&digest[..8]);
    Seed(base.0 ^ u64::from_le_bytes(word))
}

fn to_unit(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform variate in `[0, 1)` for pair number `index`.
pub fn pair_uniform(seed: Seed, index: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    rng.set_word_pos(2 * index as u128);
    to_unit(rng.next_u64())
}

pub fn pair_index(n: u32, u: Vertex, v: Vertex) -> u64 {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    let (n, u, v) = (n as u64, u as u64, v as u64);
    // pairs whose first vertex is below u, then offset within row u
    (u - 1) * n - (u - 1) * u / 2 + (v - u - 1)
}

/// Edge set of `G(n, p)`.
pub fn sample_edges(n: u32, p: f64, seed: Seed) -> Result<Vec<Edge>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p.to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    let mut edges = Vec::new();
    // sequential reads visit words 0, 2, 4, ... which is what pair_uniform
    // reads for indices 0, 1, 2, ...
    for u in 1..=n {
        for v in u + 1..=n {
            if to_unit(rng.next_u64()) < p {
                edges.push([u, v]);
            }
        }
    }
    Ok(edges)
}

/// `K(n, p)`: clique 2-skeleton of an Erdős–Rényi graph.
pub fn sample_knp(n: u32, p: f64, seed: Seed) -> Result<Complex2> {
    let edges = sample_edges(n, p, seed)?;
    Complex2::clique_two_skeleton(n, &edges)
}

/// `K4(n, p)`: same graph as [`sample_knp`], with a 2-cell on every 3-cycle
/// and every 4-cycle (chorded or not).
pub fn sample_k4np(n: u32, p: f64, seed: Seed) -> Result<CellComplex2> {
    let edges = sample_edges(n, p, seed)?;
    let clique = Complex2::clique_two_skeleton(n, &edges)?;
    let mut cells: Vec<Vec<Vertex>> = clique.triangles().iter().map(|t| t.to_vec()).collect();
    cells.extend(four_cycles(&clique));
    CellComplex2::new(n, clique.edges(), &cells)
}

/// Every 4-cycle `(a, b, c, d)` once, with `a` the smallest vertex and `b < d`.
pub fn four_cycles(x: &Complex2) -> Vec<Vec<Vertex>> {
    let adj = x.adjacency();
    let mut out = Vec::new();
    for a in x.vertices() {
        let na: Vec<Vertex> = adj[a as usize - 1].iter().copied().filter(|&v| v > a).collect();
        for (i, &b) in na.iter().enumerate() {
            for &d in &na[i + 1..] {
                for &c in &adj[b as usize - 1] {
                    if c > a && c != d && x.has_edge(c, d) {
                        out.push(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::FVector;

    #[test]
    fn extremes() {
        let x = sample_knp(5, 1.0, Seed(9)).unwrap();
        assert_eq!(x.f_vector(), FVector { f0: 5, f1: 10, f2: 10 });
        let y = sample_knp(5, 0.0, Seed(9)).unwrap();
        assert_eq!(y.f_vector(), FVector { f0: 5, f1: 0, f2: 0 });
        assert!(sample_knp(5, 1.5, Seed(0)).is_err());
        assert!(sample_knp(5, -0.1, Seed(0)).is_err());
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            sample_knp(30, 0.3, Seed(42)).unwrap(),
            sample_knp(30, 0.3, Seed(42)).unwrap()
        );
        assert_eq!(
            sample_k4np(12, 0.4, Seed(7)).unwrap(),
            sample_k4np(12, 0.4, Seed(7)).unwrap()
        );
        assert_ne!(
            sample_knp(30, 0.3, Seed(42)).unwrap(),
            sample_knp(30, 0.3, Seed(43)).unwrap()
        );
    }

    #[test]
    fn random_access_matches_sequential() {
        let (n, p, seed) = (17, 0.35, Seed(2024));
        let edges = sample_edges(n, p, seed).unwrap();
        let mut expected = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                if pair_uniform(seed, pair_index(n, u, v)) < p {
                    expected.push([u, v]);
                }
            }
        }
        assert_eq!(edges, expected);
    }

    #[test]
    fn pair_indices_are_lexicographic() {
        let n = 7;
        let mut k = 0;
        for u in 1..=n {
            for v in u + 1..=n {
                assert_eq!(pair_index(n, u, v), k);
                assert_eq!(pair_index(n, v, u), k);
                k += 1;
            }
        }
    }

    #[test]
    fn derived_seeds_differ() {
        let a = derive_seed(Seed(5), 0, 0);
        assert_eq!(a, derive_seed(Seed(5), 0, 0));
        assert_ne!(a, derive_seed(Seed(5), 0, 1));
        assert_ne!(a, derive_seed(Seed(5), 1, 0));
        assert_eq!(derive_seed(Seed(5), 3, 4).0 ^ 5, derive_seed(Seed(0), 3, 4).0);
    }

    #[test]
    fn k4_complete_cells() {
        let x = sample_k4np(4, 1.0, Seed(1)).unwrap();
        assert_eq!(x.edges().len(), 6);
        let (tri, sq): (Vec<_>, Vec<_>) = x.cells().iter().partition(|c| c.len() == 3);
        assert_eq!((tri.len(), sq.len()), (4, 3));
        let y = sample_k4np(4, 0.0, Seed(1)).unwrap();
        assert!(y.edges().is_empty() && y.cells().is_empty());
    }

    #[test]
    fn four_cycles_match_brute_force() {
        for s in 0..20 {
            let x = sample_knp(8, 0.5, Seed(s)).unwrap();
            let mut brute = std::collections::BTreeSet::new();
            let n = x.vertex_count();
            for a in 1..=n {
                for b in 1..=n {
                    for c in 1..=n {
                        for d in 1..=n {
                            let w = [a, b, c, d];
                            let mut s = w.to_vec();
                            s.sort();
                            s.dedup();
                            if s.len() == 4 && (0..4).all(|i| x.has_edge(w[i], w[(i + 1) % 4])) {
                                brute.insert(crate::complex::canonical_walk(&w));
                            }
                        }
                    }
                }
            }
            let found: std::collections::BTreeSet<_> = four_cycles(&x).into_iter().collect();
            assert_eq!(found, brute);
        }
    }

    #[test]
    fn same_graph_both_models() {
        for s in 0..10 {
            let a = sample_knp(15, 0.3, Seed(s)).unwrap();
            let b = sample_k4np(15, 0.3, Seed(s)).unwrap();
            assert_eq!(a.edges(), b.edges());
            let tri: Vec<Vec<Vertex>> = b.cells().iter().filter(|c| c.len() == 3).cloned().collect();
            let expected: Vec<Vec<Vertex>> = a.triangles().iter().map(|t| t.to_vec()).collect();
            assert_eq!(tri, expected);
        }
    }

    #[test]
    fn edge_count_mean() {
        // n = 20, p = 1/2: 190 pairs, mean 95, sd sqrt(47.5)
        let trials = 10_000u64;
        let counts: Vec<f64> = (0..trials)
            .map(|s| sample_edges(20, 0.5, Seed(s)).unwrap().len() as f64)
            .collect();
        let mean = counts.iter().sum::<f64>() / trials as f64;
        let se = (190.0f64 * 0.25).sqrt() / (trials as f64).sqrt();
        assert!((mean - 95.0).abs() < 3.0 * se, "mean {mean}");
    }
}
