//! Spectral gaps of vertex links.
//!
//! The Laplacian used throughout is the symmetric normalized one,
//! `I - D^{-1/2} A D^{-1/2}`, with a zero row for isolated link vertices.
//! Its spectrum lies in `[0, 2]` and the multiplicity of `0` counts the
//! components having an edge. This is the only module that uses floating
//! point.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

use crate::complex::{Complex2, LinkGraph, Vertex};
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const GARLAND_THRESHOLD: f64 = 0.5;

pub fn normalized_laplacian(link: &LinkGraph) -> DMatrix<f64> {
    let adj = link.local_adjacency();
    let k = adj.len();
    let mut m = DMatrix::zeros(k, k);
    for (i, nbrs) in adj.iter().enumerate() {
        if !nbrs.is_empty() {
            m[(i, i)] = 1.0;
        }
        for &j in nbrs {
            m[(i, j)] = -1.0 / ((nbrs.len() * adj[j].len()) as f64).sqrt();
        }
    }
    m
}

/// Eigenvalues in ascending order.
pub fn link_spectrum(link: &LinkGraph, tol: f64) -> Vec<f64> {
    if link.vertices.is_empty() {
        return Vec::new();
    }
    let m = normalized_laplacian(link);
    let eig = SymmetricEigen::try_new(m.clone(), tol, 0).unwrap_or_else(|| SymmetricEigen::new(m));
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

fn gap_of(link: &LinkGraph, tol: f64) -> f64 {
    if link.edges.is_empty() || !link.is_connected() {
        return 0.0;
    }
    link_spectrum(link, tol)
        .into_iter()
        .find(|&x| x > tol)
        .unwrap_or(0.0)
}

/// Smallest eigenvalue above `tol` of the link's normalized Laplacian, or 0
/// when the link is disconnected.
pub fn link_spectral_gap(x: &Complex2, v: Vertex, tol: f64) -> Result<f64> {
    let link = x.vertex_link(v)?;
    if link.edges.is_empty() {
        return Err(Error::EdgelessLink { vertex: v });
    }
    Ok(gap_of(&link, tol))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    /// `(v, gap)` for every vertex with a nonempty link; edgeless links get 0.
    pub gaps: Vec<(Vertex, f64)>,
    pub min_gap: Option<f64>,
    pub all_links_connected: bool,
    pub links_passing: usize,
    pub threshold: f64,
    pub pass: bool,
}

impl SpectralReport {
    /// Share of nonempty links that are connected with gap above the
    /// threshold; 1 when there are none.
    pub fn frac_links_passing(&self) -> f64 {
        if self.gaps.is_empty() {
            1.0
        } else {
            self.links_passing as f64 / self.gaps.len() as f64
        }
    }
}

/// Checks the hypothesis of the Garland criterion: every nonempty link is
/// connected with gap above `threshold`. Passing proves nothing by itself.
///
/// A gap counts as above the threshold only when it clears it by more than
/// the tolerance, so gaps equal to the threshold (a path on four vertices
/// has gap exactly 1/2) fail regardless of rounding.
pub fn garland_scan(x: &Complex2, threshold: f64) -> SpectralReport {
    garland_scan_tol(x, threshold, DEFAULT_TOL)
}

pub fn garland_scan_tol(x: &Complex2, threshold: f64, tol: f64) -> SpectralReport {
    let links: Vec<LinkGraph> = x.all_links().into_iter().filter(|l| !l.vertices.is_empty()).collect();
    let rows: Vec<(Vertex, f64, bool)> = links
        .par_iter()
        .map(|l| (l.center, gap_of(l, tol), l.is_connected()))
        .collect();
    let all_links_connected = rows.iter().all(|r| r.2);
    let links_passing = rows.iter().filter(|r| r.2 && r.1 > threshold + tol).count();
    SpectralReport {
        min_gap: rows.iter().map(|r| r.1).min_by(f64::total_cmp),
        pass: links_passing == rows.len(),
        all_links_connected,
        links_passing,
        threshold,
        gaps: rows.into_iter().map(|(v, g, _)| (v, g)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::*;
    use crate::random::{sample_knp, Seed};
    use proptest::prelude::*;

    fn k(n: u32) -> Complex2 {
        Complex2::clique_two_skeleton(n, &all_pairs(n)).unwrap()
    }

    fn cone_over_cycle(m: u32) -> Complex2 {
        // apex m + 1 over the cycle 1..m
        let apex = m + 1;
        let mut edges = Vec::new();
        let mut tris = Vec::new();
        for i in 1..=m {
            let j = i % m + 1;
            edges.push([i.min(j), i.max(j)]);
            edges.push([i, apex]);
            tris.push({
                let mut t = [i, j, apex];
                t.sort_unstable();
                t
            });
        }
        Complex2::new(apex, &edges, &tris).unwrap()
    }

    #[test]
    fn gap_examples() {
        assert!((link_spectral_gap(&k(5), 1, DEFAULT_TOL).unwrap() - 4.0 / 3.0).abs() < 1e-9);
        assert!((link_spectral_gap(&cone_over_cycle(4), 5, DEFAULT_TOL).unwrap() - 1.0).abs() < 1e-9);
        let bowtie = Complex2::new(5, &[[1, 2], [1, 3], [2, 3], [1, 4], [1, 5], [4, 5]], &[[1, 2, 3], [1, 4, 5]]).unwrap();
        assert_eq!(link_spectral_gap(&bowtie, 1, DEFAULT_TOL).unwrap(), 0.0);
        assert!(matches!(
            link_spectral_gap(&cycle(&[1, 2, 3, 4, 5, 6], 6), 1, DEFAULT_TOL),
            Err(Error::EdgelessLink { vertex: 1 })
        ));
        let c4 = cone_over_cycle(4).vertex_link(5).unwrap();
        let spectrum = link_spectrum(&c4, DEFAULT_TOL);
        for (got, want) in spectrum.iter().zip([0.0, 1.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn complete_links() {
        for m in 3..=9u32 {
            let x = k(m + 1);
            let want = m as f64 / (m as f64 - 1.0);
            for v in x.vertices() {
                assert!((link_spectral_gap(&x, v, DEFAULT_TOL).unwrap() - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn gap_at_threshold_fails() {
        // cone over a path on four vertices: link gap is exactly 1/2
        let x = Complex2::new(
            5,
            &[[1, 2], [2, 3], [3, 4], [1, 5], [2, 5], [3, 5], [4, 5]],
            &[[1, 2, 5], [2, 3, 5], [3, 4, 5]],
        )
        .unwrap();
        assert!((link_spectral_gap(&x, 5, DEFAULT_TOL).unwrap() - 0.5).abs() < 1e-12);
        let report = garland_scan(&x, GARLAND_THRESHOLD);
        assert!(!report.pass);
    }

    #[test]
    fn scan_examples() {
        let report = garland_scan(&k(6), GARLAND_THRESHOLD);
        assert!(report.pass && report.all_links_connected);
        assert!((report.min_gap.unwrap() - 1.25).abs() < 1e-9);
        assert_eq!(report.frac_links_passing(), 1.0);

        let c6 = garland_scan(&cycle(&[1, 2, 3, 4, 5, 6], 6), GARLAND_THRESHOLD);
        assert!(!c6.pass && !c6.all_links_connected);
        assert_eq!(c6.min_gap, Some(0.0));

        let bowtie = Complex2::new(5, &[[1, 2], [1, 3], [2, 3], [1, 4], [1, 5], [4, 5]], &[[1, 2, 3], [1, 4, 5]]).unwrap();
        let b = garland_scan(&bowtie, GARLAND_THRESHOLD);
        assert!(!b.pass && !b.all_links_connected);
        assert_eq!(b.links_passing, 4);

        let empty = garland_scan(&Complex2::empty(3), GARLAND_THRESHOLD);
        assert!(empty.pass && empty.gaps.is_empty() && empty.min_gap.is_none());
    }

    proptest! {
        #[test]
        fn spectrum_bounds_and_trace(n in 3u32..=16, p in 0.2f64..1.0, seed in any::<u64>()) {
            let x = sample_knp(n, p, Seed(seed)).unwrap();
            for link in x.all_links() {
                let spectrum = link_spectrum(&link, DEFAULT_TOL);
                let m = spectrum.len() as f64;
                for &e in &spectrum {
                    prop_assert!((-DEFAULT_TOL..=2.0 + DEFAULT_TOL).contains(&e), "eigenvalue {}", e);
                }
                let non_isolated = link.local_adjacency().iter().filter(|a| !a.is_empty()).count() as f64;
                let trace: f64 = spectrum.iter().sum();
                prop_assert!((trace - non_isolated).abs() <= m.max(1.0) * 1e-9);
            }
        }

        #[test]
        fn relabeling_keeps_gaps(n in 3u32..=14, p in 0.3f64..1.0, seed in any::<u64>(), shift in 1u32..13) {
            let x = sample_knp(n, p, Seed(seed)).unwrap();
            let perm: Vec<u32> = (1..=n).map(|v| (v + shift - 1) % n + 1).collect();
            let y = x.permuted(&perm).unwrap();
            let a = garland_scan(&x, GARLAND_THRESHOLD);
            let b = garland_scan(&y, GARLAND_THRESHOLD);
            prop_assert_eq!(a.pass, b.pass);
            for &(v, g) in &a.gaps {
                let w = perm[v as usize - 1];
                let h = b.gaps.iter().find(|(u, _)| *u == w).unwrap().1;
                prop_assert!((g - h).abs() < 1e-9);
            }
        }
    }
}
