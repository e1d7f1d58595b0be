//! Executable combinatorics of random clique 2-complexes.
//!
//! The crate generates `K(n, p)` (the 2-skeleton of the clique complex of an
//! Erdős–Rényi graph) and its square-cell variant, minimizes the
//! vertex-to-edge ratio over subcomplexes exactly, computes homology over
//! F2, Q and Z, reads off wedge signatures, and issues certificates that a
//! rooted 6-cycle is not contractible.

pub mod certificates;
pub mod complex;
pub mod cx2;
pub mod density;
pub mod error;
pub mod experiments;
pub mod f2;
mod flow;
pub mod homology;
pub mod random;
pub mod snf;
pub mod spectral;
pub mod wedge;

pub use complex::{CellComplex2, Complex2, Edge, FVector, LinkGraph, Subcomplex, Triangle, Vertex};
pub use density::{
    density_brute, density_flow, e01, edge_bound_check, is_k_admissible, Density, DensityReport,
    EdgeBound, Method, Rational, RootSet,
};
pub use error::{Error, Result};
pub use homology::{betti_f2, boundary_matrices, cycle_is_boundary, homology_integral, HomologySummary};
pub use random::{sample_k4np, sample_knp, Seed};
pub use certificates::{certify_pi1_nontrivial, is_full, is_sparse, Certification, CycleLoop, Pi1Certificate, Refusal};
pub use experiments::{run_sweep, ExperimentConfig, TrialRecord};
pub use spectral::{garland_scan, link_spectral_gap, SpectralReport};
pub use wedge::{wedge_signature, WedgeOutcome, WedgeSignature};
