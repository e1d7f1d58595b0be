//! Monte Carlo probe of the sparse and full regimes at n = 60.

use cliquetop::certificates::{is_full, is_sparse};
use cliquetop::experiments::p_of_alpha;
use cliquetop::random::derive_seed;
use cliquetop::{sample_knp, Rational, Seed};
use rayon::prelude::*;

const N: u32 = 60;
const TRIALS: u64 = 200;

fn share(alpha: Rational, check: impl Fn(&cliquetop::Complex2) -> bool + Sync) -> f64 {
    let p = p_of_alpha(N, alpha);
    let hits = (0..TRIALS)
        .into_par_iter()
        .filter(|&t| check(&sample_knp(N, p, derive_seed(Seed(3009), 0, t)).unwrap()))
        .count();
    hits as f64 / TRIALS as f64
}

#[test]
fn sparse_below_the_lower_threshold() {
    let eps = Rational::new(7, 20);
    let f = share(Rational::new(3, 5), |x| is_sparse(x, eps, 8, 0).unwrap().sparse);
    assert!(f >= 0.95, "sparse in {f} of trials");
}

#[test]
fn full_in_the_dense_regime() {
    let f = share(Rational::new(1, 5), |x| is_full(x, Rational::from_integer(1), 4, 0).unwrap());
    assert!(f >= 0.95, "full in {f} of trials");
}
