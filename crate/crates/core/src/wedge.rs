//! Wedge signatures read off homology.
//!
//! A connected 2-complex whose every subcomplex has more than one vertex per
//! three edges is predicted to be homotopy equivalent to a wedge of `a`
//! circles, `b` projective planes and `s` 2-spheres. Such a wedge has
//! `H1 = Z^a ⊕ (Z/2)^b`, `H2 = Z^s`, F2 Betti numbers `(1, a + b, s + b)` and
//! Euler characteristic `1 - a + s`. [`wedge_signature`] extracts `(a, b, s)`
//! from integral homology and checks every one of those equations.

use std::fmt;

use num_bigint::BigInt;

use crate::complex::Complex2;
use crate::cx2::write_complex;
use crate::density::{e01, Density};
use crate::error::{Error, Result};
use crate::homology::{homology_integral, HomologySummary};
use crate::random::{derive_seed, sample_knp, Seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct WedgeSignature {
    /// circles
    pub a: usize,
    /// projective planes
    pub b: usize,
    /// 2-spheres
    pub s: usize,
}

impl fmt::Display for WedgeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Some invariant factor of the torsion of H1 is not 2.
    TorsionNotTwo { factors: Vec<BigInt> },
    /// `b1(F2) != a + b`
    FirstBetti { b1: usize, a: usize, b: usize },
    /// `b2(F2) != s + b`
    SecondBetti { b2: usize, s: usize, b: usize },
    /// `χ != 1 - a + s`
    Euler { chi: i64, a: usize, s: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TorsionNotTwo { factors } => {
                let list: Vec<String> = factors.iter().map(BigInt::to_string).collect();
                write!(f, "torsion factors all equal 2: got {{{}}}", list.join(","))
            }
            Violation::FirstBetti { b1, a, b } => write!(f, "b1 = a + b: {b1} != {a} + {b}"),
            Violation::SecondBetti { b2, s, b } => write!(f, "b2 = s + b: {b2} != {s} + {b}"),
            Violation::Euler { chi, a, s } => write!(f, "chi = 1 - a + s: {chi} != 1 - {a} + {s}"),
        }
    }
}

/// A complex satisfying the density hypothesis whose homology is not that of
/// any wedge of circles, projective planes and spheres.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InconsistencyReport {
    pub signature: WedgeSignature,
    pub homology: HomologySummary,
    pub violations: Vec<Violation>,
    pub complex: Complex2,
}

impl fmt::Display for InconsistencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "wedge inconsistency, signature {}", self.signature)?;
        for v in &self.violations {
            writeln!(f, "violated: {v}")?;
        }
        writeln!(
            f,
            "homology: f2 {:?}, q {:?}, torsion {{{}}}",
            self.homology.betti_f2,
            self.homology.betti_q,
            self.homology.torsion_string()
        )?;
        f.write_str(&write_complex(&self.complex))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WedgeOutcome {
    Consistent(WedgeSignature),
    Inconsistent(InconsistencyReport),
}

impl WedgeOutcome {
    pub fn signature(&self) -> WedgeSignature {
        match self {
            WedgeOutcome::Consistent(s) => *s,
            WedgeOutcome::Inconsistent(r) => r.signature,
        }
    }

    pub fn is_consistent(&self) -> bool {
        matches!(self, WedgeOutcome::Consistent(_))
    }
}

/// Reads `(a, b, s)` from homology and checks the wedge equations.
///
/// Fails with [`Error::NotConnected`] or [`Error::DensityAtMostOneThird`]
/// when the hypothesis does not hold; those are not inconsistencies.
pub fn wedge_signature(x: &Complex2) -> Result<WedgeOutcome> {
    let components = x.component_count();
    if components != 1 {
        return Err(Error::NotConnected { components });
    }
    let density = e01(x);
    if !density.exceeds_one_third() {
        return Err(Error::DensityAtMostOneThird {
            value: density.to_string(),
        });
    }
    Ok(classify(x))
}

/// The homological checks alone, without the hypothesis.
pub fn classify(x: &Complex2) -> WedgeOutcome {
    let h = homology_integral(x);
    let signature = WedgeSignature {
        a: h.betti_q[1],
        b: h.torsion_h1.len(),
        s: h.betti_q[2],
    };
    let WedgeSignature { a, b, s } = signature;
    let two = BigInt::from(2);
    let mut violations = Vec::new();
    if h.torsion_h1.iter().any(|d| *d != two) {
        violations.push(Violation::TorsionNotTwo {
            factors: h.torsion_h1.clone(),
        });
    }
    if h.betti_f2[1] != a + b {
        violations.push(Violation::FirstBetti {
            b1: h.betti_f2[1],
            a,
            b,
        });
    }
    if h.betti_f2[2] != s + b {
        violations.push(Violation::SecondBetti {
            b2: h.betti_f2[2],
            s,
            b,
        });
    }
    let chi = x.euler_characteristic();
    if chi != 1 - a as i64 + s as i64 {
        violations.push(Violation::Euler { chi, a, s });
    }
    if violations.is_empty() {
        WedgeOutcome::Consistent(signature)
    } else {
        WedgeOutcome::Inconsistent(InconsistencyReport {
            signature,
            homology: h,
            violations,
            complex: x.clone(),
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub trials: usize,
    /// Components meeting the density hypothesis, all of which were classified.
    pub components_checked: usize,
    pub components_skipped: usize,
    pub reports: Vec<InconsistencyReport>,
}

/// Samples `K(n, p)` `trials` times and classifies every component whose
/// density exceeds 1/3. Trial `t` uses `derive_seed(seed, 0, t)`.
pub fn scan_for_counterexamples(n: u32, p: f64, trials: usize, seed: Seed) -> Result<ScanSummary> {
    let mut summary = ScanSummary {
        trials,
        ..Default::default()
    };
    for t in 0..trials {
        let x = sample_knp(n, p, derive_seed(seed, 0, t as u64))?;
        for comp in x.connected_components() {
            if e01(&comp) > Density::finite(1, 3) {
                summary.components_checked += 1;
                if let WedgeOutcome::Inconsistent(r) = classify(&comp) {
                    summary.reports.push(r);
                }
            } else {
                summary.components_skipped += 1;
            }
        }
    }
    Ok(summary)
}
