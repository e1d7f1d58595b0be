//! Minimum vertex-to-edge ratio over subcomplexes.
//!
//! For a complex `X` and roots `R`, the rooted density is the minimum of
//! `(f0(Y) - |R|) / f1(Y)` over subcomplexes `Y ⊇ R` with at least one edge,
//! or `+∞` when no such `Y` exists. For a fixed vertex set the numerator is
//! fixed and the full induced subcomplex has the most edges, so only induced
//! subcomplexes need to be searched.
//!
//! Two independent routes compute it: [`density_brute`] enumerates vertex
//! subsets, [`density_flow`] runs a Dinkelbach iteration whose inner step is
//! a maximum-weight closure solved by min cut.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

use crate::complex::{Complex2, Vertex};
use crate::error::{Error, Result};
use crate::flow::{max_weight_closure, FlowNetwork, INF};

pub type Rational = Ratio<i64>;

/// Largest vertex count accepted by the enumeration routes.
pub const ENUMERATION_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootSet {
    roots: Vec<Vertex>,
}

impl RootSet {
    pub fn none() -> Self {
        RootSet { roots: Vec::new() }
    }

    /// The roots `{1, ..., w}`.
    pub fn first(w: u32) -> Self {
        RootSet {
            roots: (1..=w).collect(),
        }
    }

    pub fn from_vertices(vertices: &[Vertex]) -> Self {
        let mut roots = vertices.to_vec();
        roots.sort_unstable();
        roots.dedup();
        RootSet { roots }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.roots
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.roots.binary_search(&v).is_ok()
    }

    fn check(&self, x: &Complex2) -> Result<()> {
        for &v in &self.roots {
            if v == 0 || v > x.vertex_count() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: x.vertex_count(),
                });
            }
        }
        Ok(())
    }
}

/// An exact rational, or `+∞` when nothing has an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Density {
    Finite(Rational),
    Infinite,
}

impl Density {
    pub fn finite(num: i64, den: i64) -> Self {
        Density::Finite(Rational::new(num, den))
    }

    pub fn as_ratio(&self) -> Option<Rational> {
        match self {
            Density::Finite(r) => Some(*r),
            Density::Infinite => None,
        }
    }

    /// Strictly above one third, compared exactly.
    pub fn exceeds_one_third(&self) -> bool {
        *self > Density::finite(1, 3)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Density::Finite(r) => *r.numer() as f64 / *r.denom() as f64,
            Density::Infinite => f64::INFINITY,
        }
    }
}

impl Ord for Density {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Density::Finite(a), Density::Finite(b)) => a.cmp(b),
            (Density::Finite(_), Density::Infinite) => Ordering::Less,
            (Density::Infinite, Density::Finite(_)) => Ordering::Greater,
            (Density::Infinite, Density::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Density {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Density::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Density::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Oracle,
    Flow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub value: Density,
    /// Vertex set of the minimizing induced subcomplex; contains the roots.
    pub witness: Vec<Vertex>,
    pub method: Method,
}

/// `(|S| - |R|) / f1(S)` for the subcomplex induced on `vertices`, which
/// must contain the roots.
pub fn rooted_ratio(x: &Complex2, vertices: &[Vertex], roots: &RootSet) -> Density {
    let mut inside = vec![false; x.vertex_count() as usize + 1];
    for &v in vertices {
        inside[v as usize] = true;
    }
    let edges = x
        .edges()
        .iter()
        .filter(|e| inside[e[0] as usize] && inside[e[1] as usize])
        .count() as i64;
    let size = inside.iter().filter(|&&b| b).count() as i64;
    if edges == 0 {
        Density::Infinite
    } else {
        Density::finite(size - roots.len() as i64, edges)
    }
}

/// Exhaustive minimum over vertex subsets containing the roots. Ties go to
/// the smaller witness, then the lexicographically smaller one.
pub fn density_brute(x: &Complex2, roots: &RootSet) -> Result<DensityReport> {
    roots.check(x)?;
    let n = x.vertex_count() as usize;
    if n > ENUMERATION_LIMIT {
        return Err(Error::GuardExceeded {
            guard: "enumeration",
            size: n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut adj = vec![0u32; n];
    for &[u, v] in x.edges() {
        adj[u as usize - 1] |= 1 << (v - 1);
        adj[v as usize - 1] |= 1 << (u - 1);
    }
    let root_mask: u32 = roots.vertices().iter().map(|&v| 1u32 << (v - 1)).sum();
    let free: Vec<usize> = (0..n).filter(|&i| root_mask >> i & 1 == 0).collect();
    let w = roots.len() as i64;

    let mut set = root_mask;
    let mut edges: i64 = (0..n)
        .filter(|&i| root_mask >> i & 1 == 1)
        .map(|i| (adj[i] & root_mask).count_ones() as i64)
        .sum::<i64>()
        / 2;
    // best = (numerator, edges, mask)
    let mut best: Option<(i64, i64, u32)> = None;
    let mut consider = |set: u32, edges: i64| {
        if edges == 0 {
            return;
        }
        let num = set.count_ones() as i64 - w;
        let better = match best {
            None => true,
            Some((bn, be, bm)) => match (num * be).cmp(&(bn * edges)) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => match set.count_ones().cmp(&bm.count_ones()) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    // equal sizes: the set owning the lowest differing vertex
                    // is lexicographically first
                    Ordering::Equal => set != bm && set >> (set ^ bm).trailing_zeros() & 1 == 1,
                },
            },
        };
        if better {
            best = Some((num, edges, set));
        }
    };
    consider(set, edges);
    for step in 1u64..(1u64 << free.len()) {
        let i = free[step.trailing_zeros() as usize];
        let bit = 1u32 << i;
        let gained = (adj[i] & set).count_ones() as i64;
        if set & bit == 0 {
            set |= bit;
            edges += gained;
        } else {
            set &= !bit;
            edges -= gained;
        }
        consider(set, edges);
    }

    Ok(match best {
        None => DensityReport {
            value: Density::Infinite,
            witness: roots.vertices().to_vec(),
            method: Method::Oracle,
        },
        Some((num, e, mask)) => DensityReport {
            value: Density::finite(num, e),
            witness: (0..n as u32).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect(),
            method: Method::Oracle,
        },
    })
}

/// Exact minimum by parametric min cut.
///
/// Starting from the whole vertex set, each round takes the current ratio
/// `a/b` and maximizes `a·f1(S) - b·|S \ R|` over `S ⊇ R` as a closure
/// problem (edge nodes worth `a`, each requiring its endpoints; non-root
/// vertices cost `b`). A positive optimum yields a set with a strictly
/// smaller ratio; an optimum of zero certifies that `a/b` is the minimum.
pub fn density_flow(x: &Complex2, roots: &RootSet) -> Result<DensityReport> {
    roots.check(x)?;
    let n = x.vertex_count() as usize;
    let m = x.edges().len();
    if m == 0 {
        return Ok(DensityReport {
            value: Density::Infinite,
            witness: roots.vertices().to_vec(),
            method: Method::Flow,
        });
    }
    let is_root: Vec<bool> = (1..=n as Vertex).map(|v| roots.contains(v)).collect();
    let w = roots.len() as i64;

    let mut witness: Vec<bool> = vec![true; n];
    let mut ratio = Rational::new(n as i64 - w, m as i64);
    loop {
        let (a, b) = (*ratio.numer(), *ratio.denom());
        // nodes: edges 0..m, vertices m..m+n, source, sink
        let (s, t) = (m + n, m + n + 1);
        let mut net = FlowNetwork::new(m + n + 2);
        for (i, &[u, v]) in x.edges().iter().enumerate() {
            net.add_edge(s, i, a);
            for z in [u, v] {
                if !is_root[z as usize - 1] {
                    net.add_edge(i, m + z as usize - 1, INF);
                }
            }
        }
        for (j, &root) in is_root.iter().enumerate() {
            if !root {
                net.add_edge(m + j, t, b);
            }
        }
        let cut = net.max_flow(s, t);
        let profit = a * m as i64 - cut;
        if profit <= 0 {
            break;
        }
        let side = net.source_side(s);
        let chosen: Vec<bool> = (0..n).map(|j| is_root[j] || side[m + j]).collect();
        let size = chosen.iter().filter(|&&c| c).count() as i64;
        let edges = x
            .edges()
            .iter()
            .filter(|e| chosen[e[0] as usize - 1] && chosen[e[1] as usize - 1])
            .count() as i64;
        let next = Rational::new(size - w, edges);
        debug_assert!(next < ratio);
        ratio = next;
        witness = chosen;
    }
    Ok(DensityReport {
        value: Density::Finite(ratio),
        witness: (1..=n as Vertex).filter(|&v| witness[v as usize - 1]).collect(),
        method: Method::Flow,
    })
}

/// `e01 X` with no roots, by the flow route.
pub fn e01(x: &Complex2) -> Density {
    density_flow(x, &RootSet::none())
        .expect("empty root set is always valid")
        .value
}

/// Whether every nonempty subcomplex `Y` has `(L + kχ)(Y) > 0`, i.e.
/// `k f0 + (2 - k) f1 + (k - 3) f2 > 0`.
///
/// For `k = 3` this is `3 f0 - f1 > 0`, equivalently rooted-free density
/// above 1/3, and is answered by [`density_flow`]. Other `k` are decided by
/// [`admissibility_by_closure`], which searches all subcomplexes (not only
/// induced ones).
pub fn is_k_admissible(x: &Complex2, k: u32) -> Result<bool> {
    if k == 0 {
        return Err(Error::Config("admissibility needs k >= 1".into()));
    }
    if k == 3 {
        return Ok(e01(x).exceeds_one_third());
    }
    Ok(admissibility_by_closure(x, k))
}

/// Decides k-admissibility over all subcomplexes with one closure problem.
///
/// A nonempty `Y` with `(L + kχ)(Y) <= 0` exists iff the closure maximizing
/// `-(n + 1)(L + kχ)(Y) + f0(Y)` has positive weight: the `f0` term lifts any
/// nonpositive nonempty `Y` above zero while staying below the `n + 1` gap
/// separating positive integer values.
pub fn admissibility_by_closure(x: &Complex2, k: u32) -> bool {
    let n = x.vertex_count() as usize;
    let m = x.edges().len();
    let scale = n as i64 + 1;
    let k = k as i64;
    let mut weights = Vec::with_capacity(n + m + x.triangles().len());
    weights.extend(std::iter::repeat_n(-scale * k + 1, n));
    weights.extend(std::iter::repeat_n(-scale * (2 - k), m));
    weights.extend(std::iter::repeat_n(-scale * (k - 3), x.triangles().len()));
    let mut requires = Vec::new();
    for (i, &[u, v]) in x.edges().iter().enumerate() {
        requires.push((n + i, u as usize - 1));
        requires.push((n + i, v as usize - 1));
    }
    for (j, &[a, b, c]) in x.triangles().iter().enumerate() {
        for (p, q) in [(a, b), (a, c), (b, c)] {
            let e = x.edge_index(p, q).expect("closure");
            requires.push((n + m + j, n + e));
        }
    }
    let (best, _) = max_weight_closure(&weights, &requires);
    best <= 0
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeBound {
    pub holds: bool,
    /// `f1 X`
    pub lhs: Rational,
    /// `(3χ - 3w + L) / (3 e01_w - 1)`
    pub rhs: Rational,
    /// `rhs - lhs`
    pub slack: Rational,
    pub density: Density,
}

/// Checks `f1 X <= (3χX - 3w + LX) / (3 e01X_w - 1)` exactly. Requires a
/// connected complex with rooted density above 1/3.
pub fn edge_bound_check(x: &Complex2, roots: &RootSet) -> Result<EdgeBound> {
    let components = x.component_count();
    if components != 1 {
        return Err(Error::NotConnected { components });
    }
    let density = density_flow(x, roots)?.value;
    if !density.exceeds_one_third() {
        return Err(Error::DensityAtMostOneThird {
            value: density.to_string(),
        });
    }
    let f = x.f_vector();
    let lhs = Rational::from_integer(f.f1 as i64);
    let top = 3 * f.euler_characteristic() - 3 * roots.len() as i64 + f.l_functional();
    let rhs = match density {
        // 3e - 1 = (3a - b) / b
        Density::Finite(e) => {
            let (a, b) = (*e.numer(), *e.denom());
            Rational::new(top * b, 3 * a - b)
        }
        // an edgeless connected complex is a point: the bound degenerates to 0
        Density::Infinite => Rational::zero(),
    };
    let slack = rhs - lhs;
    Ok(EdgeBound {
        holds: slack >= Rational::zero(),
        lhs,
        rhs,
        slack,
        density,
    })
}
