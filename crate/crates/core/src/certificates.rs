//! Nontriviality certificates for rooted 6-cycles, and the sparse / full
//! predicates on small rooted subcomplexes.
//!
//! A certificate pairs an embedded cycle `(1, a, 2, b, 3, c)` with the exact
//! rooted density `e01 X_3` over roots `{1, 2, 3}`; it is issued only when
//! that density exceeds 1/3.

use std::fmt;

use crate::complex::{Complex2, Edge, Vertex};
use crate::density::{density_brute, density_flow, Density, DensityReport, Rational, RootSet};
use crate::error::{Error, Result};

/// Largest `m` accepted by [`is_sparse`] and [`bounded_min_ratio`].
pub const SPARSE_LIMIT: usize = 24;
/// Largest `m` accepted by [`is_full`].
pub const FULL_LIMIT: usize = 8;
/// Certificates on at most this many vertices are rechecked by enumeration.
pub const BRUTE_RECHECK_LIMIT: u32 = 14;

/// A closed walk `(v0, ..., v5)` in rooted form `v0 = 1, v2 = 2, v4 = 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CycleLoop {
    vertices: [Vertex; 6],
}

impl CycleLoop {
    pub fn rooted(a: Vertex, b: Vertex, c: Vertex) -> Self {
        CycleLoop {
            vertices: [1, a, 2, b, 3, c],
        }
    }

    pub fn vertices(&self) -> [Vertex; 6] {
        self.vertices
    }

    /// Rooted form, six distinct vertices, every consecutive pair an edge.
    pub fn is_valid_in(&self, x: &Complex2) -> bool {
        let v = self.vertices;
        if v[0] != 1 || v[2] != 2 || v[4] != 3 {
            return false;
        }
        let mut sorted = v;
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        (0..6).all(|i| x.has_edge(v[i], v[(i + 1) % 6]))
    }
}

impl fmt::Display for CycleLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// The lexicographically smallest `(a, b, c)` with `a ~ 1, 2`, `b ~ 2, 3`,
/// `c ~ 3, 1`, all distinct and outside `{1, 2, 3}`.
pub fn find_rooted_six_cycle(x: &Complex2) -> Result<Option<CycleLoop>> {
    let n = x.vertex_count();
    if n < 3 {
        return Err(Error::TooFewVertices { needed: 3, n });
    }
    let adj = x.adjacency();
    let common = |u: Vertex, v: Vertex| -> Vec<Vertex> {
        let (a, b) = (&adj[u as usize - 1], &adj[v as usize - 1]);
        a.iter().copied().filter(|&w| w > 3 && b.binary_search(&w).is_ok()).collect()
    };
    let (n12, n23, n31) = (common(1, 2), common(2, 3), common(3, 1));
    for &a in &n12 {
        for &b in n23.iter().filter(|&&b| b != a) {
            if let Some(&c) = n31.iter().find(|&&c| c != a && c != b) {
                return Ok(Some(CycleLoop::rooted(a, b, c)));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi1Certificate {
    pub cycle: CycleLoop,
    /// `e01 X_3` with roots `{1, 2, 3}`; strictly above 1/3.
    pub density: DensityReport,
}

impl Pi1Certificate {
    /// Rechecks the cycle edge by edge and recomputes the density, by
    /// enumeration when `x` has at most [`BRUTE_RECHECK_LIMIT`] vertices.
    pub fn verify(&self, x: &Complex2) -> Result<()> {
        if !self.cycle.is_valid_in(x) {
            return Err(Error::VerificationFailed(format!("cycle {} is not an embedded rooted cycle", self.cycle)));
        }
        if !self.density.value.exceeds_one_third() {
            return Err(Error::VerificationFailed(format!("density {} is not above 1/3", self.density.value)));
        }
        let roots = RootSet::first(3);
        let again = if x.vertex_count() <= BRUTE_RECHECK_LIMIT {
            density_brute(x, &roots)?
        } else {
            density_flow(x, &roots)?
        };
        if again.value != self.density.value {
            return Err(Error::VerificationFailed(format!(
                "density recomputed as {}, certificate says {}",
                again.value, self.density.value
            )));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        format!(
            "pi1-certificate\ncycle {}\ndensity {}\nwitness {}\n",
            self.cycle,
            self.density.value,
            self.density.witness.len()
        )
    }
}

/// The fields of a serialized certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateText {
    pub cycle: CycleLoop,
    pub density: Rational,
    pub witness_size: usize,
}

pub fn parse_certificate(text: &str) -> Result<CertificateText> {
    let bad = |line: usize, msg: &str| Error::Parse {
        line,
        msg: msg.to_string(),
    };
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    if lines.len() != 4 || lines[0] != "pi1-certificate" {
        return Err(bad(1, "expected pi1-certificate header and three fields"));
    }
    let field = |i: usize, key: &str| -> Result<&str> {
        lines[i]
            .strip_prefix(key)
            .and_then(|rest| rest.strip_prefix(' '))
            .ok_or_else(|| bad(i + 1, &format!("expected `{key}`")))
    };
    let cycle: Vec<Vertex> = field(1, "cycle")?
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad(2, "cycle vertices must be integers"))?;
    if cycle.len() != 6 || cycle[0] != 1 || cycle[2] != 2 || cycle[4] != 3 {
        return Err(bad(2, "cycle must be 1 a 2 b 3 c"));
    }
    let (num, den) = field(2, "density")?
        .split_once('/')
        .ok_or_else(|| bad(3, "density must be num/den"))?;
    let num: i64 = num.parse().map_err(|_| bad(3, "bad numerator"))?;
    let den: i64 = den.parse().map_err(|_| bad(3, "bad denominator"))?;
    if den == 0 {
        return Err(bad(3, "zero denominator"));
    }
    let witness_size = field(3, "witness")?
        .parse()
        .map_err(|_| bad(4, "witness size must be an integer"))?;
    Ok(CertificateText {
        cycle: CycleLoop::rooted(cycle[1], cycle[3], cycle[5]),
        density: Rational::new(num, den),
        witness_size,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refusal {
    NoRootedSixCycle,
    DensityAtMostOneThird { cycle: CycleLoop, density: DensityReport },
}

impl Refusal {
    pub fn reason(&self) -> &'static str {
        match self {
            Refusal::NoRootedSixCycle => "no-rooted-6-cycle",
            Refusal::DensityAtMostOneThird { .. } => "density-at-most-one-third",
        }
    }
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refusal::NoRootedSixCycle => f.write_str(self.reason()),
            Refusal::DensityAtMostOneThird { cycle, density } => write!(
                f,
                "{} (cycle {}, density {}, witness size {})",
                self.reason(),
                cycle,
                density.value,
                density.witness.len()
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    Certified(Pi1Certificate),
    Refused(Refusal),
}

impl Certification {
    pub fn certificate(&self) -> Option<&Pi1Certificate> {
        match self {
            Certification::Certified(c) => Some(c),
            Certification::Refused(_) => None,
        }
    }
}

/// Finds a rooted 6-cycle and certifies it when `e01 X_3 > 1/3`.
///
/// Every issued certificate has passed [`Pi1Certificate::verify`].
pub fn certify_pi1_nontrivial(x: &Complex2) -> Result<Certification> {
    let Some(cycle) = find_rooted_six_cycle(x)? else {
        return Ok(Certification::Refused(Refusal::NoRootedSixCycle));
    };
    let density = density_flow(x, &RootSet::first(3))?;
    if !density.value.exceeds_one_third() {
        return Ok(Certification::Refused(Refusal::DensityAtMostOneThird { cycle, density }));
    }
    let cert = Pi1Certificate { cycle, density };
    cert.verify(x)?;
    Ok(Certification::Certified(cert))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioWitness {
    /// `(|S| - r) / f1(S)`
    pub ratio: Rational,
    /// `S`, containing `1..=r`.
    pub vertices: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseVerdict {
    pub sparse: bool,
    /// The smallest ratio below `eps`, if any.
    pub witness: Option<RatioWitness>,
}

/// Whether every subcomplex on at most `m` vertices containing `1..=r` has
/// rooted density at least `eps`.
pub fn is_sparse(x: &Complex2, eps: Rational, m: usize, r: u32) -> Result<SparseVerdict> {
    let witness = SmallSetSearch::new(x, m, r)?.run(Some(eps));
    Ok(SparseVerdict {
        sparse: witness.is_none(),
        witness,
    })
}

/// Minimum of `(|S| - r) / f1(S)` over `S ⊇ {1..r}` with `|S| ≤ m` and at
/// least one edge. Exhaustive apart from bound pruning, so costlier than
/// [`is_sparse`].
pub fn bounded_min_ratio(x: &Complex2, m: usize, r: u32) -> Result<Option<RatioWitness>> {
    Ok(SmallSetSearch::new(x, m, r)?.run(None))
}

/// Enumerates connected vertex sets of the graph with the roots merged into
/// one node (node 0 when `r > 0`), each evaluated together with the roots.
///
/// Restricting to these sets loses nothing: splitting a set into its
/// components (the root component plus the others, each taken with the
/// roots) gives parts whose ratios have the whole set's ratio as a mediant.
struct SmallSetSearch {
    m: usize,
    r: usize,
    adj: Vec<Vec<usize>>,
    real_adj: Vec<Vec<Vertex>>,
    inside: Vec<bool>,
    near: Vec<u32>,
    threshold: Option<Rational>,
    best: Option<RatioWitness>,
}

impl SmallSetSearch {
    fn new(x: &Complex2, m: usize, r: u32) -> Result<Self> {
        if m > SPARSE_LIMIT {
            return Err(Error::GuardExceeded {
                guard: "sparse enumeration",
                size: m,
                limit: SPARSE_LIMIT,
            });
        }
        let n = x.vertex_count();
        if r > n {
            return Err(Error::TooFewVertices { needed: r, n });
        }
        let offset = usize::from(r > 0);
        let nodes = offset + (n - r) as usize;
        let node_of = |v: Vertex| if v <= r { 0 } else { offset + (v - r - 1) as usize };
        let mut adj = vec![Vec::new(); nodes];
        for &[u, v] in x.edges() {
            let (a, b) = (node_of(u), node_of(v));
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let mut real_adj = vec![Vec::new()];
        real_adj.extend(x.adjacency());
        Ok(SmallSetSearch {
            m,
            r: r as usize,
            adj,
            real_adj,
            inside: vec![false; n as usize + 1],
            near: vec![0; nodes],
            threshold: None,
            best: None,
        })
    }

    fn vertex_of(&self, node: usize) -> Option<Vertex> {
        let offset = usize::from(self.r > 0);
        (node >= offset).then(|| (self.r + node - offset + 1) as Vertex)
    }

    fn run(mut self, threshold: Option<Rational>) -> Option<RatioWitness> {
        if self.m < self.r {
            return None;
        }
        self.threshold = threshold;
        let mut edges = 0;
        for v in 1..=self.r as Vertex {
            edges += self.add_vertex(v);
        }
        let mut sub = Vec::new();
        for start in 0..self.adj.len() {
            let extra = self.vertex_of(start).map(|v| self.add_vertex(v));
            if extra.is_some() && self.r + 1 > self.m {
                self.remove_vertex(self.vertex_of(start).unwrap());
                continue;
            }
            let size = self.r + usize::from(extra.is_some());
            sub.push(start);
            self.mark_near(start, 1);
            let ext: Vec<usize> = self.adj[start].iter().copied().filter(|&u| u > start).collect();
            self.extend(&mut sub, ext, start, size, edges + extra.unwrap_or(0));
            self.mark_near(start, -1);
            sub.pop();
            if let Some(v) = self.vertex_of(start) {
                self.remove_vertex(v);
            }
        }
        self.best
    }

    fn add_vertex(&mut self, v: Vertex) -> i64 {
        let added = self.real_adj[v as usize].iter().filter(|&&u| self.inside[u as usize]).count();
        self.inside[v as usize] = true;
        added as i64
    }

    fn remove_vertex(&mut self, v: Vertex) {
        self.inside[v as usize] = false;
    }

    fn mark_near(&mut self, node: usize, delta: i32) {
        let bump = |c: &mut u32| *c = c.wrapping_add_signed(delta);
        bump(&mut self.near[node]);
        for i in 0..self.adj[node].len() {
            let u = self.adj[node][i];
            bump(&mut self.near[u]);
        }
    }

    fn evaluate(&mut self, size: usize, edges: i64) {
        if edges == 0 {
            return;
        }
        let ratio = Rational::new((size - self.r) as i64, edges);
        if self.threshold.is_none_or(|t| ratio < t) {
            self.threshold = Some(ratio);
            let vertices = (1..self.inside.len() as Vertex).filter(|&v| self.inside[v as usize]).collect();
            self.best = Some(RatioWitness { ratio, vertices });
        }
    }

    /// Whether some superset of size at most `m` could beat the threshold:
    /// pairs missing from the current set stay missing.
    fn promising(&self, size: usize, edges: i64) -> bool {
        let Some(t) = self.threshold else {
            return true;
        };
        let (num, den) = (*t.numer() as i128, *t.denom() as i128);
        let missing = (size * size.saturating_sub(1) / 2) as i128 - edges as i128;
        (size + 1..=self.m).any(|s| {
            let pairs = (s * (s - 1) / 2) as i128 - missing;
            pairs > 0 && ((s - self.r) as i128) * den < num * pairs
        })
    }

    fn extend(&mut self, sub: &mut Vec<usize>, mut ext: Vec<usize>, start: usize, size: usize, edges: i64) {
        self.evaluate(size, edges);
        if size >= self.m || !self.promising(size, edges) {
            return;
        }
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            next.extend(self.adj[w].iter().copied().filter(|&u| u > start && self.near[u] == 0));
            let v = self.vertex_of(w).expect("the merged root node is only ever a start");
            let added = self.add_vertex(v);
            sub.push(w);
            self.mark_near(w, 1);
            self.extend(sub, next, start, size + 1, edges + added);
            self.mark_near(w, -1);
            sub.pop();
            self.remove_vertex(v);
            if !self.promising(size, edges) {
                return;
            }
        }
    }
}

/// Whether every complex on at most `m` vertices containing `1..=r` with
/// rooted density below `eps` occurs in `x` with the roots fixed.
///
/// Adding faces never raises rooted density, so that class is closed upward
/// and has the full rooted 2-skeleton on `m` vertices as its top element;
/// every member embeds into it with roots fixed. The class is therefore
/// empty or all of it embeds exactly when the top element does.
pub fn is_full(x: &Complex2, eps: Rational, m: usize, r: u32) -> Result<bool> {
    if m > FULL_LIMIT {
        return Err(Error::GuardExceeded {
            guard: "fullness enumeration",
            size: m,
            limit: FULL_LIMIT,
        });
    }
    let n = x.vertex_count();
    if r > n {
        return Err(Error::TooFewVertices { needed: r, n });
    }
    if (r as usize) > m {
        return Ok(true);
    }
    let top = complete_two_skeleton(m as u32);
    let top_density = density_flow(&top, &RootSet::first(r))?.value;
    if top_density >= Density::Finite(eps) {
        return Ok(true);
    }
    Ok(embeds(&top, x, r))
}

fn complete_two_skeleton(m: u32) -> Complex2 {
    let edges: Vec<Edge> = (1..=m).flat_map(|u| (u + 1..=m).map(move |v| [u, v])).collect();
    Complex2::clique_two_skeleton(m, &edges).expect("complete graph is a valid complex")
}

/// Injective face-preserving map `z -> x` fixing `1..=r`, by backtracking.
pub fn embeds(z: &Complex2, x: &Complex2, r: u32) -> bool {
    let k = z.vertex_count();
    if k > x.vertex_count() || r > k {
        return false;
    }
    let zadj = z.adjacency();
    // roots first, then each vertex after as many placed neighbours as possible
    let mut order: Vec<Vertex> = (1..=r).collect();
    let mut placed = vec![false; k as usize + 1];
    for &v in &order {
        placed[v as usize] = true;
    }
    while order.len() < k as usize {
        let next = (1..=k)
            .filter(|&v| !placed[v as usize])
            .max_by_key(|&v| {
                let links = zadj[v as usize - 1].iter().filter(|&&u| placed[u as usize]).count();
                (links, zadj[v as usize - 1].len(), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next as usize] = true;
        order.push(next);
    }
    let mut image = vec![0; k as usize + 1];
    let mut used = vec![false; x.vertex_count() as usize + 1];
    let xadj = x.adjacency();
    Embedder {
        z,
        x,
        zadj: &zadj,
        xadj: &xadj,
        order: &order,
        r: r as usize,
    }
    .place(0, &mut image, &mut used)
}

struct Embedder<'a> {
    z: &'a Complex2,
    x: &'a Complex2,
    zadj: &'a [Vec<Vertex>],
    xadj: &'a [Vec<Vertex>],
    order: &'a [Vertex],
    r: usize,
}

impl Embedder<'_> {
    fn fits(&self, u: Vertex, img: Vertex, image: &[Vertex]) -> bool {
        let mapped: Vec<Vertex> = self.zadj[u as usize - 1]
            .iter()
            .copied()
            .filter(|&w| image[w as usize] != 0)
            .collect();
        if !mapped.iter().all(|&w| self.x.has_edge(img, image[w as usize])) {
            return false;
        }
        for (i, &a) in mapped.iter().enumerate() {
            for &b in &mapped[i + 1..] {
                let mut t = [u, a, b];
                t.sort_unstable();
                if self.z.has_triangle(t) {
                    let mut s = [img, image[a as usize], image[b as usize]];
                    s.sort_unstable();
                    if !self.x.has_triangle(s) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn place(&self, depth: usize, image: &mut [Vertex], used: &mut [bool]) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let u = self.order[depth];
        let candidates: Vec<Vertex> = if depth < self.r {
            vec![u]
        } else {
            match self.zadj[u as usize - 1].iter().find(|&&w| image[w as usize] != 0) {
                Some(&w) => self.xadj[image[w as usize] as usize - 1].clone(),
                None => self.x.vertices().collect(),
            }
        };
        for img in candidates {
            if used[img as usize] || !self.fits(u, img, image) {
                continue;
            }
            image[u as usize] = img;
            used[img as usize] = true;
            if self.place(depth + 1, image, used) {
                return true;
            }
            image[u as usize] = 0;
            used[img as usize] = false;
        }
        false
    }
}
