//! Finite 2-dimensional simplicial complexes and the polygonal cell
//! complexes used by the square-cell model.
//!
//! Vertices are the integers `1..=n`. A vertex that lies in no edge is still
//! a vertex of the complex and counts toward `f0`. Faces are stored sorted
//! (each face ascending, face lists in lexicographic order), so two complexes
//! with the same faces compare equal regardless of how they were built.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = u32;
pub type Edge = [Vertex; 2];
pub type Triangle = [Vertex; 3];

/// Face counts by dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FVector {
    pub f0: usize,
    pub f1: usize,
    pub f2: usize,
}

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.f0 as i64 - self.f1 as i64 + self.f2 as i64
    }

    /// `L = 2 f1 - 3 f2`.
    pub fn l_functional(&self) -> i64 {
        2 * self.f1 as i64 - 3 * self.f2 as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Complex2 {
    n: u32,
    edges: Vec<Edge>,
    triangles: Vec<Triangle>,
}

/// A complex carved out of a larger one, with vertices renumbered `1..=k`.
/// `labels[i]` is the original name of new vertex `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subcomplex {
    pub complex: Complex2,
    pub labels: Vec<Vertex>,
}

fn check_vertex(v: Vertex, n: u32) -> Result<()> {
    if v == 0 || v > n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    Ok(())
}

pub(crate) fn sorted_edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        [u, v]
    } else {
        [v, u]
    }
}

impl Complex2 {
    /// Validates and canonicalizes. Duplicate faces are merged; a triangle
    /// whose boundary edges are not all listed is rejected.
    pub fn new(n: u32, edges: &[Edge], triangles: &[Triangle]) -> Result<Self> {
        let mut es = Vec::with_capacity(edges.len());
        for &[u, v] in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::DegenerateFace { face: vec![u, v] });
            }
            es.push(sorted_edge(u, v));
        }
        es.sort_unstable();
        es.dedup();

        let mut ts = Vec::with_capacity(triangles.len());
        for t in triangles {
            for &v in t {
                check_vertex(v, n)?;
            }
            let mut t = *t;
            t.sort_unstable();
            if t[0] == t[1] || t[1] == t[2] {
                return Err(Error::DegenerateFace { face: t.to_vec() });
            }
            ts.push(t);
        }
        ts.sort_unstable();
        ts.dedup();

        for t in &ts {
            for missing in [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]] {
                if es.binary_search(&missing).is_err() {
                    return Err(Error::ClosureViolation {
                        triangle: *t,
                        missing,
                    });
                }
            }
        }
        Ok(Complex2 {
            n,
            edges: es,
            triangles: ts,
        })
    }

    pub fn empty(n: u32) -> Self {
        Complex2 {
            n,
            edges: Vec::new(),
            triangles: Vec::new(),
        }
    }

    /// The 2-skeleton of the clique complex of the graph `(1..=n, edges)`:
    /// every triple whose three pairs are edges becomes a triangle.
    pub fn clique_two_skeleton(n: u32, edges: &[Edge]) -> Result<Self> {
        let base = Complex2::new(n, edges, &[])?;
        let adj = base.forward_adjacency();
        let mut triangles = Vec::new();
        for &[u, v] in &base.edges {
            let (a, b) = (&adj[u as usize - 1], &adj[v as usize - 1]);
            // both lists ascending and > their owner; intersect
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        if a[i] > v {
                            triangles.push([u, v, a[i]]);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        triangles.sort_unstable();
        Ok(Complex2 {
            n,
            edges: base.edges,
            triangles,
        })
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        if u == v {
            return None;
        }
        self.edges.binary_search(&sorted_edge(u, v)).ok()
    }

    pub fn has_triangle(&self, t: Triangle) -> bool {
        let mut t = t;
        t.sort_unstable();
        self.triangles.binary_search(&t).is_ok()
    }

    pub fn f_vector(&self) -> FVector {
        FVector {
            f0: self.n as usize,
            f1: self.edges.len(),
            f2: self.triangles.len(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    pub fn l_functional(&self) -> i64 {
        self.f_vector().l_functional()
    }

    /// Sorted neighbor lists, indexed by `v - 1`.
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n as usize];
        for &[u, v] in &self.edges {
            adj[u as usize - 1].push(v);
            adj[v as usize - 1].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    fn forward_adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n as usize];
        for &[u, v] in &self.edges {
            adj[u as usize - 1].push(v);
        }
        adj
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e[0] == v || e[1] == v).count()
    }

    pub fn vertex_link(&self, v: Vertex) -> Result<LinkGraph> {
        check_vertex(v, self.n)?;
        let mut vertices: Vec<Vertex> = self
            .edges
            .iter()
            .filter_map(|&[a, b]| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        vertices.sort_unstable();
        let mut edges: Vec<Edge> = self
            .triangles
            .iter()
            .filter_map(|&[a, b, c]| {
                if a == v {
                    Some([b, c])
                } else if b == v {
                    Some([a, c])
                } else if c == v {
                    Some([a, b])
                } else {
                    None
                }
            })
            .collect();
        edges.sort_unstable();
        Ok(LinkGraph {
            center: v,
            vertices,
            edges,
        })
    }

    /// All links, computed in one pass over the faces. Indexed by `v - 1`.
    pub fn all_links(&self) -> Vec<LinkGraph> {
        let adj = self.adjacency();
        let mut link_edges: Vec<Vec<Edge>> = vec![Vec::new(); self.n as usize];
        for &[a, b, c] in &self.triangles {
            link_edges[a as usize - 1].push([b, c]);
            link_edges[b as usize - 1].push([a, c]);
            link_edges[c as usize - 1].push([a, b]);
        }
        adj.into_iter()
            .zip(link_edges)
            .enumerate()
            .map(|(i, (vertices, mut edges))| {
                edges.sort_unstable();
                LinkGraph {
                    center: i as Vertex + 1,
                    vertices,
                    edges,
                }
            })
            .collect()
    }

    /// Every vertex lying in an edge has a connected link.
    pub fn is_normal(&self) -> bool {
        self.all_links()
            .iter()
            .filter(|l| !l.vertices.is_empty())
            .all(LinkGraph::is_connected)
    }

    /// Normal, and no link on three or more vertices has a cut vertex.
    pub fn is_two_normal(&self) -> bool {
        self.all_links()
            .iter()
            .filter(|l| !l.vertices.is_empty())
            .all(|l| l.is_connected() && (l.vertices.len() < 3 || !l.has_cut_vertex()))
    }

    /// Elementary collapses until no free face remains. Free edges (in exactly
    /// one triangle) go first, smallest edge first; once none remain, free
    /// vertices (in exactly one edge) are removed, smallest first. Surviving
    /// vertices are renumbered in increasing order.
    pub fn collapse_free_faces(&self) -> Complex2 {
        self.collapse_free_faces_labeled().complex
    }

    pub fn collapse_free_faces_labeled(&self) -> Subcomplex {
        let mut triangles: BTreeSet<Triangle> = self.triangles.iter().copied().collect();
        let mut cofaces: BTreeMap<Edge, BTreeSet<Triangle>> =
            self.edges.iter().map(|&e| (e, BTreeSet::new())).collect();
        for &t in &triangles {
            for e in triangle_edges(t) {
                cofaces.get_mut(&e).expect("closure").insert(t);
            }
        }
        let mut free_edges: BTreeSet<Edge> = cofaces
            .iter()
            .filter(|(_, ts)| ts.len() == 1)
            .map(|(&e, _)| e)
            .collect();
        let mut alive = vec![true; self.n as usize];
        let mut incident: Vec<BTreeSet<Edge>> = vec![BTreeSet::new(); self.n as usize];
        for &e in &self.edges {
            incident[e[0] as usize - 1].insert(e);
            incident[e[1] as usize - 1].insert(e);
        }

        loop {
            if let Some(e) = free_edges.pop_first() {
                let t = *cofaces[&e].first().expect("free edge has a coface");
                triangles.remove(&t);
                for f in triangle_edges(t) {
                    let ts = cofaces.get_mut(&f).expect("closure");
                    ts.remove(&t);
                    if f != e {
                        if ts.len() == 1 {
                            free_edges.insert(f);
                        } else {
                            free_edges.remove(&f);
                        }
                    }
                }
                cofaces.remove(&e);
                incident[e[0] as usize - 1].remove(&e);
                incident[e[1] as usize - 1].remove(&e);
                continue;
            }
            let free_vertex = (0..self.n as usize).find(|&i| {
                alive[i]
                    && incident[i].len() == 1
                    && cofaces[incident[i].first().unwrap()].is_empty()
            });
            match free_vertex {
                Some(i) => {
                    let e = incident[i].pop_first().unwrap();
                    let other = if e[0] as usize - 1 == i { e[1] } else { e[0] };
                    incident[other as usize - 1].remove(&e);
                    cofaces.remove(&e);
                    alive[i] = false;
                }
                None => break,
            }
        }

        let labels: Vec<Vertex> = (1..=self.n).filter(|&v| alive[v as usize - 1]).collect();
        let edges: Vec<Edge> = cofaces.keys().copied().collect();
        let triangles: Vec<Triangle> = triangles.into_iter().collect();
        relabel(&labels, &edges, &triangles)
    }

    /// Components of the 1-skeleton, ordered by smallest vertex. Isolated
    /// vertices are singleton components.
    pub fn connected_components(&self) -> Vec<Complex2> {
        self.components_labeled()
            .into_iter()
            .map(|s| s.complex)
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.component_ids().1
    }

    /// Component id per vertex (indexed `v - 1`) and the number of components.
    pub fn component_ids(&self) -> (Vec<usize>, usize) {
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; self.n as usize];
        let mut count = 0;
        for s in 0..self.n as usize {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    let w = w as usize - 1;
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn components_labeled(&self) -> Vec<Subcomplex> {
        let (comp, count) = self.component_ids();
        let mut members: Vec<Vec<Vertex>> = vec![Vec::new(); count];
        for v in 1..=self.n {
            members[comp[v as usize - 1]].push(v);
        }
        let mut edges: Vec<Vec<Edge>> = vec![Vec::new(); count];
        for &e in &self.edges {
            edges[comp[e[0] as usize - 1]].push(e);
        }
        let mut tris: Vec<Vec<Triangle>> = vec![Vec::new(); count];
        for &t in &self.triangles {
            tris[comp[t[0] as usize - 1]].push(t);
        }
        (0..count)
            .map(|c| relabel(&members[c], &edges[c], &tris[c]))
            .collect()
    }

    /// Full subcomplex induced on `vertices`, renumbered in increasing order.
    pub fn induced(&self, vertices: &[Vertex]) -> Result<Subcomplex> {
        let mut labels = vertices.to_vec();
        for &v in &labels {
            check_vertex(v, self.n)?;
        }
        labels.sort_unstable();
        labels.dedup();
        let mut keep = vec![false; self.n as usize];
        for &v in &labels {
            keep[v as usize - 1] = true;
        }
        let inside = |v: Vertex| keep[v as usize - 1];
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .copied()
            .filter(|e| e.iter().all(|&v| inside(v)))
            .collect();
        let tris: Vec<Triangle> = self
            .triangles
            .iter()
            .copied()
            .filter(|t| t.iter().all(|&v| inside(v)))
            .collect();
        Ok(relabel(&labels, &edges, &tris))
    }

    /// Applies a vertex permutation (`perm[v - 1]` is the new name of `v`).
    pub fn permuted(&self, perm: &[Vertex]) -> Result<Complex2> {
        if perm.len() != self.n as usize {
            return Err(Error::Config(format!(
                "permutation has length {}, complex has {} vertices",
                perm.len(),
                self.n
            )));
        }
        let map = |v: Vertex| perm[v as usize - 1];
        let edges: Vec<Edge> = self.edges.iter().map(|e| [map(e[0]), map(e[1])]).collect();
        let tris: Vec<Triangle> = self
            .triangles
            .iter()
            .map(|t| [map(t[0]), map(t[1]), map(t[2])])
            .collect();
        Complex2::new(self.n, &edges, &tris)
    }

    /// Wedge: `other` is shifted past this complex's vertices and its vertex
    /// `other_base` is glued to `self_base`.
    pub fn wedge(&self, self_base: Vertex, other: &Complex2, other_base: Vertex) -> Result<Complex2> {
        check_vertex(self_base, self.n)?;
        check_vertex(other_base, other.n)?;
        let shift = |v: Vertex| {
            if v == other_base {
                self_base
            } else if v < other_base {
                self.n + v
            } else {
                self.n + v - 1
            }
        };
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| [shift(e[0]), shift(e[1])]));
        let mut tris = self.triangles.clone();
        tris.extend(
            other
                .triangles
                .iter()
                .map(|t| [shift(t[0]), shift(t[1]), shift(t[2])]),
        );
        Complex2::new(self.n + other.n - 1, &edges, &tris)
    }
}

pub(crate) fn triangle_edges(t: Triangle) -> [Edge; 3] {
    [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]]
}

fn relabel(labels: &[Vertex], edges: &[Edge], triangles: &[Triangle]) -> Subcomplex {
    let index = |v: Vertex| labels.binary_search(&v).expect("face vertex kept") as Vertex + 1;
    let mut es: Vec<Edge> = edges.iter().map(|e| [index(e[0]), index(e[1])]).collect();
    let mut ts: Vec<Triangle> = triangles
        .iter()
        .map(|t| [index(t[0]), index(t[1]), index(t[2])])
        .collect();
    // increasing relabeling preserves sortedness within faces
    es.sort_unstable();
    ts.sort_unstable();
    Subcomplex {
        complex: Complex2 {
            n: labels.len() as u32,
            edges: es,
            triangles: ts,
        },
        labels: labels.to_vec(),
    }
}

/// Link of a vertex: the neighbors of `center`, joined when they span a
/// triangle with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkGraph {
    pub center: Vertex,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl LinkGraph {
    /// Adjacency in local indices (positions in `vertices`).
    pub fn local_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &[a, b] in &self.edges {
            let i = self.vertices.binary_search(&a).expect("link edge on link vertex");
            let j = self.vertices.binary_search(&b).expect("link edge on link vertex");
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        connected_without(&self.local_adjacency(), None)
    }

    pub fn has_cut_vertex(&self) -> bool {
        let adj = self.local_adjacency();
        (0..adj.len()).any(|x| !connected_without(&adj, Some(x)))
    }
}

fn connected_without(adj: &[Vec<usize>], removed: Option<usize>) -> bool {
    let live = adj.len() - usize::from(removed.is_some());
    if live <= 1 {
        return true;
    }
    let start = (0..adj.len()).find(|&i| Some(i) != removed).unwrap();
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] && Some(w) != removed {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached == live
}

/// A 2-complex whose 2-cells are attached along closed walks of length 3 or 4.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellComplex2 {
    n: u32,
    edges: Vec<Edge>,
    cells: Vec<Vec<Vertex>>,
}

impl CellComplex2 {
    pub fn new(n: u32, edges: &[Edge], cells: &[Vec<Vertex>]) -> Result<Self> {
        let skeleton = Complex2::new(n, edges, &[])?;
        let mut cs = Vec::with_capacity(cells.len());
        for cell in cells {
            let bad = || Error::InvalidCell { cell: cell.clone() };
            if !(3..=4).contains(&cell.len()) {
                return Err(bad());
            }
            for &v in cell {
                check_vertex(v, n)?;
            }
            let mut distinct = cell.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() != cell.len() {
                return Err(bad());
            }
            let k = cell.len();
            if (0..k).any(|i| !skeleton.has_edge(cell[i], cell[(i + 1) % k])) {
                return Err(bad());
            }
            cs.push(canonical_walk(cell));
        }
        cs.sort_unstable();
        cs.dedup();
        Ok(CellComplex2 {
            n,
            edges: skeleton.edges,
            cells: cs,
        })
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn cells(&self) -> &[Vec<Vertex>] {
        &self.cells
    }

    pub fn f_vector(&self) -> FVector {
        FVector {
            f0: self.n as usize,
            f1: self.edges.len(),
            f2: self.cells.len(),
        }
    }

    pub fn one_skeleton(&self) -> Complex2 {
        Complex2 {
            n: self.n,
            edges: self.edges.clone(),
            triangles: Vec::new(),
        }
    }
}

/// Rotates a cyclic walk to start at its smallest vertex and orients it so
/// the second vertex is smaller than the last.
pub(crate) fn canonical_walk(walk: &[Vertex]) -> Vec<Vertex> {
    let k = walk.len();
    let start = (0..k).min_by_key(|&i| walk[i]).unwrap();
    let mut out: Vec<Vertex> = (0..k).map(|i| walk[(start + i) % k]).collect();
    if k > 2 && out[1] > out[k - 1] {
        out[1..].reverse();
    }
    out
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn filled_triangle() -> Complex2 {
        Complex2::new(3, &[[1, 2], [1, 3], [2, 3]], &[[1, 2, 3]]).unwrap()
    }

    pub fn tetra_boundary() -> Complex2 {
        Complex2::clique_two_skeleton(4, &all_pairs(4)).unwrap()
    }

    pub fn cycle(labels: &[Vertex], n: u32) -> Complex2 {
        let k = labels.len();
        let edges: Vec<Edge> = (0..k).map(|i| [labels[i], labels[(i + 1) % k]]).collect();
        Complex2::new(n, &edges, &[]).unwrap()
    }

    pub fn all_pairs(n: u32) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                out.push([u, v]);
            }
        }
        out
    }

    /// Six-vertex real projective plane (antipodal quotient of the icosahedron).
    pub fn rp2_six() -> Complex2 {
        let tris = [
            [1, 2, 4],
            [1, 2, 6],
            [1, 3, 5],
            [1, 3, 6],
            [1, 4, 5],
            [2, 3, 4],
            [2, 3, 5],
            [2, 5, 6],
            [3, 4, 6],
            [4, 5, 6],
        ];
        Complex2::new(6, &all_pairs(6), &tris).unwrap()
    }
}
