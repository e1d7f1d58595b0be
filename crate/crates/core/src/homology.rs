//! Boundary matrices and homology over F2, Q and Z.
//!
//! Faces are ordered as stored (sorted lexicographically). An edge `{u < v}`
//! is oriented `u -> v`; a 2-cell contributes `+1` to each edge its boundary
//! walk traverses upward and `-1` to each edge traversed downward. For a
//! triangle `u < v < w` this puts `+1` on `uv` and `vw` and `-1` on `uw`.

use num_bigint::BigInt;

use crate::complex::{sorted_edge, CellComplex2, Complex2, Edge, Vertex};
use crate::error::{Error, Result};
use crate::f2::{flip_bit, rank_of_columns, F2Basis};
use crate::snf::{invariant_factors, torsion_coefficients};

/// Anything with vertices `1..=n`, an edge list and 2-cells attached along
/// closed walks.
pub trait TwoComplex {
    fn vertex_count(&self) -> u32;
    fn edge_list(&self) -> &[Edge];
    fn two_cells(&self) -> Vec<Vec<Vertex>>;

    fn edge_position(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edge_list().binary_search(&sorted_edge(u, v)).ok()
    }
}

impl TwoComplex for Complex2 {
    fn vertex_count(&self) -> u32 {
        Complex2::vertex_count(self)
    }
    fn edge_list(&self) -> &[Edge] {
        self.edges()
    }
    fn two_cells(&self) -> Vec<Vec<Vertex>> {
        self.triangles().iter().map(|t| t.to_vec()).collect()
    }
}

impl TwoComplex for CellComplex2 {
    fn vertex_count(&self) -> u32 {
        CellComplex2::vertex_count(self)
    }
    fn edge_list(&self) -> &[Edge] {
        self.edges()
    }
    fn two_cells(&self) -> Vec<Vec<Vertex>> {
        self.cells().to_vec()
    }
}

/// Sparse integer matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: usize,
    pub cols: usize,
    /// Per column, `(row, value)` pairs with nonzero values, rows ascending.
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl BoundaryMatrix {
    fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let columns: Vec<Vec<(usize, i64)>> = columns
            .into_iter()
            .map(|mut col| {
                col.sort_unstable();
                let mut merged: Vec<(usize, i64)> = Vec::with_capacity(col.len());
                for (r, v) in col {
                    match merged.last_mut() {
                        Some((lr, lv)) if *lr == r => *lv += v,
                        _ => merged.push((r, v)),
                    }
                }
                merged.retain(|&(_, v)| v != 0);
                merged
            })
            .collect();
        BoundaryMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.columns[col]
            .iter()
            .find(|&&(r, _)| r == row)
            .map_or(0, |&(_, v)| v)
    }

    pub fn to_dense(&self) -> Vec<i64> {
        let mut out = vec![0; self.rows * self.cols];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                out[r * self.cols + c] = v;
            }
        }
        out
    }

    /// Whether `self ∘ inner` is the zero matrix.
    pub fn composes_to_zero(&self, inner: &BoundaryMatrix) -> bool {
        assert_eq!(self.cols, inner.rows);
        inner.columns.iter().all(|col| {
            let mut acc = vec![0i64; self.rows];
            for &(k, v) in col {
                for &(r, w) in &self.columns[k] {
                    acc[r] += v * w;
                }
            }
            acc.iter().all(|&x| x == 0)
        })
    }

    fn rank_f2(&self) -> usize {
        let odd: Vec<Vec<usize>> = self
            .columns
            .iter()
            .map(|col| col.iter().filter(|(_, v)| v % 2 != 0).map(|&(r, _)| r).collect())
            .collect();
        rank_of_columns(self.rows, odd.iter().map(Vec::as_slice))
    }

    fn invariant_factors(&self) -> Vec<BigInt> {
        invariant_factors(self.rows, self.cols, &self.to_dense())
    }
}

fn walk_chain<C: TwoComplex + ?Sized>(x: &C, walk: &[Vertex]) -> Option<Vec<(usize, i64)>> {
    let k = walk.len();
    let mut col = Vec::with_capacity(k);
    for i in 0..k {
        let (a, b) = (walk[i], walk[(i + 1) % k]);
        let e = x.edge_position(a, b)?;
        col.push((e, if a < b { 1 } else { -1 }));
    }
    Some(col)
}

/// `(∂1, ∂2)`: vertices × edges and edges × 2-cells.
pub fn boundary_matrices<C: TwoComplex + ?Sized>(x: &C) -> (BoundaryMatrix, BoundaryMatrix) {
    let d1 = BoundaryMatrix::from_columns(
        x.vertex_count() as usize,
        x.edge_list()
            .iter()
            .map(|&[u, v]| vec![(u as usize - 1, -1), (v as usize - 1, 1)])
            .collect(),
    );
    let d2 = BoundaryMatrix::from_columns(
        x.edge_list().len(),
        x.two_cells()
            .iter()
            .map(|w| walk_chain(x, w).expect("cells are validated walks"))
            .collect(),
    );
    (d1, d2)
}

/// Betti numbers over F2.
pub fn betti_f2<C: TwoComplex + ?Sized>(x: &C) -> [usize; 3] {
    let (d1, d2) = boundary_matrices(x);
    let (r1, r2) = (d1.rank_f2(), d2.rank_f2());
    [d1.rows - r1, d1.cols - r1 - r2, d2.cols - r2]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologySummary {
    pub betti_f2: [usize; 3],
    pub betti_q: [usize; 3],
    /// Invariant factors of the torsion subgroup of H1 (all at least 2).
    pub torsion_h1: Vec<BigInt>,
}

impl HomologySummary {
    pub fn euler_characteristic_f2(&self) -> i64 {
        self.betti_f2[0] as i64 - self.betti_f2[1] as i64 + self.betti_f2[2] as i64
    }

    pub fn torsion_string(&self) -> String {
        self.torsion_h1
            .iter()
            .map(BigInt::to_string)
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Integral homology via Smith normal form, plus F2 Betti numbers.
pub fn homology_integral<C: TwoComplex + ?Sized>(x: &C) -> HomologySummary {
    let (d1, d2) = boundary_matrices(x);
    let f1 = invariant_factors_of(&d1);
    let f2 = invariant_factors_of(&d2);
    let (q1, q2) = (f1.len(), f2.len());
    let (r1, r2) = (d1.rank_f2(), d2.rank_f2());
    HomologySummary {
        betti_f2: [d1.rows - r1, d1.cols - r1 - r2, d2.cols - r2],
        betti_q: [d1.rows - q1, d1.cols - q1 - q2, d2.cols - q2],
        torsion_h1: torsion_coefficients(&f2),
    }
}

fn invariant_factors_of(m: &BoundaryMatrix) -> Vec<BigInt> {
    if m.rows == 0 || m.cols == 0 {
        return Vec::new();
    }
    m.invariant_factors()
}

/// Whether the 1-chain of a closed walk bounds, over F2 and over Z.
///
/// The walk lists its vertices once around (`v0 .. vk-1`, closing back to
/// `v0`); a trailing repeat of `v0` is accepted and dropped. Integer
/// solvability of `∂2 x = c` is decided by comparing the invariant factors
/// of `∂2` and `[∂2 | c]`.
pub fn cycle_is_boundary<C: TwoComplex + ?Sized>(x: &C, walk: &[Vertex]) -> Result<(bool, bool)> {
    let mut walk = walk.to_vec();
    if walk.len() > 1 && walk.first() == walk.last() {
        walk.pop();
    }
    let invalid = || Error::InvalidWalk { walk: walk.clone() };
    if walk.len() < 2 {
        return Err(invalid());
    }
    let chain = walk_chain(x, &walk).ok_or_else(invalid)?;
    let (_, d2) = boundary_matrices(x);

    let mut dense = vec![0i64; d2.rows];
    for &(e, s) in &chain {
        dense[e] += s;
    }

    let mut basis = F2Basis::new(d2.rows);
    for col in &d2.columns {
        let mut v = basis.zero();
        for &(r, val) in col {
            if val % 2 != 0 {
                flip_bit(&mut v, r);
            }
        }
        basis.insert(v);
    }
    let mut target = basis.zero();
    for (r, &val) in dense.iter().enumerate() {
        if val % 2 != 0 {
            flip_bit(&mut target, r);
        }
    }
    let over_f2 = basis.contains(&target);

    let over_z = if dense.iter().all(|&v| v == 0) {
        true
    } else {
        let mut augmented = d2.clone();
        augmented.columns.push(
            dense
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(r, &v)| (r, v))
                .collect(),
        );
        augmented.cols += 1;
        let base = invariant_factors_of(&d2);
        let aug = invariant_factors_of(&augmented);
        base == aug
    };
    Ok((over_f2, over_z))
}
