//! Bit-packed linear algebra over F2.

/// A set of F2 vectors of fixed length kept in reduced form: every stored
/// vector has a distinct pivot (its lowest set bit), so membership and rank
/// queries reduce against at most one vector per pivot.
#[derive(Debug, Clone)]
pub struct F2Basis {
    words: usize,
    pivot_of: Vec<Option<usize>>,
    vectors: Vec<Vec<u64>>,
}

impl F2Basis {
    pub fn new(len: usize) -> Self {
        F2Basis {
            words: len.div_ceil(64),
            pivot_of: vec![None; len],
            vectors: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.words]
    }

    fn reduce(&self, v: &mut [u64]) -> Option<usize> {
        loop {
            let low = lowest_bit(v)?;
            match self.pivot_of[low] {
                Some(k) => xor_into(v, &self.vectors[k]),
                None => return Some(low),
            }
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        match self.reduce(&mut v) {
            Some(low) => {
                self.pivot_of[low] = Some(self.vectors.len());
                self.vectors.push(v);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v).is_none()
    }
}

pub fn set_bit(v: &mut [u64], i: usize) {
    v[i / 64] |= 1 << (i % 64);
}

pub fn flip_bit(v: &mut [u64], i: usize) {
    v[i / 64] ^= 1 << (i % 64);
}

fn lowest_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

fn xor_into(v: &mut [u64], other: &[u64]) {
    for (a, b) in v.iter_mut().zip(other) {
        *a ^= b;
    }
}

/// Rank over F2 of the matrix whose columns are given as lists of nonzero
/// row indices (entries taken mod 2; repeated indices cancel).
pub fn rank_of_columns<'a, I>(rows: usize, columns: I) -> usize
where
    I: IntoIterator<Item = &'a [usize]>,
{
    let mut basis = F2Basis::new(rows);
    for col in columns {
        let mut v = basis.zero();
        for &r in col {
            flip_bit(&mut v, r);
        }
        basis.insert(v);
    }
    basis.rank()
}
