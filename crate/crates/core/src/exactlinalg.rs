//! Exact linear algebra over prime fields.
//!
//! Every Koszul differential ends up here as a [`SparseMatrix`]. Elimination
//! runs in one of two engines: a sparse one that picks the leftmost nonzero
//! column and, among rows starting there, the sparsest row; and a dense one
//! used for matrices below [`DENSE_THRESHOLD`] in both dimensions. Reduced
//! row echelon form is unique, so both engines agree bit for bit.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default modulus for all computations.
pub const DEFAULT_PRIME: u64 = 32003;

/// Matrices with both dimensions below this size are eliminated densely.
pub const DENSE_THRESHOLD: usize = 256;

// Keeps every product of two reduced elements inside a u64.
const MAX_MODULUS: u64 = 1 << 31;

/// Deterministic primality test by trial division (moduli are below 2^31).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// The field Z/pZ. Elements are plain `u64` values in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if p >= MAX_MODULUS {
            return Err(Error::InvalidInput(format!(
                "modulus {p} too large (must be below 2^31)"
            )));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u64 {
        x % self.p
    }

    pub fn from_i64(self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn to_i64(self, x: u64) -> i64 {
        if x > self.p / 2 {
            x as i64 - self.p as i64
        } else {
            x as i64
        }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

impl TryFrom<u64> for PrimeField {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.p
    }
}

type SparseRow = Vec<(usize, u64)>;

/// Row-compressed sparse matrix over a prime field.
///
/// Each row is a list of `(column, value)` pairs sorted by column with no
/// zero values and no repeated columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: PrimeField,
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn zeros(field: PrimeField, nrows: usize, ncols: usize) -> Self {
        Self {
            field,
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for (i, row) in m.rows.iter_mut().enumerate() {
            row.push((i, 1));
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets. Values are reduced
    /// mod p and zeros are dropped; repeated positions are rejected.
    pub fn from_triplets(
        field: PrimeField,
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<Self> {
        let mut m = Self::zeros(field, nrows, ncols);
        for (r, c, v) in entries {
            if r >= nrows || c >= ncols {
                return Err(Error::InvalidInput(format!("entry ({r}, {c}) outside {nrows}x{ncols}")));
            }
            m.rows[r].push((c, field.reduce(v)));
        }
        for (r, row) in m.rows.iter_mut().enumerate() {
            row.sort_unstable_by_key(|e| e.0);
            if let Some(w) = row.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(Error::InvalidInput(format!("duplicate entry ({r}, {})", w[0].0)));
            }
            row.retain(|e| e.1 != 0);
        }
        Ok(m)
    }

    pub fn from_dense(field: PrimeField, ncols: usize, dense: &[Vec<u64>]) -> Self {
        let rows = dense
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "ragged dense matrix");
                r.iter()
                    .enumerate()
                    .filter_map(|(c, &v)| {
                        let v = field.reduce(v);
                        (v != 0).then_some((c, v))
                    })
                    .collect()
            })
            .collect();
        Self {
            field,
            nrows: dense.len(),
            ncols,
            rows,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        self.rows
            .iter()
            .map(|row| {
                let mut d = vec![0; self.ncols];
                for &(c, v) in row {
                    d[c] = v;
                }
                d
            })
            .collect()
    }

    /// Adds `value` to the entry at `(row, col)`, removing it if it cancels.
    pub fn add_entry(&mut self, row: usize, col: usize, value: u64) {
        assert!(row < self.nrows && col < self.ncols, "entry out of range");
        let f = self.field;
        let value = f.reduce(value);
        if value == 0 {
            return;
        }
        let r = &mut self.rows[row];
        match r.binary_search_by_key(&col, |e| e.0) {
            Ok(pos) => {
                let s = f.add(r[pos].1, value);
                if s == 0 {
                    r.remove(pos);
                } else {
                    r[pos].1 = s;
                }
            }
            Err(pos) => r.insert(pos, (col, value)),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.rows[row]
            .binary_search_by_key(&col, |e| e.0)
            .map(|pos| self.rows[row][pos].1)
            .unwrap_or(0)
    }

    pub fn row(&self, row: usize) -> &[(usize, u64)] {
        &self.rows[row]
    }

    /// All nonzero entries as `(row, col, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<SparseRow> = vec![Vec::new(); self.ncols];
        for (r, c, v) in self.entries() {
            rows[c].push((r, v));
        }
        Self {
            field: self.field,
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
        }
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.ncols != rhs.nrows || self.field != rhs.field {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, rhs.nrows, rhs.ncols
            )));
        }
        let f = self.field;
        let mut acc = vec![0u64; rhs.ncols];
        let mut touched = Vec::new();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                for &(k, a) in row {
                    for &(c, b) in &rhs.rows[k] {
                        touched.push(c);
                        acc[c] = f.add(acc[c], f.mul(a, b));
                    }
                }
                touched.sort_unstable();
                touched.dedup();
                let out: SparseRow = touched
                    .iter()
                    .filter_map(|&c| {
                        let v = std::mem::take(&mut acc[c]);
                        (v != 0).then_some((c, v))
                    })
                    .collect();
                touched.clear();
                out
            })
            .collect();
        Ok(SparseMatrix {
            field: f,
            nrows: self.nrows,
            ncols: rhs.ncols,
            rows,
        })
    }

    /// Applies the matrix to a dense column vector.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.ncols);
        let f = self.field;
        self.rows
            .iter()
            .map(|row| row.iter().fold(0, |acc, &(c, a)| f.add(acc, f.mul(a, v[c]))))
            .collect()
    }

    fn is_small(&self) -> bool {
        self.nrows < DENSE_THRESHOLD && self.ncols < DENSE_THRESHOLD
    }
}

/// Rank over the matrix's field.
pub fn rank(m: &SparseMatrix) -> usize {
    if m.is_small() {
        dense_forward(m.field, m.ncols, &mut m.to_dense()).len()
    } else {
        sparse_forward(m).len()
    }
}

/// Dimension of the right kernel: `ncols - rank`.
pub fn kernel_dim(m: &SparseMatrix) -> usize {
    m.ncols - rank(m)
}

/// Reduced row echelon form with its strictly increasing pivot columns.
/// The echelon matrix has exactly `rank` rows.
pub fn row_echelon(m: &SparseMatrix) -> (SparseMatrix, Vec<usize>) {
    if m.is_small() {
        row_echelon_dense(m)
    } else {
        row_echelon_sparse(m)
    }
}

/// Sparse elimination engine (leftmost column, then sparsest row).
pub fn row_echelon_sparse(m: &SparseMatrix) -> (SparseMatrix, Vec<usize>) {
    let f = m.field;
    let mut rows = sparse_forward(m);
    // back substitution: clear each pivot column above its pivot
    for i in (0..rows.len()).rev() {
        let (pc, _) = rows[i][0];
        let (head, tail) = rows.split_at_mut(i);
        let pivot_row = &tail[0];
        for row in head.iter_mut() {
            if let Ok(pos) = row.binary_search_by_key(&pc, |e| e.0) {
                let c = f.neg(row[pos].1);
                *row = axpy(f, row, c, pivot_row);
            }
        }
    }
    let pivots = rows.iter().map(|r| r[0].0).collect();
    let echelon = SparseMatrix {
        field: f,
        nrows: rows.len(),
        ncols: m.ncols,
        rows,
    };
    (echelon, pivots)
}

/// Dense elimination engine.
pub fn row_echelon_dense(m: &SparseMatrix) -> (SparseMatrix, Vec<usize>) {
    let f = m.field;
    let mut dense = m.to_dense();
    let pivots = dense_forward(f, m.ncols, &mut dense);
    let r = pivots.len();
    for i in (0..r).rev() {
        let pc = pivots[i];
        let (head, tail) = dense.split_at_mut(i);
        let pivot_row = &tail[0];
        for row in head.iter_mut() {
            let c = row[pc];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(pivot_row.iter()).skip(pc) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
    }
    dense.truncate(r);
    (SparseMatrix::from_dense(f, m.ncols, &dense), pivots)
}

/// Forward elimination in place; returns pivot columns. Rows `0..rank` of
/// `dense` hold the normalized echelon rows afterwards.
fn dense_forward(f: PrimeField, ncols: usize, dense: &mut [Vec<u64>]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == dense.len() {
            break;
        }
        let Some(pr) = (r..dense.len()).find(|&i| dense[i][c] != 0) else {
            continue;
        };
        dense.swap(r, pr);
        let inv = f.inv(dense[r][c]);
        for x in dense[r][c..].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let (head, tail) = dense.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let a = row[c];
            if a != 0 {
                for (x, &y) in row[c..].iter_mut().zip(pivot_row[c..].iter()) {
                    *x = f.sub(*x, f.mul(a, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Forward sparse elimination; returns normalized echelon rows ordered by
/// pivot column.
fn sparse_forward(m: &SparseMatrix) -> Vec<SparseRow> {
    let f = m.field;
    let mut buckets: BTreeMap<usize, Vec<SparseRow>> = BTreeMap::new();
    for row in m.rows.iter().filter(|r| !r.is_empty()) {
        buckets.entry(row[0].0).or_default().push(row.clone());
    }
    let mut out = Vec::new();
    while let Some((col, mut group)) = buckets.pop_first() {
        let best = group
            .iter()
            .enumerate()
            .min_by_key(|(i, r)| (r.len(), *i))
            .map(|(i, _)| i)
            .expect("buckets are never empty");
        let mut pivot = group.swap_remove(best);
        let inv = f.inv(pivot[0].1);
        for e in pivot.iter_mut() {
            e.1 = f.mul(e.1, inv);
        }
        for row in group {
            let c = f.neg(row[0].1);
            let reduced = axpy(f, &row, c, &pivot);
            if let Some(&(lead, _)) = reduced.first() {
                debug_assert!(lead > col);
                buckets.entry(lead).or_default().push(reduced);
            }
        }
        out.push(pivot);
    }
    out
}

/// `a + c * b` on sorted sparse rows.
fn axpy(f: PrimeField, a: &[(usize, u64)], c: u64, b: &[(usize, u64)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i]);
            i += 1;
        } else if cb < ca {
            let v = f.mul(c, b[j].1);
            if v != 0 {
                out.push((cb, v));
            }
            j += 1;
        } else {
            let v = f.add(a[i].1, f.mul(c, b[j].1));
            if v != 0 {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
