//! Prime field arithmetic and exact sparse linear algebra over GF(p).

use std::fmt;

/// Default characteristic.
pub const DEFAULT_PRIME: u32 = 32003;

/// The prime field GF(p). Elements are plain `u32` residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Default for Fp {
    fn default() -> Self {
        Fp { p: DEFAULT_PRIME }
    }
}

impl Fp {
    /// Returns `None` unless `p` is a prime below 2^31.
    pub fn new(p: u32) -> Option<Self> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return None;
        }
        Some(Fp { p })
    }

    #[inline]
    pub fn prime(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in GF({})", self.p);
        // extended Euclid on i64
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        s0.rem_euclid(self.p as i64) as u32
    }

    /// Reduces an arbitrary signed integer into the field.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn signed(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A sparse column vector over GF(p): sorted `(index, value)` pairs, no zeros.
pub type SparseVec = Vec<(usize, u32)>;

/// Sparse row-major matrix over GF(p). Rows are sorted by column and never
/// store zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

/// Result of [`ExactMatrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub reduced: ExactMatrix,
}

impl ExactMatrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        ExactMatrix { field, rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i].push((i, 1));
        }
        m
    }

    /// Builds a matrix from dense rows of signed integers (reduced mod p).
    pub fn from_rows(field: Fp, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &v) in r.iter().enumerate() {
                let v = field.from_i64(v);
                if v != 0 {
                    m.data[i].push((j, v));
                }
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_columns(field: Fp, rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for &(i, v) in col {
                assert!(i < rows, "row index out of range");
                if v != 0 {
                    m.data[i].push((j, v));
                }
            }
        }
        m
    }

    /// Builds a matrix from sparse rows.
    pub fn from_sparse_rows(field: Fp, cols: usize, rows: Vec<SparseVec>) -> Self {
        let mut data = rows;
        for r in &mut data {
            r.retain(|&(_, v)| v != 0);
            r.sort_unstable_by_key(|&(j, _)| j);
            assert!(r.last().map_or(true, |&(j, _)| j < cols), "column index out of range");
        }
        ExactMatrix { field, rows: data.len(), cols, data }
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i]
            .binary_search_by_key(&j, |&(c, _)| c)
            .map_or(0, |k| self.data[i][k].1)
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        assert!(i < self.rows && j < self.cols);
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |&(c, _)| c) {
            Ok(k) if v == 0 => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v == 0 => {}
            Err(k) => row.insert(k, (j, v)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for &(j, v) in r {
                t.data[j].push((i, v));
            }
        }
        t
    }

    /// Column `j` as a sparse vector.
    pub fn column(&self, j: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(i, _)| {
                let v = self.get(i, j);
                (v != 0).then_some((i, v))
            })
            .collect()
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        let mut acc = vec![0u32; other.cols];
        let mut touched = Vec::new();
        for (i, r) in self.data.iter().enumerate() {
            for &(k, a) in r {
                for &(j, b) in &other.data[k] {
                    if acc[j] == 0 {
                        touched.push(j);
                    }
                    acc[j] = f.add(acc[j], f.mul(a, b));
                }
            }
            touched.sort_unstable();
            for &j in &touched {
                if acc[j] != 0 {
                    out.data[i].push((j, acc[j]));
                    acc[j] = 0;
                }
            }
            touched.clear();
        }
        out
    }

    /// Matrix-vector product with a dense vector.
    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.cols);
        let f = self.field;
        self.data
            .iter()
            .map(|r| r.iter().fold(0, |acc, &(j, v)| f.add(acc, f.mul(v, x[j]))))
            .collect()
    }

    /// Reduced row echelon form with smallest-column-first pivoting.
    pub fn rref(&self) -> Rref {
        let mut ech = Echelon::new(self.field, self.cols);
        for r in &self.data {
            ech.insert(r.clone());
        }
        let (pivots, rows) = ech.into_reduced();
        let rank = pivots.len();
        let mut reduced = Self::zeros(self.field, self.rows, self.cols);
        for (i, r) in rows.into_iter().enumerate() {
            reduced.data[i] = r;
        }
        Rref { rank, pivots, reduced }
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.field, self.cols);
        for r in &self.data {
            ech.insert(r.clone());
        }
        ech.rank()
    }

    /// Basis of the null space, returned as the columns of a `cols x k` matrix.
    pub fn kernel_basis(&self) -> ExactMatrix {
        let f = self.field;
        let Rref { pivots, reduced, .. } = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| is_pivot[j].is_none()).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v: SparseVec = Vec::new();
            for (i, &p) in pivots.iter().enumerate() {
                let c = reduced.get(i, fc);
                if c != 0 {
                    v.push((p, f.neg(c)));
                }
            }
            v.push((fc, 1));
            v.sort_unstable_by_key(|&(j, _)| j);
            basis.push(v);
        }
        Self::from_columns(f, self.cols, &basis)
    }

    /// Solves `self * x = b`. Returns `None` when `b` is outside the column space.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let f = self.field;
        let mut ech = Echelon::new(f, self.cols + 1);
        for (i, r) in self.data.iter().enumerate() {
            let mut row = r.clone();
            if b[i] != 0 {
                row.push((self.cols, b[i]));
            }
            ech.insert(row);
        }
        let (pivots, rows) = ech.into_reduced();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (row, &p) in rows.iter().zip(&pivots) {
            x[p] = row
                .iter()
                .find(|&&(j, _)| j == self.cols)
                .map_or(0, |&(_, v)| v);
        }
        Some(x)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Incremental row echelon form. Rows are inserted one at a time and reduced
/// against the current pivots; pivot rows are kept monic.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Fp,
    cols: usize,
    // pivot column -> row (monic at the pivot, no entries left of it)
    pivot_of: Vec<Option<usize>>,
    rows: Vec<SparseVec>,
    scratch: Vec<u32>,
}

impl Echelon {
    pub fn new(field: Fp, cols: usize) -> Self {
        Echelon { field, cols, pivot_of: vec![None; cols], rows: Vec::new(), scratch: vec![0; cols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `row` against the current pivots, returning the (non-normalized)
    /// remainder.
    pub fn reduce(&mut self, row: &SparseVec) -> SparseVec {
        let f = self.field;
        if row.is_empty() {
            return Vec::new();
        }
        let acc = &mut self.scratch;
        let mut lo = usize::MAX;
        for &(j, v) in row {
            acc[j] = v;
            lo = lo.min(j);
        }
        for j in lo..self.cols {
            let c = acc[j];
            if c == 0 {
                continue;
            }
            if let Some(pr) = self.pivot_of[j] {
                let nc = f.neg(c);
                for &(k, v) in &self.rows[pr] {
                    acc[k] = f.add(acc[k], f.mul(nc, v));
                }
            }
        }
        let mut out = Vec::new();
        for j in lo..self.cols {
            if acc[j] != 0 {
                out.push((j, acc[j]));
                acc[j] = 0;
            }
        }
        out
    }

    /// Inserts a row; returns its pivot column if it increased the rank.
    pub fn insert(&mut self, row: SparseVec) -> Option<usize> {
        let mut r = self.reduce(&row);
        let &(p, lead) = r.first()?;
        let inv = self.field.inv(lead);
        for e in &mut r {
            e.1 = self.field.mul(e.1, inv);
        }
        self.pivot_of[p] = Some(self.rows.len());
        self.rows.push(r);
        Some(p)
    }

    /// True when `row` lies in the span of inserted rows.
    pub fn contains(&mut self, row: &SparseVec) -> bool {
        self.reduce(row).is_empty()
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.cols).filter(|&j| self.pivot_of[j].is_some()).collect()
    }

    /// Back-substitutes into reduced row echelon form; rows sorted by pivot.
    pub fn into_reduced(self) -> (Vec<usize>, Vec<SparseVec>) {
        let f = self.field;
        let pivots: Vec<usize> = (0..self.cols).filter(|&j| self.pivot_of[j].is_some()).collect();
        let mut reduced: Vec<SparseVec> = Vec::with_capacity(pivots.len());
        let mut acc = vec![0u32; self.cols];
        // process from the last pivot up so earlier rows can be cleared by later ones
        let mut done: Vec<Option<SparseVec>> = vec![None; self.cols];
        for &p in pivots.iter().rev() {
            let row = &self.rows[self.pivot_of[p].unwrap()];
            for &(k, v) in row {
                acc[k] = v;
            }
            for j in p + 1..self.cols {
                let c = acc[j];
                if c == 0 {
                    continue;
                }
                if let Some(other) = &done[j] {
                    let nc = f.neg(c);
                    for &(k, v) in other {
                        acc[k] = f.add(acc[k], f.mul(nc, v));
                    }
                }
            }
            let mut out = Vec::new();
            for (j, a) in acc.iter_mut().enumerate().skip(p) {
                if *a != 0 {
                    out.push((j, *a));
                    *a = 0;
                }
            }
            done[p] = Some(out);
        }
        for &p in &pivots {
            reduced.push(done[p].take().unwrap());
        }
        (pivots, reduced)
    }
}
