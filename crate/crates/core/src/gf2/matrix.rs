//! Dense bit-packed matrices over GF(2) and their coordinate text format.
//!
//! The text format is a header line `m n nnz` followed by `nnz` lines `i j`
//! giving 0-indexed coordinates of the 1-bits in row-major order.

use std::fmt::Write as _;
use std::ops::Index;

use super::BitVec;
use crate::error::{Error, Result};

/// An `rows × cols` matrix over GF(2), one packed [`BitVec`] per row.
///
/// Rows are held separately so that swaps and rotations move pointers, not
/// bits.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: (0..rows).map(|_| BitVec::zeros(cols)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from explicit rows. Every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row {i} has length {}, expected {cols}",
                r.len()
            )));
        }
        Ok(Self { cols, rows })
    }

    /// Convenience constructor from nested 0/1 literals (mostly for tests).
    pub fn from_dense<R: AsRef<[u8]>>(cols: usize, rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| {
                let r = r.as_ref();
                assert_eq!(r.len(), cols, "row length mismatch");
                BitVec::from_ones(cols, r.iter().enumerate().filter(|(_, &b)| b != 0).map(|(j, _)| j))
            })
            .collect();
        Self { cols, rows }
    }

    /// Builds a matrix from the coordinates of its 1-bits. Duplicate
    /// coordinates cancel (GF(2) addition).
    pub fn from_coords(rows: usize, cols: usize, ones: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for (i, j) in ones {
            if i >= rows || j >= cols {
                return Err(Error::Dimension(format!(
                    "coordinate ({i}, {j}) outside a {rows}x{cols} matrix"
                )));
            }
            m.rows[i].flip(j);
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value)
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut BitVec {
        &mut self.rows[i]
    }

    pub fn iter_rows(&self) -> std::slice::Iter<'_, BitVec> {
        self.rows.iter()
    }

    #[inline]
    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    /// `row[target] ^= row[source]`.
    #[inline]
    pub fn xor_rows(&mut self, target: usize, source: usize) {
        assert_ne!(target, source);
        let (t, s) = if target < source {
            let (lo, hi) = self.rows.split_at_mut(source);
            (&mut lo[target], &hi[0])
        } else {
            let (lo, hi) = self.rows.split_at_mut(target);
            (&mut hi[0], &lo[source])
        };
        t.xor_assign(s);
    }

    /// Like [`xor_rows`](Self::xor_rows) but only touches columns `>= start`.
    pub fn xor_rows_from(&mut self, target: usize, source: usize, start: usize) {
        assert_ne!(target, source);
        let (t, s) = if target < source {
            let (lo, hi) = self.rows.split_at_mut(source);
            (&mut lo[target], &hi[0])
        } else {
            let (lo, hi) = self.rows.split_at_mut(target);
            (&mut hi[0], &lo[source])
        };
        t.xor_assign_from(s, start);
    }

    /// Moves row `hi` to position `lo`, shifting rows `lo..hi` down by one.
    pub(crate) fn rotate_rows_right(&mut self, lo: usize, hi: usize) {
        self.rows[lo..=hi].rotate_right(1);
    }

    pub fn push_row(&mut self, row: BitVec) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::Dimension(format!(
                "pushed row has length {}, matrix has {} columns",
                row.len(),
                self.cols
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    /// Widens every row to `cols` columns, filling with zeros.
    pub fn resize_cols(&mut self, cols: usize) {
        for r in &mut self.rows {
            r.resize(cols);
        }
        self.cols = cols;
    }

    pub fn count_ones(&self) -> usize {
        self.rows.iter().map(BitVec::count_ones).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn column_weight(&self, j: usize) -> usize {
        self.rows.iter().filter(|r| r.get(j)).count()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != rhs.rows() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols,
                rhs.rows(),
                rhs.cols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVec::zeros(rhs.cols);
                for k in r.iter_ones() {
                    acc.xor_assign(&rhs.rows[k]);
                }
                acc
            })
            .collect();
        Ok(BitMatrix { cols: rhs.cols, rows })
    }

    /// Matrix–vector product over GF(2).
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(BitVec::from_ones(
            self.rows(),
            self.rows.iter().enumerate().filter(|(_, r)| r.dot(v)).map(|(i, _)| i),
        ))
    }

    /// Submatrix with the given rows and columns, in the given orders.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> BitMatrix {
        BitMatrix {
            cols: cols.len(),
            rows: rows.iter().map(|&i| self.rows[i].select(cols)).collect(),
        }
    }

    /// Serializes to the coordinate text format.
    pub fn to_coord_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.rows(), self.cols, self.count_ones());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                let _ = writeln!(out, "{i} {j}");
            }
        }
        out
    }

    /// Parses the coordinate text format. Blank lines and lines starting
    /// with `#` are ignored; entries must be sorted row-major and unique.
    pub fn from_coord_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .map(str::trim)
            .enumerate()
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse("missing header line `m n nnz`".into()))?;
        let header = parse_fields::<3>(header, 1)?;
        let (m, n, nnz) = (header[0], header[1], header[2]);
        let mut mat = BitMatrix::zeros(m, n);
        let mut prev: Option<(usize, usize)> = None;
        let mut count = 0;
        for (lineno, line) in lines {
            let [i, j] = parse_fields::<2>(line, lineno + 1)?;
            if i >= m || j >= n {
                return Err(Error::Parse(format!(
                    "line {}: coordinate ({i}, {j}) outside a {m}x{n} matrix",
                    lineno + 1
                )));
            }
            if prev.is_some_and(|p| p >= (i, j)) {
                return Err(Error::Parse(format!(
                    "line {}: coordinates must be unique and sorted row-major",
                    lineno + 1
                )));
            }
            prev = Some((i, j));
            mat.rows[i].set(j, true);
            count += 1;
        }
        if count != nnz {
            return Err(Error::Parse(format!("header declares {nnz} entries, found {count}")));
        }
        Ok(mat)
    }
}

fn parse_fields<const N: usize>(line: &str, lineno: usize) -> Result<[usize; N]> {
    let mut out = [0usize; N];
    let mut it = line.split_whitespace();
    for slot in out.iter_mut() {
        *slot = it
            .next()
            .ok_or_else(|| Error::Parse(format!("line {lineno}: expected {N} integers")))?
            .parse()
            .map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?;
    }
    if it.next().is_some() {
        return Err(Error::Parse(format!("line {lineno}: expected {N} integers")));
    }
    Ok(out)
}

impl Index<usize> for BitMatrix {
    type Output = BitVec;

    fn index(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }
}
