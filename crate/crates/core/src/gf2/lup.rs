//! LUP decomposition over GF(2), batch and online.
//!
//! A [`LupState`] holds `P·A = (L + I)·U` for an `m × n` matrix `A`, where `P`
//! is a row permutation, `L` is strictly lower triangular (its unit diagonal
//! is never stored) and `U` is in row echelon form. An optional augmented
//! column `b` is carried alongside `U` and receives every row swap and row
//! XOR, so after elimination it holds `(L + I)⁻¹·P·b`.
//!
//! [`LupState::online_update`] appends rows and columns to `A` and returns
//! `U` to echelon form without redoing the work already recorded in `L`
//! and `P`: new columns of old rows are brought up to date by forward
//! substitution, and elimination then only searches and updates rows that
//! were appended while it is still inside the old columns.

use serde::{Deserialize, Serialize};
use std::ops::AddAssign;

use super::{BitMatrix, BitVec};
use crate::error::{Error, Result};

/// Work performed by elimination.
///
/// `bit_xors` counts every bit touched by a row XOR: a full row XOR costs the
/// current column count of `U` plus one when an augmented column is present,
/// and a forward-substitution XOR over appended columns costs the number of
/// appended columns.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpCounters {
    pub bit_xors: u64,
    pub row_xors: u64,
    pub row_swaps: u64,
    pub col_searches: u64,
}

impl AddAssign for OpCounters {
    fn add_assign(&mut self, rhs: Self) {
        self.bit_xors += rhs.bit_xors;
        self.row_xors += rhs.row_xors;
        self.row_swaps += rhs.row_swaps;
        self.col_searches += rhs.col_searches;
    }
}

/// The pieces of an enlarged matrix that are new relative to a [`LupState`].
///
/// With `A` the current `m_old × n_old` matrix, the enlarged matrix is
///
/// ```text
/// [ A                  | old_rows_new_cols ]
/// [ new_rows_old_cols  | new_rows_new_cols ]
/// ```
///
/// `old_rows_new_cols` is indexed by original row of `A`, not by the
/// permuted position inside the state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthBlock {
    pub old_rows_new_cols: BitMatrix,
    pub new_rows_old_cols: BitMatrix,
    pub new_rows_new_cols: BitMatrix,
    /// Augmented bits of the new rows. Required iff the state carries an
    /// augmented column.
    pub aug: Option<BitVec>,
}

impl GrowthBlock {
    /// Cuts the block out of an enlarged matrix whose top-left
    /// `old_rows × old_cols` corner is the current matrix.
    pub fn from_enlarged(enlarged: &BitMatrix, old_rows: usize, old_cols: usize, aug: Option<&BitVec>) -> Self {
        let (m, n) = (enlarged.rows(), enlarged.cols());
        let old_r: Vec<usize> = (0..old_rows).collect();
        let new_r: Vec<usize> = (old_rows..m).collect();
        let old_c: Vec<usize> = (0..old_cols).collect();
        let new_c: Vec<usize> = (old_cols..n).collect();
        GrowthBlock {
            old_rows_new_cols: enlarged.select(&old_r, &new_c),
            new_rows_old_cols: enlarged.select(&new_r, &old_c),
            new_rows_new_cols: enlarged.select(&new_r, &new_c),
            aug: aug.map(|a| a.select(&new_r)),
        }
    }

    pub fn new_rows(&self) -> usize {
        self.new_rows_new_cols.rows()
    }

    pub fn new_cols(&self) -> usize {
        self.new_rows_new_cols.cols()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LupState {
    u: BitMatrix,
    l: BitMatrix,
    perm: Vec<usize>,
    pivot_cols: Vec<usize>,
    aug: Option<BitVec>,
    counters: OpCounters,
}

/// Batch LUP decomposition of `a`, optionally carrying an augmented column.
///
/// Pivots are chosen as the first row at or below the current row with a 1
/// in the current column; there is no other pivoting.
pub fn lup_decompose(a: &BitMatrix, aug: Option<&BitVec>) -> Result<LupState> {
    if let Some(b) = aug {
        if b.len() != a.rows() {
            return Err(Error::Dimension(format!(
                "augmented column has length {}, matrix has {} rows",
                b.len(),
                a.rows()
            )));
        }
    }
    let m = a.rows();
    let mut state = LupState {
        u: a.clone(),
        l: BitMatrix::zeros(m, m),
        perm: (0..m).collect(),
        pivot_cols: Vec::new(),
        aug: aug.cloned(),
        counters: OpCounters::default(),
    };
    state.eliminate(0, 0);
    Ok(state)
}

impl LupState {
    pub fn rows(&self) -> usize {
        self.u.rows()
    }

    pub fn cols(&self) -> usize {
        self.u.cols()
    }

    pub fn u(&self) -> &BitMatrix {
        &self.u
    }

    /// Strictly lower part of `L`; the unit diagonal is implicit.
    pub fn l(&self) -> &BitMatrix {
        &self.l
    }

    /// `perm[p]` is the original row index now at position `p`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    /// Transformed augmented column, if any.
    pub fn aug(&self) -> Option<&BitVec> {
        self.aug.as_ref()
    }

    pub fn counters(&self) -> OpCounters {
        self.counters
    }

    /// Number of pivot rows.
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    /// Whether `U | b` has the same rank as `U`, i.e. every zero row of `U`
    /// has a zero augmented bit.
    pub fn is_consistent(&self) -> Result<bool> {
        let aug = self
            .aug
            .as_ref()
            .ok_or_else(|| Error::Usage("consistency check needs an augmented column".into()))?;
        Ok(aug.first_one_from(self.rank()).is_none())
    }

    /// Back-substitution. Returns `x` with `A·x = b`, free variables set to 0.
    pub fn solve(&self) -> Result<BitVec> {
        if !self.is_consistent()? {
            return Err(Error::Inconsistent);
        }
        let aug = self.aug.as_ref().expect("checked by is_consistent");
        let mut x = BitVec::zeros(self.cols());
        for (k, &pc) in self.pivot_cols.iter().enumerate().rev() {
            // x only has bits at pivot columns right of pc so far
            if aug.get(k) ^ self.u[k].dot(&x) {
                x.set(pc, true);
            }
        }
        Ok(x)
    }

    /// True iff `U` is in row echelon form with leading ones at `pivot_cols`.
    pub fn is_row_echelon(&self) -> bool {
        let strictly_increasing = self.pivot_cols.windows(2).all(|w| w[0] < w[1]);
        let pivots_lead = self
            .pivot_cols
            .iter()
            .enumerate()
            .all(|(k, &pc)| self.u[k].first_one() == Some(pc));
        let tail_zero = (self.rank()..self.rows()).all(|k| self.u[k].is_zero());
        strictly_increasing && pivots_lead && tail_zero
    }

    /// Checks `P·original = (L + I)·U` exactly.
    pub fn verify_factorisation(&self, original: &BitMatrix) -> Result<bool> {
        if original.rows() != self.rows() || original.cols() != self.cols() {
            return Err(Error::Dimension(format!(
                "state is {}x{}, original is {}x{}",
                self.rows(),
                self.cols(),
                original.rows(),
                original.cols()
            )));
        }
        for p in 0..self.rows() {
            let mut row = self.u[p].clone();
            for k in self.l[p].iter_ones() {
                if k >= p {
                    return Ok(false);
                }
                row.xor_assign(&self.u[k]);
            }
            if row != original[self.perm[p]] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Appends the rows and columns described by `block` and restores echelon
    /// form. Counters keep accumulating across updates.
    pub fn online_update(&mut self, block: &GrowthBlock) -> Result<()> {
        let (m_old, c_old) = (self.rows(), self.cols());
        let (r_new, c_new) = (block.new_rows(), block.new_cols());
        if block.old_rows_new_cols.rows() != m_old
            || block.old_rows_new_cols.cols() != c_new
            || block.new_rows_old_cols.rows() != r_new
            || block.new_rows_old_cols.cols() != c_old
        {
            return Err(Error::Dimension(format!(
                "growth block [{}x{} | {}x{}; {}x{} | {}x{}] does not fit a {m_old}x{c_old} state",
                m_old,
                c_old,
                block.old_rows_new_cols.rows(),
                block.old_rows_new_cols.cols(),
                block.new_rows_old_cols.rows(),
                block.new_rows_old_cols.cols(),
                r_new,
                c_new,
            )));
        }
        match (&self.aug, &block.aug) {
            (Some(_), Some(b)) if b.len() == r_new => {}
            (None, None) => {}
            (Some(_), _) => {
                return Err(Error::Dimension(format!(
                    "state carries an augmented column, block needs {r_new} augmented bits"
                )))
            }
            (None, Some(_)) => {
                return Err(Error::Dimension(
                    "block has augmented bits but the state has no augmented column".into(),
                ))
            }
        }

        let n = c_old + c_new;
        let m = m_old + r_new;

        // New columns of old rows, permuted into the stored row order, then
        // forward-substituted through L so they have seen every recorded XOR.
        self.u.resize_cols(n);
        for p in 0..m_old {
            let src = block.old_rows_new_cols.row(self.perm[p]);
            for j in src.iter_ones() {
                self.u.set(p, c_old + j, true);
            }
        }
        if c_new > 0 {
            for p in 1..m_old {
                let sources: Vec<usize> = self.l[p].iter_ones().collect();
                for k in sources {
                    self.u.xor_rows_from(p, k, c_old);
                    self.counters.row_xors += 1;
                    self.counters.bit_xors += c_new as u64;
                }
            }
        }

        // New rows go underneath in their given order.
        for j in 0..r_new {
            let mut row = block.new_rows_old_cols.row(j).clone();
            row.extend_from(block.new_rows_new_cols.row(j));
            self.u.push_row(row)?;
        }
        self.l.resize_cols(m);
        for _ in 0..r_new {
            self.l.push_row(BitVec::zeros(m))?;
        }
        self.perm.extend(m_old..m);
        if let (Some(aug), Some(new)) = (self.aug.as_mut(), block.aug.as_ref()) {
            aug.extend_from(new);
        }

        self.eliminate(c_old, m_old);
        Ok(())
    }

    /// Gaussian elimination from `(0, 0)` recording into `L` and `P`.
    ///
    /// Rows `[0, old_end)` must already be in echelon form over columns
    /// `[0, c_old)`. While in those columns, only rows from `old_end` down are
    /// searched and eliminated. With `c_old = 0` this is plain elimination.
    fn eliminate(&mut self, c_old: usize, mut old_end: usize) {
        let (m, n) = (self.rows(), self.cols());
        let row_cost = (n + usize::from(self.aug.is_some())) as u64;
        self.pivot_cols.clear();
        let (mut r, mut c) = (0, 0);
        while r < m && c < n {
            self.counters.col_searches += 1;
            let in_old = c < c_old;
            let below = |r: usize, old_end: usize| if in_old { old_end.max(r + 1) } else { r + 1 };

            let mut i = r;
            if !self.u.get(r, c) {
                i = below(r, old_end);
                while i < m && !self.u.get(i, c) {
                    i += 1;
                }
            }
            if i == m {
                c += 1;
                continue;
            }

            if i != r {
                self.counters.row_swaps += 1;
                if in_old && r < old_end {
                    // Rows [r, old_end) are untouched old rows whose L entries
                    // may point at position r, so a plain swap would detach
                    // them. Rotate instead: everything in [r, i) moves down
                    // one and L's column labels move with it.
                    self.rotate(r, i);
                    old_end += 1;
                } else {
                    self.u.swap_rows(r, i);
                    self.l.swap_rows(r, i);
                    self.perm.swap(r, i);
                    if let Some(aug) = self.aug.as_mut() {
                        let (a, b) = (aug.get(r), aug.get(i));
                        aug.set(r, b);
                        aug.set(i, a);
                    }
                }
            }

            for i in below(r, old_end)..m {
                if self.u.get(i, c) {
                    self.u.xor_rows(i, r);
                    if let Some(aug) = self.aug.as_mut() {
                        if aug.get(r) {
                            aug.flip(i);
                        }
                    }
                    self.l.set(i, r, true);
                    self.counters.row_xors += 1;
                    self.counters.bit_xors += row_cost;
                }
            }

            self.pivot_cols.push(c);
            r += 1;
            c += 1;
        }
    }

    fn rotate(&mut self, lo: usize, hi: usize) {
        self.u.rotate_rows_right(lo, hi);
        self.l.rotate_rows_right(lo, hi);
        self.perm[lo..=hi].rotate_right(1);
        if let Some(aug) = self.aug.as_mut() {
            aug.rotate_range_right(lo, hi);
        }
        for p in lo..self.l.rows() {
            let row = self.l.row_mut(p);
            if row.first_one_from(lo).is_some_and(|k| k <= hi) {
                row.rotate_range_right(lo, hi);
            }
        }
    }
}
