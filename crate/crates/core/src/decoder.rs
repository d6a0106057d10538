//! Generalised union–find decoding over a Tanner graph.
//!
//! The erasure starts at the flagged checks and grows by one bipartite step
//! per iteration. After each step the reduced system `H'·x = σ'` is formed
//! from every erasure check (rows) and every interior qubit (columns), and
//! growth stops once it is consistent. Because only interior qubits become
//! columns, a local solution never excites a check outside the erasure, so
//! the scattered local solution is a global correction.
//!
//! Two backends share this loop. [`Backend::Offline`] re-runs
//! [`lup_decompose`] on the reduced system every iteration;
//! [`Backend::Online`] keeps one [`LupState`] and feeds it only the rows and
//! columns added by each growth step.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::codes::TannerGraph;
use crate::error::{Error, Result};
use crate::gf2::{lup_decompose, BitMatrix, BitVec, GrowthBlock, LupState, OpCounters};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Offline,
    Online,
}

impl Backend {
    pub fn as_str(&self) -> &'static str {
        match self {
            Backend::Offline => "offline",
            Backend::Online => "online",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "offline" => Ok(Backend::Offline),
            "online" => Ok(Backend::Online),
            other => Err(Error::Parse(format!(
                "unknown backend {other:?} (expected offline or online)"
            ))),
        }
    }
}

/// The union of all clusters: erasure checks, erasure qubits and the
/// interior qubits whose every check is in the erasure.
///
/// Membership only grows. `row_order` and `col_order` give the append order
/// of checks and interior qubits and so define local row/column indices of
/// the reduced system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erasure {
    check_in: Vec<bool>,
    qubit_in: Vec<bool>,
    interior: Vec<bool>,
    row_order: Vec<usize>,
    qubit_order: Vec<usize>,
    col_order: Vec<usize>,
}

/// What a single growth step added.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GrowthDelta {
    pub new_checks: Vec<usize>,
    pub new_qubits: Vec<usize>,
    pub new_interior: Vec<usize>,
}

impl GrowthDelta {
    pub fn is_empty(&self) -> bool {
        self.new_checks.is_empty() && self.new_qubits.is_empty() && self.new_interior.is_empty()
    }
}

impl Erasure {
    pub fn empty(n_checks: usize, n_qubits: usize) -> Self {
        Self {
            check_in: vec![false; n_checks],
            qubit_in: vec![false; n_qubits],
            interior: vec![false; n_qubits],
            row_order: Vec::new(),
            qubit_order: Vec::new(),
            col_order: Vec::new(),
        }
    }

    /// Erasure holding exactly the flagged checks of `syndrome`.
    pub fn from_syndrome(syndrome: &BitVec, n_qubits: usize) -> Self {
        let mut e = Self::empty(syndrome.len(), n_qubits);
        for c in syndrome.iter_ones() {
            e.check_in[c] = true;
            e.row_order.push(c);
        }
        e
    }

    pub fn checks(&self) -> &[usize] {
        &self.row_order
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubit_order
    }

    pub fn interior_qubits(&self) -> &[usize] {
        &self.col_order
    }

    pub fn contains_check(&self, c: usize) -> bool {
        self.check_in[c]
    }

    pub fn contains_qubit(&self, q: usize) -> bool {
        self.qubit_in[q]
    }

    pub fn is_interior(&self, q: usize) -> bool {
        self.interior[q]
    }

    /// One bipartite growth step: qubits adjacent to erasure checks and
    /// checks adjacent to erasure qubits (both taken before the step) join,
    /// then interior status is refreshed. New vertices are appended in
    /// ascending index order.
    pub fn grow(&mut self, tanner: &TannerGraph) -> GrowthDelta {
        let mut new_qubits: Vec<usize> = self
            .row_order
            .iter()
            .flat_map(|&c| &tanner.check_adj[c])
            .copied()
            .filter(|&q| !self.qubit_in[q])
            .collect();
        new_qubits.sort_unstable();
        new_qubits.dedup();

        let mut new_checks: Vec<usize> = self
            .qubit_order
            .iter()
            .flat_map(|&q| &tanner.qubit_adj[q])
            .copied()
            .filter(|&c| !self.check_in[c])
            .collect();
        new_checks.sort_unstable();
        new_checks.dedup();

        for &q in &new_qubits {
            self.qubit_in[q] = true;
            self.qubit_order.push(q);
        }
        for &c in &new_checks {
            self.check_in[c] = true;
            self.row_order.push(c);
        }

        // Only new qubits and qubits next to new checks can change status.
        let mut candidates: Vec<usize> = new_qubits
            .iter()
            .copied()
            .chain(new_checks.iter().flat_map(|&c| tanner.check_adj[c].iter().copied()))
            .filter(|&q| self.qubit_in[q] && !self.interior[q])
            .collect();
        candidates.sort_unstable();
        candidates.dedup();
        let new_interior: Vec<usize> = candidates
            .into_iter()
            .filter(|&q| tanner.qubit_adj[q].iter().all(|&c| self.check_in[c]))
            .collect();
        for &q in &new_interior {
            self.interior[q] = true;
            self.col_order.push(q);
        }

        GrowthDelta {
            new_checks,
            new_qubits,
            new_interior,
        }
    }
}

/// `H'` (erasure checks × interior qubits, in append order) and `σ'`
/// (syndrome restricted to erasure checks).
pub fn reduced_system(erasure: &Erasure, h: &BitMatrix, syndrome: &BitVec) -> (BitMatrix, BitVec) {
    (
        h.select(&erasure.row_order, &erasure.col_order),
        syndrome.select(&erasure.row_order),
    )
}

/// Solves the reduced system held in `state` and scatters the local
/// solution onto global qubit indices.
pub fn extract_correction(state: &LupState, erasure: &Erasure, n_qubits: usize) -> Result<BitVec> {
    if state.cols() != erasure.col_order.len() {
        return Err(Error::Dimension(format!(
            "state has {} columns, erasure has {} interior qubits",
            state.cols(),
            erasure.col_order.len()
        )));
    }
    let local = state.solve()?;
    Ok(BitVec::from_ones(
        n_qubits,
        local.iter_ones().map(|k| erasure.col_order[k]),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    pub correction: BitVec,
    pub iterations: usize,
    pub counters: OpCounters,
    /// `H · correction = σ` on the whole code.
    pub valid: bool,
}

/// Decodes `syndrome` against `h`.
///
/// Fails with [`Error::NonTermination`] after more growth steps than there
/// are vertices in the Tanner graph, which only happens when `syndrome` is
/// not in the column space of `h`.
pub fn decode(h: &BitMatrix, tanner: &TannerGraph, syndrome: &BitVec, backend: Backend) -> Result<DecodeResult> {
    if syndrome.len() != h.rows() {
        return Err(Error::Dimension(format!(
            "syndrome has length {}, matrix has {} rows",
            syndrome.len(),
            h.rows()
        )));
    }
    if tanner.n_checks() != h.rows() || tanner.n_qubits() != h.cols() {
        return Err(Error::Dimension(
            "Tanner graph does not match the parity-check matrix".into(),
        ));
    }
    let n = h.cols();
    if syndrome.is_zero() {
        return Ok(DecodeResult {
            correction: BitVec::zeros(n),
            iterations: 0,
            counters: OpCounters::default(),
            valid: true,
        });
    }

    let limit = h.rows() + n;
    let mut erasure = Erasure::from_syndrome(syndrome, n);
    let mut counters = OpCounters::default();
    let mut iterations = 0;

    let mut online = match backend {
        Backend::Online => {
            let (hp, sp) = reduced_system(&erasure, h, syndrome);
            Some(lup_decompose(&hp, Some(&sp))?)
        }
        Backend::Offline => None,
    };

    let state = loop {
        iterations += 1;
        if iterations > limit {
            return Err(Error::NonTermination { iterations: limit });
        }
        let old_rows = erasure.row_order.len();
        let old_cols = erasure.col_order.len();
        let delta = erasure.grow(tanner);

        match online.as_mut() {
            None => {
                let (hp, sp) = reduced_system(&erasure, h, syndrome);
                let state = lup_decompose(&hp, Some(&sp))?;
                counters += state.counters();
                if state.is_consistent()? {
                    break state;
                }
            }
            Some(state) => {
                if !delta.new_checks.is_empty() || !delta.new_interior.is_empty() {
                    state.online_update(&growth_block(&erasure, h, syndrome, old_rows, old_cols))?;
                }
                if state.is_consistent()? {
                    break online.take().expect("online state present");
                }
            }
        }
    };
    if let Backend::Online = backend {
        counters = state.counters();
    }

    let correction = extract_correction(&state, &erasure, n)?;
    let valid = h.mul_vec(&correction)? == *syndrome;
    Ok(DecodeResult {
        correction,
        iterations,
        counters,
        valid,
    })
}

fn growth_block(erasure: &Erasure, h: &BitMatrix, syndrome: &BitVec, old_rows: usize, old_cols: usize) -> GrowthBlock {
    let (rows_old, rows_new) = erasure.row_order.split_at(old_rows);
    let (cols_old, cols_new) = erasure.col_order.split_at(old_cols);
    GrowthBlock {
        old_rows_new_cols: h.select(rows_old, cols_new),
        new_rows_old_cols: h.select(rows_new, cols_old),
        new_rows_new_cols: h.select(rows_new, cols_new),
        aug: Some(syndrome.select(rows_new)),
    }
}
