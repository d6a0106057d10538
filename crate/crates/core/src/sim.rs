//! Seeded Monte Carlo shots under i.i.d. bit-flip noise.
//!
//! Every shot draws its error from a ChaCha stream keyed by
//! `(seed, shot_index)`, so results do not depend on how shots are scheduled
//! across threads. The X-check sector (`hx`) is decoded; errors are sampled
//! on all of its columns.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::codes::{tanner_graph, CodeSpec, CssCode, TannerGraph};
use crate::decoder::{decode, Backend};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub code: CodeSpec,
    pub p: f64,
    pub shots: u64,
    pub seed: u64,
    pub backends: Vec<Backend>,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::Parameter(format!("p must lie in [0, 1], got {}", self.p)));
        }
        if self.shots == 0 {
            return Err(Error::Parameter("shots must be at least 1".into()));
        }
        if self.backends.is_empty() {
            return Err(Error::Parameter("at least one backend is required".into()));
        }
        Ok(())
    }
}

/// One decode of one shot by one backend. Field order is the CSV column
/// order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShotRecord {
    #[serde(skip)]
    pub spec: CodeSpec,
    pub code: &'static str,
    pub size: String,
    pub n_qubits: usize,
    pub p: f64,
    pub seed: u64,
    pub shot: u64,
    pub backend: Backend,
    pub bit_xors: u64,
    pub row_xors: u64,
    pub iterations: usize,
    pub syndrome_weight: usize,
    pub valid: bool,
}

/// Deterministic per-shot random stream.
pub fn shot_rng(seed: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot);
    rng
}

/// Each of the `n` bits is set independently with probability `p`.
pub fn sample_error<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> BitVec {
    let mut e = BitVec::zeros(n);
    for i in 0..n {
        if rng.random_bool(p) {
            e.set(i, true);
        }
    }
    e
}

/// `H · e` over GF(2).
pub fn syndrome(h: &BitMatrix, e: &BitVec) -> Result<BitVec> {
    h.mul_vec(e)
}

/// A configured experiment with its code and Tanner graph built once.
#[derive(Clone, Debug)]
pub struct Simulation {
    config: SimConfig,
    code: CssCode,
    tanner: TannerGraph,
}

impl Simulation {
    pub fn new(config: SimConfig) -> Result<Self> {
        config.validate()?;
        let code = config.code.build()?;
        let tanner = tanner_graph(&code.hx);
        Ok(Self { config, code, tanner })
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    pub fn code(&self) -> &CssCode {
        &self.code
    }

    /// Runs shot `shot` through every configured backend on the same error.
    pub fn run_shot(&self, shot: u64) -> Result<Vec<ShotRecord>> {
        let cfg = &self.config;
        let h = &self.code.hx;
        let mut rng = shot_rng(cfg.seed, shot);
        let error = sample_error(self.code.n_qubits, cfg.p, &mut rng);
        let sigma = syndrome(h, &error)?;
        let wrap = |e: Error| Error::Shot {
            seed: cfg.seed,
            shot,
            source: Box::new(e),
        };

        cfg.backends
            .iter()
            .map(|&backend| {
                let result = decode(h, &self.tanner, &sigma, backend).map_err(wrap)?;
                if !result.valid {
                    return Err(Error::InvalidCorrection { seed: cfg.seed, shot });
                }
                Ok(ShotRecord {
                    spec: cfg.code,
                    code: cfg.code.name(),
                    size: cfg.code.size_label(),
                    n_qubits: self.code.n_qubits,
                    p: cfg.p,
                    seed: cfg.seed,
                    shot,
                    backend,
                    bit_xors: result.counters.bit_xors,
                    row_xors: result.counters.row_xors,
                    iterations: result.iterations,
                    syndrome_weight: sigma.count_ones(),
                    valid: result.valid,
                })
            })
            .collect()
    }

    /// All shots, one after another.
    pub fn run_sequential(&self) -> Result<Vec<ShotRecord>> {
        let per_shot: Vec<_> = (0..self.config.shots).map(|s| self.run_shot(s)).collect();
        finish(per_shot)
    }

    /// All shots across the rayon pool.
    #[cfg(feature = "parallel")]
    pub fn run_parallel(&self) -> Result<Vec<ShotRecord>> {
        use rayon::prelude::*;
        let per_shot: Vec<_> = (0..self.config.shots)
            .into_par_iter()
            .map(|s| self.run_shot(s))
            .collect();
        finish(per_shot)
    }

    /// All shots, in parallel when the `parallel` feature is on. Output is
    /// identical either way.
    pub fn run(&self) -> Result<Vec<ShotRecord>> {
        #[cfg(feature = "parallel")]
        {
            self.run_parallel()
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.run_sequential()
        }
    }
}

// Reports the lowest failing shot so errors are schedule-independent.
fn finish(per_shot: Vec<Result<Vec<ShotRecord>>>) -> Result<Vec<ShotRecord>> {
    let mut records = Vec::new();
    for r in per_shot {
        records.extend(r?);
    }
    sort_canonical(&mut records);
    Ok(records)
}

/// Sorts by code, size, backend, shot.
pub fn sort_canonical(records: &mut [ShotRecord]) {
    records.sort_by_key(|r| (r.spec, r.backend, r.shot));
}

/// Summary over all shots of one `(code, size, backend)` group.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub code: &'static str,
    pub size: String,
    pub backend: Backend,
    pub n_qubits: usize,
    pub shots: u64,
    pub mean_bit_xors: f64,
    pub max_bit_xors: u64,
    pub mean_row_xors: f64,
    pub max_row_xors: u64,
    pub mean_iterations: f64,
    pub max_iterations: usize,
}

#[derive(Default)]
struct Acc {
    n_qubits: usize,
    shots: u64,
    sum_bit: u128,
    max_bit: u64,
    sum_row: u128,
    max_row: u64,
    sum_iter: u128,
    max_iter: usize,
}

/// Means and maxima per group, sorted by code, size, backend. Zero-syndrome
/// shots are included. Sums are exact integers, so the result does not
/// depend on record order.
pub fn aggregate(records: &[ShotRecord]) -> Vec<Aggregate> {
    let mut groups: BTreeMap<(CodeSpec, Backend), Acc> = BTreeMap::new();
    for r in records {
        let a = groups.entry((r.spec, r.backend)).or_default();
        a.n_qubits = r.n_qubits;
        a.shots += 1;
        a.sum_bit += u128::from(r.bit_xors);
        a.max_bit = a.max_bit.max(r.bit_xors);
        a.sum_row += u128::from(r.row_xors);
        a.max_row = a.max_row.max(r.row_xors);
        a.sum_iter += r.iterations as u128;
        a.max_iter = a.max_iter.max(r.iterations);
    }
    groups
        .into_iter()
        .map(|((spec, backend), a)| {
            let mean = |s: u128| s as f64 / a.shots as f64;
            Aggregate {
                code: spec.name(),
                size: spec.size_label(),
                backend,
                n_qubits: a.n_qubits,
                shots: a.shots,
                mean_bit_xors: mean(a.sum_bit),
                max_bit_xors: a.max_bit,
                mean_row_xors: mean(a.sum_row),
                max_row_xors: a.max_row,
                mean_iterations: mean(a.sum_iter),
                max_iterations: a.max_iter,
            }
        })
        .collect()
}
