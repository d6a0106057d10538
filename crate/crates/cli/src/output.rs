//! File formats written by the CLI.

use std::io::Write;

use anyhow::Result;
use onlinege::gf2::OpCounters;
use onlinege::sim::{Aggregate, ShotRecord};
use serde::Serialize;

/// One row per record with columns
/// `code,size,n_qubits,p,seed,shot,backend,bit_xors,row_xors,iterations,syndrome_weight,valid`.
pub fn write_shots_csv<W: Write>(out: W, records: &[ShotRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn shots_csv_string(records: &[ShotRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_shots_csv(&mut buf, records)?;
    Ok(String::from_utf8(buf)?)
}

pub fn aggregate_json(aggregates: &[Aggregate]) -> Result<String> {
    Ok(serde_json::to_string_pretty(aggregates)? + "\n")
}

#[derive(Serialize)]
pub struct DecodeReport {
    pub correction: String,
    pub iterations: usize,
    pub counters: OpCounters,
    pub valid: bool,
    pub backend: String,
}

#[derive(Serialize)]
pub struct GenReport {
    pub code: String,
    pub size: String,
    pub n_qubits: usize,
    pub hx_weight: usize,
    pub hz_weight: usize,
    pub hx_path: String,
    pub hz_path: String,
}
