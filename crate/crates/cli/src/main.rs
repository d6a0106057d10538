//! `onlinege`: generate codes, decode a syndrome, run Monte Carlo benchmarks.
//!
//! Exit codes: 0 success, 2 usage or parameter error, 3 decode failure.

mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use onlinege::codes::{tanner_graph, total_weight, CodeSpec};
use onlinege::decoder::{decode, Backend};
use onlinege::gf2::{BitMatrix, BitVec};
use onlinege::sim::{aggregate, sort_canonical, SimConfig, Simulation};

const EXIT_USAGE: u8 = 2;
const EXIT_DECODE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "onlinege",
    version,
    about = "Online GF(2) elimination for union-find decoding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write hx/hz of a code in coordinate text format.
    Gen(GenArgs),
    /// Decode one syndrome against a parity-check matrix file.
    Decode(DecodeArgs),
    /// Run seeded shots over one or more code sizes.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Toric2d,
    Toric3d,
    Color666,
}

impl Family {
    fn as_str(self) -> &'static str {
        match self {
            Family::Toric2d => "toric2d",
            Family::Toric3d => "toric3d",
            Family::Color666 => "color666",
        }
    }
}

#[derive(Args, Debug)]
struct CodeArgs {
    #[arg(long, value_enum)]
    code: Family,
    /// Lattice size for toric codes (comma-separated list for bench).
    #[arg(long = "L", value_delimiter = ',')]
    l: Vec<usize>,
    /// Colour-code faces along x.
    #[arg(long = "Lx")]
    lx: Option<usize>,
    /// Colour-code faces along y.
    #[arg(long = "Ly")]
    ly: Option<usize>,
    /// Colour-code qubit count, looked up in the size table (list for bench).
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
}

impl CodeArgs {
    fn specs(&self) -> Result<Vec<CodeSpec>> {
        match self.code {
            Family::Toric2d | Family::Toric3d => {
                if self.lx.is_some() || self.ly.is_some() || !self.n.is_empty() {
                    bail!("--Lx/--Ly/--n only apply to the colour code; use --L");
                }
                if self.l.is_empty() {
                    bail!("--L is required for {}", self.code.as_str());
                }
                Ok(self
                    .l
                    .iter()
                    .map(|&l| match self.code {
                        Family::Toric2d => CodeSpec::Toric2d { l },
                        _ => CodeSpec::Toric3d { l },
                    })
                    .collect())
            }
            Family::Color666 => {
                if !self.l.is_empty() {
                    bail!("the colour code takes --Lx/--Ly or --n, not --L");
                }
                match (self.lx, self.ly, self.n.is_empty()) {
                    (Some(lx), Some(ly), true) => Ok(vec![CodeSpec::Color666 { lx, ly }]),
                    (None, None, false) => Ok(self
                        .n
                        .iter()
                        .map(|&n| CodeSpec::color_for_n(n))
                        .collect::<onlinege::Result<_>>()?),
                    _ => bail!("give either both --Lx and --Ly, or --n"),
                }
            }
        }
    }
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Output directory.
    #[arg(long, env = "ONLINEGE_OUT_DIR", default_value = ".")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct DecodeArgs {
    /// Parity-check matrix in coordinate text format.
    #[arg(long)]
    matrix: PathBuf,
    /// Syndrome as a 0/1 string.
    #[arg(long)]
    syndrome: String,
    #[arg(long, default_value = "online")]
    backend: Backend,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Use the full default size sweep for the family instead of --L/--n.
    #[arg(long)]
    paper_grid: bool,
    #[arg(long, default_value_t = 0.05)]
    p: f64,
    #[arg(long, default_value_t = 60)]
    shots: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "offline,online")]
    backends: Vec<Backend>,
    /// Directory receiving shots.csv and aggregate.json.
    #[arg(long, env = "ONLINEGE_OUT_DIR", default_value = ".")]
    out: PathBuf,
    /// What to print on stdout: the shot CSV or the aggregate JSON.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

/// An error tagged with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn usage(error: anyhow::Error) -> Failure {
    Failure {
        code: EXIT_USAGE,
        error,
    }
}

fn classify(error: onlinege::Error) -> Failure {
    use onlinege::Error as E;
    let code = match &error {
        E::NonTermination { .. } | E::Inconsistent | E::Shot { .. } | E::InvalidCorrection { .. } => EXIT_DECODE,
        _ => EXIT_USAGE,
    };
    Failure {
        code,
        error: error.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(&args),
        Command::Decode(args) => cmd_decode(&args),
        Command::Bench(args) => cmd_bench(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)
            .with_context(|| format!("creating {}", dir.display()))
            .map_err(usage)?;
    }
    fs::write(path, contents)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(usage)
}

fn cmd_gen(args: &GenArgs) -> Result<(), Failure> {
    let specs = args.code.specs().map_err(usage)?;
    let [spec] = specs[..] else {
        return Err(usage(anyhow!("gen takes exactly one code size")));
    };
    let code = spec.build().map_err(classify)?;
    let stem = format!("{}_{}", code.name(), spec.size_label());
    let hx_path = args.out.join(format!("{stem}_hx.txt"));
    let hz_path = args.out.join(format!("{stem}_hz.txt"));
    write_file(&hx_path, &code.hx.to_coord_string())?;
    write_file(&hz_path, &code.hz.to_coord_string())?;
    let report = output::GenReport {
        code: code.name().into(),
        size: spec.size_label(),
        n_qubits: code.n_qubits,
        hx_weight: total_weight(&code.hx),
        hz_weight: total_weight(&code.hz),
        hx_path: hx_path.display().to_string(),
        hz_path: hz_path.display().to_string(),
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&report).map_err(|e| usage(e.into()))?
    );
    Ok(())
}

fn cmd_decode(args: &DecodeArgs) -> Result<(), Failure> {
    let text = fs::read_to_string(&args.matrix)
        .with_context(|| format!("reading {}", args.matrix.display()))
        .map_err(usage)?;
    let h = BitMatrix::from_coord_str(&text).map_err(classify)?;
    let sigma: BitVec = args.syndrome.parse().map_err(classify)?;
    if sigma.len() != h.rows() {
        return Err(usage(anyhow!(
            "syndrome has length {}, matrix has {} rows",
            sigma.len(),
            h.rows()
        )));
    }
    let tanner = tanner_graph(&h);
    let result = decode(&h, &tanner, &sigma, args.backend).map_err(classify)?;
    let report = output::DecodeReport {
        correction: result.correction.to_string(),
        iterations: result.iterations,
        counters: result.counters,
        valid: result.valid,
        backend: args.backend.to_string(),
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&report).map_err(|e| usage(e.into()))?
    );
    if !result.valid {
        return Err(Failure {
            code: EXIT_DECODE,
            error: anyhow!("correction does not reproduce the syndrome"),
        });
    }
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> Result<(), Failure> {
    let specs = if args.paper_grid {
        CodeSpec::default_grid(args.code.code.as_str()).map_err(classify)?
    } else {
        args.code.specs().map_err(usage)?
    };
    let mut records = Vec::new();
    for spec in specs {
        let sim = Simulation::new(SimConfig {
            code: spec,
            p: args.p,
            shots: args.shots,
            seed: args.seed,
            backends: args.backends.clone(),
        })
        .map_err(classify)?;
        records.extend(sim.run().map_err(classify)?);
    }
    sort_canonical(&mut records);

    let csv = output::shots_csv_string(&records).map_err(usage)?;
    let json = output::aggregate_json(&aggregate(&records)).map_err(usage)?;
    write_file(&args.out.join("shots.csv"), &csv)?;
    write_file(&args.out.join("aggregate.json"), &json)?;
    match args.format {
        Format::Csv => print!("{csv}"),
        Format::Json => print!("{json}"),
    }
    Ok(())
}
