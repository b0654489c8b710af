//! Argument definitions and subcommand dispatch.

use std::fs::File;
use std::io::{self, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use geostream::hardness::{chain_gap_report, chain_layout, disjointness_gap_report, ChainInstance, DisjInstance};
use geostream::oracle::intersection_graph;
use geostream::streamkit::ObjectStream;
use serde::Serialize;
use serde_json::json;

use crate::experiment::{run_experiment, write_csv, ExperimentSpec};
use crate::instances::{
    build_stream, chain_instance, disjointness_instance, disjointness_stream, run_algorithm, Algorithm, Construction,
    Family, Params,
};

/// Streaming independent set and clique algorithms for geometric objects,
/// with lower-bound instance generators and an exact oracle.
#[derive(Debug, Parser)]
#[command(name = "geostream", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Seed {
    #[arg(long, env = "GEOSTREAM_SEED", default_value_t = 0)]
    pub seed: u64,
}

fn bit(s: &str) -> Result<bool, String> {
    match s {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(format!("expected 0 or 1, got {s:?}")),
    }
}

/// Parameters for generated instances.
#[derive(Debug, Args)]
pub struct GenParams {
    /// Columns of a disjointness instance, or stream length for random streams.
    #[arg(long)]
    pub n: Option<usize>,
    /// Players.
    #[arg(long)]
    pub t: Option<usize>,
    /// Bits per chain string.
    #[arg(long = "N", value_name = "N")]
    pub big_n: Option<usize>,
    /// Promised disjointness answer.
    #[arg(long, value_parser = bit, conflicts_with = "z")]
    pub answer: Option<bool>,
    /// Promised chain bit.
    #[arg(long, value_parser = bit)]
    pub z: Option<bool>,
    #[command(flatten)]
    pub seed: Seed,
    /// Endpoint range 1..=U for random intervals.
    #[arg(long)]
    pub universe: Option<u64>,
}

impl GenParams {
    fn params(&self) -> Params {
        Params {
            n: self.n,
            t: self.t,
            big_n: self.big_n,
            bit: self.answer.or(self.z),
            seed: self.seed.seed,
            universe: self.universe,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InstanceFamily {
    Disj,
    Chain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a multi-party set disjointness instance (JSON).
    GenDisj {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_parser = bit, action = ArgAction::Set)]
        answer: bool,
        #[command(flatten)]
        seed: Seed,
        #[command(flatten)]
        output: Output,
    },
    /// Generate a chained index instance (JSON).
    GenChain {
        #[arg(long = "N", value_name = "N")]
        big_n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_parser = bit, action = ArgAction::Set)]
        z: bool,
        #[command(flatten)]
        seed: Seed,
        #[command(flatten)]
        output: Output,
    },
    /// Build an object stream (JSONL) from an instance file or from parameters.
    Build {
        construction: Construction,
        /// Instance JSON written by gen-disj or gen-chain.
        #[arg(long)]
        instance: Option<PathBuf>,
        #[command(flatten)]
        params: GenParams,
        #[command(flatten)]
        output: Output,
    },
    /// Run a streaming algorithm over a JSONL stream ("-" reads stdin).
    Run {
        algorithm: Algorithm,
        #[arg(long)]
        input: PathBuf,
        /// Defaults to 2 for clique, 1 otherwise.
        #[arg(long)]
        passes: Option<u32>,
        /// Clique counter range 1..=U; defaults to the largest endpoint.
        #[arg(long)]
        universe: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Exact α and ω of a JSONL stream of at most 64 objects.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Check an instance's properties and its constructions' promised gaps.
    /// Exits with status 1 if any check fails.
    Verify {
        family: InstanceFamily,
        #[arg(long)]
        instance: Option<PathBuf>,
        #[command(flatten)]
        params: GenParams,
        #[command(flatten)]
        output: Output,
    },
    /// Run a parameter sweep described by a JSON spec.
    Experiment {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Leave the runtime column empty so reruns are byte-identical.
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        output: Output,
    },
}

fn open_input(path: &Path) -> Result<Box<dyn Read>> {
    if path == Path::new("-") {
        return Ok(Box::new(io::stdin()));
    }
    Ok(Box::new(File::open(path).with_context(|| format!("cannot open {}", path.display()))?))
}

fn read_stream(path: &Path) -> Result<ObjectStream> {
    ObjectStream::read_jsonl(BufReader::new(open_input(path)?)).with_context(|| format!("reading {}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_reader(BufReader::new(open_input(path)?)).with_context(|| format!("parsing {}", path.display()))
}

fn sink(out: &Output) -> Result<Box<dyn Write>> {
    Ok(match &out.out {
        Some(p) => {
            Box::new(io::BufWriter::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?))
        }
        None => Box::new(io::stdout().lock()),
    })
}

fn emit_json<T: Serialize>(value: &T, out: &Output) -> Result<()> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Runs a parsed command and returns the process exit status: 0 on success,
/// 1 when a verification check fails. Errors map to status 2.
pub fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::GenDisj { n, t, answer, seed, output } => {
            let p = Params { n: Some(n), t: Some(t), bit: Some(answer), seed: seed.seed, ..Params::default() };
            emit_json(&disjointness_instance(&p)?, &output)?;
        }
        Command::GenChain { big_n, t, z, seed, output } => {
            let p = Params { big_n: Some(big_n), t: Some(t), bit: Some(z), seed: seed.seed, ..Params::default() };
            emit_json(&chain_instance(&p)?, &output)?;
        }
        Command::Build { construction, instance, params, output } => {
            let stream = match instance {
                None => build_stream(construction, &params.params())?,
                Some(path) => match construction.family() {
                    Family::Disjointness => {
                        let inst: DisjInstance = read_json(&path)?;
                        ensure_valid(inst.validate().failures(), &path)?;
                        disjointness_stream(construction, &inst)?
                    }
                    Family::Chain => {
                        let inst: ChainInstance = read_json(&path)?;
                        ensure_valid(inst.validate().failures(), &path)?;
                        geostream::hardness::two_intervals_from_chain(&inst)
                    }
                    Family::Random => bail!("{} takes parameters, not an instance file", construction.name()),
                },
            };
            let mut w = sink(&output)?;
            stream.write_jsonl(&mut w)?;
            w.flush()?;
        }
        Command::Run { algorithm, input, passes, universe, output } => {
            let stream = read_stream(&input)?;
            let passes = passes.unwrap_or(algorithm.default_passes());
            let run = run_algorithm(algorithm, &stream, passes, universe)?;
            let report = json!({
                "algorithm": algorithm,
                "value": run.value,
                "result": run.output,
                "stats": run.stats,
            });
            emit_json(&report, &output)?;
        }
        Command::Oracle { input, output } => {
            let stream = read_stream(&input)?;
            let g = intersection_graph(stream.objects())?;
            let (mis, clique) = (g.max_independent_set(), g.max_clique());
            let report = json!({
                "objects": g.len(),
                "kind": g.kind(),
                "alpha": mis.size,
                "omega": clique.size,
                "alpha_witness": mis.witness,
                "omega_witness": clique.witness,
            });
            emit_json(&report, &output)?;
        }
        Command::Verify { family, instance, params, output } => {
            let report = match family {
                InstanceFamily::Disj => {
                    let inst = match instance {
                        Some(p) => read_json::<DisjInstance>(&p)?,
                        None => disjointness_instance(&params.params())?,
                    };
                    disjointness_gap_report(&inst)?
                }
                InstanceFamily::Chain => {
                    let inst = match instance {
                        Some(p) => read_json::<ChainInstance>(&p)?,
                        None => chain_instance(&params.params())?,
                    };
                    let mut report = json!({ "checks": chain_gap_report(&inst)? });
                    report["layout"] = serde_json::to_value(chain_layout(&inst))?;
                    let passed = report["checks"].as_object().unwrap().values().all(|v| v == true);
                    report["passed"] = json!(passed);
                    emit_json(&report, &output)?;
                    return Ok(if passed { 0 } else { 1 });
                }
            };
            emit_json(&json!({ "checks": report, "passed": report.passed() }), &output)?;
            return Ok(if report.passed() { 0 } else { 1 });
        }
        Command::Experiment { spec, format, no_timing, output } => {
            let spec: ExperimentSpec = read_json(&spec)?;
            let rows = run_experiment(&spec, !no_timing)?;
            let output = Output { out: output.out.or(spec.out.as_ref().map(PathBuf::from)) };
            match format {
                Format::Json => emit_json(&rows, &output)?,
                Format::Csv => write_csv(&rows, sink(&output)?)?,
            }
        }
    }
    Ok(0)
}

fn ensure_valid(failures: Vec<&str>, path: &Path) -> Result<()> {
    if !failures.is_empty() {
        bail!("{} violates instance properties: {}", path.display(), failures.join(", "));
    }
    Ok(())
}
