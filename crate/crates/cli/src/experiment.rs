//! Parameter sweeps: generate, run, compare with the oracle, report.

use std::io::Write;

use anyhow::{bail, Result};
use geostream::oracle::intersection_graph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::instances::{build_stream, check_params, run_algorithm, Algorithm, Construction, Family, Metric, Params};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridPoint {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub big_n: Option<usize>,
}

/// One sweep. Rows are the product grid × answers × seeds, in that nesting
/// order. `answers` holds the promised bit (`answer` or `z`) and defaults to
/// both values; random constructions ignore it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub construction: Construction,
    #[serde(default)]
    pub algorithm: Option<Algorithm>,
    #[serde(default)]
    pub grid: Vec<GridPoint>,
    #[serde(default)]
    pub answers: Option<Vec<u8>>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub passes: Option<u32>,
    #[serde(default)]
    pub universe: Option<u64>,
    /// Report path, used when none is given on the command line.
    #[serde(default)]
    pub out: Option<String>,
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub grid_index: usize,
    pub params: String,
    pub alg_value: Option<usize>,
    pub oracle_value: Option<usize>,
    pub ratio: Option<f64>,
    pub peak_state_bits: Option<u64>,
    pub handoff_bits_max: Option<u64>,
    pub runtime_ms: Option<f64>,
    pub error: Option<String>,
}

impl ExperimentSpec {
    fn answers(&self) -> Vec<Option<bool>> {
        if self.construction.family() == Family::Random {
            return vec![None];
        }
        match &self.answers {
            Some(a) => a.iter().map(|&b| Some(b == 1)).collect(),
            None => vec![Some(false), Some(true)],
        }
    }

    fn passes(&self) -> u32 {
        self.passes.unwrap_or_else(|| self.algorithm.map_or(1, Algorithm::default_passes))
    }

    fn metric(&self) -> Metric {
        self.algorithm.map_or(self.construction.metric(), Algorithm::metric)
    }

    /// Expands the sweep into per-row parameters, in row order, each tagged
    /// with the index of its grid point.
    pub fn points(&self) -> Vec<(usize, Params)> {
        let mut out = Vec::new();
        for (k, g) in self.grid.iter().enumerate() {
            for bit in self.answers() {
                for &seed in &self.seeds {
                    out.push((k, Params { n: g.n, t: g.t, big_n: g.big_n, bit, seed, universe: self.universe }));
                }
            }
        }
        out
    }

    /// Rejects specs that would fail before producing any data.
    pub fn validate(&self) -> Result<()> {
        if let Some(a) = &self.answers {
            if let Some(bad) = a.iter().find(|&&b| b > 1) {
                bail!("answers must be 0 or 1, got {bad}");
            }
        }
        if self.passes == Some(0) {
            bail!("passes must be at least 1");
        }
        if let Some(alg) = self.algorithm {
            if alg.kind() != self.construction.kind() {
                bail!(
                    "algorithm {alg:?} reads {} objects but {} produces {}",
                    alg.kind(),
                    self.construction.name(),
                    self.construction.kind()
                );
            }
        }
        for (k, g) in self.grid.iter().enumerate() {
            let probe = Params { n: g.n, t: g.t, big_n: g.big_n, bit: Some(false), seed: 0, universe: self.universe };
            check_params(self.construction, &probe).map_err(|e| e.context(format!("grid point {k}")))?;
        }
        Ok(())
    }
}

fn describe(spec: &ExperimentSpec, p: &Params) -> String {
    let mut parts = vec![format!("construction={}", spec.construction.name())];
    if let Some(a) = spec.algorithm {
        parts.push(format!("algorithm={}", serde_json::to_value(a).unwrap().as_str().unwrap()));
    }
    let metric = spec.metric();
    parts.push(format!("metric={}", if metric == Metric::Alpha { "alpha" } else { "omega" }));
    if let Some(n) = p.n {
        parts.push(format!("n={n}"));
    }
    if let Some(big_n) = p.big_n {
        parts.push(format!("N={big_n}"));
    }
    if let Some(t) = p.t {
        parts.push(format!("t={t}"));
    }
    if let Some(b) = p.bit {
        let name = if spec.construction.family() == Family::Chain { "z" } else { "answer" };
        parts.push(format!("{name}={}", b as u8));
    }
    parts.push(format!("seed={}", p.seed));
    parts.join(" ")
}

fn run_row(spec: &ExperimentSpec, index: usize, p: &Params, timing: bool) -> Row {
    let mut row = Row {
        grid_index: index,
        params: describe(spec, p),
        alg_value: None,
        oracle_value: None,
        ratio: None,
        peak_state_bits: None,
        handoff_bits_max: None,
        runtime_ms: None,
        error: None,
    };
    let stream = match build_stream(spec.construction, p) {
        Ok(s) => s,
        Err(e) => {
            row.error = Some(format!("generate: {e:#}"));
            return row;
        }
    };
    let mut errors = Vec::new();
    if let Some(alg) = spec.algorithm {
        match run_algorithm(alg, &stream, spec.passes(), spec.universe) {
            Ok(run) => {
                row.alg_value = Some(run.value);
                row.peak_state_bits = Some(run.stats.peak_state_bits);
                row.handoff_bits_max = run.stats.max_handoff_bits();
                row.runtime_ms = timing.then_some(run.runtime_ms);
            }
            Err(e) => errors.push(format!("algorithm: {e:#}")),
        }
    }
    match intersection_graph(stream.objects()) {
        Ok(g) => {
            row.oracle_value = Some(match spec.metric() {
                Metric::Alpha => g.independence_number(),
                Metric::Omega => g.clique_number(),
            })
        }
        Err(e) => errors.push(format!("oracle: {e}")),
    }
    if let (Some(a), Some(o)) = (row.alg_value, row.oracle_value) {
        row.ratio = Some(if a == 0 {
            if o == 0 {
                1.0
            } else {
                f64::INFINITY
            }
        } else {
            o as f64 / a as f64
        });
    }
    if !errors.is_empty() {
        row.error = Some(errors.join("; "));
    }
    row
}

/// Runs every row, in parallel, and returns them in row order. `timing`
/// controls whether the wall-clock column is filled.
pub fn run_experiment(spec: &ExperimentSpec, timing: bool) -> Result<Vec<Row>> {
    spec.validate()?;
    let points = spec.points();
    Ok(points.par_iter().map(|(k, p)| run_row(spec, *k, p, timing)).collect())
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record([
        "grid_index",
        "params",
        "alg_value",
        "oracle_value",
        "ratio",
        "peak_state_bits",
        "handoff_bits_max",
        "runtime_ms",
        "error",
    ])?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
