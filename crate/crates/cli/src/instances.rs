//! Shared plumbing: turning parameters into streams and running algorithms.

use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use geostream::geometry::{Coord, GeomObject, Interval, ObjectKind, UnitRect};
use geostream::hardness::{
    clique_segments_from_disjointness, clique_unit_intervals_from_disjointness, gen_chain, gen_disjointness,
    interval_representation, segments_from_disjointness, two_intervals_from_chain, ChainInstance, DisjInstance,
};
use geostream::interval_clique::IntervalClique;
use geostream::interval_selection::IntervalSelector;
use geostream::rect_selection::RectSelector;
use geostream::streamkit::{run_player_partitioned, run_stream, ObjectStream, StreamAlgorithm, StreamStats};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    Segments,
    CliqueSegments,
    UnitIntervals,
    IntervalRep,
    TwoIntervals,
    RandomIntervals,
    RandomRects,
}

/// Which instance family a construction draws from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Disjointness,
    Chain,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Alpha,
    Omega,
}

impl Construction {
    pub fn family(self) -> Family {
        match self {
            Construction::Segments
            | Construction::CliqueSegments
            | Construction::UnitIntervals
            | Construction::IntervalRep => Family::Disjointness,
            Construction::TwoIntervals => Family::Chain,
            Construction::RandomIntervals | Construction::RandomRects => Family::Random,
        }
    }

    pub fn kind(self) -> ObjectKind {
        match self {
            Construction::Segments | Construction::CliqueSegments => ObjectKind::Segment,
            Construction::UnitIntervals | Construction::IntervalRep | Construction::RandomIntervals => {
                ObjectKind::Interval
            }
            Construction::TwoIntervals => ObjectKind::TwoInterval,
            Construction::RandomRects => ObjectKind::UnitRect,
        }
    }

    /// The quantity the construction's promise is about.
    pub fn metric(self) -> Metric {
        match self {
            Construction::CliqueSegments | Construction::UnitIntervals => Metric::Omega,
            _ => Metric::Alpha,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Construction::Segments => "segments",
            Construction::CliqueSegments => "clique-segments",
            Construction::UnitIntervals => "unit-intervals",
            Construction::IntervalRep => "interval-rep",
            Construction::TwoIntervals => "two-intervals",
            Construction::RandomIntervals => "random-intervals",
            Construction::RandomRects => "random-rects",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    IntervalSelect,
    RectSelect,
    Clique,
}

impl Algorithm {
    pub fn kind(self) -> ObjectKind {
        match self {
            Algorithm::IntervalSelect | Algorithm::Clique => ObjectKind::Interval,
            Algorithm::RectSelect => ObjectKind::UnitRect,
        }
    }

    pub fn metric(self) -> Metric {
        match self {
            Algorithm::Clique => Metric::Omega,
            _ => Metric::Alpha,
        }
    }

    pub fn default_passes(self) -> u32 {
        match self {
            Algorithm::Clique => 2,
            _ => 1,
        }
    }
}

/// Generator parameters; which fields are needed depends on the family.
#[derive(Clone, Debug, Default)]
pub struct Params {
    pub n: Option<usize>,
    pub t: Option<usize>,
    pub big_n: Option<usize>,
    pub bit: Option<bool>,
    pub seed: u64,
    pub universe: Option<u64>,
}

fn need<T: Copy>(v: Option<T>, flag: &str, what: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("{what} needs --{flag}"))
}

pub fn disjointness_instance(p: &Params) -> Result<DisjInstance> {
    let what = "a disjointness instance";
    let inst = gen_disjointness(need(p.n, "n", what)?, need(p.t, "t", what)?, need(p.bit, "answer", what)?, p.seed)?;
    Ok(inst)
}

pub fn chain_instance(p: &Params) -> Result<ChainInstance> {
    let what = "a chain instance";
    Ok(gen_chain(need(p.big_n, "N", what)?, need(p.t, "t", what)?, need(p.bit, "z", what)?, p.seed)?)
}

/// Checks the parameters a construction needs without generating anything.
pub fn check_params(c: Construction, p: &Params) -> Result<()> {
    match c.family() {
        Family::Disjointness => {
            let (n, t) = (need(p.n, "n", c.name())?, need(p.t, "t", c.name())?);
            if t < 2 || n == 0 || !n.is_multiple_of(2 * t) {
                bail!("{}: n = {n} must be a positive multiple of 2t with t = {t} ≥ 2", c.name());
            }
        }
        Family::Chain => {
            let (big_n, t) = (need(p.big_n, "N", c.name())?, need(p.t, "t", c.name())?);
            if t < 2 || big_n == 0 {
                bail!("{}: needs N ≥ 1 and t ≥ 2, got N = {big_n}, t = {t}", c.name());
            }
        }
        Family::Random => {
            need(p.n, "n", c.name())?;
            if p.universe == Some(0) {
                bail!("{}: universe must be positive", c.name());
            }
        }
    }
    Ok(())
}

pub fn disjointness_stream(c: Construction, inst: &DisjInstance) -> Result<ObjectStream> {
    Ok(match c {
        Construction::Segments => segments_from_disjointness(inst),
        Construction::CliqueSegments => clique_segments_from_disjointness(inst),
        Construction::UnitIntervals => clique_unit_intervals_from_disjointness(inst),
        Construction::IntervalRep => interval_representation(inst)?,
        other => bail!("{} is not built from a disjointness instance", other.name()),
    })
}

/// Intervals with integer endpoints in `1..=universe` (default `2n`).
pub fn random_intervals(n: usize, universe: Option<u64>, seed: u64) -> ObjectStream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = universe.unwrap_or(2 * n as u64).max(1);
    let objects = (0..n)
        .map(|_| {
            let a = rng.gen_range(1..=u);
            let b = rng.gen_range(1..=u);
            GeomObject::from(Interval::closed(a.min(b), a.max(b)))
        })
        .collect();
    ObjectStream::new(objects)
}

/// Unit-height rectangles with integer x in `0..=40` and rational bottom in `[-3, 3]`.
pub fn random_rects(n: usize, seed: u64) -> ObjectStream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let objects = (0..n)
        .map(|_| {
            let lo: i64 = rng.gen_range(0..=40);
            let hi = (lo + rng.gen_range(0..=8)).min(40);
            let d: i64 = rng.gen_range(1..=6);
            let y = Coord::ratio(rng.gen_range(-3 * d..=3 * d), d).expect("positive denominator");
            GeomObject::from(UnitRect::new(Interval::closed(lo, hi), y))
        })
        .collect();
    ObjectStream::new(objects)
}

pub fn build_stream(c: Construction, p: &Params) -> Result<ObjectStream> {
    check_params(c, p)?;
    match c.family() {
        Family::Disjointness => disjointness_stream(c, &disjointness_instance(p)?),
        Family::Chain => Ok(two_intervals_from_chain(&chain_instance(p)?)),
        Family::Random => {
            let n = need(p.n, "n", c.name())?;
            Ok(match c {
                Construction::RandomIntervals => random_intervals(n, p.universe, p.seed),
                _ => random_rects(n, p.seed),
            })
        }
    }
}

/// Largest integer endpoint of an interval stream, the default clique universe.
pub fn max_endpoint(stream: &ObjectStream) -> Result<u64> {
    let mut max = 1u64;
    for (pos, obj) in stream.objects().iter().enumerate() {
        let i = obj.as_interval().ok_or_else(|| anyhow!("object {pos} is a {}, not an interval", obj.kind()))?;
        let hi = i.hi().to_integer().and_then(|v| u64::try_from(v).ok());
        max = max.max(hi.ok_or_else(|| anyhow!("object {pos} has endpoint {} outside 1, 2, ...", i.hi()))?);
    }
    Ok(max)
}

pub struct AlgRun {
    pub value: usize,
    pub output: Value,
    pub stats: StreamStats,
    pub runtime_ms: f64,
}

fn drive<A>(alg: &mut A, stream: &ObjectStream, passes: u32) -> Result<(A::Output, StreamStats, f64)>
where
    A: StreamAlgorithm,
{
    let start = Instant::now();
    let (out, stats) = if stream.players().is_some() && passes == 1 {
        run_player_partitioned(alg, stream)?
    } else {
        run_stream(alg, stream, passes)?
    };
    Ok((out, stats, start.elapsed().as_secs_f64() * 1e3))
}

pub fn run_algorithm(alg: Algorithm, stream: &ObjectStream, passes: u32, universe: Option<u64>) -> Result<AlgRun> {
    match alg {
        Algorithm::IntervalSelect => {
            let (out, stats, ms) = drive(&mut IntervalSelector::new(), stream, passes)?;
            Ok(AlgRun { value: out.len(), output: serde_json::to_value(&out)?, stats, runtime_ms: ms })
        }
        Algorithm::RectSelect => {
            let (out, stats, ms) = drive(&mut RectSelector::new(), stream, passes)?;
            Ok(AlgRun { value: out.len(), output: serde_json::to_value(&out)?, stats, runtime_ms: ms })
        }
        Algorithm::Clique => {
            let universe = match universe {
                Some(u) => u,
                None => max_endpoint(stream).context("cannot infer the clique universe")?,
            };
            let (out, stats, ms) = drive(&mut IntervalClique::new(universe), stream, passes)?;
            let output =
                json!({ "universe": universe, "omega": out.omega, "witness": out.witness, "clique": out.clique });
            Ok(AlgRun { value: out.omega as usize, output, stats, runtime_ms: ms })
        }
    }
}
