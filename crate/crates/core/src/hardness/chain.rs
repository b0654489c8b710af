//! Chained-index instances and their 2-interval realization.
//!
//! Party `i < t` owns an interval stack `L^i_1..L^i_N` whose start points and
//! end points both come in index order. The gap just before the start of
//! `L^i_j` is crossed by exactly `L^i_1..L^i_{j-1}`. Party `i+1` places its
//! whole stack in the gap before `L^i_{σ_i}`, so it meets every `L^i_j` with
//! `j < σ_i` and misses the rest. A mirrored copy built from the reversed
//! strings covers `j > σ_i`. Pairing the two copies gives 2-intervals where
//! party `i+1` meets `T^i_j` exactly when `j ≠ σ_i`. The parties' `T^i_{σ_i}`
//! are therefore independent when every indexed bit is 1, and the graph is
//! complete when every indexed bit is 0.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};

use super::{HardnessError, ValidationReport};
use crate::geometry::{Coord, GeomObject, Interval, TwoInterval};
use crate::streamkit::ObjectStream;

/// `strings[i][j]` is bit `x^{i+1}_{j+1}` and `indices[i]` is `σ_{i+1}` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainInstance {
    pub t: usize,
    #[serde(rename = "N")]
    pub n_bits: usize,
    pub strings: Vec<Vec<bool>>,
    pub indices: Vec<usize>,
    pub z: bool,
}

impl ChainInstance {
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let shape = self.t >= 2
            && self.n_bits >= 1
            && self.strings.len() == self.t - 1
            && self.indices.len() == self.t - 1
            && self.strings.iter().all(|s| s.len() == self.n_bits);
        r.record("shape", shape);
        if !shape {
            return r;
        }
        let in_range = self.indices.iter().all(|&s| (1..=self.n_bits).contains(&s));
        r.record("indices_in_range", in_range);
        r.record("promise", in_range && self.strings.iter().zip(&self.indices).all(|(x, &s)| x[s - 1] == self.z));
        r
    }
}

pub fn gen_chain(n_bits: usize, t: usize, z: bool, seed: u64) -> Result<ChainInstance, HardnessError> {
    if t < 2 {
        return Err(HardnessError::TooFewPlayers(t));
    }
    if n_bits == 0 {
        return Err(HardnessError::EmptyStrings);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut strings = Vec::with_capacity(t - 1);
    let mut indices = Vec::with_capacity(t - 1);
    for _ in 0..t - 1 {
        let mut x: Vec<bool> = (0..n_bits).map(|_| rng.gen()).collect();
        let sigma = rng.gen_range(1..=n_bits);
        x[sigma - 1] = z;
        strings.push(x);
        indices.push(sigma);
    }
    Ok(ChainInstance { t, n_bits, strings, indices, z })
}

/// Stack extents and placements. Index `k` of each vector is party `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainLayout {
    /// `S_t = 2`, `S_i = N (S_{i+1} + 2)`: coordinates spanned by party `i`'s
    /// stack together with everything nested inside it.
    #[serde(serialize_with = "decimal_list")]
    pub stack_lengths: Vec<BigInt>,
    /// First coordinate of each party's stack in the left copy.
    #[serde(serialize_with = "decimal_list")]
    pub placements: Vec<BigInt>,
    /// The same for the mirrored right copy, before `right_offset` is added.
    #[serde(serialize_with = "decimal_list")]
    pub right_placements: Vec<BigInt>,
    #[serde(serialize_with = "decimal")]
    pub right_offset: BigInt,
}

fn decimal<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn decimal_list<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(BigInt::to_string))
}

impl ChainLayout {
    /// Distance between consecutive start points of party `i`'s stack (1-based).
    fn step(&self, i: usize) -> BigInt {
        &self.stack_lengths[i] + 1
    }

    /// Party `i < t`, slot `j`: `[P - 1 + j w, P - 1 + N w + j]` with `w = S_{i+1} + 1`.
    fn stack_interval(&self, base: &BigInt, i: usize, j: usize, n: usize) -> (BigInt, BigInt) {
        let w = self.step(i);
        let origin = base - 1;
        (&origin + &w * j, origin + w * n + j)
    }

    /// The open gap before the start of slot `j` of party `i`, where `j = 1`
    /// uses the coordinate just before the stack.
    fn gap_before(&self, base: &BigInt, i: usize, j: usize) -> (BigInt, BigInt) {
        let w = self.step(i);
        let origin = base - 1;
        (&origin + &w * (j - 1), origin + w * j)
    }
}

pub fn chain_layout(inst: &ChainInstance) -> ChainLayout {
    let (t, n) = (inst.t, inst.n_bits);
    let mut stack_lengths = vec![BigInt::from(2); t];
    for i in (0..t - 1).rev() {
        stack_lengths[i] = (&stack_lengths[i + 1] + 2) * n;
    }
    let place = |sigma: &dyn Fn(usize) -> usize| {
        let mut p = vec![BigInt::from(1)];
        for i in 0..t - 1 {
            let next = &p[i] + (&stack_lengths[i + 1] + 1) * (sigma(i) - 1);
            p.push(next);
        }
        p
    };
    let placements = place(&|i| inst.indices[i]);
    let right_placements = place(&|i| n + 1 - inst.indices[i]);
    let right_offset = (&placements[0] + &stack_lengths[0]) * 2;
    ChainLayout { stack_lengths, placements, right_placements, right_offset }
}

fn coord_interval(lo: BigInt, hi: BigInt) -> Interval {
    Interval::closed(Coord::from(lo), Coord::from(hi))
}

/// Left and right member of the 2-interval for party `i`, slot `j` (1-based);
/// party `t` has the single slot 1.
pub fn chain_pair(inst: &ChainInstance, layout: &ChainLayout, i: usize, j: usize) -> (Interval, Interval) {
    let n = inst.n_bits;
    let (left, right) = if i == inst.t {
        let l = layout.placements[i - 1].clone();
        let r = &layout.right_offset + &layout.right_placements[i - 1];
        ((l.clone(), l + 1), (r.clone(), r + 1))
    } else {
        let l = layout.stack_interval(&layout.placements[i - 1], i, j, n);
        let (rlo, rhi) = layout.stack_interval(&layout.right_placements[i - 1], i, n + 1 - j, n);
        (l, (&layout.right_offset + rlo, &layout.right_offset + rhi))
    };
    (coord_interval(left.0, left.1), coord_interval(right.0, right.1))
}

/// Party `i` emits `T^i_j` for every 1-bit `j`; the last party emits one
/// 2-interval.
pub fn two_intervals_from_chain(inst: &ChainInstance) -> ObjectStream {
    let layout = chain_layout(inst);
    let mut chunks: Vec<Vec<GeomObject>> = Vec::with_capacity(inst.t);
    for (i, x) in inst.strings.iter().enumerate() {
        let chunk = (1..=inst.n_bits)
            .filter(|&j| x[j - 1])
            .map(|j| {
                let (l, r) = chain_pair(inst, &layout, i + 1, j);
                TwoInterval::new(l, r).expect("right copy lies beyond the left copy").into()
            })
            .collect();
        chunks.push(chunk);
    }
    let (l, r) = chain_pair(inst, &layout, inst.t, 1);
    chunks.push(vec![TwoInterval::new(l, r).expect("right copy lies beyond the left copy").into()]);
    ObjectStream::from_player_chunks(chunks)
}

/// Structural checks on the layout of an instance: stacks, nesting, separation
/// and coordinate size. All slots are checked, whether or not their bit is set.
pub fn chain_structure_report(inst: &ChainInstance) -> ValidationReport {
    let mut r = inst.validate();
    if !r.passed() {
        return r;
    }
    let layout = chain_layout(inst);
    let (t, n) = (inst.t, inst.n_bits);
    let slots = |i: usize| if i == t { 1 } else { n };
    let pairs: Vec<Vec<(Interval, Interval)>> =
        (1..=t).map(|i| (1..=slots(i)).map(|j| chain_pair(inst, &layout, i, j)).collect()).collect();

    let is_stack = |v: &[Interval]| {
        v.windows(2).all(|w| w[0].lo() < w[1].lo() && w[0].hi() < w[1].hi())
            && v.iter().map(Interval::lo).max() < v.iter().map(Interval::hi).min()
    };
    r.record(
        "interval_stacks",
        pairs.iter().all(|p| {
            let lefts: Vec<Interval> = p.iter().map(|x| x.0.clone()).collect();
            let rights: Vec<Interval> = p.iter().map(|x| x.1.clone()).rev().collect();
            is_stack(&lefts) && is_stack(&rights)
        }),
    );

    let mut nested = true;
    for (i, party) in pairs.iter().enumerate().take(t).skip(1) {
        let sigma = inst.indices[i - 1];
        let strictly_inside =
            |gap: (BigInt, BigInt), iv: &Interval| Coord::from(gap.0) < *iv.lo() && *iv.hi() < Coord::from(gap.1);
        let left_gap = layout.gap_before(&layout.placements[i - 1], i, sigma);
        let (rg0, rg1) = layout.gap_before(&layout.right_placements[i - 1], i, n + 1 - sigma);
        let right_gap = (&layout.right_offset + rg0, &layout.right_offset + rg1);
        for (l, rt) in party {
            nested &= strictly_inside(left_gap.clone(), l) && strictly_inside(right_gap.clone(), rt);
        }
    }
    r.record("nesting", nested);

    let max_left = pairs.iter().flatten().map(|p| p.0.hi().clone()).max();
    let min_right = pairs.iter().flatten().map(|p| p.1.lo().clone()).min();
    r.record("separated", max_left < min_right);

    let bits = max_coordinate_bits(inst);
    r.record("coordinate_bits", (bits as f64) <= 4.0 * t as f64 * ((n + 2) as f64).log2());
    r
}

/// Bit length of the largest coordinate any slot of the layout uses.
pub fn max_coordinate_bits(inst: &ChainInstance) -> u64 {
    let layout = chain_layout(inst);
    (1..=inst.t)
        .flat_map(|i| {
            let slots = if i == inst.t { 1 } else { inst.n_bits };
            (1..=slots).map(move |j| (i, j))
        })
        .map(|(i, j)| chain_pair(inst, &layout, i, j).1.hi().numer().bits())
        .max()
        .unwrap_or(0)
}
