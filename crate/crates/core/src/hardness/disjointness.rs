//! Multi-party set disjointness instances and the object streams built from
//! them: crossing segments for independent sets, mirrored segments and short
//! intervals for cliques, and an interval realization of the segment graph.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{HardnessError, ValidationReport};
use crate::geometry::{Coord, GeomObject, Interval, PermSegment};
use crate::streamkit::ObjectStream;

/// `rows[i][j]` is bit `x^{i+1}_{j+1}`: player `i + 1`'s bit for column `j + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjInstance {
    pub n: usize,
    pub t: usize,
    pub rows: Vec<Vec<bool>>,
    pub answer: bool,
}

impl DisjInstance {
    /// Number of players holding a 1 in column `j` (1-based).
    pub fn column_weight(&self, j: usize) -> usize {
        self.rows.iter().filter(|r| r[j - 1]).count()
    }

    /// The column where every player has a 1, if any (1-based).
    pub fn full_column(&self) -> Option<usize> {
        (1..=self.n).find(|&j| self.column_weight(j) == self.t)
    }

    /// `(player, column)` pairs of all 1-bits in stream order: player by
    /// player, columns ascending. Every construction emits one object per pair
    /// in this order.
    pub fn ones(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            out.extend(row.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| (i + 1, j + 1)));
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let shape = self.t >= 2 && self.rows.len() == self.t && self.rows.iter().all(|row| row.len() == self.n);
        r.record("shape", shape);
        if !shape {
            return r;
        }
        let per_row = self.n.is_multiple_of(2 * self.t).then(|| self.n / (2 * self.t));
        r.record(
            "row_weight",
            per_row.is_some_and(|k| self.rows.iter().all(|row| row.iter().filter(|&&b| b).count() == k)),
        );
        let weights: Vec<usize> = (1..=self.n).map(|j| self.column_weight(j)).collect();
        r.record("column_weight", weights.iter().all(|&w| w <= 1 || w == self.t));
        let full = weights.iter().filter(|&&w| w == self.t).count();
        r.record("single_full_column", full <= 1);
        r.record("answer", (full > 0) == self.answer);
        r
    }
}

/// Seeded instance with exactly `n / 2t` ones per row. With `answer` one
/// column is shared by all players; every other 1 sits in its own column.
pub fn gen_disjointness(n: usize, t: usize, answer: bool, seed: u64) -> Result<DisjInstance, HardnessError> {
    if t < 2 {
        return Err(HardnessError::TooFewPlayers(t));
    }
    if n == 0 || !n.is_multiple_of(2 * t) {
        return Err(HardnessError::Divisibility { n, t });
    }
    let k = n / (2 * t);
    let mut columns: Vec<usize> = (0..n).collect();
    columns.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let mut rows = vec![vec![false; n]; t];
    let mut free = columns.iter().copied();
    if answer {
        let shared = free.next().expect("n > 0");
        for row in &mut rows {
            row[shared] = true;
        }
    }
    let own = if answer { k - 1 } else { k };
    for row in &mut rows {
        for c in free.by_ref().take(own) {
            row[c] = true;
        }
    }
    Ok(DisjInstance { n, t, rows, answer })
}

fn player_chunks(inst: &DisjInstance, mut make: impl FnMut(usize, usize) -> GeomObject) -> ObjectStream {
    let mut chunks = vec![Vec::new(); inst.t];
    for (i, j) in inst.ones() {
        chunks[i - 1].push(make(i, j));
    }
    ObjectStream::from_player_chunks(chunks)
}

fn int(v: usize) -> Coord {
    Coord::from(v as u64)
}

/// Group `j` holds slots `(j-1)t + 1 ..= jt` on the top line; on the bottom
/// line groups run in reverse order with slots kept in order. Segments of one
/// group are parallel, segments of different groups cross.
pub fn segments_from_disjointness(inst: &DisjInstance) -> ObjectStream {
    let (n, t) = (inst.n, inst.t);
    player_chunks(inst, |i, j| PermSegment::new(int((j - 1) * t + i), int((n - j) * t + i)).into())
}

/// Groups in the same order on both lines, slots reversed on the bottom, so
/// segments of one group pairwise cross and different groups never meet.
pub fn clique_segments_from_disjointness(inst: &DisjInstance) -> ObjectStream {
    let t = inst.t;
    player_chunks(inst, |i, j| PermSegment::new(int((j - 1) * t + i), int((j - 1) * t + (t + 1 - i))).into())
}

/// Length-`t` intervals `[3jt + i, 3jt + i + t]`: one group overlaps
/// pairwise, consecutive groups are at least `t` apart.
pub fn clique_unit_intervals_from_disjointness(inst: &DisjInstance) -> ObjectStream {
    let t = inst.t;
    player_chunks(inst, |i, j| {
        let lo = 3 * j * t + i;
        Interval::closed(int(lo), int(lo + t)).into()
    })
}

/// Interval graph isomorphic to [`segments_from_disjointness`], object by
/// object: a 1 in a singleton column `j` becomes the long interval
/// `[j, n + j]`, and slot `i` of the shared column becomes the short interval
/// `[n + (i-1)/t, n + (i-1)/t + 1/(2t)]` inside `[n, n+1]`, which every long
/// interval covers.
pub fn interval_representation(inst: &DisjInstance) -> Result<ObjectStream, HardnessError> {
    let (n, t) = (inst.n, inst.t);
    let mut full = None;
    for j in 1..=n {
        match inst.column_weight(j) {
            0 | 1 => {}
            w if w == t && full.is_none() => full = Some(j),
            weight => return Err(HardnessError::NotRepresentable { column: j, weight }),
        }
    }
    let tt = t as i64;
    Ok(player_chunks(inst, |i, j| {
        if Some(j) == full {
            let lo = int(n) + Coord::ratio(i as i64 - 1, tt).expect("t > 0");
            let hi = &lo + &Coord::ratio(1, 2 * tt).expect("t > 0");
            Interval::new(lo, hi).expect("ordered").into()
        } else {
            Interval::closed(int(j), int(n + j)).into()
        }
    }))
}
